#include "scifex/corpus_io.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "scifex/text.hpp"
#include "json_util.hpp"

namespace scifex {

namespace {

using detail::json;
using detail::require_field;

constexpr const char* kDocKeys[] = {"doc_id",   "title",    "year",      "category_tags",
                                    "abstract", "sections", "footnotes", "references"};

std::string get_string(const json& obj, const char* key, const std::string& context) {
    const json& value = require_field(obj, key, context);
    if (!value.is_string()) throw ValidationError(context + ": field \"" + key + "\" must be a string");
    return value.get<std::string>();
}

std::vector<std::string> get_string_list(const json& obj, const char* key,
                                         const std::string& context) {
    const json& value = require_field(obj, key, context);
    if (!value.is_array()) throw ValidationError(context + ": field \"" + key + "\" must be an array");
    std::vector<std::string> out;
    for (const auto& item : value) {
        if (!item.is_string()) {
            throw ValidationError(context + ": field \"" + key + "\" must contain only strings");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

Sentence parse_sentence(const json& obj, const std::string& context) {
    if (!obj.is_object()) throw ValidationError(context + ": sentence must be an object");
    Sentence s;
    s.sentence_id = get_string(obj, "sentence_id", context);
    s.text = text::normalize(get_string(obj, "text", context));
    s.footnote_marks = get_string_list(obj, "footnote_marks", context);
    s.citation_marks = get_string_list(obj, "citation_marks", context);
    s.urls = text::detect_urls(s.text);
    return s;
}

Section parse_section(const json& obj, const std::string& context, const SectionKeywords& keywords) {
    if (!obj.is_object()) throw ValidationError(context + ": section must be an object");
    Section section;
    section.section_id = get_string(obj, "section_id", context);
    section.header = text::normalize(get_string(obj, "header", context));
    section.kind = classify_section(section.header, keywords);
    const json& sentences = require_field(obj, "sentences", context);
    if (!sentences.is_array()) {
        throw ValidationError(context + ": field \"sentences\" must be an array");
    }
    for (const auto& s : sentences) {
        section.sentences.push_back(parse_sentence(s, context + "/" + section.section_id));
    }
    return section;
}

template <typename Entry>
std::vector<Entry> parse_entries(const json& arr, const char* key, const std::string& context) {
    if (!arr.is_array()) throw ValidationError(context + ": field \"" + key + "\" must be an array");
    std::vector<Entry> out;
    for (const auto& item : arr) {
        if (!item.is_object()) throw ValidationError(context + ": entries of \"" + key + "\" must be objects");
        Entry e;
        e.id = get_string(item, "id", context);
        e.text = text::normalize(get_string(item, "text", context));
        e.urls = text::detect_urls(e.text);
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

DocumentRecord parse_document_json(const std::string& payload, const std::string& context,
                                   const SectionKeywords& keywords) {
    json obj = detail::parse_json(payload, context);
    if (!obj.is_object()) throw ValidationError(context + ": top level must be an object");
    for (const char* key : kDocKeys) require_field(obj, key, context);
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find_if(std::begin(kDocKeys), std::end(kDocKeys),
                         [&](const char* k) { return it.key() == k; }) == std::end(kDocKeys)) {
            throw ValidationError(context + ": unknown field \"" + it.key() + "\"");
        }
    }

    DocumentRecord doc;
    doc.doc_id = get_string(obj, "doc_id", context);
    if (doc.doc_id.empty()) throw ValidationError(context + ": field \"doc_id\" must be non-empty");
    doc.title = text::normalize(get_string(obj, "title", context));
    const json& year = obj["year"];
    if (!year.is_number_integer()) {
        throw ValidationError(context + ": field \"year\" must be an integer");
    }
    doc.year = year.get<int>();
    doc.category_tags = get_string_list(obj, "category_tags", context);
    doc.abstract = parse_section(obj["abstract"], context, keywords);
    doc.abstract.kind = SectionKind::Abstract;
    if (!obj["sections"].is_array()) {
        throw ValidationError(context + ": field \"sections\" must be an array");
    }
    for (const auto& s : obj["sections"]) {
        doc.sections.push_back(parse_section(s, context, keywords));
    }
    doc.footnotes = parse_entries<FootnoteEntry>(obj["footnotes"], "footnotes", context);
    doc.references = parse_entries<ReferenceEntry>(obj["references"], "references", context);

    validate_document(doc);
    return doc;
}

DocumentRecord load_document(const std::filesystem::path& file, const SectionKeywords& keywords) {
    return parse_document_json(detail::read_file(file), file.string(), keywords);
}

std::vector<DocumentRecord> load_corpus(const std::filesystem::path& dir,
                                        const SectionKeywords& keywords) {
    if (!std::filesystem::exists(dir)) {
        throw ValidationError("corpus directory does not exist: " + dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());

    std::vector<DocumentRecord> docs;
    std::unordered_set<std::string> ids;
    for (const auto& file : files) {
        DocumentRecord doc = load_document(file, keywords);
        if (!ids.insert(doc.doc_id).second) {
            throw ValidationError("corpus: duplicate doc_id " + doc.doc_id + " (in " +
                                  file.string() + ")");
        }
        docs.push_back(std::move(doc));
    }
    std::sort(docs.begin(), docs.end(),
              [](const DocumentRecord& a, const DocumentRecord& b) { return a.doc_id < b.doc_id; });
    return docs;
}

namespace {

json sentence_to_json(const Sentence& s) {
    return json{{"sentence_id", s.sentence_id},
                {"text", s.text},
                {"footnote_marks", s.footnote_marks},
                {"citation_marks", s.citation_marks}};
}

json section_to_json(const Section& section) {
    json sentences = json::array();
    for (const auto& s : section.sentences) sentences.push_back(sentence_to_json(s));
    return json{{"section_id", section.section_id},
                {"header", section.header},
                {"sentences", std::move(sentences)}};
}

template <typename Entry>
json entries_to_json(const std::vector<Entry>& entries) {
    json arr = json::array();
    for (const auto& e : entries) arr.push_back(json{{"id", e.id}, {"text", e.text}});
    return arr;
}

}  // namespace

std::string serialize_document(const DocumentRecord& doc) {
    json sections = json::array();
    for (const auto& s : doc.sections) sections.push_back(section_to_json(s));
    json obj{{"doc_id", doc.doc_id},
             {"title", doc.title},
             {"year", doc.year},
             {"category_tags", doc.category_tags},
             {"abstract", section_to_json(doc.abstract)},
             {"sections", std::move(sections)},
             {"footnotes", entries_to_json(doc.footnotes)},
             {"references", entries_to_json(doc.references)}};
    return obj.dump(2) + "\n";
}

}  // namespace scifex
