#include "scifex/corpus.hpp"

#include <unordered_set>

#include "scifex/errors.hpp"
#include "scifex/text.hpp"

namespace scifex {

std::string_view section_kind_id(SectionKind kind) {
    switch (kind) {
        case SectionKind::Abstract: return "abstract";
        case SectionKind::Introduction: return "introduction";
        case SectionKind::Conclusion: return "conclusion";
        case SectionKind::Method: return "method";
        case SectionKind::Experiment: return "experiment";
        case SectionKind::Related: return "related";
        case SectionKind::Other: return "other";
    }
    return "other";
}

std::vector<const Section*> DocumentRecord::all_sections() const {
    std::vector<const Section*> out;
    out.reserve(sections.size() + 1);
    out.push_back(&abstract);
    for (const auto& s : sections) out.push_back(&s);
    return out;
}

const Sentence* DocumentRecord::find_sentence(std::string_view sentence_id) const {
    for (const Section* section : all_sections()) {
        for (const auto& sentence : section->sentences) {
            if (sentence.sentence_id == sentence_id) return &sentence;
        }
    }
    return nullptr;
}

const FootnoteEntry* DocumentRecord::find_footnote(std::string_view id) const {
    for (const auto& f : footnotes) {
        if (f.id == id) return &f;
    }
    return nullptr;
}

const ReferenceEntry* DocumentRecord::find_reference(std::string_view id) const {
    for (const auto& r : references) {
        if (r.id == id) return &r;
    }
    return nullptr;
}

std::size_t DocumentRecord::sentence_count() const {
    std::size_t n = 0;
    for (const Section* section : all_sections()) n += section->sentences.size();
    return n;
}

SectionKind classify_section(std::string_view header, const SectionKeywords& keywords) {
    const std::string lowered = text::to_lower(header);
    auto matches = [&](const std::vector<std::string>& words) {
        for (const auto& w : words) {
            if (lowered.find(text::to_lower(w)) != std::string::npos) return true;
        }
        return false;
    };
    if (matches(keywords.abstract)) return SectionKind::Abstract;
    if (matches(keywords.introduction)) return SectionKind::Introduction;
    if (matches(keywords.conclusion)) return SectionKind::Conclusion;
    if (matches(keywords.method)) return SectionKind::Method;
    if (matches(keywords.experiment)) return SectionKind::Experiment;
    if (matches(keywords.related)) return SectionKind::Related;
    return SectionKind::Other;
}

void validate_token_tree(const std::vector<Token>& tokens, std::string_view context) {
    const int n = static_cast<int>(tokens.size());
    int roots = 0;
    for (int i = 0; i < n; ++i) {
        if (tokens[i].index != i) {
            throw ValidationError(std::string(context) + ": token index mismatch at position " +
                                  std::to_string(i));
        }
        if (tokens[i].head == -1) {
            ++roots;
        } else if (tokens[i].head < 0 || tokens[i].head >= n) {
            throw ValidationError(std::string(context) + ": head out of range for token " +
                                  std::to_string(i));
        }
    }
    if (roots != 1) {
        throw ValidationError(std::string(context) + ": not a tree (expected exactly one root, got " +
                              std::to_string(roots) + ")");
    }
    // Walking head links from every node must reach the root without revisits.
    for (int i = 0; i < n; ++i) {
        int steps = 0;
        int cur = i;
        while (tokens[cur].head != -1) {
            cur = tokens[cur].head;
            if (++steps > n) {
                throw ValidationError(std::string(context) + ": not a tree (cycle through token " +
                                      std::to_string(i) + ")");
            }
        }
    }
}

namespace {

void validate_sentence(const DocumentRecord& doc, const Sentence& sentence,
                       std::unordered_set<std::string>& seen_ids) {
    if (sentence.sentence_id.empty()) {
        throw ValidationError("document " + doc.doc_id + ": empty sentence_id");
    }
    if (!seen_ids.insert(sentence.sentence_id).second) {
        throw ValidationError("document " + doc.doc_id + ": duplicate sentence_id " +
                              sentence.sentence_id);
    }
    for (const auto& mark : sentence.footnote_marks) {
        if (!doc.find_footnote(mark)) {
            throw ValidationError("document " + doc.doc_id + ": sentence " + sentence.sentence_id +
                                  " references unknown footnote " + mark);
        }
    }
    if (sentence.has_tokens) {
        std::string context = "document " + doc.doc_id + " sentence " + sentence.sentence_id;
        validate_token_tree(sentence.tokens, context);
        std::string rebuilt;
        for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
            rebuilt += sentence.tokens[i].surface;
            if (sentence.tokens[i].space_after && i + 1 < sentence.tokens.size()) rebuilt += ' ';
        }
        if (rebuilt != sentence.text) {
            throw ValidationError(context + ": token surfaces do not reconstruct text (got \"" +
                                  rebuilt + "\", want \"" + sentence.text + "\")");
        }
    }
}

}  // namespace

void validate_document(const DocumentRecord& doc) {
    if (doc.doc_id.empty()) throw ValidationError("doc_id: must be non-empty");
    std::unordered_set<std::string> seen_sentences;
    for (const Section* section : doc.all_sections()) {
        for (const auto& sentence : section->sentences) {
            validate_sentence(doc, sentence, seen_sentences);
        }
    }
    std::unordered_set<std::string> seen;
    for (const auto& f : doc.footnotes) {
        if (!seen.insert(f.id).second) {
            throw ValidationError("document " + doc.doc_id + ": duplicate footnote id " + f.id);
        }
    }
    seen.clear();
    for (const auto& r : doc.references) {
        if (!seen.insert(r.id).second) {
            throw ValidationError("document " + doc.doc_id + ": duplicate reference id " + r.id);
        }
    }
}

}  // namespace scifex
