#include "scifex/conllu.hpp"

#include <charconv>
#include <sstream>

namespace scifex {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return fields;
}

bool parse_int(std::string_view s, int& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

[[noreturn]] void malformed(std::size_t lineno, const std::string& why) {
    throw ValidationError("conllu line " + std::to_string(lineno) + ": " + why);
}

bool misc_says_no_space(std::string_view misc) {
    return misc.find("SpaceAfter=No") != std::string_view::npos;
}

}  // namespace

std::vector<ConlluSentence> parse_conllu(std::string_view conllu_text) {
    std::vector<ConlluSentence> sentences;
    ConlluSentence current;
    bool in_block = false;

    auto flush = [&](std::size_t lineno) {
        if (!in_block) return;
        if (!current.tokens.empty()) {
            if (current.sent_id.empty()) malformed(lineno, "sentence block without # sent_id");
            validate_token_tree(current.tokens, "conllu sent_id " + current.sent_id);
            sentences.push_back(std::move(current));
        }
        current = ConlluSentence{};
        in_block = false;
    };

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= conllu_text.size()) {
        std::size_t eol = conllu_text.find('\n', pos);
        std::string_view line = conllu_text.substr(
            pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? conllu_text.size() + 1 : eol + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        if (line.empty()) {
            flush(lineno);
            continue;
        }
        if (line.front() == '#') {
            constexpr std::string_view kSentId = "# sent_id";
            if (line.substr(0, kSentId.size()) == kSentId) {
                std::size_t eq = line.find('=');
                if (eq == std::string_view::npos) malformed(lineno, "sent_id comment without '='");
                std::string_view value = line.substr(eq + 1);
                while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
                while (!value.empty() && value.back() == ' ') value.remove_suffix(1);
                current.sent_id = std::string(value);
                in_block = true;
            }
            continue;
        }

        auto fields = split_tabs(line);
        if (fields.size() != 10) {
            malformed(lineno, "expected 10 tab-separated fields, got " +
                                  std::to_string(fields.size()));
        }
        // Multiword token ranges ("2-4") and empty nodes ("5.1") carry no
        // tree structure of their own.
        if (fields[0].find('-') != std::string_view::npos ||
            fields[0].find('.') != std::string_view::npos) {
            continue;
        }
        int id = 0;
        if (!parse_int(fields[0], id) || id < 1) malformed(lineno, "bad token id");
        int head = 0;
        if (!parse_int(fields[6], head) || head < 0) malformed(lineno, "bad head field");

        Token tok;
        tok.index = id - 1;
        tok.surface = std::string(fields[1]);
        tok.lemma = std::string(fields[2]);
        tok.upos = std::string(fields[3]);
        tok.head = head - 1;  // CoNLL-U head 0 means root
        tok.deprel = std::string(fields[7]);
        tok.space_after = !misc_says_no_space(fields[9]);
        if (tok.index != static_cast<int>(current.tokens.size())) {
            malformed(lineno, "non-consecutive token id " + std::string(fields[0]));
        }
        current.tokens.push_back(std::move(tok));
        in_block = true;
    }
    flush(lineno);
    return sentences;
}

std::size_t attach_parses(DocumentRecord& doc, std::string_view conllu_text, Diagnostics* diag) {
    std::vector<ConlluSentence> parsed = parse_conllu(conllu_text);
    std::size_t attached = 0;
    auto find_mutable = [&](std::string_view id) -> Sentence* {
        for (auto& s : doc.abstract.sentences) {
            if (s.sentence_id == id) return &s;
        }
        for (auto& section : doc.sections) {
            for (auto& s : section.sentences) {
                if (s.sentence_id == id) return &s;
            }
        }
        return nullptr;
    };
    for (auto& block : parsed) {
        Sentence* target = find_mutable(block.sent_id);
        if (!target) {
            Diagnostics::emit(diag, "parse for unknown sentence id \"" + block.sent_id +
                                        "\" in document " + doc.doc_id + ", skipped");
            continue;
        }
        std::string rebuilt;
        for (std::size_t i = 0; i < block.tokens.size(); ++i) {
            rebuilt += block.tokens[i].surface;
            if (block.tokens[i].space_after && i + 1 < block.tokens.size()) rebuilt += ' ';
        }
        if (rebuilt != target->text) {
            throw ValidationError("parse for sentence " + block.sent_id +
                                  " does not reconstruct its text (got \"" + rebuilt +
                                  "\", want \"" + target->text + "\")");
        }
        target->tokens = std::move(block.tokens);
        target->has_tokens = true;
        ++attached;
    }
    return attached;
}

std::string write_conllu(const DocumentRecord& doc) {
    std::ostringstream out;
    for (const Section* section : doc.all_sections()) {
        for (const auto& sentence : section->sentences) {
            if (!sentence.has_tokens) continue;
            out << "# sent_id = " << sentence.sentence_id << "\n";
            for (const auto& tok : sentence.tokens) {
                out << (tok.index + 1) << '\t' << tok.surface << '\t' << tok.lemma << '\t'
                    << tok.upos << '\t' << '_' << '\t' << '_' << '\t' << (tok.head + 1) << '\t'
                    << tok.deprel << '\t' << '_' << '\t'
                    << (tok.space_after ? "_" : "SpaceAfter=No") << "\n";
            }
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace scifex
