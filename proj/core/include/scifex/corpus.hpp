#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scifex {

enum class SectionKind {
    Abstract,
    Introduction,
    Conclusion,
    Method,
    Experiment,
    Related,
    Other,
};

std::string_view section_kind_id(SectionKind kind);

/// One dependency-parsed token. `head` is a 0-based token index, -1 for the
/// sentence root. `space_after` records whether a space followed the surface
/// form in the original text.
struct Token {
    int index = 0;
    std::string surface;
    std::string lemma;
    std::string upos;
    int head = -1;
    std::string deprel;
    bool space_after = true;
};

struct Sentence {
    std::string sentence_id;
    std::string text;  // normalized, see text::normalize
    std::vector<Token> tokens;
    bool has_tokens = false;
    std::vector<std::string> footnote_marks;
    std::vector<std::string> citation_marks;
    std::vector<std::string> urls;  // computed from text, never stored in files
};

struct Section {
    std::string section_id;
    std::string header;
    SectionKind kind = SectionKind::Other;
    std::vector<Sentence> sentences;
};

struct FootnoteEntry {
    std::string id;
    std::string text;
    std::vector<std::string> urls;
};

struct ReferenceEntry {
    std::string id;
    std::string text;
    std::vector<std::string> urls;
};

struct DocumentRecord {
    std::string doc_id;
    std::string title;
    int year = 0;
    std::vector<std::string> category_tags;
    Section abstract;
    std::vector<Section> sections;
    std::vector<FootnoteEntry> footnotes;
    std::vector<ReferenceEntry> references;

    /// Abstract first, then body sections in order.
    std::vector<const Section*> all_sections() const;
    const Sentence* find_sentence(std::string_view sentence_id) const;
    const FootnoteEntry* find_footnote(std::string_view id) const;
    const ReferenceEntry* find_reference(std::string_view id) const;
    std::size_t sentence_count() const;
};

/// Keyword lists driving classify_section, checked in declaration order
/// (abstract first). All matching is case-insensitive substring containment.
struct SectionKeywords {
    std::vector<std::string> abstract = {"abstract"};
    std::vector<std::string> introduction = {"introduction", "overview"};
    std::vector<std::string> conclusion = {"conclusion", "concluding", "summary", "discussion"};
    std::vector<std::string> method = {"method", "approach", "model", "architecture"};
    std::vector<std::string> experiment = {"experiment", "evaluation", "result"};
    std::vector<std::string> related = {"related", "background"};
};

SectionKind classify_section(std::string_view header, const SectionKeywords& keywords = {});

/// Checks every document invariant (unique sentence ids, resolvable footnote
/// marks, token tree shape, surface reconstruction). Throws ValidationError
/// naming the offending field.
void validate_document(const DocumentRecord& doc);

/// Tree check for one parsed sentence: exactly one head == -1, indices in
/// range, no cycles. Throws ValidationError on violation.
void validate_token_tree(const std::vector<Token>& tokens, std::string_view context);

}  // namespace scifex
