#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace scifex {
// Inline so call sites may write either scifex::to_lower or
// scifex::text::to_lower.
inline namespace text {

/// Canonical form used for all stored sentence/entry text: control characters
/// stripped, runs of whitespace collapsed to a single space, leading/trailing
/// whitespace removed. Input is treated as UTF-8 and passed through unchanged
/// outside the ASCII range.
std::string normalize(std::string_view raw);

/// Maximal URL-looking substrings: anything starting with "http://",
/// "https://" or one of the known code-hosting prefixes, extended to the next
/// whitespace and trimmed of trailing punctuation .,;:)]}"'
std::vector<std::string> detect_urls(std::string_view s);

/// Case-fold + collapse inner whitespace + strip surrounding punctuation.
/// This is the canonical key for fuzzy entity comparison.
std::string fold_for_match(std::string_view s);

/// Levenshtein distance (unit insert/delete/substitute costs) over bytes.
std::size_t edit_distance(std::string_view a, std::string_view b);

/// 1 - editdistance(fold(a), fold(b)) / max(|fold(a)|, |fold(b)|).
/// Two empty folded strings compare equal (similarity 1).
double similarity(std::string_view a, std::string_view b);

/// True when `word` occurs in `s` delimited by non-alphanumeric characters.
bool contains_word(std::string_view s, std::string_view word, bool case_sensitive = false);

std::string to_lower(std::string_view s);

}  // namespace text
}  // namespace scifex
