#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scifex/errors.hpp"

namespace scifex {

/// Token span with inclusive bounds and an entity type label.
struct LabeledSpan {
    int start = 0;
    int end = 0;  // inclusive
    std::string label;

    friend bool operator==(const LabeledSpan&, const LabeledSpan&) = default;
};

/// Tag inventory for a set of entity types: "O" plus B-/I-/L-/U- per type,
/// in declaration order. Tag 0 is always "O".
class LabelScheme {
public:
    LabelScheme() = default;
    explicit LabelScheme(std::vector<std::string> entity_types);

    const std::vector<std::string>& entity_types() const { return entity_types_; }
    const std::vector<std::string>& tags() const { return tags_; }
    std::size_t tag_count() const { return tags_.size(); }

    int tag_index(std::string_view tag) const;  // -1 when unknown
    const std::string& tag_name(int index) const { return tags_[index]; }

private:
    std::vector<std::string> entity_types_;
    std::vector<std::string> tags_;
};

/// Spans to tags. Length-1 spans become U-, longer ones B- I-... L-.
/// Overlapping spans or spans outside [0, n_tokens) raise ValidationError.
std::vector<std::string> encode_biluo(std::vector<LabeledSpan> spans, int n_tokens,
                                      const LabelScheme& scheme);

struct DecodeResult {
    std::vector<LabeledSpan> spans;
    std::vector<std::string> repairs;  // one note per deviation from a valid sequence
};

/// Tags to spans. Never fails: orphan I-/L- open or close a segment as if
/// they were B-/U-, a segment left open is closed at its last same-type
/// continuation. Each repair is recorded in the result.
DecodeResult decode_biluo(const std::vector<std::string>& tags);

}  // namespace scifex
