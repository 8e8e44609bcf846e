#include "scifex/biluo.hpp"

#include <algorithm>

namespace scifex {

LabelScheme::LabelScheme(std::vector<std::string> entity_types)
    : entity_types_(std::move(entity_types)) {
    tags_.reserve(entity_types_.size() * 4 + 1);
    tags_.push_back("O");
    for (const auto& type : entity_types_) {
        tags_.push_back("B-" + type);
        tags_.push_back("I-" + type);
        tags_.push_back("L-" + type);
        tags_.push_back("U-" + type);
    }
}

int LabelScheme::tag_index(std::string_view tag) const {
    for (std::size_t i = 0; i < tags_.size(); ++i) {
        if (tags_[i] == tag) return static_cast<int>(i);
    }
    return -1;
}

std::vector<std::string> encode_biluo(std::vector<LabeledSpan> spans, int n_tokens,
                                      const LabelScheme& scheme) {
    std::sort(spans.begin(), spans.end(),
              [](const LabeledSpan& a, const LabeledSpan& b) { return a.start < b.start; });
    std::vector<std::string> tags(static_cast<std::size_t>(n_tokens), "O");
    int prev_end = -1;
    for (const auto& span : spans) {
        if (span.start < 0 || span.end >= n_tokens || span.start > span.end) {
            throw ValidationError("span (" + std::to_string(span.start) + "," +
                                  std::to_string(span.end) + ") out of range for " +
                                  std::to_string(n_tokens) + " tokens");
        }
        if (span.start <= prev_end) {
            throw ValidationError("overlapping spans at token " + std::to_string(span.start));
        }
        prev_end = span.end;
        if (std::find(scheme.entity_types().begin(), scheme.entity_types().end(), span.label) ==
            scheme.entity_types().end()) {
            throw ValidationError("label \"" + span.label + "\" not in scheme");
        }
        if (span.start == span.end) {
            tags[span.start] = "U-" + span.label;
        } else {
            tags[span.start] = "B-" + span.label;
            for (int i = span.start + 1; i < span.end; ++i) tags[i] = "I-" + span.label;
            tags[span.end] = "L-" + span.label;
        }
    }
    return tags;
}

DecodeResult decode_biluo(const std::vector<std::string>& tags) {
    DecodeResult result;
    bool open = false;
    LabeledSpan current;
    int last_continuation = -1;

    auto note = [&](int pos, const std::string& what) {
        result.repairs.push_back("position " + std::to_string(pos) + ": " + what);
    };
    auto close_open = [&](int pos) {
        if (!open) return;
        current.end = last_continuation;
        result.spans.push_back(current);
        note(pos, "segment " + current.label + " not closed by L-, truncated at token " +
                      std::to_string(last_continuation));
        open = false;
    };

    for (int i = 0; i < static_cast<int>(tags.size()); ++i) {
        const std::string& tag = tags[i];
        if (tag == "O") {
            close_open(i);
            continue;
        }
        if (tag.size() < 3 || tag[1] != '-') {
            close_open(i);
            note(i, "unrecognized tag \"" + tag + "\" treated as O");
            continue;
        }
        const char kind = tag[0];
        const std::string type = tag.substr(2);
        switch (kind) {
            case 'U':
                close_open(i);
                result.spans.push_back({i, i, type});
                break;
            case 'B':
                close_open(i);
                open = true;
                current = {i, i, type};
                last_continuation = i;
                break;
            case 'I':
                if (open && current.label == type) {
                    last_continuation = i;
                } else {
                    close_open(i);
                    note(i, "orphan I-" + type + " opens a segment");
                    open = true;
                    current = {i, i, type};
                    last_continuation = i;
                }
                break;
            case 'L':
                if (open && current.label == type) {
                    current.end = i;
                    result.spans.push_back(current);
                    open = false;
                } else {
                    close_open(i);
                    note(i, "orphan L-" + type + " becomes a unit span");
                    result.spans.push_back({i, i, type});
                }
                break;
            default:
                close_open(i);
                note(i, "unrecognized tag \"" + tag + "\" treated as O");
                break;
        }
    }
    close_open(static_cast<int>(tags.size()));
    return result;
}

}  // namespace scifex
