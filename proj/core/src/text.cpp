#include "scifex/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace scifex::text {

namespace {

bool is_ascii_space(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_control(unsigned char c) {
    return c < 0x20 || c == 0x7f;
}

constexpr std::string_view kTrailingTrim = ".,;:)]}\"'";

const std::array<std::string_view, 5> kUrlPrefixes = {
    "http://", "https://", "github.com/", "gitlab.com/", "bitbucket.org/",
};

bool is_url_char(unsigned char c) {
    return !is_ascii_space(c) && !is_control(c);
}

}  // namespace

std::string normalize(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (unsigned char c : raw) {
        if (is_ascii_space(c)) {
            pending_space = true;
            continue;
        }
        if (is_control(c)) continue;
        if (pending_space && !out.empty()) out.push_back(' ');
        pending_space = false;
        out.push_back(static_cast<char>(c));
    }
    return out;
}

std::vector<std::string> detect_urls(std::string_view s) {
    std::vector<std::string> urls;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t start = std::string_view::npos;
        for (std::size_t j = i; j < s.size(); ++j) {
            // A prefix match only counts at a token boundary, otherwise
            // "mygithub.com/x" would yield a bogus hit mid-word.
            bool boundary = j == 0 || !std::isalnum(static_cast<unsigned char>(s[j - 1]));
            if (!boundary) continue;
            for (auto prefix : kUrlPrefixes) {
                if (s.substr(j, prefix.size()) == prefix) {
                    start = j;
                    break;
                }
            }
            if (start != std::string_view::npos) break;
        }
        if (start == std::string_view::npos) break;

        std::size_t end = start;
        while (end < s.size() && is_url_char(static_cast<unsigned char>(s[end]))) ++end;
        std::string_view candidate = s.substr(start, end - start);
        while (!candidate.empty() && kTrailingTrim.find(candidate.back()) != std::string_view::npos) {
            candidate.remove_suffix(1);
        }
        if (!candidate.empty()) urls.emplace_back(candidate);
        i = end;
    }
    return urls;
}

std::string fold_for_match(std::string_view s) {
    std::string norm = normalize(s);
    // Strip surrounding punctuation, keep interior characters as-is.
    std::size_t begin = 0;
    std::size_t end = norm.size();
    while (begin < end && std::ispunct(static_cast<unsigned char>(norm[begin]))) ++begin;
    while (end > begin && std::ispunct(static_cast<unsigned char>(norm[end - 1]))) --end;
    std::string out;
    out.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(norm[i]))));
    }
    return out;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
    if (a == b) return 0;
    if (a.empty()) return b.size();
    if (b.empty()) return a.size();

    std::vector<std::size_t> prev(b.size() + 1);
    std::vector<std::size_t> cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;

    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

double similarity(std::string_view a, std::string_view b) {
    std::string fa = fold_for_match(a);
    std::string fb = fold_for_match(b);
    std::size_t longest = std::max(fa.size(), fb.size());
    if (longest == 0) return 1.0;
    return 1.0 - static_cast<double>(edit_distance(fa, fb)) / static_cast<double>(longest);
}

bool contains_word(std::string_view s, std::string_view word, bool case_sensitive) {
    if (word.empty()) return false;
    auto eq = [&](char x, char y) {
        if (case_sensitive) return x == y;
        return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
    };
    for (std::size_t i = 0; i + word.size() <= s.size(); ++i) {
        bool left_ok = i == 0 || !std::isalnum(static_cast<unsigned char>(s[i - 1]));
        if (!left_ok) continue;
        std::size_t j = 0;
        while (j < word.size() && eq(s[i + j], word[j])) ++j;
        if (j != word.size()) continue;
        std::size_t after = i + word.size();
        bool right_ok = after == s.size() || !std::isalnum(static_cast<unsigned char>(s[after]));
        if (right_ok) return true;
    }
    return false;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace scifex::text
