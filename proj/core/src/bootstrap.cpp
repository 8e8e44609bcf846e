#include "scifex/bootstrap.hpp"

#include <algorithm>

#include "json_util.hpp"
#include "scifex/facets.hpp"
#include "scifex/text.hpp"

namespace scifex {
namespace {

struct PreprocessedSentence {
    const Sentence* sentence = nullptr;
    std::vector<std::pair<std::string, std::string>> tokens;  // (lemma, upos)
};

std::vector<PreprocessedSentence> preprocess_corpus(const std::vector<DocumentRecord>& corpus,
                                                    const std::set<std::string>& stopwords) {
    std::vector<PreprocessedSentence> out;
    for (const DocumentRecord& doc : corpus) {
        for (const Section* section : doc.all_sections()) {
            for (const Sentence& sentence : section->sentences) {
                if (!sentence.has_tokens) continue;
                out.push_back({&sentence, preprocess(sentence, stopwords)});
            }
        }
    }
    return out;
}

// True when the pattern's visible tags line up around `pos`; truncated
// patterns carry no constraint beyond their own span.
bool pattern_fits(const PosContextPattern& pattern,
                  const std::vector<std::pair<std::string, std::string>>& tokens,
                  std::size_t pos) {
    auto seed_it = std::find(pattern.window.begin(), pattern.window.end(), "SEED");
    const std::size_t seed_at = static_cast<std::size_t>(seed_it - pattern.window.begin());
    if (pos < seed_at) return false;
    const std::size_t begin = pos - seed_at;
    if (begin + pattern.window.size() > tokens.size()) return false;
    for (std::size_t i = 0; i < pattern.window.size(); ++i) {
        if (i == seed_at) continue;
        if (tokens[begin + i].second != pattern.window[i]) return false;
    }
    return true;
}

}  // namespace

const std::set<std::string>& default_stopwords() {
    static const std::set<std::string> words = {
        "a",       "about",   "above",   "after",  "again",   "against", "all",    "am",
        "an",      "and",     "any",     "are",    "as",      "at",      "be",     "because",
        "been",    "before",  "being",   "below",  "between", "both",    "but",    "by",
        "can",     "did",     "do",      "does",   "doing",   "down",    "during", "each",
        "few",     "for",     "from",    "further", "had",    "has",     "have",   "having",
        "he",      "her",     "here",    "hers",   "him",     "his",     "how",    "i",
        "if",      "in",      "into",    "is",     "it",      "its",     "just",   "me",
        "more",    "most",    "my",      "no",     "nor",     "not",     "now",    "of",
        "off",     "on",      "once",    "only",   "or",      "other",   "our",    "ours",
        "out",     "over",    "own",     "same",   "she",     "should",  "so",     "some",
        "such",    "than",    "that",    "the",    "their",   "theirs",  "them",   "then",
        "there",   "these",   "they",    "this",   "those",   "through", "to",     "too",
        "under",   "until",   "up",      "very",   "was",     "we",      "were",   "what",
        "when",    "where",   "which",   "while",  "who",     "whom",    "why",    "will",
        "with",    "you",     "your",    "yours"};
    return words;
}

std::vector<SeedLexicon> default_seed_lexicons() {
    auto make = [](const std::string& label, std::initializer_list<const char*> terms) {
        SeedLexicon lex;
        lex.facet_label = label;
        for (const char* term : terms) lex.terms[term] = 1.0;
        return lex;
    };
    return {
        make("ComputePlatform", {"nvidia", "intel", "amd", "cluster"}),
        make("ComputeTime", {"hour"}),
        make("HardwareResource", {"gpu", "cpu", "tpu", "ram", "memory", "core", "gb"}),
        make("ProgrammingLanguage", {"python", "java", "matlab", "c++"}),
        make("ProgrammingLibrary",
             {"pytorch", "tensorflow", "caffe", "keras", "scikit-learn", "numpy"}),
    };
}

std::vector<std::pair<std::string, std::string>> preprocess(
    const Sentence& sentence, const std::set<std::string>& stopwords) {
    if (!sentence.has_tokens) {
        throw ValidationError("preprocess requires attached tokens: " + sentence.sentence_id);
    }
    std::vector<std::pair<std::string, std::string>> out;
    for (const Token& token : sentence.tokens) {
        if (token.upos == "PUNCT") continue;
        const std::string lemma =
            to_lower(token.lemma.empty() ? token.surface : token.lemma);
        if (stopwords.count(lemma) > 0) continue;
        out.emplace_back(lemma, token.upos);
    }
    return out;
}

std::vector<PosContextPattern> extract_context_patterns(const std::vector<DocumentRecord>& corpus,
                                                        const SeedLexicon& seeds,
                                                        const BootstrapConfig& config) {
    std::map<std::vector<std::string>, int> support;
    for (const PreprocessedSentence& ps : preprocess_corpus(corpus, config.stopwords)) {
        for (std::size_t pos = 0; pos < ps.tokens.size(); ++pos) {
            if (!seeds.contains(ps.tokens[pos].first)) continue;
            const std::size_t radius = static_cast<std::size_t>(config.window_radius);
            const std::size_t begin = pos >= radius ? pos - radius : 0;
            const std::size_t end = std::min(ps.tokens.size(), pos + radius + 1);
            std::vector<std::string> window;
            for (std::size_t i = begin; i < end; ++i) {
                window.push_back(i == pos ? "SEED" : ps.tokens[i].second);
            }
            ++support[window];
        }
    }
    std::vector<PosContextPattern> out;
    for (const auto& [window, count] : support) {
        if (count >= config.min_pattern_support) out.push_back({window, count});
    }
    return out;
}

std::vector<CandidateSeed> propose_candidates(const std::vector<DocumentRecord>& corpus,
                                              const std::vector<PosContextPattern>& patterns,
                                              const SeedLexicon& seeds,
                                              const BootstrapConfig& config) {
    if (patterns.empty()) throw ValidationError("propose_candidates requires patterns");
    struct Hit {
        std::set<std::size_t> patterns;
        std::set<std::string> sentences;
    };
    std::map<std::string, Hit> hits;
    for (const PreprocessedSentence& ps : preprocess_corpus(corpus, config.stopwords)) {
        for (std::size_t pos = 0; pos < ps.tokens.size(); ++pos) {
            const auto& [lemma, upos] = ps.tokens[pos];
            if (upos != "NOUN" && upos != "PROPN") continue;
            if (seeds.contains(lemma)) continue;
            for (std::size_t p = 0; p < patterns.size(); ++p) {
                if (!pattern_fits(patterns[p], ps.tokens, pos)) continue;
                Hit& hit = hits[lemma];
                hit.patterns.insert(p);
                hit.sentences.insert(ps.sentence->sentence_id);
            }
        }
    }
    std::vector<CandidateSeed> out;
    for (const auto& [term, hit] : hits) {
        CandidateSeed candidate;
        candidate.term = term;
        candidate.score =
            static_cast<double>(hit.patterns.size()) / static_cast<double>(patterns.size());
        candidate.supporting_sentence_ids.assign(hit.sentences.begin(), hit.sentences.end());
        out.push_back(std::move(candidate));
    }
    std::sort(out.begin(), out.end(), [](const CandidateSeed& a, const CandidateSeed& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.term < b.term;
    });
    return out;
}

SeedLexicon bootstrap_iterate(const std::vector<DocumentRecord>& corpus, SeedLexicon seeds,
                              const BootstrapConfig& config) {
    if (config.threshold <= 0.0) throw ValidationError("bootstrap threshold must be positive");
    if (config.max_iters < 1) throw ValidationError("max_iters must be at least 1");

    for (int round = 0; round < config.max_iters; ++round) {
        const std::vector<PosContextPattern> patterns =
            extract_context_patterns(corpus, seeds, config);
        if (patterns.empty()) break;
        bool appended = false;
        for (const CandidateSeed& candidate :
             propose_candidates(corpus, patterns, seeds, config)) {
            if (candidate.score > config.threshold) {
                seeds.terms.emplace(candidate.term, candidate.score);
                appended = true;
            }
        }
        if (!appended) break;
    }
    return seeds;
}

std::vector<CorllRecord> emit_annotation_stubs(const std::vector<Sentence>& sentences) {
    std::vector<CorllRecord> out;
    out.reserve(sentences.size());
    for (const Sentence& sentence : sentences) {
        CorllRecord record;
        record.text = sentence.text;
        for (const Token& token : sentence.tokens) record.tokens.push_back(token.surface);
        record.biluo.assign(record.tokens.size(), "O");
        out.push_back(std::move(record));
    }
    return out;
}

std::vector<CorllRecord> load_annotated(const std::filesystem::path& file,
                                        const std::vector<std::string>& allowed_labels,
                                        std::map<std::string, int>* histogram) {
    const LabelScheme scheme(allowed_labels);
    if (histogram) {
        for (const std::string& label : allowed_labels) (*histogram)[label] = 0;
    }
    std::vector<CorllRecord> records;
    detail::for_each_jsonl_line(file, [&](const nlohmann::json& line, std::size_t line_no) {
        const std::string where = file.string() + ":" + std::to_string(line_no);
        CorllRecord record;
        record.text = detail::require_string(line, "text", where);
        for (const auto& token : detail::require_field(line, "tokens", where)) {
            record.tokens.push_back(token.get<std::string>());
        }
        for (const auto& span : detail::require_field(line, "spans", where)) {
            if (!span.is_array() || span.size() != 3) {
                throw ValidationError(where + ": span must be [start, end, label]");
            }
            record.spans.push_back(
                {span[0].get<int>(), span[1].get<int>(), span[2].get<std::string>()});
        }
        for (const auto& tag : detail::require_field(line, "biluo", where)) {
            record.biluo.push_back(tag.get<std::string>());
        }
        if (record.biluo.size() != record.tokens.size()) {
            throw ValidationError(where + ": biluo length differs from token count");
        }
        std::vector<std::string> expected;
        try {
            expected = encode_biluo(record.spans, record.tokens.size(), scheme);
        } catch (const ValidationError& err) {
            throw ValidationError(where + ": " + err.what());
        }
        if (expected != record.biluo) {
            throw ValidationError(where + ": biluo tags inconsistent with spans");
        }
        if (histogram) {
            for (const LabeledSpan& span : record.spans) ++(*histogram)[span.label];
        }
        records.push_back(std::move(record));
    });
    return records;
}

CorllFile load_corll(const std::filesystem::path& file) {
    CorllFile out;
    const std::vector<std::string> labels(kCorllLabels.begin(), kCorllLabels.end());
    out.records = load_annotated(file, labels, &out.histogram);
    return out;
}

void serialize_corll(const std::vector<CorllRecord>& records, const std::filesystem::path& file) {
    std::string body;
    for (const CorllRecord& record : records) {
        nlohmann::ordered_json line;
        line["text"] = record.text;
        line["tokens"] = record.tokens;
        nlohmann::ordered_json spans = nlohmann::ordered_json::array();
        for (const LabeledSpan& span : record.spans) {
            spans.push_back(nlohmann::ordered_json::array({span.start, span.end, span.label}));
        }
        line["spans"] = std::move(spans);
        line["biluo"] = record.biluo;
        body += line.dump();
        body += "\n";
    }
    detail::write_file(file, body);
}

CrfTrainingSentence corll_to_training(const CorllRecord& record, const std::string& sentence_id) {
    CrfTrainingSentence out;
    out.sentence.sentence_id = sentence_id;
    out.sentence.text = record.text;
    out.sentence.has_tokens = true;
    int index = 0;
    for (const std::string& surface : record.tokens) {
        Token token;
        token.index = index++;
        token.surface = surface;
        token.lemma = to_lower(surface);
        token.upos = "X";
        token.head = index == 1 ? -1 : 0;
        token.deprel = index == 1 ? "root" : "dep";
        out.sentence.tokens.push_back(std::move(token));
    }
    out.gold_tags = record.biluo;
    return out;
}

}  // namespace scifex
