#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "scifex/biluo.hpp"
#include "scifex/corpus.hpp"
#include "scifex/crf.hpp"

namespace scifex {

/// Expandable seed-term list for one CORLL label. Initial seeds carry score
/// 1.0; bootstrapped terms keep the score they were admitted with.
struct SeedLexicon {
    std::string facet_label;
    std::map<std::string, double> terms;  // lowercase lemma -> score in [0,1]

    bool contains(const std::string& lemma) const { return terms.count(lemma) > 0; }
};

/// POS window of radius <= 2 around a seed occurrence; the seed slot is the
/// literal string "SEED". Windows truncate at sentence edges.
struct PosContextPattern {
    std::vector<std::string> window;
    int support = 0;

    bool operator==(const PosContextPattern& other) const { return window == other.window; }
};

struct CandidateSeed {
    std::string term;
    double score = 0.0;  // distinct patterns filled / total patterns
    std::vector<std::string> supporting_sentence_ids;
};

/// One manually annotatable sentence: explicit spans plus redundant BILUO
/// tags so diffs stay readable.
struct CorllRecord {
    std::string text;
    std::vector<std::string> tokens;
    std::vector<LabeledSpan> spans;
    std::vector<std::string> biluo;
};

const std::set<std::string>& default_stopwords();

/// Ships the five lexicons in label order; terms follow the exemplar tools
/// and hardware named in the config defaults.
std::vector<SeedLexicon> default_seed_lexicons();

struct BootstrapConfig {
    int window_radius = 2;
    int min_pattern_support = 2;
    double threshold = 0.5;
    int max_iters = 3;
    std::set<std::string> stopwords = default_stopwords();
};

/// Lowercased (lemma, upos) pairs with stopword lemmas and punctuation
/// removed. Requires attached tokens.
std::vector<std::pair<std::string, std::string>> preprocess(const Sentence& sentence,
                                                            const std::set<std::string>& stopwords);

std::vector<PosContextPattern> extract_context_patterns(const std::vector<DocumentRecord>& corpus,
                                                        const SeedLexicon& seeds,
                                                        const BootstrapConfig& config);

/// Non-seed NOUN/PROPN lemmas standing in a SEED slot of at least one
/// pattern, scored by coverage and sorted by score then term.
std::vector<CandidateSeed> propose_candidates(const std::vector<DocumentRecord>& corpus,
                                              const std::vector<PosContextPattern>& patterns,
                                              const SeedLexicon& seeds,
                                              const BootstrapConfig& config);

/// Alternating extract/propose rounds; candidates scoring strictly above the
/// threshold are appended. Stops early when a round admits nothing.
SeedLexicon bootstrap_iterate(const std::vector<DocumentRecord>& corpus, SeedLexicon seeds,
                              const BootstrapConfig& config);

std::vector<CorllRecord> emit_annotation_stubs(const std::vector<Sentence>& sentences);

/// `allowed_labels` doubles as the label scheme for the BILUO consistency
/// check; histogram (optional) counts spans per label.
std::vector<CorllRecord> load_annotated(const std::filesystem::path& file,
                                        const std::vector<std::string>& allowed_labels,
                                        std::map<std::string, int>* histogram = nullptr);

struct CorllFile {
    std::vector<CorllRecord> records;
    std::map<std::string, int> histogram;
};

CorllFile load_corll(const std::filesystem::path& file);

void serialize_corll(const std::vector<CorllRecord>& records, const std::filesystem::path& file);

/// Surface-only tokens: lemma falls back to the lowercased surface and UPOS
/// to "X", which the sparse featurizer tolerates.
CrfTrainingSentence corll_to_training(const CorllRecord& record, const std::string& sentence_id);

}  // namespace scifex
