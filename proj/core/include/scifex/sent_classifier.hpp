#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "scifex/corpus.hpp"
#include "scifex/crf.hpp"
#include "scifex/errors.hpp"
#include "scifex/facets.hpp"
#include "scifex/patterns.hpp"

namespace scifex {

/// Sparse features for the correct/incorrect sentence decision: lemma
/// unigrams and bigrams (surfaces when no parse is attached), URL, footnote
/// and citation flags, a token-count bucket, per-slot indicators when a
/// pattern report is supplied, and a bias.
std::vector<std::string> sentence_features(const Sentence& sentence,
                                           const PatternMatchReport* report = nullptr);

struct SplitSpec {
    double train = 0.85;
    double dev = 0.10;
    double test = 0.05;
    std::uint64_t rng_seed = 1;
    bool by_document = false;  // keep a document's sentences in one split
};

struct SentExample {
    std::vector<std::string> features;
    int label = 0;  // 1 = correct sentence
};

struct SplitAssignment {
    std::string doc_id;
    std::string sentence_id;
    int label = 0;
    std::string split;  // train | dev | test
};

struct SentSplits {
    std::vector<SentExample> train;
    std::vector<SentExample> dev;
    std::vector<SentExample> test;
    std::vector<SplitAssignment> assignments;
};

/// Positives are the candidate sentences; negatives are sampled uniformly
/// without replacement from the remaining sentences, neg_ratio per positive,
/// capped at availability (cap emits a warning). When `rules` is given,
/// parsed sentences get pattern-indicator features from a fresh match.
SentSplits build_training_set(const std::vector<CandidateSentence>& candidates,
                              const std::vector<DocumentRecord>& corpus, double neg_ratio,
                              const SplitSpec& split, const FacetRules* rules = nullptr,
                              const PatternConfig* config = nullptr,
                              Diagnostics* diagnostics = nullptr);

void write_split_assignments(const std::vector<SplitAssignment>& assignments,
                             const std::filesystem::path& file);

inline constexpr const char* kSentenceTemplateVersion = "sent-v1";

struct SentClassifierModel {
    std::string facet_id;
    std::string template_version = kSentenceTemplateVersion;
    double decision_threshold = 0.5;
    double bias = 0.0;
    FeatureVocab vocab;
    std::vector<double> weights;  // aligned with vocab
};

struct LogregConfig {
    int epochs = 200;
    double step_size = 0.5;
    double l2_lambda = 1e-4;
    std::uint64_t rng_seed = 1;
};

struct LogregMetrics {
    std::optional<double> dev_precision;
    std::optional<double> dev_recall;
    double final_loss = 0.0;
};

/// Examples with features resolved to vocab ids (unknown features dropped).
struct EncodedExample {
    std::vector<int> features;
    int label = 0;
};

/// L2-regularized logistic loss and gradient over the flat parameter vector
/// [weights..., bias]; the bias is not regularized.
std::pair<double, std::vector<double>> logreg_loss_and_gradient(
    const std::vector<double>& params, const std::vector<EncodedExample>& data,
    double l2_lambda);

/// Full-batch gradient descent; single-class training data is an error.
std::pair<SentClassifierModel, LogregMetrics> train_logreg(const SentSplits& splits,
                                                           const std::string& facet_id,
                                                           const LogregConfig& config);

double predict_prob(const SentClassifierModel& model, const std::vector<std::string>& features);
double predict_prob(const SentClassifierModel& model, const Sentence& sentence,
                    const PatternMatchReport* report = nullptr);
bool classify(const SentClassifierModel& model, const Sentence& sentence,
              const PatternMatchReport* report = nullptr);

void save_sent_model(const SentClassifierModel& model, const std::filesystem::path& file);
SentClassifierModel load_sent_model(const std::filesystem::path& file);

}  // namespace scifex
