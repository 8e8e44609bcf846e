#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "scifex/biluo.hpp"
#include "scifex/corpus.hpp"
#include "scifex/errors.hpp"

namespace scifex {

inline constexpr const char* kCrfTemplateVersion = "sparse-v1";

/// Sparse-feature templates replacing a contextual encoder: surface, lemma
/// and POS in a +-2 window, word shape, affixes, orthographic flags and
/// lexicon membership. `lexicons` maps a group name to lowercase terms.
struct CrfFeaturizerConfig {
    std::string template_version = kCrfTemplateVersion;
    std::map<std::string, std::set<std::string>> lexicons;
};

/// Feature names for one token position. Deterministic in the sentence and
/// config; out-of-window offsets produce padding features.
std::vector<std::string> crf_features(const Sentence& sentence, int position,
                                      const CrfFeaturizerConfig& config);

/// Append-only feature-string interner.
class FeatureVocab {
public:
    int intern(const std::string& name);
    int lookup(const std::string& name) const;
    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
};

/// Linear-chain CRF. Parameters are a dense emission block (feature x tag)
/// plus a dense transition matrix (tag x tag); sequences are scored as the
/// sum of per-position emissions and adjacent-tag transitions, with no
/// separate start/stop potentials.
struct CrfModel {
    LabelScheme scheme;
    CrfFeaturizerConfig featurizer;
    double l2_lambda = 1e-4;
    FeatureVocab vocab;
    std::vector<double> emission;    // vocab.size() x T, row-major by feature
    std::vector<double> transition;  // T x T, row-major by source tag

    std::size_t tag_count() const { return scheme.tag_count(); }
    double emission_weight(int feature, int tag) const {
        return emission[static_cast<std::size_t>(feature) * tag_count() + tag];
    }
    double transition_weight(int from, int to) const {
        return transition[static_cast<std::size_t>(from) * tag_count() + to];
    }

    /// Flat view [emission..., transition...] used by training and the
    /// finite-difference checks.
    std::vector<double> parameters() const;
    void set_parameters(std::span<const double> params);
};

CrfModel make_zero_model(LabelScheme scheme, CrfFeaturizerConfig featurizer, FeatureVocab vocab,
                         double l2_lambda);

/// Interned feature ids per position; unknown features are dropped at
/// lookup, so prediction on unseen vocabulary degrades gracefully.
struct FeaturizedSentence {
    std::vector<std::vector<int>> features;
    std::size_t length() const { return features.size(); }
};

FeaturizedSentence featurize_for_model(const CrfModel& model, const Sentence& sentence);

struct CrfMarginals {
    double log_z = 0.0;
    double log_z_backward = 0.0;
    std::vector<double> node;  // n x T, P(tag at position)
    std::vector<double> edge;  // (n-1) x T x T, P(from at i-1, to at i)
};

/// Forward-backward in log space.
CrfMarginals log_partition_and_marginals(const CrfModel& model, const FeaturizedSentence& input);

double path_score(const CrfModel& model, const FeaturizedSentence& input,
                  const std::vector<int>& tags);

struct CrfTrainingSentence {
    Sentence sentence;
    std::vector<std::string> gold_tags;
};

/// Negative log-likelihood of the batch plus (lambda/2)*||w||^2, and its
/// gradient in the flat parameter layout.
std::pair<double, std::vector<double>> nll_and_gradient(
    const CrfModel& model, const std::vector<FeaturizedSentence>& inputs,
    const std::vector<std::vector<int>>& gold_tags);

struct CrfTrainConfig {
    int epochs = 10;
    int batch_size = 32;
    double step_size = 0.1;
    double l2_lambda = 1e-4;
    std::uint64_t rng_seed = 1;
};

struct CrfTrainResult {
    CrfModel model;
    std::vector<double> epoch_nll;  // full-data objective after each epoch
};

/// Mini-batch gradient descent with per-epoch shuffling; bitwise
/// deterministic for a fixed seed. Tags outside the scheme fail before any
/// training step.
CrfTrainResult train_crf(const std::vector<CrfTrainingSentence>& data, const LabelScheme& scheme,
                         const CrfFeaturizerConfig& featurizer, const CrfTrainConfig& config);

struct TaggedSentence {
    std::vector<std::string> tags;
    double score = 0.0;  // log score of the returned path
};

/// Max-scoring tag sequence; ties resolve to the lowest tag index.
TaggedSentence viterbi(const CrfModel& model, const Sentence& sentence);
std::pair<std::vector<int>, double> viterbi_indices(const CrfModel& model,
                                                    const FeaturizedSentence& input);

double token_accuracy(const CrfModel& model, const std::vector<CrfTrainingSentence>& data);

void save_crf_model(const CrfModel& model, const std::filesystem::path& file);
CrfModel load_crf_model(const std::filesystem::path& file);

}  // namespace scifex
