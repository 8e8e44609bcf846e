#include "scifex/crf.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <random>

#include "json_util.hpp"
#include "scifex/text.hpp"

namespace scifex {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logsumexp(const double* values, std::size_t count) {
    double best = kNegInf;
    for (std::size_t i = 0; i < count; ++i) best = std::max(best, values[i]);
    if (best == kNegInf) return kNegInf;
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) acc += std::exp(values[i] - best);
    return best + std::log(acc);
}

std::string word_shape(const std::string& surface) {
    std::string shape;
    shape.reserve(surface.size());
    for (unsigned char c : surface) {
        if (std::isupper(c)) {
            shape.push_back('X');
        } else if (std::islower(c)) {
            shape.push_back('x');
        } else if (std::isdigit(c)) {
            shape.push_back('d');
        } else {
            shape.push_back(static_cast<char>(c));
        }
    }
    return shape;
}

// Emission scores for every position, row-major n x T.
std::vector<double> emission_matrix(const CrfModel& model, const FeaturizedSentence& input) {
    const std::size_t tags = model.tag_count();
    std::vector<double> scores(input.length() * tags, 0.0);
    for (std::size_t i = 0; i < input.length(); ++i) {
        for (int feature : input.features[i]) {
            const double* row = model.emission.data() + static_cast<std::size_t>(feature) * tags;
            double* out = scores.data() + i * tags;
            for (std::size_t t = 0; t < tags; ++t) out[t] += row[t];
        }
    }
    return scores;
}

// Standard-specified Fisher-Yates; std::shuffle's draw order is
// implementation-defined, which would break cross-toolchain determinism.
void shuffle_indices(std::vector<std::size_t>& indices, std::mt19937_64& rng) {
    for (std::size_t i = indices.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(indices[i - 1], indices[j]);
    }
}

}  // namespace

std::vector<std::string> crf_features(const Sentence& sentence, int position,
                                      const CrfFeaturizerConfig& config) {
    std::vector<std::string> out;
    const int n = static_cast<int>(sentence.tokens.size());
    out.push_back("bias");
    for (int off = -2; off <= 2; ++off) {
        const std::string tag = "[" + std::to_string(off) + "]";
        const int at = position + off;
        if (at < 0 || at >= n) {
            out.push_back("w" + tag + "=<pad>");
            continue;
        }
        const Token& tok = sentence.tokens[static_cast<std::size_t>(at)];
        const std::string surface = to_lower(tok.surface);
        const std::string lemma = tok.lemma.empty() ? surface : to_lower(tok.lemma);
        out.push_back("w" + tag + "=" + surface);
        out.push_back("lem" + tag + "=" + lemma);
        out.push_back("pos" + tag + "=" + (tok.upos.empty() ? "X" : tok.upos));
    }

    const Token& here = sentence.tokens[static_cast<std::size_t>(position)];
    const std::string lower = to_lower(here.surface);
    out.push_back("shape=" + word_shape(here.surface));
    for (std::size_t len = 1; len <= 3 && len <= lower.size(); ++len) {
        out.push_back("pre" + std::to_string(len) + "=" + lower.substr(0, len));
        out.push_back("suf" + std::to_string(len) + "=" + lower.substr(lower.size() - len));
    }
    if (!here.surface.empty() && std::isupper(static_cast<unsigned char>(here.surface[0]))) {
        out.push_back("cap");
    }
    bool digit = false;
    for (unsigned char c : here.surface) digit = digit || std::isdigit(c);
    if (digit) out.push_back("digit");
    if (!here.surface.empty() && std::isdigit(static_cast<unsigned char>(here.surface.back()))) {
        out.push_back("enddigit");
    }
    if (!detect_urls(here.surface).empty()) out.push_back("url");

    const std::string lemma_lower = here.lemma.empty() ? lower : to_lower(here.lemma);
    for (const auto& [group, terms] : config.lexicons) {
        if (terms.count(lemma_lower) > 0 || terms.count(lower) > 0) {
            out.push_back("lex=" + group);
        }
    }
    return out;
}

int FeatureVocab::intern(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    const int id = static_cast<int>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    return id;
}

int FeatureVocab::lookup(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

std::vector<double> CrfModel::parameters() const {
    std::vector<double> flat(emission.size() + transition.size());
    std::copy(emission.begin(), emission.end(), flat.begin());
    std::copy(transition.begin(), transition.end(),
              flat.begin() + static_cast<std::ptrdiff_t>(emission.size()));
    return flat;
}

void CrfModel::set_parameters(std::span<const double> params) {
    if (params.size() != emission.size() + transition.size()) {
        throw ValidationError("parameter vector size mismatch");
    }
    std::copy(params.begin(), params.begin() + static_cast<std::ptrdiff_t>(emission.size()),
              emission.begin());
    std::copy(params.begin() + static_cast<std::ptrdiff_t>(emission.size()), params.end(),
              transition.begin());
}

CrfModel make_zero_model(LabelScheme scheme, CrfFeaturizerConfig featurizer, FeatureVocab vocab,
                         double l2_lambda) {
    CrfModel model;
    model.scheme = std::move(scheme);
    model.featurizer = std::move(featurizer);
    model.l2_lambda = l2_lambda;
    model.vocab = std::move(vocab);
    model.emission.assign(model.vocab.size() * model.tag_count(), 0.0);
    model.transition.assign(model.tag_count() * model.tag_count(), 0.0);
    return model;
}

FeaturizedSentence featurize_for_model(const CrfModel& model, const Sentence& sentence) {
    FeaturizedSentence out;
    out.features.resize(sentence.tokens.size());
    for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
        for (const std::string& name :
             crf_features(sentence, static_cast<int>(i), model.featurizer)) {
            const int id = model.vocab.lookup(name);
            if (id >= 0) out.features[i].push_back(id);
        }
    }
    return out;
}

CrfMarginals log_partition_and_marginals(const CrfModel& model, const FeaturizedSentence& input) {
    CrfMarginals result;
    const std::size_t n = input.length();
    const std::size_t tags = model.tag_count();
    if (n == 0) return result;

    const std::vector<double> em = emission_matrix(model, input);
    std::vector<double> alpha(n * tags, kNegInf);
    std::vector<double> beta(n * tags, 0.0);
    std::vector<double> scratch(tags);

    for (std::size_t t = 0; t < tags; ++t) alpha[t] = em[t];
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t t = 0; t < tags; ++t) {
            for (std::size_t s = 0; s < tags; ++s) {
                scratch[s] = alpha[(i - 1) * tags + s] + model.transition[s * tags + t];
            }
            alpha[i * tags + t] = em[i * tags + t] + logsumexp(scratch.data(), tags);
        }
    }
    result.log_z = logsumexp(alpha.data() + (n - 1) * tags, tags);

    for (std::size_t i = n - 1; i > 0; --i) {
        for (std::size_t t = 0; t < tags; ++t) {
            for (std::size_t s = 0; s < tags; ++s) {
                scratch[s] =
                    model.transition[t * tags + s] + em[i * tags + s] + beta[i * tags + s];
            }
            beta[(i - 1) * tags + t] = logsumexp(scratch.data(), tags);
        }
    }
    for (std::size_t t = 0; t < tags; ++t) scratch[t] = em[t] + beta[t];
    result.log_z_backward = logsumexp(scratch.data(), tags);

    result.node.assign(n * tags, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t t = 0; t < tags; ++t) {
            result.node[i * tags + t] =
                std::exp(alpha[i * tags + t] + beta[i * tags + t] - result.log_z);
        }
    }
    if (n > 1) {
        result.edge.assign((n - 1) * tags * tags, 0.0);
        for (std::size_t i = 1; i < n; ++i) {
            for (std::size_t s = 0; s < tags; ++s) {
                for (std::size_t t = 0; t < tags; ++t) {
                    result.edge[(i - 1) * tags * tags + s * tags + t] =
                        std::exp(alpha[(i - 1) * tags + s] + model.transition[s * tags + t] +
                                 em[i * tags + t] + beta[i * tags + t] - result.log_z);
                }
            }
        }
    }
    return result;
}

double path_score(const CrfModel& model, const FeaturizedSentence& input,
                  const std::vector<int>& tags) {
    if (tags.size() != input.length()) throw ValidationError("tag path length mismatch");
    const std::size_t t_count = model.tag_count();
    double score = 0.0;
    for (std::size_t i = 0; i < tags.size(); ++i) {
        for (int feature : input.features[i]) {
            score += model.emission[static_cast<std::size_t>(feature) * t_count +
                                    static_cast<std::size_t>(tags[i])];
        }
        if (i > 0) {
            score += model.transition[static_cast<std::size_t>(tags[i - 1]) * t_count +
                                      static_cast<std::size_t>(tags[i])];
        }
    }
    return score;
}

std::pair<double, std::vector<double>> nll_and_gradient(
    const CrfModel& model, const std::vector<FeaturizedSentence>& inputs,
    const std::vector<std::vector<int>>& gold_tags) {
    if (inputs.size() != gold_tags.size()) throw ValidationError("batch size mismatch");
    const std::size_t tags = model.tag_count();
    const std::size_t em_size = model.emission.size();
    std::vector<double> grad(em_size + model.transition.size(), 0.0);
    double nll = 0.0;

    for (std::size_t k = 0; k < inputs.size(); ++k) {
        const FeaturizedSentence& input = inputs[k];
        const std::vector<int>& gold = gold_tags[k];
        const std::size_t n = input.length();
        if (n == 0) continue;
        const CrfMarginals marg = log_partition_and_marginals(model, input);
        nll += marg.log_z - path_score(model, input, gold);

        for (std::size_t i = 0; i < n; ++i) {
            for (int feature : input.features[i]) {
                double* row = grad.data() + static_cast<std::size_t>(feature) * tags;
                for (std::size_t t = 0; t < tags; ++t) row[t] += marg.node[i * tags + t];
                row[static_cast<std::size_t>(gold[i])] -= 1.0;
            }
        }
        for (std::size_t i = 1; i < n; ++i) {
            const double* edge = marg.edge.data() + (i - 1) * tags * tags;
            double* trans = grad.data() + em_size;
            for (std::size_t st = 0; st < tags * tags; ++st) trans[st] += edge[st];
            trans[static_cast<std::size_t>(gold[i - 1]) * tags +
                  static_cast<std::size_t>(gold[i])] -= 1.0;
        }
    }

    const std::vector<double> params = model.parameters();
    double sq = 0.0;
    for (std::size_t i = 0; i < params.size(); ++i) {
        sq += params[i] * params[i];
        grad[i] += model.l2_lambda * params[i];
    }
    nll += 0.5 * model.l2_lambda * sq;
    return {nll, std::move(grad)};
}

CrfTrainResult train_crf(const std::vector<CrfTrainingSentence>& data, const LabelScheme& scheme,
                         const CrfFeaturizerConfig& featurizer, const CrfTrainConfig& config) {
    if (config.batch_size <= 0) throw ValidationError("batch_size must be positive");
    if (config.epochs < 0) throw ValidationError("epochs must be non-negative");

    FeatureVocab vocab;
    std::vector<FeaturizedSentence> inputs(data.size());
    std::vector<std::vector<int>> gold(data.size());
    for (std::size_t k = 0; k < data.size(); ++k) {
        const CrfTrainingSentence& example = data[k];
        if (example.gold_tags.size() != example.sentence.tokens.size()) {
            throw ValidationError("gold tag count differs from token count in sentence " +
                                  example.sentence.sentence_id);
        }
        inputs[k].features.resize(example.sentence.tokens.size());
        for (std::size_t i = 0; i < example.sentence.tokens.size(); ++i) {
            for (const std::string& name :
                 crf_features(example.sentence, static_cast<int>(i), featurizer)) {
                inputs[k].features[i].push_back(vocab.intern(name));
            }
            const int tag = scheme.tag_index(example.gold_tags[i]);
            if (tag < 0) {
                throw ValidationError("tag outside scheme: " + example.gold_tags[i]);
            }
            gold[k].push_back(tag);
        }
    }

    CrfTrainResult result;
    result.model = make_zero_model(scheme, featurizer, std::move(vocab), config.l2_lambda);
    CrfModel& model = result.model;

    std::mt19937_64 rng(config.rng_seed);
    std::vector<std::size_t> order(data.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    const std::size_t batch = static_cast<std::size_t>(config.batch_size);
    std::vector<FeaturizedSentence> batch_inputs;
    std::vector<std::vector<int>> batch_gold;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        shuffle_indices(order, rng);
        for (std::size_t begin = 0; begin < order.size(); begin += batch) {
            const std::size_t end = std::min(begin + batch, order.size());
            batch_inputs.clear();
            batch_gold.clear();
            for (std::size_t i = begin; i < end; ++i) {
                batch_inputs.push_back(inputs[order[i]]);
                batch_gold.push_back(gold[order[i]]);
            }
            auto [nll, grad] = nll_and_gradient(model, batch_inputs, batch_gold);
            (void)nll;
            const double scale = config.step_size / static_cast<double>(end - begin);
            std::vector<double> params = model.parameters();
            for (std::size_t i = 0; i < params.size(); ++i) params[i] -= scale * grad[i];
            model.set_parameters(params);
        }
        result.epoch_nll.push_back(nll_and_gradient(model, inputs, gold).first);
    }
    return result;
}

std::pair<std::vector<int>, double> viterbi_indices(const CrfModel& model,
                                                    const FeaturizedSentence& input) {
    const std::size_t n = input.length();
    const std::size_t tags = model.tag_count();
    if (n == 0) return {{}, 0.0};

    const std::vector<double> em = emission_matrix(model, input);
    std::vector<double> delta(n * tags, 0.0);
    std::vector<int> back(n * tags, 0);
    for (std::size_t t = 0; t < tags; ++t) delta[t] = em[t];
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t t = 0; t < tags; ++t) {
            double best = kNegInf;
            int best_s = 0;
            for (std::size_t s = 0; s < tags; ++s) {
                const double cand = delta[(i - 1) * tags + s] + model.transition[s * tags + t];
                if (cand > best) {
                    best = cand;
                    best_s = static_cast<int>(s);
                }
            }
            delta[i * tags + t] = em[i * tags + t] + best;
            back[i * tags + t] = best_s;
        }
    }

    double best = kNegInf;
    int best_t = 0;
    for (std::size_t t = 0; t < tags; ++t) {
        if (delta[(n - 1) * tags + t] > best) {
            best = delta[(n - 1) * tags + t];
            best_t = static_cast<int>(t);
        }
    }
    std::vector<int> path(n);
    path[n - 1] = best_t;
    for (std::size_t i = n - 1; i > 0; --i) {
        path[i - 1] = back[i * tags + static_cast<std::size_t>(path[i])];
    }
    return {std::move(path), best};
}

TaggedSentence viterbi(const CrfModel& model, const Sentence& sentence) {
    auto [indices, score] = viterbi_indices(model, featurize_for_model(model, sentence));
    TaggedSentence out;
    out.score = score;
    out.tags.reserve(indices.size());
    for (int tag : indices) out.tags.push_back(model.scheme.tags()[static_cast<std::size_t>(tag)]);
    return out;
}

double token_accuracy(const CrfModel& model, const std::vector<CrfTrainingSentence>& data) {
    std::size_t total = 0;
    std::size_t correct = 0;
    for (const CrfTrainingSentence& example : data) {
        const TaggedSentence predicted = viterbi(model, example.sentence);
        for (std::size_t i = 0; i < example.gold_tags.size(); ++i) {
            ++total;
            if (predicted.tags[i] == example.gold_tags[i]) ++correct;
        }
    }
    return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

void save_crf_model(const CrfModel& model, const std::filesystem::path& file) {
    nlohmann::ordered_json doc;
    doc["format"] = "scifex-crf";
    doc["version"] = 1;
    doc["template_version"] = model.featurizer.template_version;
    doc["entity_types"] = model.scheme.entity_types();
    doc["l2_lambda"] = model.l2_lambda;
    nlohmann::ordered_json lex = nlohmann::ordered_json::object();
    for (const auto& [group, terms] : model.featurizer.lexicons) {
        lex[group] = std::vector<std::string>(terms.begin(), terms.end());
    }
    doc["lexicons"] = std::move(lex);

    const std::size_t tags = model.tag_count();
    nlohmann::ordered_json trans = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < tags; ++s) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t t = 0; t < tags; ++t) row.push_back(model.transition[s * tags + t]);
        trans.push_back(std::move(row));
    }
    doc["transitions"] = std::move(trans);

    // Zero weights are dropped; reloading re-interns features in file order.
    nlohmann::ordered_json emissions = nlohmann::ordered_json::array();
    for (std::size_t f = 0; f < model.vocab.size(); ++f) {
        for (std::size_t t = 0; t < tags; ++t) {
            const double w = model.emission[f * tags + t];
            if (w == 0.0) continue;
            emissions.push_back(nlohmann::ordered_json::array(
                {model.vocab.names()[f], model.scheme.tags()[t], w}));
        }
    }
    doc["emissions"] = std::move(emissions);
    detail::write_file(file, doc.dump(2) + "\n");
}

CrfModel load_crf_model(const std::filesystem::path& file) {
    const nlohmann::json doc = detail::parse_json(detail::read_file(file), file.string());
    if (doc.value("format", "") != "scifex-crf") {
        throw ValidationError(file.string() + ": not a crf model file");
    }
    if (doc.value("version", 0) != 1) {
        throw ValidationError(file.string() + ": unsupported model version");
    }

    CrfFeaturizerConfig featurizer;
    featurizer.template_version = doc.value("template_version", std::string("sparse-v1"));
    if (doc.contains("lexicons")) {
        for (const auto& [group, terms] : doc.at("lexicons").items()) {
            std::set<std::string>& target = featurizer.lexicons[group];
            for (const auto& term : terms) target.insert(term.get<std::string>());
        }
    }

    LabelScheme scheme(doc.at("entity_types").get<std::vector<std::string>>());
    const std::size_t tags = scheme.tag_count();

    FeatureVocab vocab;
    const auto& emissions = doc.at("emissions");
    for (const auto& triple : emissions) vocab.intern(triple.at(0).get<std::string>());

    CrfModel model =
        make_zero_model(std::move(scheme), std::move(featurizer), std::move(vocab),
                        doc.value("l2_lambda", 1e-4));

    const auto& trans = doc.at("transitions");
    if (trans.size() != tags) throw ValidationError(file.string() + ": transition matrix shape");
    for (std::size_t s = 0; s < tags; ++s) {
        if (trans[s].size() != tags) {
            throw ValidationError(file.string() + ": transition matrix shape");
        }
        for (std::size_t t = 0; t < tags; ++t) {
            model.transition[s * tags + t] = trans[s][t].get<double>();
        }
    }
    for (const auto& triple : emissions) {
        const int feature = model.vocab.lookup(triple.at(0).get<std::string>());
        const int tag = model.scheme.tag_index(triple.at(1).get<std::string>());
        if (tag < 0) {
            throw ValidationError(file.string() + ": emission tag outside scheme: " +
                                  triple.at(1).get<std::string>());
        }
        model.emission[static_cast<std::size_t>(feature) * tags + static_cast<std::size_t>(tag)] =
            triple.at(2).get<double>();
    }
    return model;
}

}  // namespace scifex
