#include "scifex/sent_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "json_util.hpp"
#include "scifex/text.hpp"

namespace scifex {
namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// log(1 + e^x) without overflow for large |x|.
double softplus(double x) {
    if (x > 0.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

std::string length_bucket(std::size_t units) {
    if (units == 0) return "len=0";
    if (units <= 5) return "len=1-5";
    if (units <= 10) return "len=6-10";
    if (units <= 20) return "len=11-20";
    if (units <= 40) return "len=21-40";
    return "len=41+";
}

std::vector<std::string> lexical_units(const Sentence& sentence) {
    std::vector<std::string> units;
    if (sentence.has_tokens) {
        for (const Token& token : sentence.tokens) {
            units.push_back(to_lower(token.lemma.empty() ? token.surface : token.lemma));
        }
    } else {
        std::istringstream stream(sentence.text);
        std::string word;
        while (stream >> word) units.push_back(to_lower(word));
    }
    return units;
}

void shuffle_indices(std::vector<std::size_t>& indices, std::mt19937_64& rng) {
    for (std::size_t i = indices.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(indices[i - 1], indices[j]);
    }
}

std::vector<EncodedExample> encode(const std::vector<SentExample>& examples,
                                   const FeatureVocab& vocab) {
    std::vector<EncodedExample> out;
    out.reserve(examples.size());
    for (const SentExample& example : examples) {
        EncodedExample encoded;
        encoded.label = example.label;
        for (const std::string& name : example.features) {
            if (name == "bias") continue;
            const int id = vocab.lookup(name);
            if (id >= 0) encoded.features.push_back(id);
        }
        out.push_back(std::move(encoded));
    }
    return out;
}

}  // namespace

std::vector<std::string> sentence_features(const Sentence& sentence,
                                           const PatternMatchReport* report) {
    std::vector<std::string> out;
    out.push_back("bias");
    const std::vector<std::string> units = lexical_units(sentence);
    out.push_back(length_bucket(units.size()));
    for (const std::string& unit : units) out.push_back("uni=" + unit);
    for (std::size_t i = 1; i < units.size(); ++i) {
        out.push_back("bi=" + units[i - 1] + "_" + units[i]);
    }
    if (!sentence.urls.empty() || !detect_urls(sentence.text).empty()) out.push_back("has_url");
    if (!sentence.footnote_marks.empty()) out.push_back("has_footnote");
    if (!sentence.citation_marks.empty()) out.push_back("has_citation");
    if (report != nullptr) {
        for (const auto& [slot, match] : report->slots) {
            if (match.count > 0) {
                out.push_back("slot=" + std::string(pattern_slot_id(slot)));
            }
        }
    }
    return out;
}

SentSplits build_training_set(const std::vector<CandidateSentence>& candidates,
                              const std::vector<DocumentRecord>& corpus, double neg_ratio,
                              const SplitSpec& split, const FacetRules* rules,
                              const PatternConfig* config, Diagnostics* diagnostics) {
    if (neg_ratio <= 0.0) throw ValidationError("neg_ratio must be positive");
    if (std::abs(split.train + split.dev + split.test - 1.0) > 1e-9) {
        throw ValidationError("split fractions must sum to 1");
    }

    std::set<std::pair<std::string, std::string>> positive_keys;
    for (const CandidateSentence& candidate : candidates) {
        positive_keys.emplace(candidate.doc_id, candidate.sentence_id);
    }
    if (positive_keys.empty()) throw ValidationError("no positive sentences");

    struct Pending {
        const DocumentRecord* doc = nullptr;
        const Sentence* sentence = nullptr;
        int label = 0;
    };
    std::vector<Pending> positives;
    std::vector<Pending> pool;
    for (const DocumentRecord& doc : corpus) {
        for (const Section* section : doc.all_sections()) {
            for (const Sentence& sentence : section->sentences) {
                if (positive_keys.count({doc.doc_id, sentence.sentence_id}) > 0) {
                    positives.push_back({&doc, &sentence, 1});
                } else {
                    pool.push_back({&doc, &sentence, 0});
                }
            }
        }
    }
    if (positives.empty()) {
        throw ValidationError("candidate sentences not found in corpus");
    }

    std::mt19937_64 rng(split.rng_seed);
    std::size_t wanted =
        static_cast<std::size_t>(std::llround(neg_ratio * static_cast<double>(positives.size())));
    if (wanted > pool.size()) {
        if (diagnostics) {
            diagnostics->warn("negative sample capped at " + std::to_string(pool.size()) +
                              " (wanted " + std::to_string(wanted) + ")");
        }
        wanted = pool.size();
    }
    std::vector<std::size_t> pool_order(pool.size());
    for (std::size_t i = 0; i < pool_order.size(); ++i) pool_order[i] = i;
    shuffle_indices(pool_order, rng);

    std::vector<Pending> chosen = positives;
    for (std::size_t i = 0; i < wanted; ++i) chosen.push_back(pool[pool_order[i]]);

    std::vector<std::size_t> order(chosen.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (split.by_document) {
        // Whole documents go to one split: shuffle doc ids, then keep each
        // document's examples adjacent in the shuffled order.
        std::vector<std::string> doc_ids;
        for (const Pending& p : chosen) {
            if (std::find(doc_ids.begin(), doc_ids.end(), p.doc->doc_id) == doc_ids.end()) {
                doc_ids.push_back(p.doc->doc_id);
            }
        }
        std::vector<std::size_t> doc_order(doc_ids.size());
        for (std::size_t i = 0; i < doc_order.size(); ++i) doc_order[i] = i;
        shuffle_indices(doc_order, rng);
        order.clear();
        for (std::size_t d : doc_order) {
            for (std::size_t i = 0; i < chosen.size(); ++i) {
                if (chosen[i].doc->doc_id == doc_ids[d]) order.push_back(i);
            }
        }
    } else {
        shuffle_indices(order, rng);
    }

    const std::size_t n = order.size();
    const std::size_t train_n =
        static_cast<std::size_t>(std::llround(split.train * static_cast<double>(n)));
    const std::size_t dev_n =
        static_cast<std::size_t>(std::llround(split.dev * static_cast<double>(n)));

    SentSplits out;
    for (std::size_t rank = 0; rank < n; ++rank) {
        const Pending& p = chosen[order[rank]];
        SentExample example;
        example.label = p.label;
        if (rules != nullptr && config != nullptr && p.sentence->has_tokens) {
            const PatternMatchReport report = match_rules(*p.sentence, *rules, *p.doc, *config);
            example.features = sentence_features(*p.sentence, &report);
        } else {
            example.features = sentence_features(*p.sentence);
        }
        std::string split_name;
        if (rank < train_n) {
            split_name = "train";
            out.train.push_back(std::move(example));
        } else if (rank < train_n + dev_n) {
            split_name = "dev";
            out.dev.push_back(std::move(example));
        } else {
            split_name = "test";
            out.test.push_back(std::move(example));
        }
        out.assignments.push_back(
            {p.doc->doc_id, p.sentence->sentence_id, p.label, split_name});
    }
    return out;
}

void write_split_assignments(const std::vector<SplitAssignment>& assignments,
                             const std::filesystem::path& file) {
    std::string body;
    for (const SplitAssignment& row : assignments) {
        nlohmann::ordered_json line;
        line["doc_id"] = row.doc_id;
        line["sentence_id"] = row.sentence_id;
        line["label"] = row.label;
        line["split"] = row.split;
        body += line.dump();
        body += "\n";
    }
    detail::write_file(file, body);
}

std::pair<double, std::vector<double>> logreg_loss_and_gradient(
    const std::vector<double>& params, const std::vector<EncodedExample>& data,
    double l2_lambda) {
    if (params.empty()) throw ValidationError("parameter vector must include a bias");
    const std::size_t weight_count = params.size() - 1;
    const double bias = params.back();
    double loss = 0.0;
    std::vector<double> grad(params.size(), 0.0);
    for (const EncodedExample& example : data) {
        double score = bias;
        for (int id : example.features) score += params[static_cast<std::size_t>(id)];
        loss += example.label == 1 ? softplus(-score) : softplus(score);
        const double factor = sigmoid(score) - static_cast<double>(example.label);
        for (int id : example.features) grad[static_cast<std::size_t>(id)] += factor;
        grad.back() += factor;
    }
    // Bias stays unregularized.
    for (std::size_t i = 0; i < weight_count; ++i) {
        loss += 0.5 * l2_lambda * params[i] * params[i];
        grad[i] += l2_lambda * params[i];
    }
    return {loss, std::move(grad)};
}

std::pair<SentClassifierModel, LogregMetrics> train_logreg(const SentSplits& splits,
                                                           const std::string& facet_id,
                                                           const LogregConfig& config) {
    bool has_pos = false;
    bool has_neg = false;
    for (const SentExample& example : splits.train) {
        (example.label == 1 ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg) {
        throw ValidationError("training split must contain both classes");
    }

    SentClassifierModel model;
    model.facet_id = facet_id;
    for (const SentExample& example : splits.train) {
        for (const std::string& name : example.features) {
            if (name != "bias") model.vocab.intern(name);
        }
    }
    model.weights.assign(model.vocab.size(), 0.0);

    const std::vector<EncodedExample> train = encode(splits.train, model.vocab);
    std::vector<double> params(model.vocab.size() + 1, 0.0);
    const double scale = config.step_size / static_cast<double>(train.size());
    LogregMetrics metrics;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        auto [loss, grad] = logreg_loss_and_gradient(params, train, config.l2_lambda);
        metrics.final_loss = loss;
        for (std::size_t i = 0; i < params.size(); ++i) params[i] -= scale * grad[i];
    }
    std::copy(params.begin(), params.end() - 1, model.weights.begin());
    model.bias = params.back();

    if (!splits.dev.empty()) {
        int tp = 0;
        int fp = 0;
        int fn = 0;
        for (const SentExample& example : splits.dev) {
            const bool predicted =
                predict_prob(model, example.features) >= model.decision_threshold;
            if (predicted && example.label == 1) ++tp;
            if (predicted && example.label == 0) ++fp;
            if (!predicted && example.label == 1) ++fn;
        }
        if (tp + fp > 0) metrics.dev_precision = static_cast<double>(tp) / (tp + fp);
        if (tp + fn > 0) metrics.dev_recall = static_cast<double>(tp) / (tp + fn);
    }
    return {std::move(model), metrics};
}

double predict_prob(const SentClassifierModel& model, const std::vector<std::string>& features) {
    double score = model.bias;
    for (const std::string& name : features) {
        if (name == "bias") continue;
        const int id = model.vocab.lookup(name);
        if (id >= 0) score += model.weights[static_cast<std::size_t>(id)];
    }
    return sigmoid(score);
}

double predict_prob(const SentClassifierModel& model, const Sentence& sentence,
                    const PatternMatchReport* report) {
    return predict_prob(model, sentence_features(sentence, report));
}

bool classify(const SentClassifierModel& model, const Sentence& sentence,
              const PatternMatchReport* report) {
    return predict_prob(model, sentence, report) >= model.decision_threshold;
}

void save_sent_model(const SentClassifierModel& model, const std::filesystem::path& file) {
    nlohmann::ordered_json doc;
    doc["format"] = "scifex-sentclf";
    doc["version"] = 1;
    doc["facet"] = model.facet_id;
    doc["template_version"] = model.template_version;
    doc["decision_threshold"] = model.decision_threshold;
    doc["bias"] = model.bias;
    nlohmann::ordered_json weights = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < model.vocab.size(); ++i) {
        if (model.weights[i] == 0.0) continue;
        weights.push_back(
            nlohmann::ordered_json::array({model.vocab.names()[i], model.weights[i]}));
    }
    doc["weights"] = std::move(weights);
    detail::write_file(file, doc.dump(2) + "\n");
}

SentClassifierModel load_sent_model(const std::filesystem::path& file) {
    const nlohmann::json doc = detail::parse_json(detail::read_file(file), file.string());
    if (doc.value("format", "") != "scifex-sentclf") {
        throw ValidationError(file.string() + ": not a sentence classifier file");
    }
    if (doc.value("version", 0) != 1) {
        throw ValidationError(file.string() + ": unsupported model version");
    }
    SentClassifierModel model;
    model.facet_id = doc.value("facet", std::string());
    model.template_version = doc.value("template_version", std::string("sent-v1"));
    model.decision_threshold = doc.value("decision_threshold", 0.5);
    model.bias = doc.value("bias", 0.0);
    for (const auto& pair : doc.at("weights")) {
        model.vocab.intern(pair.at(0).get<std::string>());
        model.weights.push_back(pair.at(1).get<double>());
    }
    return model;
}

}  // namespace scifex
