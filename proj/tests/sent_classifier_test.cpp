#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "scifex/patterns.hpp"
#include "scifex/sent_classifier.hpp"
#include "support/crf_oracle.hpp"
#include "support/fixtures.hpp"

using namespace scifex;

namespace {

SentSplits planted_splits(Diagnostics* diag = nullptr, double neg_ratio = 2.0,
                          bool with_rules = false) {
    auto planted = fixtures::planted_corpus();
    auto config = default_pattern_config();
    std::vector<CandidateSentence> candidates;
    for (const auto& doc : planted.docs) {
        auto found = source_code_candidates(doc, config);
        candidates.insert(candidates.end(), found.begin(), found.end());
    }
    SplitSpec split;
    return build_training_set(candidates, planted.docs, neg_ratio, split,
                              with_rules ? &config.source_code : nullptr,
                              with_rules ? &config : nullptr, diag);
}

}  // namespace

TEST_CASE("sentence features cover lexical and surface evidence") {
    auto s = fixtures::sentence(
        "s1", {fixtures::tok("We", "we", "PRON", 1, "nsubj"),
               fixtures::tok("release", "release", "VERB", -1, "root"),
               fixtures::tok("code", "code", "NOUN", 1, "obj"),
               fixtures::tok("at", "at", "ADP", 4, "case"),
               fixtures::tok("https://github.com/a/b", "https://github.com/a/b", "X", 1, "obl")},
        {"1"}, {"3"});
    auto features = sentence_features(s);

    auto has = [&](const std::string& name) {
        return std::find(features.begin(), features.end(), name) != features.end();
    };
    CHECK(has("bias"));
    CHECK(has("len=1-5"));
    CHECK(has("uni=release"));
    CHECK(has("bi=we_release"));
    CHECK(has("has_url"));
    CHECK(has("has_footnote"));
    CHECK(has("has_citation"));

    // A slot report adds indicator features.
    PatternMatchReport report;
    report.slots[PatternSlot::Root] = {1, {1}};
    auto with_report = sentence_features(s, &report);
    CHECK(with_report.size() == features.size() + 1);
    CHECK(std::find(with_report.begin(), with_report.end(), "slot=root") != with_report.end());

    // Without a parse the surface words stand in for lemmas.
    auto raw = fixtures::unparsed("s2", "We released it.");
    auto raw_features = sentence_features(raw);
    CHECK(std::find(raw_features.begin(), raw_features.end(), "uni=released") !=
          raw_features.end());
}

TEST_CASE("training set splits follow the rounded fractions") {
    auto splits = planted_splits();
    const std::size_t n = splits.assignments.size();
    // 4 positives + 2 negatives each = 12 examples.
    REQUIRE(n == 12);
    CHECK(splits.train.size() ==
          static_cast<std::size_t>(std::llround(0.85 * static_cast<double>(n))));
    CHECK(splits.dev.size() ==
          static_cast<std::size_t>(std::llround(0.10 * static_cast<double>(n))));
    CHECK(splits.train.size() + splits.dev.size() + splits.test.size() == n);

    int positives = 0;
    for (const auto& row : splits.assignments) {
        if (row.label == 1) ++positives;
        CHECK((row.split == "train" || row.split == "dev" || row.split == "test"));
    }
    CHECK(positives == 4);

    // Same seed, same partition.
    auto again = planted_splits();
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(again.assignments[i].sentence_id == splits.assignments[i].sentence_id);
        CHECK(again.assignments[i].split == splits.assignments[i].split);
    }
}

TEST_CASE("negative sampling caps at the pool and warns") {
    Diagnostics diag;
    auto splits = planted_splits(&diag, 1000.0);
    CHECK(!diag.warnings().empty());
    CHECK(diag.warnings()[0].find("capped") != std::string::npos);

    // Every non-candidate sentence of the corpus became a negative.
    auto planted = fixtures::planted_corpus();
    std::size_t total = 0;
    for (const auto& doc : planted.docs) total += doc.sentence_count();
    CHECK(splits.assignments.size() == total);
}

TEST_CASE("pattern-aware features only apply to parsed sentences") {
    auto with_rules = planted_splits(nullptr, 2.0, true);
    bool saw_slot_feature = false;
    for (const auto& bucket : {with_rules.train, with_rules.dev, with_rules.test}) {
        for (const auto& example : bucket) {
            for (const auto& f : example.features) {
                if (f.rfind("slot=", 0) == 0) saw_slot_feature = true;
            }
        }
    }
    CHECK(saw_slot_feature);
}

TEST_CASE("build_training_set validates its inputs") {
    auto planted = fixtures::planted_corpus();
    SplitSpec split;
    CHECK_THROWS_AS(build_training_set({}, planted.docs, 2.0, split), ValidationError);

    auto config = default_pattern_config();
    std::vector<CandidateSentence> candidates;
    for (const auto& doc : planted.docs) {
        auto found = source_code_candidates(doc, config);
        candidates.insert(candidates.end(), found.begin(), found.end());
    }
    CHECK_THROWS_AS(build_training_set(candidates, planted.docs, -1.0, split), ValidationError);

    SplitSpec bad = split;
    bad.train = 0.9;  // fractions no longer sum to one
    CHECK_THROWS_AS(build_training_set(candidates, planted.docs, 2.0, bad), ValidationError);
}

TEST_CASE("logreg loss and gradient match finite differences") {
    std::vector<EncodedExample> data = {
        {{0, 2}, 1}, {{1}, 0}, {{0, 1, 3}, 1}, {{2, 3}, 0}, {{}, 1},
    };
    std::vector<double> params = {0.3, -0.7, 1.1, -0.2, 0.05};

    auto [loss, grad] = logreg_loss_and_gradient(params, data, 1e-3);
    CHECK(std::isfinite(loss));

    auto objective = [&](std::vector<double> p) {
        return logreg_loss_and_gradient(p, data, 1e-3).first;
    };
    auto numeric = fixtures::central_differences(objective, params, 1e-6);
    CHECK(fixtures::max_relative_gap(grad, numeric) <= 1e-4);
}

TEST_CASE("the bias term escapes regularization") {
    std::vector<EncodedExample> data = {{{0}, 1}};
    std::vector<double> no_weights = {0.0, 25.0};
    auto strong = logreg_loss_and_gradient(no_weights, data, 1e6).first;
    auto none = logreg_loss_and_gradient(no_weights, data, 0.0).first;
    CHECK(strong == doctest::Approx(none));
}

TEST_CASE("extreme scores stay finite through the stable softplus") {
    std::vector<EncodedExample> data = {{{0}, 1}, {{0}, 0}};
    std::vector<double> params = {500.0, 250.0};
    auto [loss, grad] = logreg_loss_and_gradient(params, data, 0.0);
    CHECK(std::isfinite(loss));
    for (double g : grad) CHECK(std::isfinite(g));

    params = {-500.0, -250.0};
    auto [loss2, grad2] = logreg_loss_and_gradient(params, data, 0.0);
    CHECK(std::isfinite(loss2));
    for (double g : grad2) CHECK(std::isfinite(g));
}

TEST_CASE("classifier training is deterministic and separates the fixture") {
    auto splits = planted_splits(nullptr, 2.0, true);
    LogregConfig config;
    auto [model, metrics] = train_logreg(splits, "source_code", config);
    auto [model2, metrics2] = train_logreg(splits, "source_code", config);

    CHECK(model.weights == model2.weights);
    CHECK(model.bias == model2.bias);
    CHECK(metrics.final_loss == doctest::Approx(metrics2.final_loss));
    CHECK(model.facet_id == "source_code");
    CHECK(model.template_version == kSentenceTemplateVersion);
    CHECK(std::isfinite(metrics.final_loss));

    // The planted positives classify positive under the trained model.
    auto planted = fixtures::planted_corpus();
    auto pattern_config = default_pattern_config();
    int correct = 0;
    int total = 0;
    for (const auto& doc : planted.docs) {
        for (const auto& c : source_code_candidates(doc, pattern_config)) {
            const Sentence* s = doc.find_sentence(c.sentence_id);
            REQUIRE(s != nullptr);
            ++total;
            if (classify(model, *s, &c.report)) ++correct;
        }
    }
    CHECK(total == 4);
    CHECK(correct == total);
}

TEST_CASE("single-class training data is rejected") {
    SentSplits splits;
    splits.train = {{{"bias", "uni=a"}, 1}, {{"bias", "uni=b"}, 1}};
    CHECK_THROWS_AS(train_logreg(splits, "source_code", LogregConfig{}), ValidationError);

    SentSplits empty;
    CHECK_THROWS_AS(train_logreg(empty, "source_code", LogregConfig{}), ValidationError);
}

TEST_CASE("dev metrics are absent without dev positives") {
    SentSplits splits;
    splits.train = {{{"bias", "uni=good", "has_url"}, 1},
                    {{"bias", "uni=bad"}, 0},
                    {{"bias", "uni=fine", "has_url"}, 1},
                    {{"bias", "uni=poor"}, 0}};
    auto [model, metrics] = train_logreg(splits, "dataset", LogregConfig{});
    CHECK_FALSE(metrics.dev_precision.has_value());
    CHECK_FALSE(metrics.dev_recall.has_value());
    CHECK(model.vocab.size() > 0);

    // predict_prob responds to the learned url feature.
    double hit = predict_prob(model, std::vector<std::string>{"bias", "uni=good", "has_url"});
    double miss = predict_prob(model, std::vector<std::string>{"bias", "uni=bad"});
    CHECK(hit > miss);
}

TEST_CASE("classifier files reload byte-stably") {
    auto splits = planted_splits();
    auto [model, metrics] = train_logreg(splits, "source_code", LogregConfig{});

    auto path = std::filesystem::temp_directory_path() / "scifex_sent_test_model.json";
    auto path2 = std::filesystem::temp_directory_path() / "scifex_sent_test_model2.json";
    save_sent_model(model, path);
    auto reloaded = load_sent_model(path);
    CHECK(reloaded.facet_id == model.facet_id);
    CHECK(reloaded.template_version == model.template_version);
    CHECK(reloaded.decision_threshold == model.decision_threshold);
    CHECK(reloaded.bias == model.bias);

    save_sent_model(reloaded, path2);
    CHECK(fixtures::slurp(path) == fixtures::slurp(path2));

    // Predictions survive the round trip even when zero weights got dropped.
    std::vector<std::string> probe = {"bias", "uni=release", "has_url"};
    CHECK(predict_prob(reloaded, probe) == doctest::Approx(predict_prob(model, probe)));

    std::filesystem::remove(path);
    std::filesystem::remove(path2);
}

TEST_CASE("split assignments serialize one json line each") {
    auto splits = planted_splits();
    auto path = std::filesystem::temp_directory_path() / "scifex_sent_test_splits.jsonl";
    write_split_assignments(splits.assignments, path);
    std::string body = fixtures::slurp(path);
    std::size_t lines = static_cast<std::size_t>(std::count(body.begin(), body.end(), '\n'));
    CHECK(lines == splits.assignments.size());
    CHECK(body.find("\"split\":\"train\"") != std::string::npos);
    std::filesystem::remove(path);
}
