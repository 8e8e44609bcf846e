// Micro benchmarks for the hot paths: CRF decoding and marginals, fuzzy
// string clustering, and CoNLL-U parsing.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "scifex/conllu.hpp"
#include "scifex/crf.hpp"
#include "scifex/extract.hpp"
#include "scifex/text.hpp"

namespace {

scifex::CrfModel bench_model(int n_types, int n_features) {
    const std::vector<std::string> names = {"Alpha", "Beta", "Gamma", "Delta"};
    scifex::LabelScheme scheme(
        std::vector<std::string>(names.begin(), names.begin() + n_types));
    scifex::FeatureVocab vocab;
    for (int i = 0; i < n_features; ++i) vocab.intern("f" + std::to_string(i));
    scifex::CrfModel model = scifex::make_zero_model(std::move(scheme),
                                                     scifex::CrfFeaturizerConfig{},
                                                     std::move(vocab), 1e-4);
    std::mt19937_64 rng(11);
    std::vector<double> params = model.parameters();
    for (double& w : params) {
        w = (static_cast<double>(rng() % 4001) - 2000.0) / 1000.0;
    }
    model.set_parameters(params);
    return model;
}

scifex::FeaturizedSentence bench_input(const scifex::CrfModel& model, int n_tokens) {
    std::mt19937_64 rng(13);
    scifex::FeaturizedSentence input;
    input.features.resize(static_cast<std::size_t>(n_tokens));
    const int vocab = static_cast<int>(model.vocab.size());
    for (auto& features : input.features) {
        for (int f = 0; f < vocab; ++f) {
            if (rng() % 3 == 0) features.push_back(f);
        }
    }
    return input;
}

void viterbi_decode(benchmark::State& state) {
    const auto model = bench_model(static_cast<int>(state.range(0)), 64);
    const auto input = bench_input(model, static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(scifex::viterbi_indices(model, input));
    }
}
BENCHMARK(viterbi_decode)->Args({1, 20})->Args({2, 20})->Args({2, 60});

void forward_backward(benchmark::State& state) {
    const auto model = bench_model(static_cast<int>(state.range(0)), 64);
    const auto input = bench_input(model, static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(scifex::log_partition_and_marginals(model, input));
    }
}
BENCHMARK(forward_backward)->Args({1, 20})->Args({2, 20})->Args({2, 60});

std::vector<std::string> mention_pool(int n) {
    const std::vector<std::string> bases = {"ImageNet", "CIFAR-10", "MNIST",  "SQuAD",
                                            "CoNLL",    "WikiText", "LibriSpeech"};
    std::mt19937_64 rng(17);
    std::vector<std::string> mentions;
    for (int i = 0; i < n; ++i) {
        std::string m = bases[rng() % bases.size()];
        if (rng() % 3 == 0) m += " dataset";
        if (rng() % 5 == 0) m[rng() % m.size()] = 'x';
        mentions.push_back(std::move(m));
    }
    return mentions;
}

void entity_clustering(benchmark::State& state) {
    const auto mentions = mention_pool(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(scifex::cluster_entities(mentions, 0.85));
    }
}
BENCHMARK(entity_clustering)->Arg(50)->Arg(200)->Arg(800);

void pairwise_similarity(benchmark::State& state) {
    const auto mentions = mention_pool(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        double acc = 0.0;
        for (std::size_t i = 0; i < mentions.size(); ++i) {
            for (std::size_t j = i + 1; j < mentions.size(); ++j) {
                acc += scifex::similarity(mentions[i], mentions[j]);
            }
        }
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(pairwise_similarity)->Arg(50)->Arg(200);

std::string synthetic_conllu(int n_sentences) {
    std::ostringstream out;
    for (int s = 0; s < n_sentences; ++s) {
        out << "# sent_id = s" << s << "\n"
            << "# text = We evaluate the model on the benchmark .\n";
        const std::vector<std::string> words = {"We",  "evaluate", "the",       "model",
                                                "on",  "the",      "benchmark", "."};
        const std::vector<std::string> upos = {"PRON", "VERB", "DET", "NOUN",
                                               "ADP",  "DET",  "NOUN", "PUNCT"};
        const std::vector<int> heads = {2, 0, 4, 2, 7, 7, 2, 2};
        const std::vector<std::string> rels = {"nsubj", "root", "det", "obj",
                                               "case",  "det",  "obl", "punct"};
        for (std::size_t i = 0; i < words.size(); ++i) {
            out << (i + 1) << "\t" << words[i] << "\t" << scifex::to_lower(words[i]) << "\t"
                << upos[i] << "\t_\t_\t" << heads[i] << "\t" << rels[i] << "\t_\t_\n";
        }
        out << "\n";
    }
    return out.str();
}

void conllu_parse(benchmark::State& state) {
    const std::string text = synthetic_conllu(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(scifex::parse_conllu(text));
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(text.size()));
}
BENCHMARK(conllu_parse)->Arg(10)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
