// Batch front end: ingest -> genlabels -> train -> predict -> eval/trends.
// Every subcommand is deterministic for a fixed seed and input set.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scifex/analytics.hpp"
#include "scifex/biluo.hpp"
#include "scifex/bootstrap.hpp"
#include "scifex/conllu.hpp"
#include "scifex/corpus_io.hpp"
#include "scifex/crf.hpp"
#include "scifex/evalkit.hpp"
#include "scifex/extract.hpp"
#include "scifex/patterns.hpp"
#include "scifex/sent_classifier.hpp"
#include "scifex/text.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GlobalOptions {
    std::string config_path;
    std::uint64_t seed = 1;
    int jobs = 1;
    bool strict = false;
    bool json_errors = false;

    // Values a config file may provide; flags win when set explicitly.
    std::string corpus_dir;
    std::string models_dir;
    std::string output_dir;
    std::string pattern_config_path;
    double cluster_threshold = 0.85;
};

GlobalOptions g_opts;

void print_diag(const std::string& level, const std::string& message) {
    if (g_opts.json_errors) {
        json line;
        line["level"] = level;
        line["message"] = message;
        std::cerr << line.dump() << "\n";
    } else {
        std::cerr << level << ": " << message << "\n";
    }
}

void flush_warnings(const scifex::Diagnostics& diag) {
    for (const std::string& warning : diag.warnings()) print_diag("warn", warning);
}

std::string read_text(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw scifex::ValidationError("cannot open " + file.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text(const fs::path& file, const std::string& body) {
    fs::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw scifex::ValidationError("cannot write " + file.string());
    out << body;
}

void apply_config_file() {
    if (g_opts.config_path.empty()) return;
    const json config = json::parse(read_text(g_opts.config_path));
    auto take_string = [&](const char* key, std::string& target) {
        if (target.empty() && config.contains(key)) target = config.at(key).get<std::string>();
    };
    take_string("corpus_dir", g_opts.corpus_dir);
    take_string("models_dir", g_opts.models_dir);
    take_string("output_dir", g_opts.output_dir);
    take_string("pattern_config", g_opts.pattern_config_path);
    if (config.contains("cluster_threshold")) {
        g_opts.cluster_threshold = config.at("cluster_threshold").get<double>();
    }
    if (config.contains("rng_seed")) g_opts.seed = config.at("rng_seed").get<std::uint64_t>();
    if (config.contains("jobs")) g_opts.jobs = config.at("jobs").get<int>();
}

scifex::PatternConfig resolve_pattern_config() {
    if (!g_opts.pattern_config_path.empty()) {
        return scifex::load_pattern_config(g_opts.pattern_config_path);
    }
    return scifex::default_pattern_config();
}

/// Loads a normalized corpus store: docs/*.json plus parses/<doc_id>.conllu.
std::vector<scifex::DocumentRecord> load_store(const fs::path& dir,
                                               scifex::Diagnostics* diag) {
    std::vector<scifex::DocumentRecord> corpus = scifex::load_corpus(dir / "docs");
    for (scifex::DocumentRecord& doc : corpus) {
        const fs::path sidecar = dir / "parses" / (doc.doc_id + ".conllu");
        if (fs::exists(sidecar)) scifex::attach_parses(doc, read_text(sidecar), diag);
    }
    return corpus;
}

std::string require_dir(const std::string& value, const char* what) {
    if (value.empty()) {
        throw scifex::ValidationError(std::string("missing required path: ") + what);
    }
    return value;
}

// ---------------------------------------------------------------- ingest

int cmd_ingest(const std::string& raw_dir, const std::string& conllu_dir) {
    const fs::path out(require_dir(g_opts.output_dir, "--out"));
    scifex::Diagnostics diag;
    std::size_t documents = 0;
    std::size_t sentences = 0;
    std::size_t parsed = 0;
    std::vector<std::string> failures;

    std::vector<fs::path> files;
    if (fs::exists(raw_dir)) {
        for (const auto& entry : fs::directory_iterator(raw_dir)) {
            if (entry.path().extension() == ".json") files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());

    for (const fs::path& file : files) {
        try {
            scifex::DocumentRecord doc = scifex::load_document(file);
            if (!conllu_dir.empty()) {
                const fs::path parse_file = fs::path(conllu_dir) / (doc.doc_id + ".conllu");
                if (fs::exists(parse_file)) {
                    parsed += scifex::attach_parses(doc, read_text(parse_file), &diag);
                }
            }
            write_text(out / "docs" / (doc.doc_id + ".json"), scifex::serialize_document(doc));
            const std::string sidecar = scifex::write_conllu(doc);
            if (!sidecar.empty()) {
                write_text(out / "parses" / (doc.doc_id + ".conllu"), sidecar);
            }
            ++documents;
            sentences += doc.sentence_count();
        } catch (const scifex::ValidationError& err) {
            failures.push_back(file.filename().string() + ": " + err.what());
            print_diag("error", failures.back());
        }
    }

    nlohmann::ordered_json manifest;
    manifest["documents"] = documents;
    manifest["sentences"] = sentences;
    manifest["parsed_sentences"] = parsed;
    manifest["failures"] = failures;
    write_text(out / "manifest.json", manifest.dump(2) + "\n");
    flush_warnings(diag);

    if (!failures.empty() && g_opts.strict) return 1;
    return 0;
}

// ------------------------------------------------------------- genlabels

std::vector<scifex::SeedLexicon> lexicons_for_facet(scifex::Facet facet) {
    const std::vector<std::string>& labels = scifex::entity_labels_for(facet);
    const std::set<std::string> wanted(labels.begin(), labels.end());
    std::vector<scifex::SeedLexicon> out;
    for (scifex::SeedLexicon& lexicon : scifex::default_seed_lexicons()) {
        if (wanted.count(lexicon.facet_label) > 0) out.push_back(std::move(lexicon));
    }
    return out;
}

int cmd_genlabels(const std::string& facet_name) {
    const fs::path out(require_dir(g_opts.output_dir, "--out"));
    const auto facet = scifex::facet_from_id(facet_name);
    if (!facet) throw CLI::ValidationError("--facet", "unknown facet " + facet_name);

    scifex::Diagnostics diag;
    const std::vector<scifex::DocumentRecord> corpus =
        load_store(require_dir(g_opts.corpus_dir, "--corpus"), &diag);
    const scifex::PatternConfig pattern_config = resolve_pattern_config();

    if (*facet == scifex::Facet::SourceCode || *facet == scifex::Facet::Dataset) {
        scifex::ScanStats stats;
        std::string candidate_lines;
        std::string span_lines;
        for (const scifex::DocumentRecord& doc : corpus) {
            const std::vector<scifex::CandidateSentence> candidates =
                *facet == scifex::Facet::SourceCode
                    ? scifex::source_code_candidates(doc, pattern_config, &stats)
                    : scifex::dataset_candidates(doc, pattern_config, &stats);
            for (const scifex::CandidateSentence& candidate : candidates) {
                candidate_lines += scifex::candidate_to_jsonl(candidate);
                candidate_lines += "\n";
            }
            if (*facet != scifex::Facet::Dataset) continue;

            // Span stubs: scored entity candidates become Dataset spans.
            for (const scifex::CandidateSentence& candidate : candidates) {
                const scifex::Sentence* sentence = doc.find_sentence(candidate.sentence_id);
                if (sentence == nullptr || !sentence->has_tokens) continue;
                std::vector<scifex::ScoredSpan> spans = scifex::dataset_entity_candidates(
                    *sentence, candidate.report, pattern_config);
                std::vector<scifex::LabeledSpan> chosen;
                for (const scifex::ScoredSpan& span : spans) {
                    if (span.score < pattern_config.span_score_threshold) continue;
                    const bool overlaps = std::any_of(
                        chosen.begin(), chosen.end(), [&](const scifex::LabeledSpan& other) {
                            return span.token_start <= other.end && other.start <= span.token_end;
                        });
                    if (!overlaps) {
                        chosen.push_back({span.token_start, span.token_end, "Dataset"});
                    }
                }
                if (chosen.empty()) continue;
                std::sort(chosen.begin(), chosen.end(),
                          [](const scifex::LabeledSpan& a, const scifex::LabeledSpan& b) {
                              return a.start < b.start;
                          });
                scifex::CorllRecord record;
                record.text = sentence->text;
                for (const scifex::Token& token : sentence->tokens) {
                    record.tokens.push_back(token.surface);
                }
                record.spans = chosen;
                record.biluo = scifex::encode_biluo(chosen, record.tokens.size(),
                                                    scifex::LabelScheme({"Dataset"}));
                nlohmann::ordered_json line;
                line["text"] = record.text;
                line["tokens"] = record.tokens;
                nlohmann::ordered_json span_json = nlohmann::ordered_json::array();
                for (const scifex::LabeledSpan& span : record.spans) {
                    span_json.push_back(
                        nlohmann::ordered_json::array({span.start, span.end, span.label}));
                }
                line["spans"] = std::move(span_json);
                line["biluo"] = record.biluo;
                span_lines += line.dump();
                span_lines += "\n";
            }
        }
        write_text(out / (facet_name + ".candidates.jsonl"), candidate_lines);
        if (*facet == scifex::Facet::Dataset) {
            write_text(out / (facet_name + ".spans.jsonl"), span_lines);
        }
        if (stats.sentences_unparsed > 0) {
            print_diag("warn", std::to_string(stats.sentences_unparsed) +
                                   " sentences skipped without parses");
        }
    } else if (*facet == scifex::Facet::Compute || *facet == scifex::Facet::LanguageLibrary) {
        scifex::BootstrapConfig bootstrap_config;
        nlohmann::ordered_json lexicon_json = nlohmann::ordered_json::object();
        std::set<std::string> all_terms;
        for (scifex::SeedLexicon lexicon : lexicons_for_facet(*facet)) {
            const scifex::SeedLexicon expanded =
                scifex::bootstrap_iterate(corpus, std::move(lexicon), bootstrap_config);
            nlohmann::ordered_json terms = nlohmann::ordered_json::object();
            for (const auto& [term, score] : expanded.terms) {
                terms[term] = score;
                all_terms.insert(term);
            }
            lexicon_json[expanded.facet_label] = std::move(terms);
        }
        write_text(out / (facet_name + ".lexicon.json"), lexicon_json.dump(2) + "\n");

        // Annotation stubs for every parsed sentence containing a seed term.
        std::vector<scifex::Sentence> matching;
        for (const scifex::DocumentRecord& doc : corpus) {
            for (const scifex::Section* section : doc.all_sections()) {
                for (const scifex::Sentence& sentence : section->sentences) {
                    if (!sentence.has_tokens) continue;
                    const auto tokens =
                        scifex::preprocess(sentence, bootstrap_config.stopwords);
                    const bool hit = std::any_of(
                        tokens.begin(), tokens.end(),
                        [&](const auto& pair) { return all_terms.count(pair.first) > 0; });
                    if (hit) matching.push_back(sentence);
                }
            }
        }
        scifex::serialize_corll(scifex::emit_annotation_stubs(matching),
                                out / (facet_name + ".stubs.jsonl"));
    } else {
        throw CLI::ValidationError("--facet",
                                   "genlabels handles source_code, dataset, compute, "
                                   "language_library");
    }
    flush_warnings(diag);
    return 0;
}

// ----------------------------------------------------------------- train

struct TrainOptions {
    std::string kind;
    std::string facet;
    std::string data_path;
    int epochs = -1;
    double step = -1.0;
    double l2 = -1.0;
    int batch = -1;
    double neg_ratio = 2.0;
};

int cmd_train(const TrainOptions& options) {
    const fs::path models(require_dir(g_opts.models_dir, "--models"));
    fs::create_directories(models);
    const auto facet = scifex::facet_from_id(options.facet);
    if (!facet) throw CLI::ValidationError("--facet", "unknown facet " + options.facet);

    if (options.kind == "sentence") {
        scifex::Diagnostics diag;
        const std::vector<scifex::DocumentRecord> corpus =
            load_store(require_dir(g_opts.corpus_dir, "--corpus"), &diag);
        const std::vector<scifex::CandidateSentence> candidates =
            scifex::load_candidates(options.data_path);
        const scifex::PatternConfig pattern_config = resolve_pattern_config();
        const scifex::FacetRules* rules = nullptr;
        if (*facet == scifex::Facet::SourceCode) rules = &pattern_config.source_code;
        if (*facet == scifex::Facet::Dataset) rules = &pattern_config.dataset;

        scifex::SplitSpec split;
        split.rng_seed = g_opts.seed;
        const scifex::SentSplits splits = scifex::build_training_set(
            candidates, corpus, options.neg_ratio, split, rules, &pattern_config, &diag);

        scifex::LogregConfig config;
        config.rng_seed = g_opts.seed;
        if (options.epochs >= 0) config.epochs = options.epochs;
        if (options.step > 0.0) config.step_size = options.step;
        if (options.l2 >= 0.0) config.l2_lambda = options.l2;
        const auto [model, metrics] = scifex::train_logreg(splits, options.facet, config);

        scifex::save_sent_model(model, models / (options.facet + ".sent.json"));
        scifex::write_split_assignments(splits.assignments,
                                        models / (options.facet + ".splits.jsonl"));
        nlohmann::ordered_json report;
        report["facet"] = options.facet;
        report["train_size"] = splits.train.size();
        report["dev_size"] = splits.dev.size();
        report["test_size"] = splits.test.size();
        report["final_loss"] = metrics.final_loss;
        if (metrics.dev_precision) {
            report["dev_precision"] = *metrics.dev_precision;
        } else {
            report["dev_precision"] = nullptr;
        }
        if (metrics.dev_recall) {
            report["dev_recall"] = *metrics.dev_recall;
        } else {
            report["dev_recall"] = nullptr;
        }
        write_text(models / (options.facet + ".sent.metrics.json"), report.dump(2) + "\n");
        flush_warnings(diag);
        return 0;
    }

    if (options.kind == "ner") {
        const std::vector<std::string>& labels = scifex::entity_labels_for(*facet);
        if (labels.empty()) {
            throw CLI::ValidationError("--facet",
                                       options.facet + " has no span labels to train");
        }
        const std::vector<scifex::CorllRecord> records =
            scifex::load_annotated(options.data_path, labels);
        std::vector<scifex::CrfTrainingSentence> data;
        data.reserve(records.size());
        for (std::size_t i = 0; i < records.size(); ++i) {
            data.push_back(scifex::corll_to_training(records[i], "r" + std::to_string(i)));
        }

        scifex::CrfFeaturizerConfig featurizer;
        for (const scifex::SeedLexicon& lexicon : lexicons_for_facet(*facet)) {
            std::set<std::string>& group = featurizer.lexicons[lexicon.facet_label];
            for (const auto& [term, score] : lexicon.terms) group.insert(term);
        }
        for (const std::string& name : resolve_pattern_config().gazetteer) {
            featurizer.lexicons["gazetteer"].insert(scifex::to_lower(name));
        }

        scifex::CrfTrainConfig config;
        config.rng_seed = g_opts.seed;
        if (options.epochs >= 0) config.epochs = options.epochs;
        if (options.step > 0.0) config.step_size = options.step;
        if (options.l2 >= 0.0) config.l2_lambda = options.l2;
        if (options.batch > 0) config.batch_size = options.batch;

        const scifex::LabelScheme scheme(labels);
        const scifex::CrfTrainResult result =
            scifex::train_crf(data, scheme, featurizer, config);
        scifex::save_crf_model(result.model, models / (options.facet + ".ner.json"));

        nlohmann::ordered_json report;
        report["facet"] = options.facet;
        report["sentences"] = data.size();
        report["epoch_nll"] = result.epoch_nll;
        report["token_accuracy"] = scifex::token_accuracy(result.model, data);
        write_text(models / (options.facet + ".ner.metrics.json"), report.dump(2) + "\n");
        return 0;
    }

    throw CLI::ValidationError("--kind", "kind must be sentence or ner");
}

// --------------------------------------------------------------- predict

int cmd_predict(const std::vector<std::string>& facet_names, const std::string& relgraph_path,
                const std::string& out_file) {
    scifex::Diagnostics diag;
    const std::vector<scifex::DocumentRecord> corpus =
        load_store(require_dir(g_opts.corpus_dir, "--corpus"), &diag);
    const fs::path models(require_dir(g_opts.models_dir, "--models"));
    const scifex::PatternConfig pattern_config = resolve_pattern_config();

    std::vector<scifex::Facet> facets;
    for (const std::string& name : facet_names) {
        const auto facet = scifex::facet_from_id(name);
        if (!facet) throw CLI::ValidationError("--facets", "unknown facet " + name);
        facets.push_back(*facet);
    }

    const bool wants_task_method =
        std::any_of(facets.begin(), facets.end(), [](scifex::Facet f) {
            return f == scifex::Facet::Task || f == scifex::Facet::Method;
        });
    std::map<std::string, scifex::RelationGraphDoc> relgraphs;
    if (wants_task_method) {
        if (relgraph_path.empty()) {
            throw scifex::ValidationError("task/method facets require --relgraph");
        }
        for (scifex::RelationGraphDoc& graph : scifex::load_relation_graphs(relgraph_path)) {
            relgraphs[graph.doc_id] = std::move(graph);
        }
    }

    struct LoadedModels {
        std::map<std::string, scifex::SentClassifierModel> sent;
        std::map<std::string, scifex::CrfModel> ner;
    } loaded;
    for (std::size_t i = 0; i < facets.size(); ++i) {
        const scifex::Facet facet = facets[i];
        if (facet == scifex::Facet::Task || facet == scifex::Facet::Method) continue;
        const std::string id(scifex::facet_id(facet));
        const fs::path sent_file = models / (id + ".sent.json");
        if (!fs::exists(sent_file)) {
            throw scifex::ValidationError("no sentence model for facet " + id + " at " +
                                          sent_file.string());
        }
        loaded.sent.emplace(id, scifex::load_sent_model(sent_file));
        if (!scifex::entity_labels_for(facet).empty()) {
            const fs::path ner_file = models / (id + ".ner.json");
            if (!fs::exists(ner_file)) {
                throw scifex::ValidationError("no ner model for facet " + id + " at " +
                                              ner_file.string());
            }
            loaded.ner.emplace(id, scifex::load_crf_model(ner_file));
        }
    }

    auto process = [&](const scifex::DocumentRecord& doc) {
        std::vector<scifex::PaperExtraction> parts;
        for (const scifex::Facet facet : facets) {
            scifex::PaperExtraction part;
            part.doc_id = doc.doc_id;
            part.year = doc.year;
            part.category_tags = doc.category_tags;
            const std::string id(scifex::facet_id(facet));
            if (facet == scifex::Facet::SourceCode) {
                part.source_code_urls =
                    scifex::extract_source_urls(doc, loaded.sent.at(id), &pattern_config);
                std::vector<std::string>& touched = part.provenance[id];
                std::set<std::string> seen;
                for (const auto& [url, sentence_id] : part.source_code_urls) {
                    if (seen.insert(sentence_id).second) touched.push_back(sentence_id);
                }
            } else if (facet == scifex::Facet::Task || facet == scifex::Facet::Method) {
                // Documents missing from the relation graph still get the
                // facet key, with nothing in it.
                std::vector<scifex::EntityCluster>& clusters = part.facet_entities[id];
                const auto graph = relgraphs.find(doc.doc_id);
                if (graph != relgraphs.end()) {
                    const scifex::TaskMethodResult selected = scifex::select_task_method(
                        graph->second, doc, 3, g_opts.cluster_threshold);
                    clusters = facet == scifex::Facet::Task ? selected.tasks : selected.methods;
                }
            } else {
                const scifex::FacetPipelineResult result = scifex::run_facet_pipeline(
                    doc, facet, loaded.sent.at(id), loaded.ner.at(id), &pattern_config,
                    g_opts.cluster_threshold);
                part.facet_entities[id] = result.clusters;
                if (!result.provenance.empty()) part.provenance[id] = result.provenance;
            }
            parts.push_back(std::move(part));
        }
        return scifex::merge_document_extractions(parts);
    };

    std::vector<scifex::PaperExtraction> extractions(corpus.size());
    const int jobs = std::max(1, g_opts.jobs);
    if (jobs == 1 || corpus.size() < 2) {
        for (std::size_t i = 0; i < corpus.size(); ++i) extractions[i] = process(corpus[i]);
    } else {
        std::atomic<std::size_t> cursor{0};
        std::vector<std::thread> pool;
        std::mutex error_mutex;
        std::exception_ptr first_error;
        for (int t = 0; t < jobs; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = cursor.fetch_add(1); i < corpus.size();
                     i = cursor.fetch_add(1)) {
                    try {
                        extractions[i] = process(corpus[i]);
                    } catch (...) {
                        std::scoped_lock lock(error_mutex);
                        if (!first_error) first_error = std::current_exception();
                    }
                }
            });
        }
        for (std::thread& worker : pool) worker.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    const fs::path out_path(out_file);
    if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
    scifex::write_extractions(extractions, out_path);
    flush_warnings(diag);
    return 0;
}

// ------------------------------------------------------------ eval/trends

int cmd_eval(const std::string& gold_path, const std::string& pred_path, bool per_document) {
    const fs::path out(require_dir(g_opts.output_dir, "--out"));
    fs::create_directories(out);
    scifex::Diagnostics diag;
    const std::vector<scifex::GoldRecord> golds = scifex::load_gold(gold_path);
    const std::vector<scifex::PaperExtraction> extractions = scifex::load_extractions(pred_path);
    const std::vector<scifex::DocScores> scores =
        scifex::evaluate_corpus(golds, extractions, g_opts.cluster_threshold, &diag);
    const scifex::EvalReport report = scifex::macro_report(scores, per_document);
    scifex::write_report_json(report, out / "report.json");
    scifex::write_report_csv(report, out / "report.csv");
    flush_warnings(diag);
    return 0;
}

struct TrendsOptions {
    std::string pred_path;
    std::string query;
    std::string host = "github.com";
    std::string facet = "dataset";
    std::string other_facet = "task";
    std::string key;
    std::string key_b;
    std::size_t top_k = 10;
    bool plot_data = false;
};

int cmd_trends(const TrendsOptions& options) {
    const fs::path out(require_dir(g_opts.output_dir, "--out"));
    fs::create_directories(out);
    scifex::Diagnostics diag;
    const std::vector<scifex::PaperExtraction> extractions =
        scifex::load_extractions(options.pred_path);

    if (options.plot_data) {
        scifex::write_plot_data(extractions, out, scifex::PlotDataOptions{}, &diag);
        flush_warnings(diag);
        return 0;
    }

    std::vector<scifex::SeriesRow> rows;
    if (options.query == "host_share") {
        rows = scifex::rows_from_series(scifex::host_share_by_year(extractions, options.host));
    } else if (options.query == "category_share") {
        for (const auto& [tag, percent] : scifex::share_by_category(extractions)) {
            rows.push_back({std::nullopt, tag, percent});
        }
    } else if (options.query == "top_entities") {
        for (const auto& [key, papers] :
             scifex::top_entities(extractions, options.facet, options.top_k)) {
            rows.push_back({std::nullopt, key, static_cast<double>(papers)});
        }
    } else if (options.query == "co_usage") {
        for (const auto& [key, papers] :
             scifex::co_usage(extractions, options.facet, options.key, options.other_facet,
                              options.top_k, &diag)) {
            rows.push_back({std::nullopt, key, static_cast<double>(papers)});
        }
    } else if (options.query == "topic_trend") {
        rows = scifex::rows_from_series(
            scifex::topic_trend(extractions, options.facet, options.key));
    } else if (options.query == "memory") {
        rows = scifex::rows_from_memory(scifex::memory_stats_by_year(extractions));
    } else if (options.query == "brands") {
        rows = scifex::rows_from_series(scifex::manufacturer_share(extractions));
    } else if (options.query == "pairwise") {
        const auto [a, b] = scifex::pairwise_trend(extractions, options.facet, options.key,
                                                   options.key_b);
        rows = scifex::rows_from_series(std::vector<scifex::TrendSeries>{a, b});
    } else {
        throw CLI::ValidationError("--query", "unknown query " + options.query);
    }
    scifex::write_rows_csv(rows, out / (options.query + ".csv"));
    scifex::write_rows_json(rows, out / (options.query + ".json"));
    flush_warnings(diag);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scholarly facet extraction toolkit"};
    app.require_subcommand(1);

    app.add_option("--config", g_opts.config_path, "JSON run config; flags override");
    app.add_option("--seed", g_opts.seed, "RNG seed")->capture_default_str();
    app.add_option("--jobs", g_opts.jobs, "worker threads for per-document stages")
        ->capture_default_str();
    app.add_flag("--strict", g_opts.strict, "fail on any per-file error");
    app.add_flag("--json-errors", g_opts.json_errors, "machine-readable stderr diagnostics");

    std::string raw_dir;
    std::string conllu_dir;
    CLI::App* ingest = app.add_subcommand("ingest", "validate raw documents into a corpus store");
    ingest->add_option("--raw", raw_dir, "directory of document JSON files")->required();
    ingest->add_option("--conllu", conllu_dir, "directory of CoNLL-U parse files");
    ingest->add_option("--out", g_opts.output_dir, "corpus store directory");

    std::string facet_name;
    CLI::App* genlabels =
        app.add_subcommand("genlabels", "weakly supervised candidate and stub generation");
    genlabels->add_option("--corpus", g_opts.corpus_dir, "corpus store directory");
    genlabels->add_option("--facet", facet_name, "facet id")->required();
    genlabels->add_option("--out", g_opts.output_dir, "label output directory");
    genlabels->add_option("--patterns", g_opts.pattern_config_path, "pattern config JSON");

    TrainOptions train_options;
    CLI::App* train = app.add_subcommand("train", "train a sentence classifier or a tagger");
    train->add_option("--kind", train_options.kind, "sentence | ner")->required();
    train->add_option("--facet", train_options.facet, "facet id")->required();
    train->add_option("--data", train_options.data_path, "training data file")->required();
    train->add_option("--corpus", g_opts.corpus_dir, "corpus store (sentence kind)");
    train->add_option("--models", g_opts.models_dir, "model output directory");
    train->add_option("--patterns", g_opts.pattern_config_path, "pattern config JSON");
    train->add_option("--epochs", train_options.epochs, "training epochs");
    train->add_option("--step", train_options.step, "gradient step size");
    train->add_option("--l2", train_options.l2, "L2 regularization strength");
    train->add_option("--batch", train_options.batch, "mini-batch size (ner)");
    train->add_option("--neg-ratio", train_options.neg_ratio, "negatives per positive (sentence)")
        ->capture_default_str();

    std::vector<std::string> predict_facets;
    std::string relgraph_path;
    std::string predict_out;
    CLI::App* predict = app.add_subcommand("predict", "run extraction over the corpus");
    predict->add_option("--corpus", g_opts.corpus_dir, "corpus store directory");
    predict->add_option("--models", g_opts.models_dir, "model directory");
    predict->add_option("--facets", predict_facets, "facet ids")->delimiter(',')->required();
    predict->add_option("--relgraph", relgraph_path, "relation graph JSONL (task/method)");
    predict->add_option("--out", predict_out, "extraction JSONL output")->required();
    predict->add_option("--patterns", g_opts.pattern_config_path, "pattern config JSON");
    predict->add_option("--cluster-threshold", g_opts.cluster_threshold, "fuzzy merge threshold")
        ->capture_default_str();

    std::string gold_path;
    std::string eval_pred_path;
    bool per_document = false;
    CLI::App* eval = app.add_subcommand("eval", "score predictions against gold records");
    eval->add_option("--gold", gold_path, "gold JSONL")->required();
    eval->add_option("--pred", eval_pred_path, "extraction JSONL")->required();
    eval->add_option("--out", g_opts.output_dir, "report output directory");
    eval->add_flag("--per-doc", per_document, "average per-document instead of pooling");

    TrendsOptions trends_options;
    CLI::App* trends = app.add_subcommand("trends", "corpus trend queries over extractions");
    trends->add_option("--pred", trends_options.pred_path, "extraction JSONL")->required();
    trends->add_option("--query", trends_options.query,
                       "host_share | category_share | top_entities | co_usage | topic_trend | "
                       "memory | brands | pairwise");
    trends->add_option("--host", trends_options.host, "host for host_share")
        ->capture_default_str();
    trends->add_option("--facet", trends_options.facet, "facet id")->capture_default_str();
    trends->add_option("--other-facet", trends_options.other_facet, "co-usage facet")
        ->capture_default_str();
    trends->add_option("--key", trends_options.key, "entity key");
    trends->add_option("--key-b", trends_options.key_b, "second key for pairwise");
    trends->add_option("--top-k", trends_options.top_k, "result list size")
        ->capture_default_str();
    trends->add_option("--out", g_opts.output_dir, "output directory");
    trends->add_flag("--plot-data", trends_options.plot_data, "emit q1.csv through q8.csv");

    try {
        app.parse(argc, argv);
        apply_config_file();
        if (ingest->parsed()) return cmd_ingest(raw_dir, conllu_dir);
        if (genlabels->parsed()) return cmd_genlabels(facet_name);
        if (train->parsed()) return cmd_train(train_options);
        if (predict->parsed()) return cmd_predict(predict_facets, relgraph_path, predict_out);
        if (eval->parsed()) return cmd_eval(gold_path, eval_pred_path, per_document);
        if (trends->parsed()) {
            if (!trends_options.plot_data && trends_options.query.empty()) {
                throw CLI::ValidationError("--query", "either --query or --plot-data is required");
            }
            return cmd_trends(trends_options);
        }
        return 0;
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 1;
    } catch (const scifex::ValidationError& err) {
        print_diag("error", err.what());
        return 1;
    } catch (const std::exception& err) {
        print_diag("error", std::string("internal: ") + err.what());
        return 2;
    }
}
