#include "scifex/evalkit.hpp"

#include <algorithm>
#include <cctype>

#include "json_util.hpp"
#include "scifex/text.hpp"

namespace scifex {
namespace {

std::optional<double> ratio(int numerator, int denominator) {
    if (denominator == 0) return std::nullopt;
    return static_cast<double>(numerator) / static_cast<double>(denominator);
}

nlohmann::ordered_json facet_to_json(const FacetScore& score) {
    nlohmann::ordered_json out;
    if (score.precision) {
        out["precision"] = *score.precision;
    } else {
        out["precision"] = nullptr;
    }
    if (score.recall) {
        out["recall"] = *score.recall;
    } else {
        out["recall"] = nullptr;
    }
    out["gold_count"] = score.gold_count;
    out["pred_count"] = score.pred_count;
    out["matched_golds"] = score.matched_golds;
    out["matched_preds"] = score.matched_preds;
    return out;
}

}  // namespace

UrlParts split_url(std::string_view url) {
    if (url.starts_with("http://")) url.remove_prefix(7);
    if (url.starts_with("https://")) url.remove_prefix(8);
    while (!url.empty() && url.back() == '/') url.remove_suffix(1);
    UrlParts parts;
    const std::size_t slash = url.find('/');
    std::string_view host = slash == std::string_view::npos ? url : url.substr(0, slash);
    for (char c : host) {
        parts.host.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (slash != std::string_view::npos) {
        std::string_view rest = url.substr(slash + 1);
        const std::size_t next = rest.find('/');
        parts.first_segment =
            std::string(next == std::string_view::npos ? rest : rest.substr(0, next));
    }
    return parts;
}

bool url_match(std::string_view gold_url, std::string_view predicted_url) {
    const UrlParts gold = split_url(gold_url);
    const UrlParts pred = split_url(predicted_url);
    if (gold.host.empty() || gold.host != pred.host) return false;
    return gold.first_segment == pred.first_segment;
}

bool entity_match(std::string_view gold, const EntityCluster& cluster, double threshold) {
    for (const auto& [member, count] : cluster.members) {
        if (similarity(gold, member) >= threshold) return true;
    }
    return false;
}

FacetScore score_facet_entities(const std::vector<std::string>& golds,
                                const std::vector<EntityCluster>& clusters, double threshold) {
    FacetScore score;
    score.gold_count = static_cast<int>(golds.size());
    score.pred_count = static_cast<int>(clusters.size());
    for (const std::string& gold : golds) {
        const bool hit = std::any_of(clusters.begin(), clusters.end(),
                                     [&](const EntityCluster& cluster) {
                                         return entity_match(gold, cluster, threshold);
                                     });
        if (hit) ++score.matched_golds;
    }
    for (const EntityCluster& cluster : clusters) {
        const bool hit = std::any_of(golds.begin(), golds.end(), [&](const std::string& gold) {
            return entity_match(gold, cluster, threshold);
        });
        if (hit) ++score.matched_preds;
    }
    score.precision = ratio(score.matched_preds, score.pred_count);
    score.recall = ratio(score.matched_golds, score.gold_count);
    return score;
}

FacetScore score_facet_urls(const std::vector<std::string>& golds,
                            const std::vector<std::string>& predicted_urls) {
    FacetScore score;
    score.gold_count = static_cast<int>(golds.size());
    score.pred_count = static_cast<int>(predicted_urls.size());
    for (const std::string& gold : golds) {
        const bool hit =
            std::any_of(predicted_urls.begin(), predicted_urls.end(),
                        [&](const std::string& pred) { return url_match(gold, pred); });
        if (hit) ++score.matched_golds;
    }
    for (const std::string& pred : predicted_urls) {
        const bool hit = std::any_of(golds.begin(), golds.end(), [&](const std::string& gold) {
            return url_match(gold, pred);
        });
        if (hit) ++score.matched_preds;
    }
    score.precision = ratio(score.matched_preds, score.pred_count);
    score.recall = ratio(score.matched_golds, score.gold_count);
    return score;
}

std::vector<GoldRecord> load_gold(const std::filesystem::path& file) {
    std::vector<GoldRecord> out;
    detail::for_each_jsonl_line(file, [&](const nlohmann::json& line, std::size_t line_no) {
        const std::string where = file.string() + ":" + std::to_string(line_no);
        GoldRecord record;
        record.doc_id = detail::require_string(line, "doc_id", where);
        for (const auto& [facet, strings] :
             detail::require_field(line, "facets", where).items()) {
            std::vector<std::string>& list = record.facets[facet];
            for (const auto& value : strings) {
                std::string gold = value.get<std::string>();
                if (gold.empty()) throw ValidationError(where + ": empty gold string");
                list.push_back(std::move(gold));
            }
        }
        out.push_back(std::move(record));
    });
    return out;
}

std::vector<DocScores> evaluate_corpus(const std::vector<GoldRecord>& golds,
                                       const std::vector<PaperExtraction>& extractions,
                                       double threshold, Diagnostics* diagnostics) {
    std::map<std::string, const PaperExtraction*> by_id;
    for (const PaperExtraction& extraction : extractions) by_id[extraction.doc_id] = &extraction;

    static const std::vector<EntityCluster> no_clusters;
    std::vector<DocScores> out;
    for (const GoldRecord& gold : golds) {
        DocScores doc;
        doc.doc_id = gold.doc_id;
        const auto found = by_id.find(gold.doc_id);
        const PaperExtraction* extraction = found == by_id.end() ? nullptr : found->second;
        if (extraction == nullptr && diagnostics != nullptr) {
            diagnostics->warn("no prediction for gold document " + gold.doc_id);
        }
        for (const auto& [facet, gold_strings] : gold.facets) {
            if (facet == facet_id(Facet::SourceCode)) {
                std::vector<std::string> urls;
                if (extraction != nullptr) {
                    for (const auto& [url, sentence_id] : extraction->source_code_urls) {
                        urls.push_back(url);
                    }
                }
                doc.facets[facet] = score_facet_urls(gold_strings, urls);
            } else {
                const std::vector<EntityCluster>* clusters = &no_clusters;
                if (extraction != nullptr) {
                    const auto it = extraction->facet_entities.find(facet);
                    if (it != extraction->facet_entities.end()) clusters = &it->second;
                }
                doc.facets[facet] = score_facet_entities(gold_strings, *clusters, threshold);
            }
        }
        out.push_back(std::move(doc));
    }
    return out;
}

EvalReport macro_report(const std::vector<DocScores>& docs, bool per_document) {
    if (docs.empty()) throw ValidationError("macro_report needs at least one scored document");

    EvalReport report;
    if (per_document) {
        struct Mean {
            double precision_sum = 0.0;
            int precision_n = 0;
            double recall_sum = 0.0;
            int recall_n = 0;
            FacetScore pooled;
        };
        std::map<std::string, Mean> means;
        for (const DocScores& doc : docs) {
            for (const auto& [facet, score] : doc.facets) {
                Mean& mean = means[facet];
                if (score.precision) {
                    mean.precision_sum += *score.precision;
                    ++mean.precision_n;
                }
                if (score.recall) {
                    mean.recall_sum += *score.recall;
                    ++mean.recall_n;
                }
                mean.pooled.gold_count += score.gold_count;
                mean.pooled.pred_count += score.pred_count;
                mean.pooled.matched_golds += score.matched_golds;
                mean.pooled.matched_preds += score.matched_preds;
            }
        }
        for (const auto& [facet, mean] : means) {
            FacetScore score = mean.pooled;
            score.precision = mean.precision_n > 0
                                  ? std::optional<double>(mean.precision_sum / mean.precision_n)
                                  : std::nullopt;
            score.recall = mean.recall_n > 0
                               ? std::optional<double>(mean.recall_sum / mean.recall_n)
                               : std::nullopt;
            report.facets[facet] = score;
        }
    } else {
        for (const DocScores& doc : docs) {
            for (const auto& [facet, score] : doc.facets) {
                FacetScore& pooled = report.facets[facet];
                pooled.gold_count += score.gold_count;
                pooled.pred_count += score.pred_count;
                pooled.matched_golds += score.matched_golds;
                pooled.matched_preds += score.matched_preds;
            }
        }
        for (auto& [facet, pooled] : report.facets) {
            pooled.precision = ratio(pooled.matched_preds, pooled.pred_count);
            pooled.recall = ratio(pooled.matched_golds, pooled.gold_count);
        }
    }

    double precision_sum = 0.0;
    int precision_n = 0;
    double recall_sum = 0.0;
    int recall_n = 0;
    for (const auto& [facet, score] : report.facets) {
        if (score.precision) {
            precision_sum += *score.precision;
            ++precision_n;
        }
        if (score.recall) {
            recall_sum += *score.recall;
            ++recall_n;
        }
    }
    if (precision_n == 0 && recall_n == 0) {
        throw ValidationError("no facet has a defined precision or recall");
    }
    report.macro_precision = precision_n > 0 ? precision_sum / precision_n : 0.0;
    report.macro_recall = recall_n > 0 ? recall_sum / recall_n : 0.0;
    const double denom = report.macro_precision + report.macro_recall;
    report.macro_f1 = denom > 0.0 ? 2.0 * report.macro_precision * report.macro_recall / denom
                                  : 0.0;
    return report;
}

void write_report_json(const EvalReport& report, const std::filesystem::path& file) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json facets = nlohmann::ordered_json::object();
    for (const auto& [facet, score] : report.facets) facets[facet] = facet_to_json(score);
    doc["facets"] = std::move(facets);
    doc["macro_precision"] = report.macro_precision;
    doc["macro_recall"] = report.macro_recall;
    doc["macro_f1"] = report.macro_f1;
    detail::write_file(file, doc.dump(2) + "\n");
}

void write_report_csv(const EvalReport& report, const std::filesystem::path& file) {
    std::string body = "facet,precision,recall,gold_count,pred_count\n";
    auto cell = [](const std::optional<double>& value) {
        return value ? std::to_string(*value) : std::string();
    };
    for (const auto& [facet, score] : report.facets) {
        body += facet + "," + cell(score.precision) + "," + cell(score.recall) + "," +
                std::to_string(score.gold_count) + "," + std::to_string(score.pred_count) + "\n";
    }
    body += "macro," + std::to_string(report.macro_precision) + "," +
            std::to_string(report.macro_recall) + ",,\n";
    body += "macro_f1," + std::to_string(report.macro_f1) + ",,,\n";
    detail::write_file(file, body);
}

}  // namespace scifex
