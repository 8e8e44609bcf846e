#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scifex/errors.hpp"
#include "scifex/extract.hpp"

namespace scifex {

/// Normalized URL: scheme stripped, host lowercased, trailing slash removed.
struct UrlParts {
    std::string host;
    std::optional<std::string> first_segment;
};

UrlParts split_url(std::string_view url);

/// True when hosts are equal and the first path segments are equal, where
/// "both absent" counts as equal. A bare-host prediction never matches a
/// gold URL that has a path, and vice versa.
bool url_match(std::string_view gold_url, std::string_view predicted_url);

/// True when any cluster member reaches the fuzzy similarity threshold.
bool entity_match(std::string_view gold, const EntityCluster& cluster, double threshold = 0.85);

/// Set-based counts: a gold may be matched by several predictions and a
/// prediction may cover several golds. Absent metrics mean an empty
/// denominator.
struct FacetScore {
    std::optional<double> precision;
    std::optional<double> recall;
    int gold_count = 0;
    int pred_count = 0;
    int matched_golds = 0;
    int matched_preds = 0;
};

FacetScore score_facet_entities(const std::vector<std::string>& golds,
                                const std::vector<EntityCluster>& clusters,
                                double threshold = 0.85);
FacetScore score_facet_urls(const std::vector<std::string>& golds,
                            const std::vector<std::string>& predicted_urls);

struct GoldRecord {
    std::string doc_id;
    std::map<std::string, std::vector<std::string>> facets;  // facet id -> gold strings
};

std::vector<GoldRecord> load_gold(const std::filesystem::path& file);

struct DocScores {
    std::string doc_id;
    std::map<std::string, FacetScore> facets;
};

struct EvalReport {
    std::map<std::string, FacetScore> facets;  // pooled (or doc-averaged) per facet
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
};

/// Micro-pools counts per facet across documents, then macro-averages the
/// per-facet values that are defined. With `per_document` the per-facet
/// numbers are unweighted means of per-document scores instead.
EvalReport macro_report(const std::vector<DocScores>& docs, bool per_document = false);

/// Scores every gold record against the extraction with the same doc_id.
/// Gold documents without a prediction score against empty predictions and
/// produce a warning.
std::vector<DocScores> evaluate_corpus(const std::vector<GoldRecord>& golds,
                                       const std::vector<PaperExtraction>& extractions,
                                       double threshold = 0.85,
                                       Diagnostics* diagnostics = nullptr);

void write_report_json(const EvalReport& report, const std::filesystem::path& file);
void write_report_csv(const EvalReport& report, const std::filesystem::path& file);

}  // namespace scifex
