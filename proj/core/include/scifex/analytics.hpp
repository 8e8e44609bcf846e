#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scifex/errors.hpp"
#include "scifex/extract.hpp"

namespace scifex {

struct TrendSeries {
    std::string label;
    std::map<int, double> points;  // year -> count or percentage
};

struct MemoryYearStats {
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    int n = 0;
};

using MemoryStats = std::map<int, MemoryYearStats>;  // year -> quartiles in GB

/// True when any cluster member of `facet` matches `key`: word-boundary
/// exact match for keys of length <= 2 (languages like "C" and "R"), fuzzy
/// similarity at `threshold` otherwise.
bool paper_matches_key(const PaperExtraction& extraction, const std::string& facet,
                       const std::string& key, double threshold = 0.85);

/// Share of URL-bearing papers per year with at least one source URL on
/// `host` (normalized). Years without URL-bearing papers are omitted.
TrendSeries host_share_by_year(const std::vector<PaperExtraction>& extractions,
                               const std::string& host);

/// Percentage of papers with a source URL per category tag; papers with
/// several tags count toward each. Sorted by percentage, then tag.
std::vector<std::pair<std::string, double>> share_by_category(
    const std::vector<PaperExtraction>& extractions);

/// Corpus-wide entity keys (cluster canonicals merged again at 0.85) ranked
/// by the number of papers matching each key.
std::vector<std::pair<std::string, int>> top_entities(
    const std::vector<PaperExtraction>& extractions, const std::string& facet, std::size_t k);

/// Entities of `other_facet` co-occurring with `key` papers, ranked by paper
/// count. The key itself is excluded when both facets coincide.
std::vector<std::pair<std::string, int>> co_usage(const std::vector<PaperExtraction>& extractions,
                                                  const std::string& facet,
                                                  const std::string& key,
                                                  const std::string& other_facet, std::size_t k,
                                                  Diagnostics* diagnostics = nullptr);

/// Papers per year matching `key` in `facet`.
TrendSeries topic_trend(const std::vector<PaperExtraction>& extractions, const std::string& facet,
                        const std::string& key);

/// Memory quantities parsed from compute-facet members ("16GB", "11 GB",
/// "1.5 TB"), normalized to GB, one value per paper (the maximum), then
/// lower-rank quartiles per year.
MemoryStats memory_stats_by_year(const std::vector<PaperExtraction>& extractions);

std::vector<double> parse_memory_quantities_gb(const std::string& text);

/// Lower-rank quantile: sorted[ceil(p * n) - 1].
double quantile_lower(std::vector<double> values, double p);

/// Paper counts per year for each of intel, nvidia, amd in compute members;
/// papers mentioning two or more brands are excluded.
std::vector<TrendSeries> manufacturer_share(const std::vector<PaperExtraction>& extractions);

std::pair<TrendSeries, TrendSeries> pairwise_trend(
    const std::vector<PaperExtraction>& extractions, const std::string& facet,
    const std::string& key_a, const std::string& key_b);

/// Flat output row; ranked queries leave the year empty.
struct SeriesRow {
    std::optional<int> year;
    std::string label;
    double value = 0.0;
};

std::vector<SeriesRow> rows_from_series(const TrendSeries& series);
std::vector<SeriesRow> rows_from_series(const std::vector<TrendSeries>& series);
std::vector<SeriesRow> rows_from_memory(const MemoryStats& stats);

void write_rows_csv(const std::vector<SeriesRow>& rows, const std::filesystem::path& file);
void write_rows_json(const std::vector<SeriesRow>& rows, const std::filesystem::path& file);

struct PlotDataOptions {
    std::string host = "github.com";
    std::string top_facet = "dataset";
    std::size_t top_k = 10;
    std::string topic_facet = "task";
    std::string topic_key = "sentiment analysis";
    std::string pair_facet = "language_library";
    std::pair<std::string, std::string> q7_keys = {"tensorflow", "pytorch"};
    std::pair<std::string, std::string> q8_keys = {"python", "java"};
};

/// Emits q1.csv through q8.csv into `dir`.
void write_plot_data(const std::vector<PaperExtraction>& extractions,
                     const std::filesystem::path& dir, const PlotDataOptions& options,
                     Diagnostics* diagnostics = nullptr);

}  // namespace scifex
