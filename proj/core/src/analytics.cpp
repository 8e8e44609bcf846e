#include "scifex/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <set>

#include "json_util.hpp"
#include "scifex/evalkit.hpp"
#include "scifex/text.hpp"

namespace scifex {
namespace {

const std::vector<std::string>* facet_clusters(const PaperExtraction& extraction,
                                               const std::string& facet,
                                               std::vector<std::string>& storage) {
    storage.clear();
    const auto it = extraction.facet_entities.find(facet);
    if (it == extraction.facet_entities.end()) return &storage;
    for (const EntityCluster& cluster : it->second) {
        for (const auto& [member, count] : cluster.members) storage.push_back(member);
    }
    return &storage;
}

bool member_matches_key(const std::string& member, const std::string& key, double threshold) {
    if (key.size() <= 2) return contains_word(member, key, /*case_sensitive=*/false);
    return similarity(key, member) >= threshold;
}

// Corpus-wide entity keys for a facet: every per-paper canonical, merged
// once more by fuzzy clustering.
std::vector<std::string> corpus_keys(const std::vector<PaperExtraction>& extractions,
                                     const std::string& facet) {
    std::vector<std::string> canonicals;
    for (const PaperExtraction& extraction : extractions) {
        const auto it = extraction.facet_entities.find(facet);
        if (it == extraction.facet_entities.end()) continue;
        for (const EntityCluster& cluster : it->second) canonicals.push_back(cluster.canonical);
    }
    std::vector<std::string> keys;
    for (const EntityCluster& merged : cluster_entities(canonicals, 0.85)) {
        keys.push_back(merged.canonical);
    }
    return keys;
}

std::vector<std::pair<std::string, int>> rank_keys_by_papers(
    const std::vector<PaperExtraction>& extractions, const std::vector<std::string>& keys,
    const std::string& facet, std::size_t k) {
    std::vector<std::pair<std::string, int>> ranked;
    for (const std::string& key : keys) {
        int papers = 0;
        for (const PaperExtraction& extraction : extractions) {
            if (paper_matches_key(extraction, facet, key, 0.85)) ++papers;
        }
        if (papers > 0) ranked.emplace_back(key, papers);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > k) ranked.resize(k);
    return ranked;
}

std::string csv_escape(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += "\"\"";
        else quoted.push_back(c);
    }
    quoted += "\"";
    return quoted;
}

std::string format_value(double value) {
    // Integral values print without a decimal point so counts stay counts.
    if (value == std::floor(value) && std::abs(value) < 1e15) {
        return std::to_string(static_cast<long long>(value));
    }
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", value);
    return buffer;
}

}  // namespace

bool paper_matches_key(const PaperExtraction& extraction, const std::string& facet,
                       const std::string& key, double threshold) {
    std::vector<std::string> storage;
    for (const std::string& member : *facet_clusters(extraction, facet, storage)) {
        if (member_matches_key(member, key, threshold)) return true;
    }
    return false;
}

TrendSeries host_share_by_year(const std::vector<PaperExtraction>& extractions,
                               const std::string& host) {
    const std::string wanted = split_url(host).host;
    std::map<int, std::pair<int, int>> by_year;  // year -> (on host, with any url)
    for (const PaperExtraction& extraction : extractions) {
        if (extraction.source_code_urls.empty()) continue;
        auto& [numerator, denominator] = by_year[extraction.year];
        ++denominator;
        for (const auto& [url, sentence_id] : extraction.source_code_urls) {
            if (split_url(url).host == wanted) {
                ++numerator;
                break;
            }
        }
    }
    TrendSeries series;
    series.label = host;
    for (const auto& [year, counts] : by_year) {
        series.points[year] = 100.0 * counts.first / counts.second;
    }
    return series;
}

std::vector<std::pair<std::string, double>> share_by_category(
    const std::vector<PaperExtraction>& extractions) {
    std::map<std::string, std::pair<int, int>> by_tag;  // tag -> (with url, total)
    for (const PaperExtraction& extraction : extractions) {
        for (const std::string& tag : extraction.category_tags) {
            auto& [with_url, total] = by_tag[tag];
            ++total;
            if (!extraction.source_code_urls.empty()) ++with_url;
        }
    }
    std::vector<std::pair<std::string, double>> out;
    for (const auto& [tag, counts] : by_tag) {
        out.emplace_back(tag, 100.0 * counts.first / counts.second);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

std::vector<std::pair<std::string, int>> top_entities(
    const std::vector<PaperExtraction>& extractions, const std::string& facet, std::size_t k) {
    if (k == 0) return {};
    return rank_keys_by_papers(extractions, corpus_keys(extractions, facet), facet, k);
}

std::vector<std::pair<std::string, int>> co_usage(const std::vector<PaperExtraction>& extractions,
                                                  const std::string& facet,
                                                  const std::string& key,
                                                  const std::string& other_facet, std::size_t k,
                                                  Diagnostics* diagnostics) {
    std::vector<PaperExtraction> matching;
    for (const PaperExtraction& extraction : extractions) {
        if (paper_matches_key(extraction, facet, key, 0.85)) matching.push_back(extraction);
    }
    if (matching.empty()) {
        if (diagnostics) diagnostics->warn("no papers match key '" + key + "' in " + facet);
        return {};
    }
    std::vector<std::string> keys = corpus_keys(extractions, other_facet);
    if (facet == other_facet) {
        keys.erase(std::remove_if(keys.begin(), keys.end(),
                                  [&](const std::string& other) {
                                      return member_matches_key(other, key, 0.85) ||
                                             member_matches_key(key, other, 0.85);
                                  }),
                   keys.end());
    }
    return rank_keys_by_papers(matching, keys, other_facet, k);
}

TrendSeries topic_trend(const std::vector<PaperExtraction>& extractions, const std::string& facet,
                        const std::string& key) {
    TrendSeries series;
    series.label = key;
    for (const PaperExtraction& extraction : extractions) {
        if (paper_matches_key(extraction, facet, key, 0.85)) {
            series.points[extraction.year] += 1.0;
        }
    }
    return series;
}

std::vector<double> parse_memory_quantities_gb(const std::string& text) {
    static const std::regex pattern(R"(([0-9]+(?:\.[0-9]+)?)\s*(GiB|MiB|GB|MB|TB|G)\b)",
                                    std::regex::icase);
    std::vector<double> out;
    auto begin = std::sregex_iterator(text.begin(), text.end(), pattern);
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
        const double value = std::stod((*it)[1].str());
        std::string unit = (*it)[2].str();
        for (char& c : unit) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (unit == "mb" || unit == "mib") {
            out.push_back(value / 1024.0);
        } else if (unit == "tb") {
            out.push_back(value * 1024.0);
        } else {  // gb, gib, g
            out.push_back(value);
        }
    }
    return out;
}

double quantile_lower(std::vector<double> values, double p) {
    if (values.empty()) throw ValidationError("quantile of empty sample");
    std::sort(values.begin(), values.end());
    const double rank = std::ceil(p * static_cast<double>(values.size()));
    const std::size_t index =
        rank < 1.0 ? 0 : static_cast<std::size_t>(rank) - 1;
    return values[std::min(index, values.size() - 1)];
}

MemoryStats memory_stats_by_year(const std::vector<PaperExtraction>& extractions) {
    std::map<int, std::vector<double>> by_year;
    const std::string compute(facet_id(Facet::Compute));
    for (const PaperExtraction& extraction : extractions) {
        std::vector<std::string> storage;
        double best = -1.0;
        for (const std::string& member : *facet_clusters(extraction, compute, storage)) {
            for (double gb : parse_memory_quantities_gb(member)) best = std::max(best, gb);
        }
        if (best >= 0.0) by_year[extraction.year].push_back(best);
    }
    MemoryStats stats;
    for (const auto& [year, values] : by_year) {
        MemoryYearStats row;
        row.q1 = quantile_lower(values, 0.25);
        row.median = quantile_lower(values, 0.50);
        row.q3 = quantile_lower(values, 0.75);
        row.n = static_cast<int>(values.size());
        stats[year] = row;
    }
    return stats;
}

std::vector<TrendSeries> manufacturer_share(const std::vector<PaperExtraction>& extractions) {
    static const std::vector<std::string> brands = {"intel", "nvidia", "amd"};
    std::map<std::string, TrendSeries> series;
    for (const std::string& brand : brands) series[brand].label = brand;
    const std::string compute(facet_id(Facet::Compute));
    for (const PaperExtraction& extraction : extractions) {
        std::vector<std::string> storage;
        std::set<std::string> mentioned;
        for (const std::string& member : *facet_clusters(extraction, compute, storage)) {
            for (const std::string& brand : brands) {
                if (contains_word(member, brand, /*case_sensitive=*/false)) {
                    mentioned.insert(brand);
                }
            }
        }
        if (mentioned.size() != 1) continue;  // none, or ambiguous multi-brand paper
        series[*mentioned.begin()].points[extraction.year] += 1.0;
    }
    std::vector<TrendSeries> out;
    for (const std::string& brand : brands) out.push_back(series[brand]);
    return out;
}

std::pair<TrendSeries, TrendSeries> pairwise_trend(
    const std::vector<PaperExtraction>& extractions, const std::string& facet,
    const std::string& key_a, const std::string& key_b) {
    return {topic_trend(extractions, facet, key_a), topic_trend(extractions, facet, key_b)};
}

std::vector<SeriesRow> rows_from_series(const TrendSeries& series) {
    std::vector<SeriesRow> rows;
    for (const auto& [year, value] : series.points) rows.push_back({year, series.label, value});
    return rows;
}

std::vector<SeriesRow> rows_from_series(const std::vector<TrendSeries>& series) {
    std::vector<SeriesRow> rows;
    for (const TrendSeries& one : series) {
        const std::vector<SeriesRow> part = rows_from_series(one);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
}

std::vector<SeriesRow> rows_from_memory(const MemoryStats& stats) {
    std::vector<SeriesRow> rows;
    for (const auto& [year, row] : stats) {
        rows.push_back({year, "q1", row.q1});
        rows.push_back({year, "median", row.median});
        rows.push_back({year, "q3", row.q3});
        rows.push_back({year, "n", static_cast<double>(row.n)});
    }
    return rows;
}

void write_rows_csv(const std::vector<SeriesRow>& rows, const std::filesystem::path& file) {
    std::string body = "year,label,value\n";
    for (const SeriesRow& row : rows) {
        body += (row.year ? std::to_string(*row.year) : std::string()) + "," +
                csv_escape(row.label) + "," + format_value(row.value) + "\n";
    }
    detail::write_file(file, body);
}

void write_rows_json(const std::vector<SeriesRow>& rows, const std::filesystem::path& file) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const SeriesRow& row : rows) {
        nlohmann::ordered_json line;
        if (row.year) {
            line["year"] = *row.year;
        } else {
            line["year"] = nullptr;
        }
        line["label"] = row.label;
        line["value"] = row.value;
        out.push_back(std::move(line));
    }
    detail::write_file(file, out.dump(2) + "\n");
}

void write_plot_data(const std::vector<PaperExtraction>& extractions,
                     const std::filesystem::path& dir, const PlotDataOptions& options,
                     Diagnostics* diagnostics) {
    std::filesystem::create_directories(dir);
    write_rows_csv(rows_from_series(host_share_by_year(extractions, options.host)),
                   dir / "q1.csv");

    std::vector<SeriesRow> q2;
    for (const auto& [tag, percent] : share_by_category(extractions)) {
        q2.push_back({std::nullopt, tag, percent});
    }
    write_rows_csv(q2, dir / "q2.csv");

    std::vector<SeriesRow> q3;
    for (const auto& [key, papers] :
         top_entities(extractions, options.top_facet, options.top_k)) {
        q3.push_back({std::nullopt, key, static_cast<double>(papers)});
    }
    write_rows_csv(q3, dir / "q3.csv");

    write_rows_csv(
        rows_from_series(topic_trend(extractions, options.topic_facet, options.topic_key)),
        dir / "q4.csv");
    write_rows_csv(rows_from_memory(memory_stats_by_year(extractions)), dir / "q5.csv");
    write_rows_csv(rows_from_series(manufacturer_share(extractions)), dir / "q6.csv");

    const auto [q7a, q7b] = pairwise_trend(extractions, options.pair_facet,
                                           options.q7_keys.first, options.q7_keys.second);
    write_rows_csv(rows_from_series(std::vector<TrendSeries>{q7a, q7b}), dir / "q7.csv");

    const auto [q8a, q8b] = pairwise_trend(extractions, options.pair_facet,
                                           options.q8_keys.first, options.q8_keys.second);
    write_rows_csv(rows_from_series(std::vector<TrendSeries>{q8a, q8b}), dir / "q8.csv");
    (void)diagnostics;
}

}  // namespace scifex
