#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scifex/corpus.hpp"
#include "scifex/crf.hpp"
#include "scifex/facets.hpp"
#include "scifex/patterns.hpp"
#include "scifex/sent_classifier.hpp"

namespace scifex {

struct EntityCluster {
    std::string canonical;
    std::map<std::string, int> members;  // surface form -> mention count

    int total_mentions() const;
};

/// Single-linkage clusters at `threshold` using the folded edit-distance
/// similarity. Output is sorted by canonical string, so permuting the input
/// mentions cannot change it.
std::vector<EntityCluster> cluster_entities(const std::vector<std::string>& mentions,
                                            double threshold);

struct PaperExtraction {
    std::string doc_id;
    int year = 0;
    std::vector<std::string> category_tags;
    std::map<std::string, std::vector<EntityCluster>> facet_entities;  // facet id -> clusters
    std::vector<std::pair<std::string, std::string>> source_code_urls;  // (url, sentence_id)
    std::map<std::string, std::vector<std::string>> provenance;  // facet id -> sentence ids
};

struct FacetPipelineResult {
    std::vector<EntityCluster> clusters;
    std::vector<std::string> provenance;  // sentences that produced mentions
};

/// Classifier gate then Viterbi span decoding for one entity facet. Both
/// model template versions are checked before any inference. Unparsed
/// sentences cannot be decoded and are counted in `stats`.
FacetPipelineResult run_facet_pipeline(const DocumentRecord& doc, Facet facet,
                                       const SentClassifierModel& sent_model,
                                       const CrfModel& crf_model,
                                       const PatternConfig* pattern_config = nullptr,
                                       double cluster_threshold = 0.85,
                                       ScanStats* stats = nullptr);

/// URLs of classifier-positive sentences: sentence text URLs, then URLs of
/// footnotes the sentence marks, then URLs of references it cites.
/// First occurrence wins on duplicates.
std::vector<std::pair<std::string, std::string>> extract_source_urls(
    const DocumentRecord& doc, const SentClassifierModel& sent_model,
    const PatternConfig* pattern_config = nullptr);

struct RelationMention {
    std::string text;
    std::string type;  // Task | Method | Material | Metric | Generic
    std::string section_id;
    std::string sentence_id;
};

struct RelationEdge {
    int from = 0;
    int to = 0;
    std::string type;  // USED-FOR | PART-OF | FEATURE-OF | HYPONYM-OF
};

struct RelationGraphDoc {
    std::string doc_id;
    std::vector<RelationMention> mentions;
    std::vector<RelationEdge> relations;
};

std::vector<RelationGraphDoc> load_relation_graphs(const std::filesystem::path& file);

struct TaskMethodResult {
    std::vector<EntityCluster> tasks;
    std::vector<EntityCluster> methods;
};

/// Salient task/method selection: mentions in abstract, introduction or
/// conclusion sections, joined by USED-FOR directly or, failing that, by an
/// undirected path of at most `max_path_len` relation edges. Survivors are
/// ranked by whole-document mention frequency, then clustered at 0.85.
TaskMethodResult select_task_method(const RelationGraphDoc& relgraph, const DocumentRecord& doc,
                                    int max_path_len = 3, double cluster_threshold = 0.85);

/// Assembles per-facet parts into one record. All parts must agree on
/// doc_id; facet maps merge disjointly.
PaperExtraction merge_document_extractions(const std::vector<PaperExtraction>& parts);

void write_extractions(const std::vector<PaperExtraction>& extractions,
                       const std::filesystem::path& file);
std::vector<PaperExtraction> load_extractions(const std::filesystem::path& file);

}  // namespace scifex
