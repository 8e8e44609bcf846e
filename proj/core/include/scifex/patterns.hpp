#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "scifex/corpus.hpp"
#include "scifex/errors.hpp"
#include "scifex/facets.hpp"

namespace scifex {

/// Slots of the weak-supervision pattern rules. The first seven are matched
/// against the dependency parse; the last three look at surface evidence
/// (citations, footnote/sentence URLs, gazetteer names).
enum class PatternSlot {
    Subj,
    Root,
    Obj,
    AdjAdv,
    RelClVerb,
    RootNumber,
    AdjClNumber,
    HasReference,
    HasFootnoteUrl,
    GazetteerName,
};

std::string_view pattern_slot_id(PatternSlot slot);
std::optional<PatternSlot> pattern_slot_from_id(std::string_view id);

/// Lexicon per slot for one facet. Entries are lowercase lemmas; multiword
/// entries ("project page") are kept verbatim and only ever match where the
/// slot definition allows contiguous sequences.
struct FacetRules {
    Facet facet = Facet::SourceCode;
    std::map<PatternSlot, std::set<std::string>> lexicons;
};

struct PatternConfig {
    FacetRules source_code;
    FacetRules dataset;
    std::set<std::string> exclusion_lemmas;
    std::set<std::string> material_lemmas;
    std::vector<std::string> gazetteer;
    double span_score_threshold = 0.25;
    int min_distinct_slots = 2;
    int min_total_occurrences = 3;
    bool require_adj_or_obj_for_source = true;
    int dataset_lookahead = 5;
};

/// The shipped rule set (source-code and dataset pattern tables, exclusion
/// list, material words, dataset-name gazetteer).
PatternConfig default_pattern_config();
PatternConfig load_pattern_config(const std::filesystem::path& file);
std::string serialize_pattern_config(const PatternConfig& config);

struct SlotMatch {
    int count = 0;
    std::vector<int> token_indices;
};

struct PatternMatchReport {
    std::map<PatternSlot, SlotMatch> slots;
    int total_occurrences = 0;
    int distinct_slots = 0;

    int count(PatternSlot slot) const;
    const std::vector<int>* tokens(PatternSlot slot) const;
};

struct CandidateSentence {
    std::string doc_id;
    std::string sentence_id;
    Facet facet = Facet::SourceCode;
    PatternMatchReport report;
    int trigger_distance = 0;  // 0 for the trigger itself, 1..lookahead otherwise
};

struct ScoredSpan {
    int token_start = 0;  // inclusive
    int token_end = 0;    // inclusive
    std::string surface;
    double score = 0.0;
};

/// Counters kept while scanning a document (sentences skipped for missing
/// parses and similar non-fatal conditions).
struct ScanStats {
    std::size_t sentences_seen = 0;
    std::size_t sentences_unparsed = 0;
};

/// Matches one facet's rules against a parsed sentence. The document is
/// needed to resolve footnote marks for the HasFootnoteUrl slot.
/// Throws ValidationError("parse required") when the sentence has no tokens.
PatternMatchReport match_rules(const Sentence& sentence, const FacetRules& rules,
                               const DocumentRecord& doc, const PatternConfig& config);

std::vector<CandidateSentence> source_code_candidates(const DocumentRecord& doc,
                                                      const PatternConfig& config,
                                                      ScanStats* stats = nullptr);

std::vector<CandidateSentence> dataset_candidates(const DocumentRecord& doc,
                                                  const PatternConfig& config,
                                                  ScanStats* stats = nullptr);

/// Candidate dataset-name spans for a qualified sentence, scored 1/(1+d)
/// where d is the shortest dependency path from the span head to the nearest
/// token matched in the report's Root or Obj slot. Sorted by descending
/// score, ties by start position.
std::vector<ScoredSpan> dataset_entity_candidates(const Sentence& sentence,
                                                  const PatternMatchReport& report,
                                                  const PatternConfig& config);

/// Edge count of the unique tree path between tokens i and j (0 when i == j).
int shortest_dependency_path(const std::vector<Token>& tokens, int i, int j);

std::string candidate_to_jsonl(const CandidateSentence& candidate);
CandidateSentence candidate_from_json(const std::string& line, const std::string& context);
std::vector<CandidateSentence> load_candidates(const std::filesystem::path& file);

}  // namespace scifex
