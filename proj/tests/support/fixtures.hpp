// Shared hand-built fixtures. Every parse here is constructed token-first so
// the surface join reconstructs the sentence text exactly, which is what the
// document validator demands.
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "scifex/bootstrap.hpp"
#include "scifex/corpus.hpp"
#include "scifex/extract.hpp"

namespace fixtures {

using SentenceKey = std::pair<std::string, std::string>;  // (doc_id, sentence_id)

scifex::Token tok(std::string surface, std::string lemma, std::string upos, int head,
                  std::string deprel, bool space_after = true);

/// Parsed sentence; text derived from the token surfaces.
scifex::Sentence sentence(std::string id, std::vector<scifex::Token> tokens,
                          std::vector<std::string> footnote_marks = {},
                          std::vector<std::string> citation_marks = {});

scifex::Sentence unparsed(std::string id, std::string text);

/// Twelve documents with planted extraction targets and distractors.
struct PlantedCorpus {
    std::vector<scifex::DocumentRecord> docs;
    std::set<SentenceKey> source_code;
    std::map<SentenceKey, int> dataset;  // value: expected trigger distance
    std::map<SentenceKey, std::vector<std::string>> dataset_names;
    std::set<SentenceKey> with_exclusion_lemma;
};

PlantedCorpus planted_corpus();

/// Raw-document JSON files plus CoNLL-U sidecars, the ingest input layout.
void write_raw_corpus(const std::vector<scifex::DocumentRecord>& docs,
                      const std::filesystem::path& raw_dir,
                      const std::filesystem::path& conllu_dir);

/// Synthetic tagging data where the token surface fully determines the tag
/// (ProgrammingLanguage / ProgrammingLibrary spans between filler words).
std::vector<scifex::CorllRecord> lexical_ner_records(int n_sentences, std::uint64_t seed);

/// Annotated file whose span histogram is exactly
/// {ComputePlatform: 181, ComputeTime: 51, HardwareResource: 576,
///  ProgrammingLanguage: 367, ProgrammingLibrary: 168}.
std::vector<scifex::CorllRecord> corll_distribution_records();

/// Thirty extraction records shaped so every trend query has a short
/// hand-computed answer (see the assertions that consume it).
std::vector<scifex::PaperExtraction> analytics_records();

std::string slurp(const std::filesystem::path& file);

/// Relative path -> file bytes for a whole directory tree.
std::map<std::string, std::string> snapshot_tree(const std::filesystem::path& root);

}  // namespace fixtures
