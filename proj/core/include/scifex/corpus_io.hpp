#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "scifex/corpus.hpp"
#include "scifex/errors.hpp"

namespace scifex {

/// Parses one document from its JSON representation. Text fields are
/// normalized and sentence/footnote/reference URLs are computed on load.
/// Throws ValidationError naming the missing or ill-typed field.
DocumentRecord parse_document_json(const std::string& payload, const std::string& context,
                                   const SectionKeywords& keywords = {});

DocumentRecord load_document(const std::filesystem::path& file,
                             const SectionKeywords& keywords = {});

/// Loads every *.json file under `dir` (non-recursive) and returns documents
/// sorted by doc_id. Duplicate doc_ids are a corpus-level error.
std::vector<DocumentRecord> load_corpus(const std::filesystem::path& dir,
                                        const SectionKeywords& keywords = {});

/// Inverse of parse_document_json for valid documents (tokens are not part of
/// the schema and are dropped; see conllu.hpp for the parse sidecar).
std::string serialize_document(const DocumentRecord& doc);

}  // namespace scifex
