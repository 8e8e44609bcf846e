#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scifex/corpus.hpp"
#include "scifex/errors.hpp"

namespace scifex {

struct ConlluSentence {
    std::string sent_id;
    std::vector<Token> tokens;
};

/// Parses standard 10-column CoNLL-U. Sentences are identified by
/// "# sent_id = ..." comments; multiword-token ranges and empty nodes are
/// skipped. Malformed lines raise ValidationError with the line number.
std::vector<ConlluSentence> parse_conllu(std::string_view conllu_text);

/// Attaches parses to the matching sentences of `doc` (by sentence id).
/// Unmatched sent_ids produce a warning and are skipped; already-parsed
/// sentences are overwritten, so attaching the same text twice is a no-op.
/// Returns the number of sentences that gained tokens.
std::size_t attach_parses(DocumentRecord& doc, std::string_view conllu_text,
                          Diagnostics* diag = nullptr);

/// Emits the parsed sentences of `doc` back as CoNLL-U (sidecar format for
/// the normalized corpus store).
std::string write_conllu(const DocumentRecord& doc);

}  // namespace scifex
