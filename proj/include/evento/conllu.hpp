#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "evento/corpus.hpp"

namespace evento {

/// A sentence dropped during parsing (dangling head, self-head, multiple
/// roots, a cycle, or non-contiguous ids). Parsing continues with the next
/// sentence.
struct ParseDiagnostic {
    std::string doc_id;
    std::string sentence_id;
    int line = 0; // line of the offending sentence's first token row
    std::string message;
};

struct ParseResult {
    std::vector<Document> documents;
    std::vector<ParseDiagnostic> rejected;
};

/// Reads 10-column CoNLL-U. `# newdoc id = ...` and `# sent_id = ...`
/// comments delimit documents and sentences and are mandatory. Multiword
/// token ranges (`2-3`) and empty nodes (`1.1`) are skipped in favor of
/// their component rows. Throws ParseError (with a line number) on
/// malformed rows; structurally broken sentences are rejected per sentence
/// and reported in `rejected`.
ParseResult parse_conllu(std::istream& in, const std::string& subcorpus);

ParseResult parse_conllu_file(const std::string& path, const std::string& subcorpus);

/// Serializes a Document back to CoNLL-U. Re-parsing the output yields a
/// structurally equal Document (token fields, tree shape, misc annotations).
void write_conllu(const Document& doc, std::ostream& out);

std::string to_conllu(const Document& doc);

} // namespace evento
