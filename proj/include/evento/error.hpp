#pragma once

#include <stdexcept>
#include <string>

namespace evento {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input that cannot be skipped (bad column count, non-numeric head).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Invalid resource file content (gazetteers, dictionaries, embeddings, config).
class LoadError : public Error {
public:
    using Error::Error;
};

/// Invalid query against a built model or graph.
class QueryError : public Error {
public:
    using Error::Error;
};

} // namespace evento
