#pragma once

#include <stdexcept>
#include <string>

namespace dcs {

// Base class for all data-dependent failures. Programmer errors (bad config
// values, out-of-range ids) throw std::invalid_argument / std::out_of_range
// instead.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  long line;
  ParseError(long line_no, const std::string& what)
      : Error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

struct DuplicateEdge : Error { using Error::Error; };
struct SelfLoop      : Error { using Error::Error; };
struct BadWeight     : Error { using Error::Error; };
struct BadTransform  : Error { using Error::Error; };
struct EmptySet      : Error { using Error::Error; };
struct EmptyGraph    : Error { using Error::Error; };
struct BadEmbedding  : Error { using Error::Error; };
struct NoMass        : Error { using Error::Error; };
struct NotAKKTPoint  : Error { using Error::Error; };
struct NegativeWeight: Error { using Error::Error; };
struct ZeroAffinity  : Error { using Error::Error; };
struct TooLarge      : Error { using Error::Error; };
struct NotAClique    : Error { using Error::Error; };
struct UndefinedGap  : Error { using Error::Error; };
struct EmptyCorpus   : Error { using Error::Error; };

}  // namespace dcs
