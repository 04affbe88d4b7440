// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <stdexcept>
#include <string>

namespace synmorph {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data (bad column counts, non-numeric fields, ...).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a structural invariant (head out of
/// range, non-contiguous token indices, alignment outside the sentence).
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Bad configuration: missing files, mismatched corpus sizes, unknown ids.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Morpheme sampling gave up after too many rejected candidates.
class ExhaustionError : public Error {
 public:
  using Error::Error;
};

}  // namespace synmorph
