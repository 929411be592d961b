#pragma once

#include <stdexcept>
#include <string>

namespace ergcftp {

// Invalid space/dyad/model construction.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Attempt to set a restricted dyad against its forced value.
class RestrictionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Two states (or a state and a distribution) live on different spaces.
class SpaceMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A statistic cannot be used on the given space (e.g. Mutual on an undirected space).
class IncompatibleSpace : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The model has no usable change-score bounds for the bounding chains.
class UnsupportedModel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exact enumeration refused because the space has too many free dyads.
class EnumerationCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Malformed model / sweep / bias file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ergcftp
