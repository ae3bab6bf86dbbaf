#pragma once

#include <stdexcept>
#include <string>

namespace ghor {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedWord : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class CompositionError : public Error {
 public:
  using Error::Error;
};

class EmbeddingError : public Error {
 public:
  using Error::Error;
};

// Raised when an operation's documented precondition does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class TheoremViolation : public Error {
 public:
  using Error::Error;
};

class ConstructionGap : public Error {
 public:
  using Error::Error;
};

}  // namespace ghor
