#pragma once

#include <stdexcept>
#include <string>

namespace mtprune {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text (CoNLL-U lines, JSON bodies, config files).
// Carries the 1-based line number when one is known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line = 0)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// Input parsed fine but violates a tree invariant (cycle, double root, ...).
class StructuralError : public Error {
 public:
  StructuralError(const std::string& what, const std::string& sentence_id)
      : Error(what + " [sentence " + sentence_id + "]"), sentence_id_(sentence_id) {}
  const std::string& sentence_id() const { return sentence_id_; }

 private:
  std::string sentence_id_;
};

// Remote endpoint returned something outside the agreed wire shape.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Caller passed an argument outside the documented domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A function was called on input its precondition excludes.
class ContractError : public Error {
 public:
  using Error::Error;
};

// No clause core could be found (subjectless or otherwise degenerate input).
class ExtractionError : public Error {
 public:
  using Error::Error;
};

// Translation backend failed after retries, or was misconfigured.
class TranslationError : public Error {
 public:
  using Error::Error;
};

// Replay cache has no entry for the requested text.
class CacheMissError : public TranslationError {
 public:
  using TranslationError::TranslationError;
};

// Filesystem problem (missing fixture, unwritable output, ...).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mtprune
