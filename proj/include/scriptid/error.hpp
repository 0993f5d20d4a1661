#pragma once

#include <stdexcept>
#include <string>

namespace scriptid {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Portable-map decoding failure. The kind distinguishes header problems from
/// short or corrupt pixel data.
class FormatError : public Error {
 public:
  enum class Kind { MalformedHeader, TruncatedPayload, BadPayload };

  FormatError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// An operation that needs ink was handed a blank raster.
class NoInkError : public Error {
 public:
  using Error::Error;
};

class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Ground-truth or profile text that does not parse. line() is 1-based, 0 when
/// the problem is not tied to a single line.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what) : Error(what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Synthetic layout request that cannot be realized (e.g. it does not fit).
class SynthError : public Error {
 public:
  using Error::Error;
};

}  // namespace scriptid
