#pragma once

#include <stdexcept>
#include <string>

namespace trendcast {

/// Base for every error the library raises.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document: missing column, unparseable cell, bad JSON line.
class FormatError : public Error {
public:
  using Error::Error;
};

/// Input parsed but violates a domain invariant (duplicate date, bad valence).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// A windowed indicator was requested before enough history exists.
class WarmupError : public Error {
public:
  using Error::Error;
};

/// tomorrow_trend requested for the last bar of a series.
class NoLabelError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

/// Feature names or dimensions do not match what a model expects.
class SchemaError : public Error {
public:
  using Error::Error;
};

/// Training data that a model cannot be fit on (NaN, empty, single class).
class DataError : public Error {
public:
  using Error::Error;
};

/// Wraps an error raised inside a named pipeline stage.
class StageError : public Error {
public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

private:
  std::string stage_;
};

}  // namespace trendcast
