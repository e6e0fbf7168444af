#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>

namespace aoi {

/// Base of every error raised by the library. The CLI maps any `Error` to exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LoadError : public Error {
  using Error::Error;
};
class SchemaError : public Error {
  using Error::Error;
};
class TypeError : public Error {
  using Error::Error;
};
class HierarchyError : public Error {
  using Error::Error;
};
class RangeError : public Error {
  using Error::Error;
};
class UnknownLeafError : public Error {
  using Error::Error;
};
class LevelError : public Error {
  using Error::Error;
};
class TaskError : public Error {
  using Error::Error;
};
class EmitError : public Error {
  using Error::Error;
};
class GenerationError : public Error {
  using Error::Error;
};
class ResolutionError : public Error {
  using Error::Error;
};

/// A statement uses SQL outside the supported subset (OR, JOIN, subqueries, ...).
class UnsupportedFeatureError : public Error {
 public:
  UnsupportedFeatureError(std::string construct, std::size_t offset)
      : Error("unsupported SQL feature '" + construct + "' at offset " + std::to_string(offset)),
        construct_(std::move(construct)),
        offset_(offset) {}

  const std::string &construct() const { return construct_; }
  std::size_t offset() const { return offset_; }

 private:
  std::string construct_;
  std::size_t offset_;
};

class SqlSyntaxError : public Error {
 public:
  SqlSyntaxError(std::size_t offset, std::set<std::string> expected, const std::string &found)
      : Error(format(offset, expected, found)), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::set<std::string> &expected() const { return expected_; }

 private:
  static std::string format(std::size_t offset, const std::set<std::string> &expected, const std::string &found) {
    std::string msg = "syntax error at offset " + std::to_string(offset) + ": found " + found + ", expected ";
    bool first = true;
    for (const auto &e : expected) {
      if (!first) msg += " | ";
      msg += e;
      first = false;
    }
    return msg;
  }

  std::size_t offset_;
  std::set<std::string> expected_;
};

}  // namespace aoi
