#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace boxoffice {

/// Argument outside an operation's mathematical domain (empty sample, bad fraction, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// CPI lookup for a year the table does not carry.
class MissingYearError : public std::out_of_range {
 public:
  explicit MissingYearError(int year)
      : std::out_of_range("CPI table has no entry for year " + std::to_string(year)), year_(year) {}
  int year() const noexcept { return year_; }

 private:
  int year_;
};

class UnknownRatingError : public std::invalid_argument {
 public:
  explicit UnknownRatingError(const std::string& label)
      : std::invalid_argument("unknown content rating '" + label + "'"), label_(label) {}
  const std::string& label() const noexcept { return label_; }

 private:
  std::string label_;
};

/// Least-squares system without a unique solution.
class SingularFitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unrecoverable corruption of an input stream. `offset` is the byte position of the fault.
class StreamError : public std::runtime_error {
 public:
  StreamError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A labelled dataset lacks one of the classes an operation needs.
class EmptyClassError : public std::runtime_error {
 public:
  explicit EmptyClassError(int label)
      : std::runtime_error("class " + std::to_string(label) + " has no members"), label_(label) {}
  int label() const noexcept { return label_; }

 private:
  int label_;
};

}  // namespace boxoffice
