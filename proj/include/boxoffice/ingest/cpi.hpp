#pragma once

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "boxoffice/error.hpp"
#include "boxoffice/ingest/record.hpp"
#include "boxoffice/money.hpp"

namespace boxoffice::ingest {

/// Percentage change between two price-index readings.
inline double inflation_rate(double cpi1, double cpi2) {
  if (!(cpi1 > 0.0)) throw DomainError("inflation_rate: base CPI must be positive");
  return (cpi2 - cpi1) / cpi1 * 100.0;
}

/// Year -> consumer price index, plus the year all money is expressed in.
class CpiTable {
 public:
  CpiTable() = default;

  /// `reference_year` defaults to the latest year present.
  explicit CpiTable(std::map<int, double> entries, std::optional<int> reference_year = std::nullopt)
      : entries_(std::move(entries)) {
    if (entries_.empty()) throw DomainError("CPI table is empty");
    for (const auto& [year, index] : entries_) {
      if (!(index > 0.0)) {
        throw DomainError("CPI index for " + std::to_string(year) + " must be positive");
      }
    }
    reference_year_ = reference_year.value_or(entries_.rbegin()->first);
    if (!entries_.contains(reference_year_)) throw MissingYearError(reference_year_);
  }

  /// Two whitespace-separated columns per line: year, index. `#` starts a comment.
  static CpiTable parse(std::istream& in, std::optional<int> reference_year = std::nullopt) {
    std::map<int, double> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream fields(line);
      int year = 0;
      double index = 0.0;
      if (!(fields >> year)) {
        if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
        throw std::runtime_error("CPI table line " + std::to_string(line_no) + ": expected year");
      }
      if (fields.peek() == ',') fields.get();
      if (!(fields >> index)) {
        throw std::runtime_error("CPI table line " + std::to_string(line_no) + ": expected index");
      }
      if (!entries.emplace(year, index).second) {
        throw std::runtime_error("CPI table line " + std::to_string(line_no) + ": duplicate year " +
                                 std::to_string(year));
      }
    }
    return CpiTable(std::move(entries), reference_year);
  }

  static CpiTable load(const std::string& path, std::optional<int> reference_year = std::nullopt) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open CPI table '" + path + "'");
    return parse(in, reference_year);
  }

  double at(int year) const {
    const auto it = entries_.find(year);
    if (it == entries_.end()) throw MissingYearError(year);
    return it->second;
  }

  bool contains(int year) const { return entries_.contains(year); }
  int reference_year() const { return reference_year_; }
  const std::map<int, double>& entries() const { return entries_; }

 private:
  std::map<int, double> entries_;
  int reference_year_ = 0;
};

/// amount * CPI(reference) / CPI(from_year), rounded to the cent.
inline Money adjust_for_inflation(Money amount, int from_year, const CpiTable& table) {
  const long double from = table.at(from_year);
  const long double to = table.at(table.reference_year());
  if (from_year == table.reference_year()) return amount;
  return Money::from_cents(std::llroundl(static_cast<long double>(amount.cents()) * to / from));
}

/// Inverse of adjust_for_inflation: reference-year dollars back to `to_year` dollars.
inline Money deflate(Money amount, int to_year, const CpiTable& table) {
  const long double target = table.at(to_year);
  const long double ref = table.at(table.reference_year());
  if (to_year == table.reference_year()) return amount;
  return Money::from_cents(std::llroundl(static_cast<long double>(amount.cents()) * target / ref));
}

/// Adjusts budget and revenue of every record. Throws MissingYearError on the
/// first record whose year the table lacks.
inline std::vector<MovieRecord> adjust_dataset(std::vector<MovieRecord> records,
                                               const CpiTable& table) {
  for (auto& m : records) {
    m.budget = adjust_for_inflation(m.budget, m.release_year, table);
    m.revenue = adjust_for_inflation(m.revenue, m.release_year, table);
  }
  return records;
}

}  // namespace boxoffice::ingest
