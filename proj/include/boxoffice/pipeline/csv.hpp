#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "boxoffice/error.hpp"
#include "boxoffice/matrix.hpp"

namespace boxoffice::pipeline {

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw DomainError("format_double: conversion failed");
  return {buf, end};
}

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r') out.back().pop_back();
  return out;
}

inline double parse_double(std::string_view s, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw DomainError("line " + std::to_string(line_no) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline Table read_table(std::istream& in) {
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw DomainError("csv: missing header row");
  t.header = split_csv_line(line);
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (cells.size() != t.header.size()) {
      throw DomainError("csv line " + std::to_string(t.rows.size() + 2) + ": expected " +
                        std::to_string(t.header.size()) + " cells, got " + std::to_string(cells.size()));
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path);
  return in;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  return out;
}

inline void write_matrix(std::ostream& out, const std::vector<std::string>& names, const FeatureMatrix& x) {
  if (static_cast<Eigen::Index>(names.size()) != x.cols()) throw DomainError("write_matrix: header width mismatch");
  for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << names[j];
  out << '\n';
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) out << (j ? "," : "") << format_double(x(i, j));
    out << '\n';
  }
}

inline FeatureMatrix read_matrix(std::istream& in, std::vector<std::string>* names = nullptr) {
  const auto t = read_table(in);
  FeatureMatrix x(static_cast<Eigen::Index>(t.rows.size()), static_cast<Eigen::Index>(t.header.size()));
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    for (std::size_t j = 0; j < t.header.size(); ++j) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parse_double(t.rows[i][j], i + 2);
    }
  }
  if (names != nullptr) *names = t.header;
  return x;
}

struct LabelColumn {
  std::vector<std::string> ids;
  std::vector<int> labels;
};

inline void write_labels(std::ostream& out, const LabelColumn& y) {
  out << "id,label\n";
  for (std::size_t i = 0; i < y.ids.size(); ++i) out << y.ids[i] << ',' << y.labels[i] << '\n';
}

inline LabelColumn read_labels(std::istream& in) {
  const auto t = read_table(in);
  if (t.header.size() != 2 || t.header[1] != "label") throw DomainError("label csv: expected header 'id,label'");
  LabelColumn y;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    int v = 0;
    const auto& s = t.rows[i][1];
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw DomainError("label csv line " + std::to_string(i + 2) + ": bad label '" + s + "'");
    }
    y.ids.push_back(t.rows[i][0]);
    y.labels.push_back(v);
  }
  return y;
}

}  // namespace boxoffice::pipeline
