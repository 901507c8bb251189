#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "boxoffice/error.hpp"
#include "boxoffice/money.hpp"
#include "boxoffice/rng.hpp"

namespace boxoffice::classify {

/// Revenue class boundaries. Class k covers [boundary[k-1], boundary[k]).
class ClassBuckets {
 public:
  ClassBuckets() : ClassBuckets(defaults()) {}

  explicit ClassBuckets(std::vector<Money> boundaries) : boundaries_(std::move(boundaries)) {
    if (boundaries_.empty()) throw DomainError("class buckets need at least one boundary");
    for (std::size_t i = 1; i < boundaries_.size(); ++i) {
      if (!(boundaries_[i - 1] < boundaries_[i])) throw DomainError("class bucket boundaries must strictly increase");
    }
  }

  /// 1, 10, 20, 40, 65, 100, 150, 225, 350 million USD.
  static std::vector<Money> defaults() {
    std::vector<Money> out;
    for (const std::int64_t millions : {1, 10, 20, 40, 65, 100, 150, 225, 350}) {
      out.push_back(Money::from_cents(millions * 100'000'000));
    }
    return out;
  }

  /// Comma-separated millions, e.g. "1,10,20".
  static ClassBuckets parse_millions(const std::string& text) {
    std::vector<Money> out;
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto comma = text.find(',', start);
      const auto piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (piece.find_first_not_of(" \t") == std::string::npos) {
        throw DomainError("empty bucket boundary in '" + text + "'");
      }
      std::size_t used = 0;
      const long double value = std::stold(piece, &used);
      if (piece.find_first_not_of(" \t", used) != std::string::npos) {
        throw DomainError("bad bucket boundary '" + piece + "'");
      }
      out.push_back(Money::from_dollars(value * 1e6L));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return ClassBuckets(std::move(out));
  }

  int num_classes() const { return static_cast<int>(boundaries_.size()) + 1; }
  const std::vector<Money>& boundaries() const { return boundaries_; }

 private:
  std::vector<Money> boundaries_;
};

inline int bucketize(Money revenue, const ClassBuckets& buckets) {
  if (revenue.cents() < 0) throw DomainError("bucketize: negative revenue");
  const auto& b = buckets.boundaries();
  return static_cast<int>(std::upper_bound(b.begin(), b.end(), revenue) - b.begin());
}

/// Members per class label 0..num_classes-1.
inline std::vector<std::size_t> class_counts(std::span<const int> labels, int num_classes) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(num_classes), 0);
  for (const int y : labels) {
    if (y < 0 || y >= num_classes) throw DomainError("label " + std::to_string(y) + " out of range");
    ++counts[static_cast<std::size_t>(y)];
  }
  return counts;
}

/// Downsamples every class, without replacement, to the smallest class size.
/// Returns the selected positions in ascending order.
inline std::vector<std::size_t> balance(std::span<const int> labels, int num_classes, std::uint64_t seed) {
  const auto counts = class_counts(labels, num_classes);
  for (int k = 0; k < num_classes; ++k) {
    if (counts[static_cast<std::size_t>(k)] == 0) throw EmptyClassError(k);
  }
  const std::size_t target = *std::min_element(counts.begin(), counts.end());
  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(num_classes));
  for (std::size_t i = 0; i < labels.size(); ++i) members[static_cast<std::size_t>(labels[i])].push_back(i);

  Rng rng(seed);
  std::vector<std::size_t> selected;
  selected.reserve(target * members.size());
  for (auto& group : members) {
    shuffle(group, rng);
    selected.insert(selected.end(), group.begin(), group.begin() + static_cast<std::ptrdiff_t>(target));
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Random partition of 0..n-1 with round(test_fraction * n) test positions.
inline SplitIndices split(std::size_t n, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw DomainError("split: test fraction must lie in (0, 1)");
  const auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n)));
  Rng rng(seed);
  auto order = shuffled_indices(n, rng);
  SplitIndices out;
  out.test.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_test));
  out.train.assign(order.begin() + static_cast<std::ptrdiff_t>(n_test), order.end());
  std::sort(out.test.begin(), out.test.end());
  std::sort(out.train.begin(), out.train.end());
  return out;
}

}  // namespace boxoffice::classify
