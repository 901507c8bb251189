#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "boxoffice/features/history.hpp"
#include "boxoffice/ingest/record.hpp"

namespace boxoffice::features {

inline constexpr std::size_t kActorSlots = 10;

/// Co-appearance counts among a cast, counted over movies released strictly
/// before the cutoff year.
struct CollaborationGraph {
  std::vector<std::string> actors;
  std::vector<std::vector<double>> weights;  // symmetric, zero diagonal
};

struct Familiarity {
  double avg_cosine = 0.0;
  double max_pair_avg_revenue = 0.0;
  double max_pair_avg_raters = 0.0;
  double max_pair_avg_rating = 0.0;

  bool operator==(const Familiarity&) const = default;
};

/// The first ten billed actors, each name once.
inline std::vector<std::string> familiarity_nodes(const ingest::MovieRecord& movie) {
  std::vector<std::string> nodes;
  for (std::size_t i = 0; i < movie.cast.size() && i < kActorSlots; ++i) {
    if (std::find(nodes.begin(), nodes.end(), movie.cast[i]) == nodes.end()) nodes.push_back(movie.cast[i]);
  }
  return nodes;
}

/// Movies both filmographies share. Inputs are sorted by (year, movie id).
inline std::vector<const Credit*> joint_credits(std::span<const Credit> a, std::span<const Credit> b) {
  std::vector<const Credit*> out;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->order_key() < j->order_key()) {
      ++i;
    } else if (j->order_key() < i->order_key()) {
      ++j;
    } else {
      out.push_back(&*i);
      ++i;
      ++j;
    }
  }
  return out;
}

inline double row_cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    dot += a[k] * b[k];
    na += a[k] * a[k];
    nb += b[k] * b[k];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

inline CollaborationGraph collaboration_graph(const ingest::MovieRecord& movie, const HistoryIndex& index) {
  CollaborationGraph g;
  g.actors = familiarity_nodes(movie);
  const std::size_t n = g.actors.size();
  g.weights.assign(n, std::vector<double>(n, 0.0));
  std::vector<std::span<const Credit>> prior;
  prior.reserve(n);
  for (const auto& a : g.actors) prior.push_back(index.before(EntityKind::Actor, a, movie.release_year));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      g.weights[i][j] = g.weights[j][i] = static_cast<double>(joint_credits(prior[i], prior[j]).size());
    }
  }
  return g;
}

inline Familiarity familiarity(const ingest::MovieRecord& movie, const HistoryIndex& index) {
  Familiarity out;
  const auto nodes = familiarity_nodes(movie);
  const std::size_t n = nodes.size();
  if (n < 2) return out;

  std::vector<std::span<const Credit>> prior;
  prior.reserve(n);
  for (const auto& a : nodes) prior.push_back(index.before(EntityKind::Actor, a, movie.release_year));

  std::vector<std::vector<double>> weights(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto joint = joint_credits(prior[i], prior[j]);
      weights[i][j] = weights[j][i] = static_cast<double>(joint.size());
      if (joint.empty()) continue;
      double revenue = 0.0;
      double raters = 0.0;
      double rating = 0.0;
      for (const Credit* c : joint) {
        revenue += c->revenue;
        raters += c->raters;
        rating += c->rating;
      }
      const double k = static_cast<double>(joint.size());
      out.max_pair_avg_revenue = std::max(out.max_pair_avg_revenue, revenue / k);
      out.max_pair_avg_raters = std::max(out.max_pair_avg_raters, raters / k);
      out.max_pair_avg_rating = std::max(out.max_pair_avg_rating, rating / k);
    }
  }

  double cosine_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) cosine_sum += row_cosine(weights[i], weights[j]);
  }
  out.avg_cosine = cosine_sum / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
  return out;
}

}  // namespace boxoffice::features
