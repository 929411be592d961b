#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <vector>

#include "ergcftp/graph.hpp"
#include "ergcftp/statistics.hpp"

namespace ergcftp {

// Graph key: bit k is the state of free dyad k (canonical order).
std::uint64_t encode_free_bits(const AdjacencyState& y);
AdjacencyState decode_free_bits(const GraphSpace& space, std::uint64_t bits);

/// Exact ERG pmf over every graph of a small space, indexed by free-dyad key.
class ExactDistribution {
 public:
  ExactDistribution(GraphSpace space, std::vector<double> probabilities, double log_normalizer);

  const GraphSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double probability(std::uint64_t key) const { return probs_.at(key); }
  double probability(const AdjacencyState& y) const { return probability(encode_free_bits(y)); }
  const std::vector<double>& probabilities() const noexcept { return probs_; }
  // log sum_y exp(θᵀt(y))
  double log_normalizer() const noexcept { return log_norm_; }

 private:
  GraphSpace space_;
  std::vector<double> probs_;
  double log_norm_;
};

struct EnumerationOptions {
  std::size_t max_free_dyads = 20;
  std::size_t workers = 1;
};

// Throws EnumerationCapExceeded when the space has too many free dyads.
ExactDistribution enumerate_distribution(const ModelSpec& model, const GraphSpace& space,
                                         const EnumerationOptions& options = {});

// p(y2) / p(y1) = exp(θᵀ(t(y2) - t(y1))).
double probability_ratio(const ModelSpec& model, const AdjacencyState& y1, const AdjacencyState& y2);

/// Draw counts keyed by free-dyad key.
class EmpiricalDistribution {
 public:
  explicit EmpiricalDistribution(GraphSpace space) : space_(std::move(space)) {}

  void add(const AdjacencyState& y);
  void add_key(std::uint64_t key, std::size_t count = 1);

  const GraphSpace& space() const noexcept { return space_; }
  const std::map<std::uint64_t, std::size_t>& counts() const noexcept { return counts_; }
  std::size_t total() const noexcept { return total_; }

 private:
  GraphSpace space_;
  std::map<std::uint64_t, std::size_t> counts_;
  std::size_t total_ = 0;
};

// (1/2) sum |p_hat - p|. Throws SpaceMismatch.
double tv_distance(const EmpiricalDistribution& empirical, const ExactDistribution& exact);

using GraphFunction = std::function<std::vector<double>(const AdjacencyState&)>;

// sum_y p(y) f(y)
std::vector<double> exact_summary(const ExactDistribution& exact, const GraphFunction& f);
std::vector<double> exact_summary(const ModelSpec& model, const GraphSpace& space, const GraphFunction& f);

// CSV columns: graph_bits_hex, probability
void write_distribution_csv(std::ostream& os, const ExactDistribution& exact);

}  // namespace ergcftp
