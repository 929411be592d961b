#include "ergcftp/oracle.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace ergcftp {

std::uint64_t encode_free_bits(const AdjacencyState& y) {
  const auto& dyads = y.space().free_dyads();
  if (dyads.size() > 64) throw InvalidArgument("free-dyad key needs at most 64 free dyads");
  std::uint64_t key = 0;
  for (std::size_t k = 0; k < dyads.size(); ++k)
    if (y.has(dyads[k])) key |= std::uint64_t{1} << k;
  return key;
}

AdjacencyState decode_free_bits(const GraphSpace& space, std::uint64_t bits) {
  const auto& dyads = space.free_dyads();
  AdjacencyState y(space);
  for (std::size_t k = 0; k < dyads.size() && k < 64; ++k)
    if ((bits >> k) & 1u) y.assign_free(dyads[k], true);
  return y;
}

ExactDistribution::ExactDistribution(GraphSpace space, std::vector<double> probabilities,
                                     double log_normalizer)
    : space_(std::move(space)), probs_(std::move(probabilities)), log_norm_(log_normalizer) {
  const auto k = space_.free_dyads().size();
  if (k >= 64 || probs_.size() != (std::size_t{1} << k))
    throw InvalidArgument("exact distribution must cover every graph of the space");
}

ExactDistribution enumerate_distribution(const ModelSpec& model, const GraphSpace& space,
                                         const EnumerationOptions& options) {
  const std::size_t k = space.free_dyads().size();
  if (k > options.max_free_dyads || k >= 63)
    throw EnumerationCapExceeded("space has " + std::to_string(k) + " free dyads; enumeration cap is " +
                                 std::to_string(options.max_free_dyads));
  model.validate_for(space);
  const auto count = std::int64_t{1} << k;
  const auto& theta = model.theta();

  std::vector<double> logw(static_cast<std::size_t>(count));
#pragma omp parallel for num_threads(int(std::max<std::size_t>(options.workers, 1))) schedule(static)
  for (std::int64_t key = 0; key < count; ++key) {
    const AdjacencyState y = decode_free_bits(space, std::uint64_t(key));
    const auto t = evaluate(model, y);
    double s = 0;
    for (std::size_t l = 0; l < t.size(); ++l) s += theta[l] * t[l];
    logw[std::size_t(key)] = s;
  }

  // serial reduction: deterministic regardless of worker count
  const double shift = *std::max_element(logw.begin(), logw.end());
  double z = 0;
  for (double w : logw) z += std::exp(w - shift);
  std::vector<double> probs(logw.size());
  for (std::size_t i = 0; i < logw.size(); ++i) probs[i] = std::exp(logw[i] - shift) / z;
  return ExactDistribution(space, std::move(probs), shift + std::log(z));
}

double probability_ratio(const ModelSpec& model, const AdjacencyState& y1, const AdjacencyState& y2) {
  if (!(y1.space() == y2.space())) throw SpaceMismatch("probability ratio across different spaces");
  const auto t1 = evaluate(model, y1);
  const auto t2 = evaluate(model, y2);
  double s = 0;
  for (std::size_t l = 0; l < t1.size(); ++l) s += model.theta()[l] * (t2[l] - t1[l]);
  return std::exp(s);
}

void EmpiricalDistribution::add(const AdjacencyState& y) {
  if (!(y.space() == space_)) throw SpaceMismatch("draw belongs to a different space");
  add_key(encode_free_bits(y));
}

void EmpiricalDistribution::add_key(std::uint64_t key, std::size_t count) {
  counts_[key] += count;
  total_ += count;
}

double tv_distance(const EmpiricalDistribution& empirical, const ExactDistribution& exact) {
  if (!(empirical.space() == exact.space()))
    throw SpaceMismatch("empirical and exact distributions are on different spaces");
  if (empirical.total() == 0) throw InvalidArgument("empirical distribution is empty");
  const double total = double(empirical.total());
  double tv = 0;
  std::size_t matched = 0;
  for (std::uint64_t key = 0; key < exact.size(); ++key) {
    double p_hat = 0;
    if (auto it = empirical.counts().find(key); it != empirical.counts().end()) {
      p_hat = double(it->second) / total;
      matched += it->second;
    }
    tv += std::abs(p_hat - exact.probability(key));
  }
  // draws outside the exact support
  tv += double(empirical.total() - matched) / total;
  return std::min(1.0, 0.5 * tv);
}

std::vector<double> exact_summary(const ExactDistribution& exact, const GraphFunction& f) {
  std::vector<double> acc;
  for (std::uint64_t key = 0; key < exact.size(); ++key) {
    const double p = exact.probability(key);
    const auto v = f(decode_free_bits(exact.space(), key));
    if (acc.empty()) acc.assign(v.size(), 0.0);
    if (v.size() != acc.size()) throw InvalidArgument("summary function changed its output length");
    for (std::size_t i = 0; i < v.size(); ++i) acc[i] += p * v[i];
  }
  return acc;
}

std::vector<double> exact_summary(const ModelSpec& model, const GraphSpace& space, const GraphFunction& f) {
  return exact_summary(enumerate_distribution(model, space), f);
}

void write_distribution_csv(std::ostream& os, const ExactDistribution& exact) {
  os << "graph_bits_hex,probability\n";
  const int width = int((exact.space().free_dyads().size() + 3) / 4);
  char buf[64];
  for (std::uint64_t key = 0; key < exact.size(); ++key) {
    std::snprintf(buf, sizeof buf, "%0*" PRIx64 ",%.10g\n", width, key, exact.probability(key));
    os << buf;
  }
}

}  // namespace ergcftp
