#include "ergcftp/bounding.hpp"


namespace ergcftp {

namespace {

Dyad require_free(const GraphSpace& space, Dyad d) {
  d = space.canonical(d);
  if (space.status(d) != DyadStatus::Free)
    throw RestrictionViolation("update requested on a restricted dyad");
  return d;
}

}  // namespace

BoundPair::BoundPair(AdjacencyState lower, AdjacencyState upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (!is_subgraph(lower_, upper_)) throw InvalidArgument("bound pair requires lower ⊆ upper");
  diff_ = differing_dyads(lower_, upper_);
}

BoundPair BoundPair::of_space(const GraphSpace& space) {
  auto [lo, hi] = bounds_of_space(space);
  return BoundPair(std::move(lo), std::move(hi));
}

void BoundPair::set(Dyad d, bool lower_present, bool upper_present) noexcept {
  const bool differed = lower_.has(d) != upper_.has(d);
  lower_.assign_free(d, lower_present);
  upper_.assign_free(d, upper_present);
  const bool differs = lower_present != upper_present;
  diff_ = diff_ + differs - differed;
}

BoundScorer::BoundScorer(ModelSpec model, const GraphSpace& space)
    : scorer_(std::move(model), space) {
  const auto& stats = scorer_.model().stats();
  for (const auto& s : stats) {
    const auto mono = s.monotonicity();
    if (mono != Monotonicity::CensusMonotone) all_census_ = false;
    if (mono == Monotonicity::General) {
      auto [lo, hi] = bounds_of_space(space);
      if (!s.custom->change_bounds(lo, hi, space.free_dyads().front()))
        throw UnsupportedModel("statistic '" + s.name() +
                               "' is not monotone and supplies no change-score bounds");
    }
  }
}

std::pair<double, double> BoundScorer::component_range(std::size_t l, const BoundPair& pair,
                                                       Dyad d) const {
  const auto& s = scorer_.model().stats()[l];
  if (s.monotonicity() == Monotonicity::CensusMonotone)
    return {scorer_.score(l, pair.lower(), d), scorer_.score(l, pair.upper(), d)};
  if (auto user = s.custom->change_bounds(pair.lower(), pair.upper(), d)) return *user;
  // statistic-monotone: 0 <= Δ_d(y) <= t(U+_d) - t(L-_d)
  AdjacencyState upper_plus = pair.upper();
  AdjacencyState lower_minus = pair.lower();
  upper_plus.assign_free(d, true);
  lower_minus.assign_free(d, false);
  return {0.0, s.custom->evaluate(upper_plus) - s.custom->evaluate(lower_minus)};
}

DeltaBounds BoundScorer::delta_bounds(const BoundPair& pair, Dyad d) const {
  const auto& theta = scorer_.model().theta();
  DeltaBounds out{std::vector<double>(theta.size()), std::vector<double>(theta.size())};
  for (std::size_t l = 0; l < theta.size(); ++l) {
    auto [lo, hi] = component_range(l, pair, d);
    out.lower[l] = theta[l] > 0 ? lo : hi;
    out.upper[l] = theta[l] > 0 ? hi : lo;
  }
  return out;
}

std::pair<double, double> BoundScorer::log_odds_bounds(const BoundPair& pair, Dyad d) const {
  const auto& theta = scorer_.model().theta();
  double lo_sum = 0, hi_sum = 0;
  if (all_census_) {
    for (std::size_t l = 0; l < theta.size(); ++l) {
      const double from_lower = theta[l] * scorer_.score(l, pair.lower(), d);
      const double from_upper = theta[l] * scorer_.score(l, pair.upper(), d);
      if (theta[l] > 0) {
        lo_sum += from_lower;
        hi_sum += from_upper;
      } else {
        lo_sum += from_upper;
        hi_sum += from_lower;
      }
    }
    return {lo_sum, hi_sum};
  }
  for (std::size_t l = 0; l < theta.size(); ++l) {
    auto [lo, hi] = component_range(l, pair, d);
    lo_sum += theta[l] * (theta[l] > 0 ? lo : hi);
    hi_sum += theta[l] * (theta[l] > 0 ? hi : lo);
  }
  return {lo_sum, hi_sum};
}

DeltaBounds delta_bounds(const ModelSpec& model, const BoundPair& pair, Dyad d) {
  const auto& space = pair.lower().space();
  return BoundScorer(model, space).delta_bounds(pair, space.canonical(d));
}

std::pair<double, double> prob_bounds(const ModelSpec& model, const BoundPair& pair, Dyad d) {
  const auto& space = pair.lower().space();
  return BoundScorer(model, space).prob_bounds(pair, space.canonical(d));
}

BoundPair update_pair(const ModelSpec& model, const BoundPair& pair, Dyad d, double u) {
  const auto& space = pair.lower().space();
  d = require_free(space, d);
  auto [pl, pu] = BoundScorer(model, space).prob_bounds(pair, d);
  BoundPair out = pair;
  out.set(d, u <= pl, u <= pu);
  return out;
}

AdjacencyState gibbs_step(const ModelSpec& model, const AdjacencyState& y, Dyad d, double u) {
  d = require_free(y.space(), d);
  const ChangeScorer scorer(model, y.space());
  AdjacencyState out = y;
  out.assign_free(d, u <= inverse_logit(scorer.log_odds(y, d)));
  return out;
}

}  // namespace ergcftp
