#include "ergcftp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace ergcftp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Moments {
  double mean = kNaN;
  double sd = kNaN;
};

Moments moments(const std::vector<double>& xs) {
  if (xs.empty()) return {};
  double m = 0;
  for (double x : xs) m += x;
  m /= double(xs.size());
  if (xs.size() < 2) return {m, 0.0};
  double ss = 0;
  for (double x : xs) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / double(xs.size() - 1))};
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

GraphSpace make_space(const SpaceOptions& o) {
  if (o.bipartite_rows && o.ego) throw InvalidArgument("bipartite and egocentric supports are exclusive");
  if (o.bipartite_rows) {
    if (*o.bipartite_rows == 0 || *o.bipartite_rows >= o.n)
      throw InvalidArgument("bipartite split must leave both modes nonempty");
    if (o.loops) throw InvalidArgument("bipartite supports have no loops");
    return GraphSpace::bipartite(*o.bipartite_rows, o.n - *o.bipartite_rows, o.directed);
  }
  if (o.ego) {
    if (o.loops) throw InvalidArgument("egocentric supports are built without loops");
    return GraphSpace::egocentric(o.n, *o.ego, o.directed);
  }
  return GraphSpace(o.n, o.directed, o.loops);
}

// ---- sample ---------------------------------------------------------------

SampleOutcome run_sample(const ModelSpec& model, const GraphSpace& space, const SampleOptions& o) {
  CftpConfig config;
  config.seed = o.seed;
  config.max_depth = o.max_depth;
  SampleOutcome out;
  out.replications = sample_many(model, space, config, o.draws, o.workers);
  std::vector<double> dens;
  for (const auto& r : out.replications) {
    if (r.draw) dens.push_back(density(r.draw->graph));
    else ++out.failures;
  }
  const auto m = moments(dens);
  out.mean_density = m.mean;
  out.se_density = dens.empty() ? kNaN : m.sd / std::sqrt(double(dens.size()));
  return out;
}

void write_sample_graphs(std::ostream& os, const SampleOutcome& outcome) {
  for (const auto& r : outcome.replications) {
    if (!r.draw) continue;
    const auto& s = r.draw->graph.space();
    os << "# n=" << s.n() << " directed=" << (s.directed() ? 1 : 0)
       << " loops=" << (s.loops() ? 1 : 0) << '\n';
    os << "# replication=" << r.index << '\n';
    for (const auto& d : r.draw->graph.edges()) {
      Vertex a = d.i, b = d.j;
      if (!s.directed() && a > b) std::swap(a, b);
      os << a + 1 << ' ' << b + 1 << '\n';
    }
  }
}

void write_sample_diagnostics(std::ostream& os, const SampleOutcome& outcome) {
  os << "replication,coalescence_time,total_updates\n";
  for (const auto& r : outcome.replications) {
    os << r.index << ',';
    if (r.draw)
      os << r.draw->coalescence_time << ',' << r.draw->total_updates << '\n';
    else
      os << "NA," << (r.diagnostics ? std::to_string(r.diagnostics->total_updates) : "NA") << '\n';
  }
}

// ---- sweep ----------------------------------------------------------------

SweepResult run_sweep(const SweepSpec& spec, std::size_t workers) {
  spec.validate();
  const GraphSpace space(spec.n, spec.directed);

  std::vector<StatisticDescriptor> summarized = spec.model.stats();
  for (const auto& s : spec.extra_summaries) {
    const bool dup = std::any_of(summarized.begin(), summarized.end(),
                                 [&](const auto& t) { return t.name() == s.name(); });
    if (!dup) summarized.push_back(s);
  }
  for (const auto& s : summarized) s.validate_for(space);

  SweepResult result;
  for (const auto& s : summarized) result.stat_names.push_back(s.name());
  result.steps1 = spec.axes[0].steps;
  result.steps2 = spec.axes[1].steps;
  const std::size_t cells = spec.cell_count();

  std::vector<ErgKernel> kernels;
  kernels.reserve(cells);
  result.cells.resize(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    auto& cell = result.cells[c];
    cell.theta1 = spec.axes[0].value(c / result.steps2);
    cell.theta2 = spec.axes[1].value(c % result.steps2);
    auto theta = spec.model.theta();
    theta[spec.axes[0].param] = cell.theta1;
    theta[spec.axes[1].param] = cell.theta2;
    kernels.emplace_back(spec.model.with_theta(std::move(theta)), space);
  }

  struct Record {
    bool ok = false;
    bool extreme = false;
    std::size_t coal_time = 0;
    std::vector<double> stats;
  };
  const auto [empty, complete] = bounds_of_space(space);
  std::vector<Record> records(cells * spec.draws);
  const auto total = static_cast<std::int64_t>(records.size());

#pragma omp parallel for num_threads(int(std::max<std::size_t>(workers, 1))) schedule(dynamic, 1)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    const std::size_t c = std::size_t(idx) / spec.draws;
    const std::size_t r = std::size_t(idx) % spec.draws;
    CftpConfig config;
    config.seed = derive_seed(derive_seed(spec.seed, c), r);
    config.max_depth = spec.max_depth;
    auto& rec = records[std::size_t(idx)];
    try {
      const DrawResult draw = run_cftp(kernels[c], space, config);
      rec.ok = true;
      rec.coal_time = draw.coalescence_time;
      rec.extreme = draw.graph == empty || draw.graph == complete;
      for (const auto& s : summarized) rec.stats.push_back(evaluate(s, draw.graph));
    } catch (const NonCoalescenceError&) {
      rec.ok = false;
    }
  }

  for (std::size_t c = 0; c < cells; ++c) {
    auto& cell = result.cells[c];
    std::vector<std::vector<double>> per_stat(summarized.size());
    std::vector<double> coal;
    std::size_t extreme = 0;
    for (std::size_t r = 0; r < spec.draws; ++r) {
      const auto& rec = records[c * spec.draws + r];
      if (!rec.ok) {
        ++cell.failures;
        continue;
      }
      for (std::size_t l = 0; l < summarized.size(); ++l) per_stat[l].push_back(rec.stats[l]);
      coal.push_back(double(rec.coal_time));
      extreme += rec.extreme;
    }
    cell.draws = coal.size();
    for (const auto& xs : per_stat) {
      const auto m = moments(xs);
      cell.mean.push_back(m.mean);
      cell.sd.push_back(m.sd);
    }
    cell.pr_extreme = cell.draws ? double(extreme) / double(cell.draws) : kNaN;
    cell.mean_coal_time = moments(coal).mean;
    cell.log_mean_coal_time = std::log(cell.mean_coal_time);
  }
  return result;
}

std::vector<std::string> sweep_columns(const SweepResult& result) {
  std::vector<std::string> cols{"theta1", "theta2"};
  for (const auto& s : result.stat_names) cols.push_back("mean_" + s);
  for (const auto& s : result.stat_names) cols.push_back("sd_" + s);
  for (const char* c : {"pr_extreme", "mean_coal_time", "log_mean_coal_time", "failures"})
    cols.emplace_back(c);
  return cols;
}

std::vector<double> sweep_column(const SweepResult& result, const std::string& column) {
  const auto cols = sweep_columns(result);
  const auto it = std::find(cols.begin(), cols.end(), column);
  if (it == cols.end()) throw InvalidArgument("unknown sweep column '" + column + "'");
  const std::size_t idx = std::size_t(it - cols.begin());
  const std::size_t p = result.stat_names.size();
  std::vector<double> out;
  for (const auto& c : result.cells) {
    if (idx == 0) out.push_back(c.theta1);
    else if (idx == 1) out.push_back(c.theta2);
    else if (idx < 2 + p) out.push_back(c.mean[idx - 2]);
    else if (idx < 2 + 2 * p) out.push_back(c.sd[idx - 2 - p]);
    else if (idx == 2 + 2 * p) out.push_back(c.pr_extreme);
    else if (idx == 3 + 2 * p) out.push_back(c.mean_coal_time);
    else if (idx == 4 + 2 * p) out.push_back(c.log_mean_coal_time);
    else out.push_back(double(c.failures));
  }
  return out;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  const auto cols = sweep_columns(result);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& c : result.cells) {
    os << format_number(c.theta1) << ',' << format_number(c.theta2);
    for (double m : c.mean) os << ',' << format_number(m);
    for (double s : c.sd) os << ',' << format_number(s);
    os << ',' << format_number(c.pr_extreme) << ',' << format_number(c.mean_coal_time) << ','
       << format_number(c.log_mean_coal_time) << ',' << c.failures << '\n';
  }
}

// ---- biased nets ----------------------------------------------------------

std::vector<BiasPoint> run_biasednet(const BiasModel& model, const BiasSweepOptions& o) {
  if (o.steps < 1) throw InvalidArgument("bias sweep needs at least one point");
  const auto& kinds = model.stats();
  std::size_t term = 0;
  if (o.axis == BiasAxis::Sigma) {
    if (o.term) {
      term = *o.term;
    } else {
      const auto it = std::find_if(kinds.begin(), kinds.end(),
                                   [](BiasKind k) { return k != BiasKind::Baseline; });
      if (it == kinds.end()) throw InvalidArgument("no non-baseline bias to sweep");
      term = std::size_t(it - kinds.begin());
    }
    if (term >= kinds.size()) throw InvalidArgument("swept bias term out of range");
  } else {
    const auto it = std::find(kinds.begin(), kinds.end(), BiasKind::Baseline);
    if (it == kinds.end()) throw InvalidArgument("order sweep needs a baseline bias");
    term = std::size_t(it - kinds.begin());
  }

  std::vector<BiasPoint> points;
  for (std::size_t p = 0; p < o.steps; ++p) {
    const double value = o.steps == 1 ? o.min : o.min + (o.max - o.min) * double(p) / double(o.steps - 1);
    auto theta = model.theta_star();
    unsigned n = o.n;
    if (o.axis == BiasAxis::Sigma) {
      theta[term] = value;
    } else {
      n = unsigned(std::lround(value));
      if (n < 2) throw InvalidArgument("order sweep needs n >= 2");
      theta[term] = std::min(1.0, o.mean_degree / double(n - 1));
    }
    const GraphSpace space(n, o.directed);
    CftpConfig config;
    config.seed = derive_seed(o.seed, p);
    config.max_depth = o.max_depth;
    const auto reps = sample_biased_many(model.with_theta_star(theta), space, config, o.draws, o.workers);

    BiasPoint pt;
    pt.param = o.axis == BiasAxis::Sigma ? value : double(n);
    std::vector<double> dens, trans, coal;
    for (const auto& r : reps) {
      if (!r.draw) {
        ++pt.failures;
        continue;
      }
      dens.push_back(density(r.draw->graph));
      trans.push_back(transitivity(r.draw->graph));
      coal.push_back(double(r.draw->coalescence_time));
    }
    const auto md = moments(dens), mt = moments(trans);
    pt.mean_density = md.mean;
    pt.sd_density = md.sd;
    pt.mean_transitivity = mt.mean;
    pt.sd_transitivity = mt.sd;
    pt.mean_coal_time = moments(coal).mean;
    points.push_back(pt);
  }
  return points;
}

void write_biasednet_csv(std::ostream& os, const std::vector<BiasPoint>& points) {
  os << "param,mean_density,sd_density,mean_transitivity,sd_transitivity,mean_coal_time,failures\n";
  for (const auto& p : points)
    os << format_number(p.param) << ',' << format_number(p.mean_density) << ','
       << format_number(p.sd_density) << ',' << format_number(p.mean_transitivity) << ','
       << format_number(p.sd_transitivity) << ',' << format_number(p.mean_coal_time) << ','
       << p.failures << '\n';
}

// ---- oracle validation ----------------------------------------------------

ConsistencyCheck check_consistency(const ModelSpec& model, const ExactDistribution& exact) {
  const auto& space = exact.space();
  const ChangeScorer scorer(model, space);
  const AdjacencyState reference(space);
  const double p_ref = exact.probability(reference);
  ConsistencyCheck out;
  for (std::uint64_t key = 0; key < exact.size(); ++key) {
    const AdjacencyState y = decode_free_bits(space, key);
    const double ratio = probability_ratio(model, reference, y);
    const double enumerated = exact.probability(key) / p_ref;
    out.max_ratio_error = std::max(out.max_ratio_error, std::abs(enumerated - ratio) / ratio);
    for (const auto& d : space.free_dyads()) {
      if (y.has(d)) continue;  // visit each (y-, y+) pair once
      const AdjacencyState plus = with_edge(y, d, true);
      const double p_plus = exact.probability(plus), p_minus = exact.probability(key);
      const double conditional = p_plus / (p_plus + p_minus);
      const double gibbs = inverse_logit(scorer.log_odds(y, d));
      out.max_conditional_error = std::max(out.max_conditional_error, std::abs(conditional - gibbs));
      const double r = probability_ratio(model, y, plus);
      out.max_ratio_error = std::max(out.max_ratio_error, std::abs(p_plus / p_minus - r) / r);
    }
  }
  return out;
}

OracleReport run_oracle(const ModelSpec& model, const GraphSpace& space, const OracleOptions& o,
                        const SeededSampler& sampler) {
  const ExactDistribution exact = enumerate_distribution(model, space, {20, o.workers});
  OracleReport report;
  report.tv_threshold = o.tv_threshold;
  report.consistency_tolerance = o.consistency_tolerance;
  for (const auto& s : model.stats()) report.stat_names.push_back(s.name());
  report.exact_means = exact_summary(exact, [&](const AdjacencyState& y) { return evaluate(model, y); });

  const auto check = check_consistency(model, exact);
  report.max_ratio_error = check.max_ratio_error;
  report.max_conditional_error = check.max_conditional_error;

  SeededSampler draw = sampler;
  const ErgKernel kernel(model, space);
  if (!draw) {
    draw = [&](std::uint64_t seed) {
      CftpConfig c;
      c.seed = seed;
      c.max_depth = o.max_depth;
      return run_cftp(kernel, space, c);
    };
  }
  const auto reps = run_replications(o.draws, o.workers, o.seed, draw);

  EmpiricalDistribution empirical(space);
  report.empirical_means.assign(model.size(), 0.0);
  for (const auto& r : reps) {
    if (!r.draw) {
      ++report.failures;
      continue;
    }
    empirical.add(r.draw->graph);
    const auto t = evaluate(model, r.draw->graph);
    for (std::size_t l = 0; l < t.size(); ++l) report.empirical_means[l] += t[l];
  }
  report.draws = empirical.total();
  for (auto& m : report.empirical_means) m = report.draws ? m / double(report.draws) : kNaN;
  report.tv = report.draws ? tv_distance(empirical, exact) : 1.0;
  return report;
}

void write_oracle_report(std::ostream& os, const OracleReport& r) {
  auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
  os << "draws: " << r.draws << " (failures: " << r.failures << ")\n";
  os << "tv_distance: " << format_number(r.tv) << " (threshold " << format_number(r.tv_threshold)
     << ") " << verdict(r.tv_pass()) << '\n';
  for (std::size_t l = 0; l < r.stat_names.size(); ++l)
    os << "mean " << r.stat_names[l] << ": exact=" << format_number(r.exact_means[l])
       << " empirical=" << format_number(r.empirical_means[l]) << '\n';
  os << "probability_ratio_max_rel_error: " << format_number(r.max_ratio_error) << ' '
     << verdict(r.max_ratio_error <= r.consistency_tolerance) << '\n';
  os << "gibbs_conditional_max_abs_error: " << format_number(r.max_conditional_error) << ' '
     << verdict(r.max_conditional_error <= r.consistency_tolerance) << '\n';
  os << "result: " << verdict(r.pass()) << '\n';
}

}  // namespace ergcftp
