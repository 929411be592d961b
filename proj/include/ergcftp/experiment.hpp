#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ergcftp/biased_net.hpp"
#include "ergcftp/cftp.hpp"
#include "ergcftp/model_io.hpp"
#include "ergcftp/oracle.hpp"

namespace ergcftp {

// CSV number: 10 significant digits, NaN as "NA".
std::string format_number(double x);

struct SpaceOptions {
  unsigned n = 7;
  bool directed = false;
  bool loops = false;
  // First `bipartite_rows` vertices form one mode, the rest the other.
  std::optional<unsigned> bipartite_rows;
  // 0-based ego vertex forced adjacent to everyone.
  std::optional<unsigned> ego;
};

GraphSpace make_space(const SpaceOptions& options);

// ---- sample ---------------------------------------------------------------

struct SampleOptions {
  std::size_t draws = 1;
  std::uint64_t seed = 1;
  std::size_t max_depth = std::size_t{1} << 20;
  std::size_t workers = 1;
};

struct SampleOutcome {
  std::vector<Replication> replications;
  std::size_t failures = 0;
  double mean_density = 0;
  double se_density = 0;
};

SampleOutcome run_sample(const ModelSpec& model, const GraphSpace& space, const SampleOptions& options);

// Concatenated edge-list blocks, each tagged "# replication=<r>" after its header.
void write_sample_graphs(std::ostream& os, const SampleOutcome& outcome);
// Columns: replication, coalescence_time, total_updates (NA time for failures).
void write_sample_diagnostics(std::ostream& os, const SampleOutcome& outcome);

// ---- sweep ----------------------------------------------------------------

struct CellSummary {
  double theta1 = 0;
  double theta2 = 0;
  std::vector<double> mean;  // per summarized statistic
  std::vector<double> sd;
  double pr_extreme = 0;  // Pr(complete or empty)
  double mean_coal_time = 0;
  double log_mean_coal_time = 0;  // natural log of mean updates to coalescence
  std::size_t failures = 0;
  std::size_t draws = 0;  // successful draws
};

struct SweepResult {
  std::vector<std::string> stat_names;
  std::size_t steps1 = 0;
  std::size_t steps2 = 0;
  std::vector<CellSummary> cells;  // cell index = i1 * steps2 + i2
};

SweepResult run_sweep(const SweepSpec& spec, std::size_t workers);

// Columns: theta1, theta2, mean_<stat>..., sd_<stat>..., pr_extreme,
// mean_coal_time, log_mean_coal_time, failures.
void write_sweep_csv(std::ostream& os, const SweepResult& result);

// Column names write_sweep_csv emits that can be drawn as heatmaps.
std::vector<std::string> sweep_columns(const SweepResult& result);
std::vector<double> sweep_column(const SweepResult& result, const std::string& column);

// ---- biased nets ----------------------------------------------------------

enum class BiasAxis { Sigma, Order };

struct BiasSweepOptions {
  BiasAxis axis = BiasAxis::Sigma;
  // Sigma: index of the swept theta_star entry (default: first non-baseline bias).
  std::optional<std::size_t> term;
  double min = 0;
  double max = 1;
  std::size_t steps = 2;
  // Order: baseline theta_star set to mean_degree / (n - 1) at each n.
  double mean_degree = 3;
  unsigned n = 25;
  bool directed = true;
  std::size_t draws = 100;
  std::uint64_t seed = 1;
  std::size_t max_depth = std::size_t{1} << 20;
  std::size_t workers = 1;
};

struct BiasPoint {
  double param = 0;
  double mean_density = 0;
  double sd_density = 0;
  double mean_transitivity = 0;
  double sd_transitivity = 0;
  double mean_coal_time = 0;
  std::size_t failures = 0;
};

std::vector<BiasPoint> run_biasednet(const BiasModel& model, const BiasSweepOptions& options);

// Columns: param, mean_density, sd_density, mean_transitivity, sd_transitivity,
// mean_coal_time, failures.
void write_biasednet_csv(std::ostream& os, const std::vector<BiasPoint>& points);

// ---- oracle validation ----------------------------------------------------

struct OracleOptions {
  std::size_t draws = 50000;
  std::uint64_t seed = 1;
  std::size_t max_depth = std::size_t{1} << 20;
  std::size_t workers = 1;
  double tv_threshold = 0.02;
  double consistency_tolerance = 1e-10;
};

struct OracleReport {
  std::vector<std::string> stat_names;
  std::vector<double> exact_means;
  std::vector<double> empirical_means;
  double tv = 1;
  double tv_threshold = 0;
  double max_ratio_error = 0;        // relative, probability ratio vs enumeration
  double max_conditional_error = 0;  // absolute, Gibbs conditional vs enumeration
  double consistency_tolerance = 0;
  std::size_t draws = 0;
  std::size_t failures = 0;

  bool tv_pass() const noexcept { return tv < tv_threshold; }
  bool consistency_pass() const noexcept {
    return max_ratio_error <= consistency_tolerance && max_conditional_error <= consistency_tolerance;
  }
  bool pass() const noexcept { return tv_pass() && consistency_pass() && failures == 0; }
};

// Draws one graph from a seed; replaceable so tests can plug in a broken sampler.
using SeededSampler = std::function<DrawResult(std::uint64_t seed)>;

struct ConsistencyCheck {
  double max_ratio_error = 0;
  double max_conditional_error = 0;
};

// Probability ratios and Gibbs full conditionals against the enumeration.
ConsistencyCheck check_consistency(const ModelSpec& model, const ExactDistribution& exact);

OracleReport run_oracle(const ModelSpec& model, const GraphSpace& space, const OracleOptions& options,
                        const SeededSampler& sampler = {});

void write_oracle_report(std::ostream& os, const OracleReport& report);

// ---- heatmap --------------------------------------------------------------

// Minimal self-contained SVG: one rect per cell on a linear color ramp,
// axis labels and a min/max legend. values[i1 * ys.size() + i2].
void write_heatmap_svg(std::ostream& os, const std::string& title, const std::string& x_label,
                       const std::vector<double>& xs, const std::string& y_label,
                       const std::vector<double>& ys, const std::vector<double>& values);

}  // namespace ergcftp
