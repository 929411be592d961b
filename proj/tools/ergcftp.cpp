// Command-line front end: sample, sweep, biasednet, oracle.
//
// Exit codes: 0 success, 1 usage or parse error, 2 sampling failure,
// 3 validation FAIL.

#include <CLI11.hpp>

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ergcftp/experiment.hpp"
#include "ergcftp/model_io.hpp"

namespace fs = std::filesystem;
using namespace ergcftp;

namespace {

constexpr int kUsage = 1;
constexpr int kSamplingFailure = 2;
constexpr int kValidationFail = 3;

struct Common {
  unsigned n = 7;
  bool directed = false;
  bool loops = false;
  std::uint64_t seed = 1;
  std::size_t draws = 100;
  std::size_t max_depth = std::size_t{1} << 20;
  std::size_t workers = 1;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool directed_flag = true) {
  cmd->add_option("--n", c.n, "Number of vertices")->check(CLI::Range(1u, 4096u));
  if (directed_flag) cmd->add_flag("--directed", c.directed, "Directed graphs");
  cmd->add_flag("--loops", c.loops, "Allow self-loops");
  cmd->add_option("--seed", c.seed, "Base random seed");
  cmd->add_option("--draws", c.draws, "Draws (per cell or point)");
  cmd->add_option("--max-depth", c.max_depth, "Give up after this many steps into the past");
  cmd->add_option("--workers", c.workers, "Parallel workers")->check(CLI::PositiveNumber);
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ParseError("cannot write '" + path.string() + "'");
  return os;
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') c = '_';
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perfect sampling for exponential random graph and biased-net models"};
  app.require_subcommand(1);

  // ---- sample
  Common sc;
  std::string sample_model;
  std::optional<unsigned> bipartite, ego;
  auto* sample = app.add_subcommand("sample", "Exact draws from one ERG model");
  add_common(sample, sc);
  sample->add_option("--model", sample_model, "Model file (stat lines)")->required();
  sample->add_option("--bipartite", bipartite, "First R vertices form one mode");
  sample->add_option("--ego", ego, "1-based ego vertex forced adjacent to all others");
  sample->add_option("--out", sc.out, "Output directory (graphs.txt, diagnostics.csv)")->required();

  // ---- sweep
  Common wc;
  std::string sweep_file, heatmap;
  auto* sweep = app.add_subcommand("sweep", "Two-parameter grid sweep");
  add_common(sweep, wc);
  sweep->add_option("--sweep", sweep_file, "Sweep file")->required();
  sweep->add_option("--out", wc.out, "Output CSV")->required();
  sweep->add_option("--heatmap", heatmap,
                    "SVG prefix; writes <prefix>_<column>.svg for pr_extreme, log_mean_coal_time "
                    "and each mean_<stat>");

  // ---- biasednet
  Common bc;
  bc.n = 25;
  bc.directed = true;
  std::string bias_model, axis = "sigma";
  std::optional<std::size_t> term;
  double bmin = 0, bmax = 0.3, mean_degree = 3;
  std::size_t bsteps = 16;
  auto* biased = app.add_subcommand("biasednet", "Biased-net sweep over a bias or over n");
  add_common(biased, bc, false);
  biased->add_flag("--directed,!--undirected", bc.directed, "Directed graphs (default)");
  biased->add_option("--model", bias_model, "Bias file (bias lines)")->required();
  biased->add_option("--axis", axis, "sigma or n")->check(CLI::IsMember({"sigma", "n"}));
  biased->add_option("--term", term, "1-based bias line swept on the sigma axis");
  biased->add_option("--min", bmin, "First axis value");
  biased->add_option("--max", bmax, "Last axis value");
  biased->add_option("--steps", bsteps, "Axis points")->check(CLI::PositiveNumber);
  biased->add_option("--mean-degree", mean_degree, "Baseline mean degree on the n axis");
  biased->add_option("--out", bc.out, "Output CSV")->required();

  // ---- oracle
  Common oc;
  oc.n = 4;
  oc.draws = 50000;
  std::string oracle_model, dist_csv;
  double tv_threshold = 0.02;
  auto* oracle = app.add_subcommand("oracle", "Compare CFTP draws with exact enumeration");
  add_common(oracle, oc);
  oracle->add_option("--model", oracle_model, "Model file (stat lines)")->required();
  oracle->add_option("--tv-threshold", tv_threshold, "Pass if TV distance is below this");
  oracle->add_option("--distribution", dist_csv, "Also write the exact distribution as CSV");
  oracle->add_option("--out", oc.out, "Report file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*sample) {
      const ModelSpec model = read_model_file(sample_model);
      SpaceOptions so{sc.n, sc.directed, sc.loops, bipartite, std::nullopt};
      if (ego) {
        if (*ego < 1) throw InvalidArgument("--ego is 1-based");
        so.ego = *ego - 1;
      }
      const GraphSpace space = make_space(so);
      const auto outcome = run_sample(model, space, {sc.draws, sc.seed, sc.max_depth, sc.workers});
      const fs::path dir(sc.out);
      fs::create_directories(dir);
      auto graphs = open_out(dir / "graphs.txt");
      write_sample_graphs(graphs, outcome);
      auto diag = open_out(dir / "diagnostics.csv");
      write_sample_diagnostics(diag, outcome);
      std::cout << "draws: " << sc.draws << " failures: " << outcome.failures
                << " mean_density: " << format_number(outcome.mean_density)
                << " se: " << format_number(outcome.se_density) << '\n';
      for (const auto& r : outcome.replications)
        if (!r.draw) std::cerr << "replication " << r.index << ": " << r.error << '\n';
      return outcome.failures == outcome.replications.size() ? kSamplingFailure : 0;
    }

    if (*sweep) {
      SweepSpec spec = read_sweep_file(sweep_file);
      // flags given explicitly override the file
      if (sweep->count("--n")) spec.n = wc.n;
      if (sweep->count("--directed")) spec.directed = wc.directed;
      if (sweep->count("--seed")) spec.seed = wc.seed;
      if (sweep->count("--draws")) spec.draws = wc.draws;
      if (sweep->count("--max-depth")) spec.max_depth = wc.max_depth;
      if (wc.loops) throw InvalidArgument("sweeps run on loopless spaces");
      const SweepResult result = run_sweep(spec, wc.workers);
      auto os = open_out(wc.out);
      write_sweep_csv(os, result);
      if (!heatmap.empty()) {
        std::vector<double> xs, ys;
        for (std::size_t k = 0; k < spec.axes[0].steps; ++k) xs.push_back(spec.axes[0].value(k));
        for (std::size_t k = 0; k < spec.axes[1].steps; ++k) ys.push_back(spec.axes[1].value(k));
        const auto& names = spec.model.stats();
        const std::string xl = "theta" + std::to_string(spec.axes[0].param + 1) + " (" +
                               names[spec.axes[0].param].name() + ")";
        const std::string yl = "theta" + std::to_string(spec.axes[1].param + 1) + " (" +
                               names[spec.axes[1].param].name() + ")";
        std::vector<std::string> columns{"pr_extreme", "log_mean_coal_time"};
        for (const auto& s : result.stat_names) columns.push_back("mean_" + s);
        for (const auto& c : columns) {
          auto svg = open_out(heatmap + "_" + sanitize(c) + ".svg");
          write_heatmap_svg(svg, c, xl, xs, yl, ys, sweep_column(result, c));
        }
      }
      std::size_t failures = 0;
      for (const auto& c : result.cells) failures += c.failures;
      if (failures) std::cerr << failures << " draws failed to coalesce within the depth cap\n";
      return 0;
    }

    if (*biased) {
      const BiasModel model = read_bias_model_file(bias_model);
      BiasSweepOptions o;
      o.axis = axis == "sigma" ? BiasAxis::Sigma : BiasAxis::Order;
      if (term) {
        if (*term < 1) throw InvalidArgument("--term is 1-based");
        o.term = *term - 1;
      }
      o.min = bmin;
      o.max = bmax;
      o.steps = bsteps;
      o.mean_degree = mean_degree;
      o.n = bc.n;
      o.directed = bc.directed;
      o.draws = bc.draws;
      o.seed = bc.seed;
      o.max_depth = bc.max_depth;
      o.workers = bc.workers;
      if (bc.loops) throw InvalidArgument("biased-net sweeps run on loopless spaces");
      const auto points = run_biasednet(model, o);
      auto os = open_out(bc.out);
      write_biasednet_csv(os, points);
      return 0;
    }

    if (*oracle) {
      const ModelSpec model = read_model_file(oracle_model);
      const GraphSpace space(oc.n, oc.directed, oc.loops);
      OracleOptions o;
      o.draws = oc.draws;
      o.seed = oc.seed;
      o.max_depth = oc.max_depth;
      o.workers = oc.workers;
      o.tv_threshold = tv_threshold;
      const OracleReport report = run_oracle(model, space, o);
      if (!dist_csv.empty()) {
        auto os = open_out(dist_csv);
        write_distribution_csv(os, enumerate_distribution(model, space, {20, oc.workers}));
      }
      if (oc.out.empty()) {
        write_oracle_report(std::cout, report);
      } else {
        auto os = open_out(oc.out);
        write_oracle_report(os, report);
      }
      return report.pass() ? 0 : kValidationFail;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const EnumerationCapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NonCoalescenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSamplingFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSamplingFailure;
  }
  return 0;
}
