#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ergcftp/biased_net.hpp"
#include "ergcftp/statistics.hpp"

namespace ergcftp {

// Line-oriented text formats. '#' starts a comment; blank lines are ignored.
//
//   model file:  stat <edges|kstar K|triangle|mutual> <theta>
//   bias file:   bias <baseline|parent|sibling|dsibling> <theta_star>
//   sweep file:  model lines, plus
//                  axis <param index, 1-based> <min> <max> <steps>   (exactly two)
//                  n <order>   draws <count>   seed <int>   max_depth <count>
//                  directed <0|1>   summary <edges|kstar K|triangle|mutual>

ModelSpec parse_model(std::istream& is);
ModelSpec read_model_file(const std::string& path);

BiasModel parse_bias_model(std::istream& is);
BiasModel read_bias_model_file(const std::string& path);

struct SweepAxis {
  std::size_t param = 0;  // 0-based index into the model's parameters
  double min = 0;
  double max = 0;
  std::size_t steps = 2;

  double value(std::size_t k) const noexcept {
    return min + (max - min) * double(k) / double(steps - 1);
  }
};

struct SweepSpec {
  ModelSpec model;  // template; swept entries are overwritten per cell
  SweepAxis axes[2];
  unsigned n = 7;
  bool directed = false;
  std::size_t draws = 100;
  std::uint64_t seed = 1;
  std::size_t max_depth = std::size_t{1} << 20;
  // Extra statistics to summarize besides the model's own.
  std::vector<StatisticDescriptor> extra_summaries;

  std::size_t cell_count() const noexcept { return axes[0].steps * axes[1].steps; }
  void validate() const;
};

SweepSpec parse_sweep(std::istream& is);
SweepSpec read_sweep_file(const std::string& path);

}  // namespace ergcftp
