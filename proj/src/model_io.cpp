#include "ergcftp/model_io.hpp"

#include <fstream>
#include <istream>
#include <sstream>

namespace ergcftp {

namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& is) {
  std::vector<Line> out;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(is, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    for (std::string tok; ls >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

[[noreturn]] void fail(const Line& line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line.number) + ": " + msg);
}

double to_double(const Line& line, const std::string& s) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) fail(line, "not a number: '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(line, "not a number: '" + s + "'");
  }
}

unsigned long long to_count(const Line& line, const std::string& s) {
  try {
    std::size_t used = 0;
    if (!s.empty() && s[0] == '-') fail(line, "expected a nonnegative integer: '" + s + "'");
    auto v = std::stoull(s, &used);
    if (used != s.size()) fail(line, "expected an integer: '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(line, "expected an integer: '" + s + "'");
  }
}

// Parses "<kind> [K]" starting at tokens[pos]; advances pos.
StatisticDescriptor parse_stat_kind(const Line& line, std::size_t& pos) {
  const auto& t = line.tokens;
  if (pos >= t.size()) fail(line, "missing statistic kind");
  const std::string kind = t[pos++];
  if (kind == "edges" || kind == "edgecount") return StatisticDescriptor::edges();
  if (kind == "triangle" || kind == "triangles") return StatisticDescriptor::triangle();
  if (kind == "mutual") return StatisticDescriptor::mutual();
  if (kind == "kstar") {
    if (pos >= t.size()) fail(line, "kstar needs an order");
    const auto k = to_count(line, t[pos++]);
    if (k < 1) fail(line, "kstar order must be >= 1");
    return StatisticDescriptor::kstar(unsigned(k));
  }
  fail(line, "unknown statistic '" + kind + "'");
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return in;
}

bool parse_stat_line(const Line& line, std::vector<StatisticDescriptor>& stats,
                     std::vector<double>& theta) {
  if (line.tokens[0] != "stat") return false;
  std::size_t pos = 1;
  stats.push_back(parse_stat_kind(line, pos));
  if (pos + 1 != line.tokens.size()) fail(line, "expected 'stat <kind> [K] <theta>'");
  theta.push_back(to_double(line, line.tokens[pos]));
  return true;
}

ModelSpec build_model(std::vector<StatisticDescriptor> stats, std::vector<double> theta) {
  if (stats.empty()) throw ParseError("model file defines no statistics");
  try {
    return ModelSpec(std::move(stats), std::move(theta));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

ModelSpec parse_model(std::istream& is) {
  std::vector<StatisticDescriptor> stats;
  std::vector<double> theta;
  for (const auto& line : tokenize(is))
    if (!parse_stat_line(line, stats, theta)) fail(line, "unknown directive '" + line.tokens[0] + "'");
  return build_model(std::move(stats), std::move(theta));
}

ModelSpec read_model_file(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_model(in);
}

BiasModel parse_bias_model(std::istream& is) {
  std::vector<BiasKind> stats;
  std::vector<double> theta;
  for (const auto& line : tokenize(is)) {
    const auto& t = line.tokens;
    if (t[0] != "bias") fail(line, "unknown directive '" + t[0] + "'");
    if (t.size() != 3) fail(line, "expected 'bias <kind> <theta_star>'");
    if (t[1] == "baseline") stats.push_back(BiasKind::Baseline);
    else if (t[1] == "parent") stats.push_back(BiasKind::Parent);
    else if (t[1] == "sibling") stats.push_back(BiasKind::Sibling);
    else if (t[1] == "dsibling" || t[1] == "dichotomized_sibling")
      stats.push_back(BiasKind::DichotomizedSibling);
    else fail(line, "unknown bias '" + t[1] + "'");
    theta.push_back(to_double(line, t[2]));
  }
  if (stats.empty()) throw ParseError("bias file defines no biases");
  try {
    return BiasModel(std::move(stats), std::move(theta));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

BiasModel read_bias_model_file(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_bias_model(in);
}

void SweepSpec::validate() const {
  for (const auto& a : axes) {
    if (a.steps < 2) throw InvalidArgument("sweep axes need at least two steps");
    if (a.param >= model.size()) throw InvalidArgument("sweep axis refers to a missing parameter");
  }
  if (axes[0].param == axes[1].param) throw InvalidArgument("sweep axes must differ");
  if (draws < 1) throw InvalidArgument("sweep needs at least one draw per cell");
  if (n < 2) throw InvalidArgument("sweep graph order must be at least 2");
}

SweepSpec parse_sweep(std::istream& is) {
  std::vector<StatisticDescriptor> stats;
  std::vector<double> theta;
  std::vector<SweepAxis> axes;
  std::vector<StatisticDescriptor> extra;
  unsigned n = 7;
  bool directed = false;
  std::size_t draws = 100, max_depth = std::size_t{1} << 20;
  std::uint64_t seed = 1;

  for (const auto& line : tokenize(is)) {
    const auto& t = line.tokens;
    if (parse_stat_line(line, stats, theta)) continue;
    const std::string& key = t[0];
    if (key == "axis") {
      if (t.size() != 5) fail(line, "expected 'axis <param> <min> <max> <steps>'");
      const auto param = to_count(line, t[1]);
      if (param < 1) fail(line, "axis parameter index is 1-based");
      axes.push_back({std::size_t(param - 1), to_double(line, t[2]), to_double(line, t[3]),
                      std::size_t(to_count(line, t[4]))});
    } else if (key == "summary") {
      std::size_t pos = 1;
      extra.push_back(parse_stat_kind(line, pos));
      if (pos != t.size()) fail(line, "trailing tokens after summary statistic");
    } else {
      if (t.size() != 2) fail(line, "expected '" + key + " <value>'");
      if (key == "n") n = unsigned(to_count(line, t[1]));
      else if (key == "draws") draws = to_count(line, t[1]);
      else if (key == "seed") seed = to_count(line, t[1]);
      else if (key == "max_depth") max_depth = to_count(line, t[1]);
      else if (key == "directed") directed = to_count(line, t[1]) != 0;
      else fail(line, "unknown directive '" + key + "'");
    }
  }
  if (axes.size() != 2) throw ParseError("sweep file needs exactly two axis lines");
  SweepSpec spec{build_model(std::move(stats), std::move(theta)), {axes[0], axes[1]}, n, directed,
                 draws, seed, max_depth, std::move(extra)};
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
  return spec;
}

SweepSpec read_sweep_file(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_sweep(in);
}

}  // namespace ergcftp
