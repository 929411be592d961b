#include "ergcftp/cftp.hpp"

namespace ergcftp {

namespace detail {

AdjacencyState random_interior(const BoundPair& pair, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  AdjacencyState y = pair.lower();
  for (const auto& d : y.space().free_dyads())
    if (pair.upper().has(d) && !pair.lower().has(d)) y.assign_free(d, eng() >> 63);
  return y;
}

void validate_config(const CftpConfig& config, const GraphSpace& space) {
  const std::size_t initial = config.initial_depth ? config.initial_depth : space.free_dyads().size();
  if (initial < 1) throw InvalidArgument("initial depth must be at least 1");
  if (config.max_depth < initial) throw InvalidArgument("max depth is below the initial depth");
}

}  // namespace detail

DrawResult sample(const ModelSpec& model, const GraphSpace& space, const CftpConfig& config) {
  const ErgKernel kernel(model, space);
  return run_cftp(kernel, space, config);
}

std::vector<Replication> sample_many(const ModelSpec& model, const GraphSpace& space,
                                     const CftpConfig& config, std::size_t count,
                                     std::size_t workers) {
  if (count == 0) throw InvalidArgument("replication count must be at least 1");
  const ErgKernel kernel(model, space);
  return run_replications(count, workers, config.seed, [&](std::uint64_t seed) {
    CftpConfig c = config;
    c.seed = seed;
    return run_cftp(kernel, space, c);
  });
}

}  // namespace ergcftp
