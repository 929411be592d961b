#pragma once

// Serial, deliberately naive implementations used as test oracles and as
// the baseline side of the benchmarks. Nothing here shares code paths with
// the bitset kernels beyond AdjacencyState::has().

#include <cstdint>
#include <vector>

#include "ergcftp/biased_net.hpp"
#include "ergcftp/cftp.hpp"
#include "ergcftp/oracle.hpp"
#include "ergcftp/statistics.hpp"

namespace ergcftp::reference {

using Matrix = std::vector<std::vector<int>>;

Matrix to_matrix(const AdjacencyState& y);

// Statistic by direct subgraph counting on a dense matrix.
double count_statistic(const StatisticDescriptor& stat, const Matrix& y, bool directed);

// t(y+_d) - t(y-_d) by re-counting both graphs.
double brute_change_score(const StatisticDescriptor& stat, const AdjacencyState& y, Dyad d);

// Independent product form of the biased-net conditional.
double brute_edge_prob(const BiasModel& model, const AdjacencyState& y, Dyad d);

// exp(θᵀt) summed without any shift; probabilities by direct division.
std::vector<double> naive_distribution(const ModelSpec& model, const GraphSpace& space);

// One replication after another, same seeds as sample_many.
std::vector<Replication> sample_many_serial(const ModelSpec& model, const GraphSpace& space,
                                            const CftpConfig& config, std::size_t count);

}  // namespace ergcftp::reference
