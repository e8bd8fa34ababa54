#pragma once

#include <map>

#include "ssqw/lattice.hpp"

namespace ssqw {

/// Per-site pieces of the one-step recurrence
///   (U psi)(x) = P(x+1) psi(x+1) + Q(x-1) psi(x-1) + R(x) psi(x)
/// obtained by expanding U = S C around site x.
struct LocalMatrices {
    Mat2 P, Q, R;
};

LocalMatrices local_matrices(const ShiftParams& shift, const CoinSite& coin);

/// One step of the walk via the local recurrence.  The window grows by one
/// site per side, then negligible boundary sites (below compaction_threshold
/// componentwise) are trimmed.  Parallel over output sites.
State step(const ShiftParams& shift, const CoinField& coins, const State& psi,
           double compaction_threshold = 1e-300);

/// Same recurrence executed as a plain serial loop; kept as the reference
/// implementation the parallel kernel is tested and benchmarked against.
State step_serial(const ShiftParams& shift, const CoinField& coins, const State& psi,
                  double compaction_threshold = 1e-300);

/// t steps of the walk.
State evolve(const ShiftParams& shift, const CoinField& coins, State psi, int t,
             double compaction_threshold = 1e-300);

/// x -> ||psi(x)||^2 over the support; entries with zero mass are omitted.
std::map<int, double> position_distribution(const State& psi);

} // namespace ssqw
