#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "quadop/quadratic.hpp"
#include "quadop/vector.hpp"

namespace quadop {

enum class VerdictKind { Nondegenerate, DegenerateWitness };

struct ProbeConfidence {
    int trials = 0;                 // multi-start count actually run
    std::uint64_t evaluations = 0;  // objective evaluations performed
    double smallest_gap = 0.0;      // min over sampled unit u of min_{|v|=1} |B(u,v)|
};

/// Outcome of the degeneracy search. A DegenerateWitness carries a unit
/// pair (u, v) with |B(u,v)| <= tol, certified by direct evaluation.
/// A Nondegenerate verdict is heuristic: no such pair was found.
struct ProbeVerdict {
    VerdictKind kind = VerdictKind::Nondegenerate;
    std::optional<std::pair<Vector, Vector>> witness;
    ProbeConfidence confidence;
};

/// Searches the unit sphere for u minimizing the smallest singular value
/// of v -> B(u, v), by seeded multi-start coordinate descent. Deterministic
/// given the seed; the first pair certified at or below tol wins.
ProbeVerdict nondegeneracy_probe(const BilinearMap& b, int trials, double tol,
                                 std::uint64_t seed);

}  // namespace quadop
