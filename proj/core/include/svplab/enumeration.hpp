#pragma once

#include <cstdint>

#include "svplab/lattice.hpp"

namespace svplab {

struct EnumResult {
    LatticeVector shortest; // coefficients w.r.t. the input basis
    double lambda1 = 0.0;
    std::uint64_t nodesVisited = 0;
};

// Exact shortest nonzero vector by depth-first enumeration over the
// Gram-Schmidt projections, zig-zag coefficient order, no pruning beyond the
// current best radius. Input is LLL-reduced again defensively. n <= 45.
EnumResult enumerateShortest(const LatticeBasis& basis);

// Exhaustive scan of the coefficient box [-boxRadius, boxRadius]^n, zero
// excluded; exact within the box. Requires (2r+1)^n <= 1e8.
EnumResult bruteForceBox(const LatticeBasis& basis, int boxRadius);

} // namespace svplab
