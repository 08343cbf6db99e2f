#pragma once

#include <cstdint>
#include <vector>

#include "svplab/lattice.hpp"
#include "svplab/search.hpp"

namespace svplab {

struct NvParams {
    double gamma = 0.97;         // in (2/3, 1)
    std::size_t sampleCount = 0; // N, >= n
    int maxRounds = 0;
};

// N = ceil(mult * 2^(0.21 n)), maxRounds = 10 n.
NvParams defaultNvParams(int dim, double gamma = 0.97, double mult = 16.0);

struct SieveRound {
    double radius = 0.0; // max norm of the incoming list
    std::vector<LatticeVector> centers;   // first entry is always 0
    std::vector<LatticeVector> survivors; // each v - c with ||v - c|| <= gamma * radius
};

// One sieve pass: every vector either reduces against a center within
// gamma * R or becomes a center itself. The zero seed center keeps already
// short vectors alive unchanged.
SieveRound nvSieveStep(const std::vector<LatticeVector>& sPrev, double gamma, SearchEngine& engine,
                       QueryLedger& ledger);

struct NvResult {
    LatticeVector shortest;
    int rounds = 0;
    bool truncated = false; // maxRounds hit; shortest is best-so-far
};

NvResult nvSolve(const LatticeBasis& basis, const NvParams& params, SearchEngine& engine,
                 QueryLedger& ledger, Rng& rng, std::vector<SieveRound>* roundLog = nullptr);

// Max of (a) the Kolmogorov-Smirnov distance of shell norms against the
// radial law r^n and (b) the normalized gap between the mean pairwise
// |cos| and its isotropic expectation. 0 = consistent with uniform, 1 = far.
double shellUniformityStat(const std::vector<LatticeVector>& vectors, double innerR, double outerR);

} // namespace svplab
