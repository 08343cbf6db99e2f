#pragma once

#include <cstdint>
#include <vector>

#include "svplab/lattice.hpp"
#include "svplab/search.hpp"

namespace svplab {

struct GsOptions {
    int collisionTarget = 500; // C0
    bool randomPop = false;    // pop the stack uniformly at random instead of LIFO
};

struct GsState {
    std::vector<LatticeVector> listS;  // holds 0 from the start
    std::vector<LatticeVector> stackQ; // LIFO unless randomPop
    int collisions = 0;
    int collisionTarget = 0;
};

// While some s in S (counting s and -s as both present) is no longer than v
// and strictly shortens it, subtract the better sign. Ties never reduce, so
// the loop terminates.
LatticeVector gsReduceVector(LatticeVector v, const std::vector<LatticeVector>& S,
                             SearchEngine& engine, QueryLedger& ledger);

// While some list member s is at least as long as v and strictly shortened
// by +-v, remove s from the list and push the shortened vector.
void gsBackReduce(const LatticeVector& v, GsState& state, SearchEngine& engine, QueryLedger& ledger);

struct GsResult {
    LatticeVector shortest;
    GsState state; // final state, exposed for invariant sweeps
    std::uint64_t samples = 0;
};

GsResult gsSolve(const LatticeBasis& basis, const GsOptions& opts, SearchEngine& engine,
                 QueryLedger& ledger, Rng& rng);

// min(||s1-s2||, ||s1+s2||) >= max(||s1||, ||s2||) - tol over all nonzero
// pairs; the invariant the list maintains at every step.
bool isPairwiseGaussReduced(const std::vector<LatticeVector>& listS, double tol = 1e-9);

} // namespace svplab
