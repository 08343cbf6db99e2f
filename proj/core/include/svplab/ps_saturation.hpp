#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "svplab/lattice.hpp"
#include "svplab/search.hpp"

namespace svplab {

// Closed forms behind the saturation counts. The 0.401 constant is the
// sphere-packing (kissing-number) exponent bounding list sizes.
struct SatConstants {
    double cb = 0.0; // log2(R) + 0.401
    double ct = 0.0; // 0.5*log2(1 + xi/(R-2xi)) + 0.401
    double cg = 0.0; // 0.5*log2(4 xi^2 / (4 xi^2 - 1))
    double nB = 0.0; // 2^cb, so N_B = nB^n
    double nT = 0.0; // 2^ct
    double nG = 0.0; // 2^cg
};

SatConstants deriveSatConstants(double xi, double bigR);

struct SatParams {
    double xi = 0.0;
    double bigR = 0.0;
    double mu = 0.0;   // target norm, ~ lambda1
    double gamma = 0.0; // 1 - 1/n
    std::uint64_t n1Max = 1; // 2^((cg+ct) n), clamped
    std::uint64_t n2 = 1;    // 2^((cg+cb/2) n), clamped
    double countCapExponent = 22.0;
    bool capped = false;
};

// gamma, n1Max, n2 from the closed forms at dimension dim; counts above
// 2^countCapExponent are clamped with a stderr warning (desk-scale guard).
SatParams makeSatParams(int dim, double xi, double bigR, double mu, double countCapExponent = 22.0);

// While some t in T satisfies ||v' - t|| < gamma ||v'||, subtract it. Each
// while-iteration is one charged search invocation. coeffAcc, when non-null,
// accumulates the subtracted lattice coefficients.
std::vector<double> psReduceWithList(std::vector<double> vPrime, const std::vector<LatticeVector>& T,
                                     double gamma, SearchEngine& engine, QueryLedger& ledger,
                                     std::vector<i64>* coeffAcc = nullptr);

// One perturbed sample: x from B(0, xi mu), reduced into the fundamental
// domain, then reduced with T; latticePart = vPrime - x with exact integer
// coefficients tracked through every reduction.
PerturbedPoint psSamplePoint(const LatticeBasis& basis, const SatParams& params,
                             const std::vector<LatticeVector>& T, SearchEngine& engine,
                             QueryLedger& ledger, Rng& rng);

// Phase 1: `iterations` samples, keeping those with norm >= R mu as the
// dummy list (the list reduces its own later samples as it grows).
std::vector<LatticeVector> psBuildDummyList(const LatticeBasis& basis, const SatParams& params,
                                            std::uint64_t iterations, SearchEngine& engine,
                                            QueryLedger& ledger, Rng& rng);

// Phase 2: n2 samples reduced against the fixed dummy list, all kept.
std::vector<LatticeVector> psBuildSampleList(const LatticeBasis& basis, const SatParams& params,
                                             const std::vector<LatticeVector>& T, SearchEngine& engine,
                                             QueryLedger& ledger, Rng& rng);

struct PsTrace {
    std::uint64_t n1 = 0;
    std::vector<LatticeVector> dummyList;
    std::vector<LatticeVector> sampleList;
};

// Full run: draw N1 in [0, n1Max - 1], build T, build S, then birthday-search
// S for a pair at distance (0, mu). Empty result = no collision this run.
std::optional<LatticeVector> psSolve(const LatticeBasis& basis, const SatParams& params,
                                     SearchEngine& engine, QueryLedger& ledger, Rng& rng,
                                     PsTrace* trace = nullptr);

} // namespace svplab
