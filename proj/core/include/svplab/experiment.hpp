#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "svplab/lattice.hpp"
#include "svplab/search.hpp"

namespace svplab {

enum class Algo { nv, ps, gauss, enumeration };

std::string algoName(Algo algo);
Algo parseAlgo(const std::string& name);
std::string engineName(EngineMode mode);
EngineMode parseEngine(const std::string& name);

struct AlgoParams {
    double gamma = 0.97;    // nv
    double nvMult = 16.0;   // nv list-size multiplier
    double xi = 0.9476;     // ps
    double bigR = 3.0169;   // ps
    double muFactor = 1.01; // ps: mu = muFactor * lambda1
    int collisions = 500;   // gauss C0
};

struct ExperimentConfig {
    std::vector<int> dims;
    int seedsPerDim = 1;
    Algo algo = Algo::gauss;
    EngineMode engineMode = EngineMode::classical;
    int bits = 10;
    std::uint64_t baseSeed = 1;
    AlgoParams params;
    std::string outputPath;
};

struct RunRecord {
    std::uint64_t runId = 0;
    int n = 0;
    std::uint64_t seed = 0;
    Algo algo = Algo::gauss;
    EngineMode engineMode = EngineMode::classical;
    std::uint64_t chargedQueries = 0;
    std::uint64_t predicateEvals = 0;
    double wallMillis = 0.0;
    std::optional<double> foundNormSq;
    std::optional<double> oracleLambda1Sq;
    bool success = false;
};

// Random full-rank basis: q * e_1 plus rows r_i * e_1 + e_i with q a
// `bits`-bit modulus and dense r_i in [0, q), scrambled by 20 n seeded
// unimodular row operations with coefficients in [-3, 3] \ {0}. Operations
// that would push an entry past clamp(8q, 2^14, 2^24) are skipped with the
// randomness still consumed, so output stays deterministic per seed.
// |det| = q throughout.
LatticeBasis genLattice(int n, int bits, std::uint64_t seed);

// One solver run on an already LLL-reduced basis. For ps, mu is
// muFactor * lambda1 when the oracle value is supplied, otherwise a
// geometric sweep down from 1.05x the Gaussian heuristic.
struct SolveOutcome {
    std::optional<LatticeVector> shortest; // empty: ps found no collision
    QueryLedger ledger;
    bool truncated = false; // nv round cap hit
};
SolveOutcome solveOnBasis(const LatticeBasis& reduced, Algo algo, EngineMode engineMode,
                          const AlgoParams& params, std::uint64_t seed,
                          std::optional<double> oracleLambda1Sq,
                          std::optional<PickPolicy> pickOverride = std::nullopt);

// Sequential batch: generate, reduce, solve, compare to the exact oracle
// (n <= 45), append one CSV row per run. Failed runs keep the batch alive:
// the row carries success=false and the reason goes to stderr.
std::vector<RunRecord> runExperiment(const ExperimentConfig& config);

extern const char* kCsvHeader;
std::string recordToCsvLine(const RunRecord& r);
std::vector<RunRecord> readRecordsCsv(const std::string& path);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

// OLS of log2(per-dim median charged queries) against n. Needs >= 3
// distinct dims after filtering and positive medians.
FitResult fitExponent(const std::vector<RunRecord>& records, Algo algo, EngineMode engineMode);
FitResult fitExponentCsv(const std::string& csvPath, Algo algo, EngineMode engineMode);

// Flat `key = value` text; '#' starts a comment. Keys mirror the CLI flags
// (dims, seeds_per_dim, algo, engine, bits, seed, gamma, nv_mult, xi, bigr,
// mu_factor, collisions, out); '-' and '_' are interchangeable.
ExperimentConfig parseConfigFile(const std::string& path);

} // namespace svplab
