#include "svplab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "svplab/enumeration.hpp"
#include "svplab/gauss_sieve.hpp"
#include "svplab/nv_sieve.hpp"
#include "svplab/ps_saturation.hpp"

namespace svplab {

std::string algoName(Algo algo) {
    switch (algo) {
    case Algo::nv: return "nv";
    case Algo::ps: return "ps";
    case Algo::gauss: return "gauss";
    case Algo::enumeration: return "enum";
    }
    return "?";
}

Algo parseAlgo(const std::string& name) {
    if (name == "nv") return Algo::nv;
    if (name == "ps") return Algo::ps;
    if (name == "gauss") return Algo::gauss;
    if (name == "enum") return Algo::enumeration;
    throw std::invalid_argument("unknown algo: " + name);
}

std::string engineName(EngineMode mode) {
    return mode == EngineMode::classical ? "classical" : "qcost";
}

EngineMode parseEngine(const std::string& name) {
    if (name == "classical") return EngineMode::classical;
    if (name == "qcost") return EngineMode::quantumCost;
    throw std::invalid_argument("unknown engine: " + name);
}

LatticeBasis genLattice(int n, int bits, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("dimension must be >= 2");
    if (bits < 4 || bits > 30) throw std::invalid_argument("bits outside [4, 30]");
    Rng rng(seed);
    const std::uint64_t half = 1ull << (bits - 1);
    const i64 q = static_cast<i64>(half + rng.below(half));

    std::vector<std::vector<i64>> rows(n, std::vector<i64>(n, 0));
    rows[0][0] = q;
    for (int i = 1; i < n; ++i) {
        rows[i][0] = static_cast<i64>(rng.below(static_cast<std::uint64_t>(q)));
        rows[i][i] = 1;
    }

    // Cap entry growth so the scrambled basis keeps a GSO condition number
    // double precision can handle: det stays q, so every extra bit in the
    // rows is a bit lost from the smallest b_i*. 8q leaves LLL real work
    // while staying far from the 2^53 exact-dot-product window; the absolute
    // ceiling keeps squared row norms inside int64 even at n = 45.
    const i64 entryCap = std::clamp<i64>(8 * q, 1ll << 14, 1ll << 24);
    const int ops = 20 * n;
    for (int t = 0; t < ops; ++t) {
        const int i = static_cast<int>(rng.below(n));
        int j = static_cast<int>(rng.below(n));
        while (j == i) j = static_cast<int>(rng.below(n));
        const int pick = static_cast<int>(rng.below(6));
        const i64 c = pick < 3 ? static_cast<i64>(pick) - 3 : static_cast<i64>(pick) - 2; // -3..-1, 1..3
        bool ok = true;
        for (int k = 0; k < n && ok; ++k) {
            const i64 v = rows[i][k] + c * rows[j][k];
            if (std::abs(v) > entryCap) ok = false;
        }
        if (!ok) continue;
        for (int k = 0; k < n; ++k) rows[i][k] += c * rows[j][k];
    }
    return LatticeBasis(std::move(rows));
}

namespace {

constexpr std::uint64_t kEngineSeedSalt = 0x9e3779b97f4a7c15ull;

SearchEngine makeEngine(EngineMode mode, std::uint64_t seed, std::optional<PickPolicy> pickOverride) {
    PickPolicy pick = mode == EngineMode::classical ? PickPolicy::firstMatch : PickPolicy::randomMatch;
    if (pickOverride) pick = *pickOverride;
    return SearchEngine{mode, pick, Rng(seed ^ kEngineSeedSalt)};
}

std::optional<LatticeVector> psWithMu(const LatticeBasis& reduced, const AlgoParams& params,
                                      double mu, SearchEngine& engine, QueryLedger& ledger,
                                      Rng& rng) {
    const SatParams sp = makeSatParams(reduced.dim(), params.xi, params.bigR, mu);
    return psSolve(reduced, sp, engine, ledger, rng);
}

} // namespace

SolveOutcome solveOnBasis(const LatticeBasis& reduced, Algo algo, EngineMode engineMode,
                          const AlgoParams& params, std::uint64_t seed,
                          std::optional<double> oracleLambda1Sq,
                          std::optional<PickPolicy> pickOverride) {
    SolveOutcome out;
    SearchEngine engine = makeEngine(engineMode, seed, pickOverride);
    Rng rng(seed);
    switch (algo) {
    case Algo::nv: {
        const NvParams np = defaultNvParams(reduced.dim(), params.gamma, params.nvMult);
        NvResult r = nvSolve(reduced, np, engine, out.ledger, rng);
        out.shortest = std::move(r.shortest);
        out.truncated = r.truncated;
        break;
    }
    case Algo::ps: {
        if (oracleLambda1Sq) {
            out.shortest = psWithMu(reduced, params, params.muFactor * std::sqrt(*oracleLambda1Sq),
                                    engine, out.ledger, rng);
        } else {
            // No oracle available: sweep mu geometrically down from just
            // above the Gaussian heuristic until a collision shows up.
            double mu = 1.05 * gaussianHeuristicLength(reduced);
            for (int k = 0; k < 25 && !out.shortest; ++k, mu *= 0.95)
                out.shortest = psWithMu(reduced, params, mu, engine, out.ledger, rng);
        }
        break;
    }
    case Algo::gauss: {
        GsOptions opts;
        opts.collisionTarget = params.collisions;
        GsResult r = gsSolve(reduced, opts, engine, out.ledger, rng);
        out.shortest = std::move(r.shortest);
        break;
    }
    case Algo::enumeration: {
        out.shortest = enumerateShortest(reduced).shortest;
        break;
    }
    }
    return out;
}

const char* kCsvHeader =
    "run_id,n,seed,algo,engine,charged_queries,predicate_evals,wall_ms,found_norm_sq,lambda1_sq,success";

std::string recordToCsvLine(const RunRecord& r) {
    char buf[512];
    std::string found, lambda;
    if (r.foundNormSq) {
        std::snprintf(buf, sizeof(buf), "%.17g", *r.foundNormSq);
        found = buf;
    }
    if (r.oracleLambda1Sq) {
        std::snprintf(buf, sizeof(buf), "%.17g", *r.oracleLambda1Sq);
        lambda = buf;
    }
    std::snprintf(buf, sizeof(buf), "%llu,%d,%llu,%s,%s,%llu,%llu,%.3f,%s,%s,%s",
                  static_cast<unsigned long long>(r.runId), r.n,
                  static_cast<unsigned long long>(r.seed), algoName(r.algo).c_str(),
                  engineName(r.engineMode).c_str(),
                  static_cast<unsigned long long>(r.chargedQueries),
                  static_cast<unsigned long long>(r.predicateEvals), r.wallMillis, found.c_str(),
                  lambda.c_str(), r.success ? "true" : "false");
    return buf;
}

std::vector<RunRecord> runExperiment(const ExperimentConfig& config) {
    if (config.dims.empty()) throw std::invalid_argument("dims empty");
    for (int d : config.dims)
        if (d < 2) throw std::invalid_argument("dims entries must be >= 2");
    if (config.seedsPerDim < 1) throw std::invalid_argument("seedsPerDim must be >= 1");

    std::ofstream out;
    if (!config.outputPath.empty()) {
        out.open(config.outputPath);
        if (!out) throw std::runtime_error("cannot open for writing: " + config.outputPath);
        out << kCsvHeader << "\n" << std::flush;
    }

    std::vector<RunRecord> records;
    std::uint64_t runId = 1;
    for (int n : config.dims) {
        for (int s = 0; s < config.seedsPerDim; ++s, ++runId) {
            const std::uint64_t seed = config.baseSeed + static_cast<std::uint64_t>(s);
            RunRecord rec;
            rec.runId = runId;
            rec.n = n;
            rec.seed = seed;
            rec.algo = config.algo;
            rec.engineMode = config.engineMode;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const LatticeBasis basis = genLattice(n, config.bits, seed);
                const LatticeBasis reduced = lllReduce(basis);
                std::optional<double> lambda1Sq;
                if (n <= 45)
                    lambda1Sq = static_cast<double>(enumerateShortest(reduced).shortest.normSqInt);
                rec.oracleLambda1Sq = lambda1Sq;
                SolveOutcome solved =
                    solveOnBasis(reduced, config.algo, config.engineMode, config.params, seed, lambda1Sq);
                rec.chargedQueries = solved.ledger.chargedQueries;
                rec.predicateEvals = solved.ledger.predicateEvals;
                if (solved.shortest) {
                    rec.foundNormSq = solved.shortest->normSq;
                    rec.success = lambda1Sq && *rec.foundNormSq <= *lambda1Sq * (1.0 + 1e-9);
                }
            } catch (const std::exception& e) {
                std::fprintf(stderr, "run %llu (n=%d seed=%llu) failed: %s\n",
                             static_cast<unsigned long long>(runId), n,
                             static_cast<unsigned long long>(seed), e.what());
                rec.success = false;
            }
            const auto t1 = std::chrono::steady_clock::now();
            rec.wallMillis = std::chrono::duration<double, std::milli>(t1 - t0).count();
            if (out) out << recordToCsvLine(rec) << "\n" << std::flush;
            records.push_back(std::move(rec));
        }
    }
    return records;
}

namespace {

std::vector<std::string> splitCsv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

std::vector<RunRecord> readRecordsCsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open CSV: " + path);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw std::invalid_argument("unexpected CSV header in " + path);
    std::vector<RunRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = splitCsv(line);
        if (f.size() != 11) throw std::invalid_argument("malformed CSV row in " + path);
        RunRecord r;
        r.runId = std::stoull(f[0]);
        r.n = std::stoi(f[1]);
        r.seed = std::stoull(f[2]);
        r.algo = parseAlgo(f[3]);
        r.engineMode = parseEngine(f[4]);
        r.chargedQueries = std::stoull(f[5]);
        r.predicateEvals = std::stoull(f[6]);
        r.wallMillis = std::stod(f[7]);
        if (!f[8].empty()) r.foundNormSq = std::stod(f[8]);
        if (!f[9].empty()) r.oracleLambda1Sq = std::stod(f[9]);
        r.success = f[10] == "true";
        records.push_back(r);
    }
    return records;
}

FitResult fitExponent(const std::vector<RunRecord>& records, Algo algo, EngineMode engineMode) {
    std::vector<std::pair<int, std::vector<std::uint64_t>>> byDim;
    for (const auto& r : records) {
        if (r.algo != algo || r.engineMode != engineMode) continue;
        auto it = std::find_if(byDim.begin(), byDim.end(),
                               [&](const auto& p) { return p.first == r.n; });
        if (it == byDim.end()) {
            byDim.push_back({r.n, {r.chargedQueries}});
        } else {
            it->second.push_back(r.chargedQueries);
        }
    }
    if (byDim.size() < 3) throw std::invalid_argument("fit needs >= 3 distinct dims after filtering");

    std::vector<std::pair<double, double>> pts; // (n, log2 median)
    for (auto& [n, charges] : byDim) {
        std::sort(charges.begin(), charges.end());
        const std::size_t m = charges.size();
        const double median = m % 2 == 1
                                  ? static_cast<double>(charges[m / 2])
                                  : 0.5 * (static_cast<double>(charges[m / 2 - 1]) +
                                           static_cast<double>(charges[m / 2]));
        if (!(median > 0.0)) throw std::invalid_argument("fit needs positive median charges");
        pts.push_back({static_cast<double>(n), std::log2(median)});
    }

    double sx = 0, sy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
    }
    const double mx = sx / pts.size(), my = sy / pts.size();
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssRes = 0;
    for (const auto& [x, y] : pts) {
        const double e = y - (fit.intercept + fit.slope * x);
        ssRes += e * e;
    }
    fit.r2 = syy > 0 ? 1.0 - ssRes / syy : 1.0;
    return fit;
}

FitResult fitExponentCsv(const std::string& csvPath, Algo algo, EngineMode engineMode) {
    return fitExponent(readRecordsCsv(csvPath), algo, engineMode);
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string normalizeKey(std::string k) {
    for (char& c : k)
        if (c == '-') c = '_';
    return k;
}

} // namespace

ExperimentConfig parseConfigFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config: " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineNo) + ": expected key = value");
        const std::string key = normalizeKey(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "dims") {
                cfg.dims.clear();
                std::string item;
                std::istringstream vs(value);
                while (std::getline(vs, item, ',')) cfg.dims.push_back(std::stoi(trim(item)));
            } else if (key == "seeds_per_dim") {
                cfg.seedsPerDim = std::stoi(value);
            } else if (key == "algo") {
                cfg.algo = parseAlgo(value);
            } else if (key == "engine") {
                cfg.engineMode = parseEngine(value);
            } else if (key == "bits") {
                cfg.bits = std::stoi(value);
            } else if (key == "seed") {
                cfg.baseSeed = std::stoull(value);
            } else if (key == "gamma") {
                cfg.params.gamma = std::stod(value);
            } else if (key == "nv_mult") {
                cfg.params.nvMult = std::stod(value);
            } else if (key == "xi") {
                cfg.params.xi = std::stod(value);
            } else if (key == "bigr") {
                cfg.params.bigR = std::stod(value);
            } else if (key == "mu_factor") {
                cfg.params.muFactor = std::stod(value);
            } else if (key == "collisions") {
                cfg.params.collisions = std::stoi(value);
            } else if (key == "out") {
                cfg.outputPath = value;
            } else {
                throw std::invalid_argument("unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("config line " + std::to_string(lineNo) + ": bad value for " + key);
        }
    }
    return cfg;
}

} // namespace svplab
