#include "svplab/nv_sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svplab {

namespace {

double distSq(const LatticeVector& a, const LatticeVector& b) {
    double s = 0.0;
    for (size_t k = 0; k < a.cart.size(); ++k) {
        const double d = a.cart[k] - b.cart[k];
        s += d * d;
    }
    return s;
}

} // namespace

NvParams defaultNvParams(int dim, double gamma, double mult) {
    NvParams p;
    p.gamma = gamma;
    p.sampleCount = static_cast<std::size_t>(std::ceil(mult * std::exp2(0.21 * dim)));
    p.sampleCount = std::max<std::size_t>(p.sampleCount, static_cast<std::size_t>(dim));
    p.maxRounds = 10 * dim;
    return p;
}

SieveRound nvSieveStep(const std::vector<LatticeVector>& sPrev, double gamma, SearchEngine& engine,
                       QueryLedger& ledger) {
    if (sPrev.empty()) throw std::invalid_argument("empty list");
    if (!(gamma > 2.0 / 3.0 && gamma < 1.0)) throw std::invalid_argument("gamma outside (2/3, 1)");

    SieveRound round;
    double maxSq = 0.0;
    for (const auto& v : sPrev) maxSq = std::max(maxSq, v.normSq);
    round.radius = std::sqrt(maxSq);
    const double thresholdSq = gamma * gamma * maxSq;

    round.centers.push_back(zeroVector(static_cast<int>(sPrev.front().cart.size())));
    for (const auto& v : sPrev) {
        auto hit = search(
            round.centers, [&](const LatticeVector& c) { return distSq(v, c) <= thresholdSq; },
            engine, ledger);
        if (hit)
            round.survivors.push_back(subVectors(v, round.centers[*hit]));
        else
            round.centers.push_back(v);
    }
    return round;
}

NvResult nvSolve(const LatticeBasis& basis, const NvParams& params, SearchEngine& engine,
                 QueryLedger& ledger, Rng& rng, std::vector<SieveRound>* roundLog) {
    const int n = basis.dim();
    if (params.sampleCount < static_cast<std::size_t>(n))
        throw std::invalid_argument("sampleCount below dimension");
    if (!(params.gamma > 2.0 / 3.0 && params.gamma < 1.0))
        throw std::invalid_argument("gamma outside (2/3, 1)");
    if (params.maxRounds < 1) throw std::invalid_argument("maxRounds must be positive");

    std::vector<LatticeVector> current;
    current.reserve(params.sampleCount);
    for (std::size_t i = 0; i < params.sampleCount; ++i)
        current.push_back(sampleLatticePoint(basis, basis.maxRowNorm(), rng));

    NvResult result;
    bool haveBest = false;        // best of the most recent non-empty list
    bool haveGlobal = false;      // best across all rounds, for truncation
    LatticeVector globalBest;
    int rounds = 0;

    while (true) {
        // Filter zeros and track the argmin in the same pass, so the final
        // answer is already at hand when the list dies out.
        std::vector<LatticeVector> live;
        live.reserve(current.size());
        const LatticeVector* roundBest = nullptr;
        for (auto& v : current) {
            if (v.isZero()) continue;
            live.push_back(std::move(v));
            if (!roundBest || live.back().normSqInt < roundBest->normSqInt)
                roundBest = &live.back();
        }
        if (live.empty()) break;
        result.shortest = *roundBest;
        haveBest = true;
        if (!haveGlobal || roundBest->normSqInt < globalBest.normSqInt) {
            globalBest = *roundBest;
            haveGlobal = true;
        }
        if (rounds >= params.maxRounds) {
            result.truncated = true;
            result.shortest = globalBest;
            break;
        }
        SieveRound round = nvSieveStep(live, params.gamma, engine, ledger);
        ++rounds;
        if (roundLog) roundLog->push_back(round);
        current = std::move(round.survivors);
    }
    result.rounds = rounds;
    if (!haveBest) throw std::runtime_error("sampling failure: no nonzero lattice samples");
    return result;
}

double shellUniformityStat(const std::vector<LatticeVector>& vectors, double innerR, double outerR) {
    if (!(outerR > innerR && innerR > 0.0)) throw std::invalid_argument("need outerR > innerR > 0");

    std::vector<const LatticeVector*> shell;
    for (const auto& v : vectors) {
        const double r = v.norm();
        if (r >= innerR && r <= outerR) shell.push_back(&v);
    }
    const std::size_t m = shell.size();
    if (m < 10) throw std::runtime_error("insufficient sample: fewer than 10 vectors in shell");
    const int n = static_cast<int>(shell.front()->cart.size());

    // Radial part: uniform shell mass grows like r^n between the radii.
    std::vector<double> s(m);
    for (std::size_t i = 0; i < m; ++i) s[i] = shell[i]->norm() / outerR;
    std::sort(s.begin(), s.end());
    const double a = innerR / outerR;
    const double an = std::pow(a, n);
    double ks = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double f = (std::pow(s[i], n) - an) / (1.0 - an);
        ks = std::max(ks, std::abs(f - static_cast<double>(i) / m));
        ks = std::max(ks, std::abs(f - static_cast<double>(i + 1) / m));
    }
    if (n < 2) return ks;

    // Directional part: compare the mean pairwise |cos| with the isotropic
    // expectation 2*Gamma(n/2) / ((n-1) sqrt(pi) Gamma((n-1)/2)); normalize
    // so that a fully degenerate cloud scores 1.
    const std::size_t cap = 2000;
    const std::size_t stride = (m + cap - 1) / cap;
    std::vector<std::vector<double>> dirs;
    for (std::size_t i = 0; i < m; i += stride) {
        const double r = shell[i]->norm();
        std::vector<double> d(n);
        for (int k = 0; k < n; ++k) d[k] = shell[i]->cart[k] / r;
        dirs.push_back(std::move(d));
    }
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < dirs.size(); ++i)
        for (std::size_t j = i + 1; j < dirs.size(); ++j) {
            double dot = 0.0;
            for (int k = 0; k < n; ++k) dot += dirs[i][k] * dirs[j][k];
            sum += std::min(std::abs(dot), 1.0);
            ++pairs;
        }
    if (pairs == 0) return ks;
    const double mean = sum / static_cast<double>(pairs);
    const double expected =
        2.0 * std::exp(std::lgamma(n / 2.0) - std::lgamma((n - 1) / 2.0)) / ((n - 1) * std::sqrt(M_PI));
    const double cosStat = std::abs(mean - expected) / (1.0 - expected);
    return std::max(ks, std::min(cosStat, 1.0));
}

} // namespace svplab
