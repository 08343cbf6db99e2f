#include "svplab/ps_saturation.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace svplab {

SatConstants deriveSatConstants(double xi, double bigR) {
    if (!(xi > 0.5)) throw std::invalid_argument("xi must exceed 1/2");
    if (!(bigR > 2.0 * xi)) throw std::invalid_argument("R must exceed 2 xi");
    SatConstants c;
    c.cb = std::log2(bigR) + 0.401;
    c.ct = 0.5 * std::log2(1.0 + xi / (bigR - 2.0 * xi)) + 0.401;
    c.cg = 0.5 * std::log2(4.0 * xi * xi / (4.0 * xi * xi - 1.0));
    c.nB = std::exp2(c.cb);
    c.nT = std::exp2(c.ct);
    c.nG = std::exp2(c.cg);
    return c;
}

namespace {

std::uint64_t expCount(double exponent, double cap, bool* capped) {
    if (exponent > cap) {
        *capped = true;
        return static_cast<std::uint64_t>(std::exp2(cap));
    }
    return static_cast<std::uint64_t>(std::ceil(std::exp2(exponent)));
}

} // namespace

SatParams makeSatParams(int dim, double xi, double bigR, double mu, double countCapExponent) {
    if (dim < 2) throw std::invalid_argument("dimension must be >= 2");
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
    const SatConstants c = deriveSatConstants(xi, bigR);
    SatParams p;
    p.xi = xi;
    p.bigR = bigR;
    p.mu = mu;
    p.gamma = 1.0 - 1.0 / static_cast<double>(dim);
    p.countCapExponent = countCapExponent;
    bool capped = false;
    p.n1Max = expCount((c.cg + c.ct) * dim, countCapExponent, &capped);
    p.n2 = expCount((c.cg + c.cb / 2.0) * dim, countCapExponent, &capped);
    p.n1Max = std::max<std::uint64_t>(p.n1Max, 1);
    p.n2 = std::max<std::uint64_t>(p.n2, 1);
    p.capped = capped;
    if (capped)
        std::fprintf(stderr,
                     "warning: saturation counts clamped to 2^%.0f at n=%d; "
                     "results below this scale lose the success guarantee\n",
                     countCapExponent, dim);
    return p;
}

namespace {

double normSqD(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

} // namespace

std::vector<double> psReduceWithList(std::vector<double> vPrime, const std::vector<LatticeVector>& T,
                                     double gamma, SearchEngine& engine, QueryLedger& ledger,
                                     std::vector<i64>* coeffAcc) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma outside (0, 1)");
    const std::size_t n = vPrime.size();
    for (int iter = 0; iter < 10000; ++iter) {
        const double thresholdSq = gamma * gamma * normSqD(vPrime);
        auto hit = search(
            T,
            [&](const LatticeVector& t) {
                double s = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double d = vPrime[k] - t.cart[k];
                    s += d * d;
                }
                return s < thresholdSq;
            },
            engine, ledger);
        if (!hit) return vPrime;
        const LatticeVector& t = T[*hit];
        for (std::size_t k = 0; k < n; ++k) vPrime[k] -= t.cart[k];
        if (coeffAcc)
            for (std::size_t k = 0; k < n; ++k) (*coeffAcc)[k] = checkedSub((*coeffAcc)[k], t.coeffs[k]);
    }
    throw std::runtime_error("reduction stuck: 10000 iterations");
}

PerturbedPoint psSamplePoint(const LatticeBasis& basis, const SatParams& params,
                             const std::vector<LatticeVector>& T, SearchEngine& engine,
                             QueryLedger& ledger, Rng& rng) {
    const int n = basis.dim();
    PerturbedPoint p;
    p.x = sampleBall(n, params.xi * params.mu, rng);

    std::vector<i64> floors;
    std::vector<double> vPrime = reduceModFundamental(p.x, basis, &floors);
    // latticePart = vPrime - x. Coefficients: -floors from the domain
    // reduction, minus every dummy vector subtracted below.
    std::vector<i64> coeffs(n);
    for (int k = 0; k < n; ++k) coeffs[k] = checkedSub(0, floors[k]);
    p.vPrime = psReduceWithList(std::move(vPrime), T, params.gamma, engine, ledger, &coeffs);
    p.latticePart = makeLatticeVector(basis, std::move(coeffs));

    for (int k = 0; k < n; ++k) {
        const double expect = p.vPrime[k] - p.x[k];
        if (std::abs(p.latticePart.cart[k] - expect) > 1e-6 * std::max(1.0, std::abs(expect)))
            throw std::runtime_error("perturbation bookkeeping mismatch");
    }
    return p;
}

std::vector<LatticeVector> psBuildDummyList(const LatticeBasis& basis, const SatParams& params,
                                            std::uint64_t iterations, SearchEngine& engine,
                                            QueryLedger& ledger, Rng& rng) {
    const double floorSq = params.bigR * params.mu * params.bigR * params.mu;
    std::vector<LatticeVector> T;
    for (std::uint64_t i = 0; i < iterations; ++i) {
        PerturbedPoint p = psSamplePoint(basis, params, T, engine, ledger, rng);
        if (p.latticePart.normSq >= floorSq) T.push_back(std::move(p.latticePart));
    }
    return T;
}

std::vector<LatticeVector> psBuildSampleList(const LatticeBasis& basis, const SatParams& params,
                                             const std::vector<LatticeVector>& T, SearchEngine& engine,
                                             QueryLedger& ledger, Rng& rng) {
    std::vector<LatticeVector> S;
    S.reserve(params.n2);
    for (std::uint64_t i = 0; i < params.n2; ++i)
        S.push_back(psSamplePoint(basis, params, T, engine, ledger, rng).latticePart);
    return S;
}

std::optional<LatticeVector> psSolve(const LatticeBasis& basis, const SatParams& params,
                                     SearchEngine& engine, QueryLedger& ledger, Rng& rng,
                                     PsTrace* trace) {
    const std::uint64_t n1 = rng.below(params.n1Max);
    std::vector<LatticeVector> T = psBuildDummyList(basis, params, n1, engine, ledger, rng);
    std::vector<LatticeVector> S = psBuildSampleList(basis, params, T, engine, ledger, rng);

    const double muSq = params.mu * params.mu;
    auto hit = pairSearch(
        S,
        [&](const LatticeVector& a, const LatticeVector& b) {
            double s = 0.0;
            for (std::size_t k = 0; k < a.cart.size(); ++k) {
                const double d = a.cart[k] - b.cart[k];
                s += d * d;
            }
            return s > 0.0 && s < muSq;
        },
        engine, ledger);

    std::optional<LatticeVector> result;
    if (hit) result = subVectors(S[hit->first], S[hit->second]);
    if (trace) {
        trace->n1 = n1;
        trace->dummyList = std::move(T);
        trace->sampleList = std::move(S);
    }
    return result;
}

} // namespace svplab
