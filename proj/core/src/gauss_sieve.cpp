#include "svplab/gauss_sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svplab {

namespace {

// Squared distances ||v -+ s||^2; cart entries are exact integers in double,
// so comparisons against the integer norms are exact.
void signedDistSq(const LatticeVector& v, const LatticeVector& s, double* dSub, double* dAdd) {
    double sub = 0.0, add = 0.0;
    for (std::size_t k = 0; k < v.cart.size(); ++k) {
        const double a = v.cart[k] - s.cart[k];
        const double b = v.cart[k] + s.cart[k];
        sub += a * a;
        add += b * b;
    }
    *dSub = sub;
    *dAdd = add;
}

} // namespace

LatticeVector gsReduceVector(LatticeVector v, const std::vector<LatticeVector>& S,
                             SearchEngine& engine, QueryLedger& ledger) {
    for (int iter = 0; iter < 10000; ++iter) {
        if (v.isZero()) return v;
        const double vSq = v.normSq;
        auto hit = search(
            S,
            [&](const LatticeVector& s) {
                if (s.normSq > vSq) return false;
                double dSub, dAdd;
                signedDistSq(v, s, &dSub, &dAdd);
                return std::min(dSub, dAdd) < vSq;
            },
            engine, ledger);
        if (!hit) return v;
        const LatticeVector& s = S[*hit];
        double dSub, dAdd;
        signedDistSq(v, s, &dSub, &dAdd);
        v = dSub <= dAdd ? subVectors(v, s) : addVectors(v, s);
    }
    throw std::runtime_error("reduction stuck: 10000 iterations");
}

void gsBackReduce(const LatticeVector& v, GsState& state, SearchEngine& engine, QueryLedger& ledger) {
    while (true) {
        const double vSq = v.normSq;
        auto hit = search(
            state.listS,
            [&](const LatticeVector& s) {
                if (s.isZero() || vSq > s.normSq) return false;
                double dSub, dAdd;
                signedDistSq(v, s, &dSub, &dAdd);
                return std::min(dSub, dAdd) < s.normSq;
            },
            engine, ledger);
        if (!hit) return;
        const LatticeVector s = std::move(state.listS[*hit]);
        state.listS.erase(state.listS.begin() + static_cast<std::ptrdiff_t>(*hit));
        double dSub, dAdd;
        signedDistSq(v, s, &dSub, &dAdd);
        state.stackQ.push_back(dSub <= dAdd ? subVectors(v, s) : addVectors(v, s));
    }
}

GsResult gsSolve(const LatticeBasis& basis, const GsOptions& opts, SearchEngine& engine,
                 QueryLedger& ledger, Rng& rng) {
    if (opts.collisionTarget < 1) throw std::invalid_argument("collisionTarget must be >= 1");
    const int n = basis.dim();
    const std::size_t listCap =
        static_cast<std::size_t>(std::exp2(0.25 * static_cast<double>(n) + 16.0));

    GsResult result;
    GsState& st = result.state;
    st.collisionTarget = opts.collisionTarget;
    st.listS.push_back(zeroVector(n));

    while (st.collisions < st.collisionTarget) {
        LatticeVector v;
        if (!st.stackQ.empty()) {
            std::size_t idx = st.stackQ.size() - 1;
            if (opts.randomPop) idx = static_cast<std::size_t>(rng.below(st.stackQ.size()));
            v = std::move(st.stackQ[idx]);
            st.stackQ.erase(st.stackQ.begin() + static_cast<std::ptrdiff_t>(idx));
        } else {
            v = sampleLatticePoint(basis, basis.maxRowNorm(), rng);
            ++result.samples;
        }
        v = gsReduceVector(std::move(v), st.listS, engine, ledger);
        gsBackReduce(v, st, engine, ledger);
        if (v.isZero()) {
            ++st.collisions;
        } else {
            st.listS.push_back(std::move(v));
            if (st.listS.size() > listCap) throw std::runtime_error("list blow-up");
        }
    }

    const LatticeVector* best = nullptr;
    for (const auto& s : st.listS) {
        if (s.isZero()) continue;
        if (!best || s.normSqInt < best->normSqInt) best = &s;
    }
    if (!best) throw std::runtime_error("no nonzero vector survived");
    result.shortest = *best;
    return result;
}

bool isPairwiseGaussReduced(const std::vector<LatticeVector>& listS, double tol) {
    for (std::size_t i = 0; i < listS.size(); ++i) {
        if (listS[i].isZero()) continue;
        for (std::size_t j = i + 1; j < listS.size(); ++j) {
            if (listS[j].isZero()) continue;
            double dSub, dAdd;
            signedDistSq(listS[i], listS[j], &dSub, &dAdd);
            const double minDist = std::sqrt(std::min(dSub, dAdd));
            const double maxNorm = std::max(listS[i].norm(), listS[j].norm());
            if (minDist < maxNorm - tol) return false;
        }
    }
    return true;
}

} // namespace svplab
