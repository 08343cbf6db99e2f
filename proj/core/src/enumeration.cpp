#include "svplab/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace svplab {

namespace {

// Coefficients w.r.t. the reduced basis, mapped through the tracked
// transform back to the input basis.
std::vector<i64> toInputCoeffs(const std::vector<i64>& x, const std::vector<std::vector<i64>>& u) {
    const int n = static_cast<int>(u.size());
    std::vector<i64> out(n, 0);
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < n; ++j) out[j] = checkedAdd(out[j], checkedMul(x[i], u[i][j]));
    }
    return out;
}

} // namespace

EnumResult enumerateShortest(const LatticeBasis& basis) {
    const int n = basis.dim();
    if (n > 45) throw std::invalid_argument("oracle limit: dimension > 45");
    LllResult red = lllReduceTracked(basis);
    const LatticeBasis& rb = red.basis;
    const Gso& g = rb.gso();

    // Start from the shortest reduced row; every improvement is re-verified
    // in exact integer arithmetic, the float radius only prunes.
    int shortestRow = 0;
    LatticeVector bestReduced;
    {
        i64 bestSq = 0;
        for (int i = 0; i < n; ++i) {
            std::vector<i64> e(n, 0);
            e[i] = 1;
            LatticeVector row = makeLatticeVector(rb, std::move(e));
            if (i == 0 || row.normSqInt < bestSq) {
                bestSq = row.normSqInt;
                shortestRow = i;
                bestReduced = std::move(row);
            }
        }
    }
    std::vector<i64> bestX(n, 0);
    bestX[shortestRow] = 1;
    i64 bestSq = bestReduced.normSqInt;
    double radiusSq = static_cast<double>(bestSq);

    std::vector<i64> x(n, 0), base(n, 0);
    std::vector<int> step(n, 0), side(n, 1);
    std::vector<double> center(n, 0.0), rho(n + 1, 0.0);
    std::uint64_t nodes = 0;

    // advance(i): next coefficient in the order base, base+s, base-s,
    // base+2s, ... (s = side toward the center); the top level walks
    // 0, 1, 2, ... and relies on the +-v symmetry of norms.
    auto advance = [&](int i) {
        if (i == n - 1) {
            ++x[i];
            return;
        }
        ++step[i];
        const i64 mag = (step[i] + 1) / 2;
        const int sgn = (step[i] % 2 == 1) ? side[i] : -side[i];
        x[i] = base[i] + sgn * mag;
    };

    int i = n - 1;
    x[i] = 0;
    center[i] = 0.0;
    while (true) {
        const double d = static_cast<double>(x[i]) - center[i];
        rho[i] = rho[i + 1] + d * d * g.bstarNormSq[i];
        ++nodes;
        if (rho[i] <= radiusSq * (1.0 + 1e-9)) {
            if (i == 0) {
                bool allZero = true;
                for (int k = 0; k < n; ++k)
                    if (x[k] != 0) { allZero = false; break; }
                if (!allZero) {
                    LatticeVector cand = makeLatticeVector(rb, x);
                    if (cand.normSqInt > 0 && cand.normSqInt < bestSq) {
                        bestSq = cand.normSqInt;
                        bestX = x;
                        radiusSq = static_cast<double>(bestSq);
                    }
                }
                advance(0);
            } else {
                --i;
                double c = 0.0;
                for (int j = i + 1; j < n; ++j) c -= static_cast<double>(x[j]) * g.mu[j][i];
                center[i] = c;
                base[i] = static_cast<i64>(std::llrint(c));
                x[i] = base[i];
                step[i] = 0;
                side[i] = (c >= static_cast<double>(base[i])) ? 1 : -1;
            }
        } else {
            ++i;
            if (i == n) break;
            advance(i);
        }
    }

    EnumResult result;
    result.shortest = makeLatticeVector(basis, toInputCoeffs(bestX, red.transform));
    if (result.shortest.normSqInt != bestSq)
        throw std::runtime_error("enumeration transform mismatch");
    result.lambda1 = std::sqrt(static_cast<double>(bestSq));
    result.nodesVisited = nodes;
    return result;
}

EnumResult bruteForceBox(const LatticeBasis& basis, int boxRadius) {
    const int n = basis.dim();
    if (boxRadius < 1) throw std::invalid_argument("boxRadius must be >= 1");
    const double count = std::pow(2.0 * boxRadius + 1.0, n);
    if (count > 1e8) throw std::invalid_argument("coefficient box too large");

    std::vector<i64> c(n, -boxRadius);
    std::vector<i64> icart(n, 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            icart[k] = checkedAdd(icart[k], checkedMul(c[i], basis.row(i)[k]));

    std::vector<i64> bestC;
    i64 bestSq = 0;
    std::uint64_t visited = 0;
    while (true) {
        ++visited;
        bool zero = true;
        for (int i = 0; i < n; ++i)
            if (c[i] != 0) { zero = false; break; }
        if (!zero) {
            i64 nsq = 0;
            for (int k = 0; k < n; ++k) nsq = checkedAdd(nsq, checkedMul(icart[k], icart[k]));
            if (bestC.empty() || nsq < bestSq) {
                bestSq = nsq;
                bestC = c;
            }
        }
        int pos = 0;
        while (pos < n) {
            if (c[pos] < boxRadius) {
                ++c[pos];
                for (int k = 0; k < n; ++k) icart[k] = checkedAdd(icart[k], basis.row(pos)[k]);
                break;
            }
            const i64 span = 2 * static_cast<i64>(boxRadius);
            c[pos] = -boxRadius;
            for (int k = 0; k < n; ++k)
                icart[k] = checkedSub(icart[k], checkedMul(span, basis.row(pos)[k]));
            ++pos;
        }
        if (pos == n) break;
    }

    EnumResult result;
    result.shortest = makeLatticeVector(basis, bestC);
    result.lambda1 = std::sqrt(static_cast<double>(bestSq));
    result.nodesVisited = visited;
    return result;
}

} // namespace svplab
