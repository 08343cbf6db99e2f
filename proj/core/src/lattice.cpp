#include "svplab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace svplab {

namespace {

constexpr double kExactDoubleLimit = 9007199254740992.0; // 2^53

double dotDD(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double dotID(const std::vector<i64>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += static_cast<double>(a[i]) * b[i];
    return s;
}

i64 exactFromDouble(double x, const char* what) {
    if (!(std::abs(x) < kExactDoubleLimit))
        throw std::overflow_error(std::string(what) + ": value exceeds exact double range");
    return static_cast<i64>(std::llround(x));
}

Gso computeGso(const std::vector<std::vector<i64>>& rows) {
    const int n = static_cast<int>(rows.size());
    Gso g;
    g.bstar.assign(n, std::vector<double>(n, 0.0));
    g.mu.assign(n, std::vector<double>(n, 0.0));
    g.bstarNormSq.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) g.bstar[i][k] = static_cast<double>(rows[i][k]);
        for (int j = 0; j < i; ++j) {
            const double m = dotID(rows[i], g.bstar[j]) / g.bstarNormSq[j];
            g.mu[i][j] = m;
            for (int k = 0; k < n; ++k) g.bstar[i][k] -= m * g.bstar[j][k];
        }
        // Catastrophic cancellation on a very skewed (but nonsingular) basis
        // can drive the computed square to <= 0; clamp so logs and square
        // roots stay finite. Rank is decided exactly, not from this value.
        g.bstarNormSq[i] = std::max(dotDD(g.bstar[i], g.bstar[i]), 1e-300);
    }
    return g;
}

std::uint64_t mulModP(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

// Gaussian elimination over GF(p).
int rankModP(const std::vector<std::vector<i64>>& rows, std::uint64_t p) {
    const int n = static_cast<int>(rows.size());
    std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            i64 v = rows[i][k] % static_cast<i64>(p);
            if (v < 0) v += static_cast<i64>(p);
            m[i][k] = static_cast<std::uint64_t>(v);
        }
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int pivot = -1;
        for (int r = rank; r < n; ++r)
            if (m[r][col] != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        // inv = m[rank][col]^(p-2) mod p
        std::uint64_t inv = 1, base = m[rank][col], e = p - 2;
        while (e) {
            if (e & 1) inv = mulModP(inv, base, p);
            base = mulModP(base, base, p);
            e >>= 1;
        }
        for (int r = rank + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            const std::uint64_t f = mulModP(m[r][col], inv, p);
            for (int k = col; k < n; ++k) {
                const std::uint64_t sub = mulModP(f, m[rank][k], p);
                m[r][k] = (m[r][k] + p - sub) % p;
            }
        }
        ++rank;
    }
    return rank;
}

// Exact nonsingularity test: rank deficiency mod p forces p | det, so a
// matrix full-rank over Q fails both checks only if det is a multiple of
// their product > 2^123.
bool fullRankExact(const std::vector<std::vector<i64>>& rows) {
    const int n = static_cast<int>(rows.size());
    if (rankModP(rows, 2305843009213693951ull) == n) return true; // 2^61 - 1
    return rankModP(rows, 9223372036854775783ull) == n;          // 2^63 - 25
}

} // namespace

i64 checkedAdd(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow (add)");
    return r;
}
i64 checkedSub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow (sub)");
    return r;
}
i64 checkedMul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow (mul)");
    return r;
}

LatticeBasis::LatticeBasis(std::vector<std::vector<i64>> rows) : rows_(std::move(rows)) {
    n_ = static_cast<int>(rows_.size());
    if (n_ == 0) throw std::invalid_argument("empty basis");
    for (const auto& r : rows_)
        if (static_cast<int>(r.size()) != n_) throw std::invalid_argument("basis not square");
    if (!fullRankExact(rows_)) throw std::invalid_argument("degenerate basis");
    gso_ = computeGso(rows_);
    double maxSq = 0.0;
    for (int i = 0; i < n_; ++i) {
        double sq = 0.0;
        for (int k = 0; k < n_; ++k) sq += static_cast<double>(rows_[i][k]) * static_cast<double>(rows_[i][k]);
        maxSq = std::max(maxSq, sq);
    }
    maxRowNorm_ = std::sqrt(maxSq);
    logDet2_ = 0.0;
    for (int i = 0; i < n_; ++i) logDet2_ += 0.5 * std::log2(gso_.bstarNormSq[i]);
}

double LatticeVector::norm() const { return std::sqrt(normSq); }

LatticeVector makeLatticeVector(const LatticeBasis& basis, std::vector<i64> coeffs) {
    const int n = basis.dim();
    if (static_cast<int>(coeffs.size()) != n) throw std::invalid_argument("coefficient length mismatch");
    LatticeVector v;
    v.coeffs = std::move(coeffs);
    v.cart.assign(n, 0.0);
    std::vector<i64> icart(n, 0);
    for (int i = 0; i < n; ++i) {
        if (v.coeffs[i] == 0) continue;
        for (int k = 0; k < n; ++k)
            icart[k] = checkedAdd(icart[k], checkedMul(v.coeffs[i], basis.row(i)[k]));
    }
    i64 nsq = 0;
    for (int k = 0; k < n; ++k) {
        if (std::abs(static_cast<double>(icart[k])) >= kExactDoubleLimit)
            throw std::overflow_error("embedding exceeds exact double range");
        v.cart[k] = static_cast<double>(icart[k]);
        nsq = checkedAdd(nsq, checkedMul(icart[k], icart[k]));
    }
    v.normSqInt = nsq;
    v.normSq = static_cast<double>(nsq);
    return v;
}

LatticeVector zeroVector(int dim) {
    LatticeVector v;
    v.coeffs.assign(dim, 0);
    v.cart.assign(dim, 0.0);
    v.normSq = 0.0;
    v.normSqInt = 0;
    return v;
}

namespace {

LatticeVector combine(const LatticeVector& a, const LatticeVector& b, i64 sign) {
    LatticeVector r;
    const size_t n = a.coeffs.size();
    r.coeffs.resize(n);
    r.cart.resize(n);
    i64 nsq = 0;
    for (size_t k = 0; k < n; ++k) {
        r.coeffs[k] = checkedAdd(a.coeffs[k], checkedMul(sign, b.coeffs[k]));
        const i64 c = checkedAdd(exactFromDouble(a.cart[k], "cart"),
                                 checkedMul(sign, exactFromDouble(b.cart[k], "cart")));
        if (std::abs(static_cast<double>(c)) >= kExactDoubleLimit)
            throw std::overflow_error("embedding exceeds exact double range");
        r.cart[k] = static_cast<double>(c);
        nsq = checkedAdd(nsq, checkedMul(c, c));
    }
    r.normSqInt = nsq;
    r.normSq = static_cast<double>(nsq);
    return r;
}

} // namespace

LatticeVector subVectors(const LatticeVector& a, const LatticeVector& b) { return combine(a, b, -1); }
LatticeVector addVectors(const LatticeVector& a, const LatticeVector& b) { return combine(a, b, +1); }
LatticeVector negateVector(const LatticeVector& a) { return combine(zeroVector(static_cast<int>(a.coeffs.size())), a, -1); }

Gso gramSchmidt(const LatticeBasis& basis) { return basis.gso(); }

namespace {

// Working state for LLL. GSO rows are recomputed exactly for the row being
// size-reduced and for both rows of a swap; entries elsewhere stay valid
// because span{b_1..b_j} is unchanged for j outside the touched range.
struct LllState {
    int n;
    double delta;
    std::vector<std::vector<i64>> b;
    std::vector<std::vector<i64>> u; // transform, rows of U
    Gso g;

    LllState(const LatticeBasis& basis, double d) : n(basis.dim()), delta(d), b(basis.rows()) {
        u.assign(n, std::vector<i64>(n, 0));
        for (int i = 0; i < n; ++i) u[i][i] = 1;
        g = computeGso(b);
    }

    void computeGsoRow(int i) {
        for (int k = 0; k < n; ++k) g.bstar[i][k] = static_cast<double>(b[i][k]);
        for (int j = 0; j < i; ++j) {
            const double m = dotID(b[i], g.bstar[j]) / g.bstarNormSq[j];
            g.mu[i][j] = m;
            for (int k = 0; k < n; ++k) g.bstar[i][k] -= m * g.bstar[j][k];
        }
        g.bstarNormSq[i] = dotDD(g.bstar[i], g.bstar[i]);
        // The basis is full rank (checked exactly on construction), so a
        // nonpositive square here means double precision ran out.
        if (!(g.bstarNormSq[i] > 0.0))
            throw std::runtime_error("reduction lost precision: basis too skewed for double GSO");
    }

    void sizeReduceRow(int i) {
        computeGsoRow(i);
        for (int j = i - 1; j >= 0; --j) {
            const i64 q = std::llrint(g.mu[i][j]);
            if (q == 0) continue;
            for (int k = 0; k < n; ++k) {
                b[i][k] = checkedSub(b[i][k], checkedMul(q, b[j][k]));
                u[i][k] = checkedSub(u[i][k], checkedMul(q, u[j][k]));
            }
            const double qd = static_cast<double>(q);
            for (int l = 0; l < j; ++l) g.mu[i][l] -= qd * g.mu[j][l];
            g.mu[i][j] -= qd;
        }
    }

    void swapRows(int k) {
        std::swap(b[k - 1], b[k]);
        std::swap(u[k - 1], u[k]);
        computeGsoRow(k - 1);
        computeGsoRow(k);
        for (int i = k + 1; i < n; ++i) {
            g.mu[i][k - 1] = dotID(b[i], g.bstar[k - 1]) / g.bstarNormSq[k - 1];
            g.mu[i][k] = dotID(b[i], g.bstar[k]) / g.bstarNormSq[k];
        }
    }
};

} // namespace

LllResult lllReduceTracked(const LatticeBasis& basis, double delta) {
    if (!(delta > 0.25 && delta < 1.0)) throw std::invalid_argument("delta outside (0.25, 1)");
    LllState st(basis, delta);
    int k = 1;
    while (k < st.n) {
        st.sizeReduceRow(k);
        const double m = st.g.mu[k][k - 1];
        if (st.g.bstarNormSq[k] >= (delta - m * m) * st.g.bstarNormSq[k - 1]) {
            ++k;
        } else {
            st.swapRows(k);
            k = std::max(k - 1, 1);
        }
    }
    return LllResult{LatticeBasis(std::move(st.b)), std::move(st.u)};
}

LatticeBasis lllReduce(const LatticeBasis& basis, double delta) {
    return lllReduceTracked(basis, delta).basis;
}

std::vector<double> basisCoordinates(const std::vector<double>& x, const LatticeBasis& basis) {
    const int n = basis.dim();
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("dimension mismatch");
    const Gso& g = basis.gso();
    // x = sum a_i b_i*; back-substitute to coordinates w.r.t. the rows.
    std::vector<double> a(n), c(n);
    for (int i = 0; i < n; ++i) a[i] = dotDD(x, g.bstar[i]) / g.bstarNormSq[i];
    for (int i = n - 1; i >= 0; --i) {
        double s = a[i];
        for (int j = i + 1; j < n; ++j) s -= c[j] * g.mu[j][i];
        c[i] = s;
    }
    return c;
}

std::vector<double> reduceModFundamental(const std::vector<double>& x, const LatticeBasis& basis,
                                         std::vector<i64>* floorsOut) {
    const int n = basis.dim();
    const std::vector<double> c = basisCoordinates(x, basis);
    std::vector<double> out = x;
    if (floorsOut) floorsOut->assign(n, 0);
    for (int i = 0; i < n; ++i) {
        // The 1e-9 nudge keeps repeated application stable when a coordinate
        // sits within rounding noise of an integer.
        const i64 f = static_cast<i64>(std::floor(c[i] + 1e-9));
        if (floorsOut) (*floorsOut)[i] = f;
        if (f == 0) continue;
        for (int k = 0; k < n; ++k) out[k] -= static_cast<double>(f) * static_cast<double>(basis.row(i)[k]);
    }
    return out;
}

std::vector<double> sampleBall(int dim, double radius, Rng& rng) {
    if (radius < 0.0) throw std::invalid_argument("negative radius");
    std::vector<double> x(dim, 0.0);
    if (radius == 0.0 || dim == 0) return x;
    double nsq = 0.0;
    do {
        nsq = 0.0;
        for (int i = 0; i < dim; ++i) {
            x[i] = rng.gaussian();
            nsq += x[i] * x[i];
        }
    } while (nsq == 0.0);
    const double scale = radius * std::pow(rng.uniform(), 1.0 / dim) / std::sqrt(nsq);
    for (int i = 0; i < dim; ++i) x[i] *= scale;
    return x;
}

LatticeVector sampleLatticePoint(const LatticeBasis& basis, double bound, Rng& rng) {
    const int n = basis.dim();
    if (!(bound >= basis.maxRowNorm() * (1.0 - 1e-12)))
        throw std::invalid_argument("bound below the longest basis row");
    const Gso& g = basis.gso();
    const double boundSq = bound * bound;
    // Targets live in a shrunken ball so the rounding error, whose scale is
    // set by the GSO norms, usually keeps the result inside the bound.
    const double targetRadius = 0.45 * bound;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<double> t = sampleBall(n, targetRadius, rng);
        std::vector<i64> coeffs(n, 0);
        for (int i = n - 1; i >= 0; --i) {
            const double c = dotDD(t, g.bstar[i]) / g.bstarNormSq[i];
            const double fl = std::floor(c);
            const double frac = c - fl;
            const i64 ci = static_cast<i64>(fl) + (rng.bernoulli(frac) ? 1 : 0);
            coeffs[i] = ci;
            if (ci != 0)
                for (int k = 0; k < n; ++k) t[k] -= static_cast<double>(ci) * static_cast<double>(basis.row(i)[k]);
        }
        LatticeVector v = makeLatticeVector(basis, std::move(coeffs));
        if (v.normSq <= boundSq * (1.0 + 1e-12)) return v;
    }
    throw std::runtime_error("sampler stuck: norm bound missed 1000 times (badly reduced basis?)");
}

double gaussianHeuristicLength(const LatticeBasis& basis) {
    const double n = static_cast<double>(basis.dim());
    const double logDetNat = basis.logDet2() * std::log(2.0);
    return std::exp(logDetNat / n + std::lgamma(n / 2.0 + 1.0) / n - 0.5 * std::log(M_PI));
}

void writeBasisFile(const std::string& path, const LatticeBasis& basis) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << basis.dim() << "\n";
    for (int i = 0; i < basis.dim(); ++i) {
        for (int k = 0; k < basis.dim(); ++k) {
            if (k) out << ' ';
            out << basis.row(i)[k];
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

LatticeBasis readBasisFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open basis file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("basis file empty: " + path);
    int n = 0;
    {
        std::istringstream hs(line);
        std::string tail;
        if (!(hs >> n) || n < 1 || (hs >> tail))
            throw std::invalid_argument("basis file header must be a single dimension: " + path);
    }
    std::vector<std::vector<i64>> rows;
    rows.reserve(n);
    for (int i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw std::invalid_argument("basis file truncated: " + path);
        std::istringstream ls(line);
        std::vector<i64> row;
        i64 v;
        while (ls >> v) row.push_back(v);
        if (!ls.eof()) throw std::invalid_argument("non-integer token in basis file: " + path);
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("ragged row in basis file: " + path);
        rows.push_back(std::move(row));
    }
    return LatticeBasis(std::move(rows));
}

} // namespace svplab
