#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "svplab/rng.hpp"

namespace svplab {

using i64 = std::int64_t;

// Checked 64-bit ops. Desk-scale inputs never wrap in practice; if they do,
// we want a loud failure, not a silently wrong lattice.
i64 checkedAdd(i64 a, i64 b);
i64 checkedSub(i64 a, i64 b);
i64 checkedMul(i64 a, i64 b);

struct Gso {
    std::vector<std::vector<double>> bstar; // orthogonalized rows
    std::vector<std::vector<double>> mu;    // mu[i][j] for j < i
    std::vector<double> bstarNormSq;        // ||b_i*||^2, all > 0 for a valid basis
};

// Integer row basis with eagerly cached orthogonalization. Immutable after
// construction; reduction ops return new bases.
class LatticeBasis {
public:
    explicit LatticeBasis(std::vector<std::vector<i64>> rows);

    int dim() const { return n_; }
    const std::vector<std::vector<i64>>& rows() const { return rows_; }
    const std::vector<i64>& row(int i) const { return rows_[i]; }
    const Gso& gso() const { return gso_; }
    double maxRowNorm() const { return maxRowNorm_; }
    // log2 |det L|, accumulated from GSO norms so large determinants never
    // overflow an integer product. Bases skewed enough that the smallest GSO
    // norm drowns in double rounding noise report a distorted value; reduce
    // first when the log matters.
    double logDet2() const { return logDet2_; }

private:
    int n_;
    std::vector<std::vector<i64>> rows_;
    Gso gso_;
    double maxRowNorm_;
    double logDet2_;
};

// Lattice point: integer coordinates w.r.t. a basis plus its Cartesian
// embedding. cart entries are exact integers stored in double (checked to
// stay below 2^53), so squared norms of differences stay exact.
struct LatticeVector {
    std::vector<i64> coeffs;
    std::vector<double> cart;
    double normSq = 0.0;
    i64 normSqInt = 0;

    bool isZero() const { return normSqInt == 0; }
    double norm() const;
};

LatticeVector makeLatticeVector(const LatticeBasis& basis, std::vector<i64> coeffs);
LatticeVector zeroVector(int dim);
LatticeVector subVectors(const LatticeVector& a, const LatticeVector& b);
LatticeVector addVectors(const LatticeVector& a, const LatticeVector& b);
LatticeVector negateVector(const LatticeVector& a);

struct PerturbedPoint {
    std::vector<double> x;      // perturbation drawn from a ball
    std::vector<double> vPrime; // x reduced into the fundamental domain, then list-reduced
    LatticeVector latticePart;  // vPrime - x, a lattice vector
};

Gso gramSchmidt(const LatticeBasis& basis);

LatticeBasis lllReduce(const LatticeBasis& basis, double delta = 0.99);

// Same reduction, also returning U with reduced.rows = U * basis.rows.
struct LllResult {
    LatticeBasis basis;
    std::vector<std::vector<i64>> transform;
};
LllResult lllReduceTracked(const LatticeBasis& basis, double delta = 0.99);

// Coordinates of x w.r.t. the basis rows (x need not be a lattice point).
std::vector<double> basisCoordinates(const std::vector<double>& x, const LatticeBasis& basis);

// x minus the floor part of its basis coordinates; all coordinates of the
// result lie in [0, 1). floorsOut, when non-null, receives the subtracted
// integer coordinates (the lattice part of x - result).
std::vector<double> reduceModFundamental(const std::vector<double>& x, const LatticeBasis& basis,
                                         std::vector<i64>* floorsOut = nullptr);

// Uniform sample from the solid n-ball: spherical direction times
// radius * U^(1/n).
std::vector<double> sampleBall(int dim, double radius, Rng& rng);

// Randomized-rounding lattice sampler: nearest-plane walk on a uniform
// target inside a shrunken ball, with the fractional part of each coordinate
// rounded by a Bernoulli draw. Retried until the norm bound holds.
LatticeVector sampleLatticePoint(const LatticeBasis& basis, double bound, Rng& rng);

// (det L)^(1/n) * Gamma(n/2+1)^(1/n) / sqrt(pi)
double gaussianHeuristicLength(const LatticeBasis& basis);

// Text format: line 1 holds n, lines 2..n+1 hold n space-separated integers.
void writeBasisFile(const std::string& path, const LatticeBasis& basis);
LatticeBasis readBasisFile(const std::string& path);

} // namespace svplab
