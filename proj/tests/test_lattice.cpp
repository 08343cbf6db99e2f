#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "svplab/lattice.hpp"
#include "test_util.hpp"

using namespace svplab;
using testutil::identity;
using testutil::makeBasis;
using testutil::randomSmallBasis;

TEST_CASE("checked arithmetic") {
    CHECK(checkedAdd(3, 4) == 7);
    CHECK(checkedSub(3, 4) == -1);
    CHECK(checkedMul(-3, 4) == -12);
    const i64 big = std::numeric_limits<i64>::max();
    CHECK_THROWS_AS(checkedAdd(big, 1), std::overflow_error);
    CHECK_THROWS_AS(checkedSub(std::numeric_limits<i64>::min(), 1), std::overflow_error);
    CHECK_THROWS_AS(checkedMul(big / 2, 3), std::overflow_error);
}

TEST_CASE("basis validation") {
    CHECK_THROWS_AS(makeBasis({}), std::invalid_argument);
    CHECK_THROWS_AS(makeBasis({{1, 2}, {3}}), std::invalid_argument);
    CHECK_THROWS_AS(makeBasis({{1, 2}, {2, 4}}), std::invalid_argument);
    // Dependency only visible through exact arithmetic: row2 = row0 + row1.
    CHECK_THROWS_AS(makeBasis({{1000003, 7, 1}, {9, 1000003, 2}, {1000012, 1000010, 3}}),
                    std::invalid_argument);
    CHECK_NOTHROW(makeBasis({{4, 1}, {1, 1}}));
}

TEST_CASE("gram-schmidt reconstruction and orthogonality") {
    Rng rng(101);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(5));
        LatticeBasis b = randomSmallBasis(n, rng);
        const Gso& g = gramSchmidt(b);
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) {
                double rebuilt = g.bstar[i][k];
                for (int j = 0; j < i; ++j) rebuilt += g.mu[i][j] * g.bstar[j][k];
                CHECK(rebuilt == doctest::Approx(static_cast<double>(b.row(i)[k])).epsilon(1e-9));
            }
            for (int j = 0; j < i; ++j) {
                double dot = 0.0;
                for (int k = 0; k < n; ++k) dot += g.bstar[i][k] * g.bstar[j][k];
                CHECK(std::abs(dot) < 1e-6);
            }
            CHECK(g.bstarNormSq[i] > 0.0);
        }
    }
}

TEST_CASE("lattice vector arithmetic is exact") {
    LatticeBasis b = makeBasis({{4, 1}, {1, 1}});
    LatticeVector v = makeLatticeVector(b, {2, -1});
    CHECK(v.cart[0] == 7.0);
    CHECK(v.cart[1] == 1.0);
    CHECK(v.normSqInt == 50);
    CHECK(v.normSq == 50.0);
    CHECK(!v.isZero());

    LatticeVector w = makeLatticeVector(b, {1, 0});
    LatticeVector d = subVectors(v, w);
    CHECK(d.coeffs == std::vector<i64>{1, -1});
    CHECK(d.cart[0] == 3.0);
    CHECK(d.normSqInt == 9);
    LatticeVector s = addVectors(d, w);
    CHECK(s.coeffs == v.coeffs);
    CHECK(s.normSqInt == v.normSqInt);
    LatticeVector neg = negateVector(v);
    CHECK(neg.cart[0] == -7.0);
    CHECK(neg.normSqInt == 50);

    CHECK(zeroVector(3).isZero());
    CHECK_THROWS_AS(makeLatticeVector(b, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("lll on the 2d example") {
    LllResult r = lllReduceTracked(makeBasis({{4, 1}, {1, 1}}));
    CHECK(r.basis.row(0) == std::vector<i64>{1, 1});
    CHECK(r.basis.row(1) == std::vector<i64>{2, -1});
    CHECK(r.transform[0] == std::vector<i64>{0, 1});
    CHECK(r.transform[1] == std::vector<i64>{1, -2});
}

TEST_CASE("lll post-conditions") {
    Rng rng(77);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(6));
        LatticeBasis input = randomSmallBasis(n, rng);
        const double delta = 0.99;
        LllResult r = lllReduceTracked(input, delta);
        const Gso& g = gramSchmidt(r.basis);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) CHECK(std::abs(g.mu[i][j]) <= 0.5 + 1e-9);
        for (int k = 1; k < n; ++k) {
            const double m = g.mu[k][k - 1];
            CHECK(g.bstarNormSq[k] + m * m * g.bstarNormSq[k - 1] >=
                  (delta - 1e-9) * g.bstarNormSq[k - 1]);
        }
        // transform rows map input rows onto output rows exactly
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                i64 acc = 0;
                for (int j = 0; j < n; ++j)
                    acc = checkedAdd(acc, checkedMul(r.transform[i][j], input.row(j)[k]));
                CHECK(acc == r.basis.row(i)[k]);
            }
        CHECK(r.basis.logDet2() ==
              doctest::Approx(input.logDet2()).epsilon(1e-6));
    }
    CHECK_THROWS_AS(lllReduce(identity(2), 0.2), std::invalid_argument);
    CHECK_THROWS_AS(lllReduce(identity(2), 1.0), std::invalid_argument);
}

TEST_CASE("basis coordinates invert the embedding") {
    Rng rng(5);
    LatticeBasis b = randomSmallBasis(5, rng);
    std::vector<i64> coeffs{3, -2, 0, 1, -4};
    LatticeVector v = makeLatticeVector(b, coeffs);
    std::vector<double> c = basisCoordinates(v.cart, b);
    for (int i = 0; i < 5; ++i) CHECK(c[i] == doctest::Approx(static_cast<double>(coeffs[i])).epsilon(1e-9));
    CHECK_THROWS_AS(basisCoordinates({1.0, 2.0}, b), std::invalid_argument);
}

TEST_CASE("fundamental domain reduction") {
    Rng rng(17);
    LatticeBasis b = lllReduce(randomSmallBasis(4, rng));
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> x(4);
        for (double& xi : x) xi = (rng.uniform() - 0.5) * 40.0;
        std::vector<i64> floors;
        std::vector<double> red = reduceModFundamental(x, b, &floors);

        std::vector<double> c = basisCoordinates(red, b);
        for (double ci : c) {
            CHECK(ci >= -1e-6);
            CHECK(ci < 1.0 + 1e-6);
        }
        // x - reduced equals the integer combination reported in floors
        for (int k = 0; k < 4; ++k) {
            double lat = 0.0;
            for (int i = 0; i < 4; ++i) lat += static_cast<double>(floors[i]) * static_cast<double>(b.row(i)[k]);
            CHECK(x[k] - red[k] == doctest::Approx(lat).epsilon(1e-9));
        }
        // idempotence
        std::vector<double> red2 = reduceModFundamental(red, b);
        for (int k = 0; k < 4; ++k) CHECK(std::abs(red2[k] - red[k]) < 1e-9);
    }
}

TEST_CASE("ball sampler distribution") {
    Rng rng(23);
    CHECK_THROWS_AS(sampleBall(3, -1.0, rng), std::invalid_argument);
    for (double v : sampleBall(3, 0.0, rng)) CHECK(v == 0.0);

    const int dim = 5, m = 10000;
    const double radius = 2.5;
    std::vector<double> radii;
    radii.reserve(m);
    for (int i = 0; i < m; ++i) {
        std::vector<double> x = sampleBall(dim, radius, rng);
        double sq = 0.0;
        for (double xi : x) sq += xi * xi;
        CHECK(sq <= radius * radius * (1.0 + 1e-12));
        radii.push_back(std::sqrt(sq) / radius);
    }
    std::sort(radii.begin(), radii.end());
    // KS distance against the radial CDF r^dim
    double ks = 0.0;
    for (int i = 0; i < m; ++i) {
        const double cdf = std::pow(radii[i], dim);
        ks = std::max(ks, std::abs(cdf - static_cast<double>(i) / m));
        ks = std::max(ks, std::abs(cdf - static_cast<double>(i + 1) / m));
    }
    CHECK(ks < 0.02);
}

TEST_CASE("lattice point sampler stays in the requested ball") {
    LatticeBasis b = identity(4);
    Rng rng(29);
    bool sawNonZero = false;
    for (int i = 0; i < 500; ++i) {
        LatticeVector v = sampleLatticePoint(b, 1.5, rng);
        CHECK(v.normSqInt <= 2); // integer points inside radius 1.5
        for (i64 c : v.coeffs) CHECK(std::abs(c) <= 1);
        sawNonZero = sawNonZero || !v.isZero();
    }
    CHECK(sawNonZero);
    CHECK_THROWS_AS(sampleLatticePoint(b, 0.5, rng), std::invalid_argument);

    Rng a(99), c(99);
    LatticeVector va = sampleLatticePoint(b, 3.0, a);
    LatticeVector vc = sampleLatticePoint(b, 3.0, c);
    CHECK(va.coeffs == vc.coeffs);
}

TEST_CASE("gaussian heuristic closed forms") {
    CHECK(gaussianHeuristicLength(makeBasis({{5}})) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(gaussianHeuristicLength(identity(2)) ==
          doctest::Approx(0.5641895835477563).epsilon(1e-12));
    CHECK(gaussianHeuristicLength(makeBasis({{4, 0}, {0, 4}})) ==
          doctest::Approx(4.0 * 0.5641895835477563).epsilon(1e-12));
}

TEST_CASE("basis file io") {
    const std::string path = "/tmp/svplab_test_basis.txt";
    LatticeBasis b = makeBasis({{4, 1}, {1, 1}});
    writeBasisFile(path, b);
    LatticeBasis r = readBasisFile(path);
    CHECK(r.rows() == b.rows());

    std::ofstream bad(path);
    bad << "2\n1 2\n3\n";
    bad.close();
    CHECK_THROWS_AS(readBasisFile(path), std::invalid_argument);
    std::ofstream bad2(path);
    bad2 << "2\n1 2\n3 x\n";
    bad2.close();
    CHECK_THROWS_AS(readBasisFile(path), std::invalid_argument);
    CHECK_THROWS_AS(readBasisFile("/tmp/svplab_does_not_exist.txt"), std::invalid_argument);
    std::remove(path.c_str());
}
