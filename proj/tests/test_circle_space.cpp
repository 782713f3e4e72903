#include "nptile/circle_space.hpp"
#include "nptile/error.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <thread>

using namespace nptile;
using namespace nptile::circle;

TEST(CircleGrid, RejectsOddOrTinySizes) {
    EXPECT_THROW(CircleGrid(3), Error);
    EXPECT_THROW(CircleGrid(2), Error);
    EXPECT_THROW(CircleGrid(7), Error);
    EXPECT_NO_THROW(CircleGrid(4));
}

TEST(CircleGrid, PointsAreUniformAndMirrorExactly) {
    const CircleGrid grid(10);
    EXPECT_DOUBLE_EQ(grid.point(0), -0.5);
    EXPECT_DOUBLE_EQ(grid.point(5), 0.0);
    for (int j = 0; j < grid.size(); ++j) {
        EXPECT_GE(grid.point(j), -0.5);
        EXPECT_LT(grid.point(j), 0.5);
        if (j > 0) {
            EXPECT_NEAR(grid.point(j) - grid.point(j - 1), 0.1, 1e-15);
            EXPECT_EQ(grid.point(grid.mirror(j)), -grid.point(j));
        }
    }
}

TEST(FourierCoeffs, ConstantFunction) {
    const auto f = CircleFunction::sample(CircleGrid(64), [](double) { return 1.0; });
    const auto c = fourier_coeffs(f, 2);
    const double expect[] = {0, 0, 1, 0, 0};
    for (int n = -2; n <= 2; ++n) EXPECT_NEAR(c[n], expect[n + 2], 1e-15);
}

TEST(FourierCoeffs, SingleHarmonic) {
    const auto f = CircleFunction::sample(CircleGrid(64), [](double t) { return 2.0 * std::cos(2 * M_PI * t); });
    const auto c = fourier_coeffs(f, 1);
    EXPECT_NEAR(c[-1], 1.0, 1e-15);
    EXPECT_NEAR(c[1], 1.0, 1e-15);
    EXPECT_NEAR(c[0], 0.0, 1e-15);
}

TEST(FourierCoeffs, NyquistViolation) {
    const auto f = CircleFunction::zero(CircleGrid(16));
    EXPECT_NO_THROW(fourier_coeffs(f, 7));
    try {
        fourier_coeffs(f, 8);
        FAIL() << "expected NyquistViolation";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NyquistViolation);
    }
    EXPECT_THROW(synthesize(CoeffSeq(8), CircleGrid(16)), Error);
}

TEST(FourierCoeffs, SymmetryViolation) {
    // i sin(2 pi t) is odd and imaginary: f(-t) = -f(t) = conj f(t) holds, so
    // it is in X.  i cos(2 pi t) is not, and gives imaginary coefficients.
    const CircleGrid grid(32);
    const auto ok = CircleFunction::sample(grid, [](double t) { return cplx(0, std::sin(2 * M_PI * t)); });
    EXPECT_NO_THROW(fourier_coeffs(ok, 3));
    const auto bad = CircleFunction::sample(grid, [](double t) { return cplx(0, 1e-3 * std::cos(2 * M_PI * t)); });
    try {
        fourier_coeffs(bad, 3);
        FAIL() << "expected SymmetryViolation";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SymmetryViolation);
    }
}

TEST(FourierCoeffs, MatchesDirectQuadratureOnRandomTrigPolynomials) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    const CircleGrid grid(128);
    for (int trial = 0; trial < 20; ++trial) {
        CoeffSeq c(8);
        for (int n = -8; n <= 8; ++n) c[n] = gauss(rng);
        const auto f = synthesize(c, grid);

        const auto production = fourier_coeffs(f, 8);
        const auto direct = oracle::direct_coeffs(f, 8);
        for (int n = -8; n <= 8; ++n) {
            EXPECT_NEAR(production[n], c[n], 1e-12);
            EXPECT_NEAR(production[n], direct[static_cast<std::size_t>(n + 8)].real(), 1e-12);
            EXPECT_NEAR(direct[static_cast<std::size_t>(n + 8)].imag(), 0.0, 1e-12);
        }
    }
}

TEST(FourierCoeffs, EndpointIsTreatedAsTrapezoidPair) {
    // A non-periodic element of X: f(t) = i t.  Exact coefficients of i t on I
    // are (-1)^{n+1} / (2 pi n) for n != 0; the trapezoid rule with the averaged
    // endpoint matches the oracle quadrature and is real.
    const CircleGrid grid(256);
    const auto f = CircleFunction::sample(grid, [](double t) { return cplx(0, t); });
    const auto c = fourier_coeffs(f, 10);
    const auto direct = oracle::direct_coeffs(f, 10);
    for (int n = -10; n <= 10; ++n) EXPECT_NEAR(c[n], direct[static_cast<std::size_t>(n + 10)].real(), 1e-14);
    EXPECT_NEAR(c[3], 1.0 / (6 * M_PI), 1e-3);
}

TEST(Synthesize, Examples) {
    CoeffSeq dc(0);
    dc[0] = 1.0;
    const auto one = synthesize(dc, CircleGrid(8));
    for (const auto& v : one.samples()) EXPECT_NEAR(std::abs(v - 1.0), 0.0, 1e-15);

    CoeffSeq cos2(1);
    cos2[-1] = cos2[1] = 1.0;
    EXPECT_NEAR(std::abs(evaluate(cos2, 0.0) - 2.0), 0.0, 1e-15);
    const auto s = synthesize(cos2, CircleGrid(8));
    EXPECT_NEAR(std::abs(s[4] - 2.0), 0.0, 1e-15);  // t = 0
}

TEST(Synthesize, RoundTripAndExactHermitianSymmetry) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1, 1);
    const CircleGrid grid(96);
    for (int trial = 0; trial < 50; ++trial) {
        const int cutoff = 1 + trial % 40;
        CoeffSeq c(cutoff);
        for (int n = -cutoff; n <= cutoff; ++n) c[n] = u(rng);
        const auto f = synthesize(c, grid);
        EXPECT_EQ(f.symmetry_defect(), 0.0);
        const auto back = fourier_coeffs(f, cutoff);
        for (int n = -cutoff; n <= cutoff; ++n) EXPECT_NEAR(back[n], c[n], 1e-12);
        // Parseval: sum c^2 <= ||f||^2
        EXPECT_LE(back.sum_of_squares(), sup_norm(f) * sup_norm(f) + kNumTol);
        // and the synthesized samples agree with direct evaluation
        for (int j = 0; j < grid.size(); j += 7) EXPECT_NEAR(std::abs(f[j] - evaluate(c, grid.point(j))), 0.0, 1e-12);
    }
}

TEST(SupNorm, Examples) {
    EXPECT_DOUBLE_EQ(sup_norm(CircleFunction::sample(CircleGrid(16), [](double) { return 1.0; })), 1.0);
    EXPECT_NEAR(sup_norm(CircleFunction::sample(CircleGrid(16), [](double t) { return 2 * std::cos(2 * M_PI * t); })), 2.0,
                1e-15);
}

TEST(SupNorm, GridRefinementStaysWithinBernsteinBound) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss;
    const int degree = 12;
    const CircleGrid coarse(64), fine(128), dense(64 * 16);
    for (int trial = 0; trial < 20; ++trial) {
        CoeffSeq c(degree);
        for (int n = -degree; n <= degree; ++n) c[n] = gauss(rng);
        const auto fc = synthesize(c, coarse);
        const double true_sup = oracle::grid_sup(synthesize(c, dense));
        const double s_coarse = sup_norm(fc);
        const double s_fine = sup_norm(synthesize(c, fine));
        const double slack = M_PI * degree / coarse.size();
        EXPECT_LE(s_coarse, true_sup * (1 + 1e-12));
        EXPECT_GE(s_coarse, true_sup * (1 - slack));
        EXPECT_LE(std::abs(s_fine - s_coarse), slack * true_sup);
        EXPECT_GE(sup_norm_upper_bound(fc, degree), true_sup * (1 - 1e-12));
    }
}

TEST(CircleSpace, ConcurrentTransformsAgree) {
    CoeffSeq c(20);
    for (int n = -20; n <= 20; ++n) c[n] = 1.0 / (1 + n * n);
    const CircleGrid grid(512);
    const auto reference = synthesize(c, grid);
    std::vector<std::thread> threads;
    std::vector<int> ok(8, 0);
    for (int i = 0; i < 8; ++i) {
        threads.emplace_back([&, i] {
            bool same = true;
            for (int k = 0; k < 20; ++k) {
                const auto f = synthesize(c, CircleGrid(512 + 2 * (k % 3)));
                if (f.grid().size() == 512) same = same && sup_distance(f, reference) == 0.0;
                const auto back = fourier_coeffs(f, 20);
                same = same && std::abs(back[5] - c[5]) < 1e-14;
            }
            ok[static_cast<std::size_t>(i)] = same;
        });
    }
    for (auto& t : threads) t.join();
    for (int v : ok) EXPECT_TRUE(v);
}
