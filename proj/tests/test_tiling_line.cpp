#include "nptile/error.hpp"
#include "nptile/kargaev.hpp"
#include "nptile/tiling_line.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace nptile;
using namespace nptile::tiling;
using nptile::circle::CoeffSeq;

namespace {

const CoeffSeq& reference_alpha() {
    static const CoeffSeq alpha = [] {
        kargaev::SolverParams p;
        return kargaev::alpha_sequence(kargaev::solve_fixed_point(kargaev::make_target_g(p, 0.004), p));
    }();
    return alpha;
}

const TranslationSet& reference_lambda() {
    static const TranslationSet set = build_lambda(reference_alpha(), 2048);
    return set;
}

TranslationSet integers(int window) { return build_lambda(CoeffSeq(0), window); }

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no nptile::Error thrown";
    return ErrorKind::ParseError;
}

// int K(x) cos(2 pi t x) dx over |x| <= reach / b, about four panels per
// period of the fastest oscillation.
double numeric_fourier(const Kernel& k, double t, double reach) {
    const double hi = reach / k.bandwidth;
    const long panels = static_cast<long>(std::ceil(8 * hi * std::max(k.bandwidth, std::abs(t))));
    return oracle::gauss_legendre([&](double x) { return k(x) * std::cos(2 * M_PI * t * x); }, -hi, hi, panels);
}

}  // namespace

TEST(BuildLambda, Examples) {
    const auto z = integers(5);
    ASSERT_EQ(z.points().size(), 11U);
    for (int n = -5; n <= 5; ++n) EXPECT_EQ(z.points()[static_cast<std::size_t>(n + 5)], n);

    CoeffSeq alpha(2);
    alpha[0] = 0.25;
    alpha[-2] = -0.1;
    const auto set = build_lambda(alpha, 4);
    EXPECT_EQ(set.point(0), 0.25);
    EXPECT_EQ(set.point(-2), -2.1);
    EXPECT_EQ(set.point(3), 3.0);
    EXPECT_EQ(set.point(1000000), 1000000.0);
    EXPECT_TRUE(std::is_sorted(set.points().begin(), set.points().end()));
}

TEST(BuildLambda, Errors) {
    CoeffSeq big(1);
    big[1] = 0.5;
    EXPECT_EQ(kind_of([&] { build_lambda(big, 4); }), ErrorKind::PerturbationTooLarge);
    big[1] = -0.7;
    EXPECT_EQ(kind_of([&] { build_lambda(big, 4); }), ErrorKind::PerturbationTooLarge);
    EXPECT_EQ(kind_of([&] { build_lambda(CoeffSeq(8), 4); }), ErrorKind::ParamsInvalid);
}

TEST(BuildLambda, Density) {
    EXPECT_EQ(max_points_per_unit_interval(integers(50)), 1);
    EXPECT_LE(max_points_per_unit_interval(reference_lambda()), 2);
}

TEST(Kernel, FamilyNames) {
    EXPECT_EQ(parse_kernel_family("fejer"), KernelFamily::Fejer);
    EXPECT_EQ(parse_kernel_family("jackson"), KernelFamily::Jackson);
    EXPECT_EQ(to_string(KernelFamily::Jackson), "jackson");
    EXPECT_EQ(kind_of([] { parse_kernel_family("gauss"); }), ErrorKind::ParseError);
}

TEST(Kernel, PointValues) {
    const Kernel fejer{KernelFamily::Fejer, 0.25};
    EXPECT_DOUBLE_EQ(fejer(0.0), 0.25);
    EXPECT_EQ(fejer(4.0), 0.0);
    EXPECT_EQ(fejer(-8.0), 0.0);
    EXPECT_NEAR(fejer(2.0), 0.25 * 4 / (M_PI * M_PI), 1e-16);

    const Kernel jackson{KernelFamily::Jackson, 0.25};
    EXPECT_DOUBLE_EQ(jackson(0.0), 0.1875);
    EXPECT_EQ(jackson(8.0), 0.0);
    EXPECT_EQ(kernel_eval(jackson, 3.0), jackson(3.0));

    const Kernel doubled{KernelFamily::Fejer, 0.25, 2.0};
    EXPECT_DOUBLE_EQ(doubled(1.3), 2 * fejer(1.3));
}

TEST(Kernel, Nonnegative) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1e4, 1e4);
    for (auto fam : {KernelFamily::Fejer, KernelFamily::Jackson}) {
        const Kernel k{fam, 0.08};
        const Kernel mixed{fam, 0.08, 1.0, 1.0 / 0.16};
        for (int i = 0; i < 10000; ++i) {
            const double x = u(rng);
            EXPECT_GE(k(x), 0.0);
            EXPECT_GT(mixed(x), 0.0);
        }
    }
}

TEST(Kernel, FourierClosedForm) {
    for (auto fam : {KernelFamily::Fejer, KernelFamily::Jackson}) {
        const Kernel k{fam, 0.08};
        EXPECT_DOUBLE_EQ(k.fourier(0.0), 1.0);
        EXPECT_EQ(k.fourier(0.08), 0.0);
        EXPECT_EQ(k.fourier(-0.2), 0.0);
        EXPECT_GT(k.fourier(0.07), 0.0);
    }
    EXPECT_DOUBLE_EQ(Kernel({KernelFamily::Fejer, 0.08}).fourier(0.04), 0.5);
}

TEST(Kernel, QuadratureNormalization) {
    // Over |x| <= 1e4 / b the Fejer kernel misses the tail int_{|u|>R} sinc^2
    // = 1 / (pi^2 R) + O(R^-3); the Jackson tail is O(R^-3).
    const double reach = 1e4;
    const Kernel fejer{KernelFamily::Fejer, 0.08};
    const Kernel jackson{KernelFamily::Jackson, 0.08};
    EXPECT_NEAR(numeric_fourier(fejer, 0.0, reach), 1.0 - 1.0 / (M_PI * M_PI * reach), 1e-6);
    EXPECT_NEAR(numeric_fourier(jackson, 0.0, reach), 1.0, 1e-9);
}

TEST(Kernel, NumericTransformMatchesClosedForm) {
    const double reach = 2e3;
    for (auto fam : {KernelFamily::Fejer, KernelFamily::Jackson}) {
        const Kernel k{fam, 0.08};
        const double tol = fam == KernelFamily::Fejer ? 1e-4 : 1e-8;
        for (double t : {0.01, 0.03, 0.06, 0.09, 0.12, 0.16, 0.3}) {
            EXPECT_NEAR(numeric_fourier(k, t, reach), k.fourier(t), tol) << to_string(fam) << " t = " << t;
        }
    }
}

TEST(Kernel, TailBoundDominatesTruncation) {
    const auto& lambda = reference_lambda();
    for (auto fam : {KernelFamily::Fejer, KernelFamily::Jackson}) {
        const Kernel k{fam, 0.08};
        for (double x : {-37.5, 0.0, 12.25}) {
            const auto near = tiling_sum(k, lambda, x, 200.0);
            const auto far = tiling_sum(k, lambda, x, 2e4);
            EXPECT_LE(far.value - near.value, near.tail_bound);
            EXPECT_GE(far.value, near.value);
        }
    }
}

TEST(TilingSum, RadiusMustBeAtLeastTwo) {
    EXPECT_EQ(kind_of([] { tiling_sum(Kernel{}, integers(4), 0.0, 1.5); }), ErrorKind::ParamsInvalid);
}

TEST(TilingSum, IntegersTileByPoisson) {
    // For b < 1 only the k = 0 term of sum_k K^(k) e^{2 pi i k x} survives.
    const auto z = integers(10);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-50, 50);
    for (auto fam : {KernelFamily::Fejer, KernelFamily::Jackson}) {
        for (double shift : {0.0, 1.0 / 0.16}) {
            const Kernel k{fam, 0.08, 1.0, shift};
            for (int i = 0; i < 50; ++i) {
                const auto s = tiling_sum(k, z, u(rng), 1e4);
                EXPECT_LE(std::abs(s.value - 1.0), s.tail_bound);
            }
        }
    }
}

TEST(TilingSum, RadiusDoublingIsWithinTail) {
    const auto& lambda = reference_lambda();
    const Kernel k{KernelFamily::Fejer, 0.08};
    const auto r1 = tiling_sum(k, lambda, 3.3, 1e3);
    const auto r2 = tiling_sum(k, lambda, 3.3, 2e3);
    EXPECT_LE(std::abs(r2.value - r1.value), r1.tail_bound);
}

TEST(TilingResidual, ReferenceSetTilesAtLevelOne) {
    const auto report = tiling_residual(Kernel{KernelFamily::Fejer, 0.08}, reference_lambda(), XGrid{}, 0.1);
    EXPECT_LE(report.sup_residual, 1e-3);
    EXPECT_LE(report.sup_residual, report.tail_bound);
    EXPECT_EQ(report.residuals.size(), 4001U);
    EXPECT_LE(std::abs(report.worst_x), 100.0);
}

TEST(TilingResidual, WeightTwoKernelIsOffByOne) {
    const XGrid grid{401, 100.0, 1e4};
    const auto report = tiling_residual(Kernel{KernelFamily::Fejer, 0.08, 2.0}, reference_lambda(), grid, 0.1);
    EXPECT_NEAR(report.sup_residual, 1.0, 2e-3);
}

TEST(TilingResidual, BandwidthMustBeInsideTheGap) {
    EXPECT_EQ(kind_of([] { tiling_residual(Kernel{KernelFamily::Fejer, 0.1}, integers(4), XGrid{}, 0.1); }),
              ErrorKind::BandwidthExceedsGap);
    EXPECT_EQ(kind_of([] { delta_gap_test(Kernel{KernelFamily::Jackson, 0.2}, integers(4), XGrid{}, 0.1); }),
              ErrorKind::BandwidthExceedsGap);
}

TEST(DeltaGapTest, JacksonKernelOnReferenceSet) {
    const XGrid grid{2001, 100.0, 1e3};
    EXPECT_LE(delta_gap_test(Kernel{KernelFamily::Jackson, 0.05}, reference_lambda(), grid, 0.1), 1e-5);
}

TEST(DeltaGapTest, DetectsABrokenGap) {
    // One point moved by 0.3 leaves a bump of size K(x) ~ b near the origin.
    CoeffSeq alpha(0);
    alpha[0] = 0.3;
    const XGrid grid{201, 10.0, 1e3};
    EXPECT_GT(delta_gap_test(Kernel{KernelFamily::Jackson, 0.05}, build_lambda(alpha, 16), grid, 0.1), 1e-4);
}

TEST(Certificate, IntegersAreNotCertified) {
    const auto cert = nonperiodicity_certificate(integers(8));
    EXPECT_FALSE(cert.pass);
    EXPECT_FALSE(cert.witness.has_value());
    EXPECT_NE(cert.claim.find("periodic"), std::string::npos);
}

TEST(Certificate, ReferenceSetIsCertified) {
    const auto cert = nonperiodicity_certificate(reference_lambda());
    EXPECT_TRUE(cert.pass);
    ASSERT_TRUE(cert.witness.has_value());
    EXPECT_EQ(*cert.witness, 0);
    EXPECT_NE(cert.witness_value, 0.0);
    EXPECT_TRUE(cert.finite_support);
    EXPECT_LT(cert.max_perturbation, 0.5);
}

TEST(Certificate, LargePerturbationIsRejected) {
    CoeffSeq alpha(1);
    alpha[1] = 0.6;
    const auto cert = nonperiodicity_certificate(TranslationSet(alpha, 4));
    EXPECT_FALSE(cert.pass);
    EXPECT_NE(cert.claim.find("no claim"), std::string::npos);
}

TEST(GapAlphabet, SinglePerturbation) {
    CoeffSeq alpha(0);
    alpha[0] = 0.3;
    const auto letters = gap_alphabet(build_lambda(alpha, 10), 10, 1e-9);
    ASSERT_EQ(letters.size(), 3U);
    EXPECT_NEAR(letters[0], 0.7, 1e-15);
    EXPECT_EQ(letters[1], 1.0);
    EXPECT_NEAR(letters[2], 1.3, 1e-15);
    EXPECT_EQ(gap_alphabet(integers(10), 10, 1e-9), std::vector<double>{1.0});
}

TEST(GapAlphabet, GrowsWithTheWindow) {
    const auto& lambda = reference_lambda();
    std::size_t prev = 0;
    for (int w : {64, 128, 256}) {
        const auto letters = gap_alphabet(lambda, w, 1e-9);
        EXPECT_GT(letters.size(), prev) << "window " << w;
        prev = letters.size();
    }
    EXPECT_EQ(kind_of([&] { gap_alphabet(lambda, 4096, 1e-9); }), ErrorKind::ParamsInvalid);
}
