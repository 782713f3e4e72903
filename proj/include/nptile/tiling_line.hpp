#pragma once

// Perturbed-integer translation sets Lambda = {n + alpha(n)} and bandlimited
// kernels used to certify that they tile the line at level one.

#include "nptile/circle_space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nptile::tiling {

using circle::CoeffSeq;

/// lambda(n) = n + alpha(n), with alpha(n) = 0 for |n| > N.  Points are
/// materialized for |n| <= W; point(n) answers for any n.
class TranslationSet {
public:
    TranslationSet(CoeffSeq alpha, int window);

    const CoeffSeq& alpha() const noexcept { return alpha_; }
    int window() const noexcept { return window_; }

    double point(long n) const noexcept {
        const long cut = alpha_.cutoff();
        return static_cast<double>(n) + ((n < -cut || n > cut) ? 0.0 : alpha_[static_cast<int>(n)]);
    }

    /// Points for n = -W..W in increasing order.
    const std::vector<double>& points() const noexcept { return points_; }

private:
    CoeffSeq alpha_;
    int window_;
    std::vector<double> points_;
};

/// Throws PerturbationTooLarge unless max|alpha| < 1/2, and ParamsInvalid if W < N.
TranslationSet build_lambda(const CoeffSeq& alpha, int window);

/// Largest number of points in any half-open unit interval [x, x+1), scanned
/// exhaustively over the materialized window.
int max_points_per_unit_interval(const TranslationSet& lambda);

enum class KernelFamily { Fejer, Jackson };

std::string to_string(KernelFamily family);
KernelFamily parse_kernel_family(const std::string& name);

/// Nonnegative kernel with integral `weight` whose Fourier transform is
/// supported in [-b, b].
///   fejer:   b sinc^2(b x),          K^(t) = max(0, 1 - |t|/b)
///   jackson: (3b/4) sinc^4(b x / 2), K^(t) = (tent_{b/2} * tent_{b/2})(t) / (b/3)
/// A nonzero `mix_shift` s replaces K by (K(x) + K(x - s)) / 2, which is
/// strictly positive for s = 1/(2b) and keeps the same Fourier support.
struct Kernel {
    KernelFamily family = KernelFamily::Fejer;
    double bandwidth = 0.08;
    double weight = 1.0;
    double mix_shift = 0.0;

    double operator()(double x) const noexcept;

    /// Closed-form K^(t) (real part; the mixed kernel picks up a phase).
    double fourier(double t) const noexcept;

    /// Bound on sum_{|lambda - x| > r} K(x - lambda) for sets with at most two
    /// points per unit interval.
    double tail_bound(double radius) const noexcept;
};

double kernel_eval(const Kernel& kernel, double x) noexcept;

struct TilingSum {
    double value = 0.0;
    double tail_bound = 0.0;
};

/// Sum of K(x - lambda) over |lambda - x| <= radius.  Requires radius >= 2.
TilingSum tiling_sum(const Kernel& kernel, const TranslationSet& lambda, double x, double radius);

/// Uniform evaluation grid: `count` points spanning [-span, span], and the
/// truncation radius of each tiling sum.
struct XGrid {
    int count = 4001;
    double span = 100.0;
    double radius = 1e4;

    double point(int i) const noexcept {
        return count == 1 ? 0.0 : -span + 2.0 * span * i / (count - 1);
    }
};

struct TilingReport {
    double sup_residual = 0.0;  // max_x |sum K(x - lambda) - 1|
    double tail_bound = 0.0;
    double worst_x = 0.0;
    XGrid grid;
    std::vector<double> residuals;  // signed sum - 1 at each grid point
};

/// Level-one tiling residual over the grid.  Throws BandwidthExceedsGap if
/// the kernel bandwidth is not below `gap_halfwidth`.
TilingReport tiling_residual(const Kernel& kernel, const TranslationSet& lambda, const XGrid& grid,
                             double gap_halfwidth);

/// Numerical witness that delta_Lambda^ = delta_0 on (-a, a): the same
/// residual, meant to be run with a different kernel family than the tiling
/// certificate.  Throws BandwidthExceedsGap.
double delta_gap_test(const Kernel& kernel, const TranslationSet& lambda, const XGrid& grid,
                      double gap_halfwidth);

struct NonPeriodicityCertificate {
    bool pass = false;
    std::optional<int> witness;    // some n with alpha(n) != 0
    double witness_value = 0.0;
    bool finite_support = false;   // lambda(n) = n for N < |n| <= W
    double max_perturbation = 0.0;
    std::string claim;
};

NonPeriodicityCertificate nonperiodicity_certificate(const TranslationSet& lambda);

/// Distinct successive differences lambda(n+1) - lambda(n), -window <= n < window,
/// merged when closer than round_tol.  Sorted ascending.
std::vector<double> gap_alphabet(const TranslationSet& lambda, int window, double round_tol);

}  // namespace nptile::tiling
