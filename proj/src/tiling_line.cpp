#include "nptile/tiling_line.hpp"

#include "nptile/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nptile::tiling {

namespace {

// sin(pi u) with exact zeros at the integers.
double sin_pi(double u) noexcept {
    const double r = std::fmod(u, 2.0);
    if (r == std::trunc(r)) return 0.0;
    return std::sin(M_PI * r);
}

double sinc(double u) noexcept {
    if (u == 0.0) return 1.0;
    return sin_pi(u) / (M_PI * u);
}

double tent(double t, double half_width) noexcept { return std::max(0.0, 1.0 - std::abs(t) / half_width); }

// (tent_h * tent_h)(t), the cubic B-spline shape supported in [-2h, 2h].
double tent_self_convolution(double t, double h) noexcept {
    const double s = std::abs(t) / h;
    if (s >= 2.0) return 0.0;
    if (s >= 1.0) return h * (2.0 - s) * (2.0 - s) * (2.0 - s) / 6.0;
    return h * (4.0 - 6.0 * s * s + 3.0 * s * s * s) / 6.0;
}

double base_kernel(KernelFamily family, double b, double x) noexcept {
    switch (family) {
        case KernelFamily::Fejer: {
            const double s = sinc(b * x);
            return b * s * s;
        }
        case KernelFamily::Jackson: {
            const double s = sinc(0.5 * b * x);
            const double s2 = s * s;
            return 0.75 * b * s2 * s2;
        }
    }
    return 0.0;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

void check_bandwidth(const Kernel& kernel, double gap_halfwidth) {
    if (!(kernel.bandwidth < gap_halfwidth)) {
        throw Error(ErrorKind::BandwidthExceedsGap, "kernel bandwidth " + fmt(kernel.bandwidth) +
                                                        " is not below the gap half-width " + fmt(gap_halfwidth));
    }
}

}  // namespace

TranslationSet::TranslationSet(CoeffSeq alpha, int window) : alpha_(std::move(alpha)), window_(window) {
    points_.reserve(static_cast<std::size_t>(2 * window + 1));
    for (long n = -window; n <= window; ++n) points_.push_back(point(n));
}

TranslationSet build_lambda(const CoeffSeq& alpha, int window) {
    if (window < alpha.cutoff()) {
        throw Error(ErrorKind::ParamsInvalid, "enumeration window " + std::to_string(window) +
                                                  " is smaller than the perturbation cutoff " + std::to_string(alpha.cutoff()));
    }
    if (!(alpha.max_abs() < 0.5)) {
        throw Error(ErrorKind::PerturbationTooLarge, "max|alpha| = " + fmt(alpha.max_abs()) + " must be below 1/2");
    }
    TranslationSet set(alpha, window);
    const auto& pts = set.points();
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (!(pts[i] > pts[i - 1])) throw Error(ErrorKind::PerturbationTooLarge, "translation set is not increasing");
    }
    return set;
}

int max_points_per_unit_interval(const TranslationSet& lambda) {
    const auto& pts = lambda.points();
    int best = 0;
    std::size_t hi = 0;
    for (std::size_t lo = 0; lo < pts.size(); ++lo) {
        hi = std::max(hi, lo);
        while (hi < pts.size() && pts[hi] < pts[lo] + 1.0) ++hi;
        best = std::max(best, static_cast<int>(hi - lo));
    }
    return best;
}

std::string to_string(KernelFamily family) {
    return family == KernelFamily::Fejer ? "fejer" : "jackson";
}

KernelFamily parse_kernel_family(const std::string& name) {
    if (name == "fejer") return KernelFamily::Fejer;
    if (name == "jackson") return KernelFamily::Jackson;
    throw Error(ErrorKind::ParseError, "unknown kernel family '" + name + "'");
}

double Kernel::operator()(double x) const noexcept {
    if (mix_shift == 0.0) return weight * base_kernel(family, bandwidth, x);
    return 0.5 * weight * (base_kernel(family, bandwidth, x) + base_kernel(family, bandwidth, x - mix_shift));
}

double Kernel::fourier(double t) const noexcept {
    double base = 0.0;
    switch (family) {
        case KernelFamily::Fejer: base = tent(t, bandwidth); break;
        case KernelFamily::Jackson: base = tent_self_convolution(t, 0.5 * bandwidth) * 3.0 / bandwidth; break;
    }
    if (mix_shift != 0.0) base *= 0.5 * (1.0 + std::cos(2.0 * M_PI * mix_shift * t));
    return weight * base;
}

double Kernel::tail_bound(double radius) const noexcept {
    const double r = radius - std::abs(mix_shift) - 1.0;
    if (r <= 0.0) return weight;
    const double b = bandwidth;
    switch (family) {
        // K(u) <= 1 / (pi^2 b u^2); two points per unit length, both sides.
        case KernelFamily::Fejer: return weight * 4.0 / (M_PI * M_PI * b * r);
        // K(u) <= 12 / (pi^4 b^3 u^4)
        case KernelFamily::Jackson: return weight * 16.0 / (std::pow(M_PI, 4) * b * b * b * r * r * r);
    }
    return 0.0;
}

double kernel_eval(const Kernel& kernel, double x) noexcept { return kernel(x); }

TilingSum tiling_sum(const Kernel& kernel, const TranslationSet& lambda, double x, double radius) {
    if (!(radius >= 2.0)) throw Error(ErrorKind::ParamsInvalid, "tiling radius must be at least 2");
    // |alpha| < 1/2, so every lambda(n) within the radius has |n - x| <= radius + 1/2.
    const long lo = static_cast<long>(std::floor(x - radius)) - 1;
    const long hi = static_cast<long>(std::ceil(x + radius)) + 1;
    double sum = 0.0;
    for (long n = lo; n <= hi; ++n) {
        const double d = x - lambda.point(n);
        if (std::abs(d) <= radius) sum += kernel(d);
    }
    return {sum, kernel.tail_bound(radius)};
}

TilingReport tiling_residual(const Kernel& kernel, const TranslationSet& lambda, const XGrid& grid,
                             double gap_halfwidth) {
    check_bandwidth(kernel, gap_halfwidth);
    if (grid.count < 1) throw Error(ErrorKind::ParamsInvalid, "x grid needs at least one point");
    TilingReport report;
    report.grid = grid;
    report.tail_bound = kernel.tail_bound(grid.radius);
    report.residuals.resize(static_cast<std::size_t>(grid.count));
    for (int i = 0; i < grid.count; ++i) {
        const double x = grid.point(i);
        const double r = tiling_sum(kernel, lambda, x, grid.radius).value - 1.0;
        report.residuals[static_cast<std::size_t>(i)] = r;
        if (std::abs(r) > report.sup_residual) {
            report.sup_residual = std::abs(r);
            report.worst_x = x;
        }
    }
    return report;
}

double delta_gap_test(const Kernel& kernel, const TranslationSet& lambda, const XGrid& grid, double gap_halfwidth) {
    return tiling_residual(kernel, lambda, grid, gap_halfwidth).sup_residual;
}

NonPeriodicityCertificate nonperiodicity_certificate(const TranslationSet& lambda) {
    NonPeriodicityCertificate cert;
    const CoeffSeq& alpha = lambda.alpha();
    cert.max_perturbation = alpha.max_abs();
    if (cert.max_perturbation > 0.0) {
        cert.witness = alpha.argmax_abs();
        cert.witness_value = alpha[*cert.witness];
    }

    cert.finite_support = lambda.window() >= alpha.cutoff();
    const auto& pts = lambda.points();
    for (long n = -lambda.window(); n <= lambda.window() && cert.finite_support; ++n) {
        if (std::abs(n) > alpha.cutoff() && pts[static_cast<std::size_t>(n + lambda.window())] != static_cast<double>(n)) {
            cert.finite_support = false;
        }
    }

    const bool small = cert.max_perturbation < 0.5;
    cert.pass = cert.witness.has_value() && cert.finite_support && small;

    std::ostringstream os;
    if (cert.pass) {
        os << "Lambda != Z: lambda(" << *cert.witness << ") = " << *cert.witness << " + " << cert.witness_value
           << ". Lambda agrees with Z outside |n| <= " << alpha.cutoff()
           << " and max|alpha| = " << cert.max_perturbation
           << " < 1/2, so a periodic subset of Lambda must contain points arbitrarily far out, all integers,"
              " and its period must then be an integer; such a subset lies in Z. Lambda is not a finite union"
              " of periodic sets.";
    } else if (!cert.witness) {
        os << "alpha vanishes identically: Lambda = Z, which is periodic.";
    } else if (!cert.finite_support) {
        os << "perturbation is not confined to the stored window; no claim.";
    } else {
        os << "max|alpha| = " << cert.max_perturbation << " >= 1/2; no claim.";
    }
    cert.claim = os.str();
    return cert;
}

std::vector<double> gap_alphabet(const TranslationSet& lambda, int window, double round_tol) {
    if (window < 1 || window > lambda.window()) {
        throw Error(ErrorKind::ParamsInvalid, "alphabet window must lie in [1, W]");
    }
    std::vector<double> diffs;
    diffs.reserve(static_cast<std::size_t>(2 * window));
    for (long n = -window; n < window; ++n) diffs.push_back(lambda.point(n + 1) - lambda.point(n));
    std::sort(diffs.begin(), diffs.end());

    std::vector<double> alphabet;
    for (double d : diffs) {
        if (alphabet.empty() || d - alphabet.back() > round_tol) alphabet.push_back(d);
    }
    return alphabet;
}

}  // namespace nptile::tiling
