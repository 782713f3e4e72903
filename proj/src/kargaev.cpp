#include "nptile/kargaev.hpp"

#include "nptile/error.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>
#include <string>

namespace nptile::kargaev {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
// Upper limit on Taylor terms in apply_R_coeffs; only reached for inputs far
// outside the contraction regime.
constexpr int kMaxTaylorTerms = 400;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

void SolverParams::validate() const {
    if (!(a > 0.0 && a < 0.5)) throw Error(ErrorKind::ParamsInvalid, "gap half-width must satisfy 0 < a < 1/2, got a = " + fmt(a));
    if (!(eps > 0.0)) throw Error(ErrorKind::ParamsInvalid, "eps must be positive");
    if (!(kTwoPi * eps < 1.0)) throw Error(ErrorKind::ParamsInvalid, "constraint 2*pi*eps < 1 violated (2*pi*eps = " + fmt(kTwoPi * eps) + ")");
    if (!(2.0 * eps < c)) throw Error(ErrorKind::ParamsInvalid, "constraint 2*eps < c violated (2*eps = " + fmt(2.0 * eps) + ", c = " + fmt(c) + ")");
    if (!(kTwoPi * c < 1.0)) throw Error(ErrorKind::ParamsInvalid, "constraint 2*pi*c < 1 violated (2*pi*c = " + fmt(kTwoPi * c) + ")");
    if (cutoff < 0 || 2 * cutoff >= grid.size()) {
        throw Error(ErrorKind::ParamsInvalid, "cutoff N = " + std::to_string(cutoff) + " must satisfy N < M/2 = " + std::to_string(grid.size() / 2));
    }
    if (!(fp_tol > 0.0)) throw Error(ErrorKind::ParamsInvalid, "fp_tol must be positive");
    if (max_iter < 1) throw Error(ErrorKind::ParamsInvalid, "max_iter must be at least 1");
}

double SolverParams::contraction_constant() const noexcept { return kTwoPi * c; }

double SolverParams::ball_lipschitz() const noexcept { return 2.0 * kTwoPi * eps; }

double target_profile(double t, double a, double amplitude) noexcept {
    const double at = std::abs(t);
    if (at < a || at > 0.5) return 0.0;
    const double s = std::sin(M_PI * (at - a) / (0.5 - a));
    return amplitude * s * s;
}

CircleFunction make_target_g(const SolverParams& params, double amplitude) {
    if (!(amplitude > 0.0 && amplitude < params.eps / 2.0)) {
        throw Error(ErrorKind::AmplitudeTooLarge,
                    "amplitude must satisfy 0 < amplitude < eps/2 = " + fmt(params.eps / 2.0) + ", got " + fmt(amplitude));
    }
    return CircleFunction::sample(params.grid, [&](double t) { return target_profile(t, params.a, amplitude); });
}

CircleFunction apply_R_coeffs(const CoeffSeq& alpha, const CircleGrid& grid) {
    const int m = grid.size();
    std::vector<cplx> out(static_cast<std::size_t>(m));

    // Majorant of the k-th term on I: sum_n |alpha_n|^k pi^{k-1} / k!.
    std::vector<double> abs_pow(alpha.values().size());
    std::vector<double> pow_vals(alpha.values().begin(), alpha.values().end());
    for (std::size_t i = 0; i < abs_pow.size(); ++i) abs_pow[i] = std::abs(pow_vals[i]);

    // term factor (2 pi i t)^{k-1} / k!, starting at k = 2
    std::vector<cplx> factor(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) factor[static_cast<std::size_t>(j)] = cplx(0.0, kTwoPi * grid.point(j)) / 2.0;

    double first_bound = -1.0;
    double scale = 1.0;  // pi^{k-1} / k!
    for (int k = 2; k <= kMaxTaylorTerms; ++k) {
        for (std::size_t i = 0; i < pow_vals.size(); ++i) {
            pow_vals[i] *= alpha.values()[i];
            abs_pow[i] = std::abs(pow_vals[i]);
        }
        scale *= M_PI / k;
        double mass = 0.0;
        for (double v : abs_pow) mass += v;
        const double bound = mass * scale;
        if (first_bound < 0.0) first_bound = bound;
        if (bound == 0.0) break;

        const CircleFunction pk = circle::synthesize(CoeffSeq(alpha.cutoff(), pow_vals), grid);
        for (int j = 0; j < m; ++j) {
            const auto jj = static_cast<std::size_t>(j);
            out[jj] += factor[jj] * pk[j];
            factor[jj] *= cplx(0.0, kTwoPi * grid.point(j)) / static_cast<double>(k + 1);
        }
        if (bound <= 1e-3 * DBL_EPSILON * first_bound) break;
    }
    return CircleFunction(grid, std::move(out));
}

CircleFunction apply_R(const CircleFunction& f, int cutoff) {
    return apply_R_coeffs(circle::fourier_coeffs(f, cutoff), f.grid());
}

double truncation_tail_bound(const CircleFunction& f, int cutoff) {
    const CoeffSeq wide = circle::fourier_coeffs(f, 2 * cutoff);
    double tail = 0.0;
    for (int n = cutoff + 1; n <= 2 * cutoff; ++n) tail += wide[n] * wide[n] + wide[-n] * wide[-n];
    return 0.5 * M_PI * tail;
}

KargaevSolution solve_fixed_point(const CircleFunction& g, const SolverParams& params) {
    params.validate();
    if (!(g.grid() == params.grid)) throw Error(ErrorKind::ParamsInvalid, "g is not sampled on the solver grid");
    const double g_norm = circle::sup_norm(g);
    if (g_norm > params.eps) {
        throw Error(ErrorKind::ParamsInvalid, "||g|| = " + fmt(g_norm) + " exceeds eps = " + fmt(params.eps));
    }

    const double stop = params.fp_tol * (1.0 - params.ball_lipschitz());
    KargaevSolution sol{params, g, g, CoeffSeq(params.cutoff), 0.0, 0, {}, {}, 0.0};

    CircleFunction f = g;
    double prev_step = -1.0;
    bool converged = false;
    for (int k = 1; k <= params.max_iter; ++k) {
        const CircleFunction rf = apply_R(f, params.cutoff);
        CircleFunction next = g - rf;

        const double ball = circle::sup_norm(rf);  // ||f_{k+1} - g||
        sol.max_ball_distance = std::max(sol.max_ball_distance, ball);
        if (ball > params.eps) {
            throw Error(ErrorKind::BallEscape, "iterate " + std::to_string(k) + " left the ball: ||f - g|| = " + fmt(ball));
        }

        const double step = circle::sup_distance(next, f);
        sol.step_trace.push_back(step);
        if (prev_step > 0.0) sol.ratio_trace.push_back(step / prev_step);
        prev_step = step;
        f = std::move(next);
        sol.iterations = k;
        if (step <= stop) {
            converged = true;
            break;
        }
    }

    sol.residual = circle::sup_distance(f + apply_R(f, params.cutoff), g);
    if (!converged || sol.residual > params.fp_tol) {
        throw Error(ErrorKind::NoConvergence, "no convergence after " + std::to_string(sol.iterations) +
                                                  " iterations, residual " + fmt(sol.residual));
    }
    sol.alpha = circle::fourier_coeffs(f, params.cutoff);
    sol.f = std::move(f);
    return sol;
}

CoeffSeq alpha_sequence(const KargaevSolution& sol) {
    const CoeffSeq& alpha = sol.alpha;
    const double peak = alpha.max_abs();
    if (peak == 0.0) throw Error(ErrorKind::AllZeroAlpha, "alpha vanishes identically (was g = 0?)");
    if (!(peak < sol.params.eps)) {
        throw Error(ErrorKind::ParamsInvalid, "sup|alpha| = " + fmt(peak) + " is not below eps = " + fmt(sol.params.eps));
    }
    const int half = alpha.cutoff() / 2;
    double inner = 0.0;
    double outer = 0.0;
    for (int n = -alpha.cutoff(); n <= alpha.cutoff(); ++n) {
        double& block = std::abs(n) <= half ? inner : outer;
        block = std::max(block, std::abs(alpha[n]));
    }
    if (outer > inner) {
        throw Error(ErrorKind::ParamsInvalid, "alpha does not decay: outer block max " + fmt(outer) + " > inner " + fmt(inner));
    }
    return alpha;
}

cplx f_hat_partial(const CoeffSeq& alpha, double t, int cutoff) {
    const int n_max = cutoff < 0 ? alpha.cutoff() : std::min(cutoff, alpha.cutoff());
    cplx sum = 0.0;
    for (int n = -n_max; n <= n_max; ++n) {
        const double an = alpha[n];
        if (an == 0.0) continue;
        // (e^{i theta} - 1) / (2 pi i t) = alpha_n (sin(theta)/theta + 2i sin^2(theta/2)/theta)
        const double theta = kTwoPi * an * t;
        cplx q(1.0, 0.0);
        if (theta != 0.0) {
            const double h = std::sin(0.5 * theta);
            q = cplx(std::sin(theta) / theta, 2.0 * h * h / theta);
        }
        sum += an * q * std::polar(1.0, kTwoPi * n * t);
    }
    return sum;
}

double gap_residual(const CoeffSeq& alpha, double a, int grid_pts) {
    if (grid_pts < 2) throw Error(ErrorKind::ParamsInvalid, "gap grid needs at least two points");
    const double edge = 0.95 * a;
    double worst = 0.0;
    for (int i = 0; i < grid_pts; ++i) {
        const double t = -edge + 2.0 * edge * i / (grid_pts - 1);
        worst = std::max(worst, std::abs(f_hat_partial(alpha, t)));
    }
    return worst;
}

}  // namespace nptile::kargaev
