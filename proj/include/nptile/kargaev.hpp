#pragma once

// Contraction solve of f + R f = g and the perturbation sequence
// alpha(n) = f^(n) it produces.  The signed-interval function
//   F = sum_n F_n,  F_n = 1_[n, n + alpha(n)]  (or minus the reversed interval)
// then has F^(-t) = f(t) + (R f)(t) = g(t) on (-1/2, 1/2); since g vanishes on
// (-a, a) so does F^.

#include "nptile/circle_space.hpp"

#include <complex>
#include <vector>

namespace nptile::kargaev {

using circle::CircleFunction;
using circle::CircleGrid;
using circle::CoeffSeq;
using circle::cplx;

struct SolverParams {
    double a = 0.1;        // gap half-width, 0 < a < 1/2
    double eps = 0.01;     // perturbation bound
    double c = 0.1;        // contraction ball constant
    int cutoff = 512;      // coefficient cutoff N
    CircleGrid grid{8192};
    double fp_tol = 1e-12;
    int max_iter = 200;

    /// Throws ParamsInvalid naming the first violated constraint among
    /// 0 < a < 1/2, 2 pi eps < 1, 2 eps < c, 2 pi c < 1, N < M/2.
    void validate() const;

    /// rho = 2 pi c, the Lipschitz constant of R on the ball ||.|| <= c.
    double contraction_constant() const noexcept;
    /// 4 pi eps: bound on the iteration ratio for iterates in B = {||f - g|| <= eps}.
    double ball_lipschitz() const noexcept;
};

struct KargaevSolution {
    SolverParams params;
    CircleFunction g;
    CircleFunction f;
    CoeffSeq alpha;
    double residual = 0.0;            // grid sup |f + R f - g|
    int iterations = 0;
    std::vector<double> step_trace;   // ||f_{k+1} - f_k||
    std::vector<double> ratio_trace;  // step_k / step_{k-1}
    double max_ball_distance = 0.0;   // max_k ||f_k - g||
};

/// Raised-cosine profile amplitude * sin^2(pi (|t| - a) / (1/2 - a)) on
/// a <= |t| <= 1/2, zero on the gap.  Throws AmplitudeTooLarge unless
/// 0 < amplitude < eps/2.
CircleFunction make_target_g(const SolverParams& params, double amplitude);

/// Closed form of the same profile, for off-grid checks.
double target_profile(double t, double a, double amplitude) noexcept;

/// (R f)(t_j) for the coefficients of f at cutoff N.
CircleFunction apply_R(const CircleFunction& f, int cutoff);

/// (R f) on `grid` from already-extracted coefficients alpha = f^.
///   sum_n e^{2 pi i n t} (e^{2 pi i alpha_n t} - 1 - 2 pi i alpha_n t) / (2 pi i t)
/// is evaluated as a Taylor series in t whose k-th term is one FFT synthesis
/// of alpha^k; the series is cut once its remaining majorant is below
/// rounding level.  Exactly zero at t = 0.
CircleFunction apply_R_coeffs(const CoeffSeq& alpha, const CircleGrid& grid);

/// (pi/2) sum_{N < |n| <= 2N} f^(n)^2: the part of R f dropped by cutting the
/// sum at N, estimated from the coefficients at cutoff 2N.
double truncation_tail_bound(const CircleFunction& f, int cutoff);

/// Iterates f_0 = g, f_{k+1} = g - R f_k until ||f_{k+1} - f_k|| <=
/// fp_tol (1 - 4 pi eps), then reports the directly measured residual.
/// Errors: ParamsInvalid, NoConvergence, BallEscape.
KargaevSolution solve_fixed_point(const CircleFunction& g, const SolverParams& params);

/// sol.alpha after checking 0 < max|alpha| < eps and that the outer half of
/// the coefficients is no larger than the inner half.  Throws AllZeroAlpha
/// when alpha vanishes identically.
CoeffSeq alpha_sequence(const KargaevSolution& sol);

/// Partial sum of F^(-t):  sum_{|n|<=N} e^{2 pi i n t} (e^{2 pi i alpha_n t} - 1) / (2 pi i t),
/// with the t = 0 value sum alpha_n.  `cutoff` < 0 means alpha.cutoff().
cplx f_hat_partial(const CoeffSeq& alpha, double t, int cutoff = -1);

/// sup of |f_hat_partial| over `grid_pts` equally spaced points of
/// [-0.95 a, 0.95 a].
double gap_residual(const CoeffSeq& alpha, double a, int grid_pts);

}  // namespace nptile::kargaev
