#pragma once

// Sampled Hermitian-symmetric functions on I = [-1/2, 1/2] and their Fourier
// coefficients.  All values are immutable once built; every free function is
// pure and safe to call from several threads.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nptile::circle {

using cplx = std::complex<double>;

inline constexpr double kSymTol = 1e-10;
inline constexpr double kNumTol = 1e-9;

/// Uniform grid t_j = -1/2 + j/M, j = 0..M-1, with M even and M >= 4.
class CircleGrid {
public:
    explicit CircleGrid(int m);

    int size() const noexcept { return m_; }
    double step() const noexcept { return 1.0 / m_; }

    /// Computed as (2j - M) / (2M) so that point(mirror(j)) == -point(j) bit for bit.
    double point(int j) const noexcept {
        return static_cast<double>(2 * j - m_) / (2.0 * m_);
    }

    /// Index of -t_j modulo 1.  j = 0 (t = -1/2) and j = M/2 (t = 0) are fixed.
    int mirror(int j) const noexcept { return (m_ - j) % m_; }

    friend bool operator==(const CircleGrid&, const CircleGrid&) = default;

private:
    int m_;
};

/// Real coefficients indexed n = -N..N.
class CoeffSeq {
public:
    CoeffSeq() = default;
    explicit CoeffSeq(int cutoff);
    CoeffSeq(int cutoff, std::vector<double> values);

    int cutoff() const noexcept { return cutoff_; }
    std::size_t size() const noexcept { return values_.size(); }

    double operator[](int n) const { return values_[static_cast<std::size_t>(n + cutoff_)]; }
    double& operator[](int n) { return values_[static_cast<std::size_t>(n + cutoff_)]; }

    /// Zero outside [-N, N].
    double at_or_zero(int n) const noexcept {
        return (n < -cutoff_ || n > cutoff_) ? 0.0 : values_[static_cast<std::size_t>(n + cutoff_)];
    }

    std::span<const double> values() const noexcept { return values_; }

    double sum_of_squares() const noexcept;
    double max_abs() const noexcept;
    /// Index n of the first entry attaining max_abs().
    int argmax_abs() const noexcept;

    friend bool operator==(const CoeffSeq&, const CoeffSeq&) = default;

private:
    int cutoff_ = 0;
    std::vector<double> values_{0.0};
};

/// Element of X on a grid.  samples[0] is the value at t = -1/2; the value at
/// t = +1/2 is its conjugate and is not stored.
class CircleFunction {
public:
    CircleFunction(CircleGrid grid, std::vector<cplx> samples);

    /// Samples `fn` at each grid point.  `fn` must describe an element of X.
    template <typename Fn>
    static CircleFunction sample(const CircleGrid& grid, Fn&& fn) {
        std::vector<cplx> s(static_cast<std::size_t>(grid.size()));
        for (int j = 0; j < grid.size(); ++j) s[static_cast<std::size_t>(j)] = cplx(fn(grid.point(j)));
        return CircleFunction(grid, std::move(s));
    }

    static CircleFunction zero(const CircleGrid& grid) {
        return CircleFunction(grid, std::vector<cplx>(static_cast<std::size_t>(grid.size())));
    }

    const CircleGrid& grid() const noexcept { return grid_; }
    std::span<const cplx> samples() const noexcept { return samples_; }
    cplx operator[](int j) const { return samples_[static_cast<std::size_t>(j)]; }

    /// max_j |f(-t_j) - conj f(t_j)| over the grid.  t = -1/2 is skipped: its
    /// partner +1/2 is not stored and is conjugate by definition.
    double symmetry_defect() const noexcept;

    friend CircleFunction operator+(const CircleFunction& f, const CircleFunction& g);
    friend CircleFunction operator-(const CircleFunction& f, const CircleFunction& g);
    friend CircleFunction operator*(double s, const CircleFunction& f);

private:
    CircleGrid grid_;
    std::vector<cplx> samples_;
};

/// Trapezoid-rule approximation of f^(n) = int_I f(t) e^{-2 pi i n t} dt for
/// |n| <= N.  Exact for trigonometric polynomials of degree < M/2.
/// Throws NyquistViolation if N >= M/2 and SymmetryViolation if the imaginary
/// part of any coefficient exceeds `symtol`.
CoeffSeq fourier_coeffs(const CircleFunction& f, int cutoff, double symtol = kSymTol);

/// samples(t_j) = sum_{|n|<=N} c(n) e^{2 pi i n t_j}.  The result is exactly
/// Hermitian symmetric.  Throws NyquistViolation if N >= M/2.
CircleFunction synthesize(const CoeffSeq& c, const CircleGrid& grid);

/// Same sum evaluated directly at an arbitrary t.
cplx evaluate(const CoeffSeq& c, double t);

/// Largest |sample|.  This is a lower bound for the true supremum.
double sup_norm(const CircleFunction& f);

/// Upper bound for the true supremum of a trigonometric polynomial of degree
/// `bandlimit` from its grid samples (Bernstein: grid sup >= (1 - pi N / M) sup).
/// Returns +inf when pi N / M >= 1.
double sup_norm_upper_bound(const CircleFunction& f, int bandlimit);

double sup_distance(const CircleFunction& f, const CircleFunction& g);

}  // namespace nptile::circle
