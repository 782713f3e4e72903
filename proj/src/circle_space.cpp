#include "nptile/circle_space.hpp"

#include "nptile/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>

namespace nptile::circle {

namespace {

// The FFTW planner is not re-entrant, so plans are created once per
// (size, sign) under a lock and then run through the thread-safe new-array
// execute interface on caller-owned aligned buffers.
class FftPlans {
public:
    static FftPlans& instance() {
        static FftPlans plans;
        return plans;
    }

    fftw_plan get(int n, int sign) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(n));
        fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE);
        fftw_free(buf);
        plans_.emplace(key, plan);
        return plan;
    }

    ~FftPlans() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

struct FftwFree {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};

class FftBuffer {
public:
    explicit FftBuffer(int n) : n_(n), data_(fftw_alloc_complex(static_cast<std::size_t>(n))) {
        std::fill_n(reinterpret_cast<double*>(data_.get()), 2 * static_cast<std::size_t>(n), 0.0);
    }

    cplx get(int i) const { return {data_.get()[i][0], data_.get()[i][1]}; }
    void set(int i, cplx v) {
        data_.get()[i][0] = v.real();
        data_.get()[i][1] = v.imag();
    }

    // In-place transform; FFTW_FORWARD uses e^{-2 pi i jk/n}, no normalization.
    void transform(int sign) {
        fftw_execute_dft(FftPlans::instance().get(n_, sign), data_.get(), data_.get());
    }

private:
    int n_;
    std::unique_ptr<fftw_complex[], FftwFree> data_;
};

int wrap(int n, int m) { return ((n % m) + m) % m; }

double parity(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

void check_nyquist(int cutoff, const CircleGrid& grid) {
    if (cutoff < 0 || 2 * cutoff >= grid.size()) {
        throw Error(ErrorKind::NyquistViolation,
                    "cutoff " + std::to_string(cutoff) + " needs M > 2N, grid has M = " +
                        std::to_string(grid.size()));
    }
}

}  // namespace

CircleGrid::CircleGrid(int m) : m_(m) {
    if (m < 4 || m % 2 != 0) {
        throw Error(ErrorKind::ParamsInvalid, "grid size must be even and >= 4, got " + std::to_string(m));
    }
}

CoeffSeq::CoeffSeq(int cutoff) : cutoff_(cutoff), values_(static_cast<std::size_t>(2 * cutoff + 1), 0.0) {
    if (cutoff < 0) throw Error(ErrorKind::ParamsInvalid, "negative coefficient cutoff");
}

CoeffSeq::CoeffSeq(int cutoff, std::vector<double> values) : cutoff_(cutoff), values_(std::move(values)) {
    if (cutoff < 0 || values_.size() != static_cast<std::size_t>(2 * cutoff + 1)) {
        throw Error(ErrorKind::ParamsInvalid, "coefficient vector length does not match 2N+1");
    }
}

double CoeffSeq::sum_of_squares() const noexcept {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return s;
}

double CoeffSeq::max_abs() const noexcept {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

int CoeffSeq::argmax_abs() const noexcept {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values_.size(); ++i) {
        if (std::abs(values_[i]) > std::abs(values_[best])) best = i;
    }
    return static_cast<int>(best) - cutoff_;
}

CircleFunction::CircleFunction(CircleGrid grid, std::vector<cplx> samples)
    : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != static_cast<std::size_t>(grid_.size())) {
        throw Error(ErrorKind::ParamsInvalid, "sample count does not match grid size");
    }
}

double CircleFunction::symmetry_defect() const noexcept {
    double d = 0.0;
    for (int j = 1; j < grid_.size(); ++j) {
        d = std::max(d, std::abs((*this)[grid_.mirror(j)] - std::conj((*this)[j])));
    }
    return d;
}

namespace {

template <typename Op>
CircleFunction combine(const CircleFunction& f, const CircleFunction& g, Op op) {
    if (!(f.grid() == g.grid())) throw Error(ErrorKind::ParamsInvalid, "grid mismatch");
    std::vector<cplx> out(f.samples().size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = op(f.samples()[j], g.samples()[j]);
    return CircleFunction(f.grid(), std::move(out));
}

}  // namespace

CircleFunction operator+(const CircleFunction& f, const CircleFunction& g) {
    return combine(f, g, std::plus<>{});
}

CircleFunction operator-(const CircleFunction& f, const CircleFunction& g) {
    return combine(f, g, std::minus<>{});
}

CircleFunction operator*(double s, const CircleFunction& f) {
    std::vector<cplx> out(f.samples().begin(), f.samples().end());
    for (auto& v : out) v *= s;
    return CircleFunction(f.grid(), std::move(out));
}

CoeffSeq fourier_coeffs(const CircleFunction& f, int cutoff, double symtol) {
    const auto& grid = f.grid();
    check_nyquist(cutoff, grid);
    const int m = grid.size();

    FftBuffer buf(m);
    // Trapezoid rule on [-1/2, 1/2]: the two endpoint samples f(-1/2) and
    // f(1/2) = conj f(-1/2) share one node with half weight each.
    buf.set(0, cplx(f[0].real(), 0.0));
    for (int j = 1; j < m; ++j) buf.set(j, f[j]);
    buf.transform(FFTW_FORWARD);

    // e^{-2 pi i n t_j} = (-1)^n e^{-2 pi i n j / M}
    CoeffSeq out(cutoff);
    for (int n = -cutoff; n <= cutoff; ++n) {
        const cplx v = parity(n) * buf.get(wrap(n, m)) / static_cast<double>(m);
        if (std::abs(v.imag()) > symtol) {
            throw Error(ErrorKind::SymmetryViolation,
                        "coefficient " + std::to_string(n) + " has imaginary part " + std::to_string(v.imag()));
        }
        out[n] = v.real();
    }
    return out;
}

CircleFunction synthesize(const CoeffSeq& c, const CircleGrid& grid) {
    check_nyquist(c.cutoff(), grid);
    const int m = grid.size();

    FftBuffer buf(m);
    for (int n = -c.cutoff(); n <= c.cutoff(); ++n) buf.set(wrap(n, m), parity(n) * c[n]);
    buf.transform(FFTW_BACKWARD);

    std::vector<cplx> s(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) s[static_cast<std::size_t>(j)] = buf.get(j);

    // Real coefficients give f(-t) = conj f(t); impose it on the rounding too.
    for (int j = 1; j < m / 2; ++j) {
        const auto k = static_cast<std::size_t>(grid.mirror(j));
        const auto i = static_cast<std::size_t>(j);
        const cplx avg = 0.5 * (s[i] + std::conj(s[k]));
        s[i] = avg;
        s[k] = std::conj(avg);
    }
    s[0] = cplx(s[0].real(), 0.0);
    s[static_cast<std::size_t>(m / 2)] = cplx(s[static_cast<std::size_t>(m / 2)].real(), 0.0);
    return CircleFunction(grid, std::move(s));
}

cplx evaluate(const CoeffSeq& c, double t) {
    cplx sum = c[0];
    for (int n = 1; n <= c.cutoff(); ++n) {
        const cplx e = std::polar(1.0, 2.0 * M_PI * n * t);
        sum += c[n] * e + c[-n] * std::conj(e);
    }
    return sum;
}

double sup_norm(const CircleFunction& f) {
    double m = 0.0;
    for (const auto& v : f.samples()) m = std::max(m, std::abs(v));
    return m;
}

double sup_norm_upper_bound(const CircleFunction& f, int bandlimit) {
    const double shrink = 1.0 - M_PI * bandlimit / f.grid().size();
    if (shrink <= 0.0) return std::numeric_limits<double>::infinity();
    return sup_norm(f) / shrink;
}

double sup_distance(const CircleFunction& f, const CircleFunction& g) {
    if (!(f.grid() == g.grid())) throw Error(ErrorKind::ParamsInvalid, "grid mismatch");
    double d = 0.0;
    for (std::size_t j = 0; j < f.samples().size(); ++j) d = std::max(d, std::abs(f.samples()[j] - g.samples()[j]));
    return d;
}

}  // namespace nptile::circle
