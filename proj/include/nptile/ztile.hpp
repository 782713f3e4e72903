#pragma once

// Tilings of the integers by finitely supported functions, and their finite
// models on cyclic groups Z_N.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace nptile::ztile {

inline constexpr double kTileTol = 1e-12;

/// Finitely supported function on Z.
struct ZFunction {
    std::map<long, double> values;

    double at(long n) const noexcept {
        auto it = values.find(n);
        return it == values.end() ? 0.0 : it->second;
    }
    bool is_zero() const noexcept;
    bool is_integer_valued() const noexcept;
};

/// Periodic subset of Z: { r + k m : r in residues, k in Z }.
struct ZSet {
    int period = 1;
    std::vector<int> residues;

    /// Throws ParamsInvalid unless period >= 1 and residues are distinct and in [0, period).
    void validate() const;
    bool contains(long n) const noexcept;
};

/// f on Z_N (tile[k] for k = 0..N-1) at level w.
struct CyclicInstance {
    int modulus = 1;
    std::vector<double> tile;
    double level = 1.0;

    void validate() const;
    ZFunction as_zfunction() const;
};

using Subset = std::vector<int>;  // sorted residues of Z_N

/// sum_{k in L} f(n - k) == w for every n.  Both sides are periodic with the
/// period of L, so checking one period is exact.  Integer-valued f and w are
/// compared exactly, anything else to within `tol`.
bool z_tiling_check(const ZFunction& f, const ZSet& lambda, double level, double tol = kTileTol);

/// Direct cyclic convolution: (f * 1_S)(n) == w for all n in Z_N.
bool cyclic_tiling_check(const CyclicInstance& inst, const Subset& subset, double tol = kTileTol);

/// Fourier form of the same condition: f^(j) 1_S^(j) == w N [j == 0] for every
/// frequency j, to relative tolerance `rtol`.
bool dft_tiling_check(const CyclicInstance& inst, const Subset& subset, double rtol = 1e-9);

struct SearchLimits {
    int pruned_cap = 28;      // backtracking for nonnegative tiles with w > 0
    int exhaustive_cap = 20;  // 2^N enumeration otherwise
};

/// Every S in Z_N with f * 1_S == w, sorted lexicographically.  Uses
/// leftmost-uncovered backtracking when the tile is nonnegative, has a
/// positive entry and w > 0; otherwise enumerates all subsets.  Throws
/// SearchSpaceTooLarge when N exceeds the applicable cap.
std::vector<Subset> complement_search(const CyclicInstance& inst, const SearchLimits& limits = {});

/// Smallest divisor d of indicator.size() with indicator[i] == indicator[(i + d) % size].
int minimal_period(const std::vector<bool>& indicator);

std::vector<bool> indicator_of(const Subset& subset, int modulus);

struct SpectrumPoint {
    double t;
    double magnitude;
};

/// |sum_{|n|<=N} (1 - |n|/N) 1_L(n) e^{-2 pi i n t}| at t = -1/2 + k/nfreq.
std::vector<SpectrumPoint> smoothed_spectrum(const ZSet& lambda, int terms, int nfreq);
std::vector<SpectrumPoint> smoothed_spectrum(const std::vector<long>& points, int terms, int nfreq);

/// Instance text: "N=<modulus> w=<level>" then a line of "offset:value"
/// pairs.  Offsets are reduced mod N.  Throws ParseError.
CyclicInstance parse_instance(std::istream& in);
CyclicInstance read_instance(const std::string& path);

/// Space-separated residues, e.g. "0 2 4".  Throws ParseError.
Subset parse_subset(const std::string& text, int modulus);
std::string format_subset(const Subset& subset);

}  // namespace nptile::ztile
