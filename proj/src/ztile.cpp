#include "nptile/ztile.hpp"

#include "nptile/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace nptile::ztile {

namespace {

bool is_integer(double v) noexcept { return std::isfinite(v) && v == std::trunc(v) && std::abs(v) < 1e15; }

long wrap(long n, long m) noexcept { return ((n % m) + m) % m; }

Subset subset_from_mask(std::uint64_t mask, int modulus) {
    Subset s;
    for (int i = 0; i < modulus; ++i) {
        if (mask >> i & 1U) s.push_back(i);
    }
    return s;
}

// Coverage of every position of Z_N by the translates in `subset`.
std::vector<double> cyclic_coverage(const CyclicInstance& inst, const Subset& subset) {
    std::vector<double> cov(static_cast<std::size_t>(inst.modulus), 0.0);
    for (int s : subset) {
        for (int d = 0; d < inst.modulus; ++d) cov[static_cast<std::size_t>((s + d) % inst.modulus)] += inst.tile[static_cast<std::size_t>(d)];
    }
    return cov;
}

bool integer_instance(const CyclicInstance& inst) {
    return is_integer(inst.level) && std::all_of(inst.tile.begin(), inst.tile.end(), is_integer);
}

std::vector<Subset> exhaustive_complements(const CyclicInstance& inst) {
    std::vector<Subset> out;
    const std::uint64_t total = std::uint64_t{1} << inst.modulus;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        Subset s = subset_from_mask(mask, inst.modulus);
        if (cyclic_tiling_check(inst, s)) out.push_back(std::move(s));
    }
    return out;
}

class Backtracker {
public:
    explicit Backtracker(const CyclicInstance& inst)
        : inst_(inst), cov_(static_cast<std::size_t>(inst.modulus), 0.0) {
        for (int d = 0; d < inst.modulus; ++d) {
            if (inst.tile[static_cast<std::size_t>(d)] > 0.0) positive_.push_back(d);
        }
    }

    std::vector<Subset> run() {
        descend(0);
        std::vector<Subset> out;
        for (std::uint64_t mask : found_) out.push_back(subset_from_mask(mask, inst_.modulus));
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    void descend(std::uint64_t chosen) {
        const int n = inst_.modulus;
        int p = 0;
        while (p < n && cov_[static_cast<std::size_t>(p)] >= inst_.level - kTileTol) ++p;
        if (p == n) {
            found_.insert(chosen);
            return;
        }
        // Some translate must put a positive tile value on p.
        for (int d : positive_) {
            const int s = static_cast<int>(wrap(p - d, n));
            if (chosen >> s & 1U) continue;
            if (!fits(s)) continue;
            place(s, +1.0);
            descend(chosen | (std::uint64_t{1} << s));
            place(s, -1.0);
        }
    }

    bool fits(int s) const {
        for (int d : positive_) {
            const auto k = static_cast<std::size_t>((s + d) % inst_.modulus);
            if (cov_[k] + inst_.tile[static_cast<std::size_t>(d)] > inst_.level + kTileTol) return false;
        }
        return true;
    }

    void place(int s, double sign) {
        for (int d : positive_) {
            cov_[static_cast<std::size_t>((s + d) % inst_.modulus)] += sign * inst_.tile[static_cast<std::size_t>(d)];
        }
    }

    const CyclicInstance& inst_;
    std::vector<double> cov_;
    std::vector<int> positive_;
    std::set<std::uint64_t> found_;
};

}  // namespace

bool ZFunction::is_zero() const noexcept {
    return std::all_of(values.begin(), values.end(), [](const auto& kv) { return kv.second == 0.0; });
}

bool ZFunction::is_integer_valued() const noexcept {
    return std::all_of(values.begin(), values.end(), [](const auto& kv) { return is_integer(kv.second); });
}

void ZSet::validate() const {
    if (period < 1) throw Error(ErrorKind::ParamsInvalid, "period must be positive");
    std::vector<bool> seen(static_cast<std::size_t>(period), false);
    for (int r : residues) {
        if (r < 0 || r >= period) throw Error(ErrorKind::ParamsInvalid, "residue " + std::to_string(r) + " out of range");
        if (seen[static_cast<std::size_t>(r)]) throw Error(ErrorKind::ParamsInvalid, "duplicate residue " + std::to_string(r));
        seen[static_cast<std::size_t>(r)] = true;
    }
}

bool ZSet::contains(long n) const noexcept {
    const long r = wrap(n, period);
    return std::find(residues.begin(), residues.end(), static_cast<int>(r)) != residues.end();
}

void CyclicInstance::validate() const {
    if (modulus < 1) throw Error(ErrorKind::ParamsInvalid, "modulus must be positive");
    if (tile.size() != static_cast<std::size_t>(modulus)) throw Error(ErrorKind::ParamsInvalid, "tile length must equal the modulus");
}

ZFunction CyclicInstance::as_zfunction() const {
    ZFunction f;
    for (int d = 0; d < modulus; ++d) {
        if (tile[static_cast<std::size_t>(d)] != 0.0) f.values[d] = tile[static_cast<std::size_t>(d)];
    }
    return f;
}

bool z_tiling_check(const ZFunction& f, const ZSet& lambda, double level, double tol) {
    lambda.validate();
    const bool exact = f.is_integer_valued() && is_integer(level);
    for (long n = 0; n < lambda.period; ++n) {
        if (exact) {
            long long sum = 0;
            for (const auto& [offset, value] : f.values) {
                if (lambda.contains(n - offset)) sum += static_cast<long long>(value);
            }
            if (sum != static_cast<long long>(level)) return false;
        } else {
            double sum = 0.0;
            for (const auto& [offset, value] : f.values) {
                if (lambda.contains(n - offset)) sum += value;
            }
            if (std::abs(sum - level) > tol) return false;
        }
    }
    return true;
}

bool cyclic_tiling_check(const CyclicInstance& inst, const Subset& subset, double tol) {
    inst.validate();
    const auto cov = cyclic_coverage(inst, subset);
    const double t = integer_instance(inst) ? 0.0 : tol;
    return std::all_of(cov.begin(), cov.end(), [&](double c) { return std::abs(c - inst.level) <= t; });
}

bool dft_tiling_check(const CyclicInstance& inst, const Subset& subset, double rtol) {
    inst.validate();
    const int n = inst.modulus;
    double scale = 1.0;
    {
        double mass = 0.0;
        for (double v : inst.tile) mass += std::abs(v);
        scale = std::max({1.0, mass * static_cast<double>(subset.size()), std::abs(inst.level) * n});
    }
    for (int j = 0; j < n; ++j) {
        std::complex<double> tile_hat = 0.0;
        std::complex<double> set_hat = 0.0;
        for (int k = 0; k < n; ++k) {
            tile_hat += inst.tile[static_cast<std::size_t>(k)] * std::polar(1.0, -2.0 * M_PI * ((long)j * k % n) / n);
        }
        for (int s : subset) set_hat += std::polar(1.0, -2.0 * M_PI * ((long)j * s % n) / n);
        const std::complex<double> target = (j == 0) ? inst.level * n : 0.0;
        if (std::abs(tile_hat * set_hat - target) > rtol * scale) return false;
    }
    return true;
}

std::vector<Subset> complement_search(const CyclicInstance& inst, const SearchLimits& limits) {
    inst.validate();
    const bool nonneg = std::all_of(inst.tile.begin(), inst.tile.end(), [](double v) { return v >= 0.0; });
    const bool has_positive = std::any_of(inst.tile.begin(), inst.tile.end(), [](double v) { return v > 0.0; });
    const bool prunable = nonneg && has_positive && inst.level > 0.0;

    if (prunable) {
        if (inst.modulus > std::min(limits.pruned_cap, 63)) {
            throw Error(ErrorKind::SearchSpaceTooLarge, "modulus " + std::to_string(inst.modulus) +
                                                            " exceeds the search cap " + std::to_string(limits.pruned_cap));
        }
        return Backtracker(inst).run();
    }
    if (inst.modulus > std::min(limits.exhaustive_cap, 30)) {
        throw Error(ErrorKind::SearchSpaceTooLarge, "modulus " + std::to_string(inst.modulus) +
                                                        " exceeds the exhaustive cap " + std::to_string(limits.exhaustive_cap) +
                                                        " and the tile does not allow pruning");
    }
    return exhaustive_complements(inst);
}

int minimal_period(const std::vector<bool>& indicator) {
    const int n = static_cast<int>(indicator.size());
    if (n == 0) throw Error(ErrorKind::ParamsInvalid, "minimal_period of an empty indicator");
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (int i = 0; i < n && periodic; ++i) periodic = indicator[static_cast<std::size_t>(i)] == indicator[static_cast<std::size_t>((i + d) % n)];
        if (periodic) return d;
    }
    return n;
}

std::vector<bool> indicator_of(const Subset& subset, int modulus) {
    std::vector<bool> ind(static_cast<std::size_t>(modulus), false);
    for (int s : subset) ind[static_cast<std::size_t>(wrap(s, modulus))] = true;
    return ind;
}

namespace {

std::vector<SpectrumPoint> fejer_spectrum(const std::function<bool(long)>& member, int terms, int nfreq) {
    if (terms < 1 || nfreq < 1) throw Error(ErrorKind::ParamsInvalid, "spectrum needs terms >= 1 and nfreq >= 1");
    std::vector<SpectrumPoint> out;
    out.reserve(static_cast<std::size_t>(nfreq));
    std::vector<long> support;
    for (long n = -terms; n <= terms; ++n) {
        if (member(n)) support.push_back(n);
    }
    for (int k = 0; k < nfreq; ++k) {
        const double t = -0.5 + static_cast<double>(k) / nfreq;
        std::complex<double> sum = 0.0;
        for (long n : support) {
            const double weight = 1.0 - static_cast<double>(std::abs(n)) / terms;
            sum += weight * std::polar(1.0, -2.0 * M_PI * static_cast<double>(n) * t);
        }
        out.push_back({t, std::abs(sum)});
    }
    return out;
}

}  // namespace

std::vector<SpectrumPoint> smoothed_spectrum(const ZSet& lambda, int terms, int nfreq) {
    lambda.validate();
    return fejer_spectrum([&](long n) { return lambda.contains(n); }, terms, nfreq);
}

std::vector<SpectrumPoint> smoothed_spectrum(const std::vector<long>& points, int terms, int nfreq) {
    std::set<long> members(points.begin(), points.end());
    return fejer_spectrum([&](long n) { return members.count(n) > 0; }, terms, nfreq);
}

CyclicInstance parse_instance(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw Error(ErrorKind::ParseError, "missing header line 'N=<modulus> w=<level>'");

    CyclicInstance inst;
    bool have_n = false;
    bool have_w = false;
    {
        std::istringstream hs(header);
        std::string tok;
        while (hs >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "bad header token '" + tok + "'");
            const std::string key = tok.substr(0, eq);
            const std::string val = tok.substr(eq + 1);
            try {
                std::size_t used = 0;
                if (key == "N") {
                    inst.modulus = std::stoi(val, &used);
                    have_n = true;
                } else if (key == "w") {
                    inst.level = std::stod(val, &used);
                    have_w = true;
                } else {
                    throw Error(ErrorKind::ParseError, "unknown header key '" + key + "'");
                }
                if (used != val.size()) throw Error(ErrorKind::ParseError, "trailing characters in '" + tok + "'");
            } catch (const std::logic_error&) {
                throw Error(ErrorKind::ParseError, "bad number in '" + tok + "'");
            }
        }
    }
    if (!have_n || !have_w) throw Error(ErrorKind::ParseError, "header must define both N and w");
    if (inst.modulus < 1) throw Error(ErrorKind::ParseError, "modulus must be positive");
    inst.tile.assign(static_cast<std::size_t>(inst.modulus), 0.0);

    std::string body;
    if (!std::getline(in, body)) throw Error(ErrorKind::ParseError, "missing tile line of offset:value pairs");
    std::istringstream bs(body);
    std::string tok;
    int pairs = 0;
    while (bs >> tok) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) throw Error(ErrorKind::ParseError, "bad tile entry '" + tok + "'");
        try {
            std::size_t used_o = 0;
            std::size_t used_v = 0;
            const std::string os = tok.substr(0, colon);
            const std::string vs = tok.substr(colon + 1);
            const long offset = std::stol(os, &used_o);
            const double value = std::stod(vs, &used_v);
            if (used_o != os.size() || used_v != vs.size()) throw Error(ErrorKind::ParseError, "bad tile entry '" + tok + "'");
            inst.tile[static_cast<std::size_t>(wrap(offset, inst.modulus))] += value;
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::ParseError, "bad tile entry '" + tok + "'");
        }
        ++pairs;
    }
    if (pairs == 0) throw Error(ErrorKind::ParseError, "tile line has no offset:value pairs");
    return inst;
}

CyclicInstance read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open instance file " + path);
    return parse_instance(in);
}

Subset parse_subset(const std::string& text, int modulus) {
    std::istringstream is(text);
    std::string tok;
    std::set<int> seen;
    while (is >> tok) {
        try {
            std::size_t used = 0;
            const long v = std::stol(tok, &used);
            if (used != tok.size()) throw Error(ErrorKind::ParseError, "bad residue '" + tok + "'");
            seen.insert(static_cast<int>(wrap(v, modulus)));
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::ParseError, "bad residue '" + tok + "'");
        }
    }
    return {seen.begin(), seen.end()};
}

std::string format_subset(const Subset& subset) {
    std::ostringstream os;
    for (std::size_t i = 0; i < subset.size(); ++i) os << (i ? " " : "") << subset[i];
    return os.str();
}

}  // namespace nptile::ztile
