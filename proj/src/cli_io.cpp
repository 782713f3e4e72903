#include "nptile/cli_io.hpp"

#include "nptile/error.hpp"
#include "nptile/kargaev.hpp"
#include "nptile/ztile.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace nptile::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int exit_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::NoConvergence:
        case ErrorKind::BallEscape: return exit_code::kNoConvergence;
        case ErrorKind::ParseError: return exit_code::kParseFailure;
        case ErrorKind::SearchSpaceTooLarge: return exit_code::kSearchTooLarge;
        default: return exit_code::kConfigInvalid;
    }
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <typename T>
void read_key(const json& j, const char* key, T& dst) {
    try {
        dst = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("config key '") + key + "': " + e.what());
    }
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

json tiling_json(const tiling::Kernel& k, const tiling::TilingReport& r, double tol) {
    return {
        {"kernel", tiling::to_string(k.family)},
        {"bandwidth", k.bandwidth},
        {"radius", r.grid.radius},
        {"x_span", r.grid.span},
        {"x_count", r.grid.count},
        {"sup_residual", r.sup_residual},
        {"tail_bound", r.tail_bound},
        {"worst_x", r.worst_x},
        {"tol", tol},
        {"pass", r.sup_residual <= tol},
    };
}

json certificate_json(const tiling::NonPeriodicityCertificate& c) {
    json j = {
        {"pass", c.pass},
        {"finite_support", c.finite_support},
        {"max_perturbation", c.max_perturbation},
        {"claim", c.claim},
    };
    j["witness"] = c.witness ? json(*c.witness) : json(nullptr);
    j["witness_value"] = c.witness_value;
    return j;
}

json flc_json(const tiling::TranslationSet& lambda, const RunConfig& config) {
    std::vector<std::size_t> sizes;
    bool increasing = true;
    for (int w : config.flc_windows) {
        sizes.push_back(tiling::gap_alphabet(lambda, w, config.flc_round_tol).size());
        if (sizes.size() > 1 && sizes.back() <= sizes[sizes.size() - 2]) increasing = false;
    }
    return {{"windows", config.flc_windows}, {"alphabet_sizes", sizes}, {"round_tol", config.flc_round_tol},
            {"strictly_increasing", increasing}, {"pass", increasing}};
}

json gap_json(const circle::CoeffSeq& alpha, const RunConfig& config) {
    const double r = kargaev::gap_residual(alpha, config.a, config.gap_grid_count);
    return {{"residual", r}, {"grid_count", config.gap_grid_count}, {"t_max", 0.95 * config.a},
            {"tol", config.gap_tol}, {"pass", r <= config.gap_tol}};
}

struct Artifacts {
    RunConfig config;
    circle::CoeffSeq alpha;
    json report;  // null when report.json is absent
};

Artifacts load_artifacts(const fs::path& dir) {
    Artifacts a;
    a.alpha = read_alpha_csv(dir / "alpha.csv");
    const fs::path report = dir / "report.json";
    if (fs::exists(report)) {
        try {
            a.report = json::parse(read_file(report));
        } catch (const json::exception& e) {
            throw Error(ErrorKind::ParseError, std::string("report.json: ") + e.what());
        }
        if (!a.report.is_object() || !a.report.contains("config")) throw Error(ErrorKind::ParseError, "report.json has no config echo");
        a.config = config_from_json(a.report.at("config"));
    }
    return a;
}

}  // namespace

void RunConfig::validate() const {
    if (schema != kConfigSchema) throw Error(ErrorKind::ParamsInvalid, "unsupported config schema " + std::to_string(schema));
    kargaev::SolverParams p;
    p.a = a;
    p.eps = eps;
    p.c = c;
    p.cutoff = N;
    p.grid = circle::CircleGrid(M);
    p.fp_tol = fp_tol;
    p.max_iter = max_iter;
    p.validate();
    if (!(amplitude > 0.0 && amplitude < eps / 2.0)) {
        throw Error(ErrorKind::AmplitudeTooLarge, "amplitude must satisfy 0 < amplitude < eps/2");
    }
    if (window < N) throw Error(ErrorKind::ParamsInvalid, "window must be at least N");
    const auto tk = tiling_kernel_spec();
    const auto gk = gap_kernel_spec();
    if (!(tk.bandwidth > 0.0 && tk.bandwidth < a)) throw Error(ErrorKind::BandwidthExceedsGap, "tiling_b must satisfy 0 < b < a");
    if (!(gk.bandwidth > 0.0 && gk.bandwidth < a)) throw Error(ErrorKind::BandwidthExceedsGap, "gap_b must satisfy 0 < b < a");
    if (tk.family == gk.family) throw Error(ErrorKind::ParamsInvalid, "the independent gap test must use a different kernel family");
    if (x_count < 1 || !(x_span >= 0.0)) throw Error(ErrorKind::ParamsInvalid, "x grid needs x_count >= 1 and x_span >= 0");
    if (!(tiling_radius >= 2.0 && gap_radius >= 2.0)) throw Error(ErrorKind::ParamsInvalid, "tiling radii must be at least 2");
    if (gap_grid_count < 2) throw Error(ErrorKind::ParamsInvalid, "gap_grid_count must be at least 2");
    for (std::size_t i = 0; i < flc_windows.size(); ++i) {
        if (flc_windows[i] < 1 || flc_windows[i] > window) throw Error(ErrorKind::ParamsInvalid, "flc windows must lie in [1, window]");
    }
}

tiling::Kernel RunConfig::tiling_kernel_spec() const {
    return {tiling::parse_kernel_family(tiling_kernel), tiling_b};
}

tiling::Kernel RunConfig::gap_kernel_spec() const {
    return {tiling::parse_kernel_family(gap_kernel), gap_b};
}

tiling::XGrid RunConfig::tiling_grid() const { return {x_count, x_span, tiling_radius}; }

tiling::XGrid RunConfig::gap_grid() const { return {x_count, x_span, gap_radius}; }

json to_json(const RunConfig& c) {
    return {
        {"schema", c.schema},
        {"a", c.a},
        {"eps", c.eps},
        {"c", c.c},
        {"amplitude", c.amplitude},
        {"N", c.N},
        {"M", c.M},
        {"fp_tol", c.fp_tol},
        {"max_iter", c.max_iter},
        {"window", c.window},
        {"tiling_kernel", c.tiling_kernel},
        {"tiling_b", c.tiling_b},
        {"tiling_radius", c.tiling_radius},
        {"tiling_tol", c.tiling_tol},
        {"gap_kernel", c.gap_kernel},
        {"gap_b", c.gap_b},
        {"gap_radius", c.gap_radius},
        {"gap_test_tol", c.gap_test_tol},
        {"x_span", c.x_span},
        {"x_count", c.x_count},
        {"gap_grid_count", c.gap_grid_count},
        {"gap_tol", c.gap_tol},
        {"flc_windows", c.flc_windows},
        {"flc_round_tol", c.flc_round_tol},
        {"ztile_instance", c.ztile_instance},
        {"output_dir", c.output_dir},
        {"seed", c.seed},
    };
}

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "config must be a JSON object");
    RunConfig c;
    for (const auto& [key, value] : j.items()) {
        const char* k = key.c_str();
        if (key == "schema") read_key(j, k, c.schema);
        else if (key == "a") read_key(j, k, c.a);
        else if (key == "eps") read_key(j, k, c.eps);
        else if (key == "c") read_key(j, k, c.c);
        else if (key == "amplitude") read_key(j, k, c.amplitude);
        else if (key == "N") read_key(j, k, c.N);
        else if (key == "M") read_key(j, k, c.M);
        else if (key == "fp_tol") read_key(j, k, c.fp_tol);
        else if (key == "max_iter") read_key(j, k, c.max_iter);
        else if (key == "window") read_key(j, k, c.window);
        else if (key == "tiling_kernel") read_key(j, k, c.tiling_kernel);
        else if (key == "tiling_b") read_key(j, k, c.tiling_b);
        else if (key == "tiling_radius") read_key(j, k, c.tiling_radius);
        else if (key == "tiling_tol") read_key(j, k, c.tiling_tol);
        else if (key == "gap_kernel") read_key(j, k, c.gap_kernel);
        else if (key == "gap_b") read_key(j, k, c.gap_b);
        else if (key == "gap_radius") read_key(j, k, c.gap_radius);
        else if (key == "gap_test_tol") read_key(j, k, c.gap_test_tol);
        else if (key == "x_span") read_key(j, k, c.x_span);
        else if (key == "x_count") read_key(j, k, c.x_count);
        else if (key == "gap_grid_count") read_key(j, k, c.gap_grid_count);
        else if (key == "gap_tol") read_key(j, k, c.gap_tol);
        else if (key == "flc_windows") read_key(j, k, c.flc_windows);
        else if (key == "flc_round_tol") read_key(j, k, c.flc_round_tol);
        else if (key == "ztile_instance") read_key(j, k, c.ztile_instance);
        else if (key == "output_dir") read_key(j, k, c.output_dir);
        else if (key == "seed") read_key(j, k, c.seed);
        else throw Error(ErrorKind::ParseError, "unknown config key '" + key + "'");
    }
    if (c.schema != kConfigSchema) {
        throw Error(ErrorKind::ParseError, "config schema " + std::to_string(c.schema) + " is not supported");
    }
    return c;
}

RunConfig load_config(const fs::path& path) {
    const std::string text = read_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string alpha_csv(const circle::CoeffSeq& alpha) {
    std::string out = "n,alpha\n";
    for (int n = -alpha.cutoff(); n <= alpha.cutoff(); ++n) {
        out += std::to_string(n);
        out += ',';
        out += format_double(alpha[n]);
        out += '\n';
    }
    return out;
}

std::string lambda_csv(const tiling::TranslationSet& lambda) {
    std::string out = "n,lambda\n";
    const auto& pts = lambda.points();
    for (int n = -lambda.window(); n <= lambda.window(); ++n) {
        out += std::to_string(n);
        out += ',';
        out += format_double(pts[static_cast<std::size_t>(n + lambda.window())]);
        out += '\n';
    }
    return out;
}

circle::CoeffSeq parse_alpha_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "n,alpha") throw Error(ErrorKind::ParseError, "alpha.csv: expected header 'n,alpha'");
    std::vector<long> idx;
    std::vector<double> vals;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        long n = 0;
        double v = 0.0;
        const char* end = line.data() + line.size();
        if (comma == std::string::npos) throw Error(ErrorKind::ParseError, "alpha.csv line " + std::to_string(lineno) + ": missing comma");
        const auto rn = std::from_chars(line.data(), line.data() + comma, n);
        const auto rv = std::from_chars(line.data() + comma + 1, end, v);
        if (rn.ec != std::errc() || rn.ptr != line.data() + comma || rv.ec != std::errc() || rv.ptr != end) {
            throw Error(ErrorKind::ParseError, "alpha.csv line " + std::to_string(lineno) + ": cannot parse '" + line + "'");
        }
        idx.push_back(n);
        vals.push_back(v);
    }
    if (vals.empty() || vals.size() % 2 == 0) throw Error(ErrorKind::ParseError, "alpha.csv must hold 2N+1 rows");
    const int cutoff = static_cast<int>(vals.size() / 2);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] != static_cast<long>(i) - cutoff) throw Error(ErrorKind::ParseError, "alpha.csv rows must run n = -N..N in order");
    }
    return circle::CoeffSeq(cutoff, std::move(vals));
}

circle::CoeffSeq read_alpha_csv(const fs::path& path) { return parse_alpha_csv(read_file(path)); }

void write_atomic(const fs::path& path, const std::string& contents) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::ParseError, "cannot write " + tmp.string());
        out << contents;
        if (!out.flush()) throw Error(ErrorKind::ParseError, "write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

fs::path resolve_output_dir(const RunConfig& config) {
    if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return fs::path(env);
    return fs::path(config.output_dir);
}

SolveOutcome run_solve(const RunConfig& config, const fs::path& output_dir) {
    config.validate();
    const auto started = Clock::now();
    json timings;

    kargaev::SolverParams params;
    params.a = config.a;
    params.eps = config.eps;
    params.c = config.c;
    params.cutoff = config.N;
    params.grid = circle::CircleGrid(config.M);
    params.fp_tol = config.fp_tol;
    params.max_iter = config.max_iter;

    auto t = Clock::now();
    const auto g = kargaev::make_target_g(params, config.amplitude);
    const auto sol = kargaev::solve_fixed_point(g, params);
    const auto alpha = kargaev::alpha_sequence(sol);
    timings["solve_ms"] = ms_since(t);

    json report;
    report["format_version"] = kReportFormat;
    report["config"] = to_json(config);

    json solver = {
        {"iterations", sol.iterations},
        {"residual", sol.residual},
        {"fp_tol", params.fp_tol},
        {"step_trace", sol.step_trace},
        {"ratio_trace", sol.ratio_trace},
        {"ratio_bound", params.ball_lipschitz()},
        {"contraction_constant", params.contraction_constant()},
        {"max_ball_distance", sol.max_ball_distance},
        {"sup_norm_g", circle::sup_norm(g)},
        {"sup_norm_f", circle::sup_norm(sol.f)},
    };
    solver["truncation_tail_bound"] =
        4 * config.N < config.M ? json(kargaev::truncation_tail_bound(sol.f, config.N)) : json(nullptr);
    report["solver"] = solver;
    report["alpha"] = {
        {"cutoff", alpha.cutoff()},
        {"max_abs", alpha.max_abs()},
        {"argmax", alpha.argmax_abs()},
        {"l2_mass", alpha.sum_of_squares()},
    };

    t = Clock::now();
    report["gap"] = gap_json(alpha, config);
    timings["gap_ms"] = ms_since(t);

    const auto lambda = tiling::build_lambda(alpha, config.window);
    const auto tk = config.tiling_kernel_spec();
    const auto gk = config.gap_kernel_spec();

    t = Clock::now();
    report["tiling"] = tiling_json(tk, tiling::tiling_residual(tk, lambda, config.tiling_grid(), config.a), config.tiling_tol);
    timings["tiling_ms"] = ms_since(t);

    t = Clock::now();
    report["gap_test"] = tiling_json(gk, tiling::tiling_residual(gk, lambda, config.gap_grid(), config.a), config.gap_test_tol);
    timings["gap_test_ms"] = ms_since(t);

    report["certificate"] = certificate_json(tiling::nonperiodicity_certificate(lambda));
    report["flc"] = flc_json(lambda, config);
    report["density"] = {{"max_points_per_unit_interval", tiling::max_points_per_unit_interval(lambda)}};

    const bool all_pass = report["gap"]["pass"].get<bool>() && report["tiling"]["pass"].get<bool>() &&
                          report["gap_test"]["pass"].get<bool>() && report["certificate"]["pass"].get<bool>() &&
                          report["flc"]["pass"].get<bool>();
    report["verdict"] = {{"all_pass", all_pass}};
    report["artifacts"] = {{"alpha", "alpha.csv"}, {"lambda", "lambda.csv"}, {"report", "report.json"}};

    timings["total_ms"] = ms_since(started);
    // Everything under run_info varies between runs; the rest is reproducible.
    report["run_info"] = {{"timestamp", utc_timestamp()}, {"timings", timings}};

    fs::create_directories(output_dir);
    write_atomic(output_dir / "alpha.csv", alpha_csv(alpha));
    write_atomic(output_dir / "lambda.csv", lambda_csv(lambda));
    write_atomic(output_dir / "report.json", report.dump(2) + "\n");

    return {all_pass ? exit_code::kOk : exit_code::kCertificateFail, std::move(report), output_dir};
}

int cmd_solve(const fs::path& config_path, std::ostream& out, std::ostream& err) {
    try {
        const RunConfig config = load_config(config_path);
        const auto outcome = run_solve(config, resolve_output_dir(config));
        const auto& r = outcome.report;
        out << "iterations " << r["solver"]["iterations"] << ", residual " << r["solver"]["residual"] << "\n"
            << "gap residual " << r["gap"]["residual"] << (r["gap"]["pass"].get<bool>() ? " PASS" : " FAIL") << "\n"
            << "tiling residual " << r["tiling"]["sup_residual"] << (r["tiling"]["pass"].get<bool>() ? " PASS" : " FAIL") << "\n"
            << "gap test residual " << r["gap_test"]["sup_residual"] << (r["gap_test"]["pass"].get<bool>() ? " PASS" : " FAIL") << "\n"
            << "non-periodicity " << (r["certificate"]["pass"].get<bool>() ? "PASS" : "FAIL") << "\n"
            << "artifacts written to " << outcome.output_dir.string() << "\n";
        return outcome.exit_code;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_for(e);
    } catch (const fs::filesystem_error& e) {
        err << e.what() << "\n";
        return exit_code::kParseFailure;
    }
}

int cmd_verify(const std::string& which, const fs::path& artifacts, std::ostream& out, std::ostream& err) {
    try {
        Artifacts a = load_artifacts(artifacts);
        const RunConfig& config = a.config;
        json section;
        if (which == "gap") {
            section = gap_json(a.alpha, config);
            out << "gap residual " << format_double(section["residual"].get<double>()) << "\n";
        } else if (which == "tiling" || which == "certificate" || which == "flc") {
            const auto lambda = tiling::build_lambda(a.alpha, std::max(config.window, a.alpha.cutoff()));
            if (which == "tiling") {
                const auto tk = config.tiling_kernel_spec();
                const auto gk = config.gap_kernel_spec();
                const json tj = tiling_json(tk, tiling::tiling_residual(tk, lambda, config.tiling_grid(), config.a), config.tiling_tol);
                const json gj = tiling_json(gk, tiling::tiling_residual(gk, lambda, config.gap_grid(), config.a), config.gap_test_tol);
                section = {{"tiling", tj}, {"gap_test", gj}, {"pass", tj["pass"].get<bool>() && gj["pass"].get<bool>()}};
                out << "tiling residual " << format_double(tj["sup_residual"].get<double>()) << " (tail bound "
                    << format_double(tj["tail_bound"].get<double>()) << ")\n"
                    << "gap test residual " << format_double(gj["sup_residual"].get<double>()) << " (tail bound "
                    << format_double(gj["tail_bound"].get<double>()) << ")\n";
            } else if (which == "certificate") {
                section = certificate_json(tiling::nonperiodicity_certificate(lambda));
                out << section["claim"].get<std::string>() << "\n";
            } else {
                section = flc_json(lambda, config);
                const auto& w = section["windows"];
                const auto& s = section["alphabet_sizes"];
                for (std::size_t i = 0; i < w.size(); ++i) out << "window " << w[i] << ": " << s[i] << " gap values\n";
            }
        } else {
            err << "unknown verification '" << which << "' (expected gap, tiling, certificate or flc)\n";
            return exit_code::kParseFailure;
        }
        const bool pass = section["pass"].get<bool>();
        out << which << (pass ? " PASS" : " FAIL") << "\n";

        if (!a.report.is_null()) {
            a.report["verifications"][which] = section;
            write_atomic(artifacts / "report.json", a.report.dump(2) + "\n");
        }
        return pass ? exit_code::kOk : exit_code::kCertificateFail;
    } catch (const Error& e) {
        err << e.what() << "\n";
        // A perturbation too large to form a translation set is a failed certificate.
        if (e.kind() == ErrorKind::PerturbationTooLarge) return exit_code::kCertificateFail;
        return e.kind() == ErrorKind::ParseError ? exit_code::kParseFailure : exit_for(e);
    }
}

int cmd_ztile(const std::string& sub, const fs::path& instance, const std::optional<std::string>& subset,
              std::ostream& out, std::ostream& err) {
    try {
        const auto inst = ztile::read_instance(instance.string());
        if (sub == "check") {
            if (!subset) {
                err << "ztile check needs a candidate set (--set \"r1 r2 ...\")\n";
                return exit_code::kParseFailure;
            }
            const auto s = ztile::parse_subset(*subset, inst.modulus);
            const bool direct = ztile::cyclic_tiling_check(inst, s);
            const bool fourier = ztile::dft_tiling_check(inst, s);
            if (direct != fourier) err << "warning: direct and Fourier checks disagree\n";
            out << (direct ? "true" : "false") << "\n";
            return direct ? exit_code::kOk : exit_code::kCertificateFail;
        }
        if (sub == "search") {
            for (const auto& s : ztile::complement_search(inst)) out << ztile::format_subset(s) << "\n";
            return exit_code::kOk;
        }
        if (sub == "period") {
            if (subset) {
                const auto s = ztile::parse_subset(*subset, inst.modulus);
                out << ztile::minimal_period(ztile::indicator_of(s, inst.modulus)) << "\n";
                return exit_code::kOk;
            }
            for (const auto& s : ztile::complement_search(inst)) {
                out << ztile::format_subset(s) << ": " << ztile::minimal_period(ztile::indicator_of(s, inst.modulus)) << "\n";
            }
            return exit_code::kOk;
        }
        err << "unknown ztile subcommand '" << sub << "' (expected check, search or period)\n";
        return exit_code::kParseFailure;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_for(e);
    }
}

int cmd_export(const std::string& what, const ExportOptions& options, std::ostream& out, std::ostream& err) {
    try {
        std::string csv;
        fs::path default_dir = ".";
        if (what == "spectrum") {
            if (!options.zset || options.period < 1) {
                err << "export spectrum needs --zset \"r1 r2 ...\" and --period m\n";
                return exit_code::kParseFailure;
            }
            ztile::ZSet zs{options.period, ztile::parse_subset(*options.zset, options.period)};
            csv = "t,magnitude\n";
            for (const auto& p : ztile::smoothed_spectrum(zs, options.terms, options.nfreq)) {
                csv += format_double(p.t) + "," + format_double(p.magnitude) + "\n";
            }
            if (options.report) default_dir = options.report->parent_path();
        } else if (what == "alpha" || what == "residual-curve") {
            if (!options.report) {
                err << "export " << what << " needs --report <path>\n";
                return exit_code::kParseFailure;
            }
            if (!fs::exists(*options.report)) throw Error(ErrorKind::ParseError, "missing report " + options.report->string());
            default_dir = options.report->parent_path();
            const Artifacts a = load_artifacts(default_dir);
            if (what == "alpha") {
                csv = alpha_csv(a.alpha);
            } else {
                const auto lambda = tiling::build_lambda(a.alpha, std::max(a.config.window, a.alpha.cutoff()));
                const auto tk = a.config.tiling_kernel_spec();
                const auto grid = a.config.tiling_grid();
                const auto rep = tiling::tiling_residual(tk, lambda, grid, a.config.a);
                csv = "x,residual\n";
                for (int i = 0; i < grid.count; ++i) {
                    csv += format_double(grid.point(i)) + "," + format_double(rep.residuals[static_cast<std::size_t>(i)]) + "\n";
                }
            }
        } else {
            err << "unknown export '" << what << "' (expected residual-curve, spectrum or alpha)\n";
            return exit_code::kParseFailure;
        }
        const fs::path target = options.out ? *options.out : default_dir / ("export_" + what + ".csv");
        write_atomic(target, csv);
        out << "wrote " << target.string() << "\n";
        return exit_code::kOk;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_for(e);
    }
}

}  // namespace nptile::cli
