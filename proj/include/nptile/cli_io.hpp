#pragma once

// Run configuration, persisted artifacts and the command implementations
// behind the `nptile` executable.  Commands return process exit codes:
//   0 success, 1 certificate failure, 2 invalid configuration,
//   3 no convergence, 4 unreadable input, 5 search space too large.

#include "nptile/circle_space.hpp"
#include "nptile/tiling_line.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nptile::cli {

inline constexpr int kConfigSchema = 1;
inline constexpr const char* kReportFormat = "nptile-report/1";
inline constexpr const char* kOutputDirEnv = "NPTILE_OUTPUT_DIR";

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kCertificateFail = 1;
inline constexpr int kConfigInvalid = 2;
inline constexpr int kNoConvergence = 3;
inline constexpr int kParseFailure = 4;
inline constexpr int kSearchTooLarge = 5;
}  // namespace exit_code

struct RunConfig {
    int schema = kConfigSchema;

    // solver
    double a = 0.1;
    double eps = 0.01;
    double c = 0.1;
    double amplitude = 0.004;
    int N = 512;
    int M = 8192;
    double fp_tol = 1e-12;
    int max_iter = 200;

    // translation set and certificates
    int window = 2048;
    std::string tiling_kernel = "fejer";
    double tiling_b = 0.08;
    double tiling_radius = 1e4;
    double tiling_tol = 1e-3;
    std::string gap_kernel = "jackson";
    double gap_b = 0.05;
    double gap_radius = 1e3;
    double gap_test_tol = 1e-5;
    double x_span = 100.0;
    int x_count = 4001;
    int gap_grid_count = 2001;
    double gap_tol = 1e-6;
    std::vector<int> flc_windows{64, 128, 256};
    double flc_round_tol = 1e-9;

    std::string ztile_instance;
    std::string output_dir = "nptile_out";
    std::uint64_t seed = 1;

    /// Re-validates every solver constraint and kernel bandwidth.  Throws
    /// nptile::Error (ParamsInvalid, AmplitudeTooLarge, BandwidthExceedsGap).
    void validate() const;

    tiling::Kernel tiling_kernel_spec() const;
    tiling::Kernel gap_kernel_spec() const;
    tiling::XGrid tiling_grid() const;
    tiling::XGrid gap_grid() const;
};

nlohmann::json to_json(const RunConfig& config);
/// Unknown keys, wrong types and schema mismatch throw ParseError.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

std::string alpha_csv(const circle::CoeffSeq& alpha);
std::string lambda_csv(const tiling::TranslationSet& lambda);
/// Inverse of alpha_csv; rows must run n = -N..N.  Throws ParseError.
circle::CoeffSeq parse_alpha_csv(const std::string& text);
circle::CoeffSeq read_alpha_csv(const std::filesystem::path& path);

/// Write to a sibling temporary file, then rename over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

/// Output directory: NPTILE_OUTPUT_DIR if set, else config.output_dir.
std::filesystem::path resolve_output_dir(const RunConfig& config);

struct SolveOutcome {
    int exit_code = exit_code::kOk;
    nlohmann::json report;
    std::filesystem::path output_dir;
};

/// solve -> build Lambda -> certify; writes alpha.csv, lambda.csv, report.json.
SolveOutcome run_solve(const RunConfig& config, const std::filesystem::path& output_dir);

int cmd_solve(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);

/// which: gap | tiling | certificate | flc.  Recomputes from alpha.csv and the
/// config echoed in report.json, and appends the result under
/// report["verifications"][which].
int cmd_verify(const std::string& which, const std::filesystem::path& artifacts, std::ostream& out,
               std::ostream& err);

/// sub: check | search | period.  `subset` is required for check and
/// optional for period (otherwise every complement found by search).
int cmd_ztile(const std::string& sub, const std::filesystem::path& instance, const std::optional<std::string>& subset,
              std::ostream& out, std::ostream& err);

struct ExportOptions {
    std::optional<std::filesystem::path> report;
    std::optional<std::filesystem::path> out;
    // spectrum of a periodic Z-set
    std::optional<std::string> zset;
    int period = 0;
    int terms = 256;
    int nfreq = 1024;
};

/// what: residual-curve | spectrum | alpha.
int cmd_export(const std::string& what, const ExportOptions& options, std::ostream& out, std::ostream& err);

}  // namespace nptile::cli
