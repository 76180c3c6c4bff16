#pragma once

#include "grushin/grushin2d.hpp"
#include "grushin/product.hpp"
#include "grushin/table.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace grushin {

enum class Command { solve1d, minimize, sweep_s, limits, disk, rectangle, probe, regress };

const char* command_name(Command c);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int io = 1;
inline constexpr int usage = 2;
inline constexpr int regression = 3;
inline constexpr int nonconvergence = 4;
}  // namespace exit_code

struct RunConfig {
    Command command = Command::minimize;
    ProblemParams params;  // d1, d2, s, V
    DiskProblem disk;      // rho, s, n for disk / probe
    std::optional<std::vector<double>> s_list;
    std::optional<std::vector<double>> t_grid;
    std::optional<double> t;
    double mu = 1.0;  // solve1d coupling
    double R = 1.0;   // solve1d radius
    std::optional<int> grid_n;
    std::filesystem::path output_path;  // empty: standard output
    std::optional<std::filesystem::path> svg_path;
    std::filesystem::path baseline_path = "data/baseline.csv";
    int jobs = 1;

    // grid_n or the 1-D / 2-D default for the command.
    int resolved_n() const;
};

// Throws UsageError naming the offending flag. args excludes the program name.
RunConfig parse_config(const std::vector<std::string>& args);
RunConfig parse_config(int argc, const char* const* argv);

std::vector<double> parse_list(const std::string& text, const std::string& flag);

// Columns d1, d2, s, V, sigma_star, t_star, lambda1, vol_lb, lambda_lb, F_second, crit_residual.
SweepTable minimize_table(const std::vector<MinimizeResult>& results);

struct RegressionRow {
    std::string name;
    double expected = 0.0;
    double computed = 0.0;
    double rel_dev = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct RegressionReport {
    std::vector<RegressionRow> rows;
    double max_rel_dev = 0.0;
    bool empty = false;

    bool passed() const;
};

// Baseline CSV columns: name, kind, s, x, n, expected, rel_tol where kind is
// minimize (lambda1 at s), disk (x = rho), G (x = t, d1 = d2 = 1, V = 1) or
// ball (x = d, mu1 of the unit-volume ball). n = 0 picks the default grid.
// Throws BaselineMissing if the file does not exist.
RegressionReport regression_suite(const std::filesystem::path& baseline, int jobs = 1);

// Executes a parsed configuration. Output tables go to config.output_path or
// `out`; progress and summaries go to `log`.
int run(const RunConfig& config, std::ostream& out, std::ostream& log);

// Full entry point: parses, runs, and maps exceptions to exit codes.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& log);

}  // namespace grushin
