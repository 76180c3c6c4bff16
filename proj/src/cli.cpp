#include "grushin/cli.hpp"

#include "grushin/asymptotics.hpp"
#include "grushin/errors.hpp"
#include "grushin/parallel.hpp"
#include "grushin/radial.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

namespace grushin {

namespace {

struct HelpRequested : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::map<std::string, Command>& command_table() {
    static const std::map<std::string, Command> table{
        {"solve1d", Command::solve1d},     {"minimize", Command::minimize}, {"sweep-s", Command::sweep_s},
        {"limits", Command::limits},       {"disk", Command::disk},         {"rectangle", Command::rectangle},
        {"probe", Command::probe},         {"regress", Command::regress},
    };
    return table;
}

bool is_2d(Command c) {
    return c == Command::disk || c == Command::rectangle || c == Command::probe;
}

}  // namespace

const char* command_name(Command c) {
    for (const auto& [name, cmd] : command_table()) {
        if (cmd == c) return name.c_str();
    }
    return "?";
}

int RunConfig::resolved_n() const {
    if (grid_n) return *grid_n;
    return is_2d(command) ? kDefaultGridN : kDefaultRadialN;
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
    std::vector<double> values;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) throw UsageError(flag + ": empty list entry in '" + text + "'");
        item = item.substr(first, last - first + 1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(v)) {
            throw UsageError(flag + ": '" + item + "' is not a number");
        }
        values.push_back(v);
    }
    if (values.empty()) throw UsageError(flag + ": list is empty");
    return values;
}

RunConfig parse_config(const std::vector<std::string>& args) {
    CLI::App app{"Grushin eigenvalue toolkit", "grushin"};
    app.set_config("--config", "", "key = value file; command-line flags take precedence");
    app.allow_config_extras(false);

    std::string command;
    int d1 = 1, d2 = 1, jobs = 1, n = 0;
    double s = 0.0, V = 1.0, t = 0.0, rho = 0.0, mu = 1.0, R = 1.0;
    std::vector<std::string> s_list, t_grid;
    std::string out, svg, baseline = "data/baseline.csv";

    app.add_option("command", command, "subcommand")->required();
    app.add_option("--d1", d1, "dimension of the first factor");
    app.add_option("--d2", d2, "dimension of the second factor");
    auto* s_opt = app.add_option("--s", s, "Grushin exponent");
    auto* s_list_opt = app.add_option("--s-list", s_list, "comma-separated exponents");
    app.add_option("--V", V, "total volume");
    auto* t_opt = app.add_option("--t", t, "volume of the first factor");
    auto* t_grid_opt = app.add_option("--t-grid", t_grid, "comma-separated volumes");
    auto* rho_opt = app.add_option("--rho", rho, "disk radius");
    auto* n_opt = app.add_option("--n", n, "grid intervals")->envname("GRUSHIN_DEFAULT_N");
    app.add_option("--mu", mu, "coupling for solve1d");
    app.add_option("--R", R, "radius for solve1d");
    app.add_option("--out", out, "output CSV path (default: standard output)");
    auto* svg_opt = app.add_option("--svg", svg, "optional SVG line plot");
    app.add_option("--jobs", jobs, "worker threads for sweeps");
    app.add_option("--baseline", baseline, "baseline CSV for regress");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help() + "\nsubcommands: solve1d minimize sweep-s limits disk rectangle probe regress\n");
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    RunConfig cfg;
    const auto it = command_table().find(command);
    if (it == command_table().end()) throw UsageError("unknown subcommand '" + command + "'");
    cfg.command = it->second;
    cfg.params.d1 = d1;
    cfg.params.d2 = d2;
    cfg.params.V = V;
    cfg.mu = mu;
    cfg.R = R;
    cfg.jobs = jobs;
    cfg.baseline_path = baseline;
    if (!out.empty()) cfg.output_path = out;
    if (svg_opt->count() > 0) cfg.svg_path = svg;
    if (n_opt->count() > 0) cfg.grid_n = n;
    auto joined = [](const std::vector<std::string>& parts) {
        std::string text;
        for (const auto& p : parts) text += (text.empty() ? "" : ",") + p;
        return text;
    };
    if (s_list_opt->count() > 0) cfg.s_list = parse_list(joined(s_list), "--s-list");
    if (t_grid_opt->count() > 0) cfg.t_grid = parse_list(joined(t_grid), "--t-grid");
    if (t_opt->count() > 0) cfg.t = t;

    auto require = [&](CLI::Option* opt, const char* flag) {
        if (opt->count() == 0) throw UsageError(std::string(flag) + " is required for " + command);
    };
    if (d1 < 1) throw UsageError("--d1 must be >= 1");
    if (d2 < 1) throw UsageError("--d2 must be >= 1");
    if (!(V > 0.0)) throw UsageError("--V must be > 0");
    if (jobs < 1) throw UsageError("--jobs must be >= 1");
    if (cfg.grid_n && *cfg.grid_n < 2) throw UsageError("--n must be >= 2");

    switch (cfg.command) {
    case Command::solve1d:
    case Command::minimize:
        require(s_opt, "--s");
        break;
    case Command::sweep_s:
        require(s_list_opt, "--s-list");
        break;
    case Command::disk:
        require(s_opt, "--s");
        require(rho_opt, "--rho");
        break;
    case Command::rectangle:
        require(s_opt, "--s");
        require(t_opt, "--t");
        break;
    case Command::probe:
        require(s_list_opt, "--s-list");
        require(rho_opt, "--rho");
        break;
    case Command::limits:
    case Command::regress:
        break;
    }
    if (s_opt->count() > 0) {
        const bool zero_ok = cfg.command == Command::solve1d || is_2d(cfg.command);
        if (!(s > 0.0) && !(zero_ok && s == 0.0)) throw UsageError("--s must be > 0 (got " + std::to_string(s) + ")");
    }
    cfg.params.s = s > 0.0 ? s : 1.0;
    if (cfg.command == Command::solve1d) cfg.params.s = s;
    if (rho_opt->count() > 0 && !(rho > 0.0)) throw UsageError("--rho must be > 0");
    if (cfg.t && !(*cfg.t > 0.0)) throw UsageError("--t must be > 0");
    cfg.disk.rho = rho;
    cfg.disk.s = s;
    cfg.disk.n = cfg.resolved_n();
    if (is_2d(cfg.command) && cfg.disk.n < 64) throw UsageError("--n must be >= 64 for 2-D solves");
    return cfg;
}

RunConfig parse_config(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return parse_config(args);
}

SweepTable minimize_table(const std::vector<MinimizeResult>& results) {
    SweepTable table;
    table.headers = {"d1",     "d2",     "s",         "V",        "sigma_star",   "t_star",
                     "lambda1", "vol_lb", "lambda_lb", "F_second", "crit_residual"};
    for (const auto& r : results) {
        table.add_row({static_cast<double>(r.params.d1), static_cast<double>(r.params.d2), r.params.s, r.params.V,
                       r.sigma_star, r.t_star, r.lambda1, r.vol_lower_bound, r.lambda_lower_bound, r.F_second,
                       r.crit_residual});
    }
    return table;
}

bool RegressionReport::passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const RegressionRow& r) { return r.passed; });
}

namespace {

double baseline_value(const std::string& kind, double s, double x, int n) {
    if (kind == "minimize") {
        ProblemParams p;
        p.s = s;
        return ProductMinimizer(p, n > 0 ? n : kDefaultRadialN).minimize().lambda1;
    }
    if (kind == "disk") return solve_disk({x, s, n > 0 ? n : kDefaultGridN}).extrapolated;
    if (kind == "G") {
        ProblemParams p;
        p.s = s;
        return ProductMinimizer(p, n > 0 ? n : kDefaultRadialN).lambda1_product(x);
    }
    if (kind == "ball") return mu1_ball(static_cast<int>(std::lround(x)), 1.0, n > 0 ? n : kDefaultRadialN);
    throw InvalidProblem("unknown baseline kind '" + kind + "'");
}

std::string cell_text(const Cell& c) {
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    return format_number(std::get<double>(c));
}

double cell_number(const Cell& c, const std::string& column, std::size_t row) {
    if (const auto* v = std::get_if<double>(&c)) return *v;
    const auto& text = std::get<std::string>(c);
    if (text.empty()) return 0.0;
    throw InvalidProblem("baseline row " + std::to_string(row + 1) + ": column " + column + " is not numeric");
}

}  // namespace

RegressionReport regression_suite(const std::filesystem::path& baseline, int jobs) {
    if (!std::filesystem::exists(baseline)) throw BaselineMissing("baseline not found: " + baseline.string());
    const SweepTable table = read_csv(baseline);
    RegressionReport report;
    if (table.rows.empty()) {
        report.empty = true;
        return report;
    }
    for (const char* col : {"name", "kind", "s", "x", "n", "expected", "rel_tol"}) {
        if (std::find(table.headers.begin(), table.headers.end(), col) == table.headers.end()) {
            throw InvalidProblem(std::string("baseline lacks column ") + col);
        }
    }
    const auto c_name = table.column("name"), c_kind = table.column("kind"), c_s = table.column("s"),
               c_x = table.column("x"), c_n = table.column("n"), c_exp = table.column("expected"),
               c_tol = table.column("rel_tol");

    report.rows.resize(table.rows.size());
    parallel_for(table.rows.size(), jobs, [&](std::size_t i) {
        const auto& row = table.rows[i];
        RegressionRow& r = report.rows[i];
        r.name = cell_text(row[c_name]);
        r.expected = cell_number(row[c_exp], "expected", i);
        r.tolerance = cell_number(row[c_tol], "rel_tol", i);
        r.computed = baseline_value(cell_text(row[c_kind]), cell_number(row[c_s], "s", i),
                                    cell_number(row[c_x], "x", i),
                                    static_cast<int>(cell_number(row[c_n], "n", i)));
        r.rel_dev = std::abs(r.computed - r.expected) / std::abs(r.expected);
        r.passed = r.rel_dev <= r.tolerance;
    });
    for (const auto& r : report.rows) report.max_rel_dev = std::max(report.max_rel_dev, r.rel_dev);
    return report;
}

namespace {

void write_table(const SweepTable& table, const RunConfig& cfg, std::ostream& out) {
    if (cfg.output_path.empty()) {
        write_csv(table, out);
    } else {
        emit_csv(table, cfg.output_path);
    }
}

std::vector<PlotSeries> series_by_s(const SweepTable& table, const std::string& x, const std::string& y) {
    std::vector<PlotSeries> series;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const double s = table.number(r, "s");
        char label[32];
        std::snprintf(label, sizeof label, "s=%g", s);
        const std::string name = label;
        if (series.empty() || series.back().name != name) series.push_back({name, {}, {}});
        series.back().x.push_back(table.number(r, x));
        series.back().y.push_back(table.number(r, y));
    }
    return series;
}

std::vector<double> default_sweep_grid() {
    return linear_grid(0.25, 4.0, 60);
}

int run_solve1d(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    RadialProblem p;
    p.d1 = cfg.params.d1;
    p.s = cfg.params.s;
    p.mu = cfg.mu;
    p.R = cfg.R;
    p.n = cfg.resolved_n();
    const RadialSolution sol = solve_radial(p);
    log << "E1 = " << format_number(sol.energy) << "  dE/dmu = " << format_number(sol.hf_derivative)
        << "  v'(R) = " << format_number(sol.boundary_slope) << '\n';
    SweepTable table;
    table.headers = {"r", "v"};
    const double h = p.h();
    for (std::size_t i = 0; i < sol.v.size(); ++i) table.add_row({h * static_cast<double>(i), sol.v[i]});
    write_table(table, cfg, out);
    if (cfg.svg_path) {
        PlotSeries curve{"v", {}, {}};
        for (std::size_t i = 0; i < sol.v.size(); ++i) {
            curve.x.push_back(h * static_cast<double>(i));
            curve.y.push_back(sol.v[i]);
        }
        emit_svg(*cfg.svg_path, "ground state", "r", "v", {curve});
    }
    return exit_code::ok;
}

int run_minimize(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const MinimizeResult r = ProductMinimizer(cfg.params, cfg.resolved_n()).minimize();
    log << "lambda1 = " << format_number(r.lambda1) << "  t* = " << format_number(r.t_star) << '\n';
    write_table(minimize_table({r}), cfg, out);
    return exit_code::ok;
}

int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const std::vector<double> grid = cfg.t_grid.value_or(default_sweep_grid());
    const auto& s_list = *cfg.s_list;
    for (double s : s_list) {
        if (!(s > 0.0)) throw UsageError("--s-list entries must be > 0");
    }
    const BallConstants c = BallConstants::compute(cfg.params.d1, cfg.params.d2, cfg.resolved_n());
    std::vector<std::vector<double>> values(s_list.size());
    parallel_for(s_list.size(), cfg.jobs, [&](std::size_t i) {
        ProblemParams p = cfg.params;
        p.s = s_list[i];
        const ProductMinimizer m(p, c, cfg.resolved_n());
        for (double t : grid) values[i].push_back(m.lambda1_product(t));
    });
    SweepTable table;
    table.headers = {"s", "t", "G_s"};
    for (std::size_t i = 0; i < s_list.size(); ++i) {
        for (std::size_t j = 0; j < grid.size(); ++j) table.add_row({s_list[i], grid[j], values[i][j]});
    }
    write_table(table, cfg, out);
    if (cfg.svg_path) emit_svg(*cfg.svg_path, "G_s(t)", "t", "G_s", series_by_s(table, "t", "G_s"));
    return exit_code::ok;
}

int run_limits(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    std::vector<double> small = kSmallSLadder, large = kLargeSLadder;
    if (cfg.s_list) {
        small.clear();
        large.clear();
        for (double s : *cfg.s_list) {
            if (!(s > 0.0)) throw UsageError("--s-list entries must be > 0");
            (s < 1.0 ? small : large).push_back(s);
        }
        std::sort(small.begin(), small.end());
        std::sort(large.begin(), large.end());
    }
    const std::vector<double> zero_grid = cfg.t_grid.value_or(linear_grid(0.25, 4.0, 20));
    const std::vector<double> inf_grid = cfg.t_grid.value_or(linear_grid(2.2, 4.0, 10));

    SweepTable table;
    table.headers = {"limit", "s", "t", "G_s", "G_limit", "abs_dev"};
    std::vector<PlotSeries> plot;
    const int n = cfg.resolved_n();
    for (auto [kind, ladder, grid] : {std::tuple{LimitKind::S_TO_ZERO, &small, &zero_grid},
                                      std::tuple{LimitKind::S_TO_INFINITY, &large, &inf_grid}}) {
        if (ladder->empty()) continue;
        const ConvergenceReport rep = convergence_report(cfg.params, kind, *ladder, *grid, cfg.jobs, n);
        for (const auto& row : rep.table.rows) {
            std::vector<Cell> cells{std::string(limit_name(kind))};
            cells.insert(cells.end(), row.begin(), row.end());
            table.add_row(std::move(cells));
        }
        for (const auto& d : rep.deviations) {
            log << limit_name(kind) << "  s = " << format_number(d.s) << "  max |G_s - G_limit| = "
                << format_number(d.max_abs_dev) << '\n';
        }
        log << limit_name(kind) << (rep.monotone() ? "  deviations monotone\n" : "  deviations NOT monotone\n");
        auto series = series_by_s(rep.table, "t", "G_s");
        plot.insert(plot.end(), series.begin(), series.end());
        PlotSeries lim{limit_name(kind), *grid, {}};
        for (std::size_t j = 0; j < grid->size(); ++j) lim.y.push_back(rep.table.number(j, "G_limit"));
        plot.push_back(std::move(lim));
    }
    write_table(table, cfg, out);
    if (cfg.svg_path) emit_svg(*cfg.svg_path, "limits of G_s", "t", "G", plot);
    return exit_code::ok;
}

SweepTable shape_table() {
    SweepTable table;
    table.headers = {"shape", "rho_or_t", "s", "n", "lambda1", "extrapolated"};
    return table;
}

int run_disk(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const DiskSolve d = solve_disk(cfg.disk);
    log << "lambda1 = " << format_number(d.lambda1) << "  extrapolated = " << format_number(d.extrapolated)
        << "  interior = " << d.interior_count << '\n';
    SweepTable table = shape_table();
    table.add_row({std::string("disk"), cfg.disk.rho, cfg.disk.s, static_cast<double>(cfg.disk.n), d.lambda1,
                   d.extrapolated});
    write_table(table, cfg, out);
    return exit_code::ok;
}

int run_rectangle(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const int n = cfg.resolved_n();
    const RectangleSolve r = solve_rectangle(*cfg.t, cfg.params.V, cfg.disk.s, n);
    log << "lambda1 = " << format_number(r.lambda1) << "  extrapolated = " << format_number(r.extrapolated)
        << "  decoupled = " << format_number(r.decoupled) << '\n';
    SweepTable table = shape_table();
    table.add_row({std::string("rectangle"), *cfg.t, cfg.disk.s, static_cast<double>(n), r.lambda1, r.extrapolated});
    write_table(table, cfg, out);
    return exit_code::ok;
}

int run_probe(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const SweepTable table = segment_limit_probe(cfg.disk.rho, *cfg.s_list, cfg.disk.n, cfg.jobs);
    log << "reference pi^2/L^2 = " << format_number(segment_reference(cfg.disk.rho)) << '\n';
    write_table(table, cfg, out);
    if (cfg.svg_path) {
        PlotSeries lam{"lambda1", {}, {}}, ref{"reference", {}, {}};
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            lam.x.push_back(table.number(r, "s"));
            lam.y.push_back(table.number(r, "extrapolated"));
            ref.x.push_back(table.number(r, "s"));
            ref.y.push_back(table.number(r, "reference"));
        }
        emit_svg(*cfg.svg_path, "disk eigenvalue vs s", "s", "lambda1", {lam, ref});
    }
    return exit_code::ok;
}

int run_regress(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const RegressionReport rep = regression_suite(cfg.baseline_path, cfg.jobs);
    if (rep.empty) {
        log << "warning: baseline " << cfg.baseline_path.string() << " has no rows\n";
        return exit_code::ok;
    }
    SweepTable table;
    table.headers = {"name", "expected", "computed", "rel_dev", "rel_tol", "status"};
    for (const auto& r : rep.rows) {
        table.add_row({r.name, r.expected, r.computed, r.rel_dev, r.tolerance, std::string(r.passed ? "ok" : "FAIL")});
        if (!r.passed) {
            log << "regression: " << r.name << " computed " << format_number(r.computed) << " expected "
                << format_number(r.expected) << " (rel dev " << format_number(r.rel_dev) << " > "
                << format_number(r.tolerance) << ")\n";
        }
    }
    log << "max relative deviation " << format_number(rep.max_rel_dev) << '\n';
    write_table(table, cfg, out);
    return rep.passed() ? exit_code::ok : exit_code::regression;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    switch (cfg.command) {
    case Command::solve1d: return run_solve1d(cfg, out, log);
    case Command::minimize: return run_minimize(cfg, out, log);
    case Command::sweep_s: return run_sweep(cfg, out, log);
    case Command::limits: return run_limits(cfg, out, log);
    case Command::disk: return run_disk(cfg, out, log);
    case Command::rectangle: return run_rectangle(cfg, out, log);
    case Command::probe: return run_probe(cfg, out, log);
    case Command::regress: return run_regress(cfg, out, log);
    }
    return exit_code::usage;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& log) {
    try {
        return run(parse_config(argc, argv), out, log);
    } catch (const HelpRequested& e) {
        out << e.what();
        return exit_code::ok;
    } catch (const UsageError& e) {
        log << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const InvalidProblem& e) {
        log << "invalid input: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const DegenerateGrid& e) {
        log << "invalid input: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const IoError& e) {
        log << "I/O error: " << e.what() << '\n';
        return exit_code::io;
    } catch (const BaselineMissing& e) {
        log << "regression: " << e.what() << '\n';
        return exit_code::regression;
    } catch (const NonConvergence& e) {
        log << "solver did not converge: " << e.what() << '\n';
        return exit_code::nonconvergence;
    } catch (const BracketFailure& e) {
        log << "solver did not converge: " << e.what() << '\n';
        return exit_code::nonconvergence;
    } catch (const Error& e) {
        log << "error: " << e.what() << '\n';
        return exit_code::nonconvergence;
    }
}

}  // namespace grushin
