#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tscv/calculus.hpp"
#include "tscv/csv.hpp"
#include "tscv/epiderivative.hpp"
#include "tscv/error.hpp"
#include "tscv/problem_file.hpp"
#include "tscv/variational.hpp"

namespace tscv::cli {

namespace {

/// Unreadable files and inconsistent flags; reported with exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read '" + path + "'");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Writes to the file at `path`, or to `fallback` when the path is empty.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) {
                throw InputError("cannot write '" + path + "'");
            }
            os_ = file_.get();
        }
    }
    std::ostream& stream() { return *os_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
};

struct ScaleSource {
    std::string file;
    std::string inline_text;
    double h = 1e-3;

    TimeScale load() const {
        if (file.empty() == inline_text.empty()) {
            throw InputError("give exactly one of a scale FILE or --scale");
        }
        if (!file.empty()) {
            return TimeScale::parse(read_file(file));
        }
        std::string text = inline_text;
        std::replace(text.begin(), text.end(), ';', '\n');
        return TimeScale::parse(text);
    }

    GridFunction::GridPtr grid() const {
        if (!(h > 0.0)) {
            throw InputError("--h must be positive");
        }
        return std::make_shared<const SampleGrid>(load().discretize(h));
    }
};

void add_scale_options(CLI::App* cmd, ScaleSource& src) {
    cmd->add_option("FILE", src.file, "Time-scale file ('interval l r' / 'points p ...' lines)");
    cmd->add_option("--scale", src.inline_text, "Inline time scale; ';' separates lines");
    cmd->add_option("--h", src.h, "Refinement step for intervals")->capture_default_str();
}

void print_summary(std::ostream& os, const Solution& s) {
    os << "functional_value = " << format_number(s.functional_value) << '\n';
    os << "residual_max = " << format_number(s.residual_max) << '\n';
    os << "iterations = " << s.iterations << '\n';
    if (s.lambda) {
        os << "lambda0 = " << format_number(*s.lambda0) << '\n';
        os << "lambda = " << format_number(*s.lambda) << '\n';
        os << "normal = " << (*s.normal_flag ? "true" : "false") << '\n';
        os << "constraint_value = " << format_number(*s.constraint_value) << '\n';
        os << "constraint_residual_max = " << format_number(*s.constraint_residual_max) << '\n';
        if (s.degenerate) {
            os << "degenerate = true\n";
        }
    }
}

struct SolveArgs {
    std::string file;
    double h = 0.0;
    SolveOptions opts;
    std::string out;
};

void cmd_solve(const SolveArgs& a, bool h_given, std::ostream& out, std::ostream& err) {
    const auto pf = parse_problem_file(read_file(a.file));
    const std::optional<double> h = h_given ? std::optional<double>(a.h) : std::nullopt;
    if (h && !(*h > 0.0)) {
        throw InputError("--h must be positive");
    }
    std::optional<IsoProblem> iso;
    if (pf.constraint) {
        iso = make_iso_problem(pf, h);
    }
    const Problem P = iso ? iso->base : make_problem(pf, h);
    const Solution s = iso ? solve_iso(*iso, a.opts) : solve(P, a.opts);
    GridFunction residual = el_residual(P, s.y);
    if (iso) {
        // combined residual on the points where both sides are defined
        const auto RL = unified_residual(P.lagrangian(), P.u(), s.y);
        const auto RG = unified_residual(iso->G, iso->w, s.y);
        auto [lo, hi] = P.residual_window();
        lo = std::max(lo, RG.first());
        hi = std::min(hi, RG.last());
        std::vector<double> combined;
        for (std::size_t i = lo; i <= hi; ++i) {
            combined.push_back(*s.lambda0 * RL.at_index(i) - *s.lambda * RG.at_index(i));
        }
        residual = GridFunction(P.grid(), std::move(combined), lo);
    }

    Sink sink(a.out, out);
    write_solution(sink.stream(), s, residual);
    print_summary(a.out.empty() ? err : out, s);
}

struct ResidualArgs {
    std::string file;
    std::string y;
    double h = 0.0;
    std::string out;
};

void cmd_residual(const ResidualArgs& a, bool h_given, std::ostream& out) {
    const auto pf = parse_problem_file(read_file(a.file));
    const auto P = make_problem(pf, h_given ? std::optional<double>(a.h) : std::nullopt);
    const auto y = grid_function_from_csv(P.grid(), read_file(a.y));
    Sink sink(a.out, out);
    write_grid_function(sink.stream(), el_residual(P, y), "residual");
}

struct EpiArgs {
    ScaleSource scale;
    std::string f;
    double t = 0.0;
    double u = 0.0;
    double h0 = 0.0;
    int k_max = 20;
};

void cmd_epideriv(const EpiArgs& a, bool h0_given, std::ostream& out) {
    const auto grid = a.scale.grid();
    const auto fbar = extend(grid_function_from_csv(grid, read_file(a.f)));
    if (!(a.t >= fbar.a() && a.t <= fbar.b())) {
        throw InputError("--t " + format_number(a.t) + " lies outside [" + format_number(fbar.a()) + ", " +
                         format_number(fbar.b()) + "]");
    }
    const double closed = epiderivative_closed(fbar, a.t, a.u);
    const double h0 = h0_given ? a.h0 : fbar.b() - fbar.a();
    const double est = a.u == 0.0 ? 0.0 : epiderivative_liminf(fbar, a.t, a.u, h0, a.k_max);
    out << "t,u,closed,liminf\n";
    out << format_number(a.t) << ',' << format_number(a.u) << ',' << format_number(closed) << ','
        << format_number(est) << '\n';
}

struct CalcArgs {
    ScaleSource scale;
    std::string f;
    std::string out;
};

void cmd_calc(const std::string& op, const CalcArgs& a, std::ostream& out) {
    const auto grid = a.scale.grid();
    const auto f = grid_function_from_csv(grid, read_file(a.f));
    const double lo = (*grid)[0];
    const double hi = (*grid)[grid->size() - 1];
    Sink sink(a.out, out);
    if (op == "deriv") {
        write_grid_function(sink.stream(), delta_deriv(f), "delta");
    } else if (op == "nabla") {
        write_grid_function(sink.stream(), nabla_deriv(f), "nabla");
    } else if (op == "int") {
        sink.stream() << format_number(delta_integral(f, lo, hi)) << '\n';
    } else {
        sink.stream() << format_number(nabla_integral(f, lo, hi)) << '\n';
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Calculus of variations on time scales"};
    app.name("tscv");
    app.require_subcommand(1);
    app.set_help_flag("--help", "Print this help message and exit");

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "Solve the problem in FILE and write t,y,residual");
    solve_cmd->add_option("FILE", solve_args.file, "Problem file")->required();
    auto* solve_h = solve_cmd->add_option("--h", solve_args.h, "Refinement step (overrides the file)");
    solve_cmd->add_option("--tol", solve_args.opts.tol, "Stationarity tolerance")->capture_default_str();
    solve_cmd->add_option("--max-iter", solve_args.opts.max_iter, "Newton iteration budget")->capture_default_str();
    solve_cmd->add_option("--out", solve_args.out, "Output CSV (default: stdout)");

    ResidualArgs residual_args;
    auto* residual_cmd = app.add_subcommand("residual", "Euler-Lagrange residual of a candidate y");
    residual_cmd->add_option("FILE", residual_args.file, "Problem file")->required();
    residual_cmd->add_option("--y", residual_args.y, "Candidate t,value CSV")->required();
    auto* residual_h = residual_cmd->add_option("--h", residual_args.h, "Refinement step (overrides the file)");
    residual_cmd->add_option("--out", residual_args.out, "Output CSV (default: stdout)");

    EpiArgs epi_args;
    auto* epi_cmd = app.add_subcommand("epideriv", "Contingent epiderivative of the extension of f");
    add_scale_options(epi_cmd, epi_args.scale);
    epi_cmd->add_option("--f", epi_args.f, "Sampled function t,value CSV")->required();
    epi_cmd->add_option("--t", epi_args.t, "Base point")->required();
    epi_cmd->add_option("--u", epi_args.u, "Direction")->required();
    auto* epi_h0 = epi_cmd->add_option("--h0", epi_args.h0, "First quotient step (default: b - a)");
    epi_cmd->add_option("--kmax", epi_args.k_max, "Number of step halvings")->capture_default_str();

    std::string calc_op;
    CalcArgs calc_args;
    auto* calc_cmd = app.add_subcommand("calc", "Delta/nabla derivatives and integrals of sampled data");
    calc_cmd->add_option("OP", calc_op, "deriv | nabla | int | nint")
        ->required()
        ->check(CLI::IsMember({"deriv", "nabla", "int", "nint"}));
    add_scale_options(calc_cmd, calc_args.scale);
    calc_cmd->add_option("--f", calc_args.f, "Sampled function t,value CSV")->required();
    calc_cmd->add_option("--out", calc_args.out, "Output file (default: stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Exit::ok : Exit::usage;
    }

    try {
        if (solve_cmd->parsed()) {
            cmd_solve(solve_args, solve_h->count() > 0, out, err);
        } else if (residual_cmd->parsed()) {
            cmd_residual(residual_args, residual_h->count() > 0, out);
        } else if (epi_cmd->parsed()) {
            cmd_epideriv(epi_args, epi_h0->count() > 0, out);
        } else {
            cmd_calc(calc_op, calc_args, out);
        }
    } catch (const NumericalError& e) {
        err << "tscv: numerical failure: " << e.what() << '\n';
        return Exit::numerical;
    } catch (const EvalError& e) {
        err << "tscv: evaluation failed at (t, y, v) = (" << format_number(e.t()) << ", " << format_number(e.y())
            << ", " << format_number(e.v()) << "): " << e.what() << '\n';
        return Exit::numerical;
    } catch (const ParseError& e) {
        err << "tscv: parse error: " << e.what() << '\n';
        return Exit::input;
    } catch (const Error& e) {
        err << "tscv: " << e.what() << '\n';
        return Exit::input;
    }
    out.flush();
    return Exit::ok;
}

} // namespace tscv::cli
