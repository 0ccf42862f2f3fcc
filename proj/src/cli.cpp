#include "bicost/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bicost/cost.hpp"
#include "bicost/csv.hpp"
#include "bicost/config.hpp"
#include "bicost/equivalence.hpp"
#include "bicost/ermakov.hpp"
#include "bicost/errors.hpp"
#include "bicost/manifest.hpp"
#include "bicost/profile.hpp"
#include "bicost/quench.hpp"
#include "bicost/specfun.hpp"
#include "bicost/su11.hpp"
#include "bicost/svg.hpp"

namespace bicost::io {

namespace {

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

// ---------------------------------------------------------------- output

struct OutputOpts {
    std::string out;
    std::string format = "csv";
};

/// Fail fast if `path` cannot be created/written; leaves no new file
/// behind when the path did not exist before.
void ensure_writable(const std::string& path) {
    if (path.empty()) return;
    std::FILE* probe = std::fopen(path.c_str(), "rb");
    const bool existed = probe != nullptr;
    if (probe) std::fclose(probe);
    std::FILE* f = std::fopen(path.c_str(), "ab");
    if (!f) throw io_error("output path is not writable: " + path);
    std::fclose(f);
    if (!existed) std::remove(path.c_str());
}

std::string strip_known_extension(const std::string& path) {
    for (const char* ext : {".csv", ".svg"}) {
        const std::size_t n = std::string(ext).size();
        if (path.size() > n && path.compare(path.size() - n, n, ext) == 0)
            return path.substr(0, path.size() - n);
    }
    return path;
}

/// Write the table as CSV/SVG per `oo`, record everything in the
/// manifest, and finish the manifest next to the primary output.
void emit_table(const Table& tbl, const SvgStyle& style, const OutputOpts& oo,
                RunManifest& manifest,
                std::chrono::steady_clock::time_point t_start) {
    if (oo.format != "csv" && oo.format != "svg" && oo.format != "both")
        throw config_error("format must be csv, svg, or both");
    if (oo.out.empty()) {
        if (oo.format != "csv")
            throw config_error("svg output requires --out");
        std::fputs(to_csv(tbl).c_str(), stdout);
        return;
    }
    const std::string base = strip_known_extension(oo.out);
    if (oo.format == "csv" || oo.format == "both") {
        const std::string path =
            oo.format == "csv" ? oo.out : base + ".csv";
        const std::string bytes = to_csv(tbl);
        write_text_file(path, bytes);
        manifest.add_file(path, bytes);
    }
    if (oo.format == "svg" || oo.format == "both") {
        const std::string path =
            oo.format == "svg" ? oo.out : base + ".svg";
        const std::string bytes = render_svg(tbl, style);
        write_text_file(path, bytes);
        manifest.add_file(path, bytes);
    }
    manifest.wall_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - t_start)
            .count();
    manifest.write_next_to(oo.out);
}

// ---------------------------------------------------- config-file merge

/// Maps config-file keys onto the same variables the flags bind, so a
/// file provides defaults and explicit flags override them.
struct Binder {
    std::map<std::string, std::function<void(const KeyValueConfig&,
                                             const std::string&)>>
        setters;

    void number(const std::string& key, double* v) {
        setters[key] = [v](const KeyValueConfig& c, const std::string& k) {
            *v = c.as_double(k);
        };
    }
    void opt_number(const std::string& key, std::optional<double>* v) {
        setters[key] = [v](const KeyValueConfig& c, const std::string& k) {
            *v = c.as_double(k);
        };
    }
    void integer(const std::string& key, long* v) {
        setters[key] = [v](const KeyValueConfig& c, const std::string& k) {
            *v = c.as_long(k);
        };
    }
    void text(const std::string& key, std::string* v) {
        setters[key] = [v](const KeyValueConfig& c, const std::string& k) {
            *v = c.raw(k);
        };
    }

    void apply(const KeyValueConfig& cfg, const std::string& subcommand) {
        for (const auto& [key, value] : cfg.entries()) {
            (void)value;
            if (key == "subcommand") {
                if (cfg.raw(key) != subcommand)
                    throw config_error(
                        "config: subcommand '" + cfg.raw(key) +
                        "' does not match the invoked subcommand '" +
                        subcommand + "'");
                continue;
            }
            auto it = setters.find(key);
            if (it == setters.end())
                throw config_error("config: unknown key '" + key +
                                   "' for subcommand '" + subcommand + "'");
            it->second(cfg, key);
        }
    }
};

/// Pre-scan for --config so the file can seed defaults before CLI11
/// parses the flags.
std::string find_config_path(int argc, const char* const* argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) return argv[i + 1];
        if (a.rfind("--config=", 0) == 0) return a.substr(9);
    }
    return {};
}

std::string find_subcommand(int argc, const char* const* argv) {
    for (int i = 1; i < argc; ++i)
        if (argv[i][0] != '-') return argv[i];
    return {};
}

// ------------------------------------------------------- common options

struct Common {
    double lambda0 = 1.0;
    std::optional<double> lambda2_sq;
    double tol = 1e-10;
    double t_max = 1.0;
    long steps = 201;
    OutputOpts oo;
    std::string config_path;
};

void add_common(CLI::App* cmd, Common& c, Binder& b) {
    cmd->add_option("--lambda0", c.lambda0, "overall cost scale lambda_0");
    cmd->add_option("--lambda2-sq", c.lambda2_sq,
                    "free off-diagonal weight lambda_2^2 "
                    "(default 0.05 lambda_0^2)");
    cmd->add_option("--tol", c.tol, "integration tolerance");
    cmd->add_option("--t-max", c.t_max, "end of the time span");
    cmd->add_option("--steps", c.steps, "output samples / case count");
    cmd->add_option("--out", c.oo.out, "output file path");
    cmd->add_option("--format", c.oo.format, "csv, svg, or both")
        ->check(CLI::IsMember({"csv", "svg", "both"}));
    cmd->add_option("--config", c.config_path,
                    "flat key = value settings file (flags override it)");
    b.number("lambda0", &c.lambda0);
    b.opt_number("lambda2_sq", &c.lambda2_sq);
    b.number("tol", &c.tol);
    b.number("t_max", &c.t_max);
    b.integer("steps", &c.steps);
    b.text("out", &c.oo.out);
    b.text("format", &c.oo.format);
}

void validate_common(const Common& c) {
    if (!(c.tol > 0)) throw config_error("tol must be positive");
    if (!(c.t_max > 0)) throw config_error("t_max must be positive");
    if (c.steps < 2) throw config_error("steps must be at least 2");
    ensure_writable(c.oo.out);
}

void echo_common(const Common& c, const std::string& sub,
                 std::map<std::string, std::string>& echo,
                 const CostConstants& k) {
    echo["subcommand"] = sub;
    echo["lambda0"] = format_double(c.lambda0);
    echo["lambda1_sq"] = format_double(k.lambda1_sq);
    echo["lambda2_sq"] = format_double(k.lambda2_sq);
    echo["tol"] = format_double(c.tol);
    echo["t_max"] = format_double(c.t_max);
    echo["steps"] = std::to_string(c.steps);
    echo["format"] = c.oo.format;
}

// ------------------------------------------------------- profile options

struct ProfileOpts {
    std::string family = "constant";
    double b1 = 1, b2 = 1;
    double l1 = 1, l2 = 1;
    double delta = 1, eta = 1;
    double mass = 1, omega = 1, damping = 0;
};

void add_profile(CLI::App* cmd, ProfileOpts& p, Binder& b) {
    cmd->add_option("--profile", p.family,
                    "constant | example1case1 | example1case2 | example2 | "
                    "quench | ck")
        ->check(CLI::IsMember({"constant", "example1case1", "example1case2",
                               "example2", "quench", "ck"}));
    cmd->add_option("--b1", p.b1, "falloff profile offset");
    cmd->add_option("--b2", p.b2, "falloff profile rate (0 < b2 <= 2)");
    cmd->add_option("--l1", p.l1, "linear-rho profile slope");
    cmd->add_option("--l2", p.l2, "linear-rho profile offset");
    cmd->add_option("--delta", p.delta, "quench strength");
    cmd->add_option("--eta", p.eta, "quench time scale");
    cmd->add_option("--mass", p.mass, "damped-oscillator mass scale");
    cmd->add_option("--omega", p.omega, "frequency (constant / ck)");
    cmd->add_option("--damping", p.damping, "damping rate");
    b.text("profile.family", &p.family);
    b.number("profile.b1", &p.b1);
    b.number("profile.b2", &p.b2);
    b.number("profile.l1", &p.l1);
    b.number("profile.l2", &p.l2);
    b.number("profile.delta", &p.delta);
    b.number("profile.eta", &p.eta);
    b.number("profile.mass", &p.mass);
    b.number("profile.omega", &p.omega);
    b.number("profile.damping", &p.damping);
}

void echo_profile(const ProfileOpts& p,
                  std::map<std::string, std::string>& echo) {
    echo["profile.family"] = p.family;
    auto put = [&](const char* k, double v) {
        echo[k] = format_double(v);
    };
    if (p.family == "example1case1" || p.family == "example1case2") {
        put("profile.b1", p.b1);
        if (p.family == "example1case1") put("profile.b2", p.b2);
    } else if (p.family == "example2") {
        put("profile.l1", p.l1);
        put("profile.l2", p.l2);
    } else if (p.family == "quench") {
        put("profile.delta", p.delta);
        put("profile.eta", p.eta);
    } else if (p.family == "ck") {
        put("profile.mass", p.mass);
        put("profile.omega", p.omega);
        put("profile.damping", p.damping);
    } else {
        put("profile.omega", p.omega);
    }
}

/// The auxiliary trajectory and derived functions for one named profile,
/// either by the closed form or by the solver seeded with the closed
/// form's initial data (so numeric and analytic runs describe the same
/// evolution).
struct BuiltProfile {
    DerivedFunctions df;
    AnalyticKind kind;
    AnalyticParams params;
};

BuiltProfile build_profile(const ProfileOpts& p, double t_max, bool analytic,
                           std::optional<double> rho0,
                           std::optional<double> rho_dot0, double tol) {
    AnalyticKind kind;
    AnalyticParams ap;
    std::optional<CoefficientProfile> omega; // OTF families
    std::optional<CkCoefficients> ck;        // the OTMF family

    if (p.family == "constant") {
        if (!(p.omega > 0))
            throw config_error("constant profile needs omega > 0");
        kind = AnalyticKind::constant;
        ap.omega = p.omega;
        omega = CoefficientProfile::constant(p.omega);
    } else if (p.family == "example1case1") {
        if (!(p.b2 < 2))
            throw config_error(
                "example1case1 needs b2 < 2; use example1case2 for b2 = 2");
        kind = AnalyticKind::example1case1;
        ap.b1 = p.b1;
        ap.b2 = p.b2;
        omega = make_example1_profile(p.b1, p.b2);
    } else if (p.family == "example1case2") {
        kind = AnalyticKind::example1case2;
        ap.b1 = p.b1;
        ap.b2 = 2.0;
        omega = make_example1_profile(p.b1, 2.0);
    } else if (p.family == "example2") {
        kind = AnalyticKind::example2;
        ap.l1 = p.l1;
        ap.l2 = p.l2;
        omega = make_example2_profile(p.l1, p.l2);
    } else if (p.family == "quench") {
        kind = AnalyticKind::quench;
        ap.delta = p.delta;
        ap.eta = p.eta;
        omega = make_quench_profile(p.delta, p.eta);
    } else if (p.family == "ck") {
        kind = AnalyticKind::ck;
        ap.M = p.mass;
        ap.omega = p.omega;
        ap.Delta = p.damping;
        ck = make_ck_coefficients(p.mass, p.omega, p.damping);
    } else {
        throw config_error("unknown profile family: " + p.family);
    }

    AuxiliaryTrajectory closed = analytic_auxiliary(kind, ap, 0.0, t_max);
    AuxiliaryTrajectory traj = closed;
    if (!analytic) {
        const double r0 = rho0.value_or(closed.rho(0.0));
        const double rd0 = rho_dot0.value_or(closed.rho_dot(0.0));
        SolveOptions opts;
        opts.abs_tol = opts.rel_tol = tol;
        traj = ck ? solve_auxiliary_otmf(ck->A1, ck->B1, 0.0, t_max, r0, rd0,
                                         opts)
                  : solve_auxiliary_otf(*omega, 0.0, t_max, r0, rd0, opts);
    } else if (rho0 || rho_dot0) {
        throw config_error(
            "--rho0/--rho-dot0 apply to the numeric solver; drop "
            "--analytic to use them");
    }

    if (ck)
        return {DerivedFunctions(traj, OtmfOscillator{ck->A1, ck->B1}), kind,
                ap};
    return {DerivedFunctions(traj, OtfOscillator{*omega}), kind, ap};
}

// ------------------------------------------------------------------ cost

int run_cost(const Common& c, const ProfileOpts& p, bool analytic,
             std::optional<double> rho0, std::optional<double> rho_dot0,
             const std::string& trajectory_out,
             std::chrono::steady_clock::time_point t_start) {
    ensure_writable(trajectory_out);
    const CostConstants k = default_cost_constants(c.lambda0, c.lambda2_sq);
    const BuiltProfile bp =
        build_profile(p, c.t_max, analytic, rho0, rho_dot0, c.tol);
    const DerivedFunctions& df = bp.df;

    const CostTrajectory ct = total_cost(
        [&](double t) { return cost_squared(df, k, t); },
        [&](double t) { return df.f3(t); }, k, 0.0, c.t_max,
        static_cast<int>(c.steps), c.tol, df.trajectory().breakpoints());

    Table tbl;
    tbl.columns = {"t", "F2", "C_cum", "bound"};
    for (std::size_t i = 0; i < ct.times.size(); ++i)
        tbl.rows.push_back(
            {ct.times[i], ct.F2[i], ct.cumulative[i], ct.bound[i]});

    RunManifest manifest;
    echo_common(c, "cost", manifest.config, k);
    echo_profile(p, manifest.config);
    manifest.config["analytic"] = analytic ? "true" : "false";

    SvgStyle style;
    style.title = "cost along " + p.family;
    style.x_label = "t";
    style.y_label = "F2 / C / bound";
    emit_table(tbl, style, c.oo, manifest, t_start);

    if (!trajectory_out.empty()) {
        Table tr;
        tr.columns = {"t", "rho", "rho_dot", "f"};
        const AuxiliaryTrajectory& traj = df.trajectory();
        for (double t : ct.times)
            tr.rows.push_back({t, traj.rho(t), traj.rho_dot(t), df.f(t)});
        const std::string bytes = to_csv(tr);
        write_text_file(trajectory_out, bytes);
    }

    std::printf("profile        %s (%s)\n", p.family.c_str(),
                df.trajectory().source().c_str());
    std::printf("total cost     %.12g\n", ct.cumulative.back());
    std::printf("bound at t_max %.12g\n", ct.bound.back());
    std::printf("quad error     %.3g\n", ct.quadrature_error);
    return 0;
}

// ----------------------------------------------------------------- quench

int run_quench(const Common& c, long figure, double beta, double s_max,
               double eta, const std::string& mode,
               std::chrono::steady_clock::time_point t_start) {
    const CostConstants k = default_cost_constants(c.lambda0, c.lambda2_sq);
    RunManifest manifest;
    echo_common(c, "quench", manifest.config, k);

    if (figure != 0) {
        const quench::Figure which =
            figure == 1   ? quench::Figure::fig1
            : figure == 2 ? quench::Figure::fig2
            : figure == 3 ? quench::Figure::fig3
                          : quench::Figure::fig4;
        const quench::FigureSeries fd = quench::figure_data(which, k);
        Table tbl{fd.columns, fd.rows, fd.notes};

        SvgStyle style;
        style.x_label = "beta";
        if (figure <= 2) {
            style.title = fd.name + ": entropy change vs beta";
            style.y_label = "dS";
            style.dash = {"", "8,4"}; // exact solid, approximation dashed
        } else {
            style.title = fd.name + ": cost vs beta";
            style.y_label = "F_N^2";
            if (figure == 4) style.dash = {"", "10,4,2,4", "8,4", "8,4"};
        }
        manifest.config["figure"] = std::to_string(figure);
        emit_table(tbl, style, c.oo, manifest, t_start);
        for (const std::string& n : fd.notes)
            std::printf("%s\n", n.c_str());
        std::printf("%s: %zu rows\n", fd.name.c_str(), fd.rows.size());
        return 0;
    }

    if (!(beta > 0))
        throw config_error("quench needs --figure or a positive --beta");
    if (!(s_max > 0)) throw config_error("s_max must be positive");
    const quench::QuenchParams qp = quench::QuenchParams::from_beta(beta, eta);
    quench::ShannonMode sm;
    if (mode == "exact")
        sm = quench::ShannonMode::exact;
    else if (mode == "adiabatic")
        sm = quench::ShannonMode::adiabatic;
    else if (mode == "late_time")
        sm = quench::ShannonMode::late_time;
    else
        throw config_error("mode must be exact, adiabatic, or late_time");

    Table tbl;
    tbl.columns = {"s", "omega", "rho", "f", "dS_" + mode, "FN2"};
    const long n = c.steps;
    for (long i = 0; i < n; ++i) {
        const double s = s_max * static_cast<double>(i) / (n - 1);
        tbl.rows.push_back({s, quench::quench_omega(qp, s),
                            quench::quench_rho(qp, s).rho,
                            quench::quench_f(qp, s),
                            quench::shannon_delta(qp, s, sm),
                            quench::quench_cost(qp, k, s)});
    }
    manifest.config["quench.beta"] = format_double(beta);
    manifest.config["quench.eta"] = format_double(eta);
    manifest.config["quench.s_max"] = format_double(s_max);
    manifest.config["quench.mode"] = mode;

    SvgStyle style;
    style.title = "quench sweep, beta = " + format_double(beta);
    style.x_label = "s";
    emit_table(tbl, style, c.oo, manifest, t_start);
    std::printf("beta %.6g: FN2(0) = %.12g, FN2(s_max) = %.12g\n", beta,
                tbl.rows.front().back(), tbl.rows.back().back());
    return 0;
}

// ------------------------------------------------------------------ equiv

int run_equiv(const Common& c, const ProfileOpts& p,
              std::chrono::steady_clock::time_point t_start) {
    if (p.family != "ck" && p.family != "constant")
        throw config_error(
            "equiv runs on the varying-mass family; use --profile ck");
    const CostConstants k = default_cost_constants(c.lambda0, c.lambda2_sq);
    const CkCoefficients ck =
        make_ck_coefficients(p.mass, p.omega, p.damping);

    // Initial data that keeps the damped oscillator on its steady
    // trajectory (constant diagonal function).
    const double w0 =
        std::sqrt(p.omega * p.omega - 0.25 * p.damping * p.damping);
    const double rho0 = 1.0 / std::sqrt(p.mass * w0);
    const double rho_dot0 = -0.5 * p.damping * rho0;

    SolveOptions opts;
    opts.abs_tol = opts.rel_tol = c.tol;
    const MappedPair pair = build_equivalent_pair(
        OtmfOscillator{ck.A1, ck.B1}, c.t_max, rho0, rho_dot0, opts);
    const CostEquivalence ce = verify_cost_equivalence(pair, k, c.tol);
    const double sup =
        verify_f3_mapping(pair, static_cast<int>(c.steps));

    Table tbl;
    tbl.columns = {"t", "F2_otmf", "B1_times_f_otf"};
    char line[128];
    std::snprintf(line, sizeof line, "D_otmf = %.17g", ce.D_otmf);
    tbl.comments.push_back(line);
    std::snprintf(line, sizeof line, "D_otf = %.17g", ce.D_otf);
    tbl.comments.push_back(line);
    std::snprintf(line, sizeof line, "cost_gap_rel = %.17g", ce.gap_rel);
    tbl.comments.push_back(line);
    std::snprintf(line, sizeof line, "f3_mapping_sup_rel = %.17g", sup);
    tbl.comments.push_back(line);
    for (long i = 0; i < c.steps; ++i) {
        const double t = c.t_max * static_cast<double>(i) / (c.steps - 1);
        const double tau = pair.rep.tau(t);
        tbl.rows.push_back({t, cost_squared(pair.otmf, k, t),
                            ck.B1(t) * pair.otf.f(tau)});
    }

    RunManifest manifest;
    echo_common(c, "equiv", manifest.config, k);
    echo_profile(p, manifest.config);

    SvgStyle style;
    style.title = "clock-change equivalence";
    style.x_label = "t";
    emit_table(tbl, style, c.oo, manifest, t_start);

    std::printf("D_otmf        %.12g\n", ce.D_otmf);
    std::printf("D_otf         %.12g\n", ce.D_otf);
    std::printf("cost gap rel  %.3g\n", ce.gap_rel);
    std::printf("f3 map sup    %.3g\n", sup);
    return 0;
}

// ------------------------------------------------------------- su11-check

int run_su11_check(const Common& c, long seed,
                   std::chrono::steady_clock::time_point t_start) {
    using namespace su11;
    std::mt19937_64 rng(static_cast<unsigned long long>(seed));
    std::uniform_real_distribution<double> uni(-1.2, 1.2);

    Table tbl;
    tbl.columns = {"index", "chi_abs", "decomposition_err", "roundtrip_err"};
    double worst_dec = 0, worst_rt = 0;
    for (long i = 0; i < c.steps; ++i) {
        Triple b;
        Triple cdec;
        bool ok = false;
        for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
            b = Triple{uni(rng), uni(rng), uni(rng)};
            if (i % 4 == 0) {
                // exercise the chi ~ 0 series branch as well
                b.k0 *= 1e-6;
                b.kp *= 1e-6;
                b.km *= 1e-6;
            }
            try {
                cdec = decompose_b_to_c(b);
                ok = true;
            } catch (const numeric_error&) {
                // singular g(chi); draw a fresh triple
            }
        }
        if (!ok)
            throw numeric_error(
                "su11-check: could not draw a decomposable triple");
        const Mat2 mb = matrix_from_b(b);
        const double err_dec = max_abs_diff(mb, matrix_from_c(cdec));
        const Triple b2 = b_from_matrix(mb);
        const double err_rt = max_abs_diff(mb, matrix_from_b(b2));
        worst_dec = std::max(worst_dec, err_dec);
        worst_rt = std::max(worst_rt, err_rt);
        tbl.rows.push_back(
            {static_cast<double>(i), std::abs(chi_of(b)), err_dec, err_rt});
    }

    // Schrodinger residuals of the reconstructed evolution operators.
    // Tight tolerances: dense-output interpolation limits the residual.
    SolveOptions tight;
    tight.abs_tol = tight.rel_tol = 1e-12;
    auto residual_for = [&](const CoefficientProfile& m1,
                            const CoefficientProfile& om1sq) {
        const ClassicalTrajectory xc =
            solve_classical(m1, om1sq, 0.0, 1.0, 1.0, 0.0, tight);
        std::vector<double> grid(801);
        for (std::size_t j = 0; j < grid.size(); ++j)
            grid[j] = static_cast<double>(j) / (grid.size() - 1);
        auto U = [&](double t) {
            return matrix_from_c(evolution_c_coefficients(xc, t));
        };
        auto H = [&](double t) {
            const double b1v = 1.0 / m1(t);
            const double a1v = m1(t) * om1sq(t);
            return hamiltonian_matrix(a1v, b1v);
        };
        return verify_schrodinger_residual(U, H, grid);
    };
    const double res_const = residual_for(CoefficientProfile::constant(1.0),
                                          CoefficientProfile::constant(1.0));
    const CkCoefficients ck = make_ck_coefficients(1.0, 1.0, 0.3);
    const double res_ck =
        residual_for(profile_reciprocal(ck.B1),
                     CoefficientProfile::from_functions(
                         [ck](double t) { return ck.A1(t) * ck.B1(t); },
                         [ck](double t) {
                             return ck.A1.deriv(t) * ck.B1(t) +
                                    ck.A1(t) * ck.B1.deriv(t);
                         },
                         [ck](double t) {
                             return ck.A1.deriv2(t) * ck.B1(t) +
                                    2.0 * ck.A1.deriv(t) * ck.B1.deriv(t) +
                                    ck.A1(t) * ck.B1.deriv2(t);
                         },
                         ck.A1.domain()));

    char line[96];
    std::snprintf(line, sizeof line, "max_decomposition_err = %.17g",
                  worst_dec);
    tbl.comments.push_back(line);
    std::snprintf(line, sizeof line, "max_roundtrip_err = %.17g", worst_rt);
    tbl.comments.push_back(line);
    std::snprintf(line, sizeof line, "schrodinger_residual_constant = %.17g",
                  res_const);
    tbl.comments.push_back(line);
    std::snprintf(line, sizeof line, "schrodinger_residual_ck = %.17g",
                  res_ck);
    tbl.comments.push_back(line);

    RunManifest manifest;
    const CostConstants k = default_cost_constants(c.lambda0, c.lambda2_sq);
    echo_common(c, "su11-check", manifest.config, k);
    manifest.config["seed"] = std::to_string(seed);

    SvgStyle style;
    style.title = "decomposition errors";
    style.x_label = "index";
    emit_table(tbl, style, c.oo, manifest, t_start);

    std::printf("triples                 %ld\n", c.steps);
    std::printf("max decomposition err   %.3g\n", worst_dec);
    std::printf("max roundtrip err       %.3g\n", worst_rt);
    std::printf("schrodinger residual    %.3g (constant), %.3g (damped)\n",
                res_const, res_ck);
    return 0;
}

// ------------------------------------------------------------------- zeta

int run_zeta(const Common& c,
             std::chrono::steady_clock::time_point t_start) {
    const CostConstants k = default_cost_constants(c.lambda0, c.lambda2_sq);
    const auto [rneg, rpos] = solve_mean_ratio_timeindep();
    const auto [gneg, gpos] = solve_mean_ratio();
    const double z1m = hurwitz_zeta_nonpos(-1, 0.5 - rpos);
    const double z1p = hurwitz_zeta_nonpos(-1, 0.5 + rpos);
    const double z2p = hurwitz_zeta_nonpos(-2, 0.5 + rpos);
    const double z2m = hurwitz_zeta_nonpos(-2, 0.5 - rpos);

    Table tbl;
    tbl.columns = {"root_plus",      "root_minus",     "gamma_plus",
                   "gamma_minus",    "zeta1_at_qminus", "zeta1_at_qplus",
                   "zeta2_at_qplus", "zeta2_at_qminus", "lambda1_sq",
                   "lambda2_sq"};
    tbl.rows.push_back({rpos, rneg, gpos, gneg, z1m, z1p, z2p, z2m,
                        k.lambda1_sq, k.lambda2_sq});

    RunManifest manifest;
    echo_common(c, "zeta", manifest.config, k);
    SvgStyle style; // not meaningful as a plot, but harmless
    style.title = "regularization constants";
    OutputOpts oo = c.oo;
    if (!oo.out.empty() && oo.format != "csv") oo.format = "csv";
    emit_table(tbl, style, oo, manifest, t_start);

    std::printf("mean ratio roots (a = f q): %+.15f / %+.15f\n", rpos, rneg);
    std::printf("mean ratio roots (time-dep): %+.15f / %+.15f\n", gpos, gneg);
    std::printf("zeta(-1) at both roots:     %.3g / %.3g\n", z1m, z1p);
    std::printf("zeta(-2, 1/2 + 1/(2 sqrt3)) = %.15f\n", z2p);
    std::printf("lambda1^2 = %.15f  (sqrt3/432 = %.15f at lambda0 = 1)\n",
                k.lambda1_sq, std::sqrt(3.0) / 432.0);
    std::printf("lambda2^2 = %.15f (free weight)\n", k.lambda2_sq);
    return 0;
}

// -------------------------------------------------------------- timeindep

int run_timeindep(const Common& c, double a0, double b0, double c0,
                  std::optional<double> f0, std::optional<double> d0,
                  std::chrono::steady_clock::time_point t_start) {
    const CostConstants k = default_cost_constants(c.lambda0, c.lambda2_sq);
    TimeIndepGeneralized spec;
    spec.A0 = a0;
    spec.B0 = b0;
    spec.C0 = c0;
    spec.F0 = f0;
    spec.D0 = d0;
    const TimeIndepCost tc = cost_timeindep(spec, k);

    Table tbl;
    tbl.columns = {"a0",         "b0",        "c0",
                   "f0",         "d0",        "F2",
                   "complexity", "regulator_f0_sq", "F2_driven_route",
                   "omega_is",   "epsilon",   "mean_minus",
                   "mean_sign"};
    tbl.rows.push_back(
        {a0, b0, c0, f0.value_or(nan_value()), d0.value_or(nan_value()),
         tc.F2, tc.complexity,
         tc.regulator_force_sq.value_or(nan_value()),
         tc.F2_driven_route.value_or(nan_value()),
         tc.isotonic ? tc.isotonic->omega_is : nan_value(),
         tc.isotonic ? tc.isotonic->epsilon : nan_value(),
         tc.isotonic ? tc.isotonic->mean_minus : nan_value(),
         tc.isotonic ? static_cast<double>(tc.isotonic->mean_sign)
                     : nan_value()});

    RunManifest manifest;
    echo_common(c, "timeindep", manifest.config, k);
    OutputOpts oo = c.oo;
    if (!oo.out.empty() && oo.format != "csv") oo.format = "csv";
    SvgStyle style;
    emit_table(tbl, style, oo, manifest, t_start);

    std::printf("F2          %.15g\n", tc.F2);
    std::printf("complexity  %.15g\n", tc.complexity);
    if (tc.regulator_force_sq)
        std::printf("F0^2        %.15g (driven-route F2 %.15g)\n",
                    *tc.regulator_force_sq, *tc.F2_driven_route);
    if (tc.isotonic)
        std::printf("omega_is    %.15g, epsilon %.15g, mean %.15g (sign %d)\n",
                    tc.isotonic->omega_is, tc.isotonic->epsilon,
                    tc.isotonic->mean_minus, tc.isotonic->mean_sign);
    return 0;
}

// --------------------------------------------------------------- dispatch

int dispatch(int argc, const char* const* argv) {
    const auto t_start = std::chrono::steady_clock::now();

    CLI::App app{"bi-invariant cost toolkit for driven oscillators"};
    app.require_subcommand(1);
    app.set_version_flag("--version",
                         std::string(kToolName) + " " + kToolVersion);

    // cost
    Common cost_common;
    ProfileOpts cost_profile;
    bool cost_analytic = false;
    std::optional<double> cost_rho0, cost_rho_dot0;
    std::string cost_traj_out;
    Binder cost_binder;
    CLI::App* cmd_cost = app.add_subcommand(
        "cost", "total cost along a named frequency profile");
    add_common(cmd_cost, cost_common, cost_binder);
    add_profile(cmd_cost, cost_profile, cost_binder);
    cmd_cost->add_flag("--analytic", cost_analytic,
                       "evaluate the closed-form trajectory instead of the "
                       "solver");
    cmd_cost->add_option("--rho0", cost_rho0, "initial rho (numeric runs)");
    cmd_cost->add_option("--rho-dot0", cost_rho_dot0,
                         "initial d rho/dt (numeric runs)");
    cmd_cost->add_option("--trajectory", cost_traj_out,
                         "also write the t, rho, rho_dot, f table here");
    cost_binder.text("trajectory", &cost_traj_out);
    cost_binder.opt_number("rho0", &cost_rho0);
    cost_binder.opt_number("rho_dot0", &cost_rho_dot0);

    // quench
    Common quench_common;
    quench_common.t_max = 20; // unused; sweeps use s_max
    long quench_figure = 0;
    double quench_beta = 0, quench_s_max = 20, quench_eta = 1;
    std::string quench_mode = "exact";
    Binder quench_binder;
    CLI::App* cmd_quench = app.add_subcommand(
        "quench", "smooth-quench entropy and cost tables");
    add_common(cmd_quench, quench_common, quench_binder);
    cmd_quench->add_option("--figure", quench_figure,
                           "emit a full figure table (1..4)")
        ->check(CLI::Range(1, 4));
    cmd_quench->add_option("--beta", quench_beta,
                           "quench rate delta/eta for a single sweep");
    cmd_quench->add_option("--s-max", quench_s_max,
                           "end of the dimensionless time sweep");
    cmd_quench->add_option("--eta", quench_eta, "quench time scale");
    cmd_quench->add_option("--mode", quench_mode,
                           "entropy column: exact, adiabatic, late_time")
        ->check(CLI::IsMember({"exact", "adiabatic", "late_time"}));
    quench_binder.integer("quench.figure", &quench_figure);
    quench_binder.number("quench.beta", &quench_beta);
    quench_binder.number("quench.s_max", &quench_s_max);
    quench_binder.number("quench.eta", &quench_eta);
    quench_binder.text("quench.mode", &quench_mode);

    // equiv
    Common equiv_common;
    ProfileOpts equiv_profile;
    equiv_profile.family = "ck";
    equiv_profile.damping = 0.3;
    Binder equiv_binder;
    CLI::App* cmd_equiv = app.add_subcommand(
        "equiv", "clock-change equivalence of the two formulations");
    add_common(cmd_equiv, equiv_common, equiv_binder);
    add_profile(cmd_equiv, equiv_profile, equiv_binder);

    // su11-check
    Common su_common;
    su_common.steps = 100;
    long su_seed = 7041;
    Binder su_binder;
    CLI::App* cmd_su = app.add_subcommand(
        "su11-check", "decomposition and evolution self-checks");
    add_common(cmd_su, su_common, su_binder);
    cmd_su->add_option("--seed", su_seed, "random triple seed");
    su_binder.integer("seed", &su_seed);

    // zeta
    Common zeta_common;
    Binder zeta_binder;
    CLI::App* cmd_zeta = app.add_subcommand(
        "zeta", "regularization roots and cost constants");
    add_common(cmd_zeta, zeta_common, zeta_binder);

    // timeindep
    Common ti_common;
    double ti_a0 = 1, ti_b0 = 1, ti_c0 = 0;
    std::optional<double> ti_f0, ti_d0;
    Binder ti_binder;
    CLI::App* cmd_ti = app.add_subcommand(
        "timeindep", "constant generalized-oscillator cost");
    add_common(cmd_ti, ti_common, ti_binder);
    cmd_ti->add_option("--a0", ti_a0, "X^2 coefficient (times 1/2)");
    cmd_ti->add_option("--b0", ti_b0, "P^2 coefficient (times 1/2)");
    cmd_ti->add_option("--c0", ti_c0, "cross-term coefficient (times 1/4)");
    cmd_ti->add_option("--f0", ti_f0, "linear drive amplitude");
    cmd_ti->add_option("--d0", ti_d0, "inverse-square coupling");
    ti_binder.number("timeindep.a0", &ti_a0);
    ti_binder.number("timeindep.b0", &ti_b0);
    ti_binder.number("timeindep.c0", &ti_c0);
    ti_binder.opt_number("timeindep.f0", &ti_f0);
    ti_binder.opt_number("timeindep.d0", &ti_d0);

    // Seed defaults from --config before the flags are parsed.
    const std::string cfg_path = find_config_path(argc, argv);
    if (!cfg_path.empty()) {
        const std::string sub = find_subcommand(argc, argv);
        const KeyValueConfig cfg = KeyValueConfig::parse_file(cfg_path);
        if (sub == "cost")
            cost_binder.apply(cfg, sub);
        else if (sub == "quench")
            quench_binder.apply(cfg, sub);
        else if (sub == "equiv")
            equiv_binder.apply(cfg, sub);
        else if (sub == "su11-check")
            su_binder.apply(cfg, sub);
        else if (sub == "zeta")
            zeta_binder.apply(cfg, sub);
        else if (sub == "timeindep")
            ti_binder.apply(cfg, sub);
        else
            throw config_error("--config needs a subcommand");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    }

    if (cmd_cost->parsed()) {
        validate_common(cost_common);
        return run_cost(cost_common, cost_profile, cost_analytic, cost_rho0,
                        cost_rho_dot0, cost_traj_out, t_start);
    }
    if (cmd_quench->parsed()) {
        validate_common(quench_common);
        return run_quench(quench_common, quench_figure, quench_beta,
                          quench_s_max, quench_eta, quench_mode, t_start);
    }
    if (cmd_equiv->parsed()) {
        validate_common(equiv_common);
        return run_equiv(equiv_common, equiv_profile, t_start);
    }
    if (cmd_su->parsed()) {
        validate_common(su_common);
        return run_su11_check(su_common, su_seed, t_start);
    }
    if (cmd_zeta->parsed()) {
        validate_common(zeta_common);
        return run_zeta(zeta_common, t_start);
    }
    if (cmd_ti->parsed()) {
        validate_common(ti_common);
        return run_timeindep(ti_common, ti_a0, ti_b0, ti_c0, ti_f0, ti_d0,
                             t_start);
    }
    return 2; // unreachable with require_subcommand(1)
}

} // namespace

int run_main(int argc, const char* const* argv) {
    try {
        return dispatch(argc, argv);
    } catch (const config_error& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const io_error& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 4;
    } catch (const numeric_error& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}

} // namespace bicost::io
