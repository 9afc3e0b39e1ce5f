#include "rgpe/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rgpe/duhamel.hpp"
#include "rgpe/operators.hpp"

namespace rgpe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot read config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// "pi", "pi/2", "2pi", "pi/4", or a plain number
double parse_time_token(const std::string& s) {
    if (s == "pi") return M_PI;
    if (s == "2pi") return 2.0 * M_PI;
    if (s.rfind("pi/", 0) == 0) {
        double d = std::stod(s.substr(3));
        if (!(d > 0.0)) throw ValidationError("bad time token: " + s);
        return M_PI / d;
    }
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ValidationError("bad time token: " + s);
    }
    if (pos != s.size()) throw ValidationError("bad time token: " + s);
    return v;
}

void emit_error(std::ostream& err, const char* kind, const std::string& msg) {
    nlohmann::json j = {{"error", kind}, {"message", msg}};
    err << j.dump() << '\n';
}

WaveField diff(const WaveField& a, const WaveField& b) {
    return WaveField(a.grid, a.values - b.values, a.time_tag);
}

double rel_l2(const WaveField& a, const WaveField& b) {
    return lp_norm(diff(a, b), 2.0) / lp_norm(b, 2.0);
}

double pair_rel_l2(const FieldPair& a, const FieldPair& b) {
    FieldPair d{diff(a.first, b.first), diff(a.second, b.second)};
    return lp_norm(d, 2.0) / lp_norm(b, 2.0);
}

// Grid for kernel-identity checks: wide enough that the off-center probe
// (vortex plus displaced lump) has decayed below ~1e−8 at the boundary —
// truncation there leaks into spectral gradients as wrap-around noise long
// before aliasing does.  With l = 7/√ω the alias displacement πn|sin ωt|/(ωl)
// still clears the box at n = 64 whenever sin ωt ≳ 0.55; earlier times route
// through the composed path inside mehler_apply.
GridSpec tuned_grid(int n, double omega, double l_cap) {
    return make_grid(n, std::min(l_cap, 7.0 / std::sqrt(omega)));
}

// Grid for quadrature-refinement comparisons: the widest box the direct
// kernel route tolerates at this (n, t).  Raising n both widens the box and
// shrinks the spacing, so the quadrature error visibly falls under
// n-refinement instead of saturating at a fixed truncation floor.
GridSpec refining_grid(int n, double t, double omega, double l_cap) {
    return make_grid(n, std::min(l_cap, mehler_safe_halfwidth(n, t, omega)));
}

// β = 0 reference evolution with a bare stepper (no ledger bookkeeping).
WaveField advance_linear(const WaveField& u0, const SimulationParams& p, double t_end,
                         double dt) {
    SimulationParams lin{p.omega, 0.0, p.sigma};
    Stepper st(u0.grid, lin, dt);
    long nsteps = static_cast<long>(std::ceil(t_end / dt - 1e-12));
    CArray u = u0.values;
    for (long i = 0; i < nsteps; ++i) {
        double step_dt = (i + 1 == nsteps) ? t_end - static_cast<double>(i) * dt : dt;
        if (step_dt == st.dt())
            st.step(u);
        else
            st.step_custom(u, step_dt);
    }
    return WaveField(u0.grid, std::move(u), u0.time_tag + t_end);
}

CheckResult row(const std::string& suite, const std::string& check, double value,
                double tolerance, const std::string& note = "") {
    CheckResult r;
    r.suite = suite;
    r.check = check;
    r.value = value;
    r.tolerance = tolerance;
    r.pass = std::isfinite(value) && value <= tolerance;
    r.note = note;
    return r;
}

// Stretch strong enough that even the short conservation drill trips the
// energy-drift threshold; the injected flow stays unitary, so mass is
// deliberately left green.
constexpr double kInjectedStretch = 3e-2;

struct CorruptionGuard {
    explicit CorruptionGuard(bool on) {
        if (on) set_propagator_corruption(kInjectedStretch);
    }
    ~CorruptionGuard() { set_propagator_corruption(0.0); }
    CorruptionGuard(const CorruptionGuard&) = delete;
    CorruptionGuard& operator=(const CorruptionGuard&) = delete;
};

} // namespace

// --- suites ------------------------------------------------------------------

std::vector<CheckResult> suite_conservation(const RunConfig& config) {
    const auto& p = config.params;
    WaveField u0 = config.initial_data.realize(config.grid, p.omega);
    EvolveConfig ev = config.evolve;
    ev.keep_snapshots = false;
    Trajectory traj = evolve(u0, p, ev);
    const ConservationLedger& led = traj.ledger;

    double mass_drift = 0.0, e0_drift = 0.0, lz_drift = 0.0;
    for (std::size_t i = 0; i < led.rows(); ++i) {
        mass_drift = std::max(mass_drift, std::abs(led.mass[i] - led.mass[0]) / led.mass[0]);
        e0_drift = std::max(e0_drift, std::abs(led.e0[i] - led.e0[0]));
        lz_drift = std::max(lz_drift, std::abs(led.lz[i] - led.lz[0]));
    }
    auto [pch, pcj] = pseudoconformal_residuals(led);
    double pch_max = *std::max_element(pch.begin(), pch.end());
    double pcj_max = *std::max_element(pcj.begin(), pcj.end());
    // the identity-residual budget is calibrated for the σω = 1 resonant case;
    // away from it the history quadrature enters and the budget loosens
    double pc_tol = (p.sigma == 1.0 && p.omega == 1.0) ? 1e-4 : 5e-4;

    std::vector<CheckResult> rows;
    rows.push_back(row("conservation", "mass_drift_rel", mass_drift, 1e-12));
    rows.push_back(row("conservation", "e0_drift_abs", e0_drift, 1e-6));
    rows.push_back(row("conservation", "lz_drift_abs", lz_drift, 1e-6));
    rows.push_back(row("conservation", "pc_h_residual_max", pch_max, pc_tol));
    rows.push_back(row("conservation", "pc_j_residual_max", pcj_max, pc_tol));
    return rows;
}

std::vector<CheckResult> suite_operators(const RunConfig& config) {
    const auto& p = config.params;
    const double om = p.omega;
    std::vector<CheckResult> rows;

    {   // kernel identities (e1)/(e2), direct quadrature on a kernel-safe grid
        double t = 0.6 / om;
        GridSpec g = tuned_grid(64, om, config.grid.l);
        WaveField phi = sample_offset_mixture(g, om);
        auto [r1, r2] = verify_e1_e2(phi, t, p);
        rows.push_back(row("operators", "kernel_identity_e1", r1, 1e-4));
        rows.push_back(row("operators", "kernel_identity_e2", r2, 1e-4));
    }
    {   // conjugation: A(t)S(t)φ = S(t)A(0)φ for A ∈ {J, H}
        double t = 0.6 / om;
        GridSpec g = tuned_grid(64, om, config.grid.l);
        WaveField phi = sample_offset_mixture(g, om);
        OperatorFrame f = OperatorFrame::at(t, om);
        WaveField st = mehler_apply(phi, t, p);
        FieldPair grad = spectral_gradient(phi);
        WaveField mg1(g, Complex(0.0, -1.0) * grad.first.values);
        WaveField mg2(g, Complex(0.0, -1.0) * grad.second.values);
        FieldPair jr{mehler_apply(mg1, t, p), mehler_apply(mg2, t, p)};
        rows.push_back(row("operators", "j_conjugation", pair_rel_l2(apply_J(st, f), jr), 1e-4));
        FieldPair xf = multiply_x(phi);
        WaveField wx1(g, Complex(om) * xf.first.values);
        WaveField wx2(g, Complex(om) * xf.second.values);
        FieldPair hr{mehler_apply(wx1, t, p), mehler_apply(wx2, t, p)};
        rows.push_back(row("operators", "h_conjugation", pair_rel_l2(apply_H(st, f), hr), 1e-4));
    }
    {   // multiplier-factored forms against the direct linear combinations;
        // the quadratic multiplier adds ~ω·tan(ωt)·|x| of spectral reach, so
        // this identity gets a pinned fine grid rather than the user's
        GridSpec g = make_grid(128, 8.0 / std::sqrt(om));
        WaveField u = sample_offset_mixture(g, om);
        OperatorFrame f = OperatorFrame::at(0.7 / om, om);
        rows.push_back(row("operators", "j_factored_agreement",
                           pair_rel_l2(apply_J_factored(u, f), apply_J(u, f)), 1e-10));
        rows.push_back(row("operators", "h_factored_agreement",
                           pair_rel_l2(apply_H_factored(u, f), apply_H(u, f)), 1e-10));
    }
    {   // t = 0 degeneration, exact at the coefficient level (tolerance zero)
        WaveField u = sample_offset_mixture(config.grid, om);
        OperatorFrame f0 = OperatorFrame::at(0.0, om);
        FieldPair j0 = apply_J(u, f0);
        FieldPair grad = spectral_gradient(u);
        FieldPair mi{WaveField(u.grid, Complex(0.0, -1.0) * grad.first.values),
                     WaveField(u.grid, Complex(0.0, -1.0) * grad.second.values)};
        double dj = std::max((j0.first.values - mi.first.values).abs().maxCoeff(),
                             (j0.second.values - mi.second.values).abs().maxCoeff());
        rows.push_back(row("operators", "j_zero_time_exact", dj, 0.0));
        FieldPair h0 = apply_H(u, f0);
        // the reference forms the multiplier ωx first, matching the
        // operator's product order, so equality stays bitwise at any ω
        Eigen::ArrayXd wx = om * grid_coords(u.grid);
        CArray r1(u.grid.n, u.grid.n), r2(u.grid.n, u.grid.n);
        for (int j = 0; j < u.grid.n; ++j)
            for (int i = 0; i < u.grid.n; ++i) {
                r1(i, j) = wx[i] * u.values(i, j);
                r2(i, j) = wx[j] * u.values(i, j);
            }
        double dh = std::max((h0.first.values - r1).abs().maxCoeff(),
                             (h0.second.values - r2).abs().maxCoeff());
        rows.push_back(row("operators", "h_zero_time_exact", dh, 0.0));
    }
    {   // commutation with the fast linear flow
        WaveField u = sample_offset_mixture(config.grid, om);
        double t = 0.5 / om;
        rows.push_back(row("operators", "j_commutation_residual",
                           commutation_residual(u, t, p, GalileanOp::J), 1e-6));
        rows.push_back(row("operators", "h_commutation_residual",
                           commutation_residual(u, t, p, GalileanOp::H), 1e-6));
    }
    {   // L_z sanity: annihilates radial data, eigenvalue m on a vortex
        WaveField gss = sample_gaussian(config.grid, om);
        rows.push_back(row("operators", "lz_radial_annihilation",
                           lp_norm(apply_Lz(gss), 2.0), 1e-10));
        WaveField vtx = sample_vortex(config.grid, om, 1);
        WaveField lzv = apply_Lz(vtx);
        lzv.values -= vtx.values;
        rows.push_back(row("operators", "lz_vortex_eigenvalue", lp_norm(lzv, 2.0), 1e-8));
    }
    {   // pointwise algebra of J applied to the nonlinearity
        GridSpec g = make_grid(96, 7.0 / std::sqrt(om));
        WaveField u = sample_offset_mixture(g, om);
        double t = 0.4 / om;
        SimulationParams p1 = p;
        p1.sigma = 1.0;
        SimulationParams p2 = p;
        p2.sigma = 2.0;
        rows.push_back(row("operators", "nonlinear_identity_sigma1",
                           nonlinear_identity_residual(u, t, p1), 1e-8));
        rows.push_back(row("operators", "nonlinear_identity_sigma2",
                           nonlinear_identity_residual(u, t, p2), 1e-7));
    }
    return rows;
}

std::vector<CheckResult> suite_oracle(const RunConfig& config) {
    const auto& p = config.params;
    const double om = p.omega;
    const int n_o = std::min(config.grid.n, 64);
    std::vector<CheckResult> rows;

    // The refining box at n = 64 is too tight for the off-center mixture, so
    // the two independent-computation rows probe the ground state; the
    // mixture still drives every identity row below.
    const double t0 = 0.3 / om;
    GridSpec g0 = refining_grid(n_o, t0, om, config.grid.l);
    WaveField phi0 = sample_gaussian(g0, om);

    WaveField s_phi = mehler_apply(phi0, t0, p);
    rows.push_back(row("oracle", "unitarity_defect",
                       std::abs(lp_norm(s_phi, 2.0) / lp_norm(phi0, 2.0) - 1.0), 1e-6));

    double err64 = rel_l2(s_phi, advance_linear(phi0, p, t0, 2e-4 / om));
    rows.push_back(row("oracle", "fast_propagator_agreement", err64, 1e-4));

    {   // quadrature error must shrink as the kernel gets better resolved
        GridSpec g96 = refining_grid(96, t0, om, config.grid.l);
        WaveField phi96 = sample_gaussian(g96, om);
        double err96 = rel_l2(mehler_apply(phi96, t0, p),
                              advance_linear(phi96, p, t0, 2e-4 / om));
        rows.push_back(row("oracle", "agreement_n_refinement", err96 / err64, 1.0,
                           "error ratio n=96 vs n=64"));
    }
    {   // |S(t)φ|_∞ ≤ (1/4t)‖φ‖₁ across (0, π/(2ω)]
        double worst = 0.0;
        for (int k = 1; k <= 10; ++k) {
            double t = k * M_PI / (20.0 * om);
            GridSpec g = tuned_grid(n_o, om, config.grid.l);
            worst = std::max(worst, dispersive_ratio(sample_offset_mixture(g, om), t, p));
        }
        rows.push_back(row("oracle", "dispersive_bound_margin", worst, 1.0 + 1e-6));
    }
    {   // semigroup: S(t1+t2) = S(t2)S(t1)
        double t1 = 0.25 / om, t2 = 0.2 / om;
        GridSpec g = tuned_grid(n_o, om, config.grid.l);
        WaveField phi = sample_offset_mixture(g, om);
        WaveField once = mehler_apply(phi, t1 + t2, p);
        WaveField twice = mehler_apply(mehler_apply(phi, t1, p), t2, p);
        rows.push_back(row("oracle", "semigroup_residual", rel_l2(twice, once), 1e-4));
    }
    {   // t → 0 continuity through the composed route
        GridSpec g = make_grid(n_o, 5.0 / std::sqrt(om));
        WaveField phi = sample_gaussian(g, om);
        WaveField near0 = mehler_apply(phi, 1e-3 / om, p);
        rows.push_back(row("oracle", "zero_time_continuity",
                           lp_norm(diff(near0, phi), kInf), 1e-3));
    }
    {   // quarter period: the kernel acts as a rotated Fourier transform, so
        // the ground state just picks up the phase e^{−iωt} = −i
        double tq = M_PI / (2.0 * om);
        GridSpec g = tuned_grid(n_o, om, config.grid.l);
        WaveField phi = sample_gaussian(g, om);
        WaveField sq = mehler_apply(phi, tq, p);
        sq.values += Complex(0.0, 1.0) * phi.values;
        rows.push_back(row("oracle", "quarter_period_rotated_ft",
                           lp_norm(sq, kInf) / lp_norm(phi, kInf), 1e-8));
    }
    return rows;
}

std::vector<CheckResult> suite_picard(const RunConfig& config) {
    const auto& p = config.params;
    std::vector<CheckResult> rows;
    WaveField u0 = config.initial_data.realize(config.grid, p.omega);
    StrichartzSpec spec = StrichartzSpec::for_rho(config.picard.rho);
    try {
        PicardResult res = picard_solve(u0, p, config.picard);

        double worst_ratio = 0.0;
        // contraction is judged while distances still dominate the stopping
        // tolerance; below ~50·tol the ratios are roundoff noise
        for (std::size_t k = 1; k < res.distances.size(); ++k) {
            if (res.distances[k - 1] <= 50.0 * config.picard.tol) break;
            worst_ratio = std::max(worst_ratio, res.distances[k] / res.distances[k - 1]);
        }
        rows.push_back(row("picard", "contraction_ratio_max", worst_ratio, 0.5,
                           res.distances.size() < 2 ? "single iteration" : ""));
        rows.push_back(row("picard", "final_distance", res.distances.back(),
                           std::max(1e-8, 10.0 * config.picard.tol),
                           res.converged ? "" : "iteration budget exhausted"));

        {   // independent check: the fixed point must match split-step evolution
            const double delta = config.picard.t_horizon / config.picard.quad_nodes;
            const int substeps = std::max(1, static_cast<int>(std::ceil(delta / 1e-3)));
            Stepper st(u0.grid, p, delta / substeps);
            NodeTrajectory ev;
            ev.times = res.trajectory.times;
            ev.fields.reserve(ev.times.size());
            CArray u = u0.values;
            ev.fields.push_back(u0);
            for (int i = 0; i < config.picard.quad_nodes; ++i) {
                for (int s = 0; s < substeps; ++s) st.step(u);
                ev.fields.emplace_back(u0.grid, u, ev.times[static_cast<std::size_t>(i) + 1]);
            }
            rows.push_back(row("picard", "evolve_agreement_triple",
                               workspace_distance(res.trajectory, ev, spec, p), 1e-4));
        }
        {   // β = 0 zeroes the integral term: the map is constant, one pass
            SimulationParams lin{p.omega, 0.0, p.sigma};
            PicardResult lres = picard_solve(u0, lin, config.picard);
            double v = lres.distances.size() == 1 ? lres.distances[0] : 1.0;
            rows.push_back(row("picard", "beta_zero_single_iteration", v, 1e-14));
        }
    } catch (const NumericalError& e) {
        rows.push_back(row("picard", "contraction", kInf, 0.5, e.what()));
    }
    return rows;
}

std::vector<CheckResult> suite_strichartz(const RunConfig& config) {
    const auto& p = config.params;
    std::vector<CheckResult> rows;
    GridSpec g = make_grid(std::min(config.grid.n, 64), config.grid.l);
    const std::uint64_t seed = config.initial_data.seed;
    const double dt = 2e-3 / p.omega;

    {   // ρ = 2 is plain mass conservation: ratios pinned to 1
        StrichartzReport rep = strichartz_ratio(StrichartzSpec::for_rho(2.0), p, 10, seed, g, dt);
        double worst = 0.0;
        for (double r : rep.ratios) worst = std::max(worst, std::abs(r - 1.0));
        rows.push_back(row("strichartz", "rho2_unitarity_anchor", worst, 1e-12));
    }
    {   // ρ from the workspace config: the empirical constant must be stable
        // when the sample population doubles (first half shares the seeds)
        StrichartzSpec spec = StrichartzSpec::for_rho(config.picard.rho);
        double r16 = strichartz_ratio(spec, p, 16, seed, g, dt).max_ratio;
        double r32 = strichartz_ratio(spec, p, 32, seed, g, dt).max_ratio;
        rows.push_back(row("strichartz", "bounded_ratio_max", r32, 10.0));
        rows.push_back(row("strichartz", "sample_doubling_stability",
                           std::abs(r32 - r16) / r16, 0.20));
    }
    return rows;
}

// --- subcommands ---------------------------------------------------------------

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    for (const auto& w : config.warnings) err << "warning: " << w << '\n';

    WaveField u0 = config.initial_data.realize(config.grid, config.params.omega);
    auto t0 = std::chrono::steady_clock::now();
    Trajectory traj = evolve(u0, config.params, config.evolve);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::string echo = render_config(config);
    nlohmann::json extra = {{"command", "run"},
                            {"config_echo", echo},
                            {"config_hash", content_hash(echo)},
                            {"wall_seconds", wall},
                            {"grid", {{"n", config.grid.n}, {"l", config.grid.l}}},
                            {"warnings", config.warnings}};
    write_trajectory(config.output_dir, traj, extra.dump());

    const ConservationLedger& led = traj.ledger;
    double mass_drift = 0.0;
    for (double m : led.mass) mass_drift = std::max(mass_drift, std::abs(m - led.mass[0]));
    out << "run complete: t_end=" << traj.times.back() << ", " << traj.times.size()
        << " recorded times, " << traj.snapshots.size() << " snapshots\n";
    out << "mass drift " << std::scientific << std::setprecision(3) << mass_drift
        << ", wall " << std::fixed << std::setprecision(2) << wall << " s\n";
    out << "output: " << config.output_dir << '\n';
    return exit_ok;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err,
               bool corrupt_propagator) {
    for (const auto& w : config.warnings) err << "warning: " << w << '\n';
    CorruptionGuard guard(corrupt_propagator);
    if (corrupt_propagator)
        out << "fault injection: x1 sub-flow stretched by " << kInjectedStretch
            << "; the suites must notice\n";

    const std::set<std::string> which = config.suites.empty() ? known_suites() : config.suites;
    std::vector<CheckResult> rows;
    auto run_suite = [&](const std::string& name, auto&& fn) {
        if (!which.count(name)) return;
        auto sub = fn(config);
        rows.insert(rows.end(), sub.begin(), sub.end());
    };
    run_suite("conservation", suite_conservation);
    run_suite("operators", suite_operators);
    run_suite("oracle", suite_oracle);
    run_suite("picard", suite_picard);
    run_suite("strichartz", suite_strichartz);

    std::filesystem::create_directories(config.output_dir);
    auto report_path = std::filesystem::path(config.output_dir) / "report.json";
    write_report_json(report_path, rows);

    out << render_report_table(rows);
    std::size_t npass = 0;
    for (const auto& r : rows) npass += r.pass ? 1 : 0;
    bool all = npass == rows.size();
    out << (all ? "VERIFY PASS" : "VERIFY FAIL") << " (" << npass << "/" << rows.size()
        << " checks), report: " << report_path.string() << '\n';
    return all ? exit_ok : exit_verification_failure;
}

int cmd_oracle(const RunConfig& config, double t, std::ostream& out, std::ostream& err) {
    for (const auto& w : config.warnings) err << "warning: " << w << '\n';
    const auto& p = config.params;
    const double om = p.omega;
    const double wt = om * t;
    if (std::abs(std::sin(wt)) < 1e-12)
        throw ValidationError("singular time: sin(omega*t) vanishes");
    if (!(wt > 0.0 && wt < M_PI))
        throw ValidationError("oracle time must satisfy 0 < omega*t < pi");

    // diagnostics run on a reduced kernel-safe grid; file data cannot be
    // re-gridded, so the oracle keeps to the synthetic samplers
    const int n_o = std::min(config.grid.n, 64);
    GridSpec g = tuned_grid(n_o, om, config.grid.l);
    InitialData data = config.initial_data;
    if (data.kind == InitialData::Kind::file) data = InitialData{};
    WaveField phi = data.realize(g, om);
    bool direct = mehler_alias_safe(g, t, om);

    out << "oracle at t=" << t << " (omega*t=" << wt << "): grid n=" << g.n << " l="
        << std::setprecision(4) << g.l << " route=" << (direct ? "direct" : "composed") << '\n';

    bool ok = true;
    auto line = [&](const char* name, double value, double tol) {
        bool pass = std::isfinite(value) && value <= tol;
        ok = ok && pass;
        out << "  " << std::left << std::setw(28) << name << std::scientific
            << std::setprecision(3) << value << "  (tol " << std::setprecision(1) << tol
            << ")  " << (pass ? "pass" : "FAIL") << '\n';
        out.unsetf(std::ios::scientific);
    };

    WaveField s_phi = mehler_apply(phi, t, p);
    line("unitarity_defect", std::abs(lp_norm(s_phi, 2.0) / lp_norm(phi, 2.0) - 1.0), 1e-6);
    line("fast_propagator_discrepancy", rel_l2(s_phi, advance_linear(phi, p, t, 2e-4 / om)),
         1e-4);
    if (wt <= M_PI / 2.0 + 1e-12)
        line("dispersive_ratio", dispersive_ratio(phi, t, p), 1.0 + 1e-6);
    else
        out << "  dispersive_ratio            n/a (bound claimed only for omega*t <= pi/2)\n";
    if (std::abs(wt - M_PI / 2.0) < 1e-9 && config.initial_data.kind == InitialData::Kind::gaussian) {
        // quarter period specialization: rotated Fourier transform; on the
        // ground state that is exactly the phase −i
        WaveField d = s_phi;
        d.values += Complex(0.0, 1.0) * phi.values;
        line("rotated_ft_ground_state", lp_norm(d, kInf) / lp_norm(phi, kInf), 1e-8);
    }
    out << (ok ? "oracle PASS" : "oracle FAIL") << '\n';
    return ok ? exit_ok : exit_verification_failure;
}

// --- argv entry ------------------------------------------------------------------

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"rotating Gross-Pitaevskii laboratory"};
    app.require_subcommand(1);

    std::string config_path, output_override, suites_csv, t_token;
    bool corrupt = false;

    CLI::App* run = app.add_subcommand("run", "evolve the configured datum, write a trajectory");
    run->add_option("--config", config_path, "INI config file")->required();
    run->add_option("--output", output_override, "override [output] dir");

    CLI::App* verify = app.add_subcommand("verify", "run the verification suites");
    verify->add_option("--config", config_path, "INI config file")->required();
    verify->add_option("--suites", suites_csv, "comma list or 'all'");
    verify->add_option("--output", output_override, "override [output] dir");
    verify->add_flag("--corrupt-propagator", corrupt,
                     "fault-injection drill: the report must go red");

    CLI::App* oracle = app.add_subcommand("oracle", "kernel quadrature diagnostics at one time");
    oracle->add_option("--config", config_path, "INI config file")->required();
    oracle->add_option("--t", t_token, "time (number, pi, pi/2, ...)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        emit_error(err, "usage", e.what());
        return exit_validation_error;
    }

    try {
        RunConfig config = parse_config(read_file(config_path));
        if (!output_override.empty()) config.output_dir = output_override;
        if (!suites_csv.empty()) {
            config.suites.clear();
            std::istringstream ss(suites_csv);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (item.empty()) continue;
                if (item == "all") {
                    config.suites = known_suites();
                } else if (known_suites().count(item)) {
                    config.suites.insert(item);
                } else {
                    throw ValidationError("unknown suite '" + item + "'");
                }
            }
        }
        if (run->parsed()) return cmd_run(config, out, err);
        if (verify->parsed()) return cmd_verify(config, out, err, corrupt);
        return cmd_oracle(config, parse_time_token(t_token), out, err);
    } catch (const ValidationError& e) {
        emit_error(err, "validation", e.what());
        return exit_validation_error;
    } catch (const NumericalError& e) {
        emit_error(err, "numerical", e.what());
        return exit_numerical_failure;
    }
}

} // namespace rgpe
