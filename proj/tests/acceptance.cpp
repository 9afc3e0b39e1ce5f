// Acceptance harness: nine numbered criteria, each printing its measured
// values against the tolerances pinned here, one verdict line per criterion.
// Usage: acceptance [N ...] with N in 1..9 (no argument runs everything).
// Exit status = number of failing criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rgpe/cli.hpp"
#include "rgpe/conservation.hpp"
#include "rgpe/duhamel.hpp"
#include "rgpe/field.hpp"
#include "rgpe/operators.hpp"
#include "rgpe/propagator.hpp"

using namespace rgpe;

namespace {

std::string sci(double v, int prec = 3) {
    std::ostringstream ss;
    ss << std::scientific << std::setprecision(prec) << v;
    return ss.str();
}

// One criterion's scoreboard: detail rows plus a single verdict line.
class Crit {
public:
    Crit(int id, std::string title) : id_(id), title_(std::move(title)) {}

    bool bound(const std::string& name, double value, double tol) {
        bool ok = std::isfinite(value) && value <= tol;
        detail(name, sci(value) + "  (<= " + sci(tol, 1) + ")", ok);
        double ratio = tol > 0.0 ? value / tol : (value == 0.0 ? 0.0 : 1e30);
        if (ok && ratio >= binding_ratio_) {
            binding_ratio_ = ratio;
            binding_ = name + " " + sci(value) + " vs " + sci(tol, 1);
        }
        return record(ok, name, sci(value) + " vs " + sci(tol, 1));
    }

    bool at_least(const std::string& name, double value, double floor) {
        bool ok = std::isfinite(value) && value >= floor;
        detail(name, sci(value) + "  (>= " + sci(floor, 1) + ")", ok);
        return record(ok, name, sci(value) + " vs >= " + sci(floor, 1));
    }

    bool decreasing(const std::string& name, const std::vector<double>& seq) {
        bool ok = true;
        std::string shown;
        for (std::size_t i = 0; i < seq.size(); ++i) {
            if (!std::isfinite(seq[i])) ok = false;
            if (i > 0 && !(seq[i] < seq[i - 1])) ok = false;
            shown += (i ? " > " : "") + sci(seq[i]);
        }
        detail(name, shown + "  (strictly decreasing)", ok);
        return record(ok, name, shown);
    }

    void note(const std::string& text) { std::cout << "    note: " << text << '\n'; }

    void fail(const std::string& why) { record(false, "error", why); }

    bool finish() {
        std::cout << "criterion " << id_ << ": " << (pass_ ? "PASS" : "FAIL") << "  " << title_;
        if (!pass_ && !first_fail_.empty())
            std::cout << "  [failed: " << first_fail_ << "]";
        else if (pass_ && !binding_.empty())
            std::cout << "  [binding: " << binding_ << "]";
        std::cout << '\n';
        return pass_;
    }

private:
    void detail(const std::string& name, const std::string& body, bool ok) {
        std::cout << "    " << std::left << std::setw(36) << name << body << "  "
                  << (ok ? "ok" : "FAIL") << '\n';
    }
    bool record(bool ok, const std::string& name, const std::string& shown) {
        if (!ok) {
            pass_ = false;
            if (first_fail_.empty()) first_fail_ = name + " " + shown;
        }
        return ok;
    }

    int id_;
    std::string title_;
    bool pass_ = true;
    std::string first_fail_;
    std::string binding_;
    double binding_ratio_ = -1.0;
};

double max_abs_drift(const std::vector<double>& s) {
    double d = 0.0;
    for (double v : s) d = std::max(d, std::abs(v - s[0]));
    return d;
}

double max_rel_drift(const std::vector<double>& s) {
    return max_abs_drift(s) / std::abs(s[0]);
}

// The workhorse long run shared by criteria 1 and 2: asymmetric datum on the
// production grid over a full trap period.
struct LongRun {
    ConservationLedger ledger;
    double wall = 0.0;
};

const LongRun& long_run(double dt) {
    static std::map<double, LongRun> cache;
    auto it = cache.find(dt);
    if (it != cache.end()) return it->second;

    GridSpec g = make_grid(128, 8.0);
    SimulationParams p;   // omega = beta = sigma = 1
    WaveField u0 = sample_offset_mixture(g, p.omega);
    EvolveConfig ev;
    ev.dt = dt;
    ev.t_end = 2.0 * M_PI;
    ev.snapshot_stride = 10;
    ev.keep_snapshots = false;

    auto t0 = std::chrono::steady_clock::now();
    Trajectory traj = evolve(u0, p, ev);
    LongRun r;
    r.wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.ledger = std::move(traj.ledger);
    return cache.emplace(dt, std::move(r)).first->second;
}

// The fixed configuration every suite-backed criterion runs against.
RunConfig pinned_config() {
    RunConfig c;
    c.params = SimulationParams{1.0, 1.0, 1.0};
    c.grid = make_grid(128, 8.0);
    c.evolve.dt = 1e-3;
    c.evolve.t_end = M_PI / 2.0;
    c.picard.t_horizon = 0.1;
    c.picard.rho = 4.0;
    c.picard.quad_nodes = 64;
    c.initial_data.kind = InitialData::Kind::gaussian;
    return c;
}

// Pulls named rows out of a suite report; a missing row is itself a failure.
void adopt_rows(Crit& c, const std::vector<CheckResult>& rows,
                std::initializer_list<const char*> names) {
    for (const char* name : names) {
        auto it = std::find_if(rows.begin(), rows.end(),
                               [&](const CheckResult& r) { return r.check == name; });
        if (it == rows.end())
            c.fail(std::string("missing check '") + name + "'");
        else
            c.bound(it->check, it->value, it->tolerance);
    }
}

WaveField advance_bare(const WaveField& u0, const SimulationParams& p, double t_end, double dt) {
    Stepper st(u0.grid, p, dt);
    long nsteps = std::lround(t_end / dt);
    CArray u = u0.values;
    for (long i = 0; i < nsteps; ++i) st.step(u);
    return WaveField(u0.grid, std::move(u), t_end);
}

// --- criteria ----------------------------------------------------------------

bool criterion1() {
    Crit c(1, "mass conservation over a full trap period");
    const LongRun& r = long_run(1e-3);
    c.bound("mass_rel_drift", max_rel_drift(r.ledger.mass), 1e-12);
    c.bound("wall_seconds", r.wall, 120.0);
    return c.finish();
}

bool criterion2() {
    Crit c(2, "energy and angular-momentum conservation with dt-order");
    const LongRun& fine = long_run(1e-3);
    c.bound("e0_abs_drift", max_abs_drift(fine.ledger.e0), 1e-6);
    c.bound("lz_abs_drift", max_abs_drift(fine.ledger.lz), 1e-6);

    std::vector<double> dts{4e-3, 2e-3, 1e-3}, de, dl;
    for (double dt : dts) {
        const LongRun& r = long_run(dt);
        de.push_back(max_abs_drift(r.ledger.e0));
        dl.push_back(max_abs_drift(r.ledger.lz));
    }
    c.note("e0 drifts " + sci(de[0]) + " / " + sci(de[1]) + " / " + sci(de[2]) +
           ", lz drifts " + sci(dl[0]) + " / " + sci(dl[1]) + " / " + sci(dl[2]));
    c.at_least("e0_order_4e3_to_2e3", std::log2(de[0] / de[1]), 1.9);
    c.at_least("e0_order_2e3_to_1e3", std::log2(de[1] / de[2]), 1.9);
    c.at_least("lz_order_4e3_to_2e3", std::log2(dl[0] / dl[1]), 1.9);
    c.at_least("lz_order_2e3_to_1e3", std::log2(dl[1] / dl[2]), 1.9);
    return c.finish();
}

bool criterion3() {
    Crit c(3, "harmonic eigenstates evolve by the phase e^{-i om t} (beta = 0)");
    GridSpec g = make_grid(128, 8.0);
    SimulationParams p{1.0, 0.0, 1.0};
    WaveField gauss = sample_gaussian(g, p.omega);
    WaveField vortex = sample_vortex(g, p.omega, 1);

    auto phase_err = [&](const WaveField& u0, double dt) {
        WaveField ut = advance_bare(u0, p, 1.0, dt);
        Complex ph = std::exp(Complex(0.0, -p.omega * 1.0));
        ut.values -= ph * u0.values;
        return lp_norm(ut, std::numeric_limits<double>::infinity());
    };
    c.bound("gaussian_phase_error_max", phase_err(gauss, 1e-3), 1e-8);
    c.bound("vortex_phase_error_max", phase_err(vortex, 1e-3), 1e-8);
    c.note("splitting error is second order in dt: at dt=2.5e-4 the same runs give " +
           sci(phase_err(gauss, 2.5e-4)) + " (gaussian) and " + sci(phase_err(vortex, 2.5e-4)) +
           " (vortex)");
    return c.finish();
}

bool criterion4() {
    Crit c(4, "closed-form kernel oracle vs fast propagator at t=0.3");
    std::vector<CheckResult> rows = suite_oracle(pinned_config());
    adopt_rows(c, rows,
               {"unitarity_defect", "fast_propagator_agreement", "agreement_n_refinement",
                "dispersive_bound_margin"});
    return c.finish();
}

bool criterion5() {
    Crit c(5, "Galilean operator identities and exact flow commutation");
    std::vector<CheckResult> rows = suite_operators(pinned_config());
    adopt_rows(c, rows,
               {"kernel_identity_e1", "kernel_identity_e2", "j_conjugation", "h_conjugation",
                "j_factored_agreement", "h_factored_agreement", "j_zero_time_exact",
                "h_zero_time_exact", "j_commutation_residual", "h_commutation_residual"});

    // commutation residuals must be spatial-resolution limited: refine n on a
    // high-momentum probe and watch them fall
    SimulationParams p;
    auto probe = [](int n) {
        GridSpec g = make_grid(n, 8.0);
        WaveField u = sample_gaussian(g, 1.0);
        Eigen::ArrayXd x = grid_coords(g);
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i)
                u.values(i, j) *= std::exp(Complex(0.0, 8.0 * x[i]));
        return u;
    };
    // the boost keeps spectral content near the n = 64 Nyquist edge, so that
    // grid carries the visible error, while by t = 0.3 the boosted lump has
    // only drifted ~2 trap units and the box boundary never enters
    std::vector<double> rj, rh;
    for (int n : {64, 96, 128}) {
        WaveField u = probe(n);
        rj.push_back(commutation_residual(u, 0.3, p, GalileanOp::J));
        rh.push_back(commutation_residual(u, 0.3, p, GalileanOp::H));
    }
    c.decreasing("j_commutation_n_refinement", rj);
    c.decreasing("h_commutation_n_refinement", rh);
    c.bound("j_commutation_momentum_probe_n128", rj.back(), 1e-6);
    c.bound("h_commutation_momentum_probe_n128", rh.back(), 1e-6);
    return c.finish();
}

bool criterion6() {
    Crit c(6, "pseudo-conformal balance laws along the nonlinear flow");
    GridSpec g = make_grid(128, 8.0);
    auto residual_max = [&](double sigma, double dt) {
        SimulationParams p{1.0, 1.0, sigma};
        WaveField u0 = sample_offset_mixture(g, p.omega);
        EvolveConfig ev;
        ev.dt = dt;
        ev.t_end = M_PI / 2.0;
        ev.snapshot_stride = 10;
        ev.keep_snapshots = false;
        Trajectory traj = evolve(u0, p, ev);
        auto [h, j] = pseudoconformal_residuals(traj.ledger);
        return std::pair<double, double>{*std::max_element(h.begin(), h.end()),
                                         *std::max_element(j.begin(), j.end())};
    };

    auto [h1, j1] = residual_max(1.0, 1e-3);
    c.bound("h_law_residual_sigma1", h1, 1e-4);
    c.bound("j_law_residual_sigma1", j1, 1e-4);

    std::vector<double> worst;
    for (double dt : {4e-3, 2e-3, 1e-3}) {
        auto [h2, j2] = residual_max(2.0, dt);
        worst.push_back(std::max(h2, j2));
    }
    c.bound("law_residual_sigma2", worst.back(), 5e-4);
    c.note("sigma=2 residuals under dt {4e-3, 2e-3, 1e-3}: " + sci(worst[0]) + " / " +
           sci(worst[1]) + " / " + sci(worst[2]));
    c.at_least("sigma2_order_4e3_to_2e3", std::log2(worst[0] / worst[1]), 1.9);
    c.at_least("sigma2_order_2e3_to_1e3", std::log2(worst[1] / worst[2]), 1.9);
    return c.finish();
}

bool criterion7() {
    Crit c(7, "pointwise identity for J applied to the power nonlinearity");
    GridSpec g = make_grid(96, 7.0);
    WaveField u = sample_offset_mixture(g, 1.0);
    c.bound("identity_residual_sigma1",
            nonlinear_identity_residual(u, 0.4, SimulationParams{1.0, 1.0, 1.0}), 1e-8);
    c.bound("identity_residual_sigma2",
            nonlinear_identity_residual(u, 0.4, SimulationParams{1.0, 1.0, 2.0}), 1e-7);
    return c.finish();
}

bool criterion8() {
    Crit c(8, "Picard iteration of the Duhamel map contracts and matches split-step");
    auto t0 = std::chrono::steady_clock::now();
    std::vector<CheckResult> rows = suite_picard(pinned_config());
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    adopt_rows(c, rows,
               {"contraction_ratio_max", "final_distance", "evolve_agreement_triple",
                "beta_zero_single_iteration"});
    c.bound("wall_seconds", wall, 300.0);
    return c.finish();
}

bool criterion9() {
    Crit c(9, "space-time norm ratios: unitarity anchor and seed-split stability");
    std::vector<CheckResult> rows = suite_strichartz(pinned_config());
    adopt_rows(c, rows,
               {"rho2_unitarity_anchor", "bounded_ratio_max", "sample_doubling_stability"});
    return c.finish();
}

bool run_criterion(int k) {
    try {
        switch (k) {
            case 1: return criterion1();
            case 2: return criterion2();
            case 3: return criterion3();
            case 4: return criterion4();
            case 5: return criterion5();
            case 6: return criterion6();
            case 7: return criterion7();
            case 8: return criterion8();
            case 9: return criterion9();
        }
    } catch (const std::exception& e) {
        Crit c(k, "aborted by exception");
        c.fail(e.what());
        return c.finish();
    }
    return false;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "all") {
            which.clear();
            break;
        }
        int k = std::atoi(a.c_str());
        if (k < 1 || k > 9) {
            std::cerr << "usage: acceptance [N ...] with N in 1..9\n";
            return 64;
        }
        which.push_back(k);
    }
    if (which.empty())
        for (int k = 1; k <= 9; ++k) which.push_back(k);

    int failed = 0;
    for (int k : which)
        if (!run_criterion(k)) ++failed;
    std::cout << "acceptance: " << (which.size() - failed) << "/" << which.size()
              << " criteria passed\n";
    return failed;
}
