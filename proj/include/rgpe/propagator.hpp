#pragma once
#include <functional>
#include <optional>
#include <vector>
#include "rgpe/field.hpp"
#include "rgpe/conservation.hpp"

namespace rgpe {

struct EvolveConfig {
    double dt = 1e-3;
    double t_end = M_PI / 2;
    int snapshot_stride = 10;        // ledger/snapshot cadence in steps
    double segment_length = 0.0;     // 0 = default π/(2ω), set at validation
    bool keep_snapshots = true;      // ledger is always kept; snapshots are the memory hog

    void validate(const SimulationParams& p);
};

struct Trajectory {
    SimulationParams params;
    EvolveConfig config;
    std::vector<double> times;            // strictly increasing, times[0] = 0
    std::vector<WaveField> snapshots;     // aligned with times when kept
    ConservationLedger ledger;
};

// --- fast propagator -------------------------------------------------------

// Exact sub-flow of i u_t = −(1/2)∂₁₁u − iω x₂ ∂₁u via the multiplier
// e^{−i((1/2)k₁² + ω x₂ k₁)τ} (transform in x₁ only), then the symmetric
// counterpart i u_t = −(1/2)∂₂₂u + iω x₁ ∂₂u via e^{−i((1/2)k₂² − ω x₁ k₂)τ},
// composed as half X1, full X2, half X1. Together these advance the kinetic
// plus rotation part; the L² norm is preserved to rounding.
WaveField linear_step(const WaveField& u, double dt, const SimulationParams& p);

// u_j ← u_j · e^{−i((ω²/2)|x_j|² + β|u_j|^{2σ}) dt}; |u_j| unchanged exactly.
WaveField nonlinear_potential_step(const WaveField& u, double dt, const SimulationParams& p);

// Half potential, full linear, half potential.
WaveField strang_step(const WaveField& u, double dt, const SimulationParams& p);

// Precomputed-multiplier form of the same stepping for tight loops: tables for
// a fixed dt are built once and applied in place.
class Stepper {
public:
    Stepper(const GridSpec& g, const SimulationParams& p, double dt);
    // Advances u by one Strang step of the construction dt.
    void step(CArray& u);
    // Advances by an arbitrary (e.g. final, shortened) step; rebuilds tables.
    void step_custom(CArray& u, double dt);
    double dt() const { return dt_; }

private:
    GridSpec grid_;
    SimulationParams params_;
    double dt_;
    CArray mult_x1_half_, mult_x2_full_;   // linear sub-step tables
    RArray trap_phase_;                    // (ω²/2)|x|², scaled by −dt/2 at use
    RArray beta_scale_;                    // β, folded with −dt/2 at use
    void build_tables(double dt);
    void apply(CArray& u, double dt);
};

// Drives repeated strang_step from t=0 to t_end; the last step is shortened to
// land exactly on t_end. Ledger rows (and snapshots when kept) are appended at
// t=0 and every snapshot_stride steps, plus the final time. NaNs abort with
// "blow-up suspected at t=...".
Trajectory evolve(const WaveField& u0, const SimulationParams& p, EvolveConfig config);

// --- closed-form kernel oracle ---------------------------------------------

// Direct rectangle-rule quadrature of
//   (S(t)φ)(x) = ω/(2πi sin ωt) ∫ e^{iω(|x−y|² cot(ωt)/2 − x⊥·y)} φ(y) dy
// with weight h² per source node. Valid for ωt ∈ (0, π) away from sin ωt = 0;
// negative arguments in (−π, 0) evaluate the same formula, which is the
// adjoint (inverse) flow and is used by the compose path below.
//
// The quadrature is trustworthy only when the alias images created by the
// rectangle rule on an unresolved oscillatory phase land outside the data's
// reach (see mehler_alias_safe). Near ωt ∈ {0, π} no affordable grid is safe,
// so by default those times are reached by composing two far-from-singular
// factors, S(t) = S(t ∓ π/(2ω)) ∘ S(±π/(2ω)). Set allow_compose = false to
// force the single direct quadrature.
WaveField mehler_apply(const WaveField& u0, double t, const SimulationParams& p,
                       bool allow_compose = true, int n_guard = 96,
                       bool override_guard = false);

// Rectangle-rule alias images are displaced by π n |sin ωt| / (ω l); the rule
// is safe when that displacement clears the box diagonal plus a data-reach
// margin. Exposed so callers (and tests) can pick kernel-resolved grids.
bool mehler_alias_safe(const GridSpec& g, double t, double omega);

// Largest box half-width l that keeps the rectangle rule alias-safe for this
// (n, t, ω); the practical grid chooser for oracle comparisons.
double mehler_safe_halfwidth(int n, double t, double omega);

// sup|S(t)φ| ≤ 1/(4t) ‖φ‖₁ margin: returns lhs/rhs (≤ 1 + tolerance expected
// for ωt ∈ (0, π/2]).
double dispersive_ratio(const WaveField& phi, double t, const SimulationParams& p);

// Fault-injection hook for the verification suites: a nonzero eps stretches
// the x₁ sub-flow duration by (1+eps), a smooth norm-preserving defect that
// the invariant checks must catch. Zero restores normal operation.
void set_propagator_corruption(double eps);
double propagator_corruption();

} // namespace rgpe
