#pragma once
#include <utility>
#include <vector>
#include "rgpe/field.hpp"

namespace rgpe {

// Append-only time series of the conserved quantities, the running history
// integral ∫₀ᵗ sin(2ωs)‖u(s)‖_{2σ+2}^{2σ+2} ds (trapezoid on the row times),
// and the per-time absolute residuals of the two pseudo-conformal identities:
//   H-law: ‖H(t)u‖₂² + (2β sin²(ωt)/(σ+1))‖u‖_{2σ+2}^{2σ+2}
//          + (2β(σω−1)/(σ+1))·hist(t) = ω²‖xu₀‖₂²
//   J-law: ‖J(t)u‖₂² + (2β cos²(ωt)/(σ+1))‖u‖_{2σ+2}^{2σ+2}
//          = ‖∇u₀‖₂² + (2β/(σ+1))‖u₀‖_{2σ+2}^{2σ+2} + (2β(σω−1)/(σ+1))·hist(t)
// Both identities hold exactly for the continuum flow; the residuals measure
// time-stepping and quadrature error. They are reported in absolute terms;
// the right-hand-side constants below give the natural scale.
struct ConservationLedger {
    std::vector<double> times;
    std::vector<double> mass;        // ‖u(t)‖₂
    std::vector<double> e0;          // E₀(u)
    std::vector<double> lz;          // ⟨L_z⟩(t)
    std::vector<double> j_sq;        // ‖J(t)u‖₂²
    std::vector<double> h_sq;        // ‖H(t)u‖₂²
    std::vector<double> hist;        // running history integral
    std::vector<double> pc_h_residual;
    std::vector<double> pc_j_residual;

    // Initial-data constants captured at row 0 (right-hand sides of the laws).
    double xu0_sq = 0.0;             // ‖xu₀‖₂²
    double grad_u0_sq = 0.0;         // ‖∇u₀‖₂²
    double interaction_u0 = 0.0;     // ‖u₀‖_{2σ+2}^{2σ+2}

    // trapezoid bookkeeping for the history integral (last integrand value)
    double last_integrand_ = 0.0;

    std::size_t rows() const { return times.size(); }
};

// ‖u‖₂.
double mass(const WaveField& u);

// E₀ = (1/2)‖∇u‖₂² + (ω²/2)‖xu‖₂² + (β/(σ+1))‖u‖_{2σ+2}^{2σ+2}.
double energy_e0(const WaveField& u, const SimulationParams& p);

// Re⟨u, L_z u⟩; throws NumericalError ("non-real expectation") when the
// value is not finite (corrupt data) or the imaginary part exceeds 1e−10
// relative — the latter is defensive, since the discrete L_z is Hermitian
// to rounding for any finite field.
double angular_momentum_expectation(const WaveField& u);

// ‖u‖_{2σ+2}^{2σ+2}, the potential-energy density norm in the identities.
double interaction_norm(const WaveField& u, double sigma);

// Appends one ledger row at time t: conserved quantities, J/H norms, one
// trapezoid panel of the history integral, and both identity residuals.
void ledger_append(ConservationLedger& ledger, const WaveField& u, double t,
                   const SimulationParams& p);

// The two residual series (H-law, J-law) of a populated ledger.
std::pair<std::vector<double>, std::vector<double>>
pseudoconformal_residuals(const ConservationLedger& ledger);

} // namespace rgpe
