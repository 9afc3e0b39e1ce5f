#pragma once
#include <complex>
#include <cstdint>
#include <utility>
#include <Eigen/Core>
#include "rgpe/grid.hpp"

namespace rgpe {

using Complex = std::complex<double>;
// values(i, j) = u(x1_i, x2_j); Eigen's default column-major layout keeps the
// x1 axis contiguous, which is what the transform code wants.
using CArray = Eigen::ArrayXXcd;
using RArray = Eigen::ArrayXXd;

// Physical parameters of i u_t + (1/2)Δu = (ω²/2)|x|²u + β|u|^{2σ}u − ω L_z u.
struct SimulationParams {
    double omega = 1.0;  // trap / rotation frequency, > 0
    double beta = 1.0;   // nonlinearity strength
    double sigma = 1.0;  // nonlinearity power, |u|^{2σ}u

    // σω < 1 is outside the regime the global-existence argument covers; still
    // runnable, but flagged so reports can carry the warning.
    bool outside_regime() const { return sigma * omega < 1.0; }
};

struct WaveField {
    GridSpec grid;
    CArray values;       // grid.n x grid.n
    double time_tag = 0.0;

    WaveField() = default;
    WaveField(const GridSpec& g, CArray v, double t = 0.0)
        : grid(g), values(std::move(v)), time_tag(t) {}
};

using FieldPair = std::pair<WaveField, WaveField>;  // one component per spatial direction

WaveField zero_field(const GridSpec& g);

// (ω/π)^{1/2} e^{−ω|x|²/2}: L²-normalized harmonic-oscillator ground state.
WaveField sample_gaussian(const GridSpec& g, double omega);

// Normalized (x₁ + i·sign(m)·x₂)^{|m|} e^{−ω|x|²/2}: eigenfunction of L_z with
// eigenvalue m. m = 0 degenerates to the Gaussian. |m| ≤ 4.
WaveField sample_vortex(const GridSpec& g, double omega, int m);

// Randomized mixture of k Gaussian lumps with random centers, widths, phases
// and momenta: a generic rapidly-decaying (Σ-class) test field. Deterministic
// in the seed.
WaveField sample_random_mixture(const GridSpec& g, std::uint64_t seed);

// m=1 vortex plus an off-center Gaussian lump, normalized: a fixed smooth
// datum with no rotational or reflection symmetry, so nothing (⟨L_z⟩ least of
// all) is conserved by accident of symmetry. The workhorse probe of the
// verification suites.
WaveField sample_offset_mixture(const GridSpec& g, double omega);

// (Σ_j |u_j|^p h²)^{1/p}, or max_j |u_j| for p = infinity.
double lp_norm(const WaveField& u, double p);
// Pointwise 2-vector magnitude |(v1,v2)| fed into lp_norm.
double lp_norm(const FieldPair& v, double p);

// h² Σ_j conj(u_j) v_j.
Complex inner_product(const WaveField& u, const WaveField& v);

// (∂₁u, ∂₂u) by forward transform, multiply by i·k, inverse transform.
// Wavenumbers 2πm/(2l), Nyquist derivative multiplier zeroed. Fields are
// expected to be negligible (< 1e−10) on the outermost ring of the grid;
// returns a warning flag through *boundary_warning if given.
FieldPair spectral_gradient(const WaveField& u, bool* boundary_warning = nullptr);

// ∇⊥ = (−∂₂, ∂₁).
FieldPair gradient_perp(const WaveField& u);

// (x₁u, x₂u), (−x₂u, x₁u), |x|u.
FieldPair multiply_x(const WaveField& u);
FieldPair multiply_x_perp(const WaveField& u);
WaveField multiply_radius(const WaveField& u);

// ‖u‖_Σ = (‖u‖₂² + ‖∇u‖₂²)^{1/2} + ‖|x|u‖₂.
double sigma_norm(const WaveField& u);

// True if any sample on the outermost ring exceeds the decay threshold.
bool boundary_ring_exceeds(const WaveField& u, double threshold);

// Largest |u_j| on the outermost grid ring.
double boundary_ring_max(const WaveField& u);

bool has_nan(const WaveField& u);

} // namespace rgpe
