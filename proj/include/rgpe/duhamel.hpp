#pragma once
#include <cstdint>
#include <vector>
#include "rgpe/field.hpp"
#include "rgpe/propagator.hpp"

namespace rgpe {

// Fixed-point solve of the integral equation
//   u(t) = S(t)u₀ − iβ ∫₀ᵗ S(t−s)|u|^{2σ}u(s) ds
// on [0, t_horizon] sampled at quad_nodes+1 uniform time nodes.
struct PicardConfig {
    double t_horizon = 0.1;   // ≤ π/(2ω)
    double rho = 4.0;         // Lebesgue exponent of the workspace norm
    int quad_nodes = 64;      // number of uniform subintervals (nodes+1 time points)
    int max_iter = 25;
    double tol = 1e-10;       // stop once the workspace distance falls below

    void validate(const SimulationParams& p) const;
};

// Admissible pair (γ(ρ), ρ) with 1/γ = 1/2 − 1/ρ; ρ = 2 maps to γ = ∞,
// i.e. the supremum-in-time norm.
struct StrichartzSpec {
    double rho = 4.0;
    double gamma = 4.0;

    static StrichartzSpec for_rho(double rho);
    bool sup_in_time() const { return !std::isfinite(gamma); }
};

// Node-sampled trajectory: fields[i] lives at times[i].
struct NodeTrajectory {
    std::vector<double> times;
    std::vector<WaveField> fields;
};

// L^{γ}(0,T; L^ρ) of a node-sampled trajectory by trapezoidal rule
// (max over samples for ρ = 2 / γ = ∞).
double spacetime_norm(const NodeTrajectory& traj, const StrichartzSpec& spec);

// |||u||| = ‖u‖ + ‖J(t)u‖ + ‖H(t)u‖ in the space-time norm, J/H applied per
// node at that node's time (2-vector magnitudes inside the spatial norm).
double triple_norm(const NodeTrajectory& traj, const StrichartzSpec& spec,
                   const SimulationParams& p);

// The distance d(u,v) = |||u − v||| used by the fixed-point iteration.
double workspace_distance(const NodeTrajectory& a, const NodeTrajectory& b,
                          const StrichartzSpec& spec, const SimulationParams& p);

// One application of the Duhamel map to a node trajectory: the homogeneous
// term S(t)u₀ plus the trapezoid-quadrature integral, with S applied by the
// fast linear propagator stepped node-to-node. Throws "horizon too long" when
// t_horizon > π/(2ω).
NodeTrajectory duhamel_apply(const NodeTrajectory& traj, const WaveField& u0,
                             const SimulationParams& p, const PicardConfig& config);

struct PicardResult {
    NodeTrajectory trajectory;
    std::vector<double> distances;   // d(u^{k+1}, u^k) per iteration
    bool converged = false;
};

// Iterates the Duhamel map from the initial guess u⁽⁰⁾(t) = S(t)u₀. Stops at
// tol or max_iter; throws NumericalError("no contraction") if the distance
// fails to decrease on 3 consecutive iterations (horizon too long for the
// data size). β = 0 converges in one iteration (the map is constant in u).
PicardResult picard_solve(const WaveField& u0, const SimulationParams& p,
                          const PicardConfig& config);

// Relative L² residual of J(t)(|u|^{2σ}u) = (σ+1)|u|^{2σ}J(t)u
//                                           − σ|u|^{2σ−2}u²·conj(J(t)u).
// For σ < 1, grid zeros of u are masked to keep |u|^{2σ−2} finite.
double nonlinear_identity_residual(const WaveField& u, double t,
                                   const SimulationParams& p);

struct StrichartzReport {
    StrichartzSpec spec;
    int samples = 0;
    std::uint64_t seed = 0;
    double max_ratio = 0.0;
    std::vector<double> ratios;
};

// Empirical check of ‖S(t)φ‖_{L^γ L^ρ} ≤ C‖φ‖₂ over I = [0, π/(2ω)]: draws
// `samples` random rapidly-decaying fields (per-sample seeds derived from the
// root seed), evolves each with the fast linear propagator, and reports the
// per-sample and maximal norm ratios. ρ = 2 gives ratio 1 per unitarity.
StrichartzReport strichartz_ratio(const StrichartzSpec& spec, const SimulationParams& p,
                                  int samples, std::uint64_t seed,
                                  const GridSpec& grid, double dt = 2e-3);

} // namespace rgpe
