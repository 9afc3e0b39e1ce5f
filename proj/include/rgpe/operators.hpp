#pragma once
#include "rgpe/field.hpp"

namespace rgpe {

// Cached trig coefficients of the Galilean operators at a fixed time:
//   J(t) = ω sin(ωt)(cos(ωt)x + sin(ωt)x⊥) − i cos(ωt)(cos(ωt)∇ + sin(ωt)∇⊥)
//   H(t) = ω cos(ωt)(cos(ωt)x + sin(ωt)x⊥) + i sin(ωt)(cos(ωt)∇ + sin(ωt)∇⊥)
// with x⊥ = (−x₂, x₁), ∇⊥ = (−∂₂, ∂₁). J(0) = −i∇ and H(0) = ωx exactly at
// the coefficient level; J and H commute with the full linear flow.
struct OperatorFrame {
    double t = 0.0;
    double omega = 1.0;
    double c = 1.0;   // cos(ωt)
    double s = 0.0;   // sin(ωt)

    static OperatorFrame at(double t, double omega);
};

// L_z u = i(x₂∂₁u − x₁∂₂u), spectral derivatives.
WaveField apply_Lz(const WaveField& u);

// The 2-vector fields J(t)u and H(t)u.
FieldPair apply_J(const WaveField& u, const OperatorFrame& f);
FieldPair apply_H(const WaveField& u, const OperatorFrame& f);

// Same operators through the multiplier–derivative–multiplier factorizations
//   J(t) = −i cos(ωt) M(t)(cos(ωt)∇ + sin(ωt)∇⊥)M(−t), M(t) = e^{−iω|x|² tan(ωt)/2}
//   H(t) =  i sin(ωt) Q(t)(cos(ωt)∇ + sin(ωt)∇⊥)Q(−t), Q(t) = e^{ iω|x|² cot(ωt)/2}
// Rejected ("singular frame") within 1e−9 of the times where tan / cot blow up
// (ωt = π/2 + kπ for J, ωt = kπ for H); the direct forms stay available there.
FieldPair apply_J_factored(const WaveField& u, const OperatorFrame& f);
FieldPair apply_H_factored(const WaveField& u, const OperatorFrame& f);

// ‖A(t)u(t) − U(t)[A(0)u₀]‖₂ / ‖A(0)u₀‖₂ for A ∈ {J, H}, where U(t) is the
// fast linear propagator (β = 0) advanced with step dt. Exact commutation
// makes the residual pure discretization error.
enum class GalileanOp { J, H };
double commutation_residual(const WaveField& u0, double t, const SimulationParams& p,
                            GalileanOp which, double dt = 5e-4);

// Relative L² residuals of the kernel identities
//   (e1) ∇S(t)φ   = cos(ωt) S(t)[(cos(ωt)∇ − sin(ωt)∇⊥)φ]
//                   − iω sin(ωt) S(t)[(cos(ωt)x − sin(ωt)x⊥)φ]
//   (e2) x S(t)φ  = cos(ωt) S(t)[(cos(ωt)x − sin(ωt)x⊥)φ]
//                   − (i/ω) sin(ωt) S(t)[(cos(ωt)∇ − sin(ωt)∇⊥)φ]
// with every S evaluated by the direct kernel quadrature.
std::pair<double, double> verify_e1_e2(const WaveField& phi, double t,
                                       const SimulationParams& p);

} // namespace rgpe
