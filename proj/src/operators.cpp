#include "rgpe/operators.hpp"

#include <cmath>
#include "rgpe/propagator.hpp"

namespace rgpe {

OperatorFrame OperatorFrame::at(double t, double omega) {
    return OperatorFrame{t, omega, std::cos(omega * t), std::sin(omega * t)};
}

WaveField apply_Lz(const WaveField& u) {
    auto [d1, d2] = spectral_gradient(u);
    const GridSpec& g = u.grid;
    Eigen::ArrayXd x = grid_coords(g);
    CArray v(g.n, g.n);
    const Complex iunit(0.0, 1.0);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i)
            v(i, j) = iunit * (x[j] * d1.values(i, j) - x[i] * d2.values(i, j));
    return WaveField(g, std::move(v), u.time_tag);
}

namespace {

// shared skeleton: a(cx + sx⊥)u + b(c∇ + s∇⊥)u with component arithmetic
// done in one pass; x⊥ = (−x₂, x₁), ∇⊥ = (−∂₂, ∂₁)
FieldPair galilean_apply(const WaveField& u, const OperatorFrame& f, Complex a, Complex b) {
    auto [d1, d2] = spectral_gradient(u);
    const GridSpec& g = u.grid;
    Eigen::ArrayXd x = grid_coords(g);
    CArray v1(g.n, g.n), v2(g.n, g.n);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            Complex uu = u.values(i, j);
            Complex g1 = d1.values(i, j), g2 = d2.values(i, j);
            v1(i, j) = a * (f.c * x[i] - f.s * x[j]) * uu + b * (f.c * g1 - f.s * g2);
            v2(i, j) = a * (f.c * x[j] + f.s * x[i]) * uu + b * (f.c * g2 + f.s * g1);
        }
    return {WaveField(g, std::move(v1), u.time_tag), WaveField(g, std::move(v2), u.time_tag)};
}

} // namespace

FieldPair apply_J(const WaveField& u, const OperatorFrame& f) {
    // J(t) = ω s (c x + s x⊥) − i c (c ∇ + s ∇⊥)
    return galilean_apply(u, f, Complex(f.omega * f.s, 0.0), Complex(0.0, -f.c));
}

FieldPair apply_H(const WaveField& u, const OperatorFrame& f) {
    // H(t) = ω c (c x + s x⊥) + i s (c ∇ + s ∇⊥)
    return galilean_apply(u, f, Complex(f.omega * f.c, 0.0), Complex(0.0, f.s));
}

namespace {

// e^{iθ|x|²} pointwise
void quadratic_phase(CArray& v, const GridSpec& g, double theta) {
    Eigen::ArrayXd x = grid_coords(g);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            double ph = theta * (x[i] * x[i] + x[j] * x[j]);
            v(i, j) *= Complex(std::cos(ph), std::sin(ph));
        }
}

// scale·P(t)(c∇ + s∇⊥)P(−t)u where P(t) = e^{−iθ(t)|x|²} with θ given by the
// caller (tan-form for J, cot-form for H)
FieldPair multiplier_route(const WaveField& u, const OperatorFrame& f, double theta,
                           Complex scale) {
    WaveField w = u;
    quadratic_phase(w.values, u.grid, theta);         // P(−t)
    auto [d1, d2] = spectral_gradient(w);
    const GridSpec& g = u.grid;
    CArray v1(g.n, g.n), v2(g.n, g.n);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            Complex g1 = d1.values(i, j), g2 = d2.values(i, j);
            v1(i, j) = scale * (f.c * g1 - f.s * g2);
            v2(i, j) = scale * (f.c * g2 + f.s * g1);
        }
    quadratic_phase(v1, g, -theta);                   // P(t)
    quadratic_phase(v2, g, -theta);
    return {WaveField(g, std::move(v1), u.time_tag), WaveField(g, std::move(v2), u.time_tag)};
}

} // namespace

FieldPair apply_J_factored(const WaveField& u, const OperatorFrame& f) {
    // J = −i c M(t)(c∇ + s∇⊥)M(−t), M(t) = e^{−iω|x|² tan(ωt)/2}
    if (std::abs(f.c) < 1e-9) throw ValidationError("singular frame: tan(omega*t) blows up");
    double theta = f.omega * (f.s / f.c) / 2.0;   // M(−t) multiplies by e^{+iθ|x|²}
    return multiplier_route(u, f, theta, Complex(0.0, -f.c));
}

FieldPair apply_H_factored(const WaveField& u, const OperatorFrame& f) {
    // H = i s Q(t)(c∇ + s∇⊥)Q(−t), Q(t) = e^{iω|x|² cot(ωt)/2}
    if (std::abs(f.s) < 1e-9) throw ValidationError("singular frame: cot(omega*t) blows up");
    double theta = -f.omega * (f.c / f.s) / 2.0;  // Q(−t) multiplies by e^{+iθ|x|²} with θ = −ω cot/2
    return multiplier_route(u, f, theta, Complex(0.0, f.s));
}

double commutation_residual(const WaveField& u0, double t, const SimulationParams& p,
                            GalileanOp which, double dt) {
    if (!(t > 0.0) || t > M_PI / (2.0 * p.omega) + 1e-12)
        throw ValidationError("commutation_residual requires t in (0, pi/(2 omega)]");
    SimulationParams lin = p;
    lin.beta = 0.0;
    EvolveConfig cfg;
    cfg.dt = dt;
    cfg.t_end = t;
    cfg.snapshot_stride = 1 << 30;  // endpoints only
    cfg.keep_snapshots = true;

    OperatorFrame f0 = OperatorFrame::at(0.0, p.omega);
    OperatorFrame ft = OperatorFrame::at(t, p.omega);
    FieldPair a0 = (which == GalileanOp::J) ? apply_J(u0, f0) : apply_H(u0, f0);

    WaveField ut = evolve(u0, lin, cfg).snapshots.back();
    WaveField e1 = evolve(a0.first, lin, cfg).snapshots.back();
    WaveField e2 = evolve(a0.second, lin, cfg).snapshots.back();
    FieldPair at = (which == GalileanOp::J) ? apply_J(ut, ft) : apply_H(ut, ft);

    at.first.values -= e1.values;
    at.second.values -= e2.values;
    return lp_norm(at, 2.0) / lp_norm(a0, 2.0);
}

std::pair<double, double> verify_e1_e2(const WaveField& phi, double t,
                                       const SimulationParams& p) {
    const double wt = p.omega * t;
    if (!(wt > 0.0 && wt < M_PI)) throw ValidationError("verify_e1_e2 requires 0 < omega*t < pi");
    const double c = std::cos(wt), s = std::sin(wt);
    const GridSpec& g = phi.grid;

    // mixed source fields (cos∇ − sin∇⊥)φ and (cos x − sin x⊥)φ
    auto [d1, d2] = spectral_gradient(phi);
    auto [xp1, xp2] = multiply_x(phi);
    Eigen::ArrayXd x = grid_coords(g);
    CArray m1(g.n, g.n), m2(g.n, g.n), q1(g.n, g.n), q2(g.n, g.n);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            Complex g1 = d1.values(i, j), g2 = d2.values(i, j);
            Complex uu = phi.values(i, j);
            m1(i, j) = c * g1 + s * g2;              // (c∇ − s∇⊥)₁ = c∂₁ + s∂₂
            m2(i, j) = c * g2 - s * g1;              // (c∇ − s∇⊥)₂ = c∂₂ − s∂₁
            q1(i, j) = (c * x[i] + s * x[j]) * uu;   // (c x − s x⊥)₁ = c x₁ + s x₂
            q2(i, j) = (c * x[j] - s * x[i]) * uu;   // (c x − s x⊥)₂ = c x₂ − s x₁
        }

    WaveField Sphi = mehler_apply(phi, t, p);
    FieldPair lhs1 = spectral_gradient(Sphi);
    FieldPair lhs2 = multiply_x(Sphi);

    WaveField Sm1 = mehler_apply(WaveField(g, std::move(m1)), t, p);
    WaveField Sm2 = mehler_apply(WaveField(g, std::move(m2)), t, p);
    WaveField Sq1 = mehler_apply(WaveField(g, std::move(q1)), t, p);
    WaveField Sq2 = mehler_apply(WaveField(g, std::move(q2)), t, p);

    const Complex i_om_s(0.0, p.omega * s);
    const Complex i_s_over_om(0.0, s / p.omega);

    // (e1): ∇Sφ = c·S[(c∇ − s∇⊥)φ] − iω s·S[(c x − s x⊥)φ]
    FieldPair r1 = lhs1;
    r1.first.values -= c * Sm1.values - i_om_s * Sq1.values;
    r1.second.values -= c * Sm2.values - i_om_s * Sq2.values;
    double e1 = lp_norm(r1, 2.0) / lp_norm(lhs1, 2.0);

    // (e2): x Sφ = c·S[(c x − s x⊥)φ] − (i/ω) s·S[(c∇ − s∇⊥)φ]
    FieldPair r2 = lhs2;
    r2.first.values -= c * Sq1.values - i_s_over_om * Sm1.values;
    r2.second.values -= c * Sq2.values - i_s_over_om * Sm2.values;
    double e2 = lp_norm(r2, 2.0) / lp_norm(lhs2, 2.0);

    return {e1, e2};
}

} // namespace rgpe
