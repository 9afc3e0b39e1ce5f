#include "rgpe/duhamel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include "rgpe/operators.hpp"

namespace rgpe {

void PicardConfig::validate(const SimulationParams& p) const {
    if (!(t_horizon > 0.0) || t_horizon > M_PI / (2.0 * p.omega) + 1e-12)
        throw ValidationError("horizon too long: t_horizon must lie in (0, pi/(2 omega)]");
    if (rho < 2.0) throw ValidationError("rho must be >= 2");
    if (quad_nodes < 8) throw ValidationError("quad_nodes must be >= 8");
    if (max_iter < 1) throw ValidationError("max_iter must be >= 1");
}

StrichartzSpec StrichartzSpec::for_rho(double rho) {
    if (rho < 2.0) throw ValidationError("rho must be >= 2");
    StrichartzSpec s;
    s.rho = rho;
    s.gamma = (rho == 2.0) ? std::numeric_limits<double>::infinity()
                           : 2.0 * rho / (rho - 2.0);
    return s;
}

double spacetime_norm(const NodeTrajectory& traj, const StrichartzSpec& spec) {
    if (traj.fields.empty()) return 0.0;
    if (spec.sup_in_time()) {
        double mx = 0.0;
        for (const auto& f : traj.fields) mx = std::max(mx, lp_norm(f, spec.rho));
        return mx;
    }
    // trapezoid of ‖u(t)‖_ρ^γ over the node times
    double acc = 0.0;
    double prev_t = traj.times.front();
    double prev_v = std::pow(lp_norm(traj.fields.front(), spec.rho), spec.gamma);
    for (std::size_t i = 1; i < traj.fields.size(); ++i) {
        double v = std::pow(lp_norm(traj.fields[i], spec.rho), spec.gamma);
        acc += 0.5 * (traj.times[i] - prev_t) * (prev_v + v);
        prev_t = traj.times[i];
        prev_v = v;
    }
    return std::pow(acc, 1.0 / spec.gamma);
}

namespace {

// spacetime norm of t ↦ A(t)u(t) for A ∈ {J, H} without materializing a
// trajectory of pairs: per-node 2-vector magnitude feeds the spatial norm
double spacetime_norm_op(const NodeTrajectory& traj, const StrichartzSpec& spec,
                         const SimulationParams& p, GalileanOp which) {
    if (traj.fields.empty()) return 0.0;
    auto node_norm = [&](std::size_t i) {
        OperatorFrame f = OperatorFrame::at(traj.times[i], p.omega);
        FieldPair v = (which == GalileanOp::J) ? apply_J(traj.fields[i], f)
                                               : apply_H(traj.fields[i], f);
        return lp_norm(v, spec.rho);
    };
    if (spec.sup_in_time()) {
        double mx = 0.0;
        for (std::size_t i = 0; i < traj.fields.size(); ++i) mx = std::max(mx, node_norm(i));
        return mx;
    }
    double acc = 0.0;
    double prev_t = traj.times.front();
    double prev_v = std::pow(node_norm(0), spec.gamma);
    for (std::size_t i = 1; i < traj.fields.size(); ++i) {
        double v = std::pow(node_norm(i), spec.gamma);
        acc += 0.5 * (traj.times[i] - prev_t) * (prev_v + v);
        prev_t = traj.times[i];
        prev_v = v;
    }
    return std::pow(acc, 1.0 / spec.gamma);
}

NodeTrajectory node_difference(const NodeTrajectory& a, const NodeTrajectory& b) {
    if (a.fields.size() != b.fields.size())
        throw ValidationError("node trajectories differ in length");
    NodeTrajectory d;
    d.times = a.times;
    d.fields.reserve(a.fields.size());
    for (std::size_t i = 0; i < a.fields.size(); ++i) {
        WaveField w = a.fields[i];
        w.values -= b.fields[i].values;
        d.fields.push_back(std::move(w));
    }
    return d;
}

// fast linear propagator over one node spacing: a single Strang step of the
// β=0 flow (the trap phase is exact, the kinetic+rotation part is exact, the
// splitting error per node is O(Δ³))
class NodePropagator {
public:
    NodePropagator(const GridSpec& g, const SimulationParams& p, double delta)
        : lin_(p), stepper_(nullptr) {
        lin_.beta = 0.0;
        stepper_ = std::make_unique<Stepper>(g, lin_, delta);
    }
    void advance(CArray& u) { stepper_->step(u); }

private:
    SimulationParams lin_;
    std::unique_ptr<Stepper> stepper_;
};

} // namespace

double triple_norm(const NodeTrajectory& traj, const StrichartzSpec& spec,
                   const SimulationParams& p) {
    return spacetime_norm(traj, spec) + spacetime_norm_op(traj, spec, p, GalileanOp::J) +
           spacetime_norm_op(traj, spec, p, GalileanOp::H);
}

double workspace_distance(const NodeTrajectory& a, const NodeTrajectory& b,
                          const StrichartzSpec& spec, const SimulationParams& p) {
    return triple_norm(node_difference(a, b), spec, p);
}

NodeTrajectory duhamel_apply(const NodeTrajectory& traj, const WaveField& u0,
                             const SimulationParams& p, const PicardConfig& config) {
    config.validate(p);
    const int nodes = config.quad_nodes;
    if (traj.fields.size() != static_cast<std::size_t>(nodes) + 1)
        throw ValidationError("trajectory must be sampled on the quadrature nodes");
    const double delta = config.t_horizon / nodes;
    const GridSpec& g = u0.grid;
    NodePropagator prop(g, p, delta);

    // nonlinearity samples F_i = |u_i|^{2σ} u_i
    std::vector<CArray> F(nodes + 1);
    for (int i = 0; i <= nodes; ++i) {
        const CArray& v = traj.fields[i].values;
        if (p.sigma == 1.0)
            F[i] = v.abs2().cast<Complex>() * v;
        else
            F[i] = v.abs2().pow(p.sigma).cast<Complex>() * v;
    }

    // (𝒯u)(t_i) = S(t_i)u₀ − iβ I_i with the trapezoid integral advanced by
    //   I_{i+1} = S_Δ(I_i + (Δ/2)F_i) + (Δ/2)F_{i+1},
    // so each node costs one linear step instead of i of them.
    NodeTrajectory out;
    out.times.resize(nodes + 1);
    out.fields.reserve(nodes + 1);
    const Complex minus_i_beta(0.0, -p.beta);

    CArray h = u0.values;        // S(t_i)u₀
    CArray I = CArray::Zero(g.n, g.n);
    out.times[0] = 0.0;
    out.fields.emplace_back(g, h, 0.0);
    for (int i = 0; i < nodes; ++i) {
        CArray tmp = I + Complex(0.5 * delta) * F[i];
        prop.advance(tmp);
        I = tmp + Complex(0.5 * delta) * F[i + 1];
        prop.advance(h);
        double t = (i + 1) * delta;
        out.times[i + 1] = t;
        out.fields.emplace_back(g, CArray(h + minus_i_beta * I), t);
    }
    return out;
}

PicardResult picard_solve(const WaveField& u0, const SimulationParams& p,
                          const PicardConfig& config) {
    config.validate(p);
    const int nodes = config.quad_nodes;
    const double delta = config.t_horizon / nodes;
    const GridSpec& g = u0.grid;
    StrichartzSpec spec = StrichartzSpec::for_rho(config.rho);

    // initial guess u⁽⁰⁾(t) = S(t)u₀ (the homogeneous term)
    NodeTrajectory current;
    current.times.resize(nodes + 1);
    current.fields.reserve(nodes + 1);
    {
        NodePropagator prop(g, p, delta);
        CArray h = u0.values;
        current.times[0] = 0.0;
        current.fields.emplace_back(g, h, 0.0);
        for (int i = 0; i < nodes; ++i) {
            prop.advance(h);
            current.times[i + 1] = (i + 1) * delta;
            current.fields.emplace_back(g, h, current.times[i + 1]);
        }
    }

    PicardResult result;
    int non_decreasing = 0;
    for (int k = 0; k < config.max_iter; ++k) {
        NodeTrajectory next = duhamel_apply(current, u0, p, config);
        double d = workspace_distance(next, current, spec, p);
        current = std::move(next);
        if (!result.distances.empty() && d >= result.distances.back()) {
            if (++non_decreasing >= 3)
                throw NumericalError("no contraction: fixed-point distances failed to "
                                     "decrease for 3 consecutive iterations (horizon too "
                                     "long for the data size)");
        } else {
            non_decreasing = 0;
        }
        result.distances.push_back(d);
        if (d <= config.tol) {
            result.converged = true;
            break;
        }
    }
    result.trajectory = std::move(current);
    return result;
}

double nonlinear_identity_residual(const WaveField& u, double t,
                                   const SimulationParams& p) {
    if (p.sigma < 0.5)
        throw ValidationError("nonlinear_identity_residual requires sigma >= 1/2");
    OperatorFrame f = OperatorFrame::at(t, p.omega);
    const GridSpec& g = u.grid;
    const double sig = p.sigma;

    // left side: J(t)(|u|^{2σ}u)
    CArray nl = (sig == 1.0) ? CArray(u.values.abs2().cast<Complex>() * u.values)
                             : CArray(u.values.abs2().pow(sig).cast<Complex>() * u.values);
    FieldPair lhs = apply_J(WaveField(g, std::move(nl), u.time_tag), f);

    // right side: (σ+1)|u|^{2σ}Ju − σ|u|^{2σ−2}u²·conj(Ju)
    FieldPair Ju = apply_J(u, f);
    RArray a2 = u.values.abs2();
    RArray pow_s = (sig == 1.0) ? a2 : RArray(a2.pow(sig));
    // |u|^{2σ−2}u²: continuous for σ ≥ 1/2 except at exact zeros — mask those
    CArray usq_w(g.n, g.n);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            double m2 = a2(i, j);
            usq_w(i, j) = (m2 == 0.0) ? Complex(0.0, 0.0)
                                      : Complex(std::pow(m2, sig - 1.0)) *
                                            u.values(i, j) * u.values(i, j);
        }
    FieldPair rhs = Ju;
    rhs.first.values = Complex(sig + 1.0) * pow_s.cast<Complex>() * Ju.first.values -
                       Complex(sig) * usq_w * Ju.first.values.conjugate();
    rhs.second.values = Complex(sig + 1.0) * pow_s.cast<Complex>() * Ju.second.values -
                        Complex(sig) * usq_w * Ju.second.values.conjugate();

    FieldPair diff = lhs;
    diff.first.values -= rhs.first.values;
    diff.second.values -= rhs.second.values;
    return lp_norm(diff, 2.0) / lp_norm(lhs, 2.0);
}

StrichartzReport strichartz_ratio(const StrichartzSpec& spec, const SimulationParams& p,
                                  int samples, std::uint64_t seed,
                                  const GridSpec& grid, double dt) {
    if (samples < 10) throw ValidationError("samples must be >= 10");
    StrichartzReport rep;
    rep.spec = spec;
    rep.samples = samples;
    rep.seed = seed;
    SimulationParams lin = p;
    lin.beta = 0.0;
    const double horizon = M_PI / (2.0 * p.omega);

    for (int s = 0; s < samples; ++s) {
        // per-sample seed from the root seed: splitmix64 step
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (s + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        WaveField phi = sample_random_mixture(grid, z);

        // evolve and sample the ρ-norm every few steps; only the norm series
        // is needed, never the trajectory itself
        const int stride = 5;
        Stepper stepper(grid, lin, dt);
        long nsteps = static_cast<long>(std::ceil(horizon / dt - 1e-12));
        CArray u = phi.values;
        std::vector<double> ts{0.0}, vals{lp_norm(phi, spec.rho)};
        double t = 0.0;
        for (long i = 0; i < nsteps; ++i) {
            double step_dt = (i + 1 == nsteps) ? horizon - t : dt;
            if (step_dt == stepper.dt())
                stepper.step(u);
            else
                stepper.step_custom(u, step_dt);
            t = (i + 1 == nsteps) ? horizon : (i + 1) * dt;
            if ((i + 1) % stride == 0 || i + 1 == nsteps) {
                ts.push_back(t);
                vals.push_back(lp_norm(WaveField(grid, u, t), spec.rho));
            }
        }
        double st;
        if (spec.sup_in_time()) {
            st = *std::max_element(vals.begin(), vals.end());
        } else {
            double acc = 0.0;
            for (std::size_t i = 1; i < vals.size(); ++i)
                acc += 0.5 * (ts[i] - ts[i - 1]) *
                       (std::pow(vals[i - 1], spec.gamma) + std::pow(vals[i], spec.gamma));
            st = std::pow(acc, 1.0 / spec.gamma);
        }
        rep.ratios.push_back(st / lp_norm(phi, 2.0));
    }
    rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());
    return rep;
}

} // namespace rgpe
