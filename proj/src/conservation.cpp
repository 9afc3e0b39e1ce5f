#include "rgpe/conservation.hpp"

#include <cmath>
#include "rgpe/operators.hpp"

namespace rgpe {

double mass(const WaveField& u) { return lp_norm(u, 2.0); }

double interaction_norm(const WaveField& u, double sigma) {
    double p = 2.0 * sigma + 2.0;
    double nrm = lp_norm(u, p);
    return std::pow(nrm, p);
}

double energy_e0(const WaveField& u, const SimulationParams& p) {
    double grad = lp_norm(spectral_gradient(u), 2.0);
    double xu = lp_norm(multiply_x(u), 2.0);
    return 0.5 * grad * grad + 0.5 * p.omega * p.omega * xu * xu +
           p.beta / (p.sigma + 1.0) * interaction_norm(u, p.sigma);
}

double angular_momentum_expectation(const WaveField& u) {
    Complex z = inner_product(u, apply_Lz(u));
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw NumericalError("non-real expectation: <L_z> is not finite (corrupt data)");
    double m2 = lp_norm(u, 2.0);
    double scale = std::max(std::abs(z.real()), m2 * m2);
    if (scale > 0.0 && std::abs(z.imag()) > 1e-10 * scale)
        throw NumericalError("non-real expectation: <L_z> has a large imaginary part "
                             "(under-resolved data)");
    return z.real();
}

namespace {

struct LawTerms {
    double sin_wt;
    double cos_wt;
    double coupling;   // 2β/(σ+1)
    double hist_coeff; // 2β(σω−1)/(σ+1)
};

LawTerms law_terms(double t, const SimulationParams& p) {
    return LawTerms{std::sin(p.omega * t), std::cos(p.omega * t),
                    2.0 * p.beta / (p.sigma + 1.0),
                    2.0 * p.beta * (p.sigma * p.omega - 1.0) / (p.sigma + 1.0)};
}

} // namespace

void ledger_append(ConservationLedger& ledger, const WaveField& u, double t,
                   const SimulationParams& p) {
    OperatorFrame f = OperatorFrame::at(t, p.omega);
    double jn = lp_norm(apply_J(u, f), 2.0);
    double hn = lp_norm(apply_H(u, f), 2.0);
    double pn = interaction_norm(u, p.sigma);

    // extend ∫ sin(2ωs)‖u‖_{2σ+2}^{2σ+2} ds by one trapezoid panel
    double hist = 0.0;
    if (!ledger.times.empty()) {
        double t_prev = ledger.times.back();
        double f_prev = ledger.last_integrand_;
        double f_now = std::sin(2.0 * p.omega * t) * pn;
        hist = ledger.hist.back() + 0.5 * (t - t_prev) * (f_prev + f_now);
        ledger.last_integrand_ = f_now;
    } else {
        ledger.xu0_sq = std::pow(lp_norm(multiply_x(u), 2.0), 2.0);
        double gr = lp_norm(spectral_gradient(u), 2.0);
        ledger.grad_u0_sq = gr * gr;
        ledger.interaction_u0 = pn;
        ledger.last_integrand_ = std::sin(2.0 * p.omega * t) * pn;
    }

    LawTerms lt = law_terms(t, p);
    double res_h = std::abs(hn * hn + lt.coupling * lt.sin_wt * lt.sin_wt * pn +
                            lt.hist_coeff * hist - p.omega * p.omega * ledger.xu0_sq);
    double res_j = std::abs(jn * jn + lt.coupling * lt.cos_wt * lt.cos_wt * pn -
                            ledger.grad_u0_sq - lt.coupling * ledger.interaction_u0 -
                            lt.hist_coeff * hist);

    ledger.times.push_back(t);
    ledger.mass.push_back(mass(u));
    ledger.e0.push_back(energy_e0(u, p));
    ledger.lz.push_back(angular_momentum_expectation(u));
    ledger.j_sq.push_back(jn * jn);
    ledger.h_sq.push_back(hn * hn);
    ledger.hist.push_back(hist);
    ledger.pc_h_residual.push_back(res_h);
    ledger.pc_j_residual.push_back(res_j);
}

std::pair<std::vector<double>, std::vector<double>>
pseudoconformal_residuals(const ConservationLedger& ledger) {
    return {ledger.pc_h_residual, ledger.pc_j_residual};
}

} // namespace rgpe
