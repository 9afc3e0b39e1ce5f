#include "rgpe/field.hpp"

#include <cmath>
#include <limits>
#include <random>
#include "rgpe/fft.hpp"

namespace rgpe {

WaveField zero_field(const GridSpec& g) {
    return WaveField(g, CArray::Zero(g.n, g.n));
}

WaveField sample_gaussian(const GridSpec& g, double omega) {
    if (!(omega > 0)) throw ValidationError("omega must be positive");
    Eigen::ArrayXd x = grid_coords(g);
    CArray v(g.n, g.n);
    const double amp = std::sqrt(omega / M_PI);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i)
            v(i, j) = amp * std::exp(-omega * (x[i] * x[i] + x[j] * x[j]) / 2.0);
    return WaveField(g, std::move(v));
}

WaveField sample_vortex(const GridSpec& g, double omega, int m) {
    if (!(omega > 0)) throw ValidationError("omega must be positive");
    if (std::abs(m) > 4) throw ValidationError("|m| must be <= 4");
    if (m == 0) return sample_gaussian(g, omega);
    Eigen::ArrayXd x = grid_coords(g);
    CArray v(g.n, g.n);
    const double sgn = m > 0 ? 1.0 : -1.0;
    const int am = std::abs(m);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            Complex z(x[i], sgn * x[j]);
            Complex zm = z;
            for (int kpow = 1; kpow < am; ++kpow) zm *= z;
            v(i, j) = zm * std::exp(-omega * (x[i] * x[i] + x[j] * x[j]) / 2.0);
        }
    WaveField u(g, std::move(v));
    const double nrm = lp_norm(u, 2.0);
    u.values /= nrm;
    return u;
}

WaveField sample_random_mixture(const GridSpec& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int lumps = 2 + static_cast<int>(unif(rng) * 3);  // 2..4
    Eigen::ArrayXd x = grid_coords(g);
    CArray v = CArray::Zero(g.n, g.n);
    for (int q = 0; q < lumps; ++q) {
        // centers kept well inside the box, widths O(1), moderate momenta:
        // rapid decay at the boundary is part of the field contract
        double c1 = -1.5 + 3.0 * unif(rng);
        double c2 = -1.5 + 3.0 * unif(rng);
        double w = 0.6 + 1.4 * unif(rng);
        double k1 = -2.0 + 4.0 * unif(rng);
        double k2 = -2.0 + 4.0 * unif(rng);
        double a = 0.3 + 0.7 * unif(rng);
        double ph = 2.0 * M_PI * unif(rng);
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                double r2 = (x[i] - c1) * (x[i] - c1) + (x[j] - c2) * (x[j] - c2);
                double phase = k1 * x[i] + k2 * x[j] + ph;
                v(i, j) += a * std::exp(-r2 / (2.0 * w * w)) * Complex(std::cos(phase), std::sin(phase));
            }
    }
    WaveField u(g, std::move(v));
    u.values /= lp_norm(u, 2.0);
    return u;
}

WaveField sample_offset_mixture(const GridSpec& g, double omega) {
    WaveField u = sample_vortex(g, omega, 1);
    Eigen::ArrayXd x = grid_coords(g);
    const double rt = std::sqrt(omega);
    const double a1 = 1.2 / rt, a2 = 0.7 / rt;     // lump center, trap-scaled
    const double amp = 0.4 * std::sqrt(omega / M_PI);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            double r2 = (x[i] - a1) * (x[i] - a1) + (x[j] - a2) * (x[j] - a2);
            u.values(i, j) += amp * std::exp(-0.5 * omega * r2);
        }
    u.values /= lp_norm(u, 2.0);
    return u;
}

double lp_norm(const WaveField& u, double p) {
    if (p == std::numeric_limits<double>::infinity())
        return u.values.abs().maxCoeff();
    if (p < 1.0) throw ValidationError("p must be >= 1");
    const double h2 = u.grid.h * u.grid.h;
    if (p == 2.0) return std::sqrt(u.values.abs2().sum() * h2);
    return std::pow((u.values.abs().pow(p)).sum() * h2, 1.0 / p);
}

double lp_norm(const FieldPair& v, double p) {
    const GridSpec& g = v.first.grid;
    RArray mag = (v.first.values.abs2() + v.second.values.abs2()).sqrt();
    if (p == std::numeric_limits<double>::infinity()) return mag.maxCoeff();
    if (p < 1.0) throw ValidationError("p must be >= 1");
    const double h2 = g.h * g.h;
    if (p == 2.0) return std::sqrt(mag.square().sum() * h2);
    return std::pow(mag.pow(p).sum() * h2, 1.0 / p);
}

Complex inner_product(const WaveField& u, const WaveField& v) {
    if (!(u.grid == v.grid)) throw ValidationError("grid mismatch in inner_product");
    const double h2 = u.grid.h * u.grid.h;
    return (u.values.conjugate() * v.values).sum() * h2;
}

FieldPair spectral_gradient(const WaveField& u, bool* boundary_warning) {
    if (boundary_warning) *boundary_warning = boundary_ring_exceeds(u, 1e-10);
    const GridSpec& g = u.grid;
    Eigen::ArrayXd kd = grid_wavenumbers_deriv(g);
    SpectralTransform& tf = transform_for(g.n);

    CArray d1 = u.values;
    tf.forward_x1(d1);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) d1(i, j) *= Complex(0.0, kd[i]);
    tf.inverse_x1(d1);

    CArray d2 = u.values;
    tf.forward_x2(d2);
    for (int j = 0; j < g.n; ++j) {
        Complex ik(0.0, kd[j]);
        for (int i = 0; i < g.n; ++i) d2(i, j) *= ik;
    }
    tf.inverse_x2(d2);

    return {WaveField(g, std::move(d1), u.time_tag), WaveField(g, std::move(d2), u.time_tag)};
}

FieldPair gradient_perp(const WaveField& u) {
    auto [d1, d2] = spectral_gradient(u);
    d2.values = -d2.values;
    return {std::move(d2), std::move(d1)};
}

FieldPair multiply_x(const WaveField& u) {
    const GridSpec& g = u.grid;
    Eigen::ArrayXd x = grid_coords(g);
    CArray a(g.n, g.n), b(g.n, g.n);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            a(i, j) = x[i] * u.values(i, j);
            b(i, j) = x[j] * u.values(i, j);
        }
    return {WaveField(g, std::move(a), u.time_tag), WaveField(g, std::move(b), u.time_tag)};
}

FieldPair multiply_x_perp(const WaveField& u) {
    auto [a, b] = multiply_x(u);
    b.values = -b.values;
    return {std::move(b), std::move(a)};
}

WaveField multiply_radius(const WaveField& u) {
    const GridSpec& g = u.grid;
    Eigen::ArrayXd x = grid_coords(g);
    CArray v(g.n, g.n);
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i)
            v(i, j) = std::sqrt(x[i] * x[i] + x[j] * x[j]) * u.values(i, j);
    return WaveField(g, std::move(v), u.time_tag);
}

double sigma_norm(const WaveField& u) {
    const double l2 = lp_norm(u, 2.0);
    const double grad = lp_norm(spectral_gradient(u), 2.0);
    const double xr = lp_norm(multiply_radius(u), 2.0);
    return std::sqrt(l2 * l2 + grad * grad) + xr;
}

double boundary_ring_max(const WaveField& u) {
    const int n = u.grid.n;
    double mx = 0.0;
    for (int i = 0; i < n; ++i) {
        mx = std::max(mx, std::abs(u.values(i, 0)));
        mx = std::max(mx, std::abs(u.values(i, n - 1)));
        mx = std::max(mx, std::abs(u.values(0, i)));
        mx = std::max(mx, std::abs(u.values(n - 1, i)));
    }
    return mx;
}

bool boundary_ring_exceeds(const WaveField& u, double threshold) {
    return boundary_ring_max(u) > threshold;
}

bool has_nan(const WaveField& u) {
    const Complex* p = u.values.data();
    const std::ptrdiff_t sz = u.values.size();
    for (std::ptrdiff_t i = 0; i < sz; ++i)
        if (!std::isfinite(p[i].real()) || !std::isfinite(p[i].imag())) return true;
    return false;
}

} // namespace rgpe
