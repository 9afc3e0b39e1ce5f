#pragma once
#include <Eigen/Core>
#include "rgpe/errors.hpp"

namespace rgpe {

// Uniform square grid on [-l, l)^2 with n points per axis, x_j = -l + j*h, h = 2l/n.
struct GridSpec {
    int n = 0;
    double l = 0.0;
    double h = 0.0;

    bool operator==(const GridSpec&) const = default;
};

inline GridSpec make_grid(int n, double l) {
    if (n < 8 || n % 2 != 0) throw ValidationError("n must be even and >= 8");
    if (!(l > 0.0)) throw ValidationError("l must be positive");
    return GridSpec{n, l, 2.0 * l / n};
}

// Coordinates along one axis.
inline Eigen::ArrayXd grid_coords(const GridSpec& g) {
    Eigen::ArrayXd x(g.n);
    for (int j = 0; j < g.n; ++j) x[j] = -g.l + j * g.h;
    return x;
}

// Wavenumbers 2*pi*m/(2l) for m in [-n/2, n/2), stored in transform output order
// (m = 0..n/2-1 then m = -n/2..-1).
inline Eigen::ArrayXd grid_wavenumbers(const GridSpec& g) {
    Eigen::ArrayXd k(g.n);
    const double dk = M_PI / g.l;
    for (int j = 0; j < g.n; ++j) {
        int m = (j < g.n / 2) ? j : j - g.n;
        k[j] = dk * m;
    }
    return k;
}

// Same but with the Nyquist mode zeroed: the multiplier set used for odd-order
// derivatives, where the unpaired m = -n/2 mode would inject a spurious
// asymmetric contribution.
inline Eigen::ArrayXd grid_wavenumbers_deriv(const GridSpec& g) {
    Eigen::ArrayXd k = grid_wavenumbers(g);
    k[g.n / 2] = 0.0;
    return k;
}

} // namespace rgpe
