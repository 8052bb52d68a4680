#pragma once

// Smooth manufactured (u, v) pair with an insulated-boundary-compatible v
// (zero normal derivative), plus the analytic divergence of the chemotactic
// flux. Test-only oracle, independent of the discrete operators.

#include <cmath>
#include <numbers>

#include "chemo/grid.hpp"
#include "chemo/kernels.hpp"
#include "chemo/model.hpp"

namespace chemo::testing {

struct ManufacturedPair {
    double lx, ly;

    double u(double x, double y) const {
        return 2.0 + 0.8 * std::sin(std::numbers::pi * x / lx) *
                         std::sin(std::numbers::pi * y / ly);
    }
    double ux(double x, double y) const {
        const double kx = std::numbers::pi / lx;
        return 0.8 * kx * std::cos(kx * x) * std::sin(std::numbers::pi * y / ly);
    }
    double uy(double x, double y) const {
        const double ky = std::numbers::pi / ly;
        return 0.8 * ky * std::sin(std::numbers::pi * x / lx) * std::cos(ky * y);
    }

    double v(double x, double y) const {
        return 2.0 + 0.3 * std::cos(std::numbers::pi * x / lx) *
                         std::cos(std::numbers::pi * y / ly);
    }
    double vx(double x, double y) const {
        const double kx = std::numbers::pi / lx;
        return -0.3 * kx * std::sin(kx * x) * std::cos(std::numbers::pi * y / ly);
    }
    double vy(double x, double y) const {
        const double ky = std::numbers::pi / ly;
        return -0.3 * ky * std::cos(std::numbers::pi * x / lx) * std::sin(ky * y);
    }
    double vxx(double x, double y) const {
        const double kx = std::numbers::pi / lx;
        return -0.3 * kx * kx * std::cos(kx * x) *
               std::cos(std::numbers::pi * y / ly);
    }
    double vyy(double x, double y) const {
        const double ky = std::numbers::pi / ly;
        return -0.3 * ky * ky * std::cos(std::numbers::pi * x / lx) *
               std::cos(ky * y);
    }

    /// div(u * chi(v) * grad v) for constant or inverse sensitivity.
    double flux_div(const SensitivityLaw& law, double x, double y) const {
        const double uu = u(x, y), vv = v(x, y);
        const double gx = vx(x, y), gy = vy(x, y);
        const double lap = vxx(x, y) + vyy(x, y);
        const double du_dot_dv = ux(x, y) * gx + uy(x, y) * gy;
        const double grad_v_sq = gx * gx + gy * gy;
        switch (law.kind) {
            case SensitivityLaw::Kind::Constant:
                return law.chi0 * (du_dot_dv + uu * lap);
            case SensitivityLaw::Kind::Inverse:
                return law.chi0 *
                       (du_dot_dv / vv - uu * grad_v_sq / (vv * vv) + uu * lap / vv);
            default:
                return 0.0; // not used by the convergence study
        }
    }

    ScalarField sample_u(const GridSpec& g) const {
        ScalarField f(g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) f.at(i, j) = u(g.xc(i), g.yc(j));
        return f;
    }
    ScalarField sample_v(const GridSpec& g) const {
        ScalarField f(g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) f.at(i, j) = v(g.xc(i), g.yc(j));
        return f;
    }
    ScalarField sample_flux_div(const GridSpec& g, const SensitivityLaw& law) const {
        ScalarField f(g);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                f.at(i, j) = flux_div(law, g.xc(i), g.yc(j));
        return f;
    }
};

/// L2 error of the discrete chemotactic flux divergence against the oracle.
inline double flux_div_error(const ManufacturedPair& mp, const SensitivityLaw& law,
                             int n) {
    const GridSpec g(n, n, mp.lx, mp.ly);
    const ScalarField u = mp.sample_u(g);
    const ScalarField v = mp.sample_v(g);
    const ScalarField div = divergence(chemotactic_flux(u, v, law));
    const ScalarField exact = mp.sample_flux_div(g, law);
    double sum = 0.0;
    for (int k = 0; k < g.cells(); ++k) {
        const double d = div.values[k] - exact.values[k];
        sum += d * d;
    }
    return std::sqrt(g.cell_area() * sum);
}

} // namespace chemo::testing
