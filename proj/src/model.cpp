#include "chemo/model.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "chemo/errors.hpp"
#include "chemo/kernels.hpp"

namespace chemo {

// -------------------------------------------------------------- sensitivity

SensitivityLaw SensitivityLaw::constant(double chi) {
    if (!(chi > 0.0)) throw ValidationError("sensitivity: chi must be > 0");
    return {Kind::Constant, chi, 1.0};
}

SensitivityLaw SensitivityLaw::inverse(double chi0) {
    if (!(chi0 > 0.0)) throw ValidationError("sensitivity: chi0 must be > 0");
    return {Kind::Inverse, chi0, 1.0};
}

SensitivityLaw SensitivityLaw::inverse_power(double chi0, double k) {
    if (!(chi0 > 0.0)) throw ValidationError("sensitivity: chi0 must be > 0");
    if (!(k >= 1.0)) throw ValidationError("sensitivity: inverse_power needs k >= 1");
    return {Kind::InversePower, chi0, k};
}

SensitivityLaw SensitivityLaw::logarithmic(double chi0) {
    if (!(chi0 > 0.0)) throw ValidationError("sensitivity: chi0 must be > 0");
    return {Kind::Log, chi0, 1.0};
}

double SensitivityLaw::domain_min() const {
    switch (kind) {
        case Kind::Constant: return -std::numeric_limits<double>::infinity();
        case Kind::Inverse:
        case Kind::InversePower: return 0.0;
        case Kind::Log: return 1.0; // keeps chi = chi0*log(v) strictly positive
    }
    return 0.0;
}

std::string SensitivityLaw::name() const {
    switch (kind) {
        case Kind::Constant: return "constant";
        case Kind::Inverse: return "inverse";
        case Kind::InversePower: return "inverse_power";
        case Kind::Log: return "log";
    }
    return "?";
}

double chi_eval(const SensitivityLaw& law, double v) {
    if (!law.in_domain(v))
        throw DomainViolation("chi(" + law.name() + ") evaluated at v=" +
                              std::to_string(v) + " outside its domain");
    switch (law.kind) {
        case SensitivityLaw::Kind::Constant: return law.chi0;
        case SensitivityLaw::Kind::Inverse: return law.chi0 / v;
        case SensitivityLaw::Kind::InversePower: return law.chi0 / std::pow(v, law.k);
        case SensitivityLaw::Kind::Log: return law.chi0 * std::log(v);
    }
    return 0.0;
}

// --------------------------------------------------------------- production

ProductionLaw ProductionLaw::linear(double lambda1, double lambda2) {
    if (!(lambda1 > 0.0) || !(lambda1 <= lambda2))
        throw ValidationError("production: need 0 < lambda1 <= lambda2");
    return {Kind::Linear, 1.0, lambda1, lambda2};
}

ProductionLaw ProductionLaw::power_shift(double beta, double lambda2, double lambda1) {
    if (!(beta >= 0.0 && beta <= 1.0))
        throw ValidationError("production: power_shift needs beta in [0,1]");
    if (!(lambda1 > 0.0) || !(lambda1 <= lambda2))
        throw ValidationError("production: need 0 < lambda1 <= lambda2");
    return {Kind::PowerShift, beta, lambda1, lambda2};
}

std::string ProductionLaw::name() const {
    return kind == Kind::Linear ? "linear" : "power_shift";
}

double g_eval(const ProductionLaw& law, double u) {
    if (u < -1e-12)
        throw DomainViolation("g evaluated at u=" + std::to_string(u) + " < 0");
    switch (law.kind) {
        case ProductionLaw::Kind::Linear: return u;
        case ProductionLaw::Kind::PowerShift:
            return law.lambda2 * std::pow(1.0 + u, law.beta);
    }
    return 0.0;
}

ProductionValidation validate_production(const ProductionLaw& law,
                                         const std::vector<double>& samples) {
    ProductionValidation r;
    for (double s : samples) {
        const double g = g_eval(law, s);
        if (g < law.lambda1) {
            r.ok = false;
            r.violation = "g(" + std::to_string(s) + ")=" + std::to_string(g) +
                          " below lambda1=" + std::to_string(law.lambda1);
            return r;
        }
        const double upper = law.lambda2 * std::pow(1.0 + s, law.beta);
        if (g > upper) {
            r.ok = false;
            r.violation = "g(" + std::to_string(s) + ")=" + std::to_string(g) +
                          " above lambda2*(1+s)^beta=" + std::to_string(upper);
            return r;
        }
    }
    return r;
}

ScalarField apply_production(const ProductionLaw& law, const ScalarField& u) {
    ScalarField w(u.grid);
    const int n = u.grid.cells();
    for (int k = 0; k < n; ++k) {
        const double uv = u.values[k];
        if (uv < -1e-12)
            throw DomainViolation("g applied to u=" + std::to_string(uv) + " < 0");
        w.values[k] = g_eval(law, uv > 0.0 ? uv : 0.0);
    }
    return w;
}

// --------------------------------------------------------------------- flux

namespace {

// chi without the throwing guard, for use inside parallel regions; callers
// must have checked the domain.
inline double chi_unchecked(const SensitivityLaw& law, double v) {
    switch (law.kind) {
        case SensitivityLaw::Kind::Constant: return law.chi0;
        case SensitivityLaw::Kind::Inverse: return law.chi0 / v;
        case SensitivityLaw::Kind::InversePower: return law.chi0 / std::pow(v, law.k);
        case SensitivityLaw::Kind::Log: return law.chi0 * std::log(v);
    }
    return 0.0;
}

} // namespace

FaceFluxField chemotactic_flux(const ScalarField& u, const ScalarField& v,
                               const SensitivityLaw& law, double* max_speed) {
    const GridSpec& g = u.grid;
    const int nx = g.nx, ny = g.ny;
    const double inv_hx = 1.0 / g.hx(), inv_hy = 1.0 / g.hy();
    FaceFluxField flux(g);

    // Exceptions must not unwind through the parallel regions, so domain
    // violations are flagged per row and raised afterwards.
    std::vector<double> row_speed(static_cast<std::size_t>(ny) + 1, 0.0);
    std::vector<unsigned char> row_bad(static_cast<std::size_t>(ny) + 1, 0);

#pragma omp parallel for schedule(static) if (g.cells() >= omp_min_cells)
    for (int j = 0; j < ny; ++j) {
        double speed = 0.0;
        for (int i = 1; i < nx; ++i) {
            const double vl = v.at(i - 1, j), vr = v.at(i, j);
            const double vf = 0.5 * (vl + vr);
            if (!law.in_domain(vf)) {
                row_bad[j] = 1;
                continue;
            }
            const double dv = (vr - vl) * inv_hx;
            const double s = chi_unchecked(law, vf) * dv;
            // Upwind: the flux carries mass out of the cell it points away from.
            const double uu = (s > 0.0) ? u.at(i - 1, j) : u.at(i, j);
            flux.x_at(i, j) = uu * s;
            speed = std::max(speed, std::abs(s));
        }
        row_speed[j] = speed;
    }

    std::vector<double> yrow_speed(static_cast<std::size_t>(ny) + 1, 0.0);
#pragma omp parallel for schedule(static) if (g.cells() >= omp_min_cells)
    for (int j = 1; j < ny; ++j) {
        double speed = 0.0;
        for (int i = 0; i < nx; ++i) {
            const double vb = v.at(i, j - 1), vt = v.at(i, j);
            const double vf = 0.5 * (vb + vt);
            if (!law.in_domain(vf)) {
                row_bad[j] = 1;
                continue;
            }
            const double dv = (vt - vb) * inv_hy;
            const double s = chi_unchecked(law, vf) * dv;
            const double uu = (s > 0.0) ? u.at(i, j - 1) : u.at(i, j);
            flux.y_at(i, j) = uu * s;
            speed = std::max(speed, std::abs(s));
        }
        yrow_speed[j] = speed;
    }

    for (int j = 0; j < ny; ++j)
        if (row_bad[j])
            throw DomainViolation("chi(" + law.name() +
                                  ") hit a face value outside its domain");

    double speed = 0.0;
    for (int j = 0; j < ny; ++j)
        speed = std::max(speed, std::max(row_speed[j], yrow_speed[j]));
    if (max_speed) *max_speed = speed;
    return flux;
}

} // namespace chemo
