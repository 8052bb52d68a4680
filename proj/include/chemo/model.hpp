#pragma once

#include <string>
#include <vector>

#include "chemo/grid.hpp"

namespace chemo {

/// Chemotactic sensitivity chi(v). Config names: "constant", "inverse"
/// (chi0/v), "inverse_power" (chi0/v^k), "log" (chi0*log v).
struct SensitivityLaw {
    enum class Kind { Constant, Inverse, InversePower, Log };

    Kind kind = Kind::Constant;
    double chi0 = 1.0;
    double k = 1.0; // InversePower exponent, >= 1

    static SensitivityLaw constant(double chi);
    static SensitivityLaw inverse(double chi0);
    static SensitivityLaw inverse_power(double chi0, double k);
    static SensitivityLaw logarithmic(double chi0);

    /// Open lower edge of the admissible v range: chi must stay strictly
    /// positive, so the log law needs v > 1 and the singular laws v > 0.
    double domain_min() const;
    bool in_domain(double v) const { return v > domain_min(); }

    std::string name() const;
};

double chi_eval(const SensitivityLaw& law, double v); // throws DomainViolation

/// Signal production g(u). Config names: "linear" (g(u)=u) and
/// "power_shift" (g(u)=lambda2*(1+u)^beta). lambda1, lambda2 are the
/// validation bounds 0 < lambda1 <= g(s) <= lambda2*(1+s)^beta.
struct ProductionLaw {
    enum class Kind { Linear, PowerShift };

    Kind kind = Kind::PowerShift;
    double beta = 0.5;    // in [0,1]
    double lambda1 = 1.0;
    double lambda2 = 1.0;

    static ProductionLaw linear(double lambda1 = 1.0, double lambda2 = 1.0);
    static ProductionLaw power_shift(double beta, double lambda2 = 1.0,
                                     double lambda1 = 1.0);

    std::string name() const;
};

double g_eval(const ProductionLaw& law, double u); // throws DomainViolation

struct ProductionValidation {
    bool ok = true;
    std::string violation; // first violated bound, human-readable
};

/// Checks lambda1 <= g(s) <= lambda2*(1+s)^beta at every sample. The linear
/// law fails the lower bound near s=0; callers that run it anyway should
/// surface the report.
ProductionValidation validate_production(const ProductionLaw& law,
                                         const std::vector<double>& samples);

struct ModelParams {
    SensitivityLaw sensitivity;
    ProductionLaw production;
};

/// g applied cellwise; negative u below -1e-12 is a domain violation,
/// smaller negative round-off is evaluated as zero (the state itself is
/// never clamped).
ScalarField apply_production(const ProductionLaw& law, const ScalarField& u);

/// Face flux u * chi(v) * grad(v): central face gradient and arithmetic
/// face mean of v, u upwinded against the drift direction. Boundary faces
/// stay zero. max_speed (optional) receives max over faces of |chi*grad v|,
/// the advective rate that drives the CFL bound.
FaceFluxField chemotactic_flux(const ScalarField& u, const ScalarField& v,
                               const SensitivityLaw& law,
                               double* max_speed = nullptr);

} // namespace chemo
