#pragma once

#include <vector>

#include "wquant/core.hpp"
#include "wquant/numerics.hpp"

namespace wquant {

/// Break points x_0 < ... < x_m of a quantizer, infinite ends stored as +-inf.
struct KnotVector {
    std::vector<double> knots;
    double mass_per_cell = 0.0;
    double total_mass = 0.0;  // ||kappa^{1/alpha}||_1 over the knot span
    double alpha = 1.0;
    WeightFunction quantizer = WeightFunction::constant_one();
    bool closed_form = false;

    [[nodiscard]] std::size_t cells() const { return knots.empty() ? 0 : knots.size() - 1; }
    [[nodiscard]] Interval span() const { return {knots.front(), knots.back()}; }
};

enum class MassMethod { Auto, Numeric };

/// kappa^{1/alpha}(x), evaluated through the log to stay finite in the tails.
double quantizer_density(const WeightFunction& kappa, double alpha, double x);

/// ||kappa^{1/alpha}||_1 over kappa's domain. Closed forms for the named
/// quantizers unless Numeric is requested; throws NonIntegrableQuantizer.
double quantizer_mass(const WeightFunction& kappa, double alpha, MassMethod method = MassMethod::Auto,
                      const Tolerance& tol = Tolerance(1e-12));

/// Knots with int_{x_0}^{x_i} kappa^{1/alpha} = (i/n) * total on the half line
/// starting at kappa's finite lower domain end (0 when the domain is R).
KnotVector knots_halfline(const WeightFunction& kappa, double alpha, int n, MassMethod method = MassMethod::Auto);

/// 2n+1 knots on R: x_0 = 0, x_{+-n} = +-inf and x_{-i} = -x_i.
KnotVector knots_realline(const WeightFunction& kappa, double alpha, int n, MassMethod method = MassMethod::Auto);

/// Knots for kappa_c(x) = min(1, (x e^{-mu})^{-c}) on [0, inf); requires c > alpha.
KnotVector knots_lognormal(double c, double alpha, double mu, int n);

/// Numerically integrated mass of every cell.
std::vector<double> cell_masses(const KnotVector& kv, const Tolerance& tol = Tolerance(1e-12));

/// max_i |cell mass_i / mass_per_cell - 1|.
double equal_mass_deviation(const KnotVector& kv, const Tolerance& tol = Tolerance(1e-12));

}  // namespace wquant
