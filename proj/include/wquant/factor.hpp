#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wquant/core.hpp"
#include "wquant/quantizer.hpp"

namespace wquant {

enum class FactorKind { ExactClosedForm, Numeric, UpperBound };

std::string to_string(FactorKind kind);

/// fctr = kappa_mass_alpha / omega_mass_alpha * e_pq. For upper-bound
/// reports omega_mass_alpha may itself be a lower bound on the mass and
/// e_pq an upper bound on E.
struct FactorReport {
    double e_pq = 0.0;
    double kappa_mass_alpha = 0.0;
    double omega_mass_alpha = 0.0;
    bool omega_mass_is_lower_bound = false;
    double fctr = 0.0;
    FactorKind kind = FactorKind::Numeric;
    std::string family;
    std::string parameter_name;  // free quantizer parameter (a or c), if any
    std::optional<double> parameter;
    nlohmann::json params = nlohmann::json::object();

    [[nodiscard]] nlohmann::json to_json() const;
};

/// E_p^q(omega, kappa): sup omega/kappa for p <= q, otherwise
/// (int kappa^{1/alpha}/M (omega/kappa)^{1/g})^g with g = 1/q - 1/p.
/// Returns +inf when the ratio or the tail of the integrand does not decay.
double e_pq_numeric(const WeightFunction& omega, const WeightFunction& kappa, const ProblemExponents& exps,
                    const Tolerance& tol = {});

/// Fully numeric report for omega = rho/psi: masses by quadrature, E by e_pq_numeric.
FactorReport fctr_numeric(const WeightFunction& rho, const WeightFunction& psi, const WeightFunction& kappa,
                          const ProblemExponents& exps, const Tolerance& tol = {});

/// Gaussian density with unit variance against a Gaussian quantizer of
/// variance sigma2, p = inf, q = 1, r = 1.
double fctr_example_gaussian_variance(double sigma2);

// Gaussian density rho with scale sigma, psi(x) = exp(-x^2/(2 lambda^2)),
// kappa_a(x) = exp(-a|x|).
double gauss_gauss_a_star(double sigma, double lambda, double alpha);
FactorReport fctr_gauss_gauss(double sigma, double lambda, const ProblemExponents& exps,
                              std::optional<double> a = std::nullopt);

// Gaussian density rho, psi(x) = exp(-|x|/lambda), kappa_a(x) = exp(-a|x|).
double gauss_exp_a_star(double sigma, double lambda, double alpha);
FactorReport fctr_gauss_exp(double sigma, double lambda, const ProblemExponents& exps,
                            std::optional<double> a = std::nullopt);
/// The p <= q value at a* as printed in the literature, with the erf
/// argument sigma/sqrt(2 alpha lambda); this is what the published table
/// lists, while fctr_gauss_exp follows the definition.
double fctr_gauss_exp_published(double sigma, double lambda, double alpha);

// Log-normal rho = omega, kappa_c = min(1, (x e^{-mu})^{-c}).
/// Root c > max(alpha, 1) of c (c-1) (c-alpha) = alpha^2/sigma^2.
double solve_c_star(double alpha, double sigma);
/// p <= q. Without c the optimal c is used (c* or 2, by the case split).
FactorReport fctr_lognormal_pleq(double sigma, double mu, double alpha, std::optional<double> c = std::nullopt);
/// p = inf, q = 1, alpha = r + 1. Without c, minimizes over c in (alpha, alpha + 20].
FactorReport fctr_lognormal_int(double sigma, double mu, double alpha, std::optional<double> c = std::nullopt);

// Logistic rho with scale 1/lambda, psi = exp(-b|x|), kappa_a = exp(-a|x|).
double logistic_a_opt(double lambda, double b, double alpha);
FactorReport fctr_bound_logistic(double lambda, double b, double alpha, std::optional<double> a = std::nullopt);

// Student density with nu degrees of freedom, psi = (1+x^2/nu)^{-b/2},
// kappa_a = (1+|x|)^{-a}.
double student_T(double nu);
/// Without a, scans a = alpha + k/10 over (alpha, nu+1-b]. Exact when p <= q,
/// otherwise an upper bound.
FactorReport fctr_bound_student(double nu, double b, double alpha, std::optional<double> a = std::nullopt,
                                bool p_le_q = false);

/// c1 ||kappa^{1/alpha}||_1^alpha E seminorm N^{-r + (1/p-1/q)_+}, N the
/// number of cells. Throws InfiniteFactor when E is infinite.
double theorem1_bound(const ProblemExponents& exps, double kappa_mass_alpha, double e_pq, std::size_t cells,
                      double seminorm);
double theorem1_bound(const WeightFunction& rho, const WeightFunction& psi, const WeightFunction& kappa,
                      const ProblemExponents& exps, std::size_t cells, double seminorm, const Tolerance& tol = {});

/// One printed value of a published table next to the recomputed one.
struct TableCell {
    std::string table;
    std::string row;
    std::string column;
    double published = 0.0;
    double value = 0.0;
    // Gaussian/exponential p <= q only: the value that follows from the definition.
    std::optional<double> definition_value;

    [[nodiscard]] bool matches() const;
};

/// Rounds half to even at 3 decimals and formats with 3 digits.
std::string round3(double v);

std::vector<TableCell> published_tables();

}  // namespace wquant
