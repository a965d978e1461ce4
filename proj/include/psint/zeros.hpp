#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psint/rational.hpp"

namespace psint {

// deterministic tree reduction: same result regardless of how the work is
// partitioned, unlike left-to-right accumulation
double pairwise_sum(const double* a, size_t n);
double pairwise_sum(const std::vector<double>& a);

struct Zero {
    double beta;
    double gamma;
};

// ascending table of nontrivial zeta zeros; bundled tables carry beta = 1/2
// (the verified range), but every consumer is written for general beta
class ZeroTable {
public:
    static ZeroTable load(const std::string& path);
    static ZeroTable from_ordinates(std::vector<double> ordinates,
                                    std::string source);

    size_t size() const { return zeros_.size(); }
    const std::vector<Zero>& zeros() const { return zeros_; }
    double t_max() const { return t_max_; }
    const std::string& source() const { return source_; }

    // #{gamma_i <= T}, valid for any T (no table-sufficiency requirement)
    std::int64_t count_upto(double T) const;

private:
    std::vector<Zero> zeros_;
    double t_max_ = 0;
    std::string source_;
};

// #{0 < gamma <= T}; requires T <= t_max so the count is complete
std::int64_t count_zeros(const ZeroTable& table, double T);

// (T/2pi) log(T/2pi) - T/2pi + 7/8
double rvm_estimate(double T);

// 2 sum_{gamma <= T} x^(beta - 1), conjugate pair doubling
double zero_sum_xbeta(const ZeroTable& table, double x, double T);

struct IdentityCheckResult {
    double lhs, rhs;
    bool relative;  // false when lhs = 0 (empty sum): value is then absolute
    double value;
};

// compares 2 sum x^(beta-1) against 2 x^-1 N(0,T) + 2 int_0^1 N(s,T) x^(s-1)
// log x ds with the step-function integral in closed form; quad_points is
// accepted for interface stability but unused (no quadrature error exists)
IdentityCheckResult density_integral_identity_check(const ZeroTable& table,
                                                    double x, double T,
                                                    int quad_points = 0);

// y - 2 sum_{0 < gamma <= T} Re[(x^rho - (x-y)^rho)/rho], rho = beta + i gamma;
// ascending-gamma pairwise reduction; requires 2 <= y <= x/2 and T <= t_max
double explicit_psi_short(const ZeroTable& table, double x, double y, double T);

struct TermBoundCheck {
    double term_abs;  // |(x^rho - (x-y)^rho)/rho|
    double bound;     // 2 y x^(beta - 1)
    bool ok;
};
TermBoundCheck mean_value_term_bound_check(double beta, double gamma, double x,
                                           double y);

// dyadic-block Dirichlet polynomial sum_{start <= m < 2 start} coeffs[m-start] m^-s
struct DirichletPolySpec {
    std::uint64_t start;
    std::vector<double> coeffs;  // length start, each in [0, 1]

    static DirichletPolySpec ones(std::uint64_t start);
    static DirichletPolySpec make(std::uint64_t start, std::vector<double> coeffs);
};

// |M(rho) N(rho)| summed over zeros with beta >= sigma, 0 < gamma <= T,
// conjugate doubling
double weighted_zero_sum_threshold(const ZeroTable& table,
                                   const DirichletPolySpec& mspec,
                                   const DirichletPolySpec& nspec, double sigma,
                                   double T);

// x^(beta-1) |M(rho) N(rho)| summed over 0 < gamma <= T, conjugate doubling
double weighted_zero_sum_weighted(const ZeroTable& table,
                                  const DirichletPolySpec& mspec,
                                  const DirichletPolySpec& nspec, double x,
                                  double T);

struct StripTransitionResult {
    double lhs;  // the weighted sum
    double rhs;  // e (log x + 1) max over strip anchors of the anchored bound
    bool holds;
};

// instantiates the strip-grouping chain on real data: the weighted sum is
// bounded by e (log x + 1) max_{sigma anchor} x^(sigma + 1/log x - 1) times
// the threshold sum at that anchor
StripTransitionResult strip_transition_check(const ZeroTable& table,
                                             const DirichletPolySpec& mspec,
                                             const DirichletPolySpec& nspec,
                                             double x, double T);

struct MeanValueRatio {
    double numerator;    // sum_{beta >= sigma, |gamma| <= T} |M(rho)|^2
    double denominator;  // M^(1-2 sigma) (M + min(T, sqrt(T) N(sigma,T))) log T
    double ratio;
    bool flagged;  // denominator vanished
};

// diagnostic ratio for the mean-value bound; x and density_B are part of the
// stable interface (density_B names the log-power family the bound came from)
// but the bound itself depends on neither
MeanValueRatio mean_value_bound_ratio(const ZeroTable& table,
                                      const DirichletPolySpec& mspec, double x,
                                      double sigma, double T,
                                      const Rational& density_B = 0);

}  // namespace psint
