#include "psint/zeros.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace psint {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

double complete_count_or_throw(const ZeroTable& table, double T,
                               const char* op) {
    if (!(T >= 0)) fail(std::string(op) + ": T must be nonnegative");
    if (T > table.t_max())
        fail(std::string(op) + ": T = " + std::to_string(T) +
             " exceeds table height t_max = " + std::to_string(table.t_max()) +
             " (table insufficient)");
    return T;
}

}  // namespace

double pairwise_sum(const double* a, size_t n) {
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = a[0];
        for (size_t i = 1; i < n; ++i) s += a[i];
        return s;
    }
    size_t half = n / 2;
    return pairwise_sum(a, half) + pairwise_sum(a + half, n - half);
}

double pairwise_sum(const std::vector<double>& a) {
    return pairwise_sum(a.data(), a.size());
}

ZeroTable ZeroTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open zero table: " + path);
    std::vector<double> ordinates;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        size_t e = line.find_last_not_of(" \t\r");
        std::string tok = line.substr(b, e - b + 1);
        char* end = nullptr;
        double v = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size() || !std::isfinite(v))
            fail(path + ": line " + std::to_string(lineno) +
                 ": not a finite ordinate: '" + tok + "'");
        if (!(v > 0))
            fail(path + ": line " + std::to_string(lineno) +
                 ": ordinate must be positive");
        if (!ordinates.empty() && !(v > ordinates.back()))
            fail(path + ": line " + std::to_string(lineno) +
                 ": ordinates must be strictly ascending");
        ordinates.push_back(v);
    }
    return from_ordinates(std::move(ordinates), path);
}

ZeroTable ZeroTable::from_ordinates(std::vector<double> ordinates,
                                    std::string source) {
    ZeroTable t;
    t.source_ = std::move(source);
    if (ordinates.empty()) return t;
    if (!(ordinates.front() > 14))
        fail(t.source_ +
             ": first ordinate must exceed 14 (no smaller zeros exist)");
    double prev = 0;
    for (double g : ordinates) {
        if (!(g > prev))
            fail(t.source_ + ": ordinates must be strictly ascending");
        prev = g;
    }
    t.zeros_.reserve(ordinates.size());
    for (double g : ordinates) t.zeros_.push_back({0.5, g});
    t.t_max_ = ordinates.back();
    return t;
}

std::int64_t ZeroTable::count_upto(double T) const {
    auto it = std::upper_bound(
        zeros_.begin(), zeros_.end(), T,
        [](double t, const Zero& z) { return t < z.gamma; });
    return static_cast<std::int64_t>(it - zeros_.begin());
}

std::int64_t count_zeros(const ZeroTable& table, double T) {
    complete_count_or_throw(table, T, "count_zeros");
    return table.count_upto(T);
}

double rvm_estimate(double T) {
    if (!(T > 0)) throw std::domain_error("rvm_estimate: T must be positive");
    double u = T / (2 * kPi);
    return u * std::log(u) - u + 7.0 / 8.0;
}

double zero_sum_xbeta(const ZeroTable& table, double x, double T) {
    if (!(x >= 2)) throw std::domain_error("zero_sum_xbeta: need x >= 2");
    complete_count_or_throw(table, T, "zero_sum_xbeta");
    std::vector<double> terms;
    for (const Zero& z : table.zeros()) {
        if (z.gamma > T) break;
        terms.push_back(std::pow(x, z.beta - 1));
    }
    return 2 * pairwise_sum(terms);
}

IdentityCheckResult density_integral_identity_check(const ZeroTable& table,
                                                    double x, double T,
                                                    int /*quad_points*/) {
    if (!(x >= 2))
        throw std::domain_error("density_integral_identity_check: need x >= 2");
    complete_count_or_throw(table, T, "density_integral_identity_check");

    double lhs = zero_sum_xbeta(table, x, T);

    // N(sigma, T) = #{beta_i >= sigma, gamma_i <= T} is a right-continuous
    // step function of sigma dropping at each distinct beta; the integral of
    // N(sigma,T) x^(sigma-1) log x over a segment where N is constant is
    // N * (x^(hi-1) - x^(lo-1))
    std::vector<double> betas;
    for (const Zero& z : table.zeros()) {
        if (z.gamma > T) break;
        betas.push_back(z.beta);
    }
    std::sort(betas.begin(), betas.end());
    auto n_total = static_cast<double>(betas.size());

    double integral = 0;
    double lo = 0;
    size_t i = 0;  // betas[0..i) are < current segment's count threshold
    while (i < betas.size()) {
        double b = betas[i];
        double count = static_cast<double>(betas.size() - i);
        if (b > lo)
            integral += count * (std::pow(x, b - 1) - std::pow(x, lo - 1));
        lo = b;
        while (i < betas.size() && betas[i] == b) ++i;
    }
    double rhs = 2 * n_total / x + 2 * integral;

    IdentityCheckResult r;
    r.lhs = lhs;
    r.rhs = rhs;
    double diff = std::fabs(lhs - rhs);
    r.relative = lhs != 0;
    r.value = r.relative ? diff / lhs : diff;
    return r;
}

double explicit_psi_short(const ZeroTable& table, double x, double y,
                          double T) {
    if (!(y >= 2) || !(y <= x / 2))
        throw std::domain_error("explicit_psi_short: need 2 <= y <= x/2");
    complete_count_or_throw(table, T, "explicit_psi_short");

    double lx = std::log(x);
    double lz = std::log(x - y);
    std::vector<double> terms;
    for (const Zero& z : table.zeros()) {
        if (z.gamma > T) break;
        double xb = std::pow(x, z.beta);
        double zb = std::pow(x - y, z.beta);
        std::complex<double> xr(xb * std::cos(z.gamma * lx),
                                xb * std::sin(z.gamma * lx));
        std::complex<double> zr(zb * std::cos(z.gamma * lz),
                                zb * std::sin(z.gamma * lz));
        std::complex<double> rho(z.beta, z.gamma);
        std::complex<double> w = (xr - zr) / rho;
        assert(std::abs(w) <= 2 * y * std::pow(x, z.beta - 1) * (1 + 1e-9));
        terms.push_back(w.real());
    }
    return y - 2 * pairwise_sum(terms);
}

TermBoundCheck mean_value_term_bound_check(double beta, double gamma, double x,
                                           double y) {
    if (!(beta > 0) || !(beta <= 1))
        throw std::domain_error("mean_value_term_bound_check: need 0 < beta <= 1");
    if (!(y > 0) || !(y <= x / 2))
        throw std::domain_error("mean_value_term_bound_check: need 0 < y <= x/2");
    double xb = std::pow(x, beta);
    double zb = std::pow(x - y, beta);
    double lx = std::log(x);
    double lz = std::log(x - y);
    std::complex<double> xr(xb * std::cos(gamma * lx), xb * std::sin(gamma * lx));
    std::complex<double> zr(zb * std::cos(gamma * lz), zb * std::sin(gamma * lz));
    std::complex<double> rho(beta, gamma);
    TermBoundCheck c;
    c.term_abs = std::abs((xr - zr) / rho);
    c.bound = 2 * y * std::pow(x, beta - 1);
    c.ok = c.term_abs <= c.bound;
    return c;
}

DirichletPolySpec DirichletPolySpec::ones(std::uint64_t start) {
    return make(start, std::vector<double>(static_cast<size_t>(start), 1.0));
}

DirichletPolySpec DirichletPolySpec::make(std::uint64_t start,
                                          std::vector<double> coeffs) {
    if (start < 1)
        throw std::domain_error("DirichletPolySpec: block start must be >= 1");
    if (coeffs.size() != start)
        throw std::domain_error(
            "DirichletPolySpec: need exactly one coefficient per block entry");
    for (double c : coeffs)
        if (!(c >= 0) || !(c <= 1))
            throw std::domain_error(
                "DirichletPolySpec: coefficients must lie in [0, 1]");
    return DirichletPolySpec{start, std::move(coeffs)};
}

namespace {

// |sum_{start <= m < 2 start} coeffs[m-start] m^(-beta - i gamma)|
double dirichlet_abs(const DirichletPolySpec& spec, double beta, double gamma) {
    double re = 0, im = 0;
    for (std::uint64_t m = spec.start; m < 2 * spec.start; ++m) {
        double a = spec.coeffs[static_cast<size_t>(m - spec.start)];
        if (a == 0) continue;
        double lm = std::log(static_cast<double>(m));
        double mag = a * std::pow(static_cast<double>(m), -beta);
        re += mag * std::cos(gamma * lm);
        im -= mag * std::sin(gamma * lm);
    }
    return std::hypot(re, im);
}

}  // namespace

double weighted_zero_sum_threshold(const ZeroTable& table,
                                   const DirichletPolySpec& mspec,
                                   const DirichletPolySpec& nspec, double sigma,
                                   double T) {
    if (!(sigma >= 0) || !(sigma <= 1))
        throw std::domain_error(
            "weighted_zero_sum_threshold: need sigma in [0, 1]");
    complete_count_or_throw(table, T, "weighted_zero_sum_threshold");
    std::vector<double> terms;
    for (const Zero& z : table.zeros()) {
        if (z.gamma > T) break;
        if (z.beta < sigma) continue;
        terms.push_back(dirichlet_abs(mspec, z.beta, z.gamma) *
                        dirichlet_abs(nspec, z.beta, z.gamma));
    }
    return 2 * pairwise_sum(terms);
}

double weighted_zero_sum_weighted(const ZeroTable& table,
                                  const DirichletPolySpec& mspec,
                                  const DirichletPolySpec& nspec, double x,
                                  double T) {
    if (!(x >= 2))
        throw std::domain_error("weighted_zero_sum_weighted: need x >= 2");
    complete_count_or_throw(table, T, "weighted_zero_sum_weighted");
    std::vector<double> terms;
    for (const Zero& z : table.zeros()) {
        if (z.gamma > T) break;
        terms.push_back(std::pow(x, z.beta - 1) *
                        dirichlet_abs(mspec, z.beta, z.gamma) *
                        dirichlet_abs(nspec, z.beta, z.gamma));
    }
    return 2 * pairwise_sum(terms);
}

StripTransitionResult strip_transition_check(const ZeroTable& table,
                                             const DirichletPolySpec& mspec,
                                             const DirichletPolySpec& nspec,
                                             double x, double T) {
    if (!(x >= 2))
        throw std::domain_error("strip_transition_check: need x >= 2");
    complete_count_or_throw(table, T, "strip_transition_check");

    StripTransitionResult r;
    r.lhs = weighted_zero_sum_weighted(table, mspec, nspec, x, T);

    // anchors sigma = k / log x partition [0, 1] into strips of width
    // 1/log x; within a strip, x^(beta-1) <= x^(sigma + 1/log x - 1) =
    // e x^(sigma - 1), and summing the <= ceil(log x) strips loses at most
    // the max times the strip count <= log x + 1
    double lx = std::log(x);
    auto strips = static_cast<long>(std::ceil(lx));
    double best = 0;
    for (long k = 0; k < strips; ++k) {
        double sigma = static_cast<double>(k) / lx;
        double bound = std::pow(x, sigma + 1 / lx - 1) *
                       weighted_zero_sum_threshold(table, mspec, nspec, sigma, T);
        best = std::max(best, bound);
    }
    r.rhs = std::exp(1.0) * (lx + 1) * best;
    r.holds = r.lhs <= r.rhs;
    return r;
}

MeanValueRatio mean_value_bound_ratio(const ZeroTable& table,
                                      const DirichletPolySpec& mspec,
                                      double /*x*/, double sigma, double T,
                                      const Rational& density_B) {
    complete_count_or_throw(table, T, "mean_value_bound_ratio");
    if (density_B < 0)
        throw std::domain_error("mean_value_bound_ratio: B must be nonnegative");

    std::vector<double> terms;
    std::int64_t n_sigma = 0;
    for (const Zero& z : table.zeros()) {
        if (z.gamma > T) break;
        if (z.beta < sigma) continue;
        ++n_sigma;
        double a = dirichlet_abs(mspec, z.beta, z.gamma);
        terms.push_back(a * a);
    }
    // the square sum ranges over |gamma| <= T, hence the conjugate doubling;
    // N(sigma, T) keeps the one-sided 0 < gamma <= T convention
    double numerator = 2 * pairwise_sum(terms);

    double M = static_cast<double>(mspec.start);
    double e_term = std::min(T, std::sqrt(T) * static_cast<double>(n_sigma));
    MeanValueRatio r;
    r.numerator = numerator;
    r.denominator = std::pow(M, 1 - 2 * sigma) * (M + e_term) * std::log(T);
    r.flagged = r.denominator == 0;
    r.ratio = r.flagged ? 0.0 : numerator / r.denominator;
    return r;
}

}  // namespace psint
