#pragma once

#include "psint/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace psint {

// Coefficient that stays exact as long as every input was rational.
class Scalar {
  public:
    Scalar() = default;
    Scalar(const Rational& r) : exact_(true), rat_(r), val_(to_double(r)) {}
    Scalar(long v) : Scalar(Rational(v)) {}
    static Scalar approx(double v) {
        Scalar s;
        s.exact_ = false;
        s.val_ = v;
        return s;
    }
    bool exact() const { return exact_; }
    const Rational& rat() const {
        if (!exact_) throw std::logic_error("inexact scalar has no rational value");
        return rat_;
    }
    double value() const { return val_; }
    Scalar operator+(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    bool is_zero() const;
    int sign() const;  // 0 when is_zero()
    bool same_value(const Scalar& o) const;
    std::string str() const;  // reparses to the same value

    static constexpr double kTol = 1e-12;

  private:
    bool exact_ = true;
    Rational rat_{0};
    double val_ = 0.0;
};

// Exponents of (log x)^a (loglog x)^b (logloglog x)^c for one term of log f.
// Lexicographic order on (a, b, c) coincides with growth dominance.
struct LogMonomial {
    Rational a{0}, b{0}, c{0};
    bool operator==(const LogMonomial&) const = default;
};
int cmp(const LogMonomial& l, const LogMonomial& r);

struct GrowthTerm {
    Scalar coeff;
    LogMonomial mono;
};

// log f(x) = sum coeff * (log x)^a (loglog x)^b (logloglog x)^c, canonical:
// sorted descending by monomial, monomials unique, no zero coefficients.
// The empty sum is the constant function 1.
class GrowthExpr {
  public:
    GrowthExpr() = default;
    static GrowthExpr one() { return {}; }
    static GrowthExpr from_terms(std::vector<GrowthTerm> ts);
    static GrowthExpr x_pow(const Rational& q);
    static GrowthExpr log_pow(const Rational& q);
    static GrowthExpr loglog_pow(const Rational& q);

    const std::vector<GrowthTerm>& terms() const { return terms_; }
    bool is_one() const { return terms_.empty(); }

    GrowthExpr times(const GrowthExpr& o) const;  // f*g: adds the logs
    GrowthExpr over(const GrowthExpr& o) const;   // f/g
    GrowthExpr pow(const Rational& q) const;      // f^q
    // multiply log f (a polynomial in the three log variables) by c * monomial
    GrowthExpr log_scaled(const Scalar& c, const LogMonomial& m) const;

    bool same_as(const GrowthExpr& o) const;
    double eval_log(double x) const;  // numeric log f(x)
    double eval(double x) const;
    std::string str() const;  // parse_growth(str()) == *this for the parseable class

  private:
    std::vector<GrowthTerm> terms_;
};

enum class Order { LittleO, Theta, LittleOmega };
std::string to_string(Order o);

// f = o(g) / f ≍ g / g = o(f), decided by the leading term of log f - log g.
Order compare_growth(const GrowthExpr& f, const GrowthExpr& g);

struct GrowthParseError : std::runtime_error {
    size_t pos;
    GrowthParseError(const std::string& msg, size_t p)
        : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}
};

// Grammar: product of factors  x^q | log(x)^q | loglog(x)^q | 1 |
//   exp(sum of c*log(x)^q*loglog(x)^q terms), '^q' optional, q rational or
//   parenthesized, decimals read exactly.
GrowthExpr parse_growth(const std::string& text);

// eta(T) families: width of the zero-free strip as a function of height T.
class ZeroFreeRegion {
  public:
    enum class Kind { ConstantStrip, InghamLogLog, KorobovVinogradov };

    static ZeroFreeRegion constant_strip(const Rational& eta0, double t0 = 3.0);
    static ZeroFreeRegion ingham_loglog(double a, double t0 = 16.0);
    static ZeroFreeRegion korobov_vinogradov(double c, double t0 = 16.0);

    Kind kind() const { return kind_; }
    double param() const { return param_.value(); }
    double t0() const { return t0_; }
    double eta(double t) const;  // evaluated at max(t, t0)

    // eta(x) * log x as a growth-expression exponent: log of x^{eta(x)}
    GrowthExpr eta_log_x() const;
    // multiply a log-space expression by eta(x) symbolically
    GrowthExpr scale_log_by_eta(const GrowthExpr& logexpr) const;
    std::string str() const;

  private:
    ZeroFreeRegion(Kind k, Scalar p, double t0) : kind_(k), param_(p), t0_(t0) {}
    Kind kind_;
    Scalar param_;
    double t0_ = 3.0;
};

struct ConditionReport {
    std::string condition_id;  // "3.1", "3.2", "3.3"
    bool holds = false;
    GrowthExpr lhs, rhs;  // the two sides that were compared
    Order verdict = Order::Theta;
};

// Growth conditions for PNT in (x - y, x] with y = x^theta * g(x), given a
// zero-density exponent pair (b, h) and a zero-free region eta.  Exactly one
// of "3.1" (theta > 1 - 1/b) and "3.2" (theta = 1 - 1/b) applies; "3.3" is
// added when b = 2 and theta = 1/2.
std::vector<ConditionReport> check_ingham_gen_conditions(
    const Rational& theta, const Rational& b, const GrowthExpr& g,
    const ZeroFreeRegion& eta, const GrowthExpr& h, const Rational& delta);

// inf over T in [1, x] of eta(T) log x + log T
double omega_eta(double x, const ZeroFreeRegion& eta);

enum class ErrorFactor { InghamHalf, PintzOne };

// x * exp(-F (1 - eps) omega_eta(x)) with F = 1/2 or 1
double pnt_error_bound(double x, const ZeroFreeRegion& eta, ErrorFactor factor,
                       double eps);

// (5^6 c^3 / (2^2 3^4))^(1/5) - eps
double d_epsilon(double c, double eps);

// max{1, (B+1)/(b eta0)}: minimal exponent C with y = sqrt(x) log^{C+eps} x
Rational min_log_power_C(const Rational& b, const Rational& B, const Rational& eta0);

}  // namespace psint
