#include "psint/growth.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>

namespace psint {

// ---------------------------------------------------------------- Scalar

Scalar Scalar::operator+(const Scalar& o) const {
    if (exact_ && o.exact_) return Scalar(Rational(rat_ + o.rat_));
    return approx(val_ + o.val_);
}

Scalar Scalar::operator*(const Scalar& o) const {
    if (exact_ && o.exact_) return Scalar(Rational(rat_ * o.rat_));
    return approx(val_ * o.val_);
}

Scalar Scalar::operator-() const {
    if (exact_) return Scalar(Rational(-rat_));
    return approx(-val_);
}

bool Scalar::is_zero() const {
    return exact_ ? rat_ == 0 : std::fabs(val_) <= kTol;
}

int Scalar::sign() const {
    if (is_zero()) return 0;
    if (exact_) return rat_ > 0 ? 1 : -1;
    return val_ > 0 ? 1 : -1;
}

bool Scalar::same_value(const Scalar& o) const {
    if (exact_ && o.exact_) return rat_ == o.rat_;
    double m = std::max({1.0, std::fabs(val_), std::fabs(o.val_)});
    return std::fabs(val_ - o.val_) <= kTol * m;
}

std::string Scalar::str() const {
    if (exact_) return format_rational(rat_);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", val_);
    return buf;
}

// ----------------------------------------------------------- LogMonomial

int cmp(const LogMonomial& l, const LogMonomial& r) {
    if (l.a != r.a) return l.a < r.a ? -1 : 1;
    if (l.b != r.b) return l.b < r.b ? -1 : 1;
    if (l.c != r.c) return l.c < r.c ? -1 : 1;
    return 0;
}

// ------------------------------------------------------------ GrowthExpr

GrowthExpr GrowthExpr::from_terms(std::vector<GrowthTerm> ts) {
    std::sort(ts.begin(), ts.end(), [](const GrowthTerm& l, const GrowthTerm& r) {
        return cmp(l.mono, r.mono) > 0;
    });
    GrowthExpr e;
    for (auto& t : ts) {
        if (!e.terms_.empty() && e.terms_.back().mono == t.mono)
            e.terms_.back().coeff = e.terms_.back().coeff + t.coeff;
        else
            e.terms_.push_back(t);
    }
    std::erase_if(e.terms_, [](const GrowthTerm& t) { return t.coeff.is_zero(); });
    return e;
}

GrowthExpr GrowthExpr::x_pow(const Rational& q) {
    return from_terms({{Scalar(q), LogMonomial{1, 0, 0}}});
}

GrowthExpr GrowthExpr::log_pow(const Rational& q) {
    return from_terms({{Scalar(q), LogMonomial{0, 1, 0}}});
}

GrowthExpr GrowthExpr::loglog_pow(const Rational& q) {
    return from_terms({{Scalar(q), LogMonomial{0, 0, 1}}});
}

GrowthExpr GrowthExpr::times(const GrowthExpr& o) const {
    std::vector<GrowthTerm> ts = terms_;
    ts.insert(ts.end(), o.terms_.begin(), o.terms_.end());
    return from_terms(std::move(ts));
}

GrowthExpr GrowthExpr::over(const GrowthExpr& o) const {
    std::vector<GrowthTerm> ts = terms_;
    for (const auto& t : o.terms_) ts.push_back({-t.coeff, t.mono});
    return from_terms(std::move(ts));
}

GrowthExpr GrowthExpr::pow(const Rational& q) const {
    return log_scaled(Scalar(q), LogMonomial{});
}

GrowthExpr GrowthExpr::log_scaled(const Scalar& c, const LogMonomial& m) const {
    std::vector<GrowthTerm> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_)
        ts.push_back({t.coeff * c,
                      LogMonomial{t.mono.a + m.a, t.mono.b + m.b, t.mono.c + m.c}});
    return from_terms(std::move(ts));
}

bool GrowthExpr::same_as(const GrowthExpr& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (!(terms_[i].mono == o.terms_[i].mono)) return false;
        if (!terms_[i].coeff.same_value(o.terms_[i].coeff)) return false;
    }
    return true;
}

double GrowthExpr::eval_log(double x) const {
    bool need2 = false, need3 = false;
    for (const auto& t : terms_) {
        if (t.mono.b != 0) need2 = true;
        if (t.mono.c != 0) need3 = true;
    }
    if (x <= 1 || (need2 && x < 3) || (need3 && x < 16))
        throw std::domain_error("eval_log: x too small for this expression");
    double l1 = std::log(x);
    double l2 = (need2 || need3) ? std::log(l1) : 0.0;
    double l3 = need3 ? std::log(l2) : 0.0;
    double sum = 0;
    for (const auto& t : terms_) {
        double v = t.coeff.value();
        if (t.mono.a != 0) v *= std::pow(l1, to_double(t.mono.a));
        if (t.mono.b != 0) v *= std::pow(l2, to_double(t.mono.b));
        if (t.mono.c != 0) v *= std::pow(l3, to_double(t.mono.c));
        sum += v;
    }
    return sum;
}

double GrowthExpr::eval(double x) const { return std::exp(eval_log(x)); }

namespace {

bool is_unit(const Scalar& s) { return s.exact() && s.rat() == 1; }

std::string exp_term_str(const GrowthTerm& t) {
    std::string out;
    bool have_factor = t.mono.a != 0 || t.mono.b != 0 || t.mono.c != 0;
    if (!is_unit(t.coeff) || !have_factor) out = t.coeff.str();
    auto add = [&](const char* name, const Rational& q) {
        if (q == 0) return;
        if (!out.empty()) out += "*";
        out += name;
        if (q != 1) out += "^(" + format_rational(q) + ")";
    };
    add("log(x)", t.mono.a);
    add("loglog(x)", t.mono.b);
    add("logloglog(x)", t.mono.c);  // internal-only expressions
    return out;
}

}  // namespace

std::string GrowthExpr::str() const {
    if (terms_.empty()) return "1";
    std::vector<const GrowthTerm*> expterms;
    for (const auto& t : terms_) {
        bool plain = (t.mono == LogMonomial{1, 0, 0}) ||
                     (t.mono == LogMonomial{0, 1, 0}) ||
                     (t.mono == LogMonomial{0, 0, 1});
        if (!plain) expterms.push_back(&t);
    }
    std::string out;
    bool exp_done = false;
    auto append = [&](const std::string& s) {
        if (!out.empty()) out += " * ";
        out += s;
    };
    for (const auto& t : terms_) {
        if (t.mono == LogMonomial{1, 0, 0}) {
            append(is_unit(t.coeff) ? "x" : "x^(" + t.coeff.str() + ")");
        } else if (t.mono == LogMonomial{0, 1, 0}) {
            append(is_unit(t.coeff) ? "log(x)" : "log(x)^(" + t.coeff.str() + ")");
        } else if (t.mono == LogMonomial{0, 0, 1}) {
            append(is_unit(t.coeff) ? "loglog(x)" : "loglog(x)^(" + t.coeff.str() + ")");
        } else if (!exp_done) {
            std::string inner;
            for (const auto* e : expterms) {
                if (!inner.empty()) inner += " + ";
                inner += exp_term_str(*e);
            }
            append("exp(" + inner + ")");
            exp_done = true;
        }
    }
    return out;
}

std::string to_string(Order o) {
    switch (o) {
        case Order::LittleO: return "LittleO";
        case Order::Theta: return "Theta";
        default: return "LittleOmega";
    }
}

Order compare_growth(const GrowthExpr& f, const GrowthExpr& g) {
    GrowthExpr d = f.over(g);
    if (d.terms().empty()) return Order::Theta;
    const GrowthTerm& lead = d.terms().front();
    if (cmp(lead.mono, LogMonomial{}) <= 0) return Order::Theta;
    return lead.coeff.sign() > 0 ? Order::LittleOmega : Order::LittleO;
}

// ----------------------------------------------------------------- parser

namespace {

struct Parser {
    const std::string& s;
    size_t i = 0;

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool at_end() {
        ws();
        return i >= s.size();
    }
    bool peek(char c) {
        ws();
        return i < s.size() && s[i] == c;
    }
    bool eat(char c) {
        if (peek(c)) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!eat(c)) throw GrowthParseError(std::string("expected ") + what, i);
    }
    bool keyword(const char* kw) {
        ws();
        size_t n = std::strlen(kw);
        if (s.compare(i, n, kw) != 0) return false;
        if (i + n < s.size() && std::isalpha(static_cast<unsigned char>(s[i + n])))
            return false;
        i += n;
        return true;
    }
    Rational rational(const char* what) {
        ws();
        auto r = parse_rational_prefix(s, i);
        if (!r) throw GrowthParseError(std::string("expected ") + what, i);
        return *r;
    }
    // '^' exponent, defaulting to 1 when absent
    Rational power() {
        ws();
        if (!eat('^')) return Rational(1);
        ws();
        if (eat('(')) {
            Rational q = rational("exponent");
            expect(')', "')' after exponent");
            return q;
        }
        return rational("exponent");
    }
    void arg_x() {
        expect('(', "'(x)'");
        ws();
        expect('x', "'(x)'");
        expect(')', "'(x)'");
    }

    // one c*log(x)^q*loglog(x)^q term of the sum inside exp(...)
    GrowthTerm sum_term() {
        ws();
        size_t start = i;
        Rational coeff(1);
        bool have_coeff = false;
        {
            size_t save = i;
            auto r = parse_rational_prefix(s, i);
            if (r) {
                coeff = *r;
                have_coeff = true;
            } else {
                i = save;
            }
        }
        LogMonomial m;
        bool more = !have_coeff || eat('*');
        while (more) {
            if (keyword("loglog")) {
                arg_x();
                m.b += power();
            } else if (keyword("log")) {
                arg_x();
                m.a += power();
            } else {
                throw GrowthParseError("expected log(x) or loglog(x) inside exp", i);
            }
            more = eat('*');
        }
        if (m.a > 1)
            throw GrowthParseError("exponent of log(x) inside exp exceeds 1 "
                                   "(super-polynomial growth)", start);
        if (m.a < 0)
            throw GrowthParseError("negative exponent of log(x) inside exp", start);
        return {Scalar(coeff), m};
    }

    void sum(std::vector<GrowthTerm>& out) {
        GrowthTerm t = sum_term();
        out.push_back(t);
        while (true) {
            ws();
            if (eat('+')) {
                out.push_back(sum_term());
            } else if (eat('-')) {
                GrowthTerm u = sum_term();
                u.coeff = -u.coeff;
                out.push_back(u);
            } else {
                break;
            }
        }
    }

    void factor(std::vector<GrowthTerm>& out) {
        ws();
        if (eat('1')) return;  // the constant function 1
        if (keyword("exp")) {
            expect('(', "'(' after exp");
            sum(out);
            expect(')', "')' closing exp");
            return;
        }
        if (keyword("loglog")) {
            arg_x();
            out.push_back({Scalar(power()), LogMonomial{0, 0, 1}});
            return;
        }
        if (keyword("log")) {
            arg_x();
            out.push_back({Scalar(power()), LogMonomial{0, 1, 0}});
            return;
        }
        if (keyword("x")) {
            out.push_back({Scalar(power()), LogMonomial{1, 0, 0}});
            return;
        }
        throw GrowthParseError("expected a factor (x, log(x), loglog(x), exp(...), 1)", i);
    }
};

}  // namespace

GrowthExpr parse_growth(const std::string& text) {
    Parser p{text};
    std::vector<GrowthTerm> ts;
    p.factor(ts);
    while (true) {
        p.ws();
        if (p.eat('*')) {
            p.factor(ts);
        } else {
            break;
        }
    }
    if (!p.at_end()) throw GrowthParseError("unexpected trailing input", p.i);
    return GrowthExpr::from_terms(std::move(ts));
}

// ---------------------------------------------------------- ZeroFreeRegion

ZeroFreeRegion ZeroFreeRegion::constant_strip(const Rational& eta0, double t0) {
    if (eta0 <= 0 || eta0 >= Rational(1, 2))
        throw std::invalid_argument("constant strip width must lie in (0, 1/2)");
    if (t0 < 1) throw std::invalid_argument("T0 must be >= 1");
    return ZeroFreeRegion(Kind::ConstantStrip, Scalar(eta0), t0);
}

ZeroFreeRegion ZeroFreeRegion::ingham_loglog(double a, double t0) {
    if (a <= 0) throw std::invalid_argument("coefficient must be positive");
    if (t0 < 16) throw std::invalid_argument("T0 must be >= 16 (monotone range)");
    ZeroFreeRegion z(Kind::InghamLogLog, Scalar::approx(a), t0);
    if (z.eta(t0) >= 0.5)
        throw std::invalid_argument("eta(T0) must be below 1/2");
    return z;
}

ZeroFreeRegion ZeroFreeRegion::korobov_vinogradov(double c, double t0) {
    if (c <= 0) throw std::invalid_argument("coefficient must be positive");
    if (t0 < 3) throw std::invalid_argument("T0 must be >= 3");
    ZeroFreeRegion z(Kind::KorobovVinogradov, Scalar::approx(c), t0);
    if (z.eta(t0) >= 0.5)
        throw std::invalid_argument("eta(T0) must be below 1/2");
    return z;
}

double ZeroFreeRegion::eta(double t) const {
    t = std::max(t, t0_);
    double l = std::log(t);
    switch (kind_) {
        case Kind::ConstantStrip:
            return param_.value();
        case Kind::InghamLogLog:
            return param_.value() * std::log(l) / l;
        default:
            return param_.value() / (std::pow(l, 2.0 / 3.0) * std::cbrt(std::log(l)));
    }
}

GrowthExpr ZeroFreeRegion::eta_log_x() const {
    // x_pow(1) is the log-space polynomial "log x"
    return scale_log_by_eta(GrowthExpr::x_pow(1));
}

GrowthExpr ZeroFreeRegion::scale_log_by_eta(const GrowthExpr& logexpr) const {
    switch (kind_) {
        case Kind::ConstantStrip:
            return logexpr.log_scaled(param_, LogMonomial{});
        case Kind::InghamLogLog:
            return logexpr.log_scaled(param_, LogMonomial{-1, 1, 0});
        default:
            return logexpr.log_scaled(
                param_, LogMonomial{Rational(-2, 3), Rational(-1, 3), 0});
    }
}

std::string ZeroFreeRegion::str() const {
    char buf[80];
    const char* name = kind_ == Kind::ConstantStrip    ? "ConstantStrip"
                       : kind_ == Kind::InghamLogLog   ? "InghamLogLog"
                                                       : "KorobovVinogradov";
    std::snprintf(buf, sizeof buf, "%s(%.17g, T0=%g)", name, param_.value(), t0_);
    return buf;
}

// ------------------------------------------------------ condition checks

std::vector<ConditionReport> check_ingham_gen_conditions(
    const Rational& theta, const Rational& b, const GrowthExpr& g,
    const ZeroFreeRegion& eta, const GrowthExpr& h, const Rational& delta) {
    if (theta < Rational(1, 2) || theta >= 1)
        throw std::invalid_argument("theta must lie in [1/2, 1)");
    if (b < 2)
        throw std::invalid_argument("b < 2 contradicts the zero-count lower bound");
    if (b * (1 - theta) > 1)
        throw std::invalid_argument("b exceeds 1/(1-theta)");
    if (delta < 0) throw std::invalid_argument("delta must be >= 0");
    if (compare_growth(GrowthExpr::log_pow(delta), g) == Order::LittleOmega)
        throw std::invalid_argument("g must grow at least like log^delta x");
    for (const auto& t : g.terms())
        if (t.mono.a >= 1)
            throw std::invalid_argument("g must be sub-polynomial (<< x^eps)");

    std::vector<ConditionReport> out;
    Rational coef = 1 + b * (theta - 1);
    if (coef > 0) {
        // (3.1): h(x) = o(x^{(1 + b(theta-1)) eta(x)})
        GrowthExpr rhs = eta.scale_log_by_eta(
            GrowthExpr::from_terms({{Scalar(coef), LogMonomial{1, 0, 0}}}));
        Order v = compare_growth(h, rhs);
        out.push_back({"3.1", v == Order::LittleO, h, rhs, v});
    } else {
        // (3.2): (log^{delta/2} x / g)^{b eta(x)} h(x) log x / loglog x = o(1)
        GrowthExpr ratio = GrowthExpr::log_pow(delta / 2).over(g);
        GrowthExpr scaled =
            eta.scale_log_by_eta(ratio).log_scaled(Scalar(b), LogMonomial{});
        GrowthExpr lhs = scaled.times(h)
                             .times(GrowthExpr::log_pow(1))
                             .times(GrowthExpr::loglog_pow(-1));
        Order v = compare_growth(lhs, GrowthExpr::one());
        out.push_back({"3.2", v == Order::LittleO, lhs, GrowthExpr::one(), v});
    }
    if (b == 2 && theta == Rational(1, 2)) {
        // (3.3): log^{1+delta} x << g(x)
        GrowthExpr lp = GrowthExpr::log_pow(1 + delta);
        Order v = compare_growth(lp, g);
        out.push_back({"3.3", v != Order::LittleOmega, lp, g, v});
    }
    return out;
}

double omega_eta(double x, const ZeroFreeRegion& eta) {
    if (x < 3) throw std::domain_error("omega_eta requires x >= 3");
    double bigl = std::log(x);
    auto f = [&](double s) { return eta.eta(std::exp(s)) * bigl + s; };
    const int n = 2048;
    double best = f(0), best_s = 0;
    for (int k = 1; k <= n; ++k) {
        double s = bigl * k / n;
        double v = f(s);
        if (v < best) {
            best = v;
            best_s = s;
        }
    }
    double lo = std::max(0.0, best_s - bigl / n);
    double hi = std::min(bigl, best_s + bigl / n);
    const double gr = 0.6180339887498949;
    double m1 = hi - gr * (hi - lo), m2 = lo + gr * (hi - lo);
    double f1 = f(m1), f2 = f(m2);
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        if (f1 <= f2) {
            hi = m2;
            m2 = m1;
            f2 = f1;
            m1 = hi - gr * (hi - lo);
            f1 = f(m1);
        } else {
            lo = m1;
            m1 = m2;
            f1 = f2;
            m2 = lo + gr * (hi - lo);
            f2 = f(m2);
        }
    }
    return std::min({best, f1, f2});
}

double pnt_error_bound(double x, const ZeroFreeRegion& eta, ErrorFactor factor,
                       double eps) {
    if (x < 3) throw std::domain_error("pnt_error_bound requires x >= 3");
    if (eps < 0 || eps >= 1) throw std::domain_error("eps must lie in [0, 1)");
    double f = factor == ErrorFactor::InghamHalf ? 0.5 : 1.0;
    return x * std::exp(-f * (1 - eps) * omega_eta(x, eta));
}

double d_epsilon(double c, double eps) {
    if (c <= 0) throw std::domain_error("c must be positive");
    if (eps < 0) throw std::domain_error("eps must be >= 0");
    return std::pow(15625.0 * c * c * c / 324.0, 0.2) - eps;
}

Rational min_log_power_C(const Rational& b, const Rational& B, const Rational& eta0) {
    if (b < 2) throw std::invalid_argument("b must be >= 2");
    if (B < 0) throw std::invalid_argument("B must be >= 0");
    if (eta0 <= 0 || eta0 > Rational(1, 2))
        throw std::invalid_argument("eta0 must lie in (0, 1/2]");
    Rational r = (B + 1) / (b * eta0);
    return std::max(Rational(1), r);
}

}  // namespace psint
