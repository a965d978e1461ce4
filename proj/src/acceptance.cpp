#include "psint/acceptance.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>

#include "psint/density.hpp"
#include "psint/growth.hpp"
#include "psint/regions.hpp"
#include "psint/report.hpp"
#include "psint/sieve.hpp"
#include "psint/zeros.hpp"

namespace psint {

namespace {

struct Ctx {
    std::string data_dir;
    std::optional<ZeroTable> small_, big_;

    const ZeroTable& table10k() {
        if (!small_) small_ = ZeroTable::load(data_dir + "/zeros_10k.txt");
        return *small_;
    }
    const ZeroTable& table100k() {
        if (!big_) big_ = ZeroTable::load(data_dir + "/zeros_100k.txt");
        return *big_;
    }
};

struct Outcome {
    bool pass;
    std::string detail;
};

double unit_double(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1p-53; }

std::string fd(double v) { return format_double(v, 6); }

// ---------------------------------------------------------------- criteria

Outcome constraint_sets(Ctx&) {
    auto lit = [](std::vector<ThetaLinIneq> qs) {
        ThetaConstraintSet s;
        s.inequalities = canonicalize(std::move(qs));
        return s;
    };
    auto ref79 = lit({{-1, -1, Rational(-14, 5), Rational(18, 5)},
                      {1, 1, 1, 0},
                      {4, -5, -5, 9},
                      {-5, 4, -5, 9},
                      {0, 0, Rational(13, 21), -1}});
    auto ref1013 = lit({{-1, -1, Rational(-20, 7), Rational(26, 7)},
                        {1, 1, Rational(99, 100), 0},
                        {6, -7, -7, 13},
                        {-7, 6, -7, 13},
                        {0, 0, Rational(19, 31), -1}});
    auto ref1317 = lit({{-1, -1, Rational(-26, 9), Rational(34, 9)},
                        {1, 1, Rational(99, 100), 0},
                        {8, -9, -9, 17},
                        {-9, 8, -9, 17},
                        {0, 0, Rational(25, 41), -1}});
    Rational eta(1, 100), eps(1, 10);
    bool a = constraints_equal(general_conditions(Rational(7, 9)), ref79);
    bool b =
        constraints_equal(epsilon_variant_conditions(Rational(10, 13), eta, eps), ref1013);
    bool c =
        constraints_equal(epsilon_variant_conditions(Rational(13, 17), eta, eps), ref1317);
    std::string d = "published coefficient lists at sigma0 = 7/9: " +
                    std::string(a ? "match" : "MISMATCH") +
                    ", 10/13: " + (b ? "match" : "MISMATCH") +
                    ", 13/17: " + (c ? "match" : "MISMATCH") + " (exact rational equality)";
    return {a && b && c, d};
}

Outcome theta_caps(Ctx&) {
    struct Row {
        Rational sigma0, want;
    };
    const Row rows[] = {{Rational(7, 9), Rational(13, 21)},
                        {Rational(10, 13), Rational(19, 31)},
                        {Rational(13, 17), Rational(25, 41)}};
    bool ok = true;
    std::string d = "caps";
    for (const auto& r : rows) {
        Rational got = theta_cap(r.sigma0);
        ok = ok && got == r.want;
        d += " " + format_rational(got);
        if (got != r.want) d += "(want " + format_rational(r.want) + ")";
    }
    return {ok, d + ", zero tolerance"};
}

Outcome sigma0_crossing(Ctx&) {
    const auto& A = *catalog_entry("hbiw").A;
    auto r = solve_sigma0(A);
    auto props = check_A_properties(A, Rational(7, 9));
    bool ok = r.exact && r.value == Rational(7, 9) && props.ok;
    std::string d = "largest crossing = " + format_rational(r.value) +
                    (r.exact ? " (exact)" : " (enclosure)") + ", properties " +
                    (props.ok ? "ok" : props.reason);
    return {ok, d};
}

Outcome ingham_thresholds(Ctx&) {
    Rational t1 = ingham_threshold(Rational(30, 13), std::nullopt, 0);
    Rational t2 = ingham_threshold(2, std::nullopt, 0);
    Rational c = min_log_power_C(2, 1, Rational(1, 2));
    bool ok = t1 == Rational(17, 30) && t2 == Rational(1, 2) && c == 2;
    return {ok, "exponent 30/13 -> threshold " + format_rational(t1) +
                    ", exponent 2 -> " + format_rational(t2) +
                    ", half-strip log power C = " + format_rational(c)};
}

Outcome dh_boundary(Ctx&) {
    auto kv = ZeroFreeRegion::korobov_vinogradov(1.0 / 48.08);
    auto h = parse_growth("log(x)");
    Rational half(1, 2);
    auto rep68 =
        check_ingham_gen_conditions(half, 2, parse_growth("exp(log(x)^(0.68))"), kv, h, 1);
    auto rep66 =
        check_ingham_gen_conditions(half, 2, parse_growth("exp(log(x)^(0.66))"), kv, h, 1);
    bool all68 = true, all66 = true;
    for (const auto& r : rep68) all68 = all68 && r.holds;
    for (const auto& r : rep66) all66 = all66 && r.holds;
    bool ok = all68 && !all66;
    return {ok, std::string("alpha = 0.68: ") + (all68 ? "holds" : "FAILS") +
                    ", alpha = 0.66: " + (all66 ? "holds (should fail)" : "fails") +
                    " (structural, no tolerance)"};
}

Outcome estlogs_brute(Ctx&) {
    struct Setup {
        Rational sigma0;
        PiecewiseRationalFn A;
        Variant variant;
    };
    const std::vector<Setup> setups = {
        {Rational(7, 9), *catalog_entry("hbiw").A, Variant::basic()},
        {Rational(10, 13), PiecewiseRationalFn::constant(Rational(13, 6)),
         Variant::epsilon_variant(Rational(1, 100), Rational(1, 10))},
        {Rational(13, 17), PiecewiseRationalFn::constant(Rational(17, 8)),
         Variant::epsilon_variant(Rational(1, 100), Rational(1, 10))},
    };
    std::mt19937_64 rng(20250819);
    int checked = 0;
    for (const auto& su : setups) {
        Rational cap = theta_cap(su.sigma0);
        for (int it = 0; it < 100; ++it) {
            Rational t =
                Rational(1, 2) + (cap - Rational(1, 2)) * Rational(long(rng() % 1001), 1000);
            auto cex = brute_force_estlogs(su.sigma0, t, su.A, 200, su.variant);
            ++checked;
            if (cex)
                return {false, "counterexample at sigma0 = " + format_rational(su.sigma0) +
                                   ", theta = " + format_rational(t) +
                                   ", sigma = " + format_rational(cex->sigma) +
                                   ", (u,v) = (" + format_rational(cex->point.u) + ", " +
                                   format_rational(cex->point.v) + ")"};
        }
    }
    return {true, std::to_string(checked) +
                      " random admissible theta across 3 crossing points, sigma grid "
                      "1/200 + vertices + edge midpoints: no counterexample"};
}

Outcome count_vs_estimate(Ctx& ctx) {
    const auto& t = ctx.table10k();
    bool ok = true;
    std::string d = "|N(0,T) - estimate| at T = 100, 500, 1000, 5000:";
    for (double T : {100.0, 500.0, 1000.0, 5000.0}) {
        double diff = std::abs(double(count_zeros(t, T)) - rvm_estimate(T));
        ok = ok && diff <= 3.0;
        d += " " + fd(diff);
    }
    return {ok, d + " (tolerance 3)"};
}

Outcome integral_identity(Ctx& ctx) {
    const auto& t = ctx.table10k();
    std::mt19937_64 rng(20250808);
    double worst = 0;
    for (int it = 0; it < 50; ++it) {
        double x = std::pow(10.0, 1.0 + 5.0 * unit_double(rng));
        double T = 15.0 + (t.t_max() - 15.0) * unit_double(rng);
        auto r = density_integral_identity_check(t, x, T);
        worst = std::max(worst, std::abs(r.value));
    }
    return {worst <= 1e-12,
            "50 random (x, T): max relative difference = " + fd(worst) +
                " (tolerance 1e-12)"};
}

Outcome explicit_vs_sieve(Ctx& ctx) {
    const auto& t = ctx.table100k();
    const std::uint64_t x = 1000000, y = 10000;
    double psi = psi_interval(x, y);
    auto err = [&](double T) {
        return std::abs(explicit_psi_short(t, double(x), double(y), T) - psi) / double(y);
    };
    double e_full = err(t.t_max()), e_mid = err(1000.0), e_low = err(100.0);
    bool ok = e_full <= 0.05 && e_full < e_mid && e_full < e_low;
    return {ok, "relative error at T = t_max: " + fd(e_full) + ", T = 1e3: " + fd(e_mid) +
                    ", T = 1e2: " + fd(e_low) + " (need <= 0.05 and smallest at t_max)"};
}

Outcome term_bound(Ctx&) {
    std::mt19937_64 rng(20251010);
    int violations = 0;
    double worst_ratio = 0;
    for (int it = 0; it < 10000; ++it) {
        double beta = 1.0 - unit_double(rng);
        double gamma = 1e4 * unit_double(rng);
        double x = std::pow(10.0, 1.0 + 4.0 * unit_double(rng));
        double y = (x / 2) * (0.001 + 0.999 * unit_double(rng));
        auto c = mean_value_term_bound_check(beta, gamma, x, y);
        if (!c.ok) ++violations;
        if (c.bound > 0) worst_ratio = std::max(worst_ratio, c.term_abs / c.bound);
    }
    return {violations == 0, "10000 random (beta, gamma, x, y): " +
                                 std::to_string(violations) +
                                 " violations, max term/bound = " + fd(worst_ratio)};
}

Outcome weighted_sum(Ctx&) {
    auto b32 = DirichletPolySpec::ones(32);
    auto big = weighted_sum_brute(b32, b32, 1000000, 10000);
    auto small = weighted_sum_brute(b32, b32, 10000, 355);
    bool trend = big.relative_error < small.relative_error;
    auto one = DirichletPolySpec::ones(1);
    bool bit1 = weighted_sum_brute(one, one, 1000000, 10000).exact_sum ==
                psi_interval(1000000, 10000);
    bool bit2 = weighted_sum_brute(one, one, 10000, 355).exact_sum ==
                psi_interval(10000, 355);
    std::string d = "32-block relative error at (1e6, 1e4) = " + fd(big.relative_error) +
                    " vs (1e4, 355) = " + fd(small.relative_error) +
                    (trend ? " (decreases as required)" : " (INCREASES: trend clause fails)") +
                    "; single-block reduction bit-exact: " +
                    (bit1 && bit2 ? "yes" : "NO");
    return {trend && bit1 && bit2, d};
}

Outcome order_axioms(Ctx&) {
    std::mt19937_64 rng(20251212);
    auto rand_rational = [&](int lo, int hi, int maxden) {
        long span = hi - lo + 1;
        long num = lo + long(rng() % std::uint64_t(span));
        long den = 1 + long(rng() % std::uint64_t(maxden));
        return Rational(num, den);
    };
    auto rand_nonzero = [&](int lo, int hi, int maxden) {
        Rational r;
        do {
            r = rand_rational(lo, hi, maxden);
        } while (r == 0);
        return r;
    };
    auto rand_expr = [&]() {
        std::vector<GrowthTerm> ts;
        int n = int(rng() % 4);
        for (int i = 0; i < n; ++i)
            ts.push_back({Scalar(rand_nonzero(-4, 4, 3)),
                          {rand_rational(-2, 2, 3), rand_rational(-2, 2, 3),
                           rand_rational(-1, 1, 2)}});
        return GrowthExpr::from_terms(std::move(ts));
    };
    auto rand_parseable = [&]() {
        std::vector<GrowthTerm> ts;
        int n = int(rng() % 5);
        for (int i = 0; i < n; ++i) {
            switch (rng() % 4) {
                case 0: ts.push_back({Scalar(rand_nonzero(-4, 4, 3)), {1, 0, 0}}); break;
                case 1: ts.push_back({Scalar(rand_nonzero(-4, 4, 3)), {0, 1, 0}}); break;
                case 2: ts.push_back({Scalar(rand_nonzero(-4, 4, 3)), {0, 0, 1}}); break;
                default: {
                    Rational a(1 + long(rng() % 4), 4);
                    ts.push_back(
                        {Scalar(rand_nonzero(-4, 4, 3)), {a, rand_rational(-2, 2, 3), 0}});
                }
            }
        }
        return GrowthExpr::from_terms(std::move(ts));
    };
    auto sgn = [](Order o) { return o == Order::LittleO ? -1 : o == Order::Theta ? 0 : 1; };

    int bad = 0;
    for (int it = 0; it < 1000; ++it) {
        GrowthExpr f = rand_expr(), g = rand_expr(), h = rand_expr();
        int fg = sgn(compare_growth(f, g)), gf = sgn(compare_growth(g, f));
        if (fg != -gf) ++bad;
        int gh = sgn(compare_growth(g, h)), fh = sgn(compare_growth(f, h));
        if (fg <= 0 && gh <= 0) {
            if (fh > 0) ++bad;
            if ((fg < 0 || gh < 0) && fh >= 0) ++bad;
        }
    }
    int bad_rt = 0;
    for (int it = 0; it < 1000; ++it) {
        GrowthExpr e = rand_parseable();
        if (!parse_growth(e.str()).same_as(e)) ++bad_rt;
    }
    return {bad == 0 && bad_rt == 0,
            "1000 random triples: " + std::to_string(bad) +
                " axiom violations; 1000 parse/format round-trips: " +
                std::to_string(bad_rt) + " mismatches"};
}

struct Entry {
    int id;
    const char* name;
    bool slow;
    Outcome (*fn)(Ctx&);
};

const Entry kCriteria[] = {
    {1, "regions-constraint-sets", false, constraint_sets},
    {2, "regions-theta-caps", false, theta_caps},
    {3, "density-sigma0-crossing", false, sigma0_crossing},
    {4, "density-ingham-thresholds", false, ingham_thresholds},
    {5, "growth-dh-boundary", false, dh_boundary},
    {6, "regions-estlogs-brute-force", false, estlogs_brute},
    {7, "zeros-count-vs-estimate", false, count_vs_estimate},
    {8, "zeros-density-integral-identity", false, integral_identity},
    {9, "zeros-explicit-vs-sieve", true, explicit_vs_sieve},
    {10, "zeros-term-bound", false, term_bound},
    {11, "sieve-weighted-sum", false, weighted_sum},
    {12, "growth-order-axioms", false, order_axioms},
};

CriterionResult run_entry(const Entry& e, Ctx& ctx, const AcceptanceOptions& opt) {
    CriterionResult r;
    r.id = e.id;
    r.name = e.name;
    r.slow = e.slow;
    if (!opt.filter.empty() && r.name.find(opt.filter) == std::string::npos) {
        r.detail = "skipped (filter)";
        return r;
    }
    if (e.slow && !opt.include_slow) {
        r.detail = "skipped (slow)";
        return r;
    }
    r.ran = true;
    try {
        Outcome o = e.fn(ctx);
        r.pass = o.pass;
        r.detail = o.detail;
    } catch (const std::exception& ex) {
        r.pass = false;
        r.detail = std::string("error: ") + ex.what();
    }
    return r;
}

}  // namespace

int criteria_count() { return int(std::size(kCriteria)); }

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
    Ctx ctx{opt.data_dir, {}, {}};
    std::vector<CriterionResult> out;
    for (const auto& e : kCriteria) out.push_back(run_entry(e, ctx, opt));
    return out;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
    for (const auto& e : kCriteria)
        if (e.id == id) {
            Ctx ctx{opt.data_dir, {}, {}};
            return run_entry(e, ctx, opt);
        }
    throw std::invalid_argument("no criterion with id " + std::to_string(id));
}

}  // namespace psint
