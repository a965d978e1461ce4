#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "psint/zeros.hpp"

using namespace psint;

namespace {

// first ten ordinates, rounded to 9 decimals; checked below against the
// bundled table so the fixture cannot drift from the data file
std::vector<double> first_ten() {
    return {14.134725142, 21.022039639, 25.010857580, 30.424876126,
            32.935061588, 37.586178159, 40.918719012, 43.327073281,
            48.005150881, 49.773832478};
}

ZeroTable small_table() {
    return ZeroTable::from_ordinates(first_ten(), "fixture");
}

std::string bundled_path() {
    return std::string(PSINT_REPO_DIR) + "/data/zeros_10k.txt";
}

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& content) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

}  // namespace

TEST_CASE("pairwise sum: exact on tiny inputs, stable on large ones") {
    CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
    CHECK(pairwise_sum({3.5}) == 3.5);
    CHECK(pairwise_sum({1, 2, 3, 4}) == 10.0);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> v(1000);
    for (auto& a : v) a = u(rng);
    long double ref = 0;
    for (double a : v) ref += a;
    CHECK(pairwise_sum(v) ==
          doctest::Approx(static_cast<double>(ref)).epsilon(1e-13));
    // the reduction splits at the midpoint by construction
    double left = pairwise_sum(v.data(), 500);
    double right = pairwise_sum(v.data() + 500, 500);
    CHECK(pairwise_sum(v) == left + right);
}

TEST_CASE("zero table loading and validation") {
    auto p = write_temp("psint_zt_ok.txt", "14.134725\n21.022040\n");
    ZeroTable t = ZeroTable::load(p.string());
    CHECK(t.size() == 2);
    CHECK(t.t_max() == doctest::Approx(21.022040));
    CHECK(t.zeros()[0].beta == 0.5);

    auto pc = write_temp("psint_zt_comments.txt",
                         "# header\n14.134725\n\n  # indented comment\n"
                         "21.5 # trailing note\n");
    ZeroTable tc = ZeroTable::load(pc.string());
    CHECK(tc.size() == 2);
    CHECK(tc.t_max() == doctest::Approx(21.5));

    auto pe = write_temp("psint_zt_empty.txt", "");
    ZeroTable te = ZeroTable::load(pe.string());
    CHECK(te.size() == 0);
    CHECK(te.t_max() == 0.0);

    auto bad_order = write_temp("psint_zt_order.txt", "21.0\n14.1\n");
    CHECK_THROWS_WITH_AS(ZeroTable::load(bad_order.string()),
                         doctest::Contains("line 2"), std::runtime_error);

    auto bad_tok = write_temp("psint_zt_tok.txt", "14.2\nabc\n");
    CHECK_THROWS_WITH_AS(ZeroTable::load(bad_tok.string()),
                         doctest::Contains("line 2"), std::runtime_error);

    auto bad_sign = write_temp("psint_zt_sign.txt", "-3\n");
    CHECK_THROWS_WITH_AS(ZeroTable::load(bad_sign.string()),
                         doctest::Contains("line 1"), std::runtime_error);

    auto bad_first = write_temp("psint_zt_first.txt", "13.9\n14.5\n");
    CHECK_THROWS_AS(ZeroTable::load(bad_first.string()), std::runtime_error);

    CHECK_THROWS_AS(ZeroTable::load("/nonexistent/zeros.txt"),
                    std::runtime_error);

    CHECK_THROWS_AS(ZeroTable::from_ordinates({15.0, 15.0}, "dup"),
                    std::runtime_error);
}

TEST_CASE("zero counting against the fixture") {
    ZeroTable t = small_table();
    CHECK(count_zeros(t, 10) == 0);
    CHECK(count_zeros(t, 30) == 3);
    CHECK(count_zeros(t, 14.134725142) == 1);  // boundary is inclusive
    CHECK(count_zeros(t, t.t_max()) == 10);
    CHECK_THROWS_WITH_AS(count_zeros(t, 50.0),
                         doctest::Contains("insufficient"), std::runtime_error);
    CHECK_THROWS_AS(count_zeros(t, -1.0), std::runtime_error);

    std::int64_t prev = 0;
    for (double T = 10; T <= 49; T += 0.5) {
        std::int64_t c = count_zeros(t, T);
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("Riemann-von Mangoldt estimate") {
    // N(100) = 29 classically; the smooth main term sits within 1 of it
    CHECK(rvm_estimate(100) == doctest::Approx(29.0023435873).epsilon(1e-9));
    CHECK_THROWS_AS(rvm_estimate(0), std::domain_error);
    ZeroTable t = small_table();
    CHECK(std::fabs(static_cast<double>(count_zeros(t, 45.0)) -
                    rvm_estimate(45.0)) <= 2.0);
}

TEST_CASE("zero sum with x^(beta-1) weights") {
    ZeroTable t = small_table();
    CHECK(zero_sum_xbeta(t, 50.0, 10) == 0.0);
    CHECK(zero_sum_xbeta(t, 100.0, 30) == doctest::Approx(0.6).epsilon(1e-12));
    double s1 = zero_sum_xbeta(t, 300.0, 45);
    double s2 = zero_sum_xbeta(t, 600.0, 45);
    CHECK(s2 / s1 == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-12));
    CHECK(s2 < s1);  // non-increasing in x
    CHECK_THROWS_AS(zero_sum_xbeta(t, 1.5, 30), std::domain_error);
    CHECK_THROWS_AS(zero_sum_xbeta(t, 100.0, 60), std::runtime_error);
}

TEST_CASE("density integral identity, closed form") {
    ZeroTable t = small_table();
    for (double x : {2.0, 7.5, 100.0, 1e6}) {
        for (double T : {16.0, 30.0, 45.0, 49.8}) {
            if (T > t.t_max()) continue;
            auto r = density_integral_identity_check(t, x, T);
            CHECK(r.relative);
            CHECK(r.value <= 1e-12);
        }
    }
    auto empty = density_integral_identity_check(t, 100.0, 10);
    CHECK_FALSE(empty.relative);  // empty sum: absolute difference reported
    CHECK(empty.lhs == 0.0);
    CHECK(empty.value == 0.0);

    // midpoint quadrature as an independent oracle for the closed form
    double x = 37.0, T = 45.0;
    auto res = density_integral_identity_check(t, x, T);
    double lx = std::log(x);
    long n = 200000;
    double quad = 0;
    double cnt = static_cast<double>(count_zeros(t, T));
    for (long k = 0; k < n; ++k) {
        double sigma = (k + 0.5) / static_cast<double>(n);
        if (sigma <= 0.5) quad += cnt * std::pow(x, sigma - 1) * lx;
    }
    quad /= static_cast<double>(n);
    double rhs_quad = 2 * cnt / x + 2 * quad;
    CHECK(res.rhs == doctest::Approx(rhs_quad).epsilon(1e-4));
}

TEST_CASE("short-interval explicit formula") {
    ZeroTable t = small_table();
    CHECK(explicit_psi_short(t, 1000.0, 100.0, 10.0) == 100.0);  // empty sum
    CHECK_THROWS_AS(explicit_psi_short(t, 1000.0, 600.0, 30.0),
                    std::domain_error);
    CHECK_THROWS_AS(explicit_psi_short(t, 1000.0, 1.0, 30.0),
                    std::domain_error);
    CHECK_THROWS_AS(explicit_psi_short(t, 1000.0, 100.0, 60.0),
                    std::runtime_error);
    // real-valued, finite, and within the crude zero-sum envelope
    double v = explicit_psi_short(t, 1000.0, 100.0, 45.0);
    CHECK(std::isfinite(v));
    double envelope = 0;
    for (const Zero& z : t.zeros())
        if (z.gamma <= 45.0)
            envelope += 2 * 2 * 100.0 * std::pow(1000.0, z.beta - 1);
    CHECK(std::fabs(v - 100.0) <= envelope);
}

TEST_CASE("single-term mean-value bound") {
    auto c1 = mean_value_term_bound_check(1.0, 0.0, 4.0, 2.0);
    CHECK(c1.term_abs == doctest::Approx(2.0));
    CHECK(c1.bound == doctest::Approx(4.0));
    CHECK(c1.ok);

    auto c2 = mean_value_term_bound_check(0.5, 14.134725, 1000.0, 100.0);
    CHECK(c2.bound == doctest::Approx(200.0 / std::sqrt(1000.0)).epsilon(1e-12));
    CHECK(c2.ok);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ub(1e-6, 1.0);
    std::uniform_real_distribution<double> ug(0.0, 1e4);
    std::uniform_real_distribution<double> ux(10.0, 1e9);
    for (int i = 0; i < 2000; ++i) {
        double beta = ub(rng);
        double x = ux(rng);
        double y = x / 2;  // boundary case from the contract
        CHECK(mean_value_term_bound_check(beta, ug(rng), x, y).ok);
    }
    CHECK_THROWS_AS(mean_value_term_bound_check(0.0, 1.0, 100.0, 10.0),
                    std::domain_error);
    CHECK_THROWS_AS(mean_value_term_bound_check(0.5, 1.0, 100.0, 60.0),
                    std::domain_error);
}

TEST_CASE("Dirichlet polynomial specs validate their block") {
    CHECK_THROWS_AS(DirichletPolySpec::make(0, {}), std::domain_error);
    CHECK_THROWS_AS(DirichletPolySpec::make(2, {1.0}), std::domain_error);
    CHECK_THROWS_AS(DirichletPolySpec::make(2, {1.0, 1.5}), std::domain_error);
    CHECK_THROWS_AS(DirichletPolySpec::make(2, {-0.1, 0.5}), std::domain_error);
    CHECK(DirichletPolySpec::ones(4).coeffs.size() == 4);
}

TEST_CASE("weighted zero sums over Dirichlet polynomials") {
    ZeroTable t = small_table();
    auto zero2 = DirichletPolySpec::make(2, {0.0, 0.0});
    auto ones4 = DirichletPolySpec::ones(4);
    CHECK(weighted_zero_sum_threshold(t, zero2, ones4, 0.5, 45.0) == 0.0);
    CHECK(weighted_zero_sum_threshold(t, ones4, ones4, 0.6, 45.0) == 0.0);

    double thr = weighted_zero_sum_threshold(t, ones4, ones4, 0.5, 45.0);
    CHECK(thr > 0.0);
    CHECK(weighted_zero_sum_threshold(t, ones4, ones4, 0.0, 45.0) ==
          doctest::Approx(thr).epsilon(1e-15));
    double x = 5000.0;
    double w = weighted_zero_sum_weighted(t, ones4, ones4, x, 45.0);
    CHECK(w == doctest::Approx(thr / std::sqrt(x)).epsilon(1e-12));

    CHECK_THROWS_AS(weighted_zero_sum_threshold(t, ones4, ones4, 1.5, 45.0),
                    std::domain_error);
    CHECK_THROWS_AS(weighted_zero_sum_weighted(t, ones4, ones4, x, 60.0),
                    std::runtime_error);

    // single zero, trivial polynomials: the sum is exactly 2 x^(-1/2)
    ZeroTable one = ZeroTable::from_ordinates({14.134725}, "one");
    auto m1 = DirichletPolySpec::ones(1);
    double tm = one.t_max();  // T boundary is inclusive
    CHECK(weighted_zero_sum_threshold(one, m1, m1, 0.5, tm) == 2.0);
    CHECK(weighted_zero_sum_weighted(one, m1, m1, 100.0, tm) ==
          doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("strip transition bound") {
    ZeroTable empty = ZeroTable::from_ordinates({}, "empty");
    auto m1 = DirichletPolySpec::ones(1);
    auto r0 = strip_transition_check(empty, m1, m1, 100.0, 0.0);
    CHECK(r0.lhs == 0.0);
    CHECK(r0.holds);

    // one zero: both sides reduce to the same threshold sum, so the bound
    // holds with slack exactly in [e, e^2 (log x + 1)]
    ZeroTable one = ZeroTable::from_ordinates({14.134725}, "one");
    double x = 1.0e4;
    auto r1 = strip_transition_check(one, m1, m1, x, one.t_max());
    CHECK(r1.holds);
    double lx = std::log(x);
    CHECK(r1.rhs >= std::exp(1.0) * r1.lhs);
    CHECK(r1.rhs <= std::exp(2.0) * (lx + 1) * r1.lhs * (1 + 1e-9));

    std::mt19937_64 rng(23);
    ZeroTable t = small_table();
    for (int rep = 0; rep < 100; ++rep) {
        std::uint64_t M = 1ull << (rng() % 5);
        std::uint64_t N = 1ull << (rng() % 5);
        auto coin = [&](std::uint64_t k) {
            std::vector<double> c(static_cast<size_t>(k));
            for (auto& a : c) a = (rng() & 1) ? 1.0 : 0.0;
            return c;
        };
        auto ms = DirichletPolySpec::make(M, coin(M));
        auto ns = DirichletPolySpec::make(N, coin(N));
        auto r = strip_transition_check(t, ms, ns, 1.0e4, 45.0);
        CHECK(r.holds);
    }
}

TEST_CASE("mean-value bound diagnostic ratio") {
    ZeroTable t = small_table();
    auto zero2 = DirichletPolySpec::make(2, {0.0, 0.0});
    auto r0 = mean_value_bound_ratio(t, zero2, 0.0, 0.5, 45.0);
    CHECK(r0.numerator == 0.0);
    CHECK(r0.ratio == 0.0);
    CHECK_FALSE(r0.flagged);

    auto r9 = mean_value_bound_ratio(t, DirichletPolySpec::ones(4), 0.0, 0.9,
                                     45.0);
    CHECK(r9.numerator == 0.0);  // no zeros that far right
    CHECK_FALSE(r9.flagged);

    auto rt = mean_value_bound_ratio(t, DirichletPolySpec::ones(8), 0.0, 0.5,
                                     45.0);
    CHECK(rt.numerator > 0.0);
    CHECK(std::isfinite(rt.ratio));

    // T = 1 zeroes the log factor: flagged, no division performed
    auto rf = mean_value_bound_ratio(t, DirichletPolySpec::ones(4), 0.0, 0.5,
                                     1.0);
    CHECK(rf.flagged);

    CHECK_THROWS_AS(
        mean_value_bound_ratio(t, DirichletPolySpec::ones(4), 0.0, 0.5, 45.0,
                               Rational(-1)),
        std::domain_error);
}

TEST_CASE("bundled ten-thousand-zero table") {
    ZeroTable t = ZeroTable::load(bundled_path());
    REQUIRE(t.size() == 10000);
    auto ten = first_ten();
    for (size_t i = 0; i < ten.size(); ++i)
        CHECK(t.zeros()[i].gamma == doctest::Approx(ten[i]).epsilon(1e-9));
    CHECK(count_zeros(t, 100.0) == 29);
    CHECK(std::fabs(static_cast<double>(count_zeros(t, 100.0)) -
                    rvm_estimate(100.0)) <= 2.0);
    for (double T : {100.0, 500.0, 1000.0, 5000.0})
        CHECK(std::fabs(static_cast<double>(count_zeros(t, T)) -
                        rvm_estimate(T)) <= 3.0);

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ulx(std::log(100.0), std::log(1e8));
    std::uniform_real_distribution<double> ut(15.0, t.t_max());
    for (int i = 0; i < 20; ++i) {
        auto r = density_integral_identity_check(t, std::exp(ulx(rng)), ut(rng));
        CHECK(r.value <= 1e-12);
    }
}
