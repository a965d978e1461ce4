#include "psint/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace psint {

namespace {

constexpr std::uint64_t kSegment = 1ull << 22;
constexpr std::uint64_t kRangeLenMax = 1ull << 26;

std::int32_t fix_log(std::uint64_t n) {
    return static_cast<std::int32_t>(
        std::llround(std::log(static_cast<double>(n)) * kLambdaScale));
}

// primes up to n by a plain sieve; n stays <= 10^6 (sqrt of the range cap)
std::vector<std::uint64_t> base_primes(std::uint64_t n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (comp[p]) continue;
        out.push_back(p);
        for (std::uint64_t q = p * p; q <= n; q += p) comp[q] = true;
    }
    return out;
}

}  // namespace

double lambda_fixed_to_real(std::int64_t fixed_sum) {
    return static_cast<double>(fixed_sum) /
           static_cast<double>(kLambdaScale);
}

SieveTables SieveTables::build(std::uint64_t lo, std::uint64_t hi) {
    if (lo < 2 || lo > hi || hi > kSieveRangeMax)
        throw std::domain_error("sieve_range: need 2 <= lo <= hi <= 10^12");
    std::uint64_t len = hi - lo + 1;
    if (len > kRangeLenMax)
        throw std::domain_error("sieve_range: range exceeds the memory budget");

    SieveTables t;
    t.lo_ = lo;
    t.hi_ = hi;
    t.lam_.assign(len, 0);
    t.prime_.assign(len, true);

    auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi)));
    while (root * root > hi) --root;
    while ((root + 1) * (root + 1) <= hi) ++root;
    std::vector<std::uint64_t> primes = base_primes(root);

    for (std::uint64_t seg_lo = lo; seg_lo <= hi; seg_lo += kSegment) {
        std::uint64_t seg_hi = std::min(hi, seg_lo + kSegment - 1);
        for (std::uint64_t p : primes) {
            if (p * p > seg_hi) break;
            std::uint64_t first = ((seg_lo + p - 1) / p) * p;
            first = std::max(first, p * p);
            for (std::uint64_t q = first; q <= seg_hi; q += p)
                t.prime_[q - lo] = false;
        }
    }

    for (std::uint64_t i = 0; i < len; ++i)
        if (t.prime_[i]) t.lam_[i] = fix_log(lo + i);
    // proper prime powers are sparse: walk p^k directly instead of marking
    for (std::uint64_t p : primes) {
        for (std::uint64_t q = p * p; q <= hi; q *= p) {
            if (q >= lo) t.lam_[q - lo] = fix_log(p);
            if (q > hi / p) break;
        }
    }

    std::uint64_t nckpt = len / kStride + 1;  // checkpoint k holds the prefix
    t.psi_ckpt_.assign(nckpt, 0);             // over lam_[0, k * kStride)
    t.pi_ckpt_.assign(nckpt, 0);
    std::int64_t psi = 0;
    std::uint64_t pi = 0;
    for (std::uint64_t i = 0; i < len; ++i) {
        if (i % kStride == 0) {
            t.psi_ckpt_[i / kStride] = psi;
            t.pi_ckpt_[i / kStride] = pi;
        }
        psi += t.lam_[i];
        pi += t.prime_[i] ? 1 : 0;
    }
    for (std::uint64_t k = (len - 1) / kStride + 1; k < nckpt; ++k) {
        t.psi_ckpt_[k] = psi;
        t.pi_ckpt_[k] = pi;
    }
    return t;
}

std::int32_t SieveTables::lambda_fixed(std::uint64_t n) const {
    if (n < lo_ || n > hi_)
        throw std::out_of_range("lambda: n outside the sieved range");
    return lam_[n - lo_];
}

double SieveTables::lambda(std::uint64_t n) const {
    return lambda_fixed_to_real(lambda_fixed(n));
}

bool SieveTables::is_prime(std::uint64_t n) const {
    if (n < lo_ || n > hi_)
        throw std::out_of_range("is_prime: n outside the sieved range");
    return prime_[n - lo_];
}

std::int64_t SieveTables::psi_prefix_fixed(std::uint64_t n) const {
    if (n < lo_) return 0;
    n = std::min(n, hi_);
    std::uint64_t idx = n - lo_ + 1;  // count of entries in [lo, n]
    std::uint64_t c = idx / kStride;
    std::int64_t s = psi_ckpt_[c];
    for (std::uint64_t i = c * kStride; i < idx; ++i) s += lam_[i];
    return s;
}

std::uint64_t SieveTables::prime_prefix(std::uint64_t n) const {
    if (n < lo_) return 0;
    n = std::min(n, hi_);
    std::uint64_t idx = n - lo_ + 1;
    std::uint64_t c = idx / kStride;
    std::uint64_t s = pi_ckpt_[c];
    for (std::uint64_t i = c * kStride; i < idx; ++i) s += prime_[i] ? 1 : 0;
    return s;
}

namespace {

void check_interval(std::uint64_t x, std::uint64_t y, const char* op) {
    // the window (x-y, x] must stay inside the sieve's domain [2, x]
    if (y < 2 || y + 2 > x)
        throw std::domain_error(std::string(op) + ": need 2 <= y <= x-2");
}

}  // namespace

std::int64_t psi_interval_fixed(std::uint64_t x, std::uint64_t y) {
    check_interval(x, y, "psi_interval");
    SieveTables t = SieveTables::build(x - y + 1, x);
    return t.psi_prefix_fixed(x);
}

double psi_interval(std::uint64_t x, std::uint64_t y) {
    return lambda_fixed_to_real(psi_interval_fixed(x, y));
}

std::uint64_t pi_interval(std::uint64_t x, std::uint64_t y) {
    check_interval(x, y, "pi_interval");
    SieveTables t = SieveTables::build(x - y + 1, x);
    return t.prime_prefix(x);
}

std::vector<ShortIntervalRow> short_interval_report(
    const std::vector<std::uint64_t>& x_values, const Rational& theta,
    const GrowthExpr& g) {
    std::vector<ShortIntervalRow> rows;
    rows.reserve(x_values.size());
    for (std::uint64_t x : x_values) {
        if (x < 4) throw std::domain_error("short_interval_report: need x >= 4");
        double xd = static_cast<double>(x);
        double yd = std::pow(xd, to_double(theta)) * g.eval(xd);
        // saturate at the half interval: theta = 1, g = 1 means "the widest
        // window", y = x/2
        auto y = std::min(static_cast<std::uint64_t>(std::llround(yd)), x / 2);
        if (y < 2)
            throw std::domain_error(
                "short_interval_report: window below 2 at x = " +
                std::to_string(x));
        SieveTables t = SieveTables::build(x - y + 1, x);
        double psi = lambda_fixed_to_real(t.psi_prefix_fixed(x));
        auto np = static_cast<double>(t.prime_prefix(x));
        ShortIntervalRow row;
        row.x = x;
        row.y = y;
        row.psi_ratio = psi / static_cast<double>(y);
        row.pi_ratio = np * std::log(xd) / static_cast<double>(y);
        rows.push_back(row);
    }
    return rows;
}

CramerResult cramer_check(std::uint64_t x, double c) {
    if (x < 4) throw std::domain_error("cramer_check: need x >= 4");
    if (!(c > 0)) throw std::domain_error("cramer_check: need c > 0");
    double xd = static_cast<double>(x);
    double upper = xd + c * std::sqrt(xd) * std::log(xd);
    auto hi = static_cast<std::uint64_t>(upper);
    CramerResult r;
    r.threshold = std::sqrt(xd);
    if (hi <= x) {
        r.count = 0;
    } else {
        SieveTables t = SieveTables::build(x + 1, hi);
        r.count = t.prime_prefix(hi);
    }
    r.passes = static_cast<double>(r.count) > r.threshold;
    return r;
}

WeightedSumResult weighted_sum_brute(const DirichletPolySpec& mspec,
                                     const DirichletPolySpec& nspec,
                                     std::uint64_t x, std::uint64_t y) {
    if (y < 1 || y > x / 2)
        throw std::domain_error("weighted_sum_brute: need 1 <= y <= x/2");
    std::uint64_t mn_min = mspec.start * nspec.start;
    if (4 * mn_min > x)
        throw std::domain_error(
            "weighted_sum_brute: block too large (need 4 M N <= x)");

    SieveTables t = SieveTables::build(2, x / mn_min);

    // Kahan accumulation; with a single nonzero (m, n) term this degenerates
    // to that term exactly, which the psi_interval reduction relies on
    double sum = 0, comp = 0;
    auto add = [&](double v) {
        double yv = v - comp;
        double s = sum + yv;
        comp = (s - sum) - yv;
        sum = s;
    };
    double main_sum = 0, main_comp = 0;
    auto add_main = [&](double v) {
        double yv = v - main_comp;
        double s = main_sum + yv;
        main_comp = (s - main_sum) - yv;
        main_sum = s;
    };

    for (std::uint64_t m = mspec.start; m < 2 * mspec.start; ++m) {
        double am = mspec.coeffs[static_cast<size_t>(m - mspec.start)];
        for (std::uint64_t n = nspec.start; n < 2 * nspec.start; ++n) {
            double bn = nspec.coeffs[static_cast<size_t>(n - nspec.start)];
            if (am == 0 || bn == 0) continue;
            std::uint64_t mn = m * n;
            std::int64_t block =
                t.psi_prefix_fixed(x / mn) - t.psi_prefix_fixed((x - y) / mn);
            add(am * bn * lambda_fixed_to_real(block));
            add_main(am * bn / static_cast<double>(mn));
        }
    }

    WeightedSumResult r;
    r.exact_sum = sum;
    r.main_term = static_cast<double>(y) * main_sum;
    r.main_term_zero = r.main_term == 0;
    r.relative_error =
        r.main_term_zero ? 0.0
                         : std::fabs(r.exact_sum - r.main_term) / r.main_term;
    return r;
}

}  // namespace psint
