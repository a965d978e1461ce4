#pragma once

#include <cstdint>
#include <vector>

#include "psint/growth.hpp"
#include "psint/rational.hpp"
#include "psint/zeros.hpp"

namespace psint {

// Lambda values are stored in fixed point (scale 2^20) and summed in int64,
// so every psi aggregate is an exact integer computation; the power-of-two
// scale makes the final conversion to double exact as well whenever the sum
// stays below 2^53, which a 10^12 range cap guarantees.  This is what lets
// interval additivity and the brute-force reduction hold to the last bit.
inline constexpr std::int64_t kLambdaScale = 1 << 20;
inline constexpr std::uint64_t kSieveRangeMax = 1'000'000'000'000ull;

double lambda_fixed_to_real(std::int64_t fixed_sum);

class SieveTables {
public:
    // inclusive range; 2 <= lo <= hi <= 10^12, hi - lo bounded by the
    // in-memory budget (the sieving itself walks segments of 2^22)
    static SieveTables build(std::uint64_t lo, std::uint64_t hi);

    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return hi_; }

    std::int32_t lambda_fixed(std::uint64_t n) const;
    double lambda(std::uint64_t n) const;
    bool is_prime(std::uint64_t n) const;

    // sum of fixed-point Lambda over [lo, n]; n < lo gives 0, n is clamped to hi
    std::int64_t psi_prefix_fixed(std::uint64_t n) const;
    // count of primes in [lo, n]
    std::uint64_t prime_prefix(std::uint64_t n) const;

private:
    std::uint64_t lo_ = 0, hi_ = 0;
    std::vector<std::int32_t> lam_;
    std::vector<bool> prime_;
    // cumulative sums at stride boundaries keep prefix queries cheap without
    // an 8-byte-per-n array
    static constexpr std::uint64_t kStride = 4096;
    std::vector<std::int64_t> psi_ckpt_;
    std::vector<std::uint64_t> pi_ckpt_;
};

// sum of Lambda over (x - y, x], exact in fixed point; the window must stay
// inside [2, x], i.e. 2 <= y <= x - 2
double psi_interval(std::uint64_t x, std::uint64_t y);
std::int64_t psi_interval_fixed(std::uint64_t x, std::uint64_t y);

// number of primes in (x - y, x]; 2 <= y <= x - 2
std::uint64_t pi_interval(std::uint64_t x, std::uint64_t y);

struct ShortIntervalRow {
    std::uint64_t x;
    std::uint64_t y;      // round(x^theta g(x)), saturated at x/2
    double psi_ratio;     // (psi(x) - psi(x-y)) / y
    double pi_ratio;      // (pi(x) - pi(x-y)) log x / y
};

std::vector<ShortIntervalRow> short_interval_report(
    const std::vector<std::uint64_t>& x_values, const Rational& theta,
    const GrowthExpr& g);

struct CramerResult {
    std::uint64_t count;  // primes in (x, x + c sqrt(x) log x]
    double threshold;     // sqrt(x)
    bool passes;          // count > sqrt(x)
};

CramerResult cramer_check(std::uint64_t x, double c);

struct WeightedSumResult {
    double exact_sum;       // sum a_m b_n Lambda(r) over x-y < mnr <= x
    double main_term;       // y sum a_m b_n / (mn)
    double relative_error;  // |exact - main| / main
    bool main_term_zero;
};

// brute-force double loop over the dyadic blocks with the inner Lambda sum
// taken as a psi difference; y <= x/2 and 4 M N <= x so r ranges are nonempty
WeightedSumResult weighted_sum_brute(const DirichletPolySpec& mspec,
                                     const DirichletPolySpec& nspec,
                                     std::uint64_t x, std::uint64_t y);

}  // namespace psint
