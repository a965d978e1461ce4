#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "psint/rational.hpp"

namespace psint {

// one piece of a piecewise linear-fractional function: (p1*s + p0)/(q1*s + q0)
// on [lo, hi]
struct RationalPiece {
    Rational lo, hi;
    Rational p1, p0;
    Rational q1, q0;

    Rational eval(const Rational& s) const;
};

// continuous piecewise function built from linear-fractional pieces; pieces are
// contiguous, the denominator has no root inside any piece, and adjacent pieces
// agree at shared endpoints
class PiecewiseRationalFn {
public:
    static PiecewiseRationalFn from_pieces(std::vector<RationalPiece> pieces);
    static PiecewiseRationalFn constant(const Rational& c, const Rational& lo = 0,
                                        const Rational& hi = 1);

    const std::vector<RationalPiece>& pieces() const { return pieces_; }
    Rational lo() const { return pieces_.front().lo; }
    Rational hi() const { return pieces_.back().hi; }

    Rational operator()(const Rational& s) const;

    // exact supremum over [a, b] (clipped to the domain); linear-fractional
    // pieces are monotone so endpoint evaluation suffices
    Rational sup_on(const Rational& a, const Rational& b) const;

private:
    PiecewiseRationalFn() = default;
    std::vector<RationalPiece> pieces_;
};

// config format: one piece per line, "lo hi p1 p0 q1 q0", rationals;
// blank lines and '#' comments allowed
PiecewiseRationalFn parse_piecewise(std::istream& in);
PiecewiseRationalFn load_piecewise(const std::string& path);

// one zero-count bound N(sigma, T) <= T^{A(sigma)(1-sigma)} * (log factors):
// either a full piecewise A or just the constant exponent sup b; entries whose
// literature A is not reproduced here carry only the crossing point sigma0
struct DensityEstimate {
    std::string name;
    std::optional<PiecewiseRationalFn> A;
    std::optional<Rational> b;
    std::optional<Rational> logpower;  // exponent B of the log factor, when pinned
    bool eps_flag = false;             // exponent carries an arbitrarily small +eps
    bool o1_form = false;              // log factors absorbed into T^{o(1)}
    std::optional<Rational> sigma0;    // known crossing of A with 1/(2(1-sigma))
    std::string note;
};

const std::vector<DensityEstimate>& catalog();
const DensityEstimate& catalog_entry(const std::string& name);

// exponent sup: max of A over its domain, or the stored constant
Rational b_of(const DensityEstimate& est);

// largest admissible window shrinkage: 1 - 1/(b + B/A_zf); A_zf absent means
// the zero-free-region constant is unbounded (the B/A_zf term vanishes)
Rational ingham_threshold(const Rational& b, const std::optional<Rational>& A_zf,
                          const Rational& B);

// the value A must take at a crossing point: 1/(2(1-sigma0))
Rational crossing_value(const Rational& sigma0);

struct Sigma0Result {
    Rational value;       // the crossing, or enclosure midpoint when not exact
    bool exact;           // true when the crossing is a rational root
    Rational enc_lo, enc_hi;  // enclosure (equal to value when exact)
};

// largest solution of A(sigma) = 1/(2(1-sigma)) in [1/2, 1)
Sigma0Result solve_sigma0(const PiecewiseRationalFn& A);

struct APropertyReport {
    bool ok;
    std::string reason;  // empty when ok
};

// verifies A(sigma0) = 1/(2(1-sigma0)) exactly, A non-increasing on
// [sigma0, 1], and A(sigma)(1-sigma) non-increasing on [sigma0, 1]
APropertyReport check_A_properties(const PiecewiseRationalFn& A,
                                   const Rational& sigma0);

}  // namespace psint
