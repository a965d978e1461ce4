#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "psint/density.hpp"
#include "psint/rational.hpp"

namespace psint {

// linear constraint in (u, v) with an affine theta right-hand side:
//   a_u * u + a_v * v <= c0 + c_theta * theta
struct ThetaLinIneq {
    Rational a_u, a_v, c0, c_theta;

    bool operator==(const ThetaLinIneq& o) const {
        return a_u == o.a_u && a_v == o.a_v && c0 == o.c0 && c_theta == o.c_theta;
    }
};

// scale each inequality so the first nonzero of (a_u, a_v, c_theta, c0) has
// absolute value 1 (positive scaling only), then sort and drop duplicates
std::vector<ThetaLinIneq> canonicalize(std::vector<ThetaLinIneq> ineqs);

struct Variant {
    bool epsilon = false;
    Rational eta, eps;  // meaningful only when epsilon

    static Variant basic() { return {}; }
    static Variant epsilon_variant(const Rational& eta, const Rational& eps);
};

struct ThetaConstraintSet {
    std::vector<ThetaLinIneq> inequalities;  // canonical form
    Rational sigma0;
    Variant variant;
};

// admissibility constraints on (u, v) for the weighted zero-density bound at
// crossing point sigma0: u+v range, the two mixed bounds, and the theta cap
ThetaConstraintSet general_conditions(const Rational& sigma0);

// same set with the u+v upper bound tightened to 1 - eta; records eps for the
// shortened Perron parameter T = x^(1 - theta - eps/2)
ThetaConstraintSet epsilon_variant_conditions(const Rational& sigma0,
                                              const Rational& eta,
                                              const Rational& eps);

// density-exponent slack absorbed by the eps-shortened T: eps/(4(1-theta))
Rational delta_of_epsilon(const Rational& eps, const Rational& theta);

// largest admissible theta: (3 - 2 sigma0)/(7 - 6 sigma0)
Rational theta_cap(const Rational& sigma0);

bool constraints_equal(const ThetaConstraintSet& s1, const ThetaConstraintSet& s2);

struct RatPoint {
    Rational u, v;
    bool operator==(const RatPoint& o) const { return u == o.u && v == o.v; }
};

struct ThetaCapError : std::domain_error {
    using std::domain_error::domain_error;
};

struct Region2D {
    struct Halfplane {
        Rational a_u, a_v, rhs;  // a_u * u + a_v * v <= rhs
    };
    std::vector<Halfplane> halfplanes;
    std::vector<RatPoint> vertices;  // extreme points in convex-position order

    bool contains(const RatPoint& p) const;
    bool empty() const { return vertices.empty(); }
    // consecutive-vertex midpoints (wrapping), deduplicated
    std::vector<RatPoint> edge_midpoints() const;
};

// substitute a concrete theta; violating a pure theta bound throws
// ThetaCapError rather than returning an empty region
Region2D specialize_theta(const ThetaConstraintSet& set, const Rational& theta);

// both sides of the exponent inequality that admissibility must guarantee:
//   1/2 max(0, e_E - u) + 1/2 max(0, e_E - v) <= (1 - u - v)(1 - sigma)
// where e_E = min(tau, tau (1/2 + A(sigma)(1-sigma) + delta)), tau = 1 - theta
// (basic) or 1 - theta - eps/2 with delta = delta_of_epsilon (epsilon variant)
struct EstLogsSides {
    Rational lhs, rhs;
};
EstLogsSides estlogs_sides(const Rational& theta, const PiecewiseRationalFn& A,
                           const Variant& variant, const Rational& sigma,
                           const RatPoint& p);

struct EstLogsCounterexample {
    Rational sigma;
    RatPoint point;
    Rational lhs, rhs;
};

// exact grid check that every region point satisfies the exponent inequality:
// sigma in {k/samples : 0 <= k < samples} plus sigma0, at every vertex and
// edge midpoint of the specialized region; returns the first violation in
// grid order, or nullopt if none
std::optional<EstLogsCounterexample> brute_force_estlogs(
    const Rational& sigma0, const Rational& theta, const PiecewiseRationalFn& A,
    int samples, const Variant& variant);

}  // namespace psint
