#include "psint/regions.hpp"

#include <algorithm>

namespace psint {

namespace {

bool lex_less(const ThetaLinIneq& x, const ThetaLinIneq& y) {
    if (x.a_u != y.a_u) return x.a_u < y.a_u;
    if (x.a_v != y.a_v) return x.a_v < y.a_v;
    if (x.c_theta != y.c_theta) return x.c_theta < y.c_theta;
    return x.c0 < y.c0;
}

}  // namespace

std::vector<ThetaLinIneq> canonicalize(std::vector<ThetaLinIneq> ineqs) {
    for (auto& q : ineqs) {
        Rational lead = 0;
        for (const Rational* r : {&q.a_u, &q.a_v, &q.c_theta, &q.c0})
            if (*r != 0) {
                lead = rational_abs(*r);
                break;
            }
        if (lead == 0) continue;  // 0 <= 0: kept as-is, dropped by dedup if repeated
        q.a_u /= lead;
        q.a_v /= lead;
        q.c0 /= lead;
        q.c_theta /= lead;
    }
    std::sort(ineqs.begin(), ineqs.end(), lex_less);
    ineqs.erase(std::unique(ineqs.begin(), ineqs.end()), ineqs.end());
    return ineqs;
}

Variant Variant::epsilon_variant(const Rational& eta, const Rational& eps) {
    if (eta <= 0) throw std::invalid_argument("epsilon variant: eta must be > 0");
    if (eps <= 0) throw std::invalid_argument("epsilon variant: eps must be > 0");
    Variant v;
    v.epsilon = true;
    v.eta = eta;
    v.eps = eps;
    return v;
}

namespace {

ThetaConstraintSet build_conditions(const Rational& sigma0, const Rational& uv_upper,
                                    const Variant& variant) {
    if (sigma0 <= Rational(1, 2) || sigma0 >= 1)
        throw std::invalid_argument("sigma0 must be in (1/2, 1)");
    Rational d = 2 * sigma0 - 1;  // > 0
    std::vector<ThetaLinIneq> qs;
    // (2 sigma0 - 2 theta)/(2 sigma0 - 1) <= u + v
    qs.push_back({-1, -1, -2 * sigma0 / d, 2 / d});
    // u + v <= upper
    qs.push_back({1, 1, uv_upper, 0});
    // u(2 - 2 sigma0) + v(1 - 2 sigma0) <= theta + 1 - 2 sigma0, and the swap
    qs.push_back({2 - 2 * sigma0, 1 - 2 * sigma0, 1 - 2 * sigma0, 1});
    qs.push_back({1 - 2 * sigma0, 2 - 2 * sigma0, 1 - 2 * sigma0, 1});
    // theta <= (3 - 2 sigma0)/(7 - 6 sigma0)
    qs.push_back({0, 0, theta_cap(sigma0), -1});
    ThetaConstraintSet set;
    set.inequalities = canonicalize(std::move(qs));
    set.sigma0 = sigma0;
    set.variant = variant;
    return set;
}

}  // namespace

ThetaConstraintSet general_conditions(const Rational& sigma0) {
    return build_conditions(sigma0, 1, Variant::basic());
}

ThetaConstraintSet epsilon_variant_conditions(const Rational& sigma0,
                                              const Rational& eta,
                                              const Rational& eps) {
    Variant v = Variant::epsilon_variant(eta, eps);
    return build_conditions(sigma0, 1 - eta, v);
}

Rational delta_of_epsilon(const Rational& eps, const Rational& theta) {
    if (theta >= 1) throw std::domain_error("delta_of_epsilon: theta must be < 1");
    if (eps < 0) throw std::domain_error("delta_of_epsilon: eps must be >= 0");
    return eps / (4 * (1 - theta));
}

Rational theta_cap(const Rational& sigma0) {
    if (sigma0 <= Rational(1, 2) || sigma0 >= 1)
        throw std::invalid_argument("theta_cap: sigma0 must be in (1/2, 1)");
    return (3 - 2 * sigma0) / (7 - 6 * sigma0);
}

bool constraints_equal(const ThetaConstraintSet& s1, const ThetaConstraintSet& s2) {
    return canonicalize(s1.inequalities) == canonicalize(s2.inequalities);
}

bool Region2D::contains(const RatPoint& p) const {
    for (const auto& h : halfplanes)
        if (h.a_u * p.u + h.a_v * p.v > h.rhs) return false;
    return true;
}

std::vector<RatPoint> Region2D::edge_midpoints() const {
    std::vector<RatPoint> mids;
    size_t n = vertices.size();
    if (n < 2) return mids;
    for (size_t i = 0; i < n; ++i) {
        const RatPoint& a = vertices[i];
        const RatPoint& b = vertices[(i + 1) % n];
        RatPoint m{(a.u + b.u) / 2, (a.v + b.v) / 2};
        if (std::find(mids.begin(), mids.end(), m) == mids.end() &&
            std::find(vertices.begin(), vertices.end(), m) == vertices.end())
            mids.push_back(m);
        if (n == 2) break;  // a segment has a single distinct edge
    }
    return mids;
}

Region2D specialize_theta(const ThetaConstraintSet& set, const Rational& theta) {
    if (theta < Rational(1, 2) || theta >= 1)
        throw std::invalid_argument("specialize_theta: theta must be in [1/2, 1)");
    if (set.variant.epsilon && set.variant.eps >= 1 - theta)
        throw std::invalid_argument("specialize_theta: need eps < 1 - theta");

    Region2D region;
    for (const auto& q : set.inequalities) {
        Rational rhs = q.c0 + q.c_theta * theta;
        if (q.a_u == 0 && q.a_v == 0) {
            if (rhs < 0)
                throw ThetaCapError("theta violates a pure theta bound of the set");
            continue;
        }
        region.halfplanes.push_back({q.a_u, q.a_v, rhs});
    }

    // vertices: feasible intersections of halfplane boundary pairs
    const auto& hs = region.halfplanes;
    std::vector<RatPoint> verts;
    for (size_t i = 0; i < hs.size(); ++i) {
        for (size_t j = i + 1; j < hs.size(); ++j) {
            Rational det = hs[i].a_u * hs[j].a_v - hs[j].a_u * hs[i].a_v;
            if (det == 0) continue;
            RatPoint p{(hs[i].rhs * hs[j].a_v - hs[j].rhs * hs[i].a_v) / det,
                       (hs[i].a_u * hs[j].rhs - hs[j].a_u * hs[i].rhs) / det};
            if (region.contains(p) &&
                std::find(verts.begin(), verts.end(), p) == verts.end())
                verts.push_back(p);
        }
    }

    // order the extreme points of the convex polygon counterclockwise around
    // the centroid, comparing angles exactly via half classification + cross
    if (verts.size() > 2) {
        Rational cu = 0, cv = 0;
        for (const auto& p : verts) {
            cu += p.u;
            cv += p.v;
        }
        cu /= int(verts.size());
        cv /= int(verts.size());
        auto angle_less = [&](const RatPoint& p, const RatPoint& q) {
            Rational pu = p.u - cu, pv = p.v - cv;
            Rational qu = q.u - cu, qv = q.v - cv;
            int hp = (pv > 0 || (pv == 0 && pu > 0)) ? 0 : 1;
            int hq = (qv > 0 || (qv == 0 && qu > 0)) ? 0 : 1;
            if (hp != hq) return hp < hq;
            Rational cross = pu * qv - qu * pv;
            return cross > 0;
        };
        std::sort(verts.begin(), verts.end(), angle_less);
    }
    region.vertices = std::move(verts);
    return region;
}

EstLogsSides estlogs_sides(const Rational& theta, const PiecewiseRationalFn& A,
                           const Variant& variant, const Rational& sigma,
                           const RatPoint& p) {
    Rational tau = 1 - theta;
    Rational delta = 0;
    if (variant.epsilon) {
        delta = delta_of_epsilon(variant.eps, theta);
        tau -= variant.eps / 2;
    }
    Rational scaled = tau * (Rational(1, 2) + A(sigma) * (1 - sigma) + delta);
    Rational e_E = scaled < tau ? scaled : tau;
    auto relu = [](const Rational& r) { return r > 0 ? r : Rational(0); };
    EstLogsSides sides;
    sides.lhs = (relu(e_E - p.u) + relu(e_E - p.v)) / 2;
    sides.rhs = (1 - p.u - p.v) * (1 - sigma);
    return sides;
}

std::optional<EstLogsCounterexample> brute_force_estlogs(
    const Rational& sigma0, const Rational& theta, const PiecewiseRationalFn& A,
    int samples, const Variant& variant) {
    if (samples < 1) throw std::invalid_argument("brute_force_estlogs: samples < 1");
    if (theta > theta_cap(sigma0))
        throw std::invalid_argument("brute_force_estlogs: theta above the cap");
    auto props = check_A_properties(A, sigma0);
    if (!props.ok)
        throw std::invalid_argument("brute_force_estlogs: A fails requirements: " +
                                    props.reason);

    ThetaConstraintSet set =
        variant.epsilon
            ? epsilon_variant_conditions(sigma0, variant.eta, variant.eps)
            : general_conditions(sigma0);
    Region2D region = specialize_theta(set, theta);

    std::vector<RatPoint> points = region.vertices;
    for (const auto& m : region.edge_midpoints()) points.push_back(m);

    std::vector<Rational> sigmas;
    for (int k = 0; k < samples; ++k) sigmas.emplace_back(k, samples);  // skip 1
    if (std::find(sigmas.begin(), sigmas.end(), sigma0) == sigmas.end())
        sigmas.push_back(sigma0);

    for (const auto& sigma : sigmas) {
        for (const auto& p : points) {
            EstLogsSides s = estlogs_sides(theta, A, variant, sigma, p);
            if (s.lhs > s.rhs) return EstLogsCounterexample{sigma, p, s.lhs, s.rhs};
        }
    }
    return std::nullopt;
}

}  // namespace psint
