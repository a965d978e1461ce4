#include "psint/density.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace psint {

Rational RationalPiece::eval(const Rational& s) const {
    Rational den = q1 * s + q0;
    if (den == 0) throw std::domain_error("piecewise function: denominator vanishes");
    return (p1 * s + p0) / den;
}

PiecewiseRationalFn PiecewiseRationalFn::from_pieces(std::vector<RationalPiece> pieces) {
    if (pieces.empty()) throw std::invalid_argument("piecewise function: no pieces");
    for (size_t i = 0; i < pieces.size(); ++i) {
        const auto& pc = pieces[i];
        if (pc.lo >= pc.hi)
            throw std::invalid_argument("piecewise function: empty piece interval");
        // q is linear: same nonzero sign at both endpoints <=> no root inside
        Rational qlo = pc.q1 * pc.lo + pc.q0, qhi = pc.q1 * pc.hi + pc.q0;
        if (qlo == 0 || qhi == 0 || (sign_of(qlo) != sign_of(qhi)))
            throw std::invalid_argument("piecewise function: denominator root in piece");
        if (i > 0) {
            if (pieces[i - 1].hi != pc.lo)
                throw std::invalid_argument("piecewise function: pieces not contiguous");
            if (pieces[i - 1].eval(pc.lo) != pc.eval(pc.lo))
                throw std::invalid_argument(
                    "piecewise function: discontinuous at piece boundary");
        }
    }
    PiecewiseRationalFn f;
    f.pieces_ = std::move(pieces);
    return f;
}

PiecewiseRationalFn PiecewiseRationalFn::constant(const Rational& c, const Rational& lo,
                                                  const Rational& hi) {
    return from_pieces({{lo, hi, 0, c, 0, 1}});
}

Rational PiecewiseRationalFn::operator()(const Rational& s) const {
    for (const auto& pc : pieces_)
        if (pc.lo <= s && s <= pc.hi) return pc.eval(s);
    throw std::domain_error("piecewise function: argument outside domain");
}

Rational PiecewiseRationalFn::sup_on(const Rational& a, const Rational& b) const {
    bool any = false;
    Rational best;
    for (const auto& pc : pieces_) {
        Rational lo = pc.lo < a ? a : pc.lo;
        Rational hi = pc.hi > b ? b : pc.hi;
        if (lo > hi) continue;
        for (const Rational& s : {lo, hi}) {
            Rational v = pc.eval(s);
            if (!any || v > best) {
                best = v;
                any = true;
            }
        }
    }
    if (!any) throw std::domain_error("piecewise function: empty evaluation range");
    return best;
}

PiecewiseRationalFn parse_piecewise(std::istream& in) {
    std::vector<RationalPiece> pieces;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok.size() != 6)
            throw std::invalid_argument("piecewise config line " +
                                        std::to_string(lineno) +
                                        ": expected 6 fields, got " +
                                        std::to_string(tok.size()));
        Rational v[6];
        for (int i = 0; i < 6; ++i) {
            auto r = try_parse_rational(tok[i]);
            if (!r)
                throw std::invalid_argument("piecewise config line " +
                                            std::to_string(lineno) +
                                            ": bad rational '" + tok[i] + "'");
            v[i] = *r;
        }
        pieces.push_back({v[0], v[1], v[2], v[3], v[4], v[5]});
    }
    return PiecewiseRationalFn::from_pieces(std::move(pieces));
}

PiecewiseRationalFn load_piecewise(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open piecewise config: " + path);
    return parse_piecewise(in);
}

namespace {

PiecewiseRationalFn hbiw_A() {
    // 3/(2 - sigma) up to 3/4, then 3/(3 sigma - 1); continuous with value 12/5
    // at the junction and crossing 1/(2(1-sigma)) at 7/9
    return PiecewiseRationalFn::from_pieces({
        {0, Rational(3, 4), 0, 3, -1, 2},
        {Rational(3, 4), 1, 0, 3, 3, -1},
    });
}

std::vector<DensityEstimate> build_catalog() {
    std::vector<DensityEstimate> cat;
    {
        DensityEstimate e;
        e.name = "ingham";
        e.b = Rational(925, 348);
        e.eps_flag = true;
        e.o1_form = true;
        e.note = "from critical-line bounds for zeta";
        cat.push_back(e);
    }
    {
        DensityEstimate e;
        e.name = "huxley";
        e.b = Rational(12, 5);
        e.o1_form = true;
        cat.push_back(e);
    }
    {
        DensityEstimate e;
        e.name = "guth-maynard";
        e.b = Rational(30, 13);
        e.eps_flag = true;
        e.o1_form = true;
        cat.push_back(e);
    }
    {
        DensityEstimate e;
        e.name = "dh";
        e.b = 2;
        e.eps_flag = true;
        e.o1_form = true;
        e.note = "density hypothesis";
        cat.push_back(e);
    }
    {
        DensityEstimate e;
        e.name = "hbiw";
        e.A = hbiw_A();
        e.b = Rational(12, 5);
        e.o1_form = true;
        e.sigma0 = Rational(7, 9);
        cat.push_back(e);
    }
    {
        DensityEstimate e;
        e.name = "ivic-11.5";
        e.sigma0 = Rational(10, 13);
        e.note = "crossing value only; supply the full A(sigma) via a config file";
        cat.push_back(e);
    }
    {
        DensityEstimate e;
        e.name = "ivic-11.4";
        e.sigma0 = Rational(13, 17);
        e.note = "crossing value only; supply the full A(sigma) via a config file";
        cat.push_back(e);
    }
    return cat;
}

}  // namespace

const std::vector<DensityEstimate>& catalog() {
    static const std::vector<DensityEstimate> cat = build_catalog();
    return cat;
}

const DensityEstimate& catalog_entry(const std::string& name) {
    for (const auto& e : catalog())
        if (e.name == name) return e;
    throw std::invalid_argument("unknown density estimate: " + name);
}

Rational b_of(const DensityEstimate& est) {
    if (est.A) return est.A->sup_on(est.A->lo(), est.A->hi());
    if (est.b) return *est.b;
    throw std::invalid_argument("density estimate '" + est.name +
                                "' has neither A nor b");
}

Rational ingham_threshold(const Rational& b, const std::optional<Rational>& A_zf,
                          const Rational& B) {
    if (b < 2) throw std::invalid_argument("ingham_threshold: b must be >= 2");
    if (B < 0) throw std::invalid_argument("ingham_threshold: B must be >= 0");
    Rational denom = b;
    if (A_zf) {
        if (*A_zf <= 0) throw std::invalid_argument("ingham_threshold: A_zf must be > 0");
        denom += B / *A_zf;
    }
    return 1 - 1 / denom;
}

Rational crossing_value(const Rational& sigma0) {
    if (sigma0 >= 1) throw std::domain_error("crossing_value: sigma0 must be < 1");
    return 1 / (2 * (1 - sigma0));
}

Sigma0Result solve_sigma0(const PiecewiseRationalFn& A) {
    const Rational half(1, 2);
    std::optional<Sigma0Result> best;
    auto consider = [&](const Rational& root, bool exact, const Rational& lo,
                        const Rational& hi) {
        if (!best || root > best->value) best = Sigma0Result{root, exact, lo, hi};
    };

    for (const auto& pc : A.pieces()) {
        Rational lo = pc.lo < half ? half : pc.lo;
        Rational hi = pc.hi < 1 ? pc.hi : Rational(1);
        if (lo >= hi) continue;

        // A(s) = 1/(2(1-s)) <=> Q(s) := 2(p1 s + p0)(1 - s) - (q1 s + q0) = 0
        // on the piece (q has no root there and s < 1), with Q = a s^2 + b s + c;
        // Q is pole-free so it is safe to sign-test anywhere, including s = 1
        Rational a = -2 * pc.p1;
        Rational b = 2 * pc.p1 - 2 * pc.p0 - pc.q1;
        Rational c = 2 * pc.p0 - pc.q0;
        auto Q = [&](const Rational& s) { return a * s * s + b * s + c; };

        if (a == 0 && b == 0) continue;  // Q constant: no isolated crossing

        bool have_exact = true;
        std::vector<Rational> roots;
        if (a == 0) {
            roots.push_back(-c / b);
        } else {
            Rational disc = b * b - 4 * a * c;
            if (disc < 0) continue;
            auto sq = exact_sqrt(disc);
            if (sq) {
                roots.push_back((-b + *sq) / (2 * a));
                roots.push_back((-b - *sq) / (2 * a));
            } else {
                have_exact = false;
            }
        }

        if (have_exact) {
            for (const auto& r : roots)
                if (lo <= r && r <= hi && r < 1) consider(r, true, r, r);
            continue;
        }

        // irrational roots: bisect Q on vertex-split subintervals, where its
        // sign changes at most once
        std::vector<Rational> cuts{lo};
        Rational vertex = -b / (2 * a);
        if (vertex > lo && vertex < hi) cuts.push_back(vertex);
        cuts.push_back(hi);
        const Rational width_target(1, BigInt(1000000000000LL));
        for (size_t k = 0; k + 1 < cuts.size(); ++k) {
            Rational flo = cuts[k], fhi = cuts[k + 1];
            int slo = sign_of(Q(flo)), shi = sign_of(Q(fhi));
            if (slo == 0 && flo < 1) { consider(flo, true, flo, flo); continue; }
            if (shi == 0 && fhi < 1) { consider(fhi, true, fhi, fhi); continue; }
            if (slo == shi || slo == 0 || shi == 0) continue;
            while (fhi - flo >= width_target) {
                Rational mid = (flo + fhi) / 2;
                int sm = sign_of(Q(mid));
                if (sm == 0) { flo = fhi = mid; break; }
                if (sm == slo) flo = mid; else fhi = mid;
            }
            if (flo < 1) consider((flo + fhi) / 2, flo == fhi, flo, fhi);
        }
    }

    if (!best)
        throw std::domain_error("solve_sigma0: no crossing in [1/2, 1)");
    return *best;
}

APropertyReport check_A_properties(const PiecewiseRationalFn& A,
                                   const Rational& sigma0) {
    if (sigma0 <= Rational(1, 2) || sigma0 >= 1)
        throw std::invalid_argument("check_A_properties: sigma0 must be in (1/2, 1)");
    if (A(sigma0) != crossing_value(sigma0))
        return {false, "crossing-value-mismatch"};

    for (const auto& pc : A.pieces()) {
        Rational lo = pc.lo < sigma0 ? sigma0 : pc.lo;
        Rational hi = pc.hi > 1 ? Rational(1) : pc.hi;
        if (lo >= hi) continue;

        // derivative of (p1 s + p0)/(q1 s + q0) has the sign of p1 q0 - p0 q1
        if (pc.p1 * pc.q0 - pc.p0 * pc.q1 > 0)
            return {false, "A-increasing-on-[sigma0,1]"};

        // B(s) = A(s)(1-s) is non-increasing iff its derivative numerator
        // N(s) = -p1 q1 s^2 - 2 p1 q0 s + (p1 q0 - p0 q0 - p0 q1) stays <= 0;
        // N's vertex sits at the pole of q, outside the piece, so endpoint
        // checks suffice
        auto dnum = [&](const Rational& s) {
            return -pc.p1 * pc.q1 * s * s - 2 * pc.p1 * pc.q0 * s +
                   (pc.p1 * pc.q0 - pc.p0 * pc.q0 - pc.p0 * pc.q1);
        };
        if (dnum(lo) > 0 || dnum(hi) > 0)
            return {false, "A-times-(1-sigma)-increasing-on-[sigma0,1]"};
    }
    return {true, ""};
}

}  // namespace psint
