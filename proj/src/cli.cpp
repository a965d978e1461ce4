#include "psint/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "psint/acceptance.hpp"
#include "psint/density.hpp"
#include "psint/growth.hpp"
#include "psint/rational.hpp"
#include "psint/regions.hpp"
#include "psint/report.hpp"
#include "psint/sieve.hpp"
#include "psint/zeros.hpp"

namespace psint {

namespace {

using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kBadInput = 2;
constexpr int kCheckFailed = 3;

// validation problem attributable to a specific flag or parameter
struct FieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational rat_of(const std::string& text, const char* flag) {
    try {
        return parse_rational(text);
    } catch (const std::exception&) {
        throw FieldError(std::string(flag) + ": not a rational: '" + text + "'");
    }
}

GrowthExpr growth_of(const std::string& text, const char* flag) {
    try {
        return parse_growth(text);
    } catch (const GrowthParseError& e) {
        throw FieldError(std::string(flag) + ": " + e.what());
    }
}

ordered_json envelope(const std::string& command) {
    ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = command;
    j["inputs"] = ordered_json::object();
    j["results"] = ordered_json::object();
    return j;
}

void attach_zero_table(ordered_json& j, const std::string& path, const ZeroTable& t) {
    ordered_json z;
    z["path"] = path;
    z["fnv1a64"] = to_hex16(fnv1a64_file(path));
    z["count"] = t.size();
    j["zero_table"] = z;
}

// every emitted payload funnels through here, written once at the end
struct Sink {
    std::string format = "json";  // json | csv | text
    std::string path;             // empty: stdout

    int write(const std::string& payload, std::ostream& out, std::ostream& err) const {
        if (path.empty()) {
            out << payload;
            return kOk;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            err << "error: cannot open output file: " << path << "\n";
            return kBadInput;
        }
        f << payload;
        if (!f) {
            err << "error: short write to output file: " << path << "\n";
            return kBadInput;
        }
        return kOk;
    }
};

std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

void require_format(const Sink& sink, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (sink.format == a) return;
    std::string msg = "--format: '" + sink.format + "' not supported here (use";
    for (const char* a : allowed) msg += std::string(" ") + a;
    throw FieldError(msg + ")");
}

std::string env_or(const char* var, const std::string& fallback) {
    const char* v = std::getenv(var);
    return v && *v ? v : fallback;
}

// ---------------------------------------------------------------- ingham-check

struct InghamOpts {
    std::string theta, b, g = "1", h = "1", delta = "0";
    std::string eta_kind = "constant";
    std::string eta0 = "1/4";
    double eta_a = 1.0;
    double eta_c = 1.0 / 48.08;
    double eta_t0 = 0.0;  // 0: family default
    Sink sink;
};

int run_ingham(const InghamOpts& o, std::ostream& out, std::ostream& err) {
    require_format(o.sink, {"json", "text"});
    Rational theta = rat_of(o.theta, "--theta");
    Rational b = rat_of(o.b, "--b");
    Rational delta = rat_of(o.delta, "--delta");
    GrowthExpr g = growth_of(o.g, "--g");
    GrowthExpr h = growth_of(o.h, "--h");

    std::optional<ZeroFreeRegion> eta;
    if (o.eta_kind == "constant") {
        Rational eta0 = rat_of(o.eta0, "--eta0");
        eta = o.eta_t0 > 0 ? ZeroFreeRegion::constant_strip(eta0, o.eta_t0)
                           : ZeroFreeRegion::constant_strip(eta0);
    } else if (o.eta_kind == "loglog") {
        eta = o.eta_t0 > 0 ? ZeroFreeRegion::ingham_loglog(o.eta_a, o.eta_t0)
                           : ZeroFreeRegion::ingham_loglog(o.eta_a);
    } else if (o.eta_kind == "kv") {
        eta = o.eta_t0 > 0 ? ZeroFreeRegion::korobov_vinogradov(o.eta_c, o.eta_t0)
                           : ZeroFreeRegion::korobov_vinogradov(o.eta_c);
    } else {
        throw FieldError("--eta-kind: expected constant, loglog, or kv");
    }

    auto reports = check_ingham_gen_conditions(theta, b, g, *eta, h, delta);
    bool all_hold = true;
    for (const auto& r : reports) all_hold = all_hold && r.holds;

    ordered_json j = envelope("ingham-check");
    j["inputs"]["theta"] = format_rational(theta);
    j["inputs"]["b"] = format_rational(b);
    j["inputs"]["g"] = g.str();
    j["inputs"]["h"] = h.str();
    j["inputs"]["delta"] = format_rational(delta);
    j["inputs"]["eta"] = eta->str();
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) {
        ordered_json e;
        e["condition"] = r.condition_id;
        e["holds"] = r.holds;
        e["lhs"] = r.lhs.str();
        e["rhs"] = r.rhs.str();
        e["verdict"] = to_string(r.verdict);
        arr.push_back(e);
    }
    j["results"]["conditions"] = arr;
    j["results"]["all_hold"] = all_hold;

    std::string payload;
    if (o.sink.format == "json") {
        payload = dump_json(j);
    } else {
        std::ostringstream s;
        for (const auto& r : reports)
            s << "condition " << r.condition_id << ": "
              << (r.holds ? "holds" : "FAILS") << "  [" << r.lhs.str() << "  vs  "
              << r.rhs.str() << ", " << to_string(r.verdict) << "]\n";
        s << (all_hold ? "all conditions hold\n" : "some condition fails\n");
        payload = s.str();
    }
    int wr = o.sink.write(payload, out, err);
    if (wr != kOk) return wr;
    return all_hold ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- regions

struct RegionsOpts {
    std::string sigma0;
    std::string variant = "basic";
    std::string eta = "1/100", eps = "1/10";
    std::string theta;  // empty: not given
    std::string emit = "constraints";
    std::string A;  // catalog name or piecewise file; empty: resolved default
    int samples = 200;
    Sink sink;
};

// bundled exponent function when one exists for this crossing point, else the
// constant standing function with the right crossing value
PiecewiseRationalFn resolve_A(const std::string& spec_text, const Rational& sigma0,
                              std::string& source) {
    if (!spec_text.empty()) {
        for (const auto& e : catalog())
            if (e.name == spec_text) {
                if (!e.A)
                    throw FieldError("--A: catalog entry '" + spec_text +
                                     "' has no exponent function");
                source = "catalog:" + spec_text;
                return *e.A;
            }
        try {
            auto fn = load_piecewise(spec_text);
            source = "file:" + spec_text;
            return fn;
        } catch (const std::exception& e) {
            throw FieldError(std::string("--A: ") + e.what());
        }
    }
    for (const auto& e : catalog())
        if (e.A && e.sigma0 && *e.sigma0 == sigma0) {
            source = "catalog:" + e.name;
            return *e.A;
        }
    source = "constant:" + format_rational(crossing_value(sigma0));
    return PiecewiseRationalFn::constant(crossing_value(sigma0));
}

int run_regions(const RegionsOpts& o, std::ostream& out, std::ostream& err) {
    Rational sigma0 = rat_of(o.sigma0, "--sigma0");
    Variant variant;
    ThetaConstraintSet set;
    if (o.variant == "basic") {
        variant = Variant::basic();
        set = general_conditions(sigma0);
    } else if (o.variant == "eps") {
        Rational eta = rat_of(o.eta, "--eta");
        Rational eps = rat_of(o.eps, "--eps");
        variant = Variant::epsilon_variant(eta, eps);
        set = epsilon_variant_conditions(sigma0, eta, eps);
    } else {
        throw FieldError("--variant: expected basic or eps");
    }

    ordered_json j = envelope("regions");
    j["inputs"]["sigma0"] = format_rational(sigma0);
    j["inputs"]["variant"] = o.variant;
    if (variant.epsilon) {
        j["inputs"]["eta"] = format_rational(variant.eta);
        j["inputs"]["eps"] = format_rational(variant.eps);
    }
    j["inputs"]["emit"] = o.emit;

    if (o.emit == "constraints") {
        require_format(o.sink, {"json", "csv", "text"});
        ordered_json arr = ordered_json::array();
        for (const auto& q : set.inequalities) {
            ordered_json e;
            e["a_u"] = format_rational(q.a_u);
            e["a_v"] = format_rational(q.a_v);
            e["c0"] = format_rational(q.c0);
            e["c_theta"] = format_rational(q.c_theta);
            arr.push_back(e);
        }
        j["results"]["form"] = "a_u*u + a_v*v <= c0 + c_theta*theta";
        j["results"]["inequalities"] = arr;
        j["results"]["theta_cap"] = format_rational(theta_cap(sigma0));

        std::string payload;
        if (o.sink.format == "json") {
            payload = dump_json(j);
        } else if (o.sink.format == "csv") {
            std::ostringstream s;
            s << "a_u,a_v,c0,c_theta\n";
            for (const auto& q : set.inequalities)
                s << format_rational(q.a_u) << ',' << format_rational(q.a_v) << ','
                  << format_rational(q.c0) << ',' << format_rational(q.c_theta) << '\n';
            payload = s.str();
        } else {
            std::ostringstream s;
            for (const auto& q : set.inequalities)
                s << format_rational(q.a_u) << "*u + " << format_rational(q.a_v)
                  << "*v <= " << format_rational(q.c0) << " + "
                  << format_rational(q.c_theta) << "*theta\n";
            payload = s.str();
        }
        return o.sink.write(payload, out, err);
    }

    if (o.theta.empty())
        throw FieldError("--theta is required for --emit " + o.emit);
    Rational theta = rat_of(o.theta, "--theta");
    j["inputs"]["theta"] = format_rational(theta);

    if (o.emit == "vertices") {
        require_format(o.sink, {"json", "csv", "text"});
        Region2D reg = specialize_theta(set, theta);
        std::string payload;
        if (o.sink.format == "csv") {
            std::ostringstream s;
            s << "u,v\n";
            for (const auto& p : reg.vertices)
                s << format_double(to_double(p.u)) << ','
                  << format_double(to_double(p.v)) << '\n';
            payload = s.str();
        } else if (o.sink.format == "text") {
            std::ostringstream s;
            for (const auto& p : reg.vertices)
                s << '(' << format_rational(p.u) << ", " << format_rational(p.v)
                  << ")\n";
            payload = s.str();
        } else {
            ordered_json arr = ordered_json::array();
            for (const auto& p : reg.vertices) {
                ordered_json e;
                e["u"] = format_rational(p.u);
                e["v"] = format_rational(p.v);
                arr.push_back(e);
            }
            j["results"]["vertices"] = arr;
            j["results"]["empty"] = reg.empty();
            payload = dump_json(j);
        }
        return o.sink.write(payload, out, err);
    }

    if (o.emit == "check") {
        require_format(o.sink, {"json", "text"});
        if (o.samples < 1) throw FieldError("--samples: must be >= 1");
        std::string a_source;
        PiecewiseRationalFn A = resolve_A(o.A, sigma0, a_source);
        auto cex = brute_force_estlogs(sigma0, theta, A, o.samples, variant);
        j["inputs"]["samples"] = o.samples;
        j["inputs"]["A"] = a_source;
        j["results"]["holds"] = !cex.has_value();
        if (cex) {
            ordered_json c;
            c["sigma"] = format_rational(cex->sigma);
            c["u"] = format_rational(cex->point.u);
            c["v"] = format_rational(cex->point.v);
            c["lhs"] = format_rational(cex->lhs);
            c["rhs"] = format_rational(cex->rhs);
            j["results"]["counterexample"] = c;
        }
        std::string payload;
        if (o.sink.format == "json") {
            payload = dump_json(j);
        } else {
            std::ostringstream s;
            if (cex)
                s << "counterexample: sigma = " << format_rational(cex->sigma)
                  << ", (u, v) = (" << format_rational(cex->point.u) << ", "
                  << format_rational(cex->point.v) << "), lhs "
                  << format_rational(cex->lhs) << " > rhs " << format_rational(cex->rhs)
                  << "\n";
            else
                s << "exponent inequality holds on the sampled grid\n";
            payload = s.str();
        }
        int wr = o.sink.write(payload, out, err);
        if (wr != kOk) return wr;
        return cex ? kCheckFailed : kOk;
    }

    throw FieldError("--emit: expected constraints, vertices, or check");
}

// ---------------------------------------------------------------- density

struct DensityOpts {
    bool list = false;
    std::string sigma0_of;   // catalog name or piecewise config file
    std::string threshold;   // catalog name
    Sink sink;
};

int run_density(const DensityOpts& o, std::ostream& out, std::ostream& err) {
    require_format(o.sink, {"json", "text"});
    int modes = int(o.list) + int(!o.sigma0_of.empty()) + int(!o.threshold.empty());
    if (modes != 1)
        throw FieldError("exactly one of --list, --sigma0-of, --threshold is required");

    ordered_json j = envelope("density");

    if (o.list) {
        ordered_json arr = ordered_json::array();
        std::ostringstream s;
        for (const auto& e : catalog()) {
            ordered_json r;
            r["name"] = e.name;
            if (e.b) r["b"] = format_rational(*e.b);
            if (e.logpower) r["logpower"] = format_rational(*e.logpower);
            r["eps_flag"] = e.eps_flag;
            r["o1_form"] = e.o1_form;
            if (e.sigma0) r["sigma0"] = format_rational(*e.sigma0);
            r["has_A"] = e.A.has_value();
            if (!e.note.empty()) r["note"] = e.note;
            arr.push_back(r);
            s << e.name << ": b = " << (e.b ? format_rational(*e.b) : "-")
              << ", sigma0 = " << (e.sigma0 ? format_rational(*e.sigma0) : "-")
              << (e.A ? ", full A(sigma)" : "") << (e.eps_flag ? ", +eps" : "")
              << (e.note.empty() ? "" : ", " + e.note) << "\n";
        }
        j["inputs"]["mode"] = "list";
        j["results"]["estimates"] = arr;
        return o.sink.write(o.sink.format == "json" ? dump_json(j) : s.str(), out, err);
    }

    if (!o.threshold.empty()) {
        const auto& e = catalog_entry(o.threshold);
        Rational b = b_of(e);
        Rational t = ingham_threshold(b, std::nullopt, 0);
        j["inputs"]["mode"] = "threshold";
        j["inputs"]["name"] = e.name;
        j["results"]["b"] = format_rational(b);
        j["results"]["threshold"] = format_rational(t);
        std::string text = format_rational(t) + "\n";
        return o.sink.write(o.sink.format == "json" ? dump_json(j) : text, out, err);
    }

    // --sigma0-of
    j["inputs"]["mode"] = "sigma0-of";
    j["inputs"]["name"] = o.sigma0_of;
    std::optional<PiecewiseRationalFn> A;
    bool is_catalog = false;
    for (const auto& e : catalog())
        if (e.name == o.sigma0_of) {
            is_catalog = true;
            if (e.A) {
                A = *e.A;
            } else if (e.sigma0) {
                j["results"]["value"] = format_rational(*e.sigma0);
                j["results"]["exact"] = true;
                j["results"]["source"] = "catalog-stated";
                std::string text = format_rational(*e.sigma0) + "\n";
                return o.sink.write(o.sink.format == "json" ? dump_json(j) : text, out,
                                    err);
            } else {
                throw FieldError("--sigma0-of: catalog entry '" + o.sigma0_of +
                                 "' has neither an exponent function nor a stated "
                                 "crossing point");
            }
        }
    if (!is_catalog) {
        try {
            A = load_piecewise(o.sigma0_of);
        } catch (const std::exception& e) {
            throw FieldError(std::string("--sigma0-of: not a catalog name, and ") +
                             e.what());
        }
    }
    auto r = solve_sigma0(*A);
    j["results"]["value"] = format_rational(r.value);
    j["results"]["exact"] = r.exact;
    j["results"]["enclosure_lo"] = format_rational(r.enc_lo);
    j["results"]["enclosure_hi"] = format_rational(r.enc_hi);
    j["results"]["source"] = "solved";
    if (r.exact) {
        auto props = check_A_properties(*A, r.value);
        j["results"]["properties_ok"] = props.ok;
        if (!props.ok) j["results"]["properties_reason"] = props.reason;
    }
    std::string text = format_rational(r.value) + (r.exact ? "" : " (enclosure mid)") +
                       "\n";
    return o.sink.write(o.sink.format == "json" ? dump_json(j) : text, out, err);
}

// ---------------------------------------------------------------- zeros

struct ZerosOpts {
    std::string table;
    std::string op;
    double x = 0, y = 0, T = 0, sigma = 0;
    bool has_x = false, has_y = false, has_T = false, has_sigma = false;
    int quad_points = 0;
    std::uint64_t M = 1, N = 1;
    Sink sink;
};

int run_zeros(const ZerosOpts& o, std::ostream& out, std::ostream& err) {
    require_format(o.sink, {"json", "text"});
    std::string path =
        o.table.empty() ? env_or("PSINT_ZERO_TABLE", "data/zeros_10k.txt") : o.table;
    ZeroTable table = ZeroTable::load(path);

    ordered_json j = envelope("zeros");
    j["inputs"]["op"] = o.op;
    if (o.has_x) j["inputs"]["x"] = o.x;
    if (o.has_y) j["inputs"]["y"] = o.y;
    if (o.has_T) j["inputs"]["T"] = o.T;
    if (o.has_sigma) j["inputs"]["sigma"] = o.sigma;
    attach_zero_table(j, path, table);

    auto need = [&](bool has, const char* flag) {
        if (!has) throw FieldError(std::string(flag) + " is required for --op " + o.op);
    };

    std::ostringstream text;
    int code = kOk;
    if (o.op == "count") {
        need(o.has_T, "--T");
        auto n = count_zeros(table, o.T);
        double est = rvm_estimate(o.T);
        j["results"]["count"] = n;
        j["results"]["estimate"] = est;
        j["results"]["abs_diff"] = std::abs(double(n) - est);
        text << "N(0, " << format_double(o.T) << ") = " << n
             << ", smooth estimate = " << format_double(est, 10) << "\n";
    } else if (o.op == "psi-short") {
        need(o.has_x, "--x");
        need(o.has_y, "--y");
        need(o.has_T, "--T");
        double v = explicit_psi_short(table, o.x, o.y, o.T);
        j["results"]["psi_short"] = v;
        j["results"]["zeros_used"] = count_zeros(table, o.T);
        text << "explicit-formula psi((x-y, x]) = " << format_double(v) << "\n";
    } else if (o.op == "identity") {
        need(o.has_x, "--x");
        need(o.has_T, "--T");
        j["inputs"]["quad_points"] = o.quad_points;
        auto r = density_integral_identity_check(table, o.x, o.T, o.quad_points);
        j["results"]["lhs"] = r.lhs;
        j["results"]["rhs"] = r.rhs;
        j["results"]["relative"] = r.relative;
        j["results"]["value"] = r.value;
        text << "lhs = " << format_double(r.lhs) << ", rhs = " << format_double(r.rhs)
             << ", " << (r.relative ? "relative" : "absolute")
             << " difference = " << format_double(r.value) << "\n";
    } else if (o.op == "weighted") {
        need(o.has_T, "--T");
        if (!o.has_sigma && !o.has_x)
            throw FieldError("--op weighted needs --sigma and/or --x");
        if (o.M < 1 || o.N < 1) throw FieldError("--M/--N: block starts must be >= 1");
        auto mspec = DirichletPolySpec::ones(o.M);
        auto nspec = DirichletPolySpec::ones(o.N);
        j["inputs"]["M"] = o.M;
        j["inputs"]["N"] = o.N;
        if (o.has_sigma) {
            double ts = weighted_zero_sum_threshold(table, mspec, nspec, o.sigma, o.T);
            j["results"]["threshold_sum"] = ts;
            text << "threshold sum (beta >= " << format_double(o.sigma)
                 << ") = " << format_double(ts) << "\n";
        }
        if (o.has_x) {
            double ws = weighted_zero_sum_weighted(table, mspec, nspec, o.x, o.T);
            auto st = strip_transition_check(table, mspec, nspec, o.x, o.T);
            j["results"]["weighted_sum"] = ws;
            ordered_json stj;
            stj["lhs"] = st.lhs;
            stj["rhs"] = st.rhs;
            stj["holds"] = st.holds;
            j["results"]["strip_transition"] = stj;
            text << "weighted sum = " << format_double(ws) << ", strip transition "
                 << (st.holds ? "holds" : "FAILS") << "\n";
            if (!st.holds) code = kCheckFailed;
        }
        if (o.has_sigma && o.has_x) {
            auto mv = mean_value_bound_ratio(table, mspec, o.x, o.sigma, o.T);
            ordered_json mj;
            mj["numerator"] = mv.numerator;
            mj["denominator"] = mv.denominator;
            mj["ratio"] = mv.ratio;
            mj["flagged"] = mv.flagged;
            j["results"]["mean_value"] = mj;
            text << "mean-value ratio = " << format_double(mv.ratio)
                 << (mv.flagged ? " (flagged: degenerate denominator)" : "") << "\n";
        }
    } else {
        throw FieldError("--op: expected count, psi-short, identity, or weighted");
    }

    int wr = o.sink.write(o.sink.format == "json" ? dump_json(j) : text.str(), out, err);
    return wr != kOk ? wr : code;
}

// ---------------------------------------------------------------- sieve

struct SieveOpts {
    std::vector<std::uint64_t> xs;
    std::string theta;
    std::string g = "1";
    Sink sink;
};

int run_sieve(const SieveOpts& o, std::ostream& out, std::ostream& err) {
    require_format(o.sink, {"json", "csv", "text"});
    Rational theta = rat_of(o.theta, "--theta");
    GrowthExpr g = growth_of(o.g, "--g");
    auto rows = short_interval_report(o.xs, theta, g);

    if (o.sink.format == "csv") {
        std::ostringstream s;
        s << "x,y,psi_ratio,pi_ratio\n";
        for (const auto& r : rows)
            s << r.x << ',' << r.y << ',' << format_double(r.psi_ratio) << ','
              << format_double(r.pi_ratio) << '\n';
        return o.sink.write(s.str(), out, err);
    }
    if (o.sink.format == "text") {
        std::ostringstream s;
        for (const auto& r : rows)
            s << "x = " << r.x << ", y = " << r.y
              << ", psi ratio = " << format_double(r.psi_ratio, 10)
              << ", pi ratio = " << format_double(r.pi_ratio, 10) << "\n";
        return o.sink.write(s.str(), out, err);
    }
    ordered_json j = envelope("sieve");
    ordered_json xs = ordered_json::array();
    for (auto x : o.xs) xs.push_back(x);
    j["inputs"]["x"] = xs;
    j["inputs"]["theta"] = format_rational(theta);
    j["inputs"]["g"] = g.str();
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json e;
        e["x"] = r.x;
        e["y"] = r.y;
        e["psi_ratio"] = r.psi_ratio;
        e["pi_ratio"] = r.pi_ratio;
        arr.push_back(e);
    }
    j["results"]["rows"] = arr;
    return o.sink.write(dump_json(j), out, err);
}

// ---------------------------------------------------------------- weighted

struct WeightedOpts {
    std::uint64_t M = 0, N = 0;
    std::string coeffs = "ones";
    std::uint64_t x = 0, y = 0;
    Sink sink;
};

std::pair<DirichletPolySpec, DirichletPolySpec> load_coeffs(const std::string& spec,
                                                            std::uint64_t M,
                                                            std::uint64_t N) {
    if (spec == "ones")
        return {DirichletPolySpec::ones(M), DirichletPolySpec::ones(N)};
    std::ifstream in(spec);
    if (!in) throw FieldError("--coeffs: cannot open file: " + spec);
    std::vector<double> vals;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        double v;
        while (ls >> v) vals.push_back(v);
        if (!ls.eof()) throw FieldError("--coeffs: unparseable value in " + spec);
    }
    if (vals.size() != M + N)
        throw FieldError("--coeffs: expected " + std::to_string(M + N) +
                         " values (M then N), found " + std::to_string(vals.size()));
    std::vector<double> am(vals.begin(), vals.begin() + std::ptrdiff_t(M));
    std::vector<double> bn(vals.begin() + std::ptrdiff_t(M), vals.end());
    return {DirichletPolySpec::make(M, std::move(am)),
            DirichletPolySpec::make(N, std::move(bn))};
}

int run_weighted(const WeightedOpts& o, std::ostream& out, std::ostream& err) {
    require_format(o.sink, {"json", "text"});
    auto [mspec, nspec] = load_coeffs(o.coeffs, o.M, o.N);
    auto r = weighted_sum_brute(mspec, nspec, o.x, o.y);

    ordered_json j = envelope("weighted");
    j["inputs"]["M"] = o.M;
    j["inputs"]["N"] = o.N;
    j["inputs"]["coeffs"] = o.coeffs;
    j["inputs"]["x"] = o.x;
    j["inputs"]["y"] = o.y;
    j["results"]["exact_sum"] = r.exact_sum;
    j["results"]["main_term"] = r.main_term;
    j["results"]["relative_error"] = r.relative_error;
    j["results"]["main_term_zero"] = r.main_term_zero;

    std::ostringstream text;
    text << "exact sum = " << format_double(r.exact_sum)
         << ", main term = " << format_double(r.main_term);
    if (r.main_term_zero)
        text << " (zero main term)";
    else
        text << ", relative error = " << format_double(r.relative_error);
    text << "\n";
    return o.sink.write(o.sink.format == "json" ? dump_json(j) : text.str(), out, err);
}

// ---------------------------------------------------------------- verify-all

struct VerifyOpts {
    std::string filter;
    bool skip_slow = false;
    std::string data_dir;
    Sink sink;
};

int run_verify(const VerifyOpts& o, std::ostream& out, std::ostream& err) {
    require_format(o.sink, {"json", "text"});
    AcceptanceOptions opt;
    opt.data_dir = o.data_dir.empty() ? env_or("PSINT_DATA_DIR", "data") : o.data_dir;
    opt.filter = o.filter;
    opt.include_slow = !o.skip_slow;
    auto results = run_acceptance(opt);

    int passed = 0, failed = 0, skipped = 0;
    for (const auto& r : results) {
        if (!r.ran)
            ++skipped;
        else if (r.pass)
            ++passed;
        else
            ++failed;
    }

    ordered_json j = envelope("verify-all");
    j["inputs"]["filter"] = o.filter;
    j["inputs"]["skip_slow"] = o.skip_slow;
    j["inputs"]["data_dir"] = opt.data_dir;
    ordered_json arr = ordered_json::array();
    std::ostringstream text;
    for (const auto& r : results) {
        ordered_json e;
        e["id"] = r.id;
        e["name"] = r.name;
        e["slow"] = r.slow;
        e["status"] = !r.ran ? "skipped" : r.pass ? "pass" : "fail";
        e["detail"] = r.detail;
        arr.push_back(e);
        char buf[16];
        std::snprintf(buf, sizeof buf, "%2d", r.id);
        text << "criterion " << buf << ": "
             << (!r.ran ? "SKIP" : r.pass ? "PASS" : "FAIL") << "  " << r.name
             << (r.slow ? " [slow]" : "") << "  -  " << r.detail << "\n";
    }
    j["results"]["criteria"] = arr;
    ordered_json sum;
    sum["total"] = results.size();
    sum["passed"] = passed;
    sum["failed"] = failed;
    sum["skipped"] = skipped;
    j["results"]["summary"] = sum;

    // pin the table bytes these results were produced against; a table that
    // fails to load already shows up as criterion data
    ordered_json tables = ordered_json::array();
    for (const char* f : {"zeros_10k.txt", "zeros_100k.txt"}) {
        std::string p = opt.data_dir + "/" + f;
        try {
            ZeroTable t = ZeroTable::load(p);
            ordered_json e;
            e["path"] = p;
            e["fnv1a64"] = to_hex16(fnv1a64_file(p));
            e["count"] = t.size();
            tables.push_back(e);
        } catch (const std::exception&) {
        }
    }
    if (!tables.empty()) j["zero_tables"] = tables;
    text << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";

    int wr = o.sink.write(o.sink.format == "json" ? dump_json(j) : text.str(), out, err);
    if (wr != kOk) return wr;
    return failed == 0 ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- wiring

void add_sink(CLI::App* sub, Sink& sink, bool csv_ok,
              const std::string& names = "--format") {
    auto fmts = csv_ok ? std::vector<std::string>{"json", "csv", "text"}
                       : std::vector<std::string>{"json", "text"};
    sub->add_option(names, sink.format, "output format")
        ->check(CLI::IsMember(fmts))
        ->capture_default_str();
    sub->add_option("--out", sink.path, "write the output to this file");
}

void add_config(CLI::App* sub, std::string& path) {
    sub->add_option("--config", path, "key=value parameter file (flags override)");
}

std::string trimmed(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Turns a flat key=value file into --key=value tokens appended after the user's
// own flags. Keys must name long options of the chosen subcommand; a flag given
// on the command line wins over the file. Full-line # comments allowed.
void expand_config(std::vector<std::string>& args, const CLI::App& app) {
    std::size_t sub_at = 0;
    while (sub_at < args.size() && (args[sub_at].empty() || args[sub_at][0] == '-'))
        ++sub_at;
    if (sub_at == args.size()) return;
    const CLI::App* sub = app.get_subcommand_no_throw(args[sub_at]);
    if (!sub) return;  // parse reports the unknown subcommand

    std::string path;
    const std::size_t user_end = args.size();
    for (std::size_t i = sub_at; i < user_end; ++i) {
        if (args[i] == "--config" && i + 1 < user_end) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return;

    std::ifstream in(path);
    if (!in) throw FieldError("--config: cannot open '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trimmed(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw FieldError("--config: line " + std::to_string(lineno) +
                             ": expected key=value");
        std::string key = trimmed(t.substr(0, eq));
        std::string val = trimmed(t.substr(eq + 1));
        if (val.size() >= 2 && ((val.front() == '"' && val.back() == '"') ||
                                (val.front() == '\'' && val.back() == '\'')))
            val = val.substr(1, val.size() - 2);
        if (key.empty() || key == "config" || key == "help" ||
            !sub->get_option_no_throw("--" + key))
            throw FieldError("--config: unknown key '" + key + "'");
        bool overridden = false;
        for (std::size_t i = sub_at; i < user_end; ++i)
            if (args[i] == "--" + key || args[i].rfind("--" + key + "=", 0) == 0)
                overridden = true;
        if (!overridden) args.push_back("--" + key + "=" + val);
    }
}

}  // namespace

int cli_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"desk-scale checks for primes in short intervals: growth-condition "
                 "calculus, zero-density admissibility regions, zero-table analytics, "
                 "and sieve cross-checks"};
    app.name("psint");
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    // long-only help: ingham-check takes the theorem's g and h functions as
    // --g/--h, and CLI11 would reject --h against a -h short alias
    app.set_help_flag("--help", "print help and exit");

    std::string config_path;

    InghamOpts ing;
    auto* s_ing = app.add_subcommand(
        "ingham-check", "evaluate the short-interval PNT growth conditions");
    s_ing->add_option("--theta", ing.theta, "window exponent, rational")->required();
    s_ing->add_option("--b", ing.b, "density exponent sup, rational")->required();
    s_ing->add_option("--g", ing.g, "window growth factor")->capture_default_str();
    s_ing->add_option("--h", ing.h, "density log factor")->capture_default_str();
    s_ing->add_option("--delta", ing.delta, "density exponent slack, rational")
        ->capture_default_str();
    s_ing->add_option("--eta-kind", ing.eta_kind, "zero-free region family")
        ->check(CLI::IsMember({"constant", "loglog", "kv"}))
        ->capture_default_str();
    s_ing->add_option("--eta0", ing.eta0, "constant strip width, rational")
        ->capture_default_str();
    s_ing->add_option("--eta-a", ing.eta_a, "loglog family coefficient")
        ->capture_default_str();
    s_ing->add_option("--eta-c", ing.eta_c, "korobov-vinogradov constant")
        ->capture_default_str();
    s_ing->add_option("--eta-t0", ing.eta_t0, "family height floor (0: default)")
        ->capture_default_str();
    add_sink(s_ing, ing.sink, false);
    add_config(s_ing, config_path);

    RegionsOpts reg;
    auto* s_reg = app.add_subcommand(
        "regions", "admissibility constraints and regions for weighted density bounds");
    s_reg->add_option("--sigma0", reg.sigma0, "crossing point, rational")->required();
    s_reg->add_option("--variant", reg.variant, "constraint family")
        ->check(CLI::IsMember({"basic", "eps"}))
        ->capture_default_str();
    s_reg->add_option("--eta", reg.eta, "u+v headroom (eps variant), rational")
        ->capture_default_str();
    s_reg->add_option("--eps", reg.eps, "Perron shortening (eps variant), rational")
        ->capture_default_str();
    s_reg->add_option("--theta", reg.theta, "window exponent, rational");
    s_reg->add_option("--emit", reg.emit, "what to output")
        ->check(CLI::IsMember({"constraints", "vertices", "check"}))
        ->capture_default_str();
    s_reg->add_option("--A", reg.A, "exponent function: catalog name or piecewise file");
    s_reg->add_option("--samples", reg.samples, "sigma grid density for --emit check")
        ->capture_default_str();
    add_sink(s_reg, reg.sink, true);
    add_config(s_reg, config_path);

    DensityOpts den;
    auto* s_den =
        app.add_subcommand("density", "catalog of zero-density estimates");
    s_den->add_flag("--list", den.list, "list the catalog");
    s_den->add_option("--sigma0-of", den.sigma0_of,
                      "crossing point of a catalog entry or piecewise file");
    s_den->add_option("--threshold", den.threshold,
                      "window-shrinkage threshold of a catalog entry");
    add_sink(s_den, den.sink, false);
    add_config(s_den, config_path);

    ZerosOpts zer;
    auto* s_zer = app.add_subcommand("zeros", "zero-table analytics");
    s_zer->add_option("--table", zer.table,
                      "zero table path (default: $PSINT_ZERO_TABLE or "
                      "data/zeros_10k.txt)");
    s_zer->add_option("--op", zer.op, "operation")
        ->check(CLI::IsMember({"count", "psi-short", "identity", "weighted"}))
        ->required();
    s_zer->add_option("--x", zer.x, "evaluation point");
    s_zer->add_option("--y", zer.y, "window length");
    s_zer->add_option("--T", zer.T, "zero-sum height cutoff");
    s_zer->add_option("--sigma", zer.sigma, "real-part threshold");
    s_zer->add_option("--quad-points", zer.quad_points,
                      "accepted for interface stability (closed form is exact)")
        ->capture_default_str();
    s_zer->add_option("--M", zer.M, "first dyadic block start (all-ones coefficients)")
        ->capture_default_str();
    s_zer->add_option("--N", zer.N, "second dyadic block start (all-ones coefficients)")
        ->capture_default_str();
    add_sink(s_zer, zer.sink, false);
    add_config(s_zer, config_path);

    SieveOpts sie;
    auto* s_sie =
        app.add_subcommand("sieve", "short-interval prime counts from the sieve");
    s_sie->add_option("--x", sie.xs, "evaluation points (repeatable)")
        ->required()
        ->expected(-1);
    s_sie->add_option("--theta", sie.theta, "window exponent, rational")->required();
    s_sie->add_option("--g", sie.g, "window growth factor")->capture_default_str();
    add_sink(s_sie, sie.sink, true, "--format,--report");
    add_config(s_sie, config_path);

    WeightedOpts wei;
    auto* s_wei = app.add_subcommand(
        "weighted", "brute-force bilinear weighted sum over dyadic blocks");
    s_wei->add_option("--M", wei.M, "first block start")->required();
    s_wei->add_option("--N", wei.N, "second block start")->required();
    s_wei->add_option("--coeffs", wei.coeffs, "'ones' or a file with M then N values")
        ->capture_default_str();
    s_wei->add_option("--x", wei.x, "right endpoint")->required();
    s_wei->add_option("--y", wei.y, "window length")->required();
    add_sink(s_wei, wei.sink, false);
    add_config(s_wei, config_path);

    VerifyOpts ver;
    auto* s_ver =
        app.add_subcommand("verify-all", "run the acceptance criteria end to end");
    s_ver->add_option("--filter", ver.filter, "run only criteria whose name contains "
                                              "this substring");
    s_ver->add_flag("--skip-slow", ver.skip_slow, "skip criteria marked slow");
    s_ver->add_option("--data-dir", ver.data_dir,
                      "bundled table directory (default: $PSINT_DATA_DIR or data)");
    add_sink(s_ver, ver.sink, false);
    add_config(s_ver, config_path);

    for (auto* s : app.get_subcommands([](const CLI::App*) { return true; }))
        s->set_help_flag("--help", "print help and exit");

    std::vector<std::string> args;
    args.reserve(argc > 1 ? static_cast<std::size_t>(argc - 1) : 0);
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

    try {
        expand_config(args, app);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const FieldError& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        for (const auto* sub : app.get_subcommands()) err << sub->help();
        if (app.get_subcommands().empty()) err << app.help();
        return kBadInput;
    }

    zer.has_x = s_zer->count("--x") > 0;
    zer.has_y = s_zer->count("--y") > 0;
    zer.has_T = s_zer->count("--T") > 0;
    zer.has_sigma = s_zer->count("--sigma") > 0;

    try {
        if (s_ing->parsed()) return run_ingham(ing, out, err);
        if (s_reg->parsed()) return run_regions(reg, out, err);
        if (s_den->parsed()) return run_density(den, out, err);
        if (s_zer->parsed()) return run_zeros(zer, out, err);
        if (s_sie->parsed()) return run_sieve(sie, out, err);
        if (s_wei->parsed()) return run_weighted(wei, out, err);
        if (s_ver->parsed()) return run_verify(ver, out, err);
    } catch (const FieldError& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const ThetaCapError& e) {
        err << "error: theta exceeds the admissible cap: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    }
    err << "error: no subcommand\n";
    return kBadInput;
}

}  // namespace psint
