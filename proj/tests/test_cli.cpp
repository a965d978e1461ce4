#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "psint/cli.hpp"
#include "psint/report.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run(std::vector<std::string> args) {
    std::vector<const char*> argv;
    argv.push_back("psint");
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = psint::cli_run(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& stem, const std::string& contents) {
    fs::path p = fs::temp_directory_path() / stem;
    std::ofstream f(p, std::ios::binary);
    f << contents;
    return p;
}

const std::string kTinyTable =
    "14.134725142\n21.022039639\n25.010857580\n30.424876126\n32.935061588\n";

// ------------------------------------------------------- schema validation
//
// Minimal draft-07 subset evaluator covering exactly the vocabulary used by
// docs/report.schema.json: $ref into definitions, allOf, oneOf, type, const,
// enum, pattern, required, properties, additionalProperties: false, items,
// minimum, minProperties.

class SchemaChecker {
  public:
    explicit SchemaChecker(const json& root) : root_(root) {}

    bool check(const json& schema, const json& value, std::string& why) const {
        if (schema.contains("$ref")) {
            const json& target = resolve(schema["$ref"].get<std::string>());
            return check(target, value, why);
        }
        if (schema.contains("type") && !type_ok(schema["type"], value))
            return fail(why, "type mismatch, want " + schema["type"].dump());
        if (schema.contains("const") && value != schema["const"])
            return fail(why, "const mismatch");
        if (schema.contains("enum")) {
            bool any = false;
            for (const auto& e : schema["enum"]) any = any || value == e;
            if (!any) return fail(why, "not in enum: " + value.dump());
        }
        if (schema.contains("pattern")) {
            if (!value.is_string()) return fail(why, "pattern on non-string");
            std::regex re(schema["pattern"].get<std::string>());
            if (!std::regex_search(value.get<std::string>(), re))
                return fail(why, "pattern mismatch: " + value.dump());
        }
        if (schema.contains("minimum") && value.is_number() &&
            value.get<double>() < schema["minimum"].get<double>())
            return fail(why, "below minimum");
        if (schema.contains("minProperties") && value.is_object() &&
            value.size() < schema["minProperties"].get<std::size_t>())
            return fail(why, "too few properties");
        if (schema.contains("required")) {
            if (!value.is_object()) return fail(why, "required on non-object");
            for (const auto& k : schema["required"])
                if (!value.contains(k.get<std::string>()))
                    return fail(why, "missing required key " + k.dump());
        }
        if (schema.contains("properties") && value.is_object()) {
            for (const auto& [k, sub] : schema["properties"].items())
                if (value.contains(k) && !check(sub, value.at(k), why))
                    return fail(why, "in property '" + k + "'");
        }
        if (schema.contains("additionalProperties") &&
            schema["additionalProperties"] == false && value.is_object()) {
            for (const auto& [k, v] : value.items()) {
                (void)v;
                if (!schema.contains("properties") ||
                    !schema["properties"].contains(k))
                    return fail(why, "unexpected key '" + k + "'");
            }
        }
        if (schema.contains("items") && value.is_array()) {
            for (const auto& e : value)
                if (!check(schema["items"], e, why)) return fail(why, "in item");
        }
        if (schema.contains("allOf")) {
            for (const auto& sub : schema["allOf"])
                if (!check(sub, value, why)) return fail(why, "in allOf");
        }
        if (schema.contains("oneOf")) {
            int hits = 0;
            for (const auto& sub : schema["oneOf"]) {
                std::string ignored;
                if (check(sub, value, ignored)) ++hits;
            }
            if (hits != 1)
                return fail(why, "oneOf matched " + std::to_string(hits) +
                                     " branches");
        }
        return true;
    }

  private:
    const json& resolve(const std::string& ref) const {
        // only "#/definitions/<name>" is used
        auto pos = ref.rfind('/');
        return root_.at("definitions").at(ref.substr(pos + 1));
    }

    static bool type_ok(const json& t, const json& v) {
        std::string s = t.get<std::string>();
        if (s == "object") return v.is_object();
        if (s == "array") return v.is_array();
        if (s == "string") return v.is_string();
        if (s == "boolean") return v.is_boolean();
        if (s == "integer") return v.is_number_integer();
        if (s == "number") return v.is_number();
        return false;
    }

    static bool fail(std::string& why, const std::string& msg) {
        why = why.empty() ? msg : msg + "; " + why;
        return false;
    }

    const json& root_;
};

const json& report_schema() {
    static json schema = [] {
        std::ifstream f(std::string(PSINT_REPO_DIR) + "/docs/report.schema.json");
        REQUIRE(f.good());
        return json::parse(f);
    }();
    return schema;
}

void check_valid_report(const std::string& text) {
    json v = json::parse(text);
    std::string why;
    SchemaChecker checker(report_schema());
    bool ok = checker.check(report_schema(), v, why);
    INFO("schema violation: ", why);
    CHECK(ok);
}

}  // namespace

TEST_CASE("checksum matches published test vectors") {
    CHECK(psint::fnv1a64("", 0) == 0xcbf29ce484222325ULL);
    CHECK(psint::fnv1a64("a", 1) == 0xaf63dc4c8601ec8cULL);
    CHECK(psint::fnv1a64("foobar", 6) == 0x85944171f73967e8ULL);
    CHECK(psint::to_hex16(0xcbf29ce484222325ULL) == "cbf29ce484222325");
    CHECK(psint::to_hex16(0x5ULL) == "0000000000000005");
}

TEST_CASE("threshold lookup prints the expected rational") {
    auto r = run({"density", "--threshold", "guth-maynard"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["threshold"] == "17/30");
    CHECK(j["results"]["b"] == "30/13");

    auto t = run({"density", "--threshold", "guth-maynard", "--format", "text"});
    CHECK(t.code == 0);
    CHECK(t.out == "17/30\n");
}

TEST_CASE("constraint emission matches the published coefficient set") {
    auto r = run({"regions", "--sigma0", "7/9", "--emit", "constraints"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    json want = json::array({
        {{"a_u", "-1"}, {"a_v", "-1"}, {"c0", "-14/5"}, {"c_theta", "18/5"}},
        {{"a_u", "-1"}, {"a_v", "4/5"}, {"c0", "-1"}, {"c_theta", "9/5"}},
        {{"a_u", "0"}, {"a_v", "0"}, {"c0", "13/21"}, {"c_theta", "-1"}},
        {{"a_u", "1"}, {"a_v", "-5/4"}, {"c0", "-5/4"}, {"c_theta", "9/4"}},
        {{"a_u", "1"}, {"a_v", "1"}, {"c0", "1"}, {"c_theta", "0"}},
    });
    CHECK(j["results"]["inequalities"] == want);
    CHECK(j["results"]["theta_cap"] == "13/21");
}

TEST_CASE("missing required flag exits 2 with usage text") {
    auto r = run({"regions"});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(r.err.find("--sigma0") != std::string::npos);
    CHECK(r.err.find("Usage") != std::string::npos);
}

TEST_CASE("validation failures exit 2") {
    CHECK(run({"nosuchcommand"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"regions", "--sigma0", "abc"}).code == 2);
    CHECK(run({"regions", "--sigma0", "7/9", "--emit", "vertices"}).code == 2);
    CHECK(run({"density"}).code == 2);
    CHECK(run({"density", "--list", "--threshold", "huxley"}).code == 2);
    CHECK(run({"density", "--threshold", "nosuchentry"}).code == 2);
    CHECK(run({"zeros", "--op", "count", "--T", "50", "--table", "/nonexistent"})
              .code == 2);
    CHECK(run({"sieve", "--x", "100", "--theta", "3/5", "--format", "csv",
               "--g", ")("})
              .code == 2);
    CHECK(run({"ingham-check", "--theta", "1/4", "--b", "2"}).code == 2);
}

TEST_CASE("failed assertions exit 3 and report the failure") {
    // at the exact threshold with no growth factor the conditions fail
    auto r = run({"ingham-check", "--theta", "1/2", "--b", "2"});
    CHECK(r.code == 3);
    json j = json::parse(r.out);
    CHECK(j["results"]["all_hold"] == false);
    check_valid_report(r.out);

    auto ok = run({"ingham-check", "--theta", "1/2", "--b", "2", "--g",
                   "log(x)^2"});
    CHECK(ok.code == 0);
    CHECK(json::parse(ok.out)["results"]["all_hold"] == true);
}

TEST_CASE("reports validate against the published schema") {
    fs::path table = temp_file("psint_cli_tiny.txt", kTinyTable);
    std::string tbl = table.string();
    std::vector<std::vector<std::string>> cases = {
        {"ingham-check", "--theta", "3/5", "--b", "12/5"},
        {"regions", "--sigma0", "7/9", "--emit", "constraints"},
        {"regions", "--sigma0", "10/13", "--variant", "eps", "--emit",
         "constraints"},
        {"regions", "--sigma0", "7/9", "--emit", "vertices", "--theta", "3/5"},
        {"regions", "--sigma0", "7/9", "--emit", "check", "--theta", "3/5",
         "--samples", "40"},
        {"density", "--list"},
        {"density", "--threshold", "huxley"},
        {"density", "--sigma0-of", "hbiw"},
        {"density", "--sigma0-of", "ivic-11.5"},
        {"zeros", "--table", tbl, "--op", "count", "--T", "30"},
        {"zeros", "--table", tbl, "--op", "psi-short", "--x", "1000", "--y",
         "100", "--T", "30"},
        {"zeros", "--table", tbl, "--op", "identity", "--x", "1000", "--T",
         "25"},
        {"zeros", "--table", tbl, "--op", "weighted", "--M", "4", "--N", "4",
         "--x", "1000", "--y", "50", "--T", "20"},
        {"zeros", "--table", tbl, "--op", "weighted", "--M", "2", "--N", "2",
         "--sigma", "0.6", "--T", "25"},
        {"zeros", "--table", tbl, "--op", "weighted", "--M", "2", "--N", "2",
         "--sigma", "0.6", "--x", "500", "--T", "25"},
        {"sieve", "--x", "10000", "--theta", "3/5"},
        {"weighted", "--M", "4", "--N", "8", "--x", "20000", "--y", "500"},
        {"verify-all", "--data-dir", "/nonexistent", "--filter", "theta-caps"},
    };
    for (const auto& c : cases) {
        CAPTURE(c.front());
        auto r = run(c);
        INFO("stderr: ", r.err);
        CHECK((r.code == 0 || r.code == 3));
        check_valid_report(r.out);
    }
    fs::remove(table);
}

TEST_CASE("corrupted zero table fails its criteria and the rest still run") {
    fs::path dir = fs::temp_directory_path() / "psint_cli_corrupt";
    fs::create_directories(dir);
    {
        std::ofstream f(dir / "zeros_10k.txt");
        f << "these are\nnot ordinates\n-3.5\n";
    }
    auto r = run({"verify-all", "--data-dir", dir.string(), "--filter",
                  "zeros"});
    CHECK(r.code == 3);
    check_valid_report(r.out);
    json j = json::parse(r.out);
    int failed_with_load_error = 0, passed = 0;
    for (const auto& c : j["results"]["criteria"]) {
        if (c["status"] == "fail") {
            CHECK(c["detail"].get<std::string>().find("error") !=
                  std::string::npos);
            ++failed_with_load_error;
        }
        if (c["status"] == "pass") ++passed;
    }
    CHECK(failed_with_load_error == 3);  // the three table-backed checks
    CHECK(passed >= 1);                  // table-free checks keep running
    fs::remove_all(dir);
}

TEST_CASE("verify-all report pins the table checksums it ran against") {
    std::string data = std::string(PSINT_REPO_DIR) + "/data";
    auto r = run({"verify-all", "--data-dir", data, "--filter", "term-bound"});
    CHECK(r.code == 0);
    check_valid_report(r.out);
    json j = json::parse(r.out);
    REQUIRE(j.contains("zero_tables"));
    CHECK(j["zero_tables"].size() == 2);
    CHECK(j["zero_tables"][0]["count"] == 10000);
    CHECK(j["zero_tables"][1]["count"] == 100000);
}

TEST_CASE("identical invocations produce byte-identical reports") {
    fs::path table = temp_file("psint_cli_det.txt", kTinyTable);
    std::vector<std::vector<std::string>> cases = {
        {"regions", "--sigma0", "13/17", "--variant", "eps", "--emit",
         "constraints"},
        {"zeros", "--table", table.string(), "--op", "count", "--T", "31"},
        {"sieve", "--x", "50000", "--theta", "5/8", "--format", "csv"},
        {"verify-all", "--data-dir", "/nonexistent", "--filter",
         "order-axioms"},
    };
    for (const auto& c : cases) {
        auto a = run(c);
        auto b = run(c);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
    fs::remove(table);
}

TEST_CASE("config file supplies values and flags override them") {
    fs::path conf = temp_file("psint_cli_conf.txt",
                              "# window parameters\nsigma0 = 10/13\n"
                              "variant = eps\nemit = constraints\n");
    auto file_only = run({"regions", "--config", conf.string()});
    CHECK(file_only.code == 0);
    json j = json::parse(file_only.out);
    CHECK(j["inputs"]["sigma0"] == "10/13");
    CHECK(j["inputs"]["variant"] == "eps");

    auto overridden =
        run({"regions", "--config", conf.string(), "--sigma0", "13/17"});
    CHECK(overridden.code == 0);
    CHECK(json::parse(overridden.out)["inputs"]["sigma0"] == "13/17");

    fs::path bad = temp_file("psint_cli_badconf.txt", "sigma0=7/9\nbogus=1\n");
    auto rejected = run({"regions", "--config", bad.string()});
    CHECK(rejected.code == 2);
    CHECK(rejected.err.find("bogus") != std::string::npos);

    CHECK(run({"regions", "--config", "/nonexistent.conf"}).code == 2);
    fs::remove(conf);
    fs::remove(bad);
}

TEST_CASE("csv output keeps the plot-pipeline contract") {
    auto r = run({"sieve", "--x", "100000", "--theta", "2/3", "--format",
                  "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("x,y,psi_ratio,pi_ratio\n", 0) == 0);
    CHECK(r.out.find('\r') == std::string::npos);
    CHECK(r.out.find(',') != std::string::npos);
    CHECK(r.out.back() == '\n');
    // decimal point, never a locale comma group
    CHECK(r.out.find("1.0") != std::string::npos);

    auto c = run({"regions", "--sigma0", "7/9", "--emit", "constraints",
                  "--format", "csv"});
    CHECK(c.code == 0);
    CHECK(c.out.rfind("a_u,a_v,c0,c_theta\n", 0) == 0);
}

TEST_CASE("out flag writes the same bytes to a file") {
    fs::path dst = fs::temp_directory_path() / "psint_cli_out.json";
    auto direct = run({"density", "--list"});
    auto filed = run({"density", "--list", "--out", dst.string()});
    CHECK(filed.code == 0);
    CHECK(filed.out.empty());
    std::ifstream f(dst, std::ios::binary);
    std::stringstream got;
    got << f.rdbuf();
    CHECK(got.str() == direct.out);
    fs::remove(dst);
}

TEST_CASE("zero table resolution prefers flag, then environment") {
    fs::path table = temp_file("psint_cli_env.txt", kTinyTable);
    setenv("PSINT_ZERO_TABLE", table.string().c_str(), 1);
    auto r = run({"zeros", "--op", "count", "--T", "30"});
    unsetenv("PSINT_ZERO_TABLE");
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["zero_table"]["path"] == table.string());
    CHECK(j["results"]["count"] == 3);
    fs::remove(table);
}

TEST_CASE("version and help exit cleanly") {
    auto v = run({"--version"});
    CHECK(v.code == 0);
    CHECK(v.out == "0.1.0\n");
    auto h = run({"--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("verify-all") != std::string::npos);
    auto hs = run({"zeros", "--help"});
    CHECK(hs.code == 0);
    CHECK(hs.out.find("--table") != std::string::npos);
}
