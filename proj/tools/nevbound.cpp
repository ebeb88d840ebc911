// nevbound: experiment runner for growth measurements and upper/lower bounds of Hamburger Hamiltonians.
//
// Exit codes: 0 all verdicts pass, 1 a verdict fails, 2 parse or validation error,
// 3 numeric cap reached (the bound is trivial, of order R).

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include "nevbound/acceptance.hpp"
#include "nevbound/bounds.hpp"
#include "nevbound/casebook.hpp"
#include "nevbound/errors.hpp"
#include "nevbound/hamiltonian.hpp"
#include "nevbound/monodromy.hpp"
#include "nevbound/regvar.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace nevbound;

namespace {

enum Exit { kPass = 0, kVerdictFail = 1, kInvalid = 2, kCap = 3 };

// Raised for a bound that is no better than minimal exponential type.
struct TrivialBound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_number(const std::string& text) {
    if (text.find('/') != std::string::npos) return Rational::parse(text).to_double();
    std::string s = text;
    if (!s.empty() && (s[0] == '.' || ((s[0] == '-' || s[0] == '+') && s.size() > 1 && s[1] == '.'))) {
        // YAML spellings .inf / -.inf
        s.erase(s[0] == '.' ? 0 : 1, 1);
    }
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw ParseError("not a number: '" + text + "'");
    return v;
}

double number(const YAML::Node& node, const std::string& key) {
    if (!node || !node.IsScalar()) throw ParseError("missing or non-scalar number '" + key + "'");
    return parse_number(node.as<std::string>());
}

double number_or(const YAML::Node& node, const std::string& key, double fallback) {
    return node ? number(node, key) : fallback;
}

json json_number(double v) {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

// ---------------------------------------------------------------- comparison data

// "alternating_power(alpha, beta)" gives the strict majorants of that family.
std::optional<ComparisonData> data_preset(const std::string& text) {
    static const std::regex re(R"(\s*(alternating_power|example_b6)\s*\(\s*([^,\s]+)\s*,\s*([^)\s]+)\s*\)\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) return std::nullopt;
    return alternating_power_data(parse_number(m[2]), parse_number(m[3]));
}

ComparisonData data_from_yaml(const YAML::Node& node, const HamburgerHamiltonian* H, const std::string& base_dir) {
    if (!node) throw ParseError("missing 'data' section");
    ComparisonData d;
    if (node.IsScalar()) {
        auto preset = data_preset(node.as<std::string>());
        if (!preset) throw ParseError("unknown data preset '" + node.as<std::string>() + "'");
        d = *preset;
    } else if (node["preset"]) {
        auto preset = data_preset(node["preset"].as<std::string>());
        if (!preset) throw ParseError("unknown data preset '" + node["preset"].as<std::string>() + "'");
        d = *preset;
    } else {
        for (const char* key : {"d_l", "d_phi", "c_l", "c_phi"})
            if (!node[key]) throw ParseError(std::string("data needs '") + key + "'");
        d.d_l = parse_comparison_function(node["d_l"].as<std::string>(), base_dir);
        d.d_phi = parse_comparison_function(node["d_phi"].as<std::string>(), base_dir);
        d.c_l = parse_comparison_function(node["c_l"].as<std::string>(), base_dir);
        d.c_phi = parse_comparison_function(node["c_phi"].as<std::string>(), base_dir);
    }
    if (auto psi = node.IsMap() ? node["psi"] : YAML::Node()) {
        if (psi.as<std::string>() == "auto") {
            if (!H) throw ParseError("psi: auto needs a family");
            d.psi = auto_psi(*H);
        } else {
            d.psi = number(psi, "psi");
        }
    }
    d.validate();
    return d;
}

// Inline form "d_l; d_phi; c_l; c_phi [; psi]", or a YAML file holding the data mapping.
ComparisonData data_from_argument(const std::string& arg, const HamburgerHamiltonian& H) {
    if (fs::is_regular_file(arg)) {
        YAML::Node root = YAML::LoadFile(arg);
        return data_from_yaml(root["data"] ? root["data"] : root, &H, fs::path(arg).parent_path().string());
    }
    if (auto preset = data_preset(arg)) return *preset;
    std::vector<std::string> parts;
    std::stringstream ss(arg);
    for (std::string item; std::getline(ss, item, ';');) parts.push_back(item);
    if (parts.size() != 4 && parts.size() != 5)
        throw ParseError("data must be a YAML file, a preset or 'd_l; d_phi; c_l; c_phi [; psi]'");
    YAML::Node node;
    const char* keys[] = {"d_l", "d_phi", "c_l", "c_phi", "psi"};
    for (std::size_t i = 0; i < parts.size(); ++i) node[keys[i]] = parts[i];
    return data_from_yaml(node, &H, ".");
}

// ---------------------------------------------------------------- config

struct Config {
    fs::path path;
    std::string family_expr;
    HamburgerHamiltonian H = HamburgerHamiltonian::from_sequences({1.0}, {0.0});
    YAML::Node data_node;
    double rmin = 1e2, rmax = 1e6;
    int per_decade = 4;
    double eps = 1e-3;
    std::size_t angles = 64;
    std::uint64_t seed = 0;
    std::vector<std::string> checks;
    YAML::Node expect;
    fs::path out_dir;
    std::string bounds_csv = "bounds.csv", growth_csv = "growth.csv", summary_json = "summary.json";
};

const std::vector<std::string> kChecks = {"measure", "upper", "lower", "sandwich", "case", "b38"};

Config load_config(const std::string& path) {
    Config c;
    c.path = path;
    YAML::Node root;
    try {
        root = YAML::LoadFile(path);
    } catch (const YAML::Exception& e) {
        throw ParseError("cannot read config " + path + ": " + e.what());
    }
    const std::string base = fs::path(path).parent_path().string();
    if (!root["family"]) throw ParseError("config needs 'family'");
    c.family_expr = root["family"].as<std::string>();
    c.H = parse_family(c.family_expr, base.empty() ? "." : base);
    c.data_node = root["data"];
    if (auto r = root["radii"]) {
        c.rmin = number(r["min"], "radii.min");
        c.rmax = number(r["max"], "radii.max");
        c.per_decade = static_cast<int>(number_or(r["per_decade"], "radii.per_decade", 4));
    }
    c.eps = number_or(root["eps"], "eps", c.eps);
    c.angles = static_cast<std::size_t>(number_or(root["angles"], "angles", 64));
    c.seed = static_cast<std::uint64_t>(number_or(root["seed"], "seed", 0));
    if (!(c.rmin > 0 && c.rmin < c.rmax)) throw std::invalid_argument("radii need 0 < min < max");
    if (c.per_decade < 4) throw std::invalid_argument("radii.per_decade must be at least 4");
    if (!(c.eps > 0)) throw std::invalid_argument("eps must be positive");
    if (c.angles < 4) throw std::invalid_argument("angles must be at least 4");
    if (!root["checks"] || !root["checks"].IsSequence()) throw ParseError("config needs a 'checks' list");
    for (const auto& n : root["checks"]) {
        auto name = n.as<std::string>();
        if (std::find(kChecks.begin(), kChecks.end(), name) == kChecks.end())
            throw ParseError("unknown check '" + name + "'");
        c.checks.push_back(name);
    }
    c.expect = root["expect"];
    // Outputs go relative to the working directory; inputs resolve against the config's directory.
    c.out_dir = "nevbound_out";
    if (auto o = root["output"]) {
        if (o["dir"]) c.out_dir = o["dir"].as<std::string>();
        if (o["bounds_csv"]) c.bounds_csv = o["bounds_csv"].as<std::string>();
        if (o["growth_csv"]) c.growth_csv = o["growth_csv"].as<std::string>();
        if (o["summary_json"]) c.summary_json = o["summary_json"].as<std::string>();
    }
    return c;
}

bool wants(const Config& c, const std::string& check) {
    return std::find(c.checks.begin(), c.checks.end(), check) != c.checks.end();
}

// Small radii always give B_upper >= R; the bound is trivial when that persists to the largest radius.
void require_nontrivial(const std::vector<BoundReport>& reports) {
    if (reports.empty() || !reports.back().trivial) return;
    const auto& r = reports.back();
    throw TrivialBound("bound trivial ≳ R: B_upper = " + format_from_log(std::log(r.B_upper)) +
                       " at R = " + format_from_log(std::log(r.R)));
}

// ---------------------------------------------------------------- run

int run(const std::string& path) {
    Config cfg = load_config(path);
    const auto radii = geometric_grid(cfg.rmin, cfg.rmax, cfg.per_decade);
    const bool needs_data = wants(cfg, "upper") || wants(cfg, "lower") || wants(cfg, "sandwich") ||
                            wants(cfg, "case") || wants(cfg, "b38");
    std::optional<ComparisonData> data;
    if (needs_data) data = data_from_yaml(cfg.data_node, &cfg.H, cfg.path.parent_path().string());

    json summary;
    summary["config"] = cfg.path.string();
    summary["family"] = cfg.family_expr;
    summary["seed"] = cfg.seed;
    summary["radii"] = {{"min", cfg.rmin}, {"max", cfg.rmax}, {"per_decade", cfg.per_decade}};
    summary["eps"] = cfg.eps;
    json checks = json::object();
    bool all_pass = true;
    auto verdict = [&](const std::string& name, bool pass, json detail) {
        detail["pass"] = pass;
        checks[name] = detail;
        all_pass = all_pass && pass;
        std::cerr << (pass ? "PASS " : "FAIL ") << name << "\n";
    };
    fs::create_directories(cfg.out_dir);

    std::optional<GrowthProfile> profile;
    auto measured = [&]() -> const GrowthProfile& {
        if (!profile) profile = growth_profile(cfg.H, radii, cfg.eps, cfg.angles);
        return *profile;
    };

    std::vector<BoundReport> reports;
    if (wants(cfg, "measure")) {
        const auto& p = measured();
        bool finite = std::all_of(p.points.begin(), p.points.end(), [](const CircleMax& q) { return std::isfinite(q.logM); });
        json d{{"rho", json_number(p.rho)}, {"type_summary", json_number(p.type_summary)}};
        bool ok = finite;
        if (auto o = cfg.expect["order"]) {
            double lo = number(o[0], "expect.order[0]"), hi = number(o[1], "expect.order[1]");
            d["expected_order"] = {lo, hi};
            ok = ok && p.rho >= lo && p.rho <= hi;
        }
        verdict("measure", ok, d);
    }
    if (wants(cfg, "sandwich")) {
        json d;
        bool ok = false;
        try {
            auto res = verify_bound_sandwich(cfg.H, *data, radii, cfg.eps);
            double worst = kInfinity;
            for (const auto& row : res.rows) {
                reports.push_back(row.report);
                worst = std::min(worst, row.margin_upper);
            }
            const auto& m = res.majorization;
            d["constants"] = {{"K_dl", m.K_dl}, {"K_dphi", m.K_dphi}, {"K_cl", m.K_cl}, {"K_cphi", m.K_cphi},
                              {"N_check", m.N_check}};
            d["min_margin_upper"] = json_number(worst);
            d["failures"] = res.failures;
            ok = res.failures.empty();
        } catch (const HypothesisViolation& e) {
            d["hypothesis_violation"] = e.what();
            d["witness"] = e.witness;
        }
        verdict("sandwich", ok, d);
    }
    if (wants(cfg, "upper")) {
        std::vector<BoundReport> upper;
        for (double R : radii) upper.push_back(upper_bound_B(*data, R, BoundMode::grid_infimum));
        require_nontrivial(upper);
        bool ok = true;
        for (const auto& r : upper) ok = ok && r.log_kR <= r.log_hR && std::isfinite(r.B_upper);
        if (reports.empty()) reports = upper;
        verdict("upper", ok, json{{"radii", upper.size()}, {"B_upper_max", json_number(upper.back().B_upper)}});
    }
    if (wants(cfg, "lower")) {
        const auto& p = measured();
        double min_ratio = kInfinity;
        bool finite = true;
        for (const auto& q : p.points) {
            double lb = lower_bound(data->d_l, data->d_phi, q.R);
            finite = finite && std::isfinite(lb) && lb > 0;
            min_ratio = std::min(min_ratio, q.logM / lb);
        }
        double required = cfg.expect["lower_min_ratio"] ? number(cfg.expect["lower_min_ratio"], "lower_min_ratio") : 0.0;
        verdict("lower", finite && min_ratio > required,
                json{{"min_ratio", json_number(min_ratio)}, {"required", required}});
    }
    if (wants(cfg, "case")) {
        auto diag = dispatch_regular_case(*data);
        json d{{"label", to_string(diag.label)}, {"index", diag.index ? diag.index->str() : "none"},
               {"two_sided", diag.two_sided}, {"notes", diag.notes}};
        bool ok = diag.label != CaseLabel::exceptional;
        if (auto e = cfg.expect["case"]) ok = ok && to_string(diag.label) == e.as<std::string>();
        if (auto e = cfg.expect["index"]) ok = ok && diag.index && *diag.index == Rational::parse(e.as<std::string>());
        verdict("case", ok, d);
    }
    if (wants(cfg, "b38")) {
        auto band = two_sided_band(cfg.H, data->d_l, data->d_phi, radii, cfg.eps);
        double limit = cfg.expect["band_max_spread"] ? number(cfg.expect["band_max_spread"], "band_max_spread") : 10.0;
        verdict("b38", band.spread() <= limit,
                json{{"band", {band.band_min, band.band_max}}, {"spread", band.spread()}, {"limit", limit},
                     {"rho", band.rho}});
    }

    if (profile) {
        std::ofstream out(cfg.out_dir / cfg.growth_csv);
        write_growth_csv(out, *profile);
    }
    if (!reports.empty()) {
        std::ofstream out(cfg.out_dir / cfg.bounds_csv);
        write_bound_csv(out, reports);
    }
    summary["checks"] = checks;
    summary["all_pass"] = all_pass;
    std::ofstream(cfg.out_dir / cfg.summary_json) << summary.dump(2) << "\n";
    std::cout << summary.dump(2) << "\n";
    return all_pass ? kPass : kVerdictFail;
}

// ---------------------------------------------------------------- presets

std::vector<Rational> rationals(const std::vector<std::string>& args, std::size_t from, std::size_t count) {
    if (args.size() < from + count) throw ParseError("expected " + std::to_string(count) + " numeric parameters");
    std::vector<Rational> out;
    for (std::size_t i = from; i < from + count; ++i) out.push_back(Rational::parse(args[i]));
    return out;
}

PowerLogExponents exponents_of(const std::vector<Rational>& v) {
    PowerLogExponents e;
    e.delta_l = v[0];
    e.alpha_l = v[1];
    e.delta_phi = v[2];
    e.alpha_phi = v[3];
    e.gamma_l = v[4];
    e.beta_l = v[5];
    e.gamma_phi = v[6];
    e.beta_phi = v[7];
    return e;
}

json diagnosis_json(const CaseDiagnosis& d) {
    json j{{"label", to_string(d.label)}, {"notes", d.notes}};
    if (d.index) j["index"] = d.index->str();
    if (d.order_bound) j["order_bound"] = d.order_bound->str();
    if (d.bound) j["bound"] = d.bound->str();
    if (d.crossing) j["crossing"] = d.crossing->str();
    if (d.case_constant) j["case_constant"] = *d.case_constant;
    j["two_sided"] = d.two_sided;
    j["independent_of_c"] = d.independent_of_c;
    j["independent_of_d"] = d.independent_of_d;
    return j;
}

int preset(const std::string& key, const std::vector<std::string>& args) {
    json out{{"preset", key}};
    if (key == "b66") {
        auto v = rationals(args, 0, 4);
        out["result"] = diagnosis_json(power_law_row(v[0], v[1], v[2], v[3]));
    } else if (key == "b9" || key == "b7") {
        auto e = exponents_of(rationals(args, 0, 8));
        out["exponents"] = e.str();
        out["result"] = diagnosis_json(key == "b9" ? dispatch_regular_case(e) : monodromy_case_bound(e));
    } else if (key == "b96") {
        auto v = rationals(args, 0, 4);
        bool track = args.size() > 4 && (args[4] == "1" || args[4] == "true" || args[4] == "track_psi");
        auto r = bound_without_tails(v[0], v[1], v[2], v[3], track);
        out["bullet"] = r.bullet;
        out["result"] = diagnosis_json(r.diagnosis);
    } else if (key == "b38") {
        double alpha = args.size() > 0 ? parse_number(args[0]) : 3.0, beta = args.size() > 1 ? parse_number(args[1]) : 1.0;
        double rmin = args.size() > 2 ? parse_number(args[2]) : 1e3, rmax = args.size() > 3 ? parse_number(args[3]) : 1e6;
        auto d = alternating_power_data(alpha, beta);
        auto band = two_sided_band(family_alternating_power(alpha, beta), d.d_l, d.d_phi, geometric_grid(rmin, rmax, 2));
        out["band"] = {band.band_min, band.band_max};
        out["spread"] = band.spread();
        out["rho"] = band.rho;
        json rows = json::array();
        for (std::size_t i = 0; i < band.radii.size(); ++i)
            rows.push_back({{"R", band.radii[i]}, {"logM", band.logM[i]}, {"lower", json_number(band.lower[i])},
                            {"ratio", json_number(band.ratio[i])}});
        out["rows"] = rows;
    } else if (key == "ex-b24" || key == "ex-b36" || key == "ex-b11") {
        auto ex = key == "ex-b24"   ? ExceptionalExample::remainder_dominates
                  : key == "ex-b36" ? ExceptionalExample::case_c_sharpness
                                    : ExceptionalExample::boundary_case;
        std::vector<ExceptionalFixture> fixtures;
        if (args.empty())
            fixtures = exceptional_fixtures(ex);
        else
            fixtures.push_back(make_fixture(ex, exponents_of(rationals(args, 0, 8))));
        json list = json::array();
        for (const auto& f : fixtures) {
            json j{{"branch", f.branch}, {"exponents", f.params.str()}};
            if (f.expected_B) j["expected_B"] = f.expected_B->str();
            if (f.expected_core) j["expected_core"] = f.expected_core->str();
            auto band = fixture_band(f, geometric_grid(1e4, 1e8, 1));
            if (f.expected_B) j["spread_B"] = band.spread_B;
            if (f.expected_core) j["spread_core"] = band.spread_core;
            list.push_back(j);
        }
        out["fixtures"] = list;
    } else if (key == "b79") {
        CriticalJacobiParams p;
        double* fields[] = {&p.sigma, &p.y0, &p.x1, &p.x2, &p.y1, &p.y2};
        for (std::size_t i = 0; i < args.size() && i < 6; ++i) *fields[i] = parse_number(args[i]);
        auto b = critical_jacobi_preset(p, 20000);
        out["expected_growth"] = b.expected_growth.str();
        out["expected_order"] = b.expected_order.str();
        out["notes"] = b.notes;
    } else if (key == "b83") {
        if (args.size() < 3) throw ParseError("b83 needs variant rho logpower [omega]");
        GrowthSpec spec;
        const std::string& v = args[0];
        if (v == "interior") {
            spec.variant = GrowthVariant::interior;
            spec.omega = args.size() > 3 ? parse_number(args[3]) : 0.0;
        } else if (v == "minus2") {
            spec.variant = GrowthVariant::minus_two;
        } else if (v == "plus2") {
            spec.variant = GrowthVariant::plus_two;
        } else {
            throw ParseError("b83 variant must be interior, minus2 or plus2");
        }
        auto b = prescribed_growth_preset(PowerLog(1.0, parse_number(args[1]), parse_number(args[2])), spec);
        out["expected_growth"] = b.expected_growth.str();
        out["expected_order"] = b.expected_order.str();
        auto J = jacobi_from_hamiltonian(b.H, 1002);
        json rows = json::array();
        for (std::size_t n : {10u, 100u, 1000u})
            rows.push_back({{"n", n}, {"b_n", J.offdiagonal[n]}, {"ratio", J.offdiagonal[n] / (*b.offdiagonal_asymptotics)(n)}});
        out["offdiagonal"] = rows;
    } else {
        throw ParseError("unknown preset '" + key + "'; see 'nevbound presets'");
    }
    std::cout << out.dump(2) << "\n";
    return kPass;
}

// Maps exceptions to the documented exit codes.
template <class Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const TrivialBound& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCap;
    } catch (const CapError& e) {
        std::cerr << "error: bound trivial ≳ R (" << e.what() << ")\n";
        return kCap;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const YAML::Exception& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerdictFail;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Growth of Hamburger Hamiltonian monodromy matrices: measurement and bounds"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "Run the checks of a YAML experiment config");
    run_cmd->add_option("config", config_path, "Config file")->required();

    app.add_subcommand("presets", "List casebook presets with their parameters");

    std::string family;
    double rmin = 1e2, rmax = 1e6, eps = 1e-3;
    int ppd = 4;
    std::size_t angles = 64;
    std::string out_path;
    auto* measure_cmd = app.add_subcommand("measure", "Measure log max ||W(z)|| on circles |z| = R");
    measure_cmd->add_option("family", family, "Family expression")->required();
    measure_cmd->add_option("--rmin", rmin, "Smallest radius");
    measure_cmd->add_option("--rmax", rmax, "Largest radius");
    measure_cmd->add_option("--ppd", ppd, "Radii per decade");
    measure_cmd->add_option("--eps", eps, "Truncation tolerance");
    measure_cmd->add_option("--angles", angles, "Initial angles on the half circle");
    measure_cmd->add_option("--out", out_path, "CSV file (default stdout)");

    std::string data_arg, mode = "grid";
    bool with_logM = false, as_json = false;
    auto* bound_cmd = app.add_subcommand("bound", "Evaluate the upper bound for comparison data");
    bound_cmd->add_option("family", family, "Family expression")->required();
    bound_cmd->add_option("data", data_arg, "YAML data file, a data preset or 'd_l; d_phi; c_l; c_phi [; psi]'")
        ->required();
    bound_cmd->add_option("--rmin", rmin, "Smallest radius");
    bound_cmd->add_option("--rmax", rmax, "Largest radius");
    bound_cmd->add_option("--ppd", ppd, "Radii per decade");
    bound_cmd->add_option("--eps", eps, "Truncation tolerance for --measure");
    bound_cmd->add_option("--mode", mode, "grid (infimum over t) or T (at the crossing)")
        ->check(CLI::IsMember({"grid", "T"}));
    bound_cmd->add_flag("--measure", with_logM, "Also measure log M and report the margin");
    bound_cmd->add_flag("--json", as_json, "JSON instead of CSV");

    std::uint64_t seed = 0;
    std::vector<int> only;
    auto* selftest_cmd = app.add_subcommand("selftest", "Run the acceptance suite");
    selftest_cmd->add_option("--seed", seed, "Seed for random draws");
    selftest_cmd->add_option("ids", only, "Criterion ids (default all)");

    std::string preset_key;
    std::vector<std::string> preset_args;
    auto* preset_cmd = app.add_subcommand("preset", "Evaluate a casebook preset");
    preset_cmd->add_option("key", preset_key, "Preset key")->required();
    preset_cmd->add_option("params", preset_args, "Preset parameters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kInvalid;
    }

    if (*run_cmd) return guarded([&] { return run(config_path); });
    if (app.got_subcommand("presets")) {
        for (const auto& p : list_presets()) std::cout << p.key << "\t" << p.signature << "\t" << p.description << "\n";
        return kPass;
    }
    if (*measure_cmd)
        return guarded([&] {
            if (!(rmin > 0 && rmin < rmax) || ppd < 4 || !(eps > 0))
                throw std::invalid_argument("need 0 < rmin < rmax, ppd >= 4 and eps > 0");
            auto p = growth_profile(parse_family(family), geometric_grid(rmin, rmax, ppd), eps, angles);
            if (out_path.empty()) {
                write_growth_csv(std::cout, p);
            } else {
                std::ofstream out(out_path);
                write_growth_csv(out, p);
            }
            std::cerr << "rho " << p.rho << "\n";
            return kPass;
        });
    if (*bound_cmd)
        return guarded([&] {
            if (!(rmin > 0 && rmin < rmax) || ppd < 4) throw std::invalid_argument("need 0 < rmin < rmax and ppd >= 4");
            auto H = parse_family(family);
            auto data = data_from_argument(data_arg, H);
            auto radii = geometric_grid(rmin, rmax, ppd);
            std::vector<BoundReport> reports;
            if (with_logM) {
                for (const auto& row : verify_bound_sandwich(H, data, radii, eps).rows) reports.push_back(row.report);
            } else {
                for (double R : radii)
                    reports.push_back(upper_bound_B(data, R, mode == "T" ? BoundMode::at_T : BoundMode::grid_infimum));
            }
            if (as_json)
                std::cout << bound_report_json(reports) << "\n";
            else
                write_bound_csv(std::cout, reports);
            require_nontrivial(reports);
            return kPass;
        });
    if (*selftest_cmd) {
        AcceptanceOptions options;
        options.seed = seed;
        options.only = only;
        return run_acceptance_report(std::cout, options) ? kPass : kVerdictFail;
    }
    if (*preset_cmd) return guarded([&] { return preset(preset_key, preset_args); });
    return kInvalid;
}
