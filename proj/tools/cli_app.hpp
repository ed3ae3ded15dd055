#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <jacobi_geo/jacobi_geo.hpp>

namespace jgeo::cli {

enum ExitCode { Ok = 0, ConfigError = 1, DomainExit = 2, VerificationFailed = 3 };

// config errors carry the offending field name in the message
struct BadConfig : Error {
    using Error::Error;
};

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline double parse_number(const std::string& field, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw BadConfig("field '" + field + "': cannot parse '" + text + "' as a number");
    }
}

// "a=1,b=2" items, possibly repeated
inline std::map<std::string, double> parse_assignments(const std::vector<std::string>& items) {
    std::map<std::string, double> out;
    for (const auto& item : items) {
        std::stringstream ss(item);
        std::string part;
        while (std::getline(ss, part, ',')) {
            if (part.empty()) continue;
            const auto eq = part.find('=');
            if (eq == std::string::npos) throw BadConfig("field '" + part + "': expected key=value");
            const std::string key = part.substr(0, eq);
            if (out.count(key)) throw BadConfig("field '" + key + "': given twice");
            out[key] = parse_number(key, part.substr(eq + 1));
        }
    }
    return out;
}

inline ModelParams parse_params(SpaceId s, const std::vector<std::string>& items) {
    ModelParams p;
    std::map<std::string, double*> slot{{"alpha", &p.alpha}, {"beta", &p.beta}, {"gamma", &p.gamma}, {"delta", &p.delta},
                                        {"a1", &p.a1},       {"a2", &p.a2},     {"a3", &p.a3}};
    auto kv = parse_assignments(items);
    if (kv.count("k")) {
        if (kv.count("alpha")) throw BadConfig("field 'k': conflicts with alpha");
        kv["alpha"] = kv["k"] / 2;
        kv.erase("k");
    }
    if (kv.count("nu")) {
        if (kv.count("gamma")) throw BadConfig("field 'nu': conflicts with gamma");
        kv["gamma"] = kv["nu"];
        kv.erase("nu");
    }
    for (const auto& [key, v] : kv) {
        auto it = slot.find(key);
        if (it == slot.end()) throw BadConfig("field '" + key + "': unknown parameter");
        *it->second = v;
    }
    try {
        return derive_params(p, s);
    } catch (const BadParams& e) {
        throw BadConfig(std::string("params: ") + e.what());
    }
}

// coordinates are required, velocities v<name> default to zero
inline GeodesicState parse_state(SpaceId s, const std::vector<std::string>& items, bool with_velocity) {
    const auto& names = coord_names(s);
    auto kv = parse_assignments(items);
    const auto n = static_cast<Eigen::Index>(names.size());
    GeodesicState st{{s, Vec::Zero(n)}, Vec::Zero(n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        const std::string& c = names[static_cast<std::size_t>(i)];
        auto it = kv.find(c);
        if (it == kv.end()) throw BadConfig("field '" + c + "': missing coordinate");
        st.point.coords[i] = it->second;
        kv.erase(it);
        if (with_velocity) {
            auto iv = kv.find("v" + c);
            if (iv != kv.end()) {
                st.velocity[i] = iv->second;
                kv.erase(iv);
            }
        }
    }
    if (!kv.empty()) throw BadConfig("field '" + kv.begin()->first + "': not a coordinate of " + space_name(s));
    try {
        validate(st.point);
    } catch (const DomainViolation& e) {
        throw BadConfig("field '" + e.coordinate + "': " + e.what());
    }
    return st;
}

inline SpaceId parse_space_field(const std::string& name) {
    try {
        return parse_space(name);
    } catch (const Error& e) {
        throw BadConfig("field 'space': " + std::string(e.what()));
    }
}

inline std::string space_help() {
    std::string s = "space (kebab or snake case):";
    for (SpaceId id : all_spaces) {
        s += "\n    " + space_name(id) + " (";
        const auto& n = coord_names(id);
        for (std::size_t i = 0; i < n.size(); ++i) s += (i ? ", " : "") + n[i];
        s += ")";
    }
    return s;
}

inline std::uint64_t default_seed() {
    const char* env = std::getenv("GEO_SEED");
    if (!env || !*env) return 0;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        throw BadConfig("field 'GEO_SEED': cannot parse '" + std::string(env) + "'");
    }
}

// ---- integrate ----

struct IntegrateArgs {
    std::string space, method = "rk4", provider = "auto", format = "csv", output = "-";
    std::vector<std::string> params, init;
    IntegratorConfig cfg;
};

inline std::vector<std::string> trajectory_columns(SpaceId s) {
    std::vector<std::string> cols{"t"};
    for (const auto& c : coord_names(s)) cols.push_back(c);
    for (const auto& c : coord_names(s)) cols.push_back("v" + c);
    cols.push_back("energy");
    return cols;
}

inline void write_csv(std::ostream& os, SpaceId s, const CurveSample& c) {
    const auto cols = trajectory_columns(s);
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (std::size_t r = 0; r < c.times.size(); ++r) {
        os << num(c.times[r]);
        for (double x : c.states[r].point.coords) os << "," << num(x);
        for (double v : c.states[r].velocity) os << "," << num(v);
        os << "," << num(c.energy[r]) << "\n";
    }
    if (c.domain_exit) os << "# domain_exit t=" << num(c.exit_time) << "\n";
}

inline void write_json(std::ostream& os, SpaceId s, const CurveSample& c) {
    nlohmann::ordered_json j;
    j["space"] = space_name(s);
    j["columns"] = trajectory_columns(s);
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < c.times.size(); ++r) {
        std::vector<double> row{c.times[r]};
        for (double x : c.states[r].point.coords) row.push_back(x);
        for (double v : c.states[r].velocity) row.push_back(v);
        row.push_back(c.energy[r]);
        rows.push_back(row);
    }
    j["rows"] = rows;
    j["domain_exit"] = c.domain_exit;
    j["exit_time"] = c.domain_exit ? nlohmann::ordered_json(c.exit_time) : nlohmann::ordered_json(nullptr);
    os << j.dump(2) << "\n";
}

inline Provider parse_provider(const std::string& p) {
    if (p == "auto") return Provider::Auto;
    if (p == "analytic") return Provider::Analytic;
    if (p == "numeric") return Provider::Numeric;
    throw BadConfig("field 'provider': expected auto, analytic or numeric");
}

inline int cmd_integrate(IntegrateArgs a, std::ostream& out) {
    const SpaceId s = parse_space_field(a.space);
    const ModelParams mp = parse_params(s, a.params);
    const GeodesicState s0 = parse_state(s, a.init, true);
    if (a.method == "rk4") a.cfg.method = Method::RK4Fixed;
    else if (a.method == "rkf45") a.cfg.method = Method::RKF45Adaptive;
    else throw BadConfig("field 'method': expected rk4 or rkf45");
    if (a.format != "csv" && a.format != "json") throw BadConfig("field 'format': expected csv or json");
    const Provider pr = parse_provider(a.provider);
    try {
        check_config(a.cfg);
    } catch (const BadParams& e) {
        throw BadConfig(std::string("integrator: ") + e.what());
    }
    if (pr == Provider::Analytic) christoffel(s, mp, s0.point, pr);  // surfaces Unsupported before integrating
    const CurveSample c = integrate(s, mp, s0, a.cfg, pr);
    std::ofstream file;
    std::ostream* os = &out;
    if (a.output != "-") {
        file.open(a.output);
        if (!file) throw BadConfig("field 'output': cannot open '" + a.output + "'");
        os = &file;
    }
    if (a.format == "csv") write_csv(*os, s, c);
    else write_json(*os, s, c);
    return c.domain_exit ? DomainExit : Ok;
}

// ---- christoffel ----

struct ChristoffelArgs {
    std::string space;
    std::vector<std::string> params, point;
    bool numeric = false;
};

inline int cmd_christoffel(const ChristoffelArgs& a, std::ostream& out) {
    const SpaceId s = parse_space_field(a.space);
    const ModelParams mp = parse_params(s, a.params);
    const ChartPoint p = parse_state(s, a.point, false).point;
    const auto& names = coord_names(s);
    auto label = [&](int i, int j, int k) {
        return "Gamma^" + names[static_cast<std::size_t>(i)] + "_" + names[static_cast<std::size_t>(j)] + names[static_cast<std::size_t>(k)];
    };
    std::optional<ChristoffelTable> an;
    try {
        an = christoffel(s, mp, p, Provider::Analytic);
    } catch (const Unsupported&) {
        if (!a.numeric) throw;
    }
    std::optional<ChristoffelTable> nu;
    if (a.numeric) nu = christoffel_numeric(s, mp, p);
    const int n = dimension(s);
    std::vector<std::pair<std::string, std::string>> lines;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = j; k < n; ++k) {
                const double key = an ? (*an)(i, j, k) : (*nu)(i, j, k);
                if (std::abs(key) <= 1e-12) continue;
                std::string line = label(i, j, k) + " = ";
                if (!nu) line += num(key);
                else if (an) line += num((*an)(i, j, k)) + " " + num((*nu)(i, j, k)) + " " + num(std::abs((*an)(i, j, k) - (*nu)(i, j, k)));
                else line += "nan " + num((*nu)(i, j, k)) + " nan";
                lines.emplace_back(label(i, j, k), line);
            }
    std::sort(lines.begin(), lines.end());
    if (a.numeric) out << "# symbol = analytic numeric abs_diff\n";
    for (const auto& l : lines) out << l.second << "\n";
    return Ok;
}

// ---- verify ----

struct VerifyArgs {
    std::string suite;
    std::optional<std::uint64_t> seed;
    int samples = 0;
    std::string output = "-";
};

inline std::string report_json(const verify::Report& r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["seed"] = r.seed;
    auto checks = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["max_residual"] = c.max_residual;
        cj["tolerance"] = c.tolerance;
        cj["pass"] = c.pass;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    j["notes"] = r.notes;
    j["pass"] = r.all_pass();
    return j.dump(2) + "\n";
}

inline int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const auto& names = verify::suite_names();
    if (std::find(names.begin(), names.end(), a.suite) == names.end()) throw BadConfig("field 'suite': unknown suite '" + a.suite + "'");
    if (a.samples < 0) throw BadConfig("field 'samples': must be non-negative");
    verify::Options o;
    o.seed = a.seed ? *a.seed : default_seed();
    o.samples = a.samples;
    const verify::Report r = verify::run_suite(a.suite, o);
    const std::string text = report_json(r);
    if (a.output == "-") out << text;
    else {
        std::ofstream f(a.output);
        if (!f) throw BadConfig("field 'output': cannot open '" + a.output + "'");
        f << text;
    }
    return r.all_pass() ? Ok : VerificationFailed;
}

// ---- transform ----

struct TransformArgs {
    std::string map, direction = "forward";
    std::vector<double> values;
};

inline std::vector<double> apply_transform(const std::string& map, bool forward, const std::vector<double>& in) {
    auto need = [&](std::size_t n) {
        if (in.size() != n) throw BadConfig("field 'values': " + map + " expects " + std::to_string(n) + " numbers, got " + std::to_string(in.size()));
    };
    if (map == "iwasawa") {
        if (forward) {
            need(4);
            const Iwasawa w = iwasawa(in[0], in[1], in[2], in[3]);
            return {w.x, w.y, w.theta};
        }
        need(3);
        auto m = iwasawa_inv(in[0], in[1], in[2]);
        return {m.begin(), m.end()};
    }
    MapName id;
    try {
        id = parse_map(map);
    } catch (const BadParams& e) {
        throw BadConfig("field 'map': " + std::string(e.what()));
    }
    const ChartMap m = chart_map(id);
    need(static_cast<std::size_t>(m.dim));
    Vec x = Eigen::Map<const Vec>(in.data(), static_cast<Eigen::Index>(in.size()));
    Vec y = forward ? m.forward(x) : m.inverse(x);
    return {y.data(), y.data() + y.size()};
}

inline std::string transform_help() {
    std::string s = "map name: iwasawa (a,b,c,d <-> x,y,theta)";
    for (MapName m : all_maps()) {
        const ChartMap c = chart_map(m);
        std::string in, o;
        for (std::size_t i = 0; i < c.in_names.size(); ++i) in += (i ? "," : "") + c.in_names[i];
        for (std::size_t i = 0; i < c.out_names.size(); ++i) o += (i ? "," : "") + c.out_names[i];
        s += "\n    " + c.name + " (" + in + " -> " + o + ")";
    }
    return s;
}

// values come from the command line, or one point per stdin line when none are given
inline int cmd_transform(const TransformArgs& a, std::istream& in, std::ostream& out) {
    if (a.direction != "forward" && a.direction != "inverse") throw BadConfig("field 'direction': expected forward or inverse");
    const bool fwd = a.direction == "forward";
    auto emit = [&](const std::vector<double>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << num(r[i]);
        out << "\n";
    };
    if (!a.values.empty()) {
        emit(apply_transform(a.map, fwd, a.values));
        return Ok;
    }
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::stringstream ss(line);
        std::vector<double> v;
        std::string tok;
        while (ss >> tok) v.push_back(parse_number("values", tok));
        emit(apply_transform(a.map, fwd, v));
    }
    return Ok;
}

// ---- entry point ----

inline int run(int argc, const char* const* argv, std::istream& in = std::cin, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Geodesics, Christoffel symbols and geodesic mappings on homogeneous spaces of the real Jacobi group"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "0.1.0");

    IntegrateArgs ia;
    auto* integ = app.add_subcommand("integrate", "integrate a geodesic and write the trajectory as CSV or JSON");
    integ->add_option("--space,-s", ia.space, space_help())->required();
    integ->add_option("--params,-p", ia.params, "parameters: alpha, beta, gamma, delta, k, nu, a1, a2, a3 (key=value, comma separated)");
    integ->add_option("--init,-i", ia.init, "initial point and velocity, e.g. x=0,y=1,vx=0,vy=1")->required();
    integ->add_option("--method", ia.method, "rk4 or rkf45")->capture_default_str();
    integ->add_option("--step", ia.cfg.step, "fixed step, or initial step for rkf45")->capture_default_str();
    integ->add_option("--t-end,-t", ia.cfg.t_end, "final time")->capture_default_str();
    integ->add_option("--atol", ia.cfg.atol, "absolute tolerance (rkf45)")->capture_default_str();
    integ->add_option("--rtol", ia.cfg.rtol, "relative tolerance (rkf45)")->capture_default_str();
    integ->add_option("--max-steps", ia.cfg.max_steps, "step limit")->capture_default_str();
    integ->add_option("--provider", ia.provider, "Christoffel provider: auto, analytic or numeric")->capture_default_str();
    integ->add_option("--format,-f", ia.format, "csv or json")->capture_default_str();
    integ->add_option("--output,-o", ia.output, "output path, - for stdout")->capture_default_str();

    ChristoffelArgs ca;
    auto* chr = app.add_subcommand("christoffel", "print the nonzero Christoffel symbols at a point");
    chr->add_option("--space,-s", ca.space, space_help())->required();
    chr->add_option("--params,-p", ca.params, "parameters (key=value, comma separated)");
    chr->add_option("--point,-x", ca.point, "coordinates, e.g. x=0,y=1,p=0,q=0")->required();
    chr->add_flag("--numeric", ca.numeric, "also print the finite-difference table and the difference");

    VerifyArgs va;
    std::uint64_t seed = 0;
    auto* ver = app.add_subcommand("verify", "run a property suite and print a JSON report");
    ver->add_option("suite", va.suite, "dets, christoffels, systems, closed-forms, integration, mappings, reductions, transforms or all")
        ->required();
    auto* seed_opt = ver->add_option("--seed", seed, "random seed (default GEO_SEED or 0)");
    ver->add_option("--samples,-n", va.samples, "override the per-suite sample count (0 keeps defaults)")->capture_default_str();
    ver->add_option("--output,-o", va.output, "report path, - for stdout")->capture_default_str();

    TransformArgs ta;
    auto* tr = app.add_subcommand("transform", "apply a chart map to numbers from the command line or stdin");
    tr->add_option("map", ta.map, transform_help())->required();
    tr->add_option("values", ta.values, "input coordinates; read from stdin when omitted");
    tr->add_option("--direction,-d", ta.direction, "forward or inverse")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Ok : ConfigError;
    }
    try {
        if (*integ) return cmd_integrate(ia, out);
        if (*chr) return cmd_christoffel(ca, out);
        if (*ver) {
            if (*seed_opt) va.seed = seed;
            return cmd_verify(va, out);
        }
        if (*tr) return cmd_transform(ta, in, out);
    } catch (const BadConfig& e) {
        err << "error: " << e.what() << "\n";
        return ConfigError;
    } catch (const Unsupported& e) {
        err << "error: " << e.what() << " (use --numeric)\n";
        return ConfigError;
    } catch (const DomainViolation& e) {
        err << "error: field '" << e.coordinate << "': " << e.what() << "\n";
        return ConfigError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return ConfigError;
    }
    return ConfigError;
}

}  // namespace jgeo::cli
