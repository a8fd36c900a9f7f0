#include "diraclab/cli.hpp"

#include "diraclab/errors.hpp"
#include "diraclab/io.hpp"
#include "diraclab/observables.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace diraclab {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kCommands = {"solve", "converge", "stability", "honeycomb"};

// flag name -> json path
const std::vector<std::pair<std::string, std::string>> kFlags = {
    {"preset", "preset"},
    {"scheme", "scheme"},
    {"eps", "eps"},
    {"h", "h"},
    {"tau", "tau"},
    {"T", "T"},
    {"layout", "layout"},
    {"levels", "levels"},
    {"eps0", "eps0"},
    {"reference.kind", "reference.kind"},
    {"reference.h_e", "reference.h_e"},
    {"reference.tau_e", "reference.tau_e"},
    {"reference.self_check", "reference.self_check"},
    {"error_norm", "error_norm"},
    {"mode_index", "mode_index"},
    {"V0", "V0"},
    {"A0", "A0"},
    {"seed", "seed"},
    {"initial", "initial"},
    {"factors", "factors"},
    {"snapshot_times", "snapshot_times"},
    {"sample_every", "sample_every"},
    {"threads", "threads"},
    {"timing", "timing"},
    {"output_dir", "output_dir"},
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) {
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

void set_path(json& j, const std::string& path, json value) {
    const auto dot = path.find('.');
    if (dot == std::string::npos) {
        j[path] = std::move(value);
        return;
    }
    set_path(j[path.substr(0, dot)], path.substr(dot + 1), std::move(value));
}

// Nested objects flattened into dotted paths, leaves copied.
void merge_into(json& dst, const json& src, const std::string& prefix = "") {
    for (auto it = src.begin(); it != src.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it.value().is_object()) {
            merge_into(dst, it.value(), key);
        } else {
            set_path(dst, key, it.value());
        }
    }
}

json defaults_for(const std::string& command, const std::string& preset) {
    json d;
    d["command"] = command;
    d["preset"] = preset;
    d["scheme"] = json::array({"tsfp"});
    d["eps"] = json::array({1.0, 0.5, 0.25, 0.125, 0.0625});
    d["h"] = json::array({1.0 / 16.0});
    d["tau"] = json::array({0.1});
    d["T"] = 2.0;
    d["layout"] = "product";
    d["levels"] = 4;
    d["eps0"] = 1.0;
    d["reference"] = {{"kind", "tsfp-fine"}, {"h_e", 1.0 / 16.0}, {"tau_e", 1e-5}, {"self_check", false}};
    d["error_norm"] = "l2";
    d["mode_index"] = 8;
    d["V0"] = 1.0;
    d["A0"] = 1.0;
    d["seed"] = 20140603;
    d["initial"] = "preset";
    d["factors"] = json::array({0.9, 2.0});
    d["snapshot_times"] = json::array();
    d["sample_every"] = 1;
    d["threads"] = default_threads();
    d["timing"] = true;
    d["output_dir"] = "dirac-lab-out";
    if (preset == "free-dirac") {
        d["reference"]["kind"] = "analytic";
        d["scheme"] = json::array({"cnfd"});
        d["h"] = json::array({1.0 / 256.0});
        d["tau"] = json::array({1e-4});
    }
    if (command == "stability") {
        d["preset"] = "constant";
        d["scheme"] = json::array({"lffd", "sifd1", "sifd2"});
        d["eps"] = json::array({1.0, 0.25});
        d["h"] = json::array({0.125});
    }
    if (command == "honeycomb" || preset == "honeycomb-2d") {
        d["preset"] = "honeycomb-2d";
        d["eps"] = json::array({1.0, 0.2});
        d["h"] = json::array({1.0 / 16.0});
        d["tau"] = json::array({0.01});
        d["T"] = 4.0;
        d["snapshot_times"] = json::array({0.0, 1.0, 2.0, 4.0});
    }
    if (command == "solve") {
        d["eps"] = json::array({1.0});
        d["snapshot_times"] = json::array();
    }
    return d;
}

double number_of(const json& v, const std::string& field) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_number(v.get<std::string>(), field);
    throw UsageError("field '" + field + "': expected a number");
}

std::vector<double> numbers_of(const json& v, const std::string& field) {
    std::vector<double> out;
    if (v.is_array()) {
        for (const json& e : v) out.push_back(number_of(e, field));
    } else if (v.is_string()) {
        for (const std::string& s : split(v.get<std::string>(), ',')) out.push_back(parse_number(s, field));
    } else {
        out.push_back(number_of(v, field));
    }
    return out;
}

std::vector<std::string> strings_of(const json& v) {
    std::vector<std::string> out;
    if (v.is_array()) {
        for (const json& e : v) out.push_back(e.get<std::string>());
    } else {
        out = split(v.get<std::string>(), ',');
    }
    return out;
}

bool bool_of(const json& v, const std::string& field) {
    if (v.is_boolean()) return v.get<bool>();
    if (v.is_number()) return v.get<double>() != 0.0;
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "true" || s == "1" || s == "yes") return true;
        if (s == "false" || s == "0" || s == "no") return false;
    }
    throw UsageError("field '" + field + "': expected a boolean");
}

// Flag strings become typed JSON so the manifest echo is canonical.
json typed_flag(const std::string& path, const std::string& raw) {
    static const std::vector<std::string> lists = {"eps", "h", "factors", "snapshot_times"};
    static const std::vector<std::string> strs = {"preset", "initial", "layout", "reference.kind", "error_norm", "output_dir"};
    if (path == "scheme") {
        json a = json::array();
        for (const auto& s : split(raw, ',')) a.push_back(s);
        return a;
    }
    if (path == "tau") {
        if (raw == "auto") return "auto";
        json a = json::array();
        for (const auto& s : split(raw, ',')) a.push_back(parse_number(s, "tau"));
        return a;
    }
    if (std::find(lists.begin(), lists.end(), path) != lists.end()) {
        json a = json::array();
        for (const auto& s : split(raw, ',')) a.push_back(parse_number(s, path));
        return a;
    }
    if (std::find(strs.begin(), strs.end(), path) != strs.end()) return raw;
    if (path == "reference.self_check" || path == "timing") return bool_of(json(raw), path);
    if (path == "levels" || path == "mode_index" || path == "threads" || path == "sample_every" || path == "seed") {
        const double v = parse_number(raw, path);
        if (v != std::floor(v)) throw UsageError("field '" + path + "': expected an integer");
        return static_cast<long long>(v);
    }
    return parse_number(raw, path);
}

json load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read config file '" + path + "'");
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (j.contains("config") && j["config"].is_object()) return j["config"];
    return j;
}

} // namespace

double parse_number(const std::string& s, const std::string& field) {
    try {
        const auto slash = s.find('/');
        std::size_t pos = 0;
        if (slash != std::string::npos) {
            const double num = std::stod(s.substr(0, slash), &pos);
            if (pos != slash) throw std::invalid_argument(s);
            const std::string den_s = s.substr(slash + 1);
            const double den = std::stod(den_s, &pos);
            if (pos != den_s.size() || den == 0.0) throw std::invalid_argument(s);
            return num / den;
        }
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError("field '" + field + "': cannot parse '" + s + "' as a number");
    }
}

ParsedConfig config_from_json(const std::string& command, const json& r) {
    ParsedConfig cfg;
    cfg.resolved = r;
    cfg.resolved["command"] = command;
    RunConfig& run = cfg.run;
    run.command = command;
    run.output_dir = r.at("output_dir").get<std::string>();
    const int req_threads = static_cast<int>(number_of(r.at("threads"), "threads"));
    if (req_threads < 1) throw UsageError("field 'threads': must be positive");
    run.threads = std::min(req_threads, default_threads() > 1 ? default_threads() : req_threads);
    run.timing = bool_of(r.at("timing"), "timing");
    run.factors = numbers_of(r.at("factors"), "factors");
    run.snapshot_times = numbers_of(r.at("snapshot_times"), "snapshot_times");
    run.sample_every = static_cast<long>(number_of(r.at("sample_every"), "sample_every"));
    if (run.sample_every < 1) throw UsageError("field 'sample_every': must be >= 1");

    ExperimentSpec& s = cfg.spec;
    s.problem = r.at("preset").get<std::string>();
    s.problem_options.mode_index = static_cast<int>(number_of(r.at("mode_index"), "mode_index"));
    s.problem_options.V0 = number_of(r.at("V0"), "V0");
    s.problem_options.A0 = number_of(r.at("A0"), "A0");
    s.problem_options.seed = static_cast<unsigned long>(number_of(r.at("seed"), "seed"));
    const std::string initial = r.at("initial").get<std::string>();
    if (initial != "preset" && initial != "zero") {
        throw UsageError("field 'initial': expected 'preset' or 'zero', got '" + initial + "'");
    }
    s.problem_options.zero_initial = initial == "zero";
    Problem problem;
    try {
        problem = make_problem(s.problem, s.problem_options);
    } catch (const ConfigError& e) {
        throw UsageError(std::string("field 'preset': ") + e.what());
    }
    for (const std::string& name : strings_of(r.at("scheme"))) {
        try {
            s.schemes.push_back(parse_scheme(name));
        } catch (const ConfigError& e) {
            throw UsageError(std::string("field 'scheme': ") + e.what());
        }
    }
    s.eps = numbers_of(r.at("eps"), "eps");
    for (double e : s.eps) {
        if (!(e > 0.0 && e <= 1.0)) throw UsageError("field 'eps': values must lie in (0, 1]");
    }
    s.h = numbers_of(r.at("h"), "h");
    s.T = number_of(r.at("T"), "T");
    if (!(s.T > 0.0)) throw UsageError("field 'T': must be positive");
    const json& tau = r.at("tau");
    if (tau.is_string() && tau.get<std::string>() == "auto") {
        s.tau_auto = true;
    } else {
        s.tau = numbers_of(tau, "tau");
        for (double t : s.tau) {
            if (!(t > 0.0)) throw UsageError("field 'tau': values must be positive");
            if (t > s.T * (1.0 + 1e-12)) throw UsageError("field 'tau': tau exceeds T");
        }
    }
    const std::string layout = r.at("layout").get<std::string>();
    if (layout == "product") {
        s.layout = CellLayout::product;
    } else if (layout == "zip") {
        s.layout = CellLayout::zip;
    } else if (layout == "coupled") {
        s.layout = CellLayout::coupled;
    } else {
        throw UsageError("field 'layout': expected product, zip or coupled");
    }
    s.coupled_levels = static_cast<int>(number_of(r.at("levels"), "levels"));
    s.coupled_eps0 = number_of(r.at("eps0"), "eps0");
    const json& ref = r.at("reference");
    const std::string kind = ref.at("kind").get<std::string>();
    if (kind == "analytic") {
        s.reference.kind = ReferenceKind::analytic;
    } else if (kind == "tsfp-fine") {
        s.reference.kind = ReferenceKind::tsfp_fine;
    } else {
        throw UsageError("field 'reference.kind': expected analytic or tsfp-fine");
    }
    s.reference.h_e = number_of(ref.at("h_e"), "reference.h_e");
    s.reference.tau_e = number_of(ref.at("tau_e"), "reference.tau_e");
    s.reference.self_check = bool_of(ref.at("self_check"), "reference.self_check");
    const std::string norm = r.at("error_norm").get<std::string>();
    if (norm == "l2") {
        s.norm = ErrorNormKind::l2;
    } else if (norm == "l1-density") {
        s.norm = ErrorNormKind::l1_density;
    } else {
        throw UsageError("field 'error_norm': expected l2 or l1-density");
    }
    if (s.reference.kind == ReferenceKind::analytic && !problem.analytic_reference) {
        throw UsageError("field 'reference.kind': analytic reference needs zero potentials");
    }
    for (double h : s.h) {
        try {
            (void)problem.mesh(h);
        } catch (const ArgumentError& e) {
            throw UsageError(std::string("field 'h': ") + e.what());
        }
    }
    if (s.reference.kind == ReferenceKind::tsfp_fine && (command == "converge")) {
        try {
            (void)problem.mesh(s.reference.h_e);
        } catch (const ArgumentError& e) {
            throw UsageError(std::string("field 'reference.h_e': ") + e.what());
        }
        if (s.T / s.reference.tau_e - std::round(s.T / s.reference.tau_e) > 1e-9 * (s.T / s.reference.tau_e)) {
            throw UsageError("field 'reference.tau_e': must divide T");
        }
    }
    if (command == "converge" || command == "solve") {
        try {
            const auto cells = expand_cells(s);
            for (const Cell& c : cells) {
                const double q = s.T / c.tau;
                if (std::abs(q - std::round(q)) > 1e-12 * q) {
                    throw UsageError("field 'tau': " + format_double(c.tau) + " does not divide T");
                }
                (void)problem.mesh(c.h);
            }
            if (command == "solve" && cells.size() != 1) {
                throw UsageError("solve needs exactly one scheme, eps, h and tau");
            }
        } catch (const UsageError&) {
            throw;
        } catch (const ArgumentError& e) {
            throw UsageError(std::string("field 'h': ") + e.what());
        } catch (const ConfigError& e) {
            throw UsageError(std::string("field 'tau': ") + e.what());
        }
    }
    return cfg;
}

ParsedConfig parse_config(const std::vector<std::string>& args) {
    if (args.empty()) throw UsageError("missing command (solve, converge, stability, honeycomb)");
    const std::string command = args[0];
    if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end()) {
        throw UsageError("unknown command '" + command + "'");
    }
    CLI::App app{"dirac-lab " + command};
    app.set_help_flag();
    std::string config_path;
    app.add_option("--config", config_path, "JSON configuration file (or a previous manifest.json)");
    std::map<std::string, std::string> values;
    for (const auto& [flag, path] : kFlags) {
        app.add_option("--" + flag, values[path]);
    }
    std::vector<std::string> rest(args.begin() + 1, args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    json file = json::object();
    if (!config_path.empty()) file = load_config_file(config_path);

    std::string preset;
    if (app.count("--preset") > 0) {
        preset = values["preset"];
    } else if (file.contains("preset")) {
        preset = file["preset"].get<std::string>();
    } else {
        preset = command == "honeycomb" ? "honeycomb-2d" : command == "stability" ? "constant" : "gaussian-1d";
    }
    json resolved = defaults_for(command, preset);
    merge_into(resolved, file);
    for (const auto& [flag, path] : kFlags) {
        if (app.count("--" + flag) > 0) set_path(resolved, path, typed_flag(path, values[path]));
    }
    ParsedConfig cfg = config_from_json(command, resolved);
    cfg.run.config_path = config_path;
    return cfg;
}

// ---------------------------------------------------------------------------------------
// commands

namespace {

void write_manifest(const ParsedConfig& cfg, const json& extra) {
    json m;
    m["config"] = cfg.resolved;
    m["library_version"] = library_version();
    for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();
    write_json(fs::path(cfg.run.output_dir) / "manifest.json", m);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int solve_command(const ParsedConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentSpec& s = cfg.spec;
    const Cell cell = expand_cells(s).at(0);
    const Problem problem = make_problem(s.problem, s.problem_options);
    const Mesh mesh = problem.mesh(cell.h);
    fs::create_directories(cfg.run.output_dir);
    SimParams p(cell.eps, cell.tau, s.T, mesh, problem.potentials, problem.initial(mesh));
    auto integ = make_integrator(cell.scheme, p);

    std::ofstream csv(fs::path(cfg.run.output_dir) / "observables.csv");
    csv << "t,mass,energy\n";
    const bool fd = is_fdtd(cell.scheme);
    auto emit = [&]() {
        const SpinorField& u = integ->current();
        csv << format_double(integ->time()) << ',' << format_double(mass(u)) << ',';
        if (problem.potentials.time_independent) {
            csv << format_double(fd ? discrete_energy_fdtd(u, problem.potentials, cell.eps)
                                    : energy_continuous(u, problem.potentials, cell.eps));
        }
        csv << '\n';
    };
    emit();
    json extra;
    extra["scheme"] = to_string(cell.scheme);
    extra["tau"] = cell.tau;
    int code = 0;
    try {
        const long N = p.steps();
        while (integ->steps_taken() < N) {
            integ->step();
            if (integ->steps_taken() % cfg.run.sample_every == 0 || integ->steps_taken() == N) emit();
        }
        write_field_snapshot(fs::path(cfg.run.output_dir) / "snapshots", "final", integ->current(), integ->time());
        extra["status"] = "ok";
    } catch (const BlowUpError& e) {
        std::cerr << "dirac-lab: unstable, blow-up at step " << e.step() << '\n';
        extra["status"] = "unstable";
        extra["blowup_step"] = e.step();
        code = 2;
    }
    if (cfg.run.timing) extra["wall_time"] = seconds_since(t0);
    write_manifest(cfg, extra);
    return code;
}

int converge_command(const ParsedConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    fs::create_directories(cfg.run.output_dir);
    const std::vector<ConvergenceRecord> records = run_convergence(cfg.spec, cfg.run.threads);
    std::ofstream csv(fs::path(cfg.run.output_dir) / "results.csv");
    write_results_csv(csv, records, cfg.run.timing);
    json extra;
    extra["cells"] = records.size();
    if (cfg.run.timing) extra["wall_time"] = seconds_since(t0);
    write_manifest(cfg, extra);
    write_results_csv(std::cout, records, cfg.run.timing);
    return 0;
}

int stability_command(const ParsedConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    fs::create_directories(cfg.run.output_dir);
    std::ofstream csv(fs::path(cfg.run.output_dir) / "stability.csv");
    csv << "scheme,eps,h,factor,tau,status,blowup_step\n";
    StabilityScanOptions opt;
    opt.V0 = cfg.spec.problem_options.V0;
    opt.A0 = cfg.spec.problem_options.A0;
    opt.seed = cfg.spec.problem_options.seed;
    opt.T = cfg.spec.T;
    for (Scheme sc : cfg.spec.schemes) {
        for (double eps : cfg.spec.eps) {
            for (double h : cfg.spec.h) {
                for (const StabilityOutcome& o : stability_scan(sc, eps, h, cfg.run.factors, opt)) {
                    std::ostringstream row;
                    row << to_string(sc) << ',' << format_double(eps) << ',' << format_double(h) << ','
                        << format_double(o.factor) << ',' << format_double(o.tau) << ','
                        << (o.stable ? "stable" : "unstable") << ',' << o.blowup_step << '\n';
                    csv << row.str();
                    std::cout << row.str();
                }
            }
        }
    }
    json extra;
    if (cfg.run.timing) extra["wall_time"] = seconds_since(t0);
    write_manifest(cfg, extra);
    return 0;
}

int honeycomb_command(const ParsedConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path out(cfg.run.output_dir);
    fs::create_directories(out);
    const Problem problem = honeycomb_problem();
    std::ofstream csv(out / "honeycomb.csv");
    csv << "eps,t,mass,energy\n";
    json extra;
    json drift = json::object();
    for (double eps : cfg.spec.eps) {
        const Mesh mesh = problem.mesh(cfg.spec.h.at(0));
        const HoneycombResult r =
            run_honeycomb_2d(mesh.grid2d(), eps, cfg.spec.tau.at(0), cfg.spec.T, cfg.run.snapshot_times);
        for (std::size_t i = 0; i < r.reports.size(); ++i) {
            const ObservableReport& rep = r.reports[i];
            csv << format_double(eps) << ',' << format_double(rep.t) << ',' << format_double(rep.mass) << ','
                << (rep.energy ? format_double(*rep.energy) : std::string()) << '\n';
            const DensitySnapshot& snap = r.snapshots[i];
            for (int comp = 1; comp <= 2; ++comp) {
                std::ostringstream stem;
                stem << "rho" << comp << "_eps" << eps << "_t" << snap.t;
                json meta;
                meta["t"] = snap.t;
                meta["eps"] = eps;
                meta["component"] = comp;
                meta["grid"] = {{"Mx", r.grid.x().M()}, {"My", r.grid.y().M()}, {"a", r.grid.x().a()},
                                {"b", r.grid.x().b()}, {"order", "row-major, x slowest"}};
                write_snapshot(out / "snapshots", stem.str(), comp == 1 ? snap.rho1 : snap.rho2, meta);
            }
        }
        drift[format_double(eps)] = r.max_mass_drift;
        std::cout << "eps " << eps << ": max relative mass drift " << format_double(r.max_mass_drift) << '\n';
    }
    extra["max_mass_drift"] = drift;
    if (cfg.run.timing) extra["wall_time"] = seconds_since(t0);
    write_manifest(cfg, extra);
    return 0;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        std::cout << "usage: dirac-lab <solve|converge|stability|honeycomb> [--config file.json] [--flag value ...]\n"
                     "flags: --preset --scheme --eps --h --tau --T --layout --levels --eps0\n"
                     "       --reference.kind --reference.h_e --reference.tau_e --reference.self_check\n"
                     "       --error_norm --mode_index --V0 --A0 --seed --initial --factors --snapshot_times\n"
                     "       --sample_every --threads --timing --output_dir\n";
        return args.empty() ? 1 : 0;
    }
    try {
        const ParsedConfig cfg = parse_config(args);
        if (cfg.run.command == "solve") return solve_command(cfg);
        if (cfg.run.command == "converge") return converge_command(cfg);
        if (cfg.run.command == "stability") return stability_command(cfg);
        return honeycomb_command(cfg);
    } catch (const UsageError& e) {
        std::cerr << "dirac-lab: usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "dirac-lab: error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace diraclab
