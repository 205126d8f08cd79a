#include "paramnet/cli.hpp"

#include "paramnet/direction.hpp"
#include "paramnet/dynamics.hpp"
#include "paramnet/noise.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

namespace paramnet::cli {

using nlohmann::json;

namespace {

constexpr const char* kToolName = "paramnet";
constexpr const char* kToolVersion = "0.1.0";

std::string fmt(double x) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::system_error(errno, std::generic_category(), "cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::system_error(errno, std::generic_category(), "cannot write " + path);
    out << data;
}

std::string iso_timestamp() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

const char* command_name(RunConfig::Command c) {
    switch (c) {
        case RunConfig::Command::compile: return "compile";
        case RunConfig::Command::scatter: return "scatter";
        case RunConfig::Command::gain: return "gain";
        case RunConfig::Command::noise: return "noise";
        case RunConfig::Command::squeeze: return "squeeze";
        case RunConfig::Command::stability: return "stability";
        case RunConfig::Command::direction: return "direction";
        case RunConfig::Command::gbw: return "gbw";
        case RunConfig::Command::rwa_compare: return "rwa-compare";
        case RunConfig::Command::eliminate: return "eliminate";
    }
    return "?";
}

// Applies one sweep value at a dotted path like "drives.0.lambda" inside the
// parsed document, then reparses.
void set_single_path(json& doc, const std::string& path, double value) {
    json* cur = &doc;
    std::istringstream is(path);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(is, part, '.')) parts.push_back(part);
    if (parts.empty()) throw std::invalid_argument("empty sweep path");
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        const auto& p = parts[i];
        if (cur->is_array()) {
            std::size_t idx = std::stoul(p);
            if (idx >= cur->size()) throw std::invalid_argument("sweep path index out of range: " + p);
            cur = &(*cur)[idx];
        } else if (cur->is_object() && cur->contains(p)) {
            cur = &(*cur)[p];
        } else {
            throw std::invalid_argument("sweep path does not resolve: '" + p + "'");
        }
    }
    const auto& last = parts.back();
    json* slot = nullptr;
    if (cur->is_array()) {
        std::size_t idx = std::stoul(last);
        if (idx >= cur->size()) throw std::invalid_argument("sweep path index out of range: " + last);
        slot = &(*cur)[idx];
    } else if (cur->is_object() && cur->contains(last)) {
        slot = &(*cur)[last];
    } else {
        throw std::invalid_argument("sweep path does not resolve: '" + last + "'");
    }
    if (!slot->is_number())
        throw std::invalid_argument("sweep path does not name a numeric field");
    *slot = value;
}

// a sweep target may name several comma-separated paths that move together
void set_path(json& doc, const std::string& paths, double value) {
    std::istringstream is(paths);
    std::string one;
    bool any = false;
    while (std::getline(is, one, ',')) {
        if (one.empty()) continue;
        set_single_path(doc, one, value);
        any = true;
    }
    if (!any) throw std::invalid_argument("empty sweep path");
}

struct LoadedNetwork {
    NetworkSpec spec;
    frames::EffectiveSystem system;
    dynamics::StateSpaceModel model;
    std::vector<Diagnostic> diagnostics;
};

LoadedNetwork load(const std::string& text) {
    LoadedNetwork out;
    out.spec = parse_network(text);
    out.diagnostics = validate(out.spec);
    if (has_errors(out.diagnostics))
        throw ParseError("network validation failed:\n" + join_messages(out.diagnostics), 0, 0);
    auto rwa = frames::compile_effective(out.spec);
    for (auto& w : rwa.warnings) out.diagnostics.push_back(w);
    out.system = std::move(rwa.system);
    out.model = dynamics::build_state_space(out.system);
    return out;
}

double kappa_scale(const NetworkSpec& spec) {
    double k = 0.0;
    for (const auto& m : spec.modes) k = std::max(k, m.kappa_port);
    return k > 0 ? k : 1.0;
}

Eigen::VectorXd resolve_grid(const RunConfig& cfg, const NetworkSpec& spec,
                             json& resolved) {
    double lo = cfg.omega_min, hi = cfg.omega_max;
    if (std::isnan(lo) || std::isnan(hi)) {
        double k = kappa_scale(spec);
        lo = -2.5 * k;
        hi = 2.5 * k;
        resolved["omega_min"] = lo;
        resolved["omega_max"] = hi;
    }
    if (!(hi > lo)) throw std::invalid_argument("omega range is empty");
    return scattering::omega_grid(lo, hi, cfg.points);
}

scattering::PathEnd default_signal_end(const LoadedNetwork& net) {
    for (const auto& m : net.spec.modes)
        if (m.role_hint == RoleHint::signal && m.kappa_port > 0) return {m.label, -1, false};
    for (const auto& m : net.spec.modes)
        if (m.kappa_port > 0) return {m.label, -1, false};
    throw std::invalid_argument("network has no ports");
}

std::string port_label(const dynamics::StateSpaceModel& m, int k) {
    return m.labels[m.ports[k]];
}

void emit(const RunConfig& cfg, const std::string& payload, const json& resolved,
          const std::string& input_text) {
    if (cfg.output_path.empty()) {
        std::cout << payload;
        return;
    }
    write_file(cfg.output_path, payload);
    json manifest;
    manifest["tool"] = kToolName;
    manifest["version"] = kToolVersion;
    manifest["command"] = command_name(cfg.command);
    manifest["input"] = cfg.input_path;
    manifest["input_sha256"] = sha256_hex(input_text);
    manifest["output"] = cfg.output_path;
    manifest["resolved_defaults"] = resolved;
    manifest["generated_at"] = iso_timestamp();
    write_file(cfg.output_path + ".manifest.json", manifest.dump(2) + "\n");
}

json complex_matrix_json(const Eigen::MatrixXcd& M) {
    json re = json::array(), im = json::array();
    for (int i = 0; i < M.rows(); ++i) {
        json rrow = json::array(), irow = json::array();
        for (int j = 0; j < M.cols(); ++j) {
            rrow.push_back(M(i, j).real());
            irow.push_back(M(i, j).imag());
        }
        re.push_back(rrow);
        im.push_back(irow);
    }
    return json{{"re", re}, {"im", im}};
}

int run_compile(const RunConfig& cfg, const std::string& text) {
    LoadedNetwork net = load(text);
    json out;
    out["labels"] = net.system.labels;
    out["hamiltonian"] = complex_matrix_json(net.system.hamiltonian);
    out["kappa_port"] = std::vector<double>(net.system.kappa_port.begin(), net.system.kappa_port.end());
    out["kappa_int"] = std::vector<double>(net.system.kappa_int.begin(), net.system.kappa_int.end());
    out["stability_margin"] = scattering::stability_margin(net.model);
    out["jumps"] = json::array();
    for (const auto& j : net.system.jumps) {
        json e;
        e["rate"] = j.rate;
        e["u"] = complex_matrix_json(j.u);
        e["v"] = complex_matrix_json(j.v);
        out["jumps"].push_back(e);
    }
    out["dropped_terms"] = json::array();
    for (const auto& t : net.system.dropped_terms) {
        json e;
        e["kind"] = t.kind == frames::TermKind::hopping ? "hopping" : "squeezing";
        e["modes"] = json::array({net.system.labels[t.modes[0]], net.system.labels[t.modes[1]]});
        e["amplitude"] = json::array({t.amplitude.real(), t.amplitude.imag()});
        e["detuning"] = t.detuning;
        out["dropped_terms"].push_back(e);
    }
    out["diagnostics"] = json::array();
    for (const auto& d : net.diagnostics)
        out["diagnostics"].push_back(
            std::string(d.severity == Diagnostic::Severity::error ? "error: " : "warning: ") +
            d.message);
    emit(cfg, out.dump(2) + "\n", json::object(), text);
    return kExitOk;
}

int run_scatter(const RunConfig& cfg, const std::string& text) {
    LoadedNetwork net = load(text);
    json resolved;
    Eigen::VectorXd grid = resolve_grid(cfg, net.spec, resolved);
    auto sweep = scattering::scattering_sweep(net.model, grid);
    int P = static_cast<int>(sweep.port_labels.size());
    std::string csv = "omega_rad_s";
    auto name = [&](int r) {
        return sweep.port_labels[r % P] + (r >= P ? "^" : "");
    };
    for (int i = 0; i < 2 * P; ++i)
        for (int j = 0; j < 2 * P; ++j)
            csv += ", re_S_" + name(i) + "_" + name(j) + ", im_S_" + name(i) + "_" + name(j);
    csv += "\n";
    for (int k = 0; k < grid.size(); ++k) {
        csv += fmt(grid[k]);
        for (int i = 0; i < 2 * P; ++i)
            for (int j = 0; j < 2 * P; ++j) {
                csv += ", " + fmt(sweep.doubled[k](i, j).real());
                csv += ", " + fmt(sweep.doubled[k](i, j).imag());
            }
        csv += "\n";
    }
    emit(cfg, csv, resolved, text);
    return kExitOk;
}

// sweep columns evaluated in parallel with deterministic ordering
template <typename F>
std::vector<Eigen::VectorXd> parallel_columns(const json& doc, const std::string& path,
                                              const std::vector<double>& values, F&& eval) {
    std::vector<Eigen::VectorXd> columns(values.size());
    int budget = thread_budget();
    std::vector<std::future<void>> futs;
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t k = next.fetch_add(1);
            if (k >= values.size()) return;
            json copy = doc;
            set_path(copy, path, values[k]);
            columns[k] = eval(copy.dump());
        }
    };
    int n = std::min<int>(budget, static_cast<int>(values.size()));
    for (int i = 1; i < n; ++i) futs.push_back(std::async(std::launch::async, worker));
    worker();
    for (auto& f : futs) f.get();
    return columns;
}

int run_gain(const RunConfig& cfg, const std::string& text) {
    LoadedNetwork probe = load(text);
    scattering::Path path;
    path.in = cfg.in_spec.empty() ? default_signal_end(probe) : parse_path_end(cfg.in_spec);
    path.out = cfg.out_spec.empty() ? path.in : parse_path_end(cfg.out_spec);
    json resolved;
    if (cfg.in_spec.empty()) resolved["in"] = path.in.port;
    if (cfg.out_spec.empty()) resolved["out"] = path.out.port;
    Eigen::VectorXd grid = resolve_grid(cfg, probe.spec, resolved);

    auto eval = [&](const std::string& doc_text) {
        LoadedNetwork net = load(doc_text);
        auto curve = scattering::power_gain(net.model, path, grid);
        return curve.gain;
    };

    std::string csv = "omega_rad_s";
    std::vector<Eigen::VectorXd> cols;
    if (cfg.sweep_path.empty()) {
        cols.push_back(eval(text));
        csv += ", gain_db";
    } else {
        cols = parallel_columns(json::parse(text), cfg.sweep_path, cfg.sweep_values, eval);
        for (double v : cfg.sweep_values) csv += ", gain_db_" + fmt(v);
    }
    csv += "\n";
    for (int k = 0; k < grid.size(); ++k) {
        csv += fmt(grid[k]);
        for (const auto& c : cols)
            csv += ", " + fmt(10.0 * std::log10(std::max(c[k], 1e-300)));
        csv += "\n";
    }
    emit(cfg, csv, resolved, text);
    return kExitOk;
}

int run_noise(const RunConfig& cfg, const std::string& text) {
    LoadedNetwork net = load(text);
    json resolved;
    Eigen::VectorXd grid = resolve_grid(cfg, net.spec, resolved);
    if (cfg.in_spec.empty()) {
        scattering::PathEnd out_end =
            cfg.port_spec.empty() ? default_signal_end(net) : parse_path_end(cfg.port_spec);
        auto spec = noise::output_spectrum(net.model, out_end, grid);
        emit(cfg, noise::spectrum_to_csv(spec, "spectrum_quanta"), resolved, text);
        return kExitOk;
    }
    scattering::Path path;
    path.in = parse_path_end(cfg.in_spec);
    path.out = cfg.out_spec.empty() ? (cfg.port_spec.empty() ? path.in : parse_path_end(cfg.port_spec))
                                    : parse_path_end(cfg.out_spec);
    auto res = noise::added_noise(net.model, path, grid);
    for (const auto& w : res.warnings) std::cerr << "warning: " << w.message << "\n";
    emit(cfg, noise::spectrum_to_csv(res.curve, "n_add_quanta"), resolved, text);
    return kExitOk;
}

int run_squeeze(const RunConfig& cfg, const std::string& text) {
    LoadedNetwork net = load(text);
    json resolved;
    Eigen::VectorXd grid = resolve_grid(cfg, net.spec, resolved);
    if (net.model.num_ports() < 2)
        throw std::invalid_argument("squeeze expects a two-port amplifier");
    scattering::PathEnd squeezed = cfg.squeezed_spec.empty()
        ? scattering::PathEnd{port_label(net.model, 1), 0, false}
        : parse_path_end(cfg.squeezed_spec);
    scattering::Path amplified;
    amplified.in = cfg.in_spec.empty() ? scattering::PathEnd{port_label(net.model, 0), 0, false}
                                       : parse_path_end(cfg.in_spec);
    amplified.out = cfg.out_spec.empty() ? scattering::PathEnd{port_label(net.model, 1), 1, false}
                                         : parse_path_end(cfg.out_spec);
    if (cfg.squeezed_spec.empty()) resolved["squeezed"] = squeezed.port + ".X";
    auto rep = noise::squeezing_analysis(net.model, squeezed, amplified, grid);
    if (cfg.format == RunConfig::Format::csv) {
        emit(cfg, noise::spectrum_to_csv(rep.variance, "variance_quanta"), resolved, text);
    } else {
        json out;
        out["min_variance"] = rep.min_variance;
        out["gain0"] = rep.gain0;
        out["squeezing_bandwidth_fwhm"] = rep.bandwidth_fwhm;
        out["squeezing_bandwidth_3db"] = rep.bandwidth_3db;
        out["dpa_bandwidth_3db"] = rep.dpa_bandwidth_3db;
        out["dpa_ratio"] = rep.dpa_ratio;
        emit(cfg, out.dump(2) + "\n", resolved, text);
    }
    return kExitOk;
}

int run_stability(const RunConfig& cfg, const std::string& text) {
    LoadedNetwork net = load(text);
    json out;
    out["stability_margin"] = scattering::stability_margin(net.model);
    emit(cfg, out.dump(2) + "\n", json::object(), text);
    return kExitOk;
}

int run_direction(const RunConfig& cfg, const std::string& text) {
    LoadedNetwork net = load(text);
    json resolved;
    Eigen::VectorXd grid = resolve_grid(cfg, net.spec, resolved);
    if (net.model.num_ports() < 2)
        throw std::invalid_argument("direction expects at least two ports");
    scattering::Path fwd, rev;
    fwd.in = cfg.fwd_in.empty() ? scattering::PathEnd{port_label(net.model, 0), 0, false}
                                : parse_path_end(cfg.fwd_in);
    fwd.out = cfg.fwd_out.empty() ? scattering::PathEnd{port_label(net.model, 1), 1, false}
                                  : parse_path_end(cfg.fwd_out);
    rev.in = cfg.rev_in.empty() ? scattering::PathEnd{port_label(net.model, 1), 0, false}
                                : parse_path_end(cfg.rev_in);
    rev.out = cfg.rev_out.empty() ? scattering::PathEnd{port_label(net.model, 0), 1, false}
                                  : parse_path_end(cfg.rev_out);
    auto curve = direction::isolation(net.model, fwd, rev, grid);
    emit(cfg, direction::isolation_to_csv(curve), resolved, text);
    return kExitOk;
}

int run_gbw(const RunConfig& cfg, const std::string& text) {
    if (cfg.sweep_path.empty() || cfg.sweep_values.empty())
        throw std::invalid_argument("gbw requires --sweep <path> <values>");
    LoadedNetwork probe = load(text);
    scattering::Path path;
    path.in = cfg.in_spec.empty() ? default_signal_end(probe) : parse_path_end(cfg.in_spec);
    path.out = cfg.out_spec.empty() ? path.in : parse_path_end(cfg.out_spec);
    json resolved;
    Eigen::VectorXd grid = resolve_grid(cfg, probe.spec, resolved);
    json doc = json::parse(text);
    std::string csv = "param, g0, bandwidth_rad_s, gbw, stable\n";
    for (double v : cfg.sweep_values) {
        json copy = doc;
        set_path(copy, cfg.sweep_path, v);
        LoadedNetwork net = load(copy.dump());
        auto rows = scattering::gbw_sweep(
            [&](double) { return net.model; }, path, std::span<const double>(&v, 1), grid);
        const auto& r = rows.front();
        csv += fmt(v) + ", " + fmt(r.g0) + ", " + fmt(r.bandwidth) + ", " + fmt(r.gbw) +
               ", " + (r.stable ? "1" : "0") + "\n";
    }
    emit(cfg, csv, resolved, text);
    return kExitOk;
}

int run_rwa_compare(const RunConfig& cfg, const std::string& text) {
    LoadedNetwork net = load(text);
    if (cfg.t_end <= 0 || cfg.dt <= 0)
        throw std::invalid_argument("rwa-compare requires --t-end and --dt");
    dynamics::TimeDomainOptions opt;
    opt.t_end = cfg.t_end;
    opt.dt = cfg.dt;
    opt.include_cr = true;
    auto traj = dynamics::integrate_time_domain(net.spec, opt);
    Eigen::MatrixXd Vrwa = dynamics::steady_covariance(net.model);
    std::string csv = "t, cov_dev_max\n";
    for (const auto& p : traj) {
        double dev = (p.cov - Vrwa).cwiseAbs().maxCoeff();
        csv += fmt(p.t) + ", " + fmt(dev) + "\n";
    }
    if (!cfg.trajectory_path.empty())
        write_file(cfg.trajectory_path, dynamics::trajectory_to_csv(traj));
    emit(cfg, csv, json::object(), text);
    return kExitOk;
}

int run_eliminate(const RunConfig& cfg, const std::string& text) {
    LoadedNetwork net = load(text);
    if (cfg.mode_label.empty()) throw std::invalid_argument("eliminate requires --mode");
    auto res = dynamics::adiabatic_eliminate(net.system, cfg.mode_label);
    json out;
    out["Lambda"] = res.Lambda;
    out["Gamma"] = res.Gamma;
    out["labels"] = res.reduced.labels;
    out["hamiltonian"] = complex_matrix_json(res.reduced.hamiltonian);
    out["jumps"] = json::array();
    for (const auto& j : res.reduced.jumps) {
        json e;
        e["rate"] = j.rate;
        e["u"] = complex_matrix_json(j.u);
        e["v"] = complex_matrix_json(j.v);
        out["jumps"].push_back(e);
    }
    out["warnings"] = json::array();
    for (const auto& w : res.warnings) out["warnings"].push_back(w.message);
    emit(cfg, out.dump(2) + "\n", json::object(), text);
    return kExitOk;
}

}  // namespace

scattering::PathEnd parse_path_end(const std::string& text) {
    scattering::PathEnd end;
    std::string t = text;
    if (!t.empty() && t.back() == '^') {
        end.conjugate = true;
        t.pop_back();
    }
    auto dot = t.rfind('.');
    if (dot != std::string::npos) {
        std::string q = t.substr(dot + 1);
        if (q == "X" || q == "x") end.quadrature = 0;
        else if (q == "P" || q == "p") end.quadrature = 1;
        else throw std::invalid_argument("bad quadrature '" + q + "' (expected X or P)");
        t = t.substr(0, dot);
        if (end.conjugate)
            throw std::invalid_argument("'^' applies to doubled-basis ends only");
    }
    if (t.empty()) throw std::invalid_argument("empty port in path '" + text + "'");
    end.port = t;
    return end;
}

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

int thread_budget() {
    const char* env = std::getenv("PARAMNET_THREADS");
    if (env) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

int run(const RunConfig& cfg, std::ostream& err) {
    std::string text;
    try {
        text = read_file(cfg.input_path);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        switch (cfg.command) {
            case RunConfig::Command::compile: return run_compile(cfg, text);
            case RunConfig::Command::scatter: return run_scatter(cfg, text);
            case RunConfig::Command::gain: return run_gain(cfg, text);
            case RunConfig::Command::noise: return run_noise(cfg, text);
            case RunConfig::Command::squeeze: return run_squeeze(cfg, text);
            case RunConfig::Command::stability: return run_stability(cfg, text);
            case RunConfig::Command::direction: return run_direction(cfg, text);
            case RunConfig::Command::gbw: return run_gbw(cfg, text);
            case RunConfig::Command::rwa_compare: return run_rwa_compare(cfg, text);
            case RunConfig::Command::eliminate: return run_eliminate(cfg, text);
        }
        err << "error: unknown command\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}

int main_from_args(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
    CLI::App app{"linear bosonic network analysis"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string sweep_list;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("input", cfg.input_path, "network JSON file")->required();
        sub->add_option("--out", cfg.output_path, "output file (default stdout)");
        sub->add_option("--omega-min", cfg.omega_min, "grid start (rad/s)");
        sub->add_option("--omega-max", cfg.omega_max, "grid end (rad/s)");
        sub->add_option("--points", cfg.points, "grid points")->check(CLI::Range(2, 10000000));
        std::map<std::string, RunConfig::Format> fmts{{"csv", RunConfig::Format::csv},
                                                      {"json", RunConfig::Format::json}};
        sub->add_option("--format", cfg.format, "csv|json")
            ->transform(CLI::CheckedTransformer(fmts, CLI::ignore_case));
        sub->add_option("--sweep", [&cfg](const std::vector<std::string>& vals) {
                if (vals.size() != 2) return false;
                cfg.sweep_path = vals[0];
                cfg.sweep_values.clear();
                std::istringstream is(vals[1]);
                std::string tok;
                while (std::getline(is, tok, ',')) {
                    try { cfg.sweep_values.push_back(std::stod(tok)); }
                    catch (...) { return false; }
                }
                return !cfg.sweep_values.empty();
            }, "sweep: <path> <comma-list>")->expected(2);
    };

    struct SubDef { const char* name; RunConfig::Command cmd; const char* help; };
    std::vector<CLI::App*> subs;
    for (SubDef d : {SubDef{"compile", RunConfig::Command::compile,
                            "compile a network to its effective system (JSON)"},
                     SubDef{"scatter", RunConfig::Command::scatter,
                            "full scattering matrix over a frequency grid (CSV)"},
                     SubDef{"gain", RunConfig::Command::gain,
                            "power gain curve of one path, with optional sweep (CSV)"},
                     SubDef{"noise", RunConfig::Command::noise,
                            "output spectrum or added noise (CSV)"},
                     SubDef{"squeeze", RunConfig::Command::squeeze,
                            "squeezing spectrum and bandwidths (CSV/JSON)"},
                     SubDef{"stability", RunConfig::Command::stability,
                            "max real part of the drift spectrum (JSON)"},
                     SubDef{"direction", RunConfig::Command::direction,
                            "forward/reverse gain and isolation (CSV)"},
                     SubDef{"gbw", RunConfig::Command::gbw,
                            "gain, bandwidth and their product over a sweep (CSV)"},
                     SubDef{"rwa-compare", RunConfig::Command::rwa_compare,
                            "time-domain covariance with counter-rotating terms vs "
                            "the static steady state (CSV)"},
                     SubDef{"eliminate", RunConfig::Command::eliminate,
                            "adiabatically remove an auxiliary mode (JSON)"}}) {
        CLI::App* sub = app.add_subcommand(d.name, d.help);
        add_common(sub);
        sub->callback([&cfg, cmd = d.cmd]() { cfg.command = cmd; });
        subs.push_back(sub);
        if (d.cmd == RunConfig::Command::gain || d.cmd == RunConfig::Command::gbw ||
            d.cmd == RunConfig::Command::noise) {
            sub->add_option("--in", cfg.in_spec, "input path end (mode[.X|.P][^])");
            sub->add_option("--out-port", cfg.out_spec, "output path end");
        }
        if (d.cmd == RunConfig::Command::noise)
            sub->add_option("--port", cfg.port_spec, "spectrum port (mode[.X|.P])");
        if (d.cmd == RunConfig::Command::squeeze) {
            sub->add_option("--squeezed", cfg.squeezed_spec, "squeezed output (mode.X|mode.P)");
            sub->add_option("--in", cfg.in_spec, "amplified input end");
            sub->add_option("--out-port", cfg.out_spec, "amplified output end");
        }
        if (d.cmd == RunConfig::Command::direction) {
            sub->add_option("--fwd-in", cfg.fwd_in);
            sub->add_option("--fwd-out", cfg.fwd_out);
            sub->add_option("--rev-in", cfg.rev_in);
            sub->add_option("--rev-out", cfg.rev_out);
        }
        if (d.cmd == RunConfig::Command::rwa_compare) {
            sub->add_option("--t-end", cfg.t_end, "integration horizon (s)");
            sub->add_option("--dt", cfg.dt, "step (s)");
            sub->add_option("--trajectory", cfg.trajectory_path,
                            "also write the full trajectory CSV here");
        }
        if (d.cmd == RunConfig::Command::eliminate)
            sub->add_option("--mode", cfg.mode_label, "auxiliary mode label");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return run(cfg, err);
}

}  // namespace paramnet::cli
