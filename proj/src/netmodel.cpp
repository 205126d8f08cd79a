#include "paramnet/netmodel.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace paramnet {

using nlohmann::json;

int NetworkSpec::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < modes.size(); ++i)
        if (modes[i].label == label) return static_cast<int>(i);
    return -1;
}

const Mode& NetworkSpec::mode(const std::string& label) const {
    int i = index_of(label);
    if (i < 0) throw std::out_of_range("unknown mode label '" + label + "'");
    return modes[i];
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
        return d.severity == Diagnostic::Severity::error;
    });
}

std::string join_messages(const std::vector<Diagnostic>& diags) {
    std::ostringstream os;
    for (const auto& d : diags) {
        os << (d.severity == Diagnostic::Severity::error ? "error: " : "warning: ")
           << d.message << '\n';
    }
    return os.str();
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, 0, 0); }

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key()))
            fail("unknown field '" + it.key() + "' in " + where);
    }
}

double get_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) fail("missing field '" + key + "' in " + where);
    if (!obj[key].is_number()) fail("field '" + key + "' in " + where + " must be a number");
    return obj[key].get<double>();
}

double get_number_or(const json& obj, const std::string& key, double def, const std::string& where) {
    if (!obj.contains(key)) return def;
    if (!obj[key].is_number()) fail("field '" + key + "' in " + where + " must be a number");
    return obj[key].get<double>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) fail("missing field '" + key + "' in " + where);
    if (!obj[key].is_string()) fail("field '" + key + "' in " + where + " must be a string");
    return obj[key].get<std::string>();
}

Complex get_complex_pair(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        fail("complex value in " + where + " must be a [re, im] pair");
    return {v[0].get<double>(), v[1].get<double>()};
}

std::array<std::string, 2> get_mode_pair(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_string() || !v[1].is_string())
        fail("'modes' in " + where + " must be an array of 2 mode labels");
    return {v[0].get<std::string>(), v[1].get<std::string>()};
}

RoleHint role_from_string(const std::string& s, const std::string& where) {
    if (s == "signal") return RoleHint::signal;
    if (s == "idler") return RoleHint::idler;
    if (s == "auxiliary") return RoleHint::auxiliary;
    if (s == "none") return RoleHint::none;
    fail("unknown role_hint '" + s + "' in " + where);
}

const char* role_to_string(RoleHint r) {
    switch (r) {
        case RoleHint::signal: return "signal";
        case RoleHint::idler: return "idler";
        case RoleHint::auxiliary: return "auxiliary";
        default: return "none";
    }
}

CouplingKind kind_from_string(const std::string& s, const std::string& where) {
    if (s == "hopping") return CouplingKind::hopping;
    if (s == "squeezing") return CouplingKind::squeezing;
    if (s == "qnd_XX") return CouplingKind::qnd_xx;
    if (s == "qnd_PP") return CouplingKind::qnd_pp;
    fail("unknown coupling kind '" + s + "' in " + where);
}

const char* kind_to_string(CouplingKind k) {
    switch (k) {
        case CouplingKind::hopping: return "hopping";
        case CouplingKind::squeezing: return "squeezing";
        case CouplingKind::qnd_xx: return "qnd_XX";
        default: return "qnd_PP";
    }
}

void position_of(const std::string& text, std::size_t byte, int& line, int& col) {
    line = 1; col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') { ++line; col = 1; } else { ++col; }
    }
}

json number_json(double x) { return json(x); }

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

NetworkSpec parse_network(const std::string& document) {
    json root;
    try {
        root = json::parse(document);
    } catch (const json::parse_error& e) {
        int line = 0, col = 0;
        position_of(document, e.byte > 0 ? e.byte - 1 : 0, line, col);
        std::ostringstream os;
        os << "syntax error at line " << line << ", column " << col << ": " << e.what();
        throw ParseError(os.str(), line, col);
    }
    if (!root.is_object()) fail("top-level document must be a JSON object");
    check_keys(root, {"unit", "frame", "modes", "static_couplings", "drives", "jumps"}, "document");

    double unit_scale = 1.0;
    if (root.contains("unit")) {
        std::string u = get_string(root, "unit", "document");
        if (u == "rad/s") unit_scale = 1.0;
        else if (u == "Hz") unit_scale = 2.0 * std::numbers::pi;
        else fail("unknown unit '" + u + "' (expected \"rad/s\" or \"Hz\")");
    }

    NetworkSpec spec;
    if (root.contains("frame")) {
        std::string f = get_string(root, "frame", "document");
        if (f == "lab") spec.frame = Frame::lab;
        else if (f == "rotating") spec.frame = Frame::rotating;
        else fail("unknown frame '" + f + "' (expected \"lab\" or \"rotating\")");
    }

    if (!root.contains("modes") || !root["modes"].is_array() || root["modes"].empty())
        fail("document must declare a non-empty 'modes' array");

    std::set<std::string> seen;
    for (const auto& m : root["modes"]) {
        if (!m.is_object()) fail("mode entries must be objects");
        check_keys(m, {"label", "omega", "kappa_port", "kappa_int",
                       "n_thermal_port", "n_thermal_int", "role_hint"}, "mode");
        Mode mode;
        mode.label = get_string(m, "label", "mode");
        if (mode.label.empty()) fail("mode label must be non-empty");
        if (!seen.insert(mode.label).second) fail("duplicate mode label '" + mode.label + "'");
        mode.omega = unit_scale * get_number(m, "omega", "mode '" + mode.label + "'");
        mode.kappa_port = unit_scale * get_number(m, "kappa_port", "mode '" + mode.label + "'");
        mode.kappa_int = unit_scale * get_number_or(m, "kappa_int", 0.0, "mode '" + mode.label + "'");
        mode.n_thermal_port = get_number_or(m, "n_thermal_port", 0.0, "mode '" + mode.label + "'");
        mode.n_thermal_int = get_number_or(m, "n_thermal_int", 0.0, "mode '" + mode.label + "'");
        if (m.contains("role_hint"))
            mode.role_hint = role_from_string(get_string(m, "role_hint", "mode"), "mode '" + mode.label + "'");
        if (mode.kappa_port < 0 || mode.kappa_int < 0)
            fail("negative rate in mode '" + mode.label + "'");
        if (mode.n_thermal_port < 0 || mode.n_thermal_int < 0)
            fail("negative thermal occupation in mode '" + mode.label + "'");
        spec.modes.push_back(std::move(mode));
    }

    auto resolve = [&](const std::string& label, const std::string& where) {
        if (spec.index_of(label) < 0) fail("unresolved mode label '" + label + "' in " + where);
    };

    if (root.contains("static_couplings")) {
        if (!root["static_couplings"].is_array()) fail("'static_couplings' must be an array");
        for (const auto& c : root["static_couplings"]) {
            check_keys(c, {"kind", "modes", "amplitude"}, "static coupling");
            StaticCoupling sc;
            sc.kind = kind_from_string(get_string(c, "kind", "static coupling"), "static coupling");
            sc.modes = get_mode_pair(c.at("modes"), "static coupling");
            resolve(sc.modes[0], "static coupling");
            resolve(sc.modes[1], "static coupling");
            if (!c.contains("amplitude")) fail("missing 'amplitude' in static coupling");
            sc.amplitude = unit_scale * get_complex_pair(c["amplitude"], "static coupling");
            spec.static_couplings.push_back(sc);
        }
    }

    if (root.contains("drives")) {
        if (!root["drives"].is_array()) fail("'drives' must be an array");
        for (const auto& d : root["drives"]) {
            check_keys(d, {"modes", "lambda", "omega_d", "phi"}, "drive");
            ParametricDrive dr;
            dr.modes = get_mode_pair(d.at("modes"), "drive");
            resolve(dr.modes[0], "drive");
            resolve(dr.modes[1], "drive");
            dr.lambda = unit_scale * get_number(d, "lambda", "drive");
            dr.omega_d = unit_scale * get_number(d, "omega_d", "drive");
            dr.phi = get_number_or(d, "phi", 0.0, "drive");
            if (dr.lambda < 0) fail("negative rate: drive lambda must be >= 0");
            spec.drives.push_back(dr);
        }
    }

    if (root.contains("jumps")) {
        if (!root["jumps"].is_array()) fail("'jumps' must be an array");
        for (const auto& j : root["jumps"]) {
            check_keys(j, {"rate", "coefficients"}, "jump");
            JumpSpec js;
            js.rate = unit_scale * get_number(j, "rate", "jump");
            if (js.rate < 0) fail("negative rate in jump");
            if (!std::isfinite(js.rate)) fail("jump rate must be finite");
            if (!j.contains("coefficients") || !j["coefficients"].is_object())
                fail("jump must carry a 'coefficients' object");
            for (auto it = j["coefficients"].begin(); it != j["coefficients"].end(); ++it) {
                resolve(it.key(), "jump coefficients");
                check_keys(it.value(), {"u", "v"}, "jump coefficient");
                JumpCoefficient jc;
                if (it.value().contains("u")) jc.u = get_complex_pair(it.value()["u"], "jump coefficient");
                if (it.value().contains("v")) jc.v = get_complex_pair(it.value()["v"], "jump coefficient");
                js.coefficients[it.key()] = jc;
            }
            spec.jumps.push_back(std::move(js));
        }
    }

    return spec;
}

std::string serialize_network(const NetworkSpec& spec) {
    json root;
    root["unit"] = "rad/s";
    root["frame"] = spec.frame == Frame::lab ? "lab" : "rotating";
    root["modes"] = json::array();
    for (const auto& m : spec.modes) {
        json jm;
        jm["label"] = m.label;
        jm["omega"] = number_json(m.omega);
        jm["kappa_port"] = number_json(m.kappa_port);
        if (m.kappa_int != 0.0) jm["kappa_int"] = number_json(m.kappa_int);
        if (m.n_thermal_port != 0.0) jm["n_thermal_port"] = number_json(m.n_thermal_port);
        if (m.n_thermal_int != 0.0) jm["n_thermal_int"] = number_json(m.n_thermal_int);
        if (m.role_hint != RoleHint::none) jm["role_hint"] = role_to_string(m.role_hint);
        root["modes"].push_back(jm);
    }
    if (!spec.static_couplings.empty()) {
        root["static_couplings"] = json::array();
        for (const auto& c : spec.static_couplings) {
            json jc;
            jc["kind"] = kind_to_string(c.kind);
            jc["modes"] = json::array({c.modes[0], c.modes[1]});
            jc["amplitude"] = complex_json(c.amplitude);
            root["static_couplings"].push_back(jc);
        }
    }
    if (!spec.drives.empty()) {
        root["drives"] = json::array();
        for (const auto& d : spec.drives) {
            json jd;
            jd["modes"] = json::array({d.modes[0], d.modes[1]});
            jd["lambda"] = number_json(d.lambda);
            jd["omega_d"] = number_json(d.omega_d);
            jd["phi"] = number_json(d.phi);
            root["drives"].push_back(jd);
        }
    }
    if (!spec.jumps.empty()) {
        root["jumps"] = json::array();
        for (const auto& j : spec.jumps) {
            json jj;
            jj["rate"] = number_json(j.rate);
            jj["coefficients"] = json::object();
            for (const auto& [label, c] : j.coefficients) {
                json e;
                e["u"] = complex_json(c.u);
                e["v"] = complex_json(c.v);
                jj["coefficients"][label] = e;
            }
            root["jumps"].push_back(jj);
        }
    }
    return root.dump(2) + "\n";
}

std::vector<Diagnostic> validate(const NetworkSpec& spec) {
    std::vector<Diagnostic> out;
    auto err = [&](const std::string& m) { out.push_back({Diagnostic::Severity::error, m}); };
    auto warn = [&](const std::string& m) { out.push_back({Diagnostic::Severity::warning, m}); };

    std::set<std::string> labels;
    for (const auto& m : spec.modes) {
        if (!labels.insert(m.label).second) err("duplicate mode label '" + m.label + "'");
        if (m.kappa_port < 0 || m.kappa_int < 0) err("negative damping rate on mode '" + m.label + "'");
        if (m.n_thermal_port < 0 || m.n_thermal_int < 0)
            err("negative thermal occupation on mode '" + m.label + "'");
        if (m.kappa_total() == 0.0) warn("undamped mode '" + m.label + "'");
    }
    auto check_pair = [&](const std::array<std::string, 2>& p, const std::string& where) {
        for (const auto& l : p)
            if (spec.index_of(l) < 0) err("unresolved mode label '" + l + "' in " + where);
    };
    for (const auto& c : spec.static_couplings) check_pair(c.modes, "static coupling");
    for (const auto& d : spec.drives) {
        check_pair(d.modes, "drive");
        if (d.lambda < 0) err("negative drive strength");
        if (spec.frame == Frame::rotating)
            err("parametric drives are only meaningful in the lab frame");
    }
    for (const auto& j : spec.jumps) {
        if (j.rate < 0) err("negative jump rate");
        double norm = 0;
        for (const auto& [label, c] : j.coefficients) {
            if (spec.index_of(label) < 0) err("unresolved mode label '" + label + "' in jump");
            norm += std::norm(c.u) + std::norm(c.v);
        }
        if (norm == 0.0) err("empty jump operator");
        if (spec.frame == Frame::lab && !spec.drives.empty())
            warn("jump operators in a driven lab-frame network are taken as given in the rotating frame");
    }
    return out;
}

void add_detuning(Eigen::MatrixXcd& H, int i, double omega) {
    int N = static_cast<int>(H.rows()) / 2;
    H(i, i) += omega;
    H(i + N, i + N) += omega;
}

void add_coupling(Eigen::MatrixXcd& H, int i, int j, CouplingKind kind, Complex g) {
    int N = static_cast<int>(H.rows()) / 2;
    switch (kind) {
        case CouplingKind::hopping:
            // g a_i a_j^dag + g* a_i^dag a_j
            if (i == j) {
                H(i, i) += 2.0 * g.real();
                H(i + N, i + N) += 2.0 * g.real();
            } else {
                H(j, i) += g;
                H(i, j) += std::conj(g);
                H(j + N, i + N) += std::conj(g);
                H(i + N, j + N) += g;
            }
            break;
        case CouplingKind::squeezing:
            // g a_i^dag a_j^dag + g* a_i a_j
            if (i == j) {
                H(i, i + N) += 2.0 * g;
                H(i + N, i) += 2.0 * std::conj(g);
            } else {
                H(i, j + N) += g;
                H(j, i + N) += g;
                H(i + N, j) += std::conj(g);
                H(j + N, i) += std::conj(g);
            }
            break;
        case CouplingKind::qnd_xx:
            // Re(g) X_i X_j = Re(g)/2 (a_i a_j^dag + a_i^dag a_j + a_i^dag a_j^dag + a_i a_j)
            add_coupling(H, i, j, CouplingKind::hopping, g.real() / 2.0);
            add_coupling(H, i, j, CouplingKind::squeezing, g.real() / 2.0);
            break;
        case CouplingKind::qnd_pp:
            // Re(g) P_i P_j = Re(g)/2 (a_i a_j^dag + a_i^dag a_j - a_i^dag a_j^dag - a_i a_j)
            add_coupling(H, i, j, CouplingKind::hopping, g.real() / 2.0);
            add_coupling(H, i, j, CouplingKind::squeezing, -g.real() / 2.0);
            break;
    }
}

Eigen::MatrixXcd assemble_static_hamiltonian(const NetworkSpec& spec) {
    int N = spec.size();
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
    for (const auto& c : spec.static_couplings) {
        int i = spec.index_of(c.modes[0]);
        int j = spec.index_of(c.modes[1]);
        if (i < 0 || j < 0) throw std::invalid_argument("unresolved mode label in static coupling");
        add_coupling(H, i, j, c.kind, c.amplitude);
    }
    return H;
}

double hamiltonian_symmetry_defect(const Eigen::MatrixXcd& H) {
    int n = static_cast<int>(H.rows());
    int N = n / 2;
    double herm = (H - H.adjoint()).cwiseAbs().maxCoeff();
    Eigen::MatrixXcd Sx = Eigen::MatrixXcd::Zero(n, n);
    Sx.block(0, N, N, N).setIdentity();
    Sx.block(N, 0, N, N).setIdentity();
    double ph = (H - Sx * H.conjugate() * Sx).cwiseAbs().maxCoeff();
    return std::max(herm, ph);
}

}  // namespace paramnet
