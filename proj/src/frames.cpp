#include "paramnet/frames.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace paramnet::frames {

int EffectiveSystem::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return static_cast<int>(i);
    return -1;
}

std::vector<RotatingTerm> rotating_frame_terms(const NetworkSpec& spec) {
    if (spec.frame != Frame::lab)
        throw std::invalid_argument("rotating_frame_terms expects a lab-frame network");
    std::vector<RotatingTerm> terms;
    for (std::size_t di = 0; di < spec.drives.size(); ++di) {
        const auto& d = spec.drives[di];
        int a = spec.index_of(d.modes[0]);
        int b = spec.index_of(d.modes[1]);
        if (a < 0 || b < 0) throw std::invalid_argument("drive on an unknown mode pair");
        if (d.lambda == 0.0) continue;
        double wa = spec.modes[a].omega, wb = spec.modes[b].omega;
        Complex ep = std::polar(d.lambda, d.phi);   // lambda e^{+i phi}
        Complex em = std::conj(ep);
        int idx = static_cast<int>(di);
        // a b^dag e^{-i(wa-wb)t} picking tones e^{+-i(w_d t + phi)}
        terms.push_back({TermKind::hopping, {a, b}, ep, wa - wb - d.omega_d, idx});
        terms.push_back({TermKind::hopping, {a, b}, em, wa - wb + d.omega_d, idx});
        // a^dag b^dag e^{+i(wa+wb)t}: the -omega_d tone is the near-resonant one
        terms.push_back({TermKind::squeezing, {a, b}, em, wa + wb - d.omega_d, idx});
        terms.push_back({TermKind::squeezing, {a, b}, ep, -(wa + wb + d.omega_d), idx});
    }
    // static couplings rotate at the bare frequency combinations
    for (const auto& c : spec.static_couplings) {
        int a = spec.index_of(c.modes[0]);
        int b = spec.index_of(c.modes[1]);
        double wa = spec.modes[a].omega, wb = spec.modes[b].omega;
        switch (c.kind) {
            case CouplingKind::hopping:
                terms.push_back({TermKind::hopping, {a, b}, c.amplitude, wa - wb, -1});
                break;
            case CouplingKind::squeezing:
                terms.push_back({TermKind::squeezing, {a, b}, c.amplitude, -(wa + wb), -1});
                break;
            case CouplingKind::qnd_xx:
                terms.push_back({TermKind::hopping, {a, b}, c.amplitude.real() / 2.0, wa - wb, -1});
                terms.push_back({TermKind::squeezing, {a, b}, c.amplitude.real() / 2.0, -(wa + wb), -1});
                break;
            case CouplingKind::qnd_pp:
                terms.push_back({TermKind::hopping, {a, b}, c.amplitude.real() / 2.0, wa - wb, -1});
                terms.push_back({TermKind::squeezing, {a, b}, -c.amplitude.real() / 2.0, -(wa + wb), -1});
                break;
        }
    }
    return terms;
}

namespace {

void add_term(Eigen::MatrixXcd& H, const RotatingTerm& t) {
    // kept term: amplitude * a_i b_j^dag + h.c. (hopping) or
    //            amplitude * a_i^dag b_j^dag + h.c. (squeezing)
    if (t.kind == TermKind::hopping) {
        // g a_i b_j^dag = hopping coupling with add_coupling convention g a b^dag
        add_coupling(H, t.modes[0], t.modes[1], CouplingKind::hopping, t.amplitude);
    } else {
        add_coupling(H, t.modes[0], t.modes[1], CouplingKind::squeezing, t.amplitude);
    }
}

std::string term_name(const NetworkSpec& spec, const RotatingTerm& t) {
    std::ostringstream os;
    os << (t.kind == TermKind::hopping ? "hopping" : "squeezing")
       << "(" << spec.modes[t.modes[0]].label << "," << spec.modes[t.modes[1]].label
       << ") detuning " << t.detuning;
    return os.str();
}

}  // namespace

RwaResult rwa_reduce(const NetworkSpec& spec, const std::vector<RotatingTerm>& terms,
                     const RwaOptions& options) {
    int N = spec.size();
    RwaResult out;
    auto& sys = out.system;
    sys.labels.reserve(N);
    for (const auto& m : spec.modes) sys.labels.push_back(m.label);
    sys.hamiltonian = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
    sys.kappa_port.resize(N); sys.kappa_int.resize(N);
    sys.n_port.resize(N); sys.n_int.resize(N);
    for (int i = 0; i < N; ++i) {
        sys.kappa_port[i] = spec.modes[i].kappa_port;
        sys.kappa_int[i] = spec.modes[i].kappa_int;
        sys.n_port[i] = spec.modes[i].n_thermal_port;
        sys.n_int[i] = spec.modes[i].n_thermal_int;
    }

    double max_omega = 0.0;
    for (const auto& m : spec.modes) max_omega = std::max(max_omega, std::abs(m.omega));
    for (const auto& d : spec.drives) max_omega = std::max(max_omega, std::abs(d.omega_d));
    double eps = options.epsilon_res >= 0 ? options.epsilon_res : 1e-9 * max_omega;

    // Frame assignment: kept near-resonant terms demand per-mode rotation
    // frequencies nu_i with  nu_a - nu_b = -delta (hopping),
    // nu_a + nu_b = delta (squeezing). Solved by BFS over the term graph;
    // contradictions are errors. Effective detunings are -nu_i.
    std::vector<double> nu(N, 0.0);
    std::vector<bool> assigned(N, false);
    std::vector<const RotatingTerm*> kept;
    for (const auto& t : terms) {
        if (std::abs(t.detuning) <= eps) kept.push_back(&t);
        else sys.dropped_terms.push_back(t);
    }
    // genuine contradictions are detected at roundoff scale, not eps scale:
    // two kept terms whose folds differ by more than accumulated rounding of
    // the input frequencies cannot share a frame
    const double tol = 1e-10 * std::max(1.0, max_omega);
    auto check = [&](double residual, const RotatingTerm& t) {
        if (std::abs(residual) > tol)
            throw std::runtime_error("inconsistent frame assignment: " + term_name(spec, t));
    };
    // Fixpoint over the constraint graph: hopping demands nu_a - nu_b = -delta,
    // squeezing demands nu_a + nu_b = delta. Unanchored components get nu = 0
    // on their first mode.
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto* t : kept) {
            int a = t->modes[0], b = t->modes[1];
            double d = t->detuning;
            if (t->kind == TermKind::hopping) {
                if (a == b) continue;  // no constraint
                if (assigned[a] && assigned[b]) check(nu[a] - nu[b] + d, *t);
                else if (assigned[a]) { nu[b] = nu[a] + d; assigned[b] = true; progress = true; }
                else if (assigned[b]) { nu[a] = nu[b] - d; assigned[a] = true; progress = true; }
            } else {
                if (a == b) {
                    if (assigned[a]) check(2.0 * nu[a] - d, *t);
                    else { nu[a] = d / 2.0; assigned[a] = true; progress = true; }
                } else if (assigned[a] && assigned[b]) check(nu[a] + nu[b] - d, *t);
                else if (assigned[a]) { nu[b] = d - nu[a]; assigned[b] = true; progress = true; }
                else if (assigned[b]) { nu[a] = d - nu[b]; assigned[a] = true; progress = true; }
            }
        }
        if (!progress) {
            for (const auto* t : kept) {
                int a = t->modes[0], b = t->modes[1];
                if (a != b && !assigned[a] && !assigned[b]) {
                    assigned[a] = true;
                    nu[a] = 0.0;
                    progress = true;
                    break;
                }
            }
        }
    }
    for (const auto* t : kept) {
        RotatingTerm folded = *t;
        folded.detuning = 0.0;
        add_term(sys.hamiltonian, folded);
    }
    for (int i = 0; i < N; ++i)
        if (assigned[i] && nu[i] != 0.0) add_detuning(sys.hamiltonian, i, -nu[i]);

    // rotating-frame detunings declared on the modes carry over
    if (spec.frame == Frame::rotating)
        for (int i = 0; i < N; ++i)
            if (spec.modes[i].omega != 0.0) add_detuning(sys.hamiltonian, i, spec.modes[i].omega);

    for (const auto& t : sys.dropped_terms) {
        if (std::abs(t.detuning) < options.rho_min * std::abs(t.amplitude)) {
            out.warnings.push_back({Diagnostic::Severity::warning,
                "rotating-wave approximation questionable for dropped " + term_name(spec, t)});
        }
    }

    for (const auto& j : spec.jumps) sys.jumps.push_back(resolve_jump(j, sys.labels));
    return out;
}

ParametricDrive stiff_pump_linearize(double g3, double pump_amplitude,
                                     double pump_freq, double pump_phase) {
    if (pump_amplitude < 0) throw std::invalid_argument("pump amplitude must be >= 0");
    ParametricDrive d;
    d.lambda = g3 * pump_amplitude / 2.0;
    d.omega_d = pump_freq;
    d.phi = pump_phase;
    return d;
}

Eigen::MatrixXcd quadrature_map(int num_modes) {
    int N = num_modes;
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
    const double s = 1.0 / std::sqrt(2.0);
    const Complex I(0.0, 1.0);
    for (int i = 0; i < N; ++i) {
        T(2 * i, i) = s;
        T(2 * i, i + N) = s;
        T(2 * i + 1, i) = -I * s;
        T(2 * i + 1, i + N) = I * s;
    }
    return T;
}

Eigen::MatrixXd quadrature_transform(const Eigen::MatrixXcd& hamiltonian) {
    int N = static_cast<int>(hamiltonian.rows()) / 2;
    Eigen::MatrixXcd T = quadrature_map(N);
    Eigen::MatrixXcd Hq = T * hamiltonian * T.adjoint();
    double imag = Hq.imag().cwiseAbs().maxCoeff();
    double scale = std::max(1.0, Hq.cwiseAbs().maxCoeff());
    if (imag > 1e-10 * scale)
        throw std::invalid_argument("Hamiltonian is not particle-hole symmetric");
    return Hq.real();
}

Eigen::MatrixXd symplectic_form(int num_modes) {
    Eigen::MatrixXd O = Eigen::MatrixXd::Zero(2 * num_modes, 2 * num_modes);
    for (int i = 0; i < num_modes; ++i) {
        O(2 * i, 2 * i + 1) = 1.0;
        O(2 * i + 1, 2 * i) = -1.0;
    }
    return O;
}

RwaResult compile_effective(const NetworkSpec& spec, const RwaOptions& options) {
    if (spec.frame == Frame::rotating) {
        RwaResult out;
        auto& sys = out.system;
        int N = spec.size();
        for (const auto& m : spec.modes) sys.labels.push_back(m.label);
        sys.hamiltonian = assemble_static_hamiltonian(spec);
        for (int i = 0; i < N; ++i)
            if (spec.modes[i].omega != 0.0) add_detuning(sys.hamiltonian, i, spec.modes[i].omega);
        sys.kappa_port.resize(N); sys.kappa_int.resize(N);
        sys.n_port.resize(N); sys.n_int.resize(N);
        for (int i = 0; i < N; ++i) {
            sys.kappa_port[i] = spec.modes[i].kappa_port;
            sys.kappa_int[i] = spec.modes[i].kappa_int;
            sys.n_port[i] = spec.modes[i].n_thermal_port;
            sys.n_int[i] = spec.modes[i].n_thermal_int;
        }
        for (const auto& j : spec.jumps) sys.jumps.push_back(resolve_jump(j, sys.labels));
        return out;
    }
    // lab frame: with drives the compile goes through the interaction frame;
    // without drives the absolute frequencies stay as detunings
    if (spec.drives.empty()) {
        NetworkSpec rot = spec;
        rot.frame = Frame::rotating;
        return compile_effective(rot, options);
    }
    return rwa_reduce(spec, rotating_frame_terms(spec), options);
}

EffectiveSystem make_effective(const std::vector<Mode>& modes) {
    EffectiveSystem sys;
    int N = static_cast<int>(modes.size());
    sys.hamiltonian = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
    sys.kappa_port.resize(N); sys.kappa_int.resize(N);
    sys.n_port.resize(N); sys.n_int.resize(N);
    for (int i = 0; i < N; ++i) {
        sys.labels.push_back(modes[i].label);
        sys.kappa_port[i] = modes[i].kappa_port;
        sys.kappa_int[i] = modes[i].kappa_int;
        sys.n_port[i] = modes[i].n_thermal_port;
        sys.n_int[i] = modes[i].n_thermal_int;
        if (modes[i].omega != 0.0) add_detuning(sys.hamiltonian, i, modes[i].omega);
    }
    return sys;
}

JumpOperator resolve_jump(const JumpSpec& jump, const std::vector<std::string>& labels) {
    JumpOperator op;
    int N = static_cast<int>(labels.size());
    op.u = Eigen::VectorXcd::Zero(N);
    op.v = Eigen::VectorXcd::Zero(N);
    op.rate = jump.rate;
    for (const auto& [label, c] : jump.coefficients) {
        auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end())
            throw std::invalid_argument("jump references unknown mode '" + label + "'");
        int i = static_cast<int>(it - labels.begin());
        op.u[i] = c.u;
        op.v[i] = c.v;
    }
    return op;
}

}  // namespace paramnet::frames
