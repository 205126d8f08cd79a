#include "paramnet/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <charconv>
#include <cmath>
#include <sstream>

namespace paramnet::dynamics {

namespace {

Eigen::MatrixXcd sigma_z(int N) {
    Eigen::VectorXcd d(2 * N);
    d.head(N).setOnes();
    d.tail(N).setConstant(-1.0);
    return d.asDiagonal();
}

// doubled-basis input columns (xi, xi^dag) of one jump channel
Eigen::MatrixXcd jump_input_block(const frames::JumpOperator& j) {
    int N = static_cast<int>(j.u.size());
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(2 * N, 2);
    double s = std::sqrt(j.rate);
    for (int i = 0; i < N; ++i) {
        B(i, 0) = -s * std::conj(j.u[i]);
        B(i, 1) = s * j.v[i];
        B(i + N, 0) = s * std::conj(j.v[i]);
        B(i + N, 1) = -s * j.u[i];
    }
    return B;
}

Eigen::MatrixXd real_quad(const Eigen::MatrixXcd& M, const char* what) {
    double imag = M.imag().cwiseAbs().maxCoeff();
    double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    if (imag > 1e-9 * scale)
        throw std::runtime_error(std::string(what) + ": quadrature image is not real");
    return M.real();
}

void append_number(std::string& out, double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    out.append(buf, res.ptr);
}

}  // namespace

int StateSpaceModel::port_index(const std::string& label) const {
    for (std::size_t k = 0; k < ports.size(); ++k)
        if (labels[ports[k]] == label) return static_cast<int>(k);
    return -1;
}

LindbladContribution lindblad_contribution(const frames::JumpOperator& jump) {
    int N = static_cast<int>(jump.u.size());
    LindbladContribution out;
    out.drift = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
    const auto& u = jump.u;
    const auto& v = jump.v;
    double G = jump.rate;
    for (int i = 0; i < N; ++i) {
        for (int k = 0; k < N; ++k) {
            out.drift(i, k) = 0.5 * G * (v[i] * std::conj(v[k]) - std::conj(u[i]) * u[k]);
            out.drift(i, k + N) = 0.5 * G * (v[i] * std::conj(u[k]) - std::conj(u[i]) * v[k]);
        }
    }
    out.drift.block(N, N, N, N) = out.drift.block(0, 0, N, N).conjugate();
    out.drift.block(N, 0, N, N) = out.drift.block(0, N, N, N).conjugate();

    // D = G * Omega Re(c c^dag) Omega^T with quadrature coefficients of z
    Eigen::VectorXcd c(2 * N);
    const Complex I(0.0, 1.0);
    for (int i = 0; i < N; ++i) {
        c[2 * i] = (u[i] + v[i]) / std::sqrt(2.0);
        c[2 * i + 1] = I * (u[i] - v[i]) / std::sqrt(2.0);
    }
    Eigen::MatrixXd Re = (c * c.adjoint()).real();
    Eigen::MatrixXd O = frames::symplectic_form(N);
    out.diffusion = G * O * Re * O.transpose();
    return out;
}

StateSpaceModel build_state_space(const frames::EffectiveSystem& system) {
    int N = system.size();
    StateSpaceModel m;
    m.labels = system.labels;
    m.kappa_port = system.kappa_port;

    m.drift = Complex(0.0, -1.0) * sigma_z(N) * system.hamiltonian;
    Eigen::VectorXd ktot = system.kappa_port + system.kappa_int;
    for (int i = 0; i < N; ++i) {
        m.drift(i, i) -= ktot[i] / 2.0;
        m.drift(i + N, i + N) -= ktot[i] / 2.0;
    }

    int nch = 0;
    for (int i = 0; i < N; ++i) {
        if (system.kappa_port[i] > 0) ++nch;
        if (system.kappa_int[i] > 0) ++nch;
    }
    nch += static_cast<int>(system.jumps.size());
    m.input = Eigen::MatrixXcd::Zero(2 * N, 2 * nch);

    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2 * N, 2 * N);
    int col = 0;
    for (int i = 0; i < N; ++i) {
        if (system.kappa_port[i] > 0) {
            double s = std::sqrt(system.kappa_port[i]);
            m.input(i, col) = s;
            m.input(i + N, col + 1) = s;
            m.channels.push_back({ChannelKind::port, i, -1, system.n_port[i]});
            m.ports.push_back(i);
            D(2 * i, 2 * i) += system.kappa_port[i] * (system.n_port[i] + 0.5);
            D(2 * i + 1, 2 * i + 1) += system.kappa_port[i] * (system.n_port[i] + 0.5);
            col += 2;
        }
        if (system.kappa_int[i] > 0) {
            double s = std::sqrt(system.kappa_int[i]);
            m.input(i, col) = s;
            m.input(i + N, col + 1) = s;
            m.channels.push_back({ChannelKind::internal_loss, i, -1, system.n_int[i]});
            D(2 * i, 2 * i) += system.kappa_int[i] * (system.n_int[i] + 0.5);
            D(2 * i + 1, 2 * i + 1) += system.kappa_int[i] * (system.n_int[i] + 0.5);
            col += 2;
        }
    }
    for (std::size_t k = 0; k < system.jumps.size(); ++k) {
        auto contrib = lindblad_contribution(system.jumps[k]);
        m.drift += contrib.drift;
        D += contrib.diffusion;
        m.input.block(0, col, 2 * N, 2) = jump_input_block(system.jumps[k]);
        m.channels.push_back({ChannelKind::jump, -1, static_cast<int>(k), 0.0});
        col += 2;
    }
    m.diffusion = (D + D.transpose()) / 2.0;

    Eigen::MatrixXcd T = frames::quadrature_map(N);
    m.drift_quad = real_quad(T * m.drift * T.adjoint(), "drift");
    return m;
}

EliminationResult adiabatic_eliminate(const frames::EffectiveSystem& system,
                                      const std::string& mode_label) {
    int N = system.size();
    int c = system.index_of(mode_label);
    if (c < 0) throw std::invalid_argument("mode '" + mode_label + "' not found");

    EliminationResult out;
    const auto& H = system.hamiltonian;

    if (std::abs(H(c, c + N)) > 0)
        throw std::invalid_argument("auxiliary mode '" + mode_label +
                                    "' carries a self-squeezing term; cannot eliminate");
    for (const auto& j : system.jumps)
        if (std::abs(j.u[c]) > 0 || std::abs(j.v[c]) > 0)
            throw std::invalid_argument("auxiliary mode '" + mode_label +
                                        "' appears in an engineered jump; cannot eliminate");

    double Delta = H(c, c).real();
    double kappa = system.kappa_port[c] + system.kappa_int[c];
    if (kappa <= 0)
        throw std::invalid_argument("auxiliary mode '" + mode_label + "' is undamped");
    if (system.n_port[c] > 0 || system.n_int[c] > 0)
        out.warnings.push_back({Diagnostic::Severity::warning,
            "eliminated mode '" + mode_label + "' has a thermal bath; the induced "
            "reservoir is treated as vacuum"});

    // operator the auxiliary mode couples to: H_int = c^dag s + s^dag c with
    // s = sum_j (u_j a_j + v_j a_j^dag), read off from row c of H
    Eigen::VectorXcd su = Eigen::VectorXcd::Zero(N);
    Eigen::VectorXcd sv = Eigen::VectorXcd::Zero(N);
    double lmax = 0.0;
    for (int j = 0; j < N; ++j) {
        if (j == c) continue;
        su[j] = H(c, j);
        sv[j] = 0.5 * (H(c, j + N) + H(j, c + N));
        lmax = std::max({lmax, std::abs(su[j]), std::abs(sv[j])});
    }
    if (lmax == 0.0) {
        out.warnings.push_back({Diagnostic::Severity::warning,
            "mode '" + mode_label + "' is uncoupled; elimination removes it verbatim"});
    }
    if (lmax > 0 && kappa < 10.0 * lmax)
        out.warnings.push_back({Diagnostic::Severity::warning,
            "adiabaticity questionable: kappa < 10x the strongest coupling"});

    double denom = Delta * Delta + kappa * kappa / 4.0;
    out.Gamma = kappa * lmax * lmax / denom;
    out.Lambda = Delta * lmax * lmax / denom;

    // reduced system without mode c
    std::vector<int> keep;
    for (int j = 0; j < N; ++j)
        if (j != c) keep.push_back(j);
    int M = static_cast<int>(keep.size());
    auto& red = out.reduced;
    red.hamiltonian = Eigen::MatrixXcd::Zero(2 * M, 2 * M);
    red.kappa_port.resize(M); red.kappa_int.resize(M);
    red.n_port.resize(M); red.n_int.resize(M);
    for (int a = 0; a < M; ++a) {
        red.labels.push_back(system.labels[keep[a]]);
        red.kappa_port[a] = system.kappa_port[keep[a]];
        red.kappa_int[a] = system.kappa_int[keep[a]];
        red.n_port[a] = system.n_port[keep[a]];
        red.n_int[a] = system.n_int[keep[a]];
        for (int b = 0; b < M; ++b) {
            red.hamiltonian(a, b) = H(keep[a], keep[b]);
            red.hamiltonian(a, b + M) = H(keep[a], keep[b] + N);
            red.hamiltonian(a + M, b) = H(keep[a] + N, keep[b]);
            red.hamiltonian(a + M, b + M) = H(keep[a] + N, keep[b] + N);
        }
    }
    for (const auto& j : system.jumps) {
        frames::JumpOperator r;
        r.rate = j.rate;
        r.u.resize(M); r.v.resize(M);
        for (int a = 0; a < M; ++a) { r.u[a] = j.u[keep[a]]; r.v[a] = j.v[keep[a]]; }
        red.jumps.push_back(std::move(r));
    }

    if (lmax > 0.0) {
        // induced jump z = s / lmax with rate Gamma
        frames::JumpOperator z;
        z.rate = out.Gamma;
        z.u.resize(M); z.v.resize(M);
        for (int a = 0; a < M; ++a) { z.u[a] = su[keep[a]] / lmax; z.v[a] = sv[keep[a]] / lmax; }
        // induced Hamiltonian -Lambda z^dag z (sign from the microscopic
        // equations of motion; the printed master-equation form has the
        // opposite sign, which contradicts level repulsion)
        double L = -out.Lambda;
        for (int a = 0; a < M; ++a) {
            for (int b = 0; b < M; ++b) {
                // z^dag z = sum (u*_a a^dag + v*_a a)(u_b b + v_b b^dag)
                red.hamiltonian(a, b) += L * (std::conj(z.u[a]) * z.u[b] + z.v[a] * std::conj(z.v[b]));
                red.hamiltonian(a, b + M) += L * (std::conj(z.u[a]) * z.v[b] + std::conj(z.u[b]) * z.v[a]);
            }
        }
        red.hamiltonian.block(M, M, M, M) = red.hamiltonian.block(0, 0, M, M).conjugate();
        red.hamiltonian.block(M, 0, M, M) = red.hamiltonian.block(0, M, M, M).conjugate();
        red.jumps.push_back(std::move(z));
    }
    return out;
}

double stability_margin_quad(const Eigen::MatrixXd& drift_quad) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(drift_quad, false);
    return es.eigenvalues().real().maxCoeff();
}

Eigen::MatrixXd steady_covariance(const StateSpaceModel& model) {
    const Eigen::MatrixXd& A = model.drift_quad;
    int n = static_cast<int>(A.rows());
    double margin = stability_margin_quad(A);
    if (margin >= 0) {
        std::ostringstream os;
        os << "unstable system: max Re eigenvalue = " << margin;
        throw std::runtime_error(os.str());
    }
    // vec(A V + V A^T) = (I (x) A + A (x) I) vec(V), column-major vec
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n * n, n * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) K(j * n + i, j * n + k) += A(i, k);
            for (int l = 0; l < n; ++l) K(j * n + i, l * n + i) += A(j, l);
        }
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(model.diffusion.data(), n * n);
    Eigen::VectorXd v = K.partialPivLu().solve(-d);
    Eigen::MatrixXd V = Eigen::Map<Eigen::MatrixXd>(v.data(), n, n);
    return (V + V.transpose()) / 2.0;
}

std::vector<TrajectoryPoint> integrate_time_domain(const NetworkSpec& spec,
                                                   const TimeDomainOptions& options) {
    if (options.dt <= 0 || options.t_end <= 0)
        throw std::invalid_argument("t_end and dt must be positive");

    std::vector<frames::RotatingTerm> terms;
    frames::RwaResult rwa;
    if (spec.frame == Frame::lab && !spec.drives.empty()) {
        terms = frames::rotating_frame_terms(spec);
        rwa = frames::rwa_reduce(spec, terms);
    } else {
        rwa = frames::compile_effective(spec);
    }
    const auto& sys = rwa.system;
    int N = sys.size();

    double fmax = 0.0;
    for (const auto& m : spec.modes) fmax = std::max(fmax, std::abs(m.omega));
    for (const auto& d : spec.drives) fmax = std::max(fmax, std::abs(d.omega_d));
    if (fmax > 0 && options.dt > 1.0 / (20.0 * fmax)) {
        std::ostringstream os;
        os << "step-size violation: dt = " << options.dt << " exceeds 1/(20*"
           << fmax << ")";
        throw std::invalid_argument(os.str());
    }

    StateSpaceModel base = build_state_space(sys);
    Eigen::MatrixXcd T = frames::quadrature_map(N);

    // oscillating counter-rotating blocks, applied on top of the RWA drift
    struct CrBlock {
        Eigen::MatrixXcd dH;  // per unit amplitude phase e^{-i delta t}
        double detuning;
    };
    std::vector<CrBlock> cr;
    if (options.include_cr) {
        for (const auto& t : sys.dropped_terms) {
            Eigen::MatrixXcd dH = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
            // term: amplitude * O * e^{-i delta t} + h.c. split into the two
            // non-Hermitian halves tracked with opposite phases
            int a = t.modes[0], b = t.modes[1];
            if (t.kind == frames::TermKind::hopping) {
                if (a == b) {
                    dH(a, a) += t.amplitude;
                    dH(a + N, a + N) += t.amplitude;
                } else {
                    dH(b, a) += t.amplitude;
                    dH(a + N, b + N) += t.amplitude;
                }
            } else {
                if (a == b) dH(a, b + N) += 2.0 * t.amplitude;
                else { dH(a, b + N) += t.amplitude; dH(b, a + N) += t.amplitude; }
            }
            cr.push_back({dH, t.detuning});
        }
    }

    Eigen::MatrixXcd Sz = sigma_z(N);
    auto drift_at = [&](double t) -> Eigen::MatrixXcd {
        Eigen::MatrixXcd A = base.drift;
        for (const auto& blk : cr) {
            Complex phase = std::polar(1.0, -blk.detuning * t);
            Eigen::MatrixXcd Ht = blk.dH * phase;
            Ht += Ht.adjoint().eval();
            A += Complex(0.0, -1.0) * Sz * Ht;
        }
        return A;
    };

    Eigen::VectorXcd mean = options.mean0.size() ? options.mean0
                                                 : Eigen::VectorXcd::Zero(2 * N);
    if (mean.size() != 2 * N) throw std::invalid_argument("mean0 has wrong dimension");
    Eigen::MatrixXd V = options.cov0.size() ? options.cov0
                                            : Eigen::MatrixXd::Identity(2 * N, 2 * N) * 0.5;
    if (V.rows() != 2 * N) throw std::invalid_argument("cov0 has wrong dimension");

    const Eigen::MatrixXd& D = base.diffusion;
    double dt = options.dt;
    int steps = static_cast<int>(std::ceil(options.t_end / dt));
    std::vector<TrajectoryPoint> traj;
    traj.reserve(steps / std::max(1, options.sample_stride) + 2);
    traj.push_back({0.0, mean, V});

    Eigen::MatrixXd Aq1, Aq2, Aq3;
    for (int k = 0; k < steps; ++k) {
        double t = k * dt;
        Eigen::MatrixXcd A1 = drift_at(t);
        Eigen::MatrixXcd A2 = drift_at(t + dt / 2);
        Eigen::MatrixXcd A3 = drift_at(t + dt);
        Aq1 = real_quad(T * A1 * T.adjoint(), "drift(t)");
        Aq2 = real_quad(T * A2 * T.adjoint(), "drift(t)");
        Aq3 = real_quad(T * A3 * T.adjoint(), "drift(t)");

        // mean: dv/dt = A(t) v
        Eigen::VectorXcd k1 = A1 * mean;
        Eigen::VectorXcd k2 = A2 * (mean + 0.5 * dt * k1);
        Eigen::VectorXcd k3 = A2 * (mean + 0.5 * dt * k2);
        Eigen::VectorXcd k4 = A3 * (mean + dt * k3);
        mean += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        // covariance: dV/dt = Aq V + V Aq^T + D
        auto f = [&](const Eigen::MatrixXd& Aq, const Eigen::MatrixXd& X) {
            return (Aq * X + X * Aq.transpose() + D).eval();
        };
        Eigen::MatrixXd K1 = f(Aq1, V);
        Eigen::MatrixXd K2 = f(Aq2, V + 0.5 * dt * K1);
        Eigen::MatrixXd K3 = f(Aq2, V + 0.5 * dt * K2);
        Eigen::MatrixXd K4 = f(Aq3, V + dt * K3);
        V += dt / 6.0 * (K1 + 2.0 * K2 + 2.0 * K3 + K4);

        if (!mean.allFinite() || !V.allFinite()) {
            std::ostringstream os;
            os << "non-finite state at t = " << (t + dt);
            throw std::runtime_error(os.str());
        }
        if ((k + 1) % std::max(1, options.sample_stride) == 0 || k == steps - 1)
            traj.push_back({t + dt, mean, V});
    }
    return traj;
}

std::string trajectory_to_csv(const std::vector<TrajectoryPoint>& trajectory) {
    std::string out;
    if (trajectory.empty()) return out;
    int N = static_cast<int>(trajectory.front().mean.size()) / 2;
    out += "t";
    for (int i = 0; i < N; ++i) {
        out += ", re<a_" + std::to_string(i + 1) + ">, im<a_" + std::to_string(i + 1) + ">";
    }
    for (int i = 0; i < 2 * N; ++i)
        for (int j = i; j < 2 * N; ++j)
            out += ", V_" + std::to_string(i + 1) + std::to_string(j + 1);
    out += "\n";
    for (const auto& p : trajectory) {
        append_number(out, p.t);
        for (int i = 0; i < N; ++i) {
            out += ", "; append_number(out, p.mean[i].real());
            out += ", "; append_number(out, p.mean[i].imag());
        }
        for (int i = 0; i < 2 * N; ++i)
            for (int j = i; j < 2 * N; ++j) {
                out += ", "; append_number(out, p.cov(i, j));
            }
        out += "\n";
    }
    return out;
}

}  // namespace paramnet::dynamics
