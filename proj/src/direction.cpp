#include "paramnet/direction.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

namespace paramnet::direction {

namespace {

constexpr Complex kI{0.0, 1.0};

// linear form L = sum u_i a_i + v_i a_i^dag
struct LinearForm {
    Eigen::VectorXcd u, v;
};

LinearForm operator_A(CouplingKind kind, int a, int N) {
    LinearForm f{Eigen::VectorXcd::Zero(N), Eigen::VectorXcd::Zero(N)};
    const double s = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case CouplingKind::hopping:
        case CouplingKind::squeezing:
            f.u[a] = 1.0;
            break;
        case CouplingKind::qnd_xx:
            f.u[a] = s; f.v[a] = s;
            break;
        case CouplingKind::qnd_pp:
            f.u[a] = -kI * s; f.v[a] = kI * s;
            break;
    }
    return f;
}

LinearForm operator_B(CouplingKind kind, int b, int N) {
    LinearForm f{Eigen::VectorXcd::Zero(N), Eigen::VectorXcd::Zero(N)};
    const double s = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case CouplingKind::hopping:
            f.v[b] = 1.0;  // B = b^dag
            break;
        case CouplingKind::squeezing:
            f.u[b] = 1.0;  // B = b
            break;
        case CouplingKind::qnd_xx:
            f.u[b] = s; f.v[b] = s;
            break;
        case CouplingKind::qnd_pp:
            f.u[b] = -kI * s; f.v[b] = kI * s;
            break;
    }
    return f;
}

LinearForm dagger(const LinearForm& f) {
    LinearForm g;
    g.u = f.v.conjugate();
    g.v = f.u.conjugate();
    return g;
}

// adds coeff * A * B + h.c. to the doubled Hamiltonian (normal-ordering
// constants dropped)
void add_bilinear(Eigen::MatrixXcd& H, const LinearForm& A, const LinearForm& B,
                  Complex coeff) {
    int N = static_cast<int>(A.u.size());
    // A B = sum_ij (uA_i a_i + vA_i a_i^dag)(uB_j a_j + vB_j a_j^dag); each of
    // the four pieces together with its h.c. maps onto one coupling term
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            Complex uu = coeff * A.u[i] * B.u[j];    // a_i a_j
            Complex uv = coeff * A.u[i] * B.v[j];    // a_i a_j^dag
            Complex vu = coeff * A.v[i] * B.u[j];    // a_i^dag a_j
            Complex vv = coeff * A.v[i] * B.v[j];    // a_i^dag a_j^dag
            if (uu != 0.0) add_coupling(H, i, j, CouplingKind::squeezing, std::conj(uu));
            if (uv != 0.0) add_coupling(H, i, j, CouplingKind::hopping, uv);
            if (vu != 0.0) add_coupling(H, j, i, CouplingKind::hopping, vu);
            if (vv != 0.0) add_coupling(H, i, j, CouplingKind::squeezing, vv);
        }
    }
}

}  // namespace

BalancedSystem build_balanced_system(const BalanceSpec& balance,
                                     const std::vector<Mode>& modes) {
    BalancedSystem out;
    out.system = frames::make_effective(modes);
    int N = static_cast<int>(modes.size());
    auto label_index = [&](const std::string& l) {
        for (int i = 0; i < N; ++i)
            if (modes[i].label == l) return i;
        throw std::invalid_argument("balance spec references unknown mode '" + l + "'");
    };
    int a = label_index(balance.coherent.modes[0]);
    int b = label_index(balance.coherent.modes[1]);

    LinearForm A = operator_A(balance.coherent.kind, a, N);
    LinearForm B = operator_B(balance.coherent.kind, b, N);

    // H_coh = lambda/2 (A B + h.c.)
    add_bilinear(out.system.hamiltonian, A, B, balance.lambda / 2.0);

    // jump z = A + eta e^{i phi} B^dag
    frames::JumpOperator z;
    if (!balance.jump_template.coefficients.empty()) {
        z = frames::resolve_jump(balance.jump_template, out.system.labels);
    } else {
        LinearForm Bd = dagger(B);
        Complex w = balance.eta * std::polar(1.0, balance.phi);
        z.u = A.u + w * Bd.u;
        z.v = A.v + w * Bd.v;
        z.rate = balance.Gamma;
    }
    out.system.jumps.push_back(z);

    double tol = balance.balance_tolerance * std::max(balance.Gamma, 1e-300);
    bool matched = std::abs(balance.lambda - balance.eta * balance.Gamma) <= tol;
    double half_pi = std::numbers::pi / 2.0;
    double ptol = balance.balance_tolerance * half_pi + 1e-12;
    if (matched && std::abs(balance.phi + half_pi) <= ptol)
        out.direction = Direction::a_to_b;
    else if (matched && std::abs(balance.phi - half_pi) <= ptol)
        out.direction = Direction::b_to_a;
    return out;
}

NetworkSpec build_directional_bogoliubov_amp(double G, double Gamma, double kappa_c,
                                             double kappa) {
    if (G < 0 || Gamma < 0 || kappa_c < 0 || kappa < 0)
        throw std::invalid_argument("negative rate");
    NetworkSpec spec;
    spec.frame = Frame::rotating;
    spec.modes = {{"m1", 0.0, kappa, 0, 0, 0, RoleHint::signal},
                  {"m2", 0.0, kappa, 0, 0, 0, RoleHint::idler},
                  {"c", 0.0, kappa_c, 0, 0, 0, RoleHint::auxiliary}};
    // G X1 X2
    spec.static_couplings.push_back({CouplingKind::qnd_xx, {"m1", "m2"}, G});
    // sqrt(Gamma kappa_c / 2) (X1 Pc + X2 Xc); X P_c and X X_c split into
    // hopping + squeezing pieces with complex amplitudes
    double s = std::sqrt(Gamma * kappa_c / 2.0);
    spec.static_couplings.push_back({CouplingKind::hopping, {"m1", "c"}, s * kI / 2.0});
    spec.static_couplings.push_back({CouplingKind::squeezing, {"m1", "c"}, s * kI / 2.0});
    spec.static_couplings.push_back({CouplingKind::hopping, {"m2", "c"}, s / 2.0});
    spec.static_couplings.push_back({CouplingKind::squeezing, {"m2", "c"}, s / 2.0});
    return spec;
}

frames::EffectiveSystem build_two_reservoir_pp_amp(double G, double Gamma1,
                                                   double Gamma2, double kappa) {
    if (G < 0 || Gamma1 < 0 || Gamma2 < 0 || kappa < 0)
        throw std::invalid_argument("negative rate");
    std::vector<Mode> modes = {{"d1", 0.0, kappa}, {"d2", 0.0, kappa}};
    frames::EffectiveSystem sys = frames::make_effective(modes);
    add_coupling(sys.hamiltonian, 0, 1, CouplingKind::squeezing, G);
    frames::JumpOperator z1;  // d1^dag - i d2
    z1.u = Eigen::VectorXcd::Zero(2); z1.v = Eigen::VectorXcd::Zero(2);
    z1.v[0] = 1.0; z1.u[1] = -kI;
    z1.rate = Gamma1;
    frames::JumpOperator z2;  // d1 - i d2^dag
    z2.u = Eigen::VectorXcd::Zero(2); z2.v = Eigen::VectorXcd::Zero(2);
    z2.u[0] = 1.0; z2.v[1] = -kI;
    z2.rate = Gamma2;
    sys.jumps.push_back(z1);
    sys.jumps.push_back(z2);
    return sys;
}

double locate_two_reservoir_balance(double Gamma1, double Gamma2, double kappa) {
    auto rev_imag = [&](double G) {
        auto m = dynamics::build_state_space(
            build_two_reservoir_pp_amp(G, Gamma1, Gamma2, kappa));
        if (dynamics::stability_margin_quad(m.drift_quad) >= 0)
            throw std::runtime_error("two-reservoir balance scan hit an instability");
        // reverse element d1 <- d2^dag at w = 0 is purely imaginary and
        // changes sign at balance
        Eigen::MatrixXcd S = scattering::scattering_matrix(m, 0.0);
        return S(0, 3).imag();
    };
    // forward scan for the first sign change inside the stable region, then
    // bisection; the element flips sign again past the instability, so a
    // blind outward bracket is not safe
    const int steps = 512;
    double span = Gamma1 + Gamma2 + kappa;
    double lo = 0.0, flo = rev_imag(lo), hi = lo;
    bool bracketed = false;
    for (int k = 1; k <= steps; ++k) {
        double G = span * k / steps;
        double f;
        try {
            f = rev_imag(G);
        } catch (const std::runtime_error&) {
            break;
        }
        if (f == 0.0) return G;
        if (f * flo < 0) { hi = G; bracketed = true; break; }
        lo = G;
        flo = f;
    }
    if (!bracketed)
        throw std::runtime_error("two-reservoir balance not found in the stable region");
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        if (rev_imag(mid) * flo > 0) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

IsolationCurve isolation(const StateSpaceModel& model, const Path& forward,
                         const Path& reverse, const Eigen::VectorXd& grid) {
    if (dynamics::stability_margin_quad(model.drift_quad) >= 0)
        throw std::runtime_error("unstable model");
    IsolationCurve c;
    c.omega = grid;
    c.gain_fwd.resize(grid.size());
    c.gain_rev.resize(grid.size());
    c.isolation_db.resize(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        double gf = std::norm(scattering::scattering_element(model, forward, grid[i]));
        double gr = std::norm(scattering::scattering_element(model, reverse, grid[i]));
        c.gain_fwd[i] = gf;
        c.gain_rev[i] = gr;
        double iso;
        if (gr < 1e-30) {
            iso = kIsolationSentinelDb;
        } else {
            iso = 10.0 * std::log10(gf / gr);
            iso = std::clamp(iso, -kIsolationSentinelDb, kIsolationSentinelDb);
        }
        c.isolation_db[i] = iso;
    }
    return c;
}

std::string isolation_to_csv(const IsolationCurve& curve) {
    std::string out = "omega_rad_s, gain_fwd_db, gain_rev_db, isolation_db\n";
    char buf[32];
    auto put = [&](double x, bool last) {
        auto r = std::to_chars(buf, buf + sizeof buf, x);
        out.append(buf, r.ptr);
        out += last ? "\n" : ", ";
    };
    for (int i = 0; i < curve.omega.size(); ++i) {
        put(curve.omega[i], false);
        put(10.0 * std::log10(std::max(curve.gain_fwd[i], 1e-300)), false);
        put(10.0 * std::log10(std::max(curve.gain_rev[i], 1e-300)), false);
        put(curve.isolation_db[i], true);
    }
    return out;
}

}  // namespace paramnet::direction
