#include "paramnet/scattering.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <charconv>
#include <cmath>
#include <sstream>

namespace paramnet::scattering {

namespace {

constexpr Complex kI{0.0, 1.0};

Eigen::MatrixXcd port_quadrature_map(int P) {
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(2 * P, 2 * P);
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < P; ++i) {
        U(2 * i, i) = s;
        U(2 * i, i + P) = s;
        U(2 * i + 1, i) = -kI * s;
        U(2 * i + 1, i + P) = kI * s;
    }
    return U;
}

int resolve_port(const StateSpaceModel& model, const std::string& label) {
    int p = model.port_index(label);
    if (p < 0) throw std::invalid_argument("no port on mode '" + label + "'");
    return p;
}

int row_of(const StateSpaceModel& model, const PathEnd& end) {
    int p = resolve_port(model, end.port);
    int P = model.num_ports();
    if (end.is_quadrature()) return 2 * p + end.quadrature;
    return end.conjugate ? p + P : p;
}

}  // namespace

Eigen::VectorXd omega_grid(double lo, double hi, int points) {
    if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
    return Eigen::VectorXd::LinSpaced(points, lo, hi);
}

Eigen::MatrixXcd scattering_matrix(const StateSpaceModel& model, double omega) {
    int N = model.num_modes();
    int P = model.num_ports();
    Eigen::MatrixXcd M = -kI * omega * Eigen::MatrixXcd::Identity(2 * N, 2 * N) - model.drift;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
    // detect a pole on the real axis via the LU diagonal
    double dmin = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    double scale = std::max(M.cwiseAbs().maxCoeff(), 1e-300);
    if (dmin < 1e-13 * scale)
        throw std::runtime_error("pole on the real axis: system at instability threshold");
    Eigen::MatrixXcd Minv = lu.solve(Eigen::MatrixXcd::Identity(2 * N, 2 * N));

    Eigen::MatrixXcd SK = Eigen::MatrixXcd::Zero(2 * P, 2 * N);
    for (int k = 0; k < P; ++k) {
        double s = std::sqrt(model.kappa_port[model.ports[k]]);
        SK(k, model.ports[k]) = s;
        SK(k + P, model.ports[k] + N) = s;
    }
    return SK * Minv * SK.transpose() - Eigen::MatrixXcd::Identity(2 * P, 2 * P);
}

Eigen::MatrixXcd scattering_matrix_quad(const StateSpaceModel& model, double omega) {
    Eigen::MatrixXcd S = scattering_matrix(model, omega);
    Eigen::MatrixXcd U = port_quadrature_map(model.num_ports());
    return U * S * U.adjoint();
}

Complex scattering_element(const StateSpaceModel& model, const Path& path, double omega) {
    if (path.in.is_quadrature() != path.out.is_quadrature())
        throw std::invalid_argument("mixed doubled/quadrature path request");
    if (path.in.is_quadrature())
        return scattering_matrix_quad(model, omega)(row_of(model, path.out),
                                                    row_of(model, path.in));
    return scattering_matrix(model, omega)(row_of(model, path.out), row_of(model, path.in));
}

ScatteringResult scattering_sweep(const StateSpaceModel& model,
                                  const Eigen::VectorXd& grid) {
    ScatteringResult r;
    r.omega = grid;
    r.doubled.reserve(grid.size());
    r.quadrature.reserve(grid.size());
    Eigen::MatrixXcd U = port_quadrature_map(model.num_ports());
    for (int i = 0; i < grid.size(); ++i) {
        r.doubled.push_back(scattering_matrix(model, grid[i]));
        r.quadrature.push_back(U * r.doubled.back() * U.adjoint());
    }
    for (int p : model.ports) r.port_labels.push_back(model.labels[p]);
    return r;
}

GainCurve power_gain(const StateSpaceModel& model, const Path& path,
                     const Eigen::VectorXd& grid) {
    if (grid.size() == 0) throw std::invalid_argument("empty frequency grid");
    GainCurve c;
    c.omega = grid;
    c.gain.resize(grid.size());
    for (int i = 0; i < grid.size(); ++i)
        c.gain[i] = std::norm(scattering_element(model, path, grid[i]));
    return c;
}

namespace {

// half-max crossing by bisection on a continuous gain function
double cross_half(const std::function<double(double)>& g, double inside, double outside,
                  double half) {
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (inside + outside);
        if (g(mid) >= half) inside = mid; else outside = mid;
        if (std::abs(outside - inside) <= 1e-7 * std::max(std::abs(inside), std::abs(outside)) ||
            std::abs(outside - inside) < 1e-300)
            break;
    }
    return 0.5 * (inside + outside);
}

double fwhm_impl(const std::function<double(double)>& g, const Eigen::VectorXd& omega,
                 const Eigen::VectorXd& gain) {
    int n = static_cast<int>(omega.size());
    int ipk = 0;
    gain.maxCoeff(&ipk);
    // local refinement around the peak (x10 density) before the crossing search
    double wpk = omega[ipk], gpk = gain[ipk];
    {
        int lo = std::max(0, ipk - 1), hi = std::min(n - 1, ipk + 1);
        double a = omega[lo], b = omega[hi];
        for (int k = 0; k <= 20; ++k) {
            double w = a + (b - a) * k / 20.0;
            double v = g(w);
            if (v > gpk) { gpk = v; wpk = w; }
        }
    }
    double half = gpk / 2.0;
    // walk outward on the grid to bracket the crossings
    double left = std::numeric_limits<double>::quiet_NaN();
    double right = left;
    for (int i = ipk; i >= 0; --i) {
        if (gain[i] < half) { left = cross_half(g, omega[i + 1], omega[i], half); break; }
    }
    for (int i = ipk; i < n; ++i) {
        if (gain[i] < half) { right = cross_half(g, omega[i - 1], omega[i], half); break; }
    }
    if (ipk == 0 && std::isnan(left)) {
        // peak at the grid edge; tolerate symmetric curves sampled from 0
        if (std::abs(omega[0]) < 1e-12 * std::max(1.0, std::abs(omega[n - 1])) && !std::isnan(right))
            return 2.0 * std::abs(right - wpk);
    }
    if (std::isnan(left) || std::isnan(right))
        throw std::runtime_error("grid too narrow: half maximum not crossed");
    return right - left;
}

}  // namespace

double bandwidth(const StateSpaceModel& model, const Path& path,
                 const Eigen::VectorXd& grid) {
    GainCurve c = power_gain(model, path, grid);
    auto g = [&](double w) { return std::norm(scattering_element(model, path, w)); };
    return fwhm_impl(g, c.omega, c.gain);
}

double bandwidth(const GainCurve& curve) {
    // monotone linear interpolation between samples
    auto g = [&](double w) {
        const auto& x = curve.omega;
        int n = static_cast<int>(x.size());
        if (w <= x[0]) return curve.gain[0];
        if (w >= x[n - 1]) return curve.gain[n - 1];
        int lo = 0, hi = n - 1;
        while (hi - lo > 1) {
            int mid = (lo + hi) / 2;
            if (x[mid] <= w) lo = mid; else hi = mid;
        }
        double f = (w - x[lo]) / (x[hi] - x[lo]);
        return (1 - f) * curve.gain[lo] + f * curve.gain[hi];
    };
    return fwhm_impl(g, curve.omega, curve.gain);
}

std::vector<GbwRow> gbw_sweep(const std::function<StateSpaceModel(double)>& builder,
                              const Path& path, std::span<const double> values,
                              const Eigen::VectorXd& grid) {
    std::vector<GbwRow> rows;
    rows.reserve(values.size());
    for (double v : values) {
        GbwRow row;
        row.parameter = v;
        StateSpaceModel m = builder(v);
        if (stability_margin(m) >= 0) {
            row.stable = false;
            row.g0 = row.bandwidth = row.gbw = std::numeric_limits<double>::quiet_NaN();
        } else {
            GainCurve c = power_gain(m, path, grid);
            row.g0 = c.gain.maxCoeff();
            row.bandwidth = bandwidth(m, path, grid);
            row.gbw = std::sqrt(row.g0) * row.bandwidth;
        }
        rows.push_back(row);
    }
    return rows;
}

double stability_margin(const StateSpaceModel& model) {
    return dynamics::stability_margin_quad(model.drift_quad);
}

ModeSplittingResult mode_splitting_threshold(
    const std::function<StateSpaceModel(double)>& builder, double cooperativity) {
    if (cooperativity <= 1.0)
        throw std::invalid_argument("no splitting regime: cooperativity must exceed 1");
    auto resolvability = [&](double eta) {
        StateSpaceModel m = builder(eta);
        Eigen::EigenSolver<Eigen::MatrixXd> es(m.drift_quad, false);
        double best = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < es.eigenvalues().size(); ++i) {
            auto ev = es.eigenvalues()[i];
            best = std::max(best, std::abs(ev.imag()) - std::abs(ev.real()));
        }
        return best;
    };
    double lo = 1e-4, hi = 1.0 - 1e-9;
    double flo = resolvability(lo), fhi = resolvability(hi);
    if (flo * fhi > 0)
        throw std::runtime_error("mode-splitting onset not bracketed in eta (0, 1)");
    // resolvability decreases with eta; bisect to the sign change
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        if (resolvability(mid) > 0) lo = mid; else hi = mid;
    }
    ModeSplittingResult r;
    r.eta_detected = 0.5 * (lo + hi);
    r.eta_closed_form = std::sqrt(1.0 - 1.0 / cooperativity);
    return r;
}

std::string gain_curve_to_csv(const GainCurve& curve) {
    std::string out = "omega_rad_s, gain_db\n";
    char buf[32];
    for (int i = 0; i < curve.omega.size(); ++i) {
        auto r1 = std::to_chars(buf, buf + sizeof buf, curve.omega[i]);
        out.append(buf, r1.ptr);
        out += ", ";
        double db = 10.0 * std::log10(std::max(curve.gain[i], 1e-300));
        auto r2 = std::to_chars(buf, buf + sizeof buf, db);
        out.append(buf, r2.ptr);
        out += "\n";
    }
    return out;
}

}  // namespace paramnet::scattering
