#include "paramnet/noise.hpp"

#include "paramnet/systems.hpp"

#include <Eigen/LU>

#include <charconv>
#include <cmath>

namespace paramnet::noise {

namespace {

constexpr Complex kI{0.0, 1.0};

// port outputs (doubled) <- all noise channels (doubled pairs), with the
// -identity feedthrough into each port's own channel
Eigen::MatrixXcd full_transfer(const StateSpaceModel& model, double omega) {
    int N = model.num_modes();
    int P = model.num_ports();
    Eigen::MatrixXcd M = -kI * omega * Eigen::MatrixXcd::Identity(2 * N, 2 * N) - model.drift;
    Eigen::MatrixXcd X = M.partialPivLu().solve(model.input);

    Eigen::MatrixXcd SK = Eigen::MatrixXcd::Zero(2 * P, 2 * N);
    for (int k = 0; k < P; ++k) {
        double s = std::sqrt(model.kappa_port[model.ports[k]]);
        SK(k, model.ports[k]) = s;
        SK(k + P, model.ports[k] + N) = s;
    }
    Eigen::MatrixXcd T = SK * X;
    int col = 0;
    for (const auto& ch : model.channels) {
        if (ch.kind == dynamics::ChannelKind::port) {
            int p = 0;
            while (model.ports[p] != ch.mode) ++p;
            T(p, col) -= 1.0;
            T(p + P, col + 1) -= 1.0;
        }
        col += 2;
    }
    return T;
}

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

Eigen::MatrixXcd channel_quadrature_map(int C) {
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(2 * C, 2 * C);
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < C; ++i) {
        U(2 * i, 2 * i) = s;
        U(2 * i, 2 * i + 1) = s;
        U(2 * i + 1, 2 * i) = -kI * s;
        U(2 * i + 1, 2 * i + 1) = kI * s;
    }
    return U;
}

}  // namespace

Eigen::MatrixXd output_spectral_matrix(const StateSpaceModel& model, double omega) {
    int P = model.num_ports();
    int C = static_cast<int>(model.channels.size());
    Eigen::MatrixXcd Tq = port_quadrature_map(P) * full_transfer(model, omega) *
                          channel_quadrature_map(C).adjoint();
    Eigen::VectorXd occ(2 * C);
    for (int c = 0; c < C; ++c) {
        occ[2 * c] = model.channels[c].occupation + 0.5;
        occ[2 * c + 1] = occ[2 * c];
    }
    Eigen::MatrixXcd S = Tq * occ.asDiagonal() * Tq.adjoint();
    return S.real();
}

namespace {

double field_spectrum(const StateSpaceModel& model, int port_row, double omega) {
    // symmetrized quanta spectrum of the port field itself: average of the
    // two quadrature spectra (equals each when phase preserving)
    Eigen::MatrixXd S = output_spectral_matrix(model, omega);
    return 0.5 * (S(2 * port_row, 2 * port_row) + S(2 * port_row + 1, 2 * port_row + 1));
}

}  // namespace

SpectrumCurve output_spectrum(const StateSpaceModel& model, const PathEnd& out,
                              const Eigen::VectorXd& grid) {
    int p = model.port_index(out.port);
    if (p < 0) throw std::invalid_argument("no port on mode '" + out.port + "'");
    SpectrumCurve c;
    c.omega = grid;
    c.value.resize(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        if (out.is_quadrature()) {
            Eigen::MatrixXd S = output_spectral_matrix(model, grid[i]);
            c.value[i] = S(2 * p + out.quadrature, 2 * p + out.quadrature);
        } else {
            c.value[i] = field_spectrum(model, p, grid[i]);
        }
    }
    return c;
}

AddedNoiseResult added_noise(const StateSpaceModel& model, const Path& path,
                             const Eigen::VectorXd& grid) {
    AddedNoiseResult out;
    std::vector<double> ws, vals;
    ws.reserve(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        double w = grid[i];
        double G = std::norm(scattering::scattering_element(model, path, w));
        if (G <= 0) {
            out.warnings.push_back({Diagnostic::Severity::warning,
                "zero gain at omega = " + std::to_string(w) + "; point omitted"});
            continue;
        }
        double S;
        if (path.out.is_quadrature()) {
            Eigen::MatrixXd Sm = output_spectral_matrix(model, w);
            int p = model.port_index(path.out.port);
            S = Sm(2 * p + path.out.quadrature, 2 * p + path.out.quadrature);
        } else {
            S = field_spectrum(model, model.port_index(path.out.port), w);
        }
        ws.push_back(w);
        vals.push_back((S - G * 0.5) / G);
    }
    out.curve.omega = Eigen::Map<Eigen::VectorXd>(ws.data(), ws.size());
    out.curve.value = Eigen::Map<Eigen::VectorXd>(vals.data(), vals.size());
    return out;
}

namespace {

// full width where f(w) <= threshold around w = 0, by outward bisection
double threshold_width(const std::function<double(double)>& f, double threshold,
                       double w_hint) {
    double inside = 0.0, outside = w_hint;
    for (int it = 0; it < 200 && f(outside) <= threshold; ++it) outside *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (inside + outside);
        if (f(mid) <= threshold) inside = mid; else outside = mid;
        if (outside - inside < 1e-9 * outside) break;
    }
    return 2.0 * 0.5 * (inside + outside);
}

}  // namespace

SqueezingReport squeezing_analysis(const StateSpaceModel& model,
                                   const PathEnd& squeezed_out, const Path& amplified,
                                   const Eigen::VectorXd& grid) {
    if (!squeezed_out.is_quadrature())
        throw std::invalid_argument("squeezing analysis needs a quadrature output");
    SqueezingReport rep;
    rep.variance = output_spectrum(model, squeezed_out, grid);
    int p = model.port_index(squeezed_out.port);
    auto var_at = [&](double w) {
        Eigen::MatrixXd S = output_spectral_matrix(model, w);
        return S(2 * p + squeezed_out.quadrature, 2 * p + squeezed_out.quadrature);
    };
    rep.min_variance = var_at(0.0);
    rep.gain0 = std::norm(scattering::scattering_element(model, amplified, 0.0));

    if (rep.min_variance >= 0.5) {
        rep.bandwidth_fwhm = 0.0;
        rep.bandwidth_3db = 0.0;
        return rep;  // no squeezing on resonance
    }
    double kappa = model.kappa_port[model.ports[p]];
    double half_sq = 0.5 * (0.5 - rep.min_variance);
    rep.bandwidth_fwhm = threshold_width(
        [&](double w) { return 0.5 - var_at(w) >= half_sq ? 0.0 : 1.0; }, 0.5, kappa);
    rep.bandwidth_3db = threshold_width(var_at, 2.0 * rep.min_variance, kappa);

    // equal-gain single-mode degenerate reference on the same machinery
    if (rep.gain0 > 1.0) {
        double r = (std::sqrt(rep.gain0) - 1.0) / (std::sqrt(rep.gain0) + 1.0);
        StateSpaceModel dpa = dynamics::build_state_space(
            frames::compile_effective(systems::dpa_network(r * kappa / 4.0, kappa)).system);
        auto dpa_var = [&](double w) {
            Eigen::MatrixXd S = output_spectral_matrix(dpa, w);
            return S(1, 1);  // P quadrature squeezed for the i*lambda convention
        };
        rep.dpa_bandwidth_3db = threshold_width(dpa_var, 2.0 * dpa_var(0.0), kappa);
        rep.dpa_ratio = rep.bandwidth_3db / rep.dpa_bandwidth_3db;
    }
    return rep;
}

std::string spectrum_to_csv(const SpectrumCurve& curve, const std::string& value_header) {
    std::string out = "omega_rad_s, " + value_header + "\n";
    char buf[32];
    for (int i = 0; i < curve.omega.size(); ++i) {
        auto r1 = std::to_chars(buf, buf + sizeof buf, curve.omega[i]);
        out.append(buf, r1.ptr);
        out += ", ";
        auto r2 = std::to_chars(buf, buf + sizeof buf, curve.value[i]);
        out.append(buf, r2.ptr);
        out += "\n";
    }
    return out;
}

}  // namespace paramnet::noise
