#pragma once

#include "paramnet/dynamics.hpp"

#include <functional>
#include <span>

namespace paramnet::scattering {

using dynamics::StateSpaceModel;

// One side of a scattering path. Doubled-basis rows address the port field
// (annihilation row; conjugate = creation row); quadrature rows address X/P.
struct PathEnd {
    std::string port;
    int quadrature = -1;      // -1 = doubled basis, 0 = X, 1 = P
    bool conjugate = false;   // doubled basis only

    bool is_quadrature() const { return quadrature >= 0; }
};

struct Path {
    PathEnd in, out;
};

// Port-restricted S(w) = sqrtK (-i w I - A)^{-1} sqrtK - I in the doubled
// basis; rows/cols ordered (a_p1..a_pP, a_p1^dag..a_pP^dag).
Eigen::MatrixXcd scattering_matrix(const StateSpaceModel& model, double omega);

// The same matrix in the interleaved port quadrature basis (X_p1, P_p1, ...).
Eigen::MatrixXcd scattering_matrix_quad(const StateSpaceModel& model, double omega);

// Single path element S_out,in(w).
Complex scattering_element(const StateSpaceModel& model, const Path& path, double omega);

struct ScatteringResult {
    Eigen::VectorXd omega;
    std::vector<Eigen::MatrixXcd> doubled;
    std::vector<Eigen::MatrixXcd> quadrature;
    std::vector<std::string> port_labels;
};

ScatteringResult scattering_sweep(const StateSpaceModel& model,
                                  const Eigen::VectorXd& omega_grid);

struct GainCurve {
    Eigen::VectorXd omega;
    Eigen::VectorXd gain;  // |S element|^2
};

GainCurve power_gain(const StateSpaceModel& model, const Path& path,
                     const Eigen::VectorXd& omega_grid);

// Full width at half maximum of the power gain around its global peak. The
// model-backed overload refines half-max crossings by bisection on the exact
// response (1e-6 relative); the curve-only overload interpolates.
double bandwidth(const StateSpaceModel& model, const Path& path,
                 const Eigen::VectorXd& omega_grid);
double bandwidth(const GainCurve& curve);

struct GbwRow {
    double parameter = 0.0;
    double g0 = 0.0;         // peak power gain
    double bandwidth = 0.0;  // rad/s
    double gbw = 0.0;        // sqrt(g0) * bandwidth
    bool stable = true;
};

std::vector<GbwRow> gbw_sweep(const std::function<StateSpaceModel(double)>& builder,
                              const Path& path, std::span<const double> values,
                              const Eigen::VectorXd& omega_grid);

// Max real part of the quadrature drift spectrum; negative = stable.
double stability_margin(const StateSpaceModel& model);

struct ModeSplittingResult {
    double eta_detected = 0.0;
    double eta_closed_form = 0.0;  // sqrt(1 - 1/C)
};

// Locates the onset of visible mode splitting by bisection over eta. The
// detector is normal-mode resolvability of the drift matrix: splitting is
// visible once an eigenvalue pair's imaginary separation exceeds its
// linewidth, i.e. |Im lambda| >= |Re lambda| for some eigenvalue. Counting
// local maxima of the gain curve does not resolve the onset (the reflection
// notch masks the side peaks), so the pole criterion is used.
ModeSplittingResult mode_splitting_threshold(
    const std::function<StateSpaceModel(double)>& builder_over_eta, double cooperativity);

// Evenly spaced grid helper.
Eigen::VectorXd omega_grid(double lo, double hi, int points);

std::string gain_curve_to_csv(const GainCurve& curve);

}  // namespace paramnet::scattering
