#pragma once

#include "paramnet/scattering.hpp"

namespace paramnet::noise {

using dynamics::StateSpaceModel;
using scattering::Path;
using scattering::PathEnd;

struct SpectrumCurve {
    Eigen::VectorXd omega;
    Eigen::VectorXd value;  // quanta; vacuum level 1/2
};

// Symmetrized spectral matrix of all port outputs in the interleaved port
// quadrature basis (X_p1, P_p1, ...). Every bath (ports, internal losses,
// engineered jumps through their fictitious ports) enters with occupation
// n + 1/2.
Eigen::MatrixXd output_spectral_matrix(const StateSpaceModel& model, double omega);

// Single output spectrum; quadrature PathEnd gives a quadrature spectrum,
// doubled-basis PathEnd the symmetrized field spectrum of the port.
SpectrumCurve output_spectrum(const StateSpaceModel& model, const PathEnd& out,
                              const Eigen::VectorXd& omega_grid);

struct AddedNoiseResult {
    SpectrumCurve curve;  // zero-gain grid points are omitted
    std::vector<Diagnostic> warnings;
};

// n_add(w) = (S_out(w) - G(w)/2) / G(w): total output noise minus the
// amplified signal vacuum, referred back to the input.
AddedNoiseResult added_noise(const StateSpaceModel& model, const Path& path,
                             const Eigen::VectorXd& omega_grid);

struct SqueezingReport {
    SpectrumCurve variance;        // output variance of the squeezed quadrature
    double min_variance = 0.0;     // at w = 0
    double bandwidth_fwhm = 0.0;   // FWHM of (1/2 - variance)
    double bandwidth_3db = 0.0;    // full width where variance <= 2 * min
    double gain0 = 0.0;            // on-resonance power gain of the amplified path
    double dpa_bandwidth_3db = 0.0;  // equal-gain single-mode reference
    double dpa_ratio = 0.0;          // bandwidth_3db / dpa_bandwidth_3db
};

// Squeezing spectrum of `squeezed_out` with the gain taken from `amplified`;
// the reference is a single-mode degenerate amplifier tuned to the same
// on-resonance gain with the squeezed port's kappa.
SqueezingReport squeezing_analysis(const StateSpaceModel& model,
                                   const PathEnd& squeezed_out, const Path& amplified,
                                   const Eigen::VectorXd& omega_grid);

std::string spectrum_to_csv(const SpectrumCurve& curve, const std::string& value_header);

}  // namespace paramnet::noise
