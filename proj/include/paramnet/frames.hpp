#pragma once

#include "paramnet/netmodel.hpp"

#include <optional>

namespace paramnet::frames {

enum class TermKind { hopping, squeezing };

// One interaction-frame term  g * O * exp(-i*detuning*t) + h.c. with
// O = a_i b_j^dag (hopping) or a_i^dag b_j^dag (squeezing), pair (i, j).
struct RotatingTerm {
    TermKind kind = TermKind::hopping;
    std::array<int, 2> modes{0, 0};
    Complex amplitude{0.0, 0.0};
    double detuning = 0.0;
    int source_drive = -1;  // index into spec.drives, -1 for static couplings
};

// Jump operator with mode-index-resolved coefficients.
struct JumpOperator {
    Eigen::VectorXcd u;  // annihilation weights
    Eigen::VectorXcd v;  // creation weights
    double rate = 0.0;
};

// Time-independent quadratic system in the doubled basis
// v = (a_1..a_N, a_1^dag..a_N^dag), Hhat = 1/2 v^dag H v.
struct EffectiveSystem {
    std::vector<std::string> labels;
    Eigen::MatrixXcd hamiltonian;
    std::vector<JumpOperator> jumps;
    Eigen::VectorXd kappa_port, kappa_int;
    Eigen::VectorXd n_port, n_int;
    std::vector<RotatingTerm> dropped_terms;

    int size() const { return static_cast<int>(labels.size()); }
    int index_of(const std::string& label) const;
};

// Expands every drive against the interaction-frame two-mode expansion:
// four terms per drive (hopping/squeezing x both tone exponentials), each with
// its exact detuning. Static couplings contribute their free-rotation terms.
std::vector<RotatingTerm> rotating_frame_terms(const NetworkSpec& spec);

struct RwaOptions {
    // Terms with |detuning| <= epsilon_res are kept as exact resonances with
    // the residual folded into mode detunings. Negative = auto
    // (1e-9 * max mode frequency).
    double epsilon_res = -1.0;
    // Dropped terms with |detuning| < rho_min * |amplitude| trigger a warning.
    double rho_min = 10.0;
};

struct RwaResult {
    EffectiveSystem system;
    std::vector<Diagnostic> warnings;
};

RwaResult rwa_reduce(const NetworkSpec& spec, const std::vector<RotatingTerm>& terms,
                     const RwaOptions& options = {});

// Maps a three-wave-mixing pump (stiff-pump approximation) onto the generic
// parametric drive: G(t) = g3*cbar*cos(w_p t + phi) == 2*lambda*cos(w_d t + phi).
ParametricDrive stiff_pump_linearize(double g3, double pump_amplitude,
                                     double pump_freq, double pump_phase);

// Unitary change of basis (a.., a^dag..) -> (X1, P1, X2, P2, ...),
// X = (a + a^dag)/sqrt(2), P = -i(a - a^dag)/sqrt(2).
Eigen::MatrixXcd quadrature_map(int num_modes);

// Real symmetric H_q with 1/2 q^T H_q q equal to the same Hamiltonian.
Eigen::MatrixXd quadrature_transform(const Eigen::MatrixXcd& hamiltonian);

// Standard symplectic form in the interleaved quadrature basis.
Eigen::MatrixXd symplectic_form(int num_modes);

// Full compile path: rotating-frame specs assemble directly; lab-frame specs
// go through rotating_frame_terms + rwa_reduce.
RwaResult compile_effective(const NetworkSpec& spec, const RwaOptions& options = {});

// Builds an EffectiveSystem directly from modes + quadratic terms; used by the
// amplifier builders.
EffectiveSystem make_effective(const std::vector<Mode>& modes);

// Resolves a JumpSpec against a label list.
JumpOperator resolve_jump(const JumpSpec& jump, const std::vector<std::string>& labels);

}  // namespace paramnet::frames
