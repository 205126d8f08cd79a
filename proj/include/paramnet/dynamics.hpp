#pragma once

#include "paramnet/frames.hpp"

namespace paramnet::dynamics {

enum class ChannelKind { port, internal_loss, jump };

struct NoiseChannel {
    ChannelKind kind = ChannelKind::port;
    int mode = -1;        // owning mode for port/internal channels
    int jump_index = -1;  // index into EffectiveSystem::jumps
    double occupation = 0.0;
};

// Linear state-space form of the network:
//   dv/dt = A v + B v_in      (doubled basis, channel pairs (xi, xi^dag))
//   dV/dt = Aq V + V Aq^T + D (interleaved quadrature basis)
// Port outputs follow v_out = sqrt(kappa) v - v_in, which fixes the
// empty-cavity reflection to +1.
struct StateSpaceModel {
    std::vector<std::string> labels;
    Eigen::MatrixXcd drift;        // A, 2N x 2N
    Eigen::MatrixXd drift_quad;    // A_q, real
    Eigen::MatrixXcd input;        // B, 2N x 2*channels
    Eigen::MatrixXd diffusion;     // D, real symmetric PSD
    std::vector<NoiseChannel> channels;
    Eigen::VectorXd kappa_port;
    std::vector<int> ports;        // mode indices with kappa_port > 0, in order

    int num_modes() const { return static_cast<int>(labels.size()); }
    int num_ports() const { return static_cast<int>(ports.size()); }
    int port_index(const std::string& label) const;  // position in `ports`, -1 if absent
};

StateSpaceModel build_state_space(const frames::EffectiveSystem& system);

// First/second-moment increments of rate*L[z] with z = sum(u_i a_i + v_i a_i^dag).
struct LindbladContribution {
    Eigen::MatrixXcd drift;     // doubled basis
    Eigen::MatrixXd diffusion;  // quadrature basis
};

LindbladContribution lindblad_contribution(const frames::JumpOperator& jump);

struct EliminationResult {
    double Lambda = 0.0;  // induced coherent strength, Delta*l^2/(Delta^2+kappa^2/4)
    double Gamma = 0.0;   // engineered dissipative rate, kappa*l^2/(Delta^2+kappa^2/4)
    frames::EffectiveSystem reduced;
    std::vector<Diagnostic> warnings;
};

// Removes a strongly damped auxiliary mode, attaching the induced jump
// (rate Gamma) and the induced quadratic Hamiltonian (strength Lambda; sign
// fixed by the microscopic equations of motion, i.e. -Lambda z^dag z for
// positive detuning).
EliminationResult adiabatic_eliminate(const frames::EffectiveSystem& system,
                                      const std::string& mode_label);

// Steady covariance from Aq V + V Aq^T + D = 0 via a dense Kronecker solve.
// Throws if Aq is not Hurwitz.
Eigen::MatrixXd steady_covariance(const StateSpaceModel& model);

double stability_margin_quad(const Eigen::MatrixXd& drift_quad);

struct TrajectoryPoint {
    double t = 0.0;
    Eigen::VectorXcd mean;   // doubled basis
    Eigen::MatrixXd cov;     // quadrature basis
};

struct TimeDomainOptions {
    double t_end = 0.0;
    double dt = 0.0;
    bool include_cr = true;     // false = RWA generator only
    int sample_stride = 1;
    Eigen::VectorXcd mean0;     // defaults to zero
    Eigen::MatrixXd cov0;       // defaults to vacuum (I/2)
};

// Fixed-step RK4 integration of the interaction-frame dynamics with the exact
// modulation (include_cr) or the RWA generator. Throws on a step-size
// violation (dt must resolve the fastest retained frequency) and on
// non-finite state.
std::vector<TrajectoryPoint> integrate_time_domain(const NetworkSpec& spec,
                                                   const TimeDomainOptions& options);

std::string trajectory_to_csv(const std::vector<TrajectoryPoint>& trajectory);

}  // namespace paramnet::dynamics
