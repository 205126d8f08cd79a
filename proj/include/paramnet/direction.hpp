#pragma once

#include "paramnet/noise.hpp"

namespace paramnet::direction {

using dynamics::StateSpaceModel;
using scattering::Path;

// Coherent + dissipative pair implementing the balance recipe: the coherent
// Hamiltonian is lambda/2 (A B + h.c.) with (A, B) named by the coupling kind
// (hopping: A = a, B = b^dag; squeezing: A = a, B = b; qnd_XX: A = X_a,
// B = X_b), and the engineered jump is z = A + eta e^{i phi} B^dag at rate
// Gamma. Balanced iff lambda = eta*Gamma and phi = +-pi/2.
struct BalanceSpec {
    StaticCoupling coherent;   // kind + mode pair select the operator pair
    JumpSpec jump_template;    // optional override; empty = derived from eta/phi
    double eta = 1.0;
    double phi = 0.0;
    double Gamma = 0.0;
    double lambda = 0.0;
    double balance_tolerance = 1e-12;  // relative to Gamma
};

enum class Direction { none, a_to_b, b_to_a };

struct BalancedSystem {
    frames::EffectiveSystem system;
    Direction direction = Direction::none;
};

BalancedSystem build_balanced_system(const BalanceSpec& balance,
                                     const std::vector<Mode>& modes);

// Three-mode non-Markovian directional amplifier: coherent G X1 X2 plus a
// damped auxiliary mode c with H_SB = sqrt(Gamma kappa_c / 2)(X1 Pc + X2 Xc).
// Directionality condition G = Gamma.
NetworkSpec build_directional_bogoliubov_amp(double G, double Gamma, double kappa_c,
                                             double kappa);

// Markovian two-reservoir phase-preserving directional amplifier:
// coherent G(d1^dag d2^dag + d1 d2), jumps Gamma1 L[d1^dag - i d2] and
// Gamma2 L[d1 - i d2^dag].
frames::EffectiveSystem build_two_reservoir_pp_amp(double G, double Gamma1,
                                                   double Gamma2, double kappa);

// Numerically locates the coherent strength at which the reverse on-resonance
// scattering element of the two-reservoir amplifier vanishes (bisection on its
// imaginary part).
double locate_two_reservoir_balance(double Gamma1, double Gamma2, double kappa);

struct IsolationCurve {
    Eigen::VectorXd omega;
    Eigen::VectorXd gain_fwd, gain_rev;  // power gains
    Eigen::VectorXd isolation_db;        // capped at the +-300 dB sentinel
};

inline constexpr double kIsolationSentinelDb = 300.0;

IsolationCurve isolation(const StateSpaceModel& model, const Path& forward,
                         const Path& reverse, const Eigen::VectorXd& omega_grid);

std::string isolation_to_csv(const IsolationCurve& curve);

}  // namespace paramnet::direction
