#include "paramnet/systems.hpp"

#include <cmath>

namespace paramnet::systems {

NetworkSpec fc_network(double lambda, double kappa) {
    NetworkSpec spec;
    spec.frame = Frame::rotating;
    spec.modes = {{"a", 0.0, kappa}, {"b", 0.0, kappa}};
    spec.static_couplings.push_back({CouplingKind::hopping, {"a", "b"}, lambda});
    return spec;
}

NetworkSpec pa_network(double lambda, double kappa) {
    NetworkSpec spec;
    spec.frame = Frame::rotating;
    spec.modes = {{"a", 0.0, kappa}, {"b", 0.0, kappa}};
    spec.static_couplings.push_back({CouplingKind::squeezing, {"a", "b"}, lambda});
    return spec;
}

NetworkSpec dpa_network(double lambda, double kappa) {
    NetworkSpec spec;
    spec.frame = Frame::rotating;
    spec.modes = {{"a", 0.0, kappa}};
    spec.static_couplings.push_back({CouplingKind::squeezing, {"a", "a"},
                                     Complex(0.0, lambda)});
    return spec;
}

NetworkSpec dissipative_amp_network(double cooperativity, double eta, double kappa,
                                    double kappa_c) {
    double g = 0.5 * std::sqrt(cooperativity * kappa * kappa_c);
    NetworkSpec spec;
    spec.frame = Frame::rotating;
    spec.modes = {{"d1", 0.0, kappa, 0, 0, 0, RoleHint::signal},
                  {"d2", 0.0, kappa, 0, 0, 0, RoleHint::idler},
                  {"c", 0.0, kappa_c, 0, 0, 0, RoleHint::auxiliary}};
    // g c^dag d1 + h.c. == hopping(d1, c, g); eta g c^dag d2^dag + h.c.
    spec.static_couplings.push_back({CouplingKind::hopping, {"d1", "c"}, g});
    spec.static_couplings.push_back({CouplingKind::squeezing, {"d2", "c"}, eta * g});
    return spec;
}

frames::EffectiveSystem dissipative_amp_reduced(double cooperativity, double eta,
                                                double kappa) {
    std::vector<Mode> modes = {{"d1", 0.0, kappa, 0, 0, 0, RoleHint::signal},
                               {"d2", 0.0, kappa, 0, 0, 0, RoleHint::idler}};
    frames::EffectiveSystem sys = frames::make_effective(modes);
    frames::JumpOperator z;
    z.u = Eigen::VectorXcd::Zero(2);
    z.v = Eigen::VectorXcd::Zero(2);
    z.u[0] = 1.0;
    z.v[1] = eta;
    z.rate = cooperativity * kappa;
    sys.jumps.push_back(z);
    return sys;
}

NetworkSpec gc_amp_network(double c1, double c2, double kappa) {
    NetworkSpec spec;
    spec.frame = Frame::rotating;
    spec.modes = {{"d1", 0.0, kappa}, {"d2", 0.0, kappa}};
    double g1 = 0.5 * kappa * std::sqrt(c1);
    double g2 = 0.5 * kappa * std::sqrt(c2);
    spec.static_couplings.push_back({CouplingKind::squeezing, {"d1", "d2"}, g1});
    spec.static_couplings.push_back({CouplingKind::hopping, {"d1", "d2"}, g2});
    return spec;
}

void gc_cooperativities_for_gain(double gain, double& c1, double& c2) {
    c1 = (gain - 1.0) * (gain - 1.0) / (4.0 * gain);
    c2 = (gain + 1.0) * (gain + 1.0) / (4.0 * gain);
}

}  // namespace paramnet::systems
