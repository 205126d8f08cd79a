#pragma once

#include "paramnet/frames.hpp"

namespace paramnet::systems {

// Frequency converter: two modes with hopping lambda in the rotating frame.
// Impedance matched at cooperativity 4 lambda^2 / kappa^2 = 1.
NetworkSpec fc_network(double lambda, double kappa);

// Two-mode squeezer H = lambda(a^dag b^dag + a b); unstable at lambda = kappa/2.
NetworkSpec pa_network(double lambda, double kappa);

// Degenerate parametric amplifier with squeezing amplitude i*lambda, so the
// X quadrature is amplified and P squeezed; threshold lambda = kappa/4.
NetworkSpec dpa_network(double lambda, double kappa);

// Dissipative amplifier, full three-mode form: g c^dag (d1 + eta d2^dag) + h.c.
// with g = sqrt(C kappa kappa_c) / 2, so the induced rate is Gamma = C kappa.
NetworkSpec dissipative_amp_network(double cooperativity, double eta, double kappa,
                                    double kappa_c);

// Markovian form after eliminating the auxiliary mode: two modes plus the
// engineered jump sqrt(Gamma) (d1 + eta d2^dag), Gamma = C kappa.
frames::EffectiveSystem dissipative_amp_reduced(double cooperativity, double eta,
                                                double kappa);

// Gain/conversion amplifier H = G1(d1^dag d2^dag + h.c.) + G2(d1^dag d2 + h.c.)
// with G_n = (kappa/2) sqrt(C_n).
NetworkSpec gc_amp_network(double c1, double c2, double kappa);

// C_n for the GC amplifier such that DeltaC = c1 - c2 and the on-resonance
// photon gain at DeltaC = -1 equals `gain`.
void gc_cooperativities_for_gain(double gain, double& c1, double& c2);

}  // namespace paramnet::systems
