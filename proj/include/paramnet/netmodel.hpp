#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace paramnet {

using Complex = std::complex<double>;

// All rates and frequencies are rad/s internally. Network files may declare
// unit "Hz"; values are multiplied by 2*pi on load.

enum class RoleHint { none, signal, idler, auxiliary };

struct Mode {
    std::string label;
    double omega = 0.0;        // resonance frequency (lab) or detuning (rotating)
    double kappa_port = 0.0;   // external port coupling rate
    double kappa_int = 0.0;    // internal loss rate
    double n_thermal_port = 0.0;
    double n_thermal_int = 0.0;
    RoleHint role_hint = RoleHint::none;

    double kappa_total() const { return kappa_port + kappa_int; }
};

enum class CouplingKind { hopping, squeezing, qnd_xx, qnd_pp };

// hopping   -> g a b^dag + g* a^dag b
// squeezing -> g a^dag b^dag + g* a b
// qnd_xx    -> Re(g) X_a X_b,  qnd_pp -> Re(g) P_a P_b
struct StaticCoupling {
    CouplingKind kind = CouplingKind::hopping;
    std::array<std::string, 2> modes;
    Complex amplitude{0.0, 0.0};
};

// M(t) = 2*lambda*cos(omega_d t + phi) on (a + a^dag)(b + b^dag)
struct ParametricDrive {
    std::array<std::string, 2> modes;
    double lambda = 0.0;
    double omega_d = 0.0;
    double phi = 0.0;
};

struct JumpCoefficient {
    Complex u{0.0, 0.0};  // weight of the annihilation operator
    Complex v{0.0, 0.0};  // weight of the creation operator
};

// z = sum_i (u_i a_i + v_i a_i^dag), dissipator rate*L[z]
struct JumpSpec {
    std::map<std::string, JumpCoefficient> coefficients;
    double rate = 0.0;
};

enum class Frame { lab, rotating };

struct NetworkSpec {
    std::vector<Mode> modes;
    std::vector<StaticCoupling> static_couplings;
    std::vector<ParametricDrive> drives;
    std::vector<JumpSpec> jumps;
    Frame frame = Frame::lab;

    int index_of(const std::string& label) const;   // -1 if absent
    const Mode& mode(const std::string& label) const;
    int size() const { return static_cast<int>(modes.size()); }
};

struct Diagnostic {
    enum class Severity { warning, error };
    Severity severity = Severity::error;
    std::string message;
};

bool has_errors(const std::vector<Diagnostic>& diags);
std::string join_messages(const std::vector<Diagnostic>& diags);

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int column)
        : std::runtime_error(msg), line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_ = 0, column_ = 0;
};

// Parses a UTF-8 JSON network document. Unknown keys are errors (fail-closed).
// Defaults: unit="rad/s", frame="lab", kappa_int=0, thermal occupations 0.
NetworkSpec parse_network(const std::string& document);

// Inverse of parse_network up to key ordering; always writes unit "rad/s".
std::string serialize_network(const NetworkSpec& spec);

// Structural diagnostics. Empty result iff all type invariants hold.
std::vector<Diagnostic> validate(const NetworkSpec& spec);

// ---- doubled-basis assembly helpers ----
// Basis ordering v = (a_1..a_N, a_1^dag..a_N^dag); Hamiltonians are stored as
// the 2N x 2N Hermitian matrix H with Hhat = 1/2 v^dag H v.

// Adds one static-coupling term between mode indices i and j.
void add_coupling(Eigen::MatrixXcd& H, int i, int j, CouplingKind kind, Complex g);

// Detuning/frequency term omega * a_i^dag a_i.
void add_detuning(Eigen::MatrixXcd& H, int i, double omega);

// Static couplings only (no free-evolution part), indices from spec order.
Eigen::MatrixXcd assemble_static_hamiltonian(const NetworkSpec& spec);

// Max deviation from Hermiticity and particle-hole symmetry H = Sx H* Sx.
double hamiltonian_symmetry_defect(const Eigen::MatrixXcd& H);

}  // namespace paramnet
