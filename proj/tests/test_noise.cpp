#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

#include "paramnet/noise.hpp"
#include "paramnet/systems.hpp"

#include <cmath>
#include <numbers>

using namespace paramnet;
using scattering::Path;
using scattering::PathEnd;

namespace {

dynamics::StateSpaceModel model_of(const NetworkSpec& spec) {
    return dynamics::build_state_space(frames::compile_effective(spec).system);
}

}  // namespace

TEST_CASE("empty cavity reflects its own bath: vacuum and thermal") {
    NetworkSpec spec;
    spec.frame = Frame::rotating;
    spec.modes = {{"a", 0.0, 1.0}};
    auto grid = scattering::omega_grid(-3, 3, 7);
    auto s = noise::output_spectrum(model_of(spec), {"a", 0, false}, grid);
    for (int i = 0; i < s.value.size(); ++i)
        CHECK(s.value[i] == doctest::Approx(0.5).epsilon(1e-12));

    spec.modes[0].n_thermal_port = 1.0;
    s = noise::output_spectrum(model_of(spec), {"a", -1, false}, grid);
    for (int i = 0; i < s.value.size(); ++i)
        CHECK(s.value[i] == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("DPA squeezed output agrees with the covariance integral identity") {
    // integral of [S_out - 1/2] dw/2pi equals kappa (V - 1/2) for a vacuum port
    double kappa = 1.0, lam = kappa / 8.0;
    auto m = model_of(systems::dpa_network(lam, kappa));
    auto V = dynamics::steady_covariance(m);
    for (int q : {0, 1}) {
        // tan substitution with a rational tail correction
        double scale = 2.0, wmax = 800.0;
        double thmax = std::atan(wmax / scale);
        int n = 20001;
        double I = 0.0, prev = 0.0;
        auto integrand = [&](double th) {
            double w = scale * std::tan(th);
            Eigen::MatrixXd S = noise::output_spectral_matrix(m, w);
            return (S(q, q) - 0.5) * scale / std::pow(std::cos(th), 2);
        };
        for (int k = 0; k < n; ++k) {
            double th = -thmax + 2 * thmax * k / (n - 1.0);
            double v = integrand(th);
            if (k > 0) I += 0.5 * (v + prev) * (2 * thmax / (n - 1));
            prev = v;
        }
        I /= 2 * std::numbers::pi;
        // tail ~ c2 / w^2 on both sides
        Eigen::MatrixXd Sp = noise::output_spectral_matrix(m, wmax);
        Eigen::MatrixXd Sm = noise::output_spectral_matrix(m, -wmax);
        I += ((Sp(q, q) - 0.5) + (Sm(q, q) - 0.5)) * wmax / (2 * std::numbers::pi);
        double rhs = kappa * (V(q, q) - 0.5);
        CHECK(std::abs(I - rhs) <= 1e-8 * std::max(std::abs(rhs), 1e-3));
    }
    // and the squeezed quadrature sits below vacuum
    Eigen::MatrixXd S0 = noise::output_spectral_matrix(m, 0.0);
    CHECK(S0(1, 1) < 0.5);
    CHECK(V(1, 1) < 0.5);
}

TEST_CASE("vacuum through a passive lossless network stays at 1/2 everywhere") {
    auto m = model_of(systems::fc_network(0.37, 1.0));
    auto grid = scattering::omega_grid(-4, 4, 17);
    for (const char* port : {"a", "b"}) {
        for (int q : {0, 1}) {
            auto s = noise::output_spectrum(m, {port, q, false}, grid);
            for (int i = 0; i < s.value.size(); ++i)
                CHECK(s.value[i] == doctest::Approx(0.5).epsilon(1e-12));
        }
    }
}

TEST_CASE("added noise of the dissipative amplifier") {
    auto grid = scattering::omega_grid(-1e-6, 1e-6, 3);
    Path refl{{"d1", -1, false}, {"d1", -1, false}};
    SUBCASE("vacuum baths approach 1/2 + 2/sqrt(G0)") {
        for (double g0 : {100.0, 400.0, 2500.0}) {
            double C = (std::sqrt(g0) + 1) / 2.0;
            auto m = dynamics::build_state_space(systems::dissipative_amp_reduced(C, 1.0, 1.0));
            auto res = noise::added_noise(m, refl, grid);
            double expect = 0.5 + 2.0 / std::sqrt(g0);
            CHECK(std::abs(res.curve.value[1] - expect) < std::abs(2.0 / std::sqrt(g0)) * 0.5);
        }
    }
    SUBCASE("idler thermal occupation shifts the floor by +1") {
        double g0 = 400.0;
        double C = (std::sqrt(g0) + 1) / 2.0;
        auto sys = systems::dissipative_amp_reduced(C, 1.0, 1.0);
        sys.n_port[1] = 1.0;
        auto res = noise::added_noise(dynamics::build_state_space(sys), refl, grid);
        double expect = 1.5 + 4.0 / std::sqrt(g0);
        CHECK(std::abs(res.curve.value[1] - expect) < std::abs(2.0 / std::sqrt(g0)) * 0.5);
    }
}

TEST_CASE("phase-sensitive GC amplifier is quantum limited at DeltaC = -1") {
    double g0 = 400.0, c1, c2;
    systems::gc_cooperativities_for_gain(g0, c1, c2);
    auto m = model_of(systems::gc_amp_network(c1, c2, 1.0));
    Path amp{{"d1", 0, false}, {"d2", 1, false}};
    auto res = noise::added_noise(m, amp, scattering::omega_grid(-1e-6, 1e-6, 3));
    // n_add = |R(0)|^2 / (2 G+) and R(0) = 0 at DeltaC = -1
    CHECK(std::abs(res.curve.value[1]) < 1e-10);
}

TEST_CASE("zero-gain grid points are omitted with a warning") {
    // matched FC link: reflection vanishes on resonance
    auto m = model_of(systems::fc_network(0.5, 1.0));
    Path refl{{"a", -1, false}, {"a", -1, false}};
    auto res = noise::added_noise(m, refl, scattering::omega_grid(-1, 1, 3));
    CHECK(res.curve.omega.size() == 2);
    CHECK(!res.warnings.empty());
}

TEST_CASE("noise floor: sub-vacuum output only on squeezing paths") {
    testing::RandomNetworks gen(17);
    for (int trial = 0; trial < 12; ++trial) {
        auto spec = gen.stable_spec(false, true);
        auto m = model_of(spec);
        for (double w : {0.0, 0.4}) {
            Eigen::MatrixXd S = noise::output_spectral_matrix(m, w);
            // without squeezing-type couplings or jumps, outputs stay at or
            // above vacuum
            bool has_squeezing = !spec.jumps.empty();
            for (const auto& c : spec.static_couplings)
                if (c.kind == CouplingKind::squeezing) has_squeezing = true;
            if (!has_squeezing)
                for (int i = 0; i < S.rows(); ++i) CHECK(S(i, i) > 0.5 - 1e-10);
        }
    }
}

TEST_CASE("phase-preserving paths respect the half-quantum bound") {
    // large-gain amplifiers with vacuum baths: n_add(0) >= 1/2
    auto grid = scattering::omega_grid(-1e-9, 1e-9, 3);
    Path refl{{"d1", -1, false}, {"d1", -1, false}};
    for (double C : {6.0, 11.0, 26.0}) {
        auto m = dynamics::build_state_space(systems::dissipative_amp_reduced(C, 1.0, 1.0));
        auto res = noise::added_noise(m, refl, grid);
        CHECK(res.curve.value[1] >= 0.5 - 1e-6);
    }
    // two-mode PA in reflection also obeys the bound
    for (double lam : {0.4, 0.45}) {
        auto m = model_of(systems::pa_network(lam, 1.0));
        auto res = noise::added_noise(m, refl.in.port == "d1"
                                             ? Path{{"a", -1, false}, {"a", -1, false}}
                                             : refl,
                                      grid);
        if (std::norm(scattering::scattering_element(
                m, {{"a", -1, false}, {"a", -1, false}}, 0.0)) >= 100.0)
            CHECK(res.curve.value[1] >= 0.5 - 1e-6);
    }
}

TEST_CASE("squeezing analysis of the impedance-matched GC amplifier") {
    double g0 = 100.0, c1, c2, kappa = 1.0;
    systems::gc_cooperativities_for_gain(g0, c1, c2);
    auto m = model_of(systems::gc_amp_network(c1, c2, kappa));
    Path amp{{"d1", 0, false}, {"d2", 1, false}};
    auto rep = noise::squeezing_analysis(m, {"d2", 0, false}, amp,
                                         scattering::omega_grid(-2, 2, 801));
    CHECK(rep.gain0 == doctest::Approx(g0).epsilon(1e-10));
    CHECK(rep.min_variance == doctest::Approx(1.0 / (2 * g0)).epsilon(1e-10));
    // variance returns to vacuum far off resonance
    CHECK(rep.variance.value[0] == doctest::Approx(0.5).epsilon(0.05));
    // exact 3 dB width: w' = (4/(G-2))^(1/4), full width in omega = kappa w'
    double expect_3db = kappa * std::pow(4.0 / (g0 - 2.0), 0.25);
    CHECK(rep.bandwidth_3db == doctest::Approx(expect_3db).epsilon(1e-6));
    // squeezing-dip FWHM is sqrt(2) kappa at DeltaC = -1, gain independent
    CHECK(rep.bandwidth_fwhm == doctest::Approx(std::sqrt(2.0) * kappa).epsilon(1e-6));
    // reference single-mode width: a b / sqrt(a^2 - 2 b^2) doubled
    double r = (std::sqrt(g0) - 1) / (std::sqrt(g0) + 1);
    double a = kappa * (1 + r) / 2, b = kappa * (1 - r) / 2;
    double expect_dpa = 2 * a * b / std::sqrt(a * a - 2 * b * b);
    CHECK(rep.dpa_bandwidth_3db == doctest::Approx(expect_dpa).epsilon(1e-6));
    CHECK(rep.dpa_ratio == doctest::Approx(2.4473).epsilon(1e-3));  // at G = 100
}

TEST_CASE("on-resonance squeezing appears whenever the amplifier has gain") {
    for (double c1 : {1.0, 4.0, 12.0, 20.0}) {
        double c2 = c1 + 1.0;  // DeltaC = -1
        auto m = model_of(systems::gc_amp_network(c1, c2, 1.0));
        Path amp{{"d1", 0, false}, {"d2", 1, false}};
        auto rep = noise::squeezing_analysis(m, {"d2", 0, false}, amp,
                                             scattering::omega_grid(-2, 2, 201));
        CHECK(rep.gain0 > 1.0);
        CHECK(rep.min_variance < 0.5);
    }
}

TEST_CASE("Parseval cross-check on random damped networks") {
    testing::RandomNetworks gen(23);
    for (int trial = 0; trial < 6; ++trial) {
        auto spec = gen.stable_spec();
        auto m = model_of(spec);
        auto V = dynamics::steady_covariance(m);
        int p = m.ports[0];
        double nport = 0.0;
        for (const auto& ch : m.channels)
            if (ch.kind == dynamics::ChannelKind::port && ch.mode == p) nport = ch.occupation;
        double base = nport + 0.5;
        double kappa = m.kappa_port[p];
        double scale = 3.0, wmax = 900.0;
        double thmax = std::atan(wmax / scale);
        int n = 24001;
        double I = 0.0, prev = 0.0;
        for (int k = 0; k < n; ++k) {
            double th = -thmax + 2 * thmax * k / (n - 1.0);
            double w = scale * std::tan(th);
            Eigen::MatrixXd S = noise::output_spectral_matrix(m, w);
            double v = (S(0, 0) - base) * scale / std::pow(std::cos(th), 2);
            if (k > 0) I += 0.5 * (v + prev) * (2 * thmax / (n - 1));
            prev = v;
        }
        I /= 2 * std::numbers::pi;
        Eigen::MatrixXd Sp = noise::output_spectral_matrix(m, wmax);
        Eigen::MatrixXd Sm = noise::output_spectral_matrix(m, -wmax);
        I += ((Sp(0, 0) - base) + (Sm(0, 0) - base)) * wmax / (2 * std::numbers::pi);
        double rhs = kappa * (V(2 * p, 2 * p) - base);
        CHECK(std::abs(I - rhs) <= 1e-6 * std::max(std::abs(rhs), 1e-2));
    }
}
