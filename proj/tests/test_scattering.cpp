#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "abring/scattering.hpp"
#include "abring/verify.hpp"

using namespace abring;

namespace {

bool close(Complex a, Complex b, double tol = 1e-13) {
    return std::abs(a - b) <= tol;
}

ModelParams draw_regular(SplitMix64& rng, double min_distance) {
    for (;;) {
        const ModelParams p{rng.uniform(0.0, 1.5), rng.uniform(0.0, kPi / 2),
                            rng.uniform(0.2, kPi - 0.2)};
        if (classify(p).distance > min_distance) {
            return p;
        }
    }
}

}  // namespace

TEST_CASE("transfer matrix, golden point (0.5, 0.3, 1.0)") {
    const TransferMatrix m = transfer_matrix({0.5, 0.3, 1.0});
    CHECK(close(m.m11, {0.77359751378652557, -0.059371846076510322}));
    CHECK(close(m.m12, {0.0, -0.28785308858568372}));
    CHECK(close(m.m21, {0.0, 0.28785308858568372}));
    CHECK(close(m.m22, {0.77359751378652557, 0.059371846076510322}));
    CHECK(close(m.det, {0.51911872883490898, 0.0}));
    CHECK(close(m.det, m.m11 * m.m22 - m.m12 * m.m21, 1e-15));
}

TEST_CASE("transfer matrix at the spectral singularity") {
    const TransferMatrix m = transfer_matrix({1.0, kPi / 4, kPi / 2});
    CHECK(m.m11 == Complex(0.0));
    CHECK(m.m12 == Complex(0.0, -1.0));  // M22 = 0 signature
    CHECK(m.m21 == Complex(0.0, 1.0));
    CHECK(m.m22 == Complex(0.0));
    // k -> -k flips the off-diagonal signs
    const TransferMatrix n = transfer_matrix({1.0, kPi / 4, -kPi / 2});
    CHECK(n.m12 == Complex(0.0, 1.0));
    CHECK(n.m21 == Complex(0.0, -1.0));
}

TEST_CASE("M22 vanishes linearly along the singular ray") {
    double prev = 0.0;
    for (const double delta : {1e-3, 1e-4, 1e-5}) {
        const TransferMatrix m = transfer_matrix({1.0, kPi / 4, kPi / 2 + delta});
        const double a = std::abs(m.m22);
        CHECK(a < 2 * delta);
        CHECK(a > 0.5 * delta);
        if (prev > 0) {
            CHECK(prev / a == doctest::Approx(10.0).epsilon(0.01));
        }
        prev = a;
    }
}

TEST_CASE("transfer matrix entries agree with the linear-solve amplitudes") {
    // the left and right solutions pin M columnwise:
    //   M (1, r_L)^T = (t_L, 0)^T  and  M (0, t_R)^T = (r_R, 1)^T
    // so M = [[t_L, r_R], [0, 1]] . [[1, 0], [r_L, t_R]]^{-1} entry for entry
    SplitMix64 rng(20);
    for (int i = 0; i < 100; ++i) {
        const ModelParams p = draw_regular(rng, 5e-2);
        const DerivedQuantities d = derived_quantities(p);
        if (std::abs(d.xi_plus) < 1e-2 || std::abs(d.eta.imag()) < 1e-2) {
            continue;
        }
        const ScatteringAmplitudes s = oracle_amplitudes(p);
        // [[1, 0], [r_L, t_R]]^{-1} = [[1, 0], [-r_L/t_R, 1/t_R]]
        const Complex inv21 = -s.r_left / s.t_right;
        const Complex inv22 = 1.0 / s.t_right;
        const TransferMatrix m = transfer_matrix(p);
        CHECK(std::abs(m.m11 - (s.t_left + s.r_right * inv21)) < 1e-10);
        CHECK(std::abs(m.m12 - s.r_right * inv22) < 1e-10);
        CHECK(std::abs(m.m21 - inv21) < 1e-10);
        CHECK(std::abs(m.m22 - inv22) < 1e-10);
    }
}

TEST_CASE("det M") {
    CHECK(close(det_transfer({0.3, kPi / 8, kPi / 2}), {-1.0, 0.0}, 1e-13));
    CHECK(close(det_transfer({0.5, 0.3, 1.0}), {0.51911872883490898, 0.0}, 1e-15));
    // gamma = 0: xi+ = xi-
    CHECK(close(det_transfer({0.0, 0.3, 1.0}), {1.0, 0.0}, 1e-15));

    // engineered exact cancellation 2 cos k cos 2phi = -gamma sin 2phi
    const double g = -2.0 * std::cos(1.0) * std::cos(kPi / 2);
    CHECK_THROWS_AS(det_transfer({g, kPi / 4, 1.0}), DivisionByZero);

    SplitMix64 rng(21);
    for (int i = 0; i < 200; ++i) {
        const ModelParams p = draw_regular(rng, 5e-2);
        if (std::abs(derived_quantities(p).xi_plus) < 1e-2) {
            continue;
        }
        CHECK(std::abs(transfer_matrix(p).det - det_transfer(p)) < 1e-10);
    }
}

TEST_CASE("amplitudes, golden point (0.5, 0.3, 1.0)") {
    const ScatteringAmplitudes s = scattering_amplitudes({0.5, 0.3, 1.0});
    CHECK(close(s.r_left, {-0.028390349137707543, -0.3699178139106447}));
    CHECK(close(s.t_left, {0.6671155285294823, -0.051199596391195303}));
    CHECK(close(s.r_right, s.r_left, 1e-15));
    CHECK(close(s.t_right, {1.2850923911505407, -0.098627912165885052}));
}

TEST_CASE("amplitude limits") {
    // uniform chain
    const ScatteringAmplitudes a = scattering_amplitudes({0.0, 0.0, 1.0});
    CHECK(close(a.t_left, {1.0, 0.0}, 1e-14));
    CHECK(std::abs(a.r_left) < 1e-14);
    // phi = pi/2 flips the transmission sign
    const ScatteringAmplitudes b = scattering_amplitudes({0.0, kPi / 2, 1.0});
    CHECK(close(b.t_left, {-1.0, 0.0}, 1e-14));
    CHECK(std::abs(b.r_left) < 1e-14);
    // quasi-singularity: large finite transmission
    const ScatteringAmplitudes c =
        scattering_amplitudes({0.707, kPi / 8 + 0.01, kPi / 2 + 1e-3});
    CHECK(close(c.t_left, {7.3000356425958733, -49.681102708361157}, 1e-9));
    CHECK(std::abs(c.t_left) == doctest::Approx(50.21456449).epsilon(1e-8));
    CHECK_THROWS_AS(scattering_amplitudes({1.0, kPi / 4, kPi / 2}),
                    SingularTransmission);
}

TEST_CASE("hermitian unitarity |r|^2 + |t|^2 = 1") {
    SplitMix64 rng(22);
    for (int i = 0; i < 300; ++i) {
        const double phi = rng.uniform(0.0, kPi / 2);
        const double k = rng.uniform(0.2, kPi - 0.2);
        const ScatteringAmplitudes s = scattering_amplitudes({0.0, phi, k});
        CHECK(std::abs(std::norm(s.r_left) + std::norm(s.t_left) - 1.0) < 1e-10);
    }
}

TEST_CASE("flux reversal relations") {
    SplitMix64 rng(23);
    for (int i = 0; i < 200; ++i) {
        const ModelParams p = draw_regular(rng, 1e-2);
        const ScatteringAmplitudes s = scattering_amplitudes(p);
        const ScatteringAmplitudes flipped = scattering_amplitudes(p.with_phi(-p.phi));
        CHECK(s.t_right == flipped.t_left);  // same code path, flipped input
        CHECK(s.r_right == flipped.r_left);
        CHECK(std::abs(s.r_left - s.r_right) < 1e-12);  // r even in phi
    }
}

TEST_CASE("oracle solve matches the closed forms") {
    const ScatteringAmplitudes u = oracle_amplitudes({0.0, 0.0, 1.0});
    CHECK(close(u.t_left, {1.0, 0.0}, 1e-14));
    CHECK(std::abs(u.r_left) < 1e-14);

    SplitMix64 rng(24);
    for (int i = 0; i < 200; ++i) {
        const ModelParams p = draw_regular(rng, 1e-3);
        const ScatteringAmplitudes closed = scattering_amplitudes(p);
        const ScatteringAmplitudes direct = oracle_amplitudes(p);
        CHECK(std::abs(closed.t_left - direct.t_left) < 1e-10);
        CHECK(std::abs(closed.r_left - direct.r_left) < 1e-10);
        CHECK(std::abs(closed.t_right - direct.t_right) < 1e-10);
        CHECK(std::abs(closed.r_right - direct.r_right) < 1e-10);
    }

    // pole approach: |t| grows like 1/distance
    const ScatteringAmplitudes pole = oracle_amplitudes({1.0, kPi / 4, kPi / 2 + 1e-6});
    CHECK(std::abs(pole.t_left) > 1e3);
    CHECK_THROWS_AS(oracle_amplitudes({1.0, kPi / 4, kPi / 2}), SingularSystem);
}

TEST_CASE("pole scaling |t| * delta -> gamma_c^2/(2 - gamma_c^2)") {
    const double gc = 0.8;
    const double pc = std::asin(gc) / 2;
    const double expected = gc * gc / (2 - gc * gc);
    double values[3];
    int i = 0;
    for (const double delta : {1e-3, 1e-4, 1e-5}) {
        const ScatteringAmplitudes s = scattering_amplitudes({gc, pc, kPi / 2 + delta});
        values[i++] = std::abs(s.t_left) * delta;
    }
    for (const double v : values) {
        CHECK(v == doctest::Approx(expected).epsilon(0.02));
    }
    CHECK(values[1] / values[0] == doctest::Approx(1.0).epsilon(0.02));
    CHECK(values[2] / values[1] == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("near-singularity approximation") {
    // on the gamma = 1 ray the expansion is rho = i (2 - gamma_c^2) delta
    const CriticalPoint cp1{kPi / 2, kPi / 4, 1.0};
    const ApproxAmplitude a = approx_amplitude({1.0, kPi / 4, kPi / 2 + 1e-4}, cp1);
    CHECK(std::abs(a.rho - Complex(0.0, 1e-4)) < 1e-12);
    CHECK(std::abs(a.omega) < 1e-10);
    CHECK(close(a.t_approx, {1e4, 0.0}, 1e-4));
    CHECK_FALSE(a.extrapolated);

    // at k = pi/2 exactly the quadratic term takes over: rho = -2 eps^2
    const ApproxAmplitude b = approx_amplitude({1.0, kPi / 4 + 1e-3, kPi / 2}, cp1);
    CHECK(std::abs(b.rho - Complex(-2e-6, 0.0)) < 1e-12);
    CHECK(b.omega == doctest::Approx(kPi / 2).epsilon(1e-9));

    // pi jump across phi_c for gamma_c < 1
    const double gc = std::sin(kPi / 4);
    const CriticalPoint cp2{kPi / 2, kPi / 8, gc};
    const ApproxAmplitude lo = approx_amplitude({gc, kPi / 8 - 1e-3, kPi / 2}, cp2);
    const ApproxAmplitude hi = approx_amplitude({gc, kPi / 8 + 1e-3, kPi / 2}, cp2);
    CHECK(std::abs(wrap_angle(hi.omega - lo.omega)) == doctest::Approx(kPi).epsilon(1e-6));

    CHECK(approx_amplitude({1.0, kPi / 4 + 0.2, kPi / 2}, cp1).extrapolated);
    CHECK_THROWS_AS(approx_amplitude({0.707, kPi / 8, kPi / 2}, {kPi / 2, kPi / 8, 0.707}),
                    InvalidCriticalPoint);
    CHECK_THROWS_AS(approx_amplitude({1.0, kPi / 4, 1.0}, {1.0, kPi / 4, 1.0}),
                    InvalidCriticalPoint);
}

TEST_CASE("approximation error shrinks with distance to the critical point") {
    const double gc = 0.707;
    const double pc = std::asin(gc) / 2;
    const CriticalPoint cp{kPi / 2, pc, gc};
    double err[2];
    int i = 0;
    for (const double delta : {1e-3, 1e-4}) {
        const ModelParams p{gc, pc, kPi / 2 + delta};
        const Complex exact = scattering_amplitudes(p).t_left;
        const Complex approx = approx_amplitude(p, cp).t_approx;
        err[i++] = std::abs(approx - exact) / std::abs(exact);
    }
    CHECK(err[1] < 0.3 * err[0]);
}

TEST_CASE("phase profile lapse detection") {
    // single lapse framed around the lower critical flux
    const PhaseProfile prof = phase_profile(kPi / 2 + 1e-4, 0.707, 0.3, 0.5, 101);
    REQUIRE(prof.phi_samples.size() == 101);
    REQUIRE(prof.lapse_events.size() == 1);
    const double step = 0.2 / 100;
    CHECK(std::abs(prof.lapse_events[0].phi - kPi / 8) < 2 * step);
    CHECK(std::abs(prof.lapse_events[0].jump) > 2.5);

    // gamma > 1: no lapse (away from the edges where t has its trivial zeros)
    const PhaseProfile none =
        phase_profile(kPi / 2 + 1e-5, 1.2, 0.01, kPi / 2 - 0.01, 2001);
    CHECK(none.lapse_events.empty());

    // gamma = 1: pulse of height ~ pi/2 centered at pi/4, no abrupt events
    const PhaseProfile pulse =
        phase_profile(kPi / 2 + 1e-5, 1.0, kPi / 4 - 0.15, kPi / 4 + 0.15, 601);
    CHECK(pulse.lapse_events.empty());
    CHECK(std::abs(pulse.omega_samples[300]) < 0.05);  // dip floor at pi/4
    CHECK(pulse.omega_samples[0] == doctest::Approx(kPi / 2).epsilon(1e-3));
    CHECK(pulse.omega_samples[600] == doctest::Approx(kPi / 2).epsilon(1e-3));

    CHECK_THROWS_AS(phase_profile(1.0, 0.5, 0.0, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(phase_profile(1.0, 0.5, 1.0, 0.5, 11), std::invalid_argument);
}

TEST_CASE("phase profile basics") {
    const PhaseProfile prof = phase_profile(1.0, 0.5, 0.1, 1.2, 57);
    REQUIRE(prof.phi_samples.size() == 57);
    REQUIRE(prof.omega_samples.size() == 57);
    REQUIRE(prof.magnitude_samples.size() == 57);
    for (std::size_t i = 0; i + 1 < prof.phi_samples.size(); ++i) {
        CHECK(prof.phi_samples[i] < prof.phi_samples[i + 1]);
    }
    for (const double m : prof.magnitude_samples) {
        CHECK(m >= 0.0);
    }
    // a threshold above pi suppresses every event
    const PhaseProfile quiet =
        phase_profile(kPi / 2 + 1e-4, 0.707, 0.3, 0.5, 101, 3.2);
    CHECK(quiet.lapse_events.empty());
}

TEST_CASE("phase jumps sharpen as k approaches the band center") {
    // largest adjacent-sample phase step in a window around phi_c grows as
    // the transition width (2 - gamma^2) dk shrinks
    double prev_max = 0.0;
    for (const double dk : {1e-2, 1e-3, 1e-4, 1e-5}) {
        const PhaseProfile prof = phase_profile(kPi / 2 + dk, 0.707, 0.3, 0.5, 2001);
        double max_jump = 0.0;
        for (std::size_t i = 0; i + 1 < prof.omega_samples.size(); ++i) {
            max_jump = std::max(
                max_jump, std::abs(wrap_angle(prof.omega_samples[i + 1] -
                                              prof.omega_samples[i])));
        }
        CHECK(max_jump > prev_max);
        prev_max = max_jump;
    }
    CHECK(prev_max > 2.0);  // essentially the full pi lapse at dk = 1e-5
}

TEST_CASE("phase profile marks singular samples as gaps") {
    // the grid passes through the exact singularity at phi = pi/4
    const PhaseProfile prof =
        phase_profile(kPi / 2, 1.0, kPi / 4 - 0.01, kPi / 4 + 0.01, 21);
    int gaps = 0;
    for (const double w : prof.omega_samples) {
        gaps += std::isnan(w) ? 1 : 0;
    }
    CHECK(gaps == 1);
    CHECK(std::isnan(prof.magnitude_samples[10]));
}

TEST_CASE("max phase shift") {
    CHECK(max_phase_shift(kPi / 2 + 1e-5, 1.0, 2001) ==
          doctest::Approx(kPi / 2).epsilon(0.02));
    CHECK(max_phase_shift(kPi / 2 + 1e-5, 1.3, 2001) < 0.2);
    const PhaseShift detail = max_phase_shift_detail(kPi / 2 + 1e-5, 0.9, 2001);
    CHECK(detail.delta_omega == doctest::Approx(kPi).epsilon(0.01));
    CHECK(detail.phi_star >= 0.0);
    CHECK(detail.phi_star <= kPi / 2);
    CHECK_THROWS_AS(max_phase_shift(1.0, 0.5, 1), std::invalid_argument);
    // the reference point phi = pi/4 itself sits on the singularity here
    CHECK_THROWS_AS(max_phase_shift(kPi / 2, 1.0, 101), SingularTransmission);
}

TEST_CASE("degenerate transfer-matrix division is refused off the locus") {
    // at (0, 0, 0) chi underflows to exactly zero but the point is Hermitian,
    // not singular, so the generic division has no valid limit to return
    CHECK_THROWS_AS(transfer_matrix({0.0, 0.0, 0.0}), DegenerateDivision);
}
