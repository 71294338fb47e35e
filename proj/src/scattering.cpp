#include "abring/scattering.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

namespace abring {

namespace {

const Complex kI{0.0, 1.0};

Complex phase(double x) { return std::polar(1.0, x); }

// (r, t) for a single incidence direction from the displayed closed forms.
// The denominator equals chi, so it vanishes exactly at the singularity.
std::pair<Complex, Complex> closed_form_rt(double gamma, double phi, double k,
                                           double tol) {
    const double g2 = gamma * gamma;
    const Complex w = phase(2.0 * k) + 1.0 + g2;
    const double cos_k = std::cos(k);
    const double cos_2phi = std::cos(2.0 * phi);
    const double sin_2phi = std::sin(2.0 * phi);
    const double bracket =
        4.0 * cos_k * cos_k * cos_2phi * cos_2phi - g2 * sin_2phi * sin_2phi;
    const Complex den =
        phase(2.0 * k) * bracket - (phase(-2.0 * k) + 1.0 + g2) * (phase(-2.0 * k) + 1.0 + g2);
    if (std::abs(den) < tol) {
        throw SingularTransmission(
            "scattering_amplitudes: denominator vanishes at/near the spectral "
            "singularity");
    }
    const Complex eta = phase(k) * w;
    const Complex r = (std::norm(w) - bracket) / den;
    const Complex t = (eta - std::conj(eta)) * (2.0 * cos_k * cos_2phi - gamma * sin_2phi) / den;
    return {r, t};
}

// Four lattice equations at sites -1, +, -, 1 for one incidence direction;
// unknowns (r, t, psi_+, psi_-).
std::pair<Complex, Complex> oracle_rt(double gamma, double phi, double k, bool left) {
    const double eps = 2.0 * std::cos(k);
    const double rt2 = std::sqrt(2.0);
    Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero();
    Eigen::Vector4cd b = Eigen::Vector4cd::Zero();
    const Complex e_k = phase(k);
    const Complex e_2k = phase(2.0 * k);
    const Complex e_mk = phase(-k);
    const Complex e_m2k = phase(-2.0 * k);
    const Complex e_p = phase(phi);
    const Complex e_mp = phase(-phi);
    const Complex lead = e_2k - eps * e_k;  // = -1, the reflected-wave recurrence

    if (left) {
        a(0, 0) = lead;                    // j = -1 equation
        a(0, 2) = e_mp / rt2;
        a(0, 3) = e_p / rt2;
        b(0) = eps * e_mk - e_m2k;
        a(1, 0) = e_p * e_k / rt2;         // sigma = +
        a(1, 1) = e_mp * e_k / rt2;
        a(1, 2) = kI * gamma - eps;
        b(1) = -e_p * e_mk / rt2;
        a(2, 0) = e_mp * e_k / rt2;        // sigma = -
        a(2, 1) = e_p * e_k / rt2;
        a(2, 3) = -kI * gamma - eps;
        b(2) = -e_mp * e_mk / rt2;
        a(3, 1) = lead;                    // j = +1 equation
        a(3, 2) = e_p / rt2;
        a(3, 3) = e_mp / rt2;
    } else {
        a(0, 0) = lead;                    // j = +1 equation
        a(0, 2) = e_p / rt2;
        a(0, 3) = e_mp / rt2;
        b(0) = eps * e_mk - e_m2k;
        a(1, 0) = e_mp * e_k / rt2;        // sigma = +; psi(1) carries r
        a(1, 1) = e_p * e_k / rt2;         // psi(-1) = t e^{ik}
        a(1, 2) = kI * gamma - eps;
        b(1) = -e_mp * e_mk / rt2;
        a(2, 0) = e_p * e_k / rt2;
        a(2, 1) = e_mp * e_k / rt2;
        a(2, 3) = -kI * gamma - eps;
        b(2) = -e_p * e_mk / rt2;
        a(3, 1) = lead;                    // j = -1 equation
        a(3, 2) = e_mp / rt2;
        a(3, 3) = e_p / rt2;
    }

    Eigen::FullPivLU<Eigen::Matrix4cd> lu(a);
    if (!lu.isInvertible()) {
        throw SingularSystem("oracle_amplitudes: lattice system is rank-deficient");
    }
    Eigen::Vector4cd x = lu.solve(b);
    return {x(0), x(1)};
}

}  // namespace

double wrap_angle(double a) {
    double r = std::remainder(a, 2.0 * kPi);
    if (r <= -kPi) {
        r += 2.0 * kPi;
    }
    return r;
}

TransferMatrix transfer_matrix(const ModelParams& p, double tol) {
    const SingularityClass cls = classify(p, tol);
    if (cls.kind == SingularityKind::Singular) {
        // limit of the removable form [[-chi*, u], [-u, chi]]/((eta-eta*)xi+):
        // off-diagonal -+i for k = +pi/2, sign-flipped for k = -pi/2
        const Complex off = (p.k > 0.0) ? -kI : kI;
        TransferMatrix m{Complex(0.0), off, -off, Complex(0.0), Complex(0.0)};
        m.det = m.m11 * m.m22 - m.m12 * m.m21;
        return m;
    }

    const DerivedQuantities d = derived_quantities(p);
    const Complex u = std::norm(d.eta) - d.xi_product();
    const Complex denom = (d.eta - std::conj(d.eta)) * d.xi_plus * d.chi;
    if (std::abs(denom) < kDegenerateDivisionFloor) {
        throw DegenerateDivision(
            "transfer_matrix: (eta - eta*) xi+ chi underflows off the singular "
            "locus; generic formula unusable here");
    }
    TransferMatrix m;
    m.m11 = -Complex(d.chi_abs * d.chi_abs) / denom;
    m.m12 = d.chi * u / denom;
    m.m21 = -d.chi * u / denom;
    m.m22 = d.chi * d.chi / denom;
    m.det = m.m11 * m.m22 - m.m12 * m.m21;
    return m;
}

Complex det_transfer(const ModelParams& p) {
    const DerivedQuantities d = derived_quantities(p);
    if (d.xi_plus == 0.0) {
        throw DivisionByZero("det_transfer: xi+ = 0");
    }
    return Complex(d.xi_minus / d.xi_plus);
}

ScatteringAmplitudes scattering_amplitudes(const ModelParams& p, double tol) {
    ScatteringAmplitudes s;
    // PF symmetry: the right-incidence amplitudes are the left ones at -phi
    auto [rl, tl] = closed_form_rt(p.gamma, p.phi, p.k, tol);
    auto [rr, tr] = closed_form_rt(p.gamma, -p.phi, p.k, tol);
    s.r_left = rl;
    s.t_left = tl;
    s.r_right = rr;
    s.t_right = tr;
    return s;
}

ScatteringAmplitudes oracle_amplitudes(const ModelParams& p) {
    if (classify(p).kind == SingularityKind::Singular) {
        throw SingularSystem(
            "oracle_amplitudes: no bounded scattering solution at the spectral "
            "singularity");
    }
    ScatteringAmplitudes s;
    auto [rl, tl] = oracle_rt(p.gamma, p.phi, p.k, true);
    auto [rr, tr] = oracle_rt(p.gamma, p.phi, p.k, false);
    s.r_left = rl;
    s.t_left = tl;
    s.r_right = rr;
    s.t_right = tr;
    return s;
}

ApproxAmplitude approx_amplitude(const ModelParams& p, const CriticalPoint& cp,
                                 double tol) {
    const double sin_2pc = std::sin(2.0 * cp.phi_c);
    const double locus_dev = sin_2pc * sin_2pc - cp.gamma_c * cp.gamma_c;
    if (std::abs(std::cos(cp.k_c)) > tol || std::abs(locus_dev) > tol ||
        !(cp.gamma_c > 0.0)) {
        throw InvalidCriticalPoint(
            "approx_amplitude: critical point violates sin^2(2 phi_c) = gamma_c^2 "
            "at k_c = +-pi/2 with gamma_c > 0");
    }
    if (sin_2pc == 0.0) {
        // cannot happen on the locus with gamma_c > 0
        throw InvalidCriticalPoint("approx_amplitude: sin(2 phi_c) = 0 off-locus");
    }

    ApproxAmplitude a;
    a.critical_point = cp;
    const double dphi = p.phi - cp.phi_c;
    a.rho = std::sin(4.0 * cp.phi_c) * dphi +
            2.0 * std::cos(4.0 * cp.phi_c) * dphi * dphi - (p.gamma - cp.gamma_c) +
            kI * (2.0 - cp.gamma_c * cp.gamma_c) * (p.k - cp.k_c);
    const double rho_abs = std::abs(a.rho);
    if (rho_abs == 0.0) {
        throw SingularTransmission("approx_amplitude: rho = 0 at the critical point");
    }
    a.omega = wrap_angle(std::arg(a.rho) - kPi / 2.0);
    const double sgn = (cp.gamma_c * sin_2pc > 0.0) ? 1.0 : -1.0;
    a.t_approx = (cp.gamma_c * cp.gamma_c / rho_abs) * sgn * phase(a.omega);
    a.extrapolated = std::abs(dphi) > 0.1 || std::abs(p.gamma - cp.gamma_c) > 0.1 ||
                     std::abs(p.k - cp.k_c) > 0.1;
    return a;
}

PhaseProfile phase_profile(double k, double gamma, double phi_lo, double phi_hi,
                           int n, double lapse_threshold) {
    if (n < 3) {
        throw std::invalid_argument("phase_profile: need n >= 3");
    }
    if (!(phi_lo < phi_hi)) {
        throw std::invalid_argument("phase_profile: need phi_lo < phi_hi");
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    PhaseProfile prof;
    prof.phi_samples.resize(n);
    prof.omega_samples.resize(n);
    prof.magnitude_samples.resize(n);
    const double step = (phi_hi - phi_lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double phi = phi_lo + i * step;
        prof.phi_samples[i] = phi;
        try {
            auto [r, t] = closed_form_rt(gamma, phi, k, kSingularDenominatorTol);
            (void)r;
            prof.omega_samples[i] = std::arg(t);
            prof.magnitude_samples[i] = std::abs(t);
        } catch (const SingularTransmission&) {
            prof.omega_samples[i] = nan;  // gap marker
            prof.magnitude_samples[i] = nan;
        }
    }
    for (int i = 0; i + 1 < n; ++i) {
        const double a = prof.omega_samples[i];
        const double b = prof.omega_samples[i + 1];
        if (std::isnan(a) || std::isnan(b)) {
            continue;
        }
        const double jump = wrap_angle(b - a);
        if (std::abs(jump) > lapse_threshold) {
            prof.lapse_events.push_back(
                {0.5 * (prof.phi_samples[i] + prof.phi_samples[i + 1]), jump});
        }
    }
    return prof;
}

PhaseShift max_phase_shift_detail(double k, double gamma, int grid_points) {
    if (grid_points < 3) {
        throw std::invalid_argument("max_phase_shift: need grid_points >= 3");
    }
    // reference evaluated at phi = pi/4 exactly, not from the grid
    auto [r_ref, t_ref] = closed_form_rt(gamma, kPi / 4.0, k, kSingularDenominatorTol);
    (void)r_ref;
    const double omega_ref = std::arg(t_ref);

    PhaseShift best{-std::numeric_limits<double>::infinity(), kPi / 4.0};
    const double step = (kPi / 2.0) / (grid_points - 1);
    for (int i = 0; i < grid_points; ++i) {
        const double phi = i * step;
        double omega;
        try {
            auto [r, t] = closed_form_rt(gamma, phi, k, kSingularDenominatorTol);
            (void)r;
            omega = std::arg(t);
        } catch (const SingularTransmission&) {
            continue;  // singular samples excluded from the max
        }
        const double shift = omega - omega_ref;
        if (shift > best.delta_omega) {
            best = {shift, phi};
        }
    }
    return best;
}

double max_phase_shift(double k, double gamma, int grid_points) {
    return max_phase_shift_detail(k, gamma, grid_points).delta_omega;
}

}  // namespace abring
