#pragma once

// Transfer matrix, exact scattering amplitudes, the near-singularity
// approximation, and flux-sweep phase-lapse analysis.

#include <complex>
#include <vector>

#include "abring/model.hpp"

namespace abring {

// Below this denominator magnitude the closed-form amplitudes are treated as
// singular (lasing pole) instead of returning huge finite values.
inline constexpr double kSingularDenominatorTol = 1e-13;

// Below this magnitude of (eta - eta*) xi+ chi the generic transfer-matrix
// division is refused; roughly sqrt(DBL_MIN), where |chi|^2 itself underflows.
inline constexpr double kDegenerateDivisionFloor = 1e-150;

// M relates right-lead to left-lead plane-wave amplitudes,
// (B+, A+)^T = M (A-, B-)^T.
struct TransferMatrix {
    Complex m11, m12, m21, m22;
    Complex det;  // m11*m22 - m12*m21
};

// Generic path: M = Mtilde / [(eta - eta*) xi+ chi] with
// Mtilde = [[-|chi|^2, chi*u], [-chi*u, chi^2]], u = |eta|^2 - xi+ xi-.
// At a classified singularity returns the exact limit [[0, -i], [i, 0]]
// (k = +pi/2; sign-flipped off-diagonal at k = -pi/2).
TransferMatrix transfer_matrix(const ModelParams& p, double tol = kDefaultTol);

// det M = xi-/xi+. Throws DivisionByZero at xi+ = 0.
Complex det_transfer(const ModelParams& p);

struct ScatteringAmplitudes {
    Complex r_left, t_left, r_right, t_right;
};

// Exact closed forms; the right-incidence pair is the same expression at -phi.
// Throws SingularTransmission when the shared denominator magnitude < tol.
ScatteringAmplitudes scattering_amplitudes(const ModelParams& p,
                                           double tol = kSingularDenominatorTol);

// Independent check: solves the four lattice equations at sites -1, +, -, 1
// with the plane-wave ansatz directly (no closed forms shared with
// scattering_amplitudes). Throws SingularSystem if the system is
// rank-deficient or the parameters are classified Singular.
ScatteringAmplitudes oracle_amplitudes(const ModelParams& p);

struct CriticalPoint {
    double k_c;
    double phi_c;
    double gamma_c;
};

struct ApproxAmplitude {
    Complex rho;
    double omega;  // Arg(rho) - pi/2 reduced to (-pi, pi]
    Complex t_approx;
    CriticalPoint critical_point;
    // set when p lies outside the trust region |phi-phi_c|, |gamma-gamma_c|,
    // |k-k_c| <= 0.1; the expansion is still evaluated
    bool extrapolated;
};

// First-order expansion of t_L around a spectral singularity:
//   rho = sin(4 phi_c)(phi - phi_c) + 2 cos(4 phi_c)(phi - phi_c)^2
//         - (gamma - gamma_c) + i (2 - gamma_c^2)(k - k_c),
//   t ~= (gamma_c^2/|rho|) sign[gamma_c sin(2 phi_c)] e^{i Omega}.
// Throws InvalidCriticalPoint if cp is off the singular locus beyond tol.
ApproxAmplitude approx_amplitude(const ModelParams& p, const CriticalPoint& cp,
                                 double tol = kDefaultTol);

struct LapseEvent {
    double phi;   // midpoint of the straddling grid interval
    double jump;  // wrap-corrected adjacent-sample phase difference, (-pi, pi]
};

struct PhaseProfile {
    std::vector<double> phi_samples;
    std::vector<double> omega_samples;      // Arg(t_left), NaN marks a singular gap
    std::vector<double> magnitude_samples;  // |t_left|, NaN marks a singular gap
    std::vector<LapseEvent> lapse_events;
};

inline constexpr double kDefaultLapseThreshold = kPi / 4;

// Samples Arg(t_L) and |t_L| on a uniform phi grid. Singular samples become
// NaN gaps; lapse events are adjacent-sample jumps exceeding the threshold
// after 2*pi wraps are removed.
PhaseProfile phase_profile(double k, double gamma, double phi_lo, double phi_hi,
                           int n, double lapse_threshold = kDefaultLapseThreshold);

struct PhaseShift {
    double delta_omega;  // Max over phi of [Arg t(phi) - Arg t(pi/4)]
    double phi_star;     // maximizing phi
};

inline constexpr int kDefaultShiftGrid = 10001;

// Maximal transmission phase shift relative to phi = pi/4 on a dense phi grid
// over [0, pi/2]; singular samples are excluded from the max.
PhaseShift max_phase_shift_detail(double k, double gamma,
                                  int grid_points = kDefaultShiftGrid);
double max_phase_shift(double k, double gamma, int grid_points = kDefaultShiftGrid);

// Principal value in (-pi, pi].
double wrap_angle(double a);

}  // namespace abring
