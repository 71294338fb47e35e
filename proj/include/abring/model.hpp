#pragma once

// Model configuration and derived scalar quantities for the PT-symmetric
// Aharonov-Bohm ring lattice.
//
// The scattering center is a square threaded by flux Phi = 4*phi with balanced
// gain/loss +-i*gamma on its two arms, coupled to two semi-infinite leads with
// unit hopping. On the energy shell eps_k = 2 cos k everything reduces to a few
// scalars:
//
//   eta   = (e^{2ik} + 1 + gamma^2) e^{ik}
//   xi+-  = 2 cos k cos(2 phi) +- gamma sin(2 phi)
//   chi   = [xi+ xi- - (eta*)^2] e^{2ik}
//
// chi is the master quantity: it is the denominator of the exact scattering
// amplitudes, and chi = 0 (equivalently cos k = 0 together with
// sin^2(2 phi) = gamma^2) is the spectral singularity where the biorthogonal
// eigenbasis collapses and transmission diverges. The spinor rotation angle
// theta and axis (n_x, n_y, 0) satisfy
//
//   |chi| e^{i theta} = |eta|^2 - xi+ xi- + 2i Im(eta) sqrt(xi+ xi-),
//   n_x = (xi+ + xi-)/sqrt(4 xi+ xi-),  n_y = i (xi+ - xi-)/sqrt(4 xi+ xi-),
//
// with the principal square-root branch, so theta and n may come out complex
// when xi+ xi- < 0. n_x^2 + n_y^2 = 1 holds as a complex identity; on the
// measure-zero surface xi+ xi- = 0 the axis is undefined (NaN entries).

#include <complex>
#include <optional>
#include <vector>

#include "abring/errors.hpp"

namespace abring {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Default tolerance for singularity classification and related guards.
inline constexpr double kDefaultTol = 1e-12;

// Physical configuration. Hopping is dimensionless (J = 1); phi is the quarter
// flux in radians; k is stored reduced to (-pi, pi]; n_sites is the per-lead
// truncation N used only by lattice-dependent operations.
struct ModelParams {
    double gamma;
    double phi;
    double k;
    int n_sites;

    ModelParams(double gamma_, double phi_, double k_, int n_sites_ = 2);

    ModelParams with_phi(double new_phi) const { return {gamma, new_phi, k, n_sites}; }
};

// Reduce a wavenumber to the fundamental interval (-pi, pi].
double reduce_wavenumber(double k);

// Band dispersion eps_k = 2 cos k.
double dispersion(double k);

struct DerivedQuantities {
    Complex eta;
    double xi_plus;
    double xi_minus;
    Complex chi;
    double chi_abs;
    std::optional<Complex> theta;  // absent when chi = 0
    Complex n_x;
    Complex n_y;
    double energy;

    double xi_product() const { return xi_plus * xi_minus; }
};

DerivedQuantities derived_quantities(const ModelParams& p);

enum class SingularityKind { Hermitian, Regular, QuasiSingular, Singular };

struct SingularityClass {
    SingularityKind kind;
    // sqrt(cos^2 k + (sin^2(2 phi) - gamma^2)^2): zero exactly on the singular
    // locus, monotone in both defining deviations.
    double distance;
};

const char* to_string(SingularityKind kind);

// Singular requires |cos k| <= tol, |sin^2(2 phi) - gamma^2| <= tol and
// gamma > tol (only gamma > 0 supports a spectral singularity). The Hermitian
// test precedes the proximity test so gamma = 0 never reads as near-singular.
SingularityClass classify(const ModelParams& p, double tol = kDefaultTol);

// All phi_c in [0, pi/2) with sin^2(2 phi_c) = gamma^2: two values
// {asin(gamma)/2, pi/2 - asin(gamma)/2} for 0 < gamma < 1, the single value
// pi/4 for gamma = 1. Throws std::domain_error outside (0, 1].
std::vector<double> singularity_locus(double gamma);

}  // namespace abring
