#include "abring/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace abring {

namespace {

const Complex kI{0.0, 1.0};

Complex phase(double x) { return std::polar(1.0, x); }

}  // namespace

ModelParams::ModelParams(double gamma_, double phi_, double k_, int n_sites_)
    : gamma(gamma_), phi(phi_), k(reduce_wavenumber(k_)), n_sites(n_sites_) {
    if (!std::isfinite(gamma_)) {
        throw std::invalid_argument("ModelParams: gamma must be finite");
    }
    if (!std::isfinite(phi_)) {
        throw std::invalid_argument("ModelParams: phi must be finite");
    }
    if (!std::isfinite(k_)) {
        throw std::invalid_argument("ModelParams: k must be finite");
    }
    if (n_sites_ < 2) {
        throw std::invalid_argument("ModelParams: n_sites must be >= 2");
    }
}

double reduce_wavenumber(double k) {
    double r = std::remainder(k, 2.0 * kPi);
    if (r <= -kPi) {
        r += 2.0 * kPi;
    }
    return r;
}

double dispersion(double k) { return 2.0 * std::cos(k); }

DerivedQuantities derived_quantities(const ModelParams& p) {
    DerivedQuantities d;
    const double g = p.gamma;
    const Complex e_ik = phase(p.k);
    const Complex e_2ik = phase(2.0 * p.k);
    const double cos_k = std::cos(p.k);
    const double cos_2phi = std::cos(2.0 * p.phi);
    const double sin_2phi = std::sin(2.0 * p.phi);

    d.eta = (e_2ik + 1.0 + g * g) * e_ik;
    d.xi_plus = 2.0 * cos_k * cos_2phi + g * sin_2phi;
    d.xi_minus = 2.0 * cos_k * cos_2phi - g * sin_2phi;
    const double s = d.xi_plus * d.xi_minus;
    d.chi = (s - std::conj(d.eta) * std::conj(d.eta)) * e_2ik;
    d.chi_abs = std::abs(d.chi);
    d.energy = dispersion(p.k);

    const Complex root_s = std::sqrt(Complex(s));  // principal branch
    const Complex u = std::norm(d.eta) - s;
    const Complex v = 2.0 * d.eta.imag() * root_s;
    if (d.chi_abs > 0.0) {
        d.theta = -kI * std::log((u + kI * v) / d.chi_abs);
    }
    // undefined (NaN) on the xi+ xi- = 0 surface
    d.n_x = (d.xi_plus + d.xi_minus) / (2.0 * root_s);
    d.n_y = kI * (d.xi_plus - d.xi_minus) / (2.0 * root_s);
    return d;
}

const char* to_string(SingularityKind kind) {
    switch (kind) {
        case SingularityKind::Hermitian: return "hermitian";
        case SingularityKind::Regular: return "regular";
        case SingularityKind::QuasiSingular: return "quasi_singular";
        case SingularityKind::Singular: return "singular";
    }
    return "unknown";
}

SingularityClass classify(const ModelParams& p, double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("classify: tol must be > 0");
    }
    const double cos_k = std::cos(p.k);
    const double sin_2phi = std::sin(2.0 * p.phi);
    const double locus_dev = sin_2phi * sin_2phi - p.gamma * p.gamma;
    const double distance = std::hypot(cos_k, locus_dev);

    SingularityClass c{SingularityKind::Regular, distance};
    if (std::abs(cos_k) <= tol && std::abs(locus_dev) <= tol && p.gamma > tol) {
        c.kind = SingularityKind::Singular;
    } else if (p.gamma <= tol) {
        c.kind = SingularityKind::Hermitian;
    } else if (distance <= 100.0 * tol) {
        c.kind = SingularityKind::QuasiSingular;
    }
    return c;
}

std::vector<double> singularity_locus(double gamma) {
    if (!(gamma > 0.0) || gamma > 1.0) {
        throw std::domain_error("singularity_locus: gamma must be in (0, 1]");
    }
    const double a = std::asin(gamma) / 2.0;
    const double b = kPi / 2.0 - a;
    if (b <= a) {
        return {a};  // gamma = 1: the two branches merge at pi/4
    }
    return {a, b};
}

}  // namespace abring
