#include "abring/eigensystem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace abring {

namespace {

const Complex kI{0.0, 1.0};

Complex phase(double x) { return std::polar(1.0, x); }

// beta^lambda_+- from the displayed amplitude formulas.
void betas(const DerivedQuantities& d, Complex am, Complex ap, Complex& b1m,
           Complex& b1p, Complex& b2m, Complex& b2p) {
    const Complex u = std::norm(d.eta) - d.xi_product();
    const Complex im2 = 2.0 * kI * d.eta.imag();
    b1m = (u * am + im2 * d.xi_plus * ap) / d.chi;
    b1p = (u * ap + im2 * d.xi_minus * am) / d.chi;
    b2p = (u * std::conj(am) - im2 * d.xi_minus * std::conj(ap)) / d.chi;
    b2m = (-u * std::conj(ap) + im2 * d.xi_plus * std::conj(am)) / d.chi;
}

// psi(sigma) from the two decoupled center-site equations, given psi(-1),
// psi(1) and the energy. gamma_eff carries the H^dag sign flip.
void complete_center(LatticeState& st, double phi, double gamma_eff, double energy) {
    const double rt2 = std::sqrt(2.0);
    const Complex psi_m1 = st.at(-1);
    const Complex psi_p1 = st.at(1);
    for (int sigma : {+1, -1}) {
        const Complex denom = energy - kI * gamma_eff * static_cast<double>(sigma);
        if (std::abs(denom) < 1e-14) {
            throw SingularConstruction(
                "center completion: eps - i gamma sigma vanishes (gamma = 0 at the "
                "band center)");
        }
        const Complex val =
            (phase(sigma * phi) * psi_m1 + phase(-sigma * phi) * psi_p1) / (rt2 * denom);
        if (sigma > 0) {
            st.at_plus() = val;
        } else {
            st.at_minus() = val;
        }
    }
}

}  // namespace

const char* to_string(Branch b) {
    switch (b) {
        case Branch::Psi1: return "psi1";
        case Branch::Psi2: return "psi2";
        case Branch::Bar1: return "bar1";
        case Branch::Bar2: return "bar2";
        case Branch::SingularPlus: return "singular_plus";
        case Branch::SingularMinus: return "singular_minus";
        case Branch::BarSingularPlus: return "bar_singular_plus";
        case Branch::BarSingularMinus: return "bar_singular_minus";
    }
    return "unknown";
}

bool is_barred(Branch b) {
    return b == Branch::Bar1 || b == Branch::Bar2 || b == Branch::BarSingularPlus ||
           b == Branch::BarSingularMinus;
}

// Barred branches use the -phi coefficients (beta_bar(phi) = beta(-phi)).
BranchSpinors branch_spinors(const ModelParams& p, Complex alpha_minus,
                             Complex alpha_plus, Branch branch, double tol) {
    const ModelParams q = is_barred(branch) ? p.with_phi(-p.phi) : p;
    const DerivedQuantities d = derived_quantities(q);
    if (d.chi_abs < tol) {
        throw SingularConstruction(
            "branch_spinors: chi = 0, plane-wave eigenpair construction collapses");
    }
    Complex b1m, b1p, b2m, b2p;
    betas(d, alpha_minus, alpha_plus, b1m, b1p, b2m, b2p);
    using Role = SpinorPair::Role;
    switch (branch) {
        case Branch::Psi1:
        case Branch::Bar1:
            return {{alpha_minus, alpha_plus, Role::Incoming},
                    {b1m, b1p, Role::Outgoing}};
        case Branch::Psi2:
        case Branch::Bar2:
            return {{-std::conj(alpha_plus), std::conj(alpha_minus), Role::Incoming},
                    {b2m, b2p, Role::Outgoing}};
        default:
            throw std::invalid_argument("branch_spinors: not a Bethe branch");
    }
}

LatticeState::LatticeState(int n_sites, double wavenumber, Branch branch)
    : n_sites_(n_sites), wavenumber_(wavenumber), branch_(branch) {
    if (n_sites < 2) {
        throw std::invalid_argument("LatticeState: n_sites must be >= 2");
    }
    amp_ = Eigen::VectorXcd::Zero(2 * n_sites + 2);
}

int LatticeState::index_of(int j) const {
    if (j == 0 || j < -n_sites_ || j > n_sites_) {
        throw std::out_of_range("LatticeState: site index out of range");
    }
    return j < 0 ? j + n_sites_ : n_sites_ + 1 + j;
}

Complex& LatticeState::at(int j) { return amp_[index_of(j)]; }
Complex LatticeState::at(int j) const { return amp_[index_of(j)]; }

int HamiltonianMatrix::index_of(int j) const {
    if (j == 0 || j < -n_sites || j > n_sites) {
        throw std::out_of_range("HamiltonianMatrix: site index out of range");
    }
    return j < 0 ? j + n_sites : n_sites + 1 + j;
}

HamiltonianMatrix build_hamiltonian(int n_sites, double gamma, double phi,
                                    bool dagger) {
    if (n_sites < 2) {
        throw std::invalid_argument("build_hamiltonian: n_sites must be >= 2");
    }
    const int n = 2 * n_sites + 2;
    HamiltonianMatrix h{n_sites, Eigen::MatrixXcd::Zero(n, n), phi, gamma, dagger};
    auto site = [&](int j) { return h.index_of(j); };
    const int plus = n_sites;
    const int minus = n_sites + 1;
    const double rt2 = std::sqrt(2.0);

    for (int j = -n_sites; j <= -2; ++j) {
        h.entries(site(j), site(j + 1)) = 1.0;
        h.entries(site(j + 1), site(j)) = 1.0;
    }
    for (int j = 1; j <= n_sites - 1; ++j) {
        h.entries(site(j), site(j + 1)) = 1.0;
        h.entries(site(j + 1), site(j)) = 1.0;
    }
    for (int sigma : {+1, -1}) {
        const int c = sigma > 0 ? plus : minus;
        h.entries(site(-1), c) = phase(-sigma * phi) / rt2;
        h.entries(c, site(-1)) = phase(sigma * phi) / rt2;
        h.entries(site(1), c) = phase(sigma * phi) / rt2;
        h.entries(c, site(1)) = phase(-sigma * phi) / rt2;
        h.entries(c, c) = kI * gamma * static_cast<double>(sigma);
    }
    if (dagger) {
        h.entries = h.entries.adjoint().eval();
    }
    return h;
}

EigenPairCoefficients eigen_pair_coefficients(const ModelParams& p,
                                              Complex alpha_minus,
                                              Complex alpha_plus, double tol) {
    const double norm = std::norm(alpha_minus) + std::norm(alpha_plus);
    if (std::abs(norm - 1.0) > 1e-12) {
        throw std::invalid_argument(
            "eigen_pair_coefficients: |alpha_-|^2 + |alpha_+|^2 must be 1");
    }
    const DerivedQuantities d = derived_quantities(p);
    if (d.chi_abs < tol) {
        throw SingularConstruction("eigen_pair_coefficients: chi = 0");
    }
    EigenPairCoefficients c;
    c.alpha_minus = alpha_minus;
    c.alpha_plus = alpha_plus;
    betas(d, alpha_minus, alpha_plus, c.beta1_minus, c.beta1_plus, c.beta2_minus,
          c.beta2_plus);

    const DerivedQuantities db = derived_quantities(p.with_phi(-p.phi));
    Complex bb1m, bb1p, bb2m, bb2p;
    betas(db, alpha_minus, alpha_plus, bb1m, bb1p, bb2m, bb2p);

    // plane-wave density normalization (|A-|^2+|A+|^2 = 1 by construction)
    auto c_of = [](Complex bm, Complex bp) {
        return 1.0 / std::sqrt(1.0 + std::norm(bm) + std::norm(bp));
    };
    c.c1 = c_of(c.beta1_minus, c.beta1_plus);
    c.c2 = c_of(c.beta2_minus, c.beta2_plus);
    c.c1_bar = c_of(bb1m, bb1p);
    c.c2_bar = c_of(bb2m, bb2p);
    return c;
}

LatticeState bethe_state(const ModelParams& p, const EigenPairCoefficients& coeffs,
                         Branch branch, double tol) {
    double cnorm;
    switch (branch) {
        case Branch::Psi1: cnorm = coeffs.c1; break;
        case Branch::Psi2: cnorm = coeffs.c2; break;
        case Branch::Bar1: cnorm = coeffs.c1_bar; break;
        case Branch::Bar2: cnorm = coeffs.c2_bar; break;
        default:
            throw std::invalid_argument(
                "bethe_state: use singular_state for the singularity branches");
    }
    const BranchSpinors sp = branch_spinors(p, coeffs.alpha_minus, coeffs.alpha_plus,
                                            branch, tol);
    const int n_sites = p.n_sites;
    LatticeState st(n_sites, p.k, branch);
    const double pref = cnorm / std::sqrt(static_cast<double>(n_sites));
    for (int j = -n_sites; j <= -1; ++j) {
        st.at(j) = pref * (sp.incoming.minus * phase(p.k * j) +
                           sp.outgoing.minus * phase(-p.k * j));
    }
    for (int j = 1; j <= n_sites; ++j) {
        st.at(j) = pref * (sp.outgoing.plus * phase(p.k * j) +
                           sp.incoming.plus * phase(-p.k * j));
    }
    const double gamma_eff = is_barred(branch) ? -p.gamma : p.gamma;
    complete_center(st, p.phi, gamma_eff, dispersion(p.k));
    return st;
}

LatticeState singular_state(int sign, bool barred, int n_sites, double gamma_c,
                            double phi_c, double locus_tol) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("singular_state: sign must be +1 or -1");
    }
    if (n_sites < 2) {
        throw std::invalid_argument("singular_state: n_sites must be >= 2");
    }
    const double sin_2pc = std::sin(2.0 * phi_c);
    if (!(gamma_c > 0.0) || std::abs(sin_2pc * sin_2pc - gamma_c * gamma_c) > locus_tol) {
        throw InvalidCriticalPoint(
            "singular_state: (gamma_c, phi_c) must satisfy sin^2(2 phi_c) = "
            "gamma_c^2 with gamma_c > 0");
    }

    const Branch branch =
        barred ? (sign > 0 ? Branch::BarSingularPlus : Branch::BarSingularMinus)
               : (sign > 0 ? Branch::SingularPlus : Branch::SingularMinus);
    const double kc = sign * kPi / 2.0;
    LatticeState st(n_sites, kc, branch);
    const double pref = 1.0 / std::sqrt(2.0 * n_sites);
    const Complex right_factor = (barred ? -1.0 : 1.0) * kI * static_cast<double>(sign);
    for (int j = -n_sites; j <= -1; ++j) {
        st.at(j) = pref * phase(kc * j);
    }
    for (int j = 1; j <= n_sites; ++j) {
        st.at(j) = pref * right_factor * phase(-kc * j);
    }
    complete_center(st, phi_c, barred ? -gamma_c : gamma_c, 0.0);
    return st;
}

double residual(const HamiltonianMatrix& h, const LatticeState& state, double energy) {
    if (h.dim() != state.dim() || h.n_sites != state.n_sites()) {
        throw std::invalid_argument("residual: dimension mismatch");
    }
    Eigen::VectorXcd r = h.entries * state.vector() - energy * state.vector();
    // both truncated lead ends are not interior sites
    r(0) = 0.0;
    r(h.dim() - 1) = 0.0;
    return r.cwiseAbs().maxCoeff();
}

BiorthogonalityReport biorthogonality_report(const ModelParams& p,
                                             const EigenPairCoefficients& coeffs,
                                             int n_sites) {
    const ModelParams q{p.gamma, p.phi, p.k, n_sites};
    const DerivedQuantities d = derived_quantities(q);
    if (d.chi_abs < kDefaultTol) {
        throw SingularConstruction("biorthogonality_report: chi = 0");
    }

    // spinor identity |chi|^2 (Bbar^l)* . B^l' = |chi|^2 (Abar^l)* . A^l'
    const BranchSpinors s1 = branch_spinors(q, coeffs.alpha_minus, coeffs.alpha_plus,
                                            Branch::Psi1, kDefaultTol);
    const BranchSpinors s2 = branch_spinors(q, coeffs.alpha_minus, coeffs.alpha_plus,
                                            Branch::Psi2, kDefaultTol);
    const BranchSpinors sb1 = branch_spinors(q, coeffs.alpha_minus, coeffs.alpha_plus,
                                             Branch::Bar1, kDefaultTol);
    const BranchSpinors sb2 = branch_spinors(q, coeffs.alpha_minus, coeffs.alpha_plus,
                                             Branch::Bar2, kDefaultTol);
    const double chi2 = d.chi_abs * d.chi_abs;
    auto pair_error = [&](const BranchSpinors& bar, const BranchSpinors& plain) {
        const Complex bb = std::conj(bar.outgoing.minus) * plain.outgoing.minus +
                           std::conj(bar.outgoing.plus) * plain.outgoing.plus;
        const Complex aa = std::conj(bar.incoming.minus) * plain.incoming.minus +
                           std::conj(bar.incoming.plus) * plain.incoming.plus;
        return std::abs(chi2 * bb - chi2 * aa);
    };
    BiorthogonalityReport rep;
    rep.spinor_identity_error =
        std::max({pair_error(sb1, s1), pair_error(sb1, s2), pair_error(sb2, s1),
                  pair_error(sb2, s2)});

    const LatticeState psi1 = bethe_state(q, coeffs, Branch::Psi1);
    const LatticeState psi2 = bethe_state(q, coeffs, Branch::Psi2);
    const LatticeState bar1 = bethe_state(q, coeffs, Branch::Bar1);
    const LatticeState bar2 = bethe_state(q, coeffs, Branch::Bar2);
    rep.offdiag = std::abs(bar1.vector().dot(psi2.vector()));
    rep.diag1 = bar1.vector().dot(psi1.vector());
    rep.diag2 = bar2.vector().dot(psi2.vector());
    return rep;
}

}  // namespace abring
