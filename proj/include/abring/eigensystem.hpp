#pragma once

// Finite-lattice Hamiltonians for H and H^dag, Bethe-ansatz eigenfunctions and
// their biorthogonal partners, the singularity (lasing / anti-lasing) states,
// and residual / biorthogonality verification.
//
// Site layout: j in {-N..-1} U {+, -} U {1..N}, 2N+2 sites total, stored in
// that order. The leads carry plane waves; the two center amplitudes are
// completed from the center-site equations
//   psi(sigma) = [e^{i sigma phi} psi(-1) + e^{-i sigma phi} psi(1)]
//                / (sqrt(2) (eps - i gamma sigma)),
// which the ansatz leaves free. H^dag equals H with gamma -> -gamma (the
// hopping part is Hermitian), so barred states are built with the flipped
// sign in both the beta coefficients (phi -> -phi) and the completion.

#include <complex>

#include <Eigen/Dense>

#include "abring/model.hpp"

namespace abring {

enum class Branch {
    Psi1,
    Psi2,
    Bar1,
    Bar2,
    SingularPlus,
    SingularMinus,
    BarSingularPlus,
    BarSingularMinus,
};

const char* to_string(Branch b);
bool is_barred(Branch b);

// Complex amplitude per site. Index helpers accept the physical labels:
// at(j) for j != 0, at_plus()/at_minus() for the center pair.
class LatticeState {
  public:
    LatticeState(int n_sites, double wavenumber, Branch branch);

    int n_sites() const { return n_sites_; }
    int dim() const { return 2 * n_sites_ + 2; }
    double wavenumber() const { return wavenumber_; }
    Branch branch() const { return branch_; }

    Complex& at(int j);
    Complex at(int j) const;
    Complex& at_plus() { return amp_[n_sites_]; }
    Complex at_plus() const { return amp_[n_sites_]; }
    Complex& at_minus() { return amp_[n_sites_ + 1]; }
    Complex at_minus() const { return amp_[n_sites_ + 1]; }

    const Eigen::VectorXcd& vector() const { return amp_; }
    Eigen::VectorXcd& vector() { return amp_; }

    // storage index of lattice site j (j = 0 is invalid)
    int index_of(int j) const;

  private:
    int n_sites_;
    double wavenumber_;
    Branch branch_;
    Eigen::VectorXcd amp_;
};

struct SpinorPair {
    enum class Role { Incoming, Outgoing };
    Complex minus;
    Complex plus;
    Role role;
};

// The (A-, A+) / (B-, B+) pair of a Bethe branch: incoming holds the alpha
// spinor of the branch, outgoing the matching betas. Barred branches carry
// Abar/Bbar.
struct BranchSpinors {
    SpinorPair incoming;
    SpinorPair outgoing;
};

BranchSpinors branch_spinors(const ModelParams& p, Complex alpha_minus,
                             Complex alpha_plus, Branch branch,
                             double tol = kDefaultTol);

// alpha spinor plus the derived beta^lambda_+- and normalization constants.
// C's are fixed by the plane-wave density normalization <psi|psi> = 1 (leads
// dominate as N -> infinity); the barred C's are the same expressions at -phi.
struct EigenPairCoefficients {
    Complex alpha_minus, alpha_plus;
    Complex beta1_minus, beta1_plus;
    Complex beta2_minus, beta2_plus;
    double c1, c2, c1_bar, c2_bar;
};

// Requires |alpha_-|^2 + |alpha_+|^2 = 1 (to 1e-12) and |chi| >= tol
// (SingularConstruction otherwise).
EigenPairCoefficients eigen_pair_coefficients(const ModelParams& p,
                                              Complex alpha_minus,
                                              Complex alpha_plus,
                                              double tol = kDefaultTol);

struct HamiltonianMatrix {
    int n_sites;
    Eigen::MatrixXcd entries;  // (2N+2) x (2N+2)
    double flux;               // phi
    double gamma;
    bool dagger;

    int dim() const { return 2 * n_sites + 2; }
    int index_of(int j) const;  // same layout as LatticeState
};

// Leads with unit hopping, center couplings e^{-+ i sigma phi}/sqrt(2) and
// on-site +- i gamma; dagger = true conjugate-transposes.
HamiltonianMatrix build_hamiltonian(int n_sites, double gamma, double phi,
                                    bool dagger = false);

// Plane-wave eigenstate of H (or H^dag for barred branches) at energy
// 2 cos k, for branch in {Psi1, Psi2, Bar1, Bar2}.
LatticeState bethe_state(const ModelParams& p, const EigenPairCoefficients& coeffs,
                         Branch branch, double tol = kDefaultTol);

// Zero-energy eigenstate at the spectral singularity (k = sign * pi/2):
// e^{i sign pi j/2}/sqrt(2N) on the left lead, sign * i e^{-i sign pi j/2}
// (times -1 when barred) on the right, center completed at eps = 0.
// (gamma_c, phi_c) must satisfy sin^2(2 phi_c) = gamma_c^2 to locus_tol.
LatticeState singular_state(int sign, bool barred, int n_sites, double gamma_c,
                            double phi_c, double locus_tol = 1e-9);

// max |(H psi - eps psi)_j| over interior sites (both lead ends +-N excluded;
// hard truncation breaks the hopping recurrence there).
double residual(const HamiltonianMatrix& h, const LatticeState& state, double energy);

struct BiorthogonalityReport {
    // max over lambda, lambda' of | |chi|^2 (Bbar^l . B^l') - |chi|^2 (Abar^l . A^l') |
    double spinor_identity_error;
    double offdiag;  // |<psibar^1|psi^2>| over the finite window
    Complex diag1;   // <psibar^1|psi^1>
    Complex diag2;   // <psibar^2|psi^2>
};

BiorthogonalityReport biorthogonality_report(const ModelParams& p,
                                             const EigenPairCoefficients& coeffs,
                                             int n_sites);

}  // namespace abring
