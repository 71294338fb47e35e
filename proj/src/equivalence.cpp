#include "abring/equivalence.hpp"

#include <cmath>
#include <stdexcept>

namespace abring {

namespace {

const Complex kI{0.0, 1.0};

int check_n(int n_sites, const char* who) {
    if (n_sites < 2) {
        throw std::invalid_argument(std::string(who) + ": n_sites must be >= 2");
    }
    return 2 * n_sites + 2;
}

}  // namespace

BasisMap transform_u1(int n_sites) {
    const int n = check_n(n_sites, "transform_u1");
    BasisMap u{n_sites, Eigen::MatrixXcd::Zero(n, n)};
    const int plus = n_sites;
    const int minus = n_sites + 1;
    const double rt2 = std::sqrt(2.0);
    // left lead unchanged
    for (int i = 0; i < n_sites; ++i) {
        u.matrix(i, i) = 1.0;
    }
    // new center kets in old coordinates:
    //   f_+ = (e^{i pi/4} |+> + e^{-i pi/4} |->)/sqrt(2)
    //   f_- = (e^{i pi/4} |+> - e^{-i pi/4} |->)/sqrt(2)
    const Complex e_p = std::polar(1.0, kPi / 4.0);
    const Complex e_m = std::polar(1.0, -kPi / 4.0);
    u.matrix(plus, plus) = e_p / rt2;
    u.matrix(minus, plus) = e_m / rt2;
    u.matrix(plus, minus) = e_p / rt2;
    u.matrix(minus, minus) = -e_m / rt2;
    // right lead: |j> = -i f_j, so f_j = i |j>
    for (int i = n_sites + 2; i < n; ++i) {
        u.matrix(i, i) = kI;
    }
    return u;
}

BasisMap transform_u2(int n_sites) {
    const int n = check_n(n_sites, "transform_u2");
    BasisMap u{n_sites, Eigen::MatrixXcd::Zero(n, n)};
    const int plus = n_sites;
    const int minus = n_sites + 1;
    const double r = 1.0 / std::sqrt(2.0);
    auto site = [&](int j) { return j < 0 ? j + n_sites : n_sites + 1 + j; };
    // g_{-m} = (f_{-m} + f_m)/sqrt(2),  g_m = (f_m - f_{-m})/sqrt(2)
    for (int m = 1; m <= n_sites; ++m) {
        u.matrix(site(-m), site(-m)) = r;
        u.matrix(site(m), site(-m)) = r;
        u.matrix(site(m), site(m)) = r;
        u.matrix(site(-m), site(m)) = -r;
    }
    // g_+ = (f_+ + f_-)/sqrt(2),  g_- = (f_- - f_+)/sqrt(2)
    u.matrix(plus, plus) = r;
    u.matrix(minus, plus) = r;
    u.matrix(minus, minus) = r;
    u.matrix(plus, minus) = -r;
    return u;
}

HamiltonianMatrix build_dimer(int n_sites, double gamma) {
    const int n = check_n(n_sites, "build_dimer");
    HamiltonianMatrix h{n_sites, Eigen::MatrixXcd::Zero(n, n), kPi / 4.0, gamma, false};
    auto site = [&](int j) { return h.index_of(j); };
    const int plus = n_sites;
    const int minus = n_sites + 1;
    for (int j = -n_sites; j <= -2; ++j) {
        h.entries(site(j), site(j + 1)) = 1.0;
        h.entries(site(j + 1), site(j)) = 1.0;
    }
    for (int j = 1; j <= n_sites - 1; ++j) {
        h.entries(site(j), site(j + 1)) = 1.0;
        h.entries(site(j + 1), site(j)) = 1.0;
    }
    h.entries(site(-1), plus) = 1.0;
    h.entries(plus, site(-1)) = 1.0;
    h.entries(site(1), minus) = 1.0;
    h.entries(minus, site(1)) = 1.0;
    // non-Hermitian imaginary hopping, i gamma in both directions
    h.entries(plus, minus) = kI * gamma;
    h.entries(minus, plus) = kI * gamma;
    return h;
}

HamiltonianMatrix build_split(int n_sites, double gamma) {
    const int n = check_n(n_sites, "build_split");
    HamiltonianMatrix h{n_sites, Eigen::MatrixXcd::Zero(n, n), kPi / 4.0, gamma, false};
    auto site = [&](int j) { return h.index_of(j); };
    const int plus = n_sites;
    const int minus = n_sites + 1;
    // H_+: chain -N..-1 ending in + with on-site +i gamma (first N+1 indices)
    for (int j = -n_sites; j <= -2; ++j) {
        h.entries(site(j), site(j + 1)) = 1.0;
        h.entries(site(j + 1), site(j)) = 1.0;
    }
    h.entries(site(-1), plus) = 1.0;
    h.entries(plus, site(-1)) = 1.0;
    h.entries(plus, plus) = kI * gamma;
    // H_-: chain 1..N ending in - with on-site -i gamma (last N+1 indices)
    for (int j = 1; j <= n_sites - 1; ++j) {
        h.entries(site(j), site(j + 1)) = 1.0;
        h.entries(site(j + 1), site(j)) = 1.0;
    }
    h.entries(site(1), minus) = 1.0;
    h.entries(minus, site(1)) = 1.0;
    h.entries(minus, minus) = -kI * gamma;
    return h;
}

EquivalenceReport verify_equivalence(int n_sites, double gamma) {
    check_n(n_sites, "verify_equivalence");
    const HamiltonianMatrix h = build_hamiltonian(n_sites, gamma, kPi / 4.0);
    const HamiltonianMatrix dimer = build_dimer(n_sites, gamma);
    const HamiltonianMatrix split = build_split(n_sites, gamma);
    const BasisMap u1 = transform_u1(n_sites);
    const BasisMap u2 = transform_u2(n_sites);

    const Eigen::MatrixXcd h1 = u1.matrix.adjoint() * h.entries * u1.matrix;
    const Eigen::MatrixXcd h2 = u2.matrix.adjoint() * dimer.entries * u2.matrix;
    const Eigen::MatrixXcd full = u2.matrix.adjoint() * h1 * u2.matrix;

    EquivalenceReport rep;
    rep.norm1 = (h1 - dimer.entries).cwiseAbs().maxCoeff();
    rep.norm2 = (h2 - split.entries).cwiseAbs().maxCoeff();
    const int nb = n_sites + 1;  // block sizes N+1 and N+1
    rep.cross_block = std::max(full.topRightCorner(nb, nb).cwiseAbs().maxCoeff(),
                               full.bottomLeftCorner(nb, nb).cwiseAbs().maxCoeff());
    return rep;
}

}  // namespace abring
