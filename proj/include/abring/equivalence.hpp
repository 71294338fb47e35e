#pragma once

// phi = pi/4 unitary equivalences: interferometer -> imaginary-hopping dimer
// -> two decoupled semi-infinite chains with end potentials +- i gamma.
//
// Convention: H_new = U^dag H_old U, columns of U holding the new basis kets
// in old coordinates. U1 maps the ring at phi = pi/4 onto the dimer
// (center coupling i gamma both directions); U2 then splits the dimer into
// H_+ (sites -N..-1, +, end potential +i gamma) and H_- (sites -, 1..N,
// end potential -i gamma), block-diagonal in the standard site order.

#include <Eigen/Dense>

#include "abring/eigensystem.hpp"

namespace abring {

struct BasisMap {
    int n_sites;
    Eigen::MatrixXcd matrix;  // unitary, (2N+2) x (2N+2)

    int dim() const { return 2 * n_sites + 2; }
};

BasisMap transform_u1(int n_sites);
BasisMap transform_u2(int n_sites);

// Unit-hopping leads, unit lead-center bonds (-1 <-> +, 1 <-> -), center pair
// coupled by i gamma in both directions.
HamiltonianMatrix build_dimer(int n_sites, double gamma);

// Direct sum of the two end-potential chains in the standard site order.
HamiltonianMatrix build_split(int n_sites, double gamma);

struct EquivalenceReport {
    double norm1;        // max-entry |U1^dag H(pi/4) U1 - H_dimer|
    double norm2;        // max-entry |U2^dag H_dimer U2 - H_split|
    double cross_block;  // max off-block entry of U2^dag U1^dag H U1 U2
};

EquivalenceReport verify_equivalence(int n_sites, double gamma);

}  // namespace abring
