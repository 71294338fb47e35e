#include "abring/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "abring/equivalence.hpp"
#include "abring/scattering.hpp"

namespace abring {

namespace {

CheckResult check(std::string name, double value, double threshold) {
    return {std::move(name), value < threshold, value, threshold};
}

// draw a parameter point with classify distance above a floor
ModelParams draw_regular(SplitMix64& rng, double min_distance) {
    for (;;) {
        const double g = rng.uniform(0.0, 1.5);
        const double phi = rng.uniform(0.0, kPi / 2.0);
        const double k = rng.uniform(0.2, kPi - 0.2);
        const ModelParams p{g, phi, k};
        if (classify(p).distance > min_distance) {
            return p;
        }
    }
}

}  // namespace

std::uint64_t SplitMix64::next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

std::vector<CheckResult> verify_unitarity() {
    std::vector<CheckResult> out;
    // uniform chain: t = 1, r = 0 exactly
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double k = 0.1 + (kPi - 0.2) * i / 99.0;
        if (std::abs(k - kPi / 2.0) < 0.05) {
            continue;
        }
        const auto amp = scattering_amplitudes({0.0, 0.0, k});
        worst = std::max({worst, std::abs(amp.t_left - 1.0), std::abs(amp.r_left)});
    }
    out.push_back(check("uniform_chain_t1_r0", worst, 1e-12));

    SplitMix64 rng(0x5eedu);
    worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const double phi = rng.uniform(0.0, kPi / 2.0);
        const double k = rng.uniform(0.2, kPi - 0.2);
        const auto amp = scattering_amplitudes({0.0, phi, k});
        worst = std::max(worst, std::abs(std::norm(amp.r_left) + std::norm(amp.t_left) - 1.0));
    }
    out.push_back(check("hermitian_unitarity", worst, 1e-10));
    return out;
}

std::vector<CheckResult> verify_oracle() {
    SplitMix64 rng(0xabc123u);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const ModelParams p = draw_regular(rng, 1e-3);
        const auto closed = scattering_amplitudes(p);
        const auto direct = oracle_amplitudes(p);
        worst = std::max({worst, std::abs(closed.t_left - direct.t_left),
                          std::abs(closed.r_left - direct.r_left),
                          std::abs(closed.t_right - direct.t_right),
                          std::abs(closed.r_right - direct.r_right)});
    }
    return {check("closed_form_vs_linear_solve", worst, 1e-10)};
}

std::vector<CheckResult> verify_det_m() {
    std::vector<CheckResult> out;
    double worst = 0.0;
    for (int ig = 0; ig < 50; ++ig) {
        for (int ip = 0; ip < 50; ++ip) {
            const double g = 0.03 + (1.5 - 0.03) * ig / 49.0;
            const double phi = 0.02 + (kPi / 2.0 - 0.04) * ip / 49.0;
            if (std::abs(g * std::sin(2.0 * phi)) <= 1e-3) {
                continue;
            }
            const Complex det = det_transfer({g, phi, kPi / 2.0});
            worst = std::max(worst, std::abs(det + 1.0));
        }
    }
    out.push_back(check("det_m_is_minus_one_at_band_center", worst, 1e-12));

    SplitMix64 rng(0xdddu);
    worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const ModelParams p = draw_regular(rng, 5e-2);
        const DerivedQuantities d = derived_quantities(p);
        if (std::abs(d.xi_plus) < 1e-2) {
            continue;  // det undefined near xi+ = 0
        }
        const TransferMatrix m = transfer_matrix(p);
        worst = std::max(worst, std::abs(m.det - det_transfer(p)));
    }
    out.push_back(check("matrix_det_matches_xi_ratio", worst, 1e-10));
    return out;
}

std::vector<CheckResult> verify_locus() {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double g = 0.01 + (1.0 - 0.01) * i / 99.0;
        for (const double phi_c : singularity_locus(g)) {
            const DerivedQuantities d = derived_quantities({g, phi_c, kPi / 2.0});
            worst = std::max(worst, d.chi_abs);
        }
    }
    return {check("chi_vanishes_on_locus", worst, 1e-12)};
}

std::vector<CheckResult> verify_symmetry() {
    std::vector<CheckResult> out;
    SplitMix64 rng(0x77u);

    // flux periodicity phi -> phi + pi
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const ModelParams p = draw_regular(rng, 1e-2);
        const DerivedQuantities a = derived_quantities(p);
        const DerivedQuantities b = derived_quantities(p.with_phi(p.phi + kPi));
        worst = std::max({worst, std::abs(a.eta - b.eta),
                          std::abs(a.xi_plus - b.xi_plus),
                          std::abs(a.xi_minus - b.xi_minus), std::abs(a.chi - b.chi)});
    }
    out.push_back(check("flux_periodicity", worst, 1e-12));

    // classify symmetric under k -> -k
    bool kinds_match = true;
    double dist_dev = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double g = rng.uniform(0.0, 1.5);
        const double phi = rng.uniform(0.0, kPi / 2.0);
        const double k = rng.uniform(0.01, kPi - 0.01);
        const SingularityClass ca = classify({g, phi, k});
        const SingularityClass cb = classify({g, phi, -k});
        kinds_match = kinds_match && ca.kind == cb.kind;
        dist_dev = std::max(dist_dev, std::abs(ca.distance - cb.distance));
    }
    out.push_back(check("classify_k_reflection", kinds_match ? dist_dev : 1.0, 1e-12));

    // r even in phi, right amplitudes = left at -phi
    worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const ModelParams p = draw_regular(rng, 1e-2);
        const auto amp = scattering_amplitudes(p);
        const auto flipped = scattering_amplitudes(p.with_phi(-p.phi));
        worst = std::max({worst, std::abs(amp.r_left - amp.r_right),
                          std::abs(amp.t_right - flipped.t_left)});
    }
    out.push_back(check("flux_reversal_relations", worst, 1e-12));

    // PF symmetry: P H(phi) P = H(-phi), P: j -> -j with + <-> - fixed
    worst = 0.0;
    for (const double g : {0.0, 0.4, 1.0}) {
        for (const double phi : {0.0, 0.3, kPi / 4.0}) {
            const HamiltonianMatrix h = build_hamiltonian(8, g, phi);
            const HamiltonianMatrix hneg = build_hamiltonian(8, g, -phi);
            const int n = h.dim();
            Eigen::MatrixXcd par = Eigen::MatrixXcd::Zero(n, n);
            for (int j = 1; j <= 8; ++j) {
                par(h.index_of(-j), h.index_of(j)) = 1.0;
                par(h.index_of(j), h.index_of(-j)) = 1.0;
            }
            par(8, 8) = 1.0;      // + fixed
            par(9, 9) = 1.0;      // - fixed
            worst = std::max(worst,
                             (par * h.entries * par - hneg.entries).cwiseAbs().maxCoeff());
        }
    }
    out.push_back(check("parity_flux_flip_symmetry", worst, 1e-14));
    return out;
}

std::vector<CheckResult> verify_residual() {
    std::vector<CheckResult> out;
    SplitMix64 rng(0x42u);
    const int n_sites = 60;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        ModelParams p = draw_regular(rng, 0.05);
        p = ModelParams{p.gamma, p.phi, p.k, n_sites};
        const auto coeffs = eigen_pair_coefficients(p, Complex(0.6), Complex(0.0, 0.8));
        for (const Branch b : {Branch::Psi1, Branch::Psi2, Branch::Bar1, Branch::Bar2}) {
            const LatticeState st = bethe_state(p, coeffs, b);
            const HamiltonianMatrix h =
                build_hamiltonian(n_sites, p.gamma, p.phi, is_barred(b));
            worst = std::max(worst, residual(h, st, dispersion(p.k)));
        }
    }
    out.push_back(check("bethe_interior_residual", worst, 1e-10));

    worst = 0.0;
    const double gc2 = std::sin(kPi / 4.0);
    for (const auto& [gc, pc] : {std::pair{1.0, kPi / 4.0}, std::pair{gc2, kPi / 8.0}}) {
        for (const int sign : {+1, -1}) {
            for (const bool barred : {false, true}) {
                const LatticeState st = singular_state(sign, barred, n_sites, gc, pc);
                const HamiltonianMatrix h = build_hamiltonian(n_sites, gc, pc, barred);
                worst = std::max(worst, residual(h, st, 0.0));
            }
        }
    }
    out.push_back(check("singular_state_residual", worst, 1e-10));
    return out;
}

std::vector<CheckResult> verify_biorthogonality() {
    std::vector<CheckResult> out;
    SplitMix64 rng(0x5150u);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const ModelParams p = draw_regular(rng, 0.05);
        const auto coeffs = eigen_pair_coefficients(p, Complex(0.6), Complex(0.0, 0.8));
        const auto rep = biorthogonality_report(p, coeffs, 50);
        worst = std::max(worst, rep.spinor_identity_error);
    }
    out.push_back(check("spinor_identity", worst, 1e-12));

    const ModelParams p{0.5, 0.3, 1.2};
    const auto coeffs =
        eigen_pair_coefficients(p, Complex(1.0 / std::sqrt(2.0)), Complex(1.0 / std::sqrt(2.0)));
    const auto rep200 = biorthogonality_report(p, coeffs, 200);
    const auto rep400 = biorthogonality_report(p, coeffs, 400);
    out.push_back(check("offdiag_window_decay", rep400.offdiag, 0.6 * rep200.offdiag));

    // singular-point biorthogonality collapse: <psibar^c|psi^c> -> 0
    double overlap = 0.0;
    for (int n : {100, 400}) {
        const LatticeState s = singular_state(+1, false, n, 1.0, kPi / 4.0);
        const LatticeState sb = singular_state(+1, true, n, 1.0, kPi / 4.0);
        overlap = std::max(overlap, std::abs(sb.vector().dot(s.vector())));
    }
    out.push_back(check("singular_biorthogonality_collapse", overlap, 1e-12));
    return out;
}

std::vector<CheckResult> verify_equivalence_suite() {
    std::vector<CheckResult> out;
    double worst = 0.0;
    double unit = 0.0;
    for (const double g : {0.0, 0.3, 0.7, 1.0, 1.5}) {
        const EquivalenceReport rep = verify_equivalence(20, g);
        worst = std::max({worst, rep.norm1, rep.norm2, rep.cross_block});
    }
    for (const int n : {5, 20, 50}) {
        const BasisMap u1 = transform_u1(n);
        const BasisMap u2 = transform_u2(n);
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(u1.dim(), u1.dim());
        unit = std::max(unit,
                        (u1.matrix * u1.matrix.adjoint() - id).cwiseAbs().maxCoeff());
        unit = std::max(unit,
                        (u2.matrix * u2.matrix.adjoint() - id).cwiseAbs().maxCoeff());
    }
    out.push_back(check("conjugation_identities", worst, 1e-12));
    out.push_back(check("basis_maps_unitary", unit, 1e-12));

    // singular state pushed through U1 U2 solves the split chains at E = 0
    const int n = 60;
    const LatticeState st = singular_state(+1, false, n, 1.0, kPi / 4.0);
    const Eigen::VectorXcd vg =
        transform_u2(n).matrix.adjoint() * (transform_u1(n).matrix.adjoint() * st.vector());
    Eigen::VectorXcd r = build_split(n, 1.0).entries * vg;
    r(0) = 0.0;
    r(2 * n + 1) = 0.0;
    out.push_back(check("singular_state_in_split_basis", r.cwiseAbs().maxCoeff(), 1e-10));
    return out;
}

std::vector<CheckResult> run_verify_suite(const std::string& suite) {
    auto append = [](std::vector<CheckResult>& dst, std::vector<CheckResult> src) {
        for (auto& c : src) {
            dst.push_back(std::move(c));
        }
    };
    std::vector<CheckResult> out;
    if (suite == "unitarity") return verify_unitarity();
    if (suite == "oracle") return verify_oracle();
    if (suite == "det-m") return verify_det_m();
    if (suite == "locus") return verify_locus();
    if (suite == "symmetry") return verify_symmetry();
    if (suite == "residual") return verify_residual();
    if (suite == "biorthogonality") return verify_biorthogonality();
    if (suite == "equivalence") return verify_equivalence_suite();
    if (suite == "all") {
        append(out, verify_unitarity());
        append(out, verify_oracle());
        append(out, verify_det_m());
        append(out, verify_locus());
        append(out, verify_symmetry());
        append(out, verify_residual());
        append(out, verify_biorthogonality());
        append(out, verify_equivalence_suite());
        return out;
    }
    throw std::invalid_argument(
        "unknown suite (want unitarity|oracle|det-m|locus|symmetry|residual|"
        "biorthogonality|equivalence|all): " + suite);
}

}  // namespace abring
