#pragma once

// Self-verification suites shared by the CLI `verify` subcommand and the test
// drivers: algebraic identities, closed-form vs direct-solve agreement,
// eigenstate residuals, and the basis-change conjugation checks.

#include <cstdint>
#include <string>
#include <vector>

namespace abring {

struct CheckResult {
    std::string name;
    bool pass;
    double value;      // measured worst-case deviation (or quantity checked)
    double threshold;  // pass iff value < threshold (unless noted in name)
};

std::vector<CheckResult> verify_unitarity();
std::vector<CheckResult> verify_oracle();
std::vector<CheckResult> verify_det_m();
std::vector<CheckResult> verify_locus();
std::vector<CheckResult> verify_symmetry();
std::vector<CheckResult> verify_residual();
std::vector<CheckResult> verify_biorthogonality();
std::vector<CheckResult> verify_equivalence_suite();

// suite in {unitarity, oracle, det-m, locus, symmetry, residual,
// biorthogonality, equivalence, all}; throws std::invalid_argument otherwise.
std::vector<CheckResult> run_verify_suite(const std::string& suite);

// Deterministic uniform generator used by all sampling suites (identical
// sequences on every platform, unlike <random> distributions).
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    double uniform();  // [0, 1)
    double uniform(double lo, double hi);

  private:
    std::uint64_t state_;
};

}  // namespace abring
