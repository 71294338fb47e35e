// abring — exact-solution toolkit for a PT-symmetric Aharonov-Bohm ring
// lattice: closed-form scattering amplitudes, spectral-singularity tools,
// eigenstate construction, basis equivalences, and dataset sweeps.

#include <complex>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "abring/equivalence.hpp"
#include "abring/scattering.hpp"
#include "abring/sweep.hpp"
#include "abring/verify.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;
constexpr int kExitIo = 3;

struct SweepOptions {
    std::string quantity, gamma, phi, k, output, format, config;
    double lapse_threshold = abring::kDefaultLapseThreshold;
    int shift_grid = abring::kDefaultShiftGrid;
};

abring::SweepConfig resolve_sweep_config(const SweepOptions& opt, const CLI::App& sub) {
    json cfg_json;
    if (!opt.config.empty()) {
        std::ifstream in(opt.config);
        if (!in) {
            throw std::ios_base::failure("cannot open config file " + opt.config);
        }
        in >> cfg_json;
    }
    auto pick = [&](const char* flag, const std::string& cli_val,
                    const char* key) -> std::string {
        if (sub.count(flag) > 0) {
            return cli_val;  // flags override the config file
        }
        if (cfg_json.contains(key)) {
            const auto& v = cfg_json.at(key);
            return v.is_string() ? v.get<std::string>() : v.dump();
        }
        return {};
    };

    abring::SweepConfig cfg;
    const std::string quantity = pick("--quantity", opt.quantity, "quantity");
    if (quantity.empty()) {
        throw CLI::ValidationError("sweep", "--quantity is required (flag or config)");
    }
    cfg.quantity = abring::parse_quantity(quantity);

    auto axis = [&](const char* flag, const std::string& cli_val, const char* key,
                    double fallback) {
        const std::string spec = pick(flag, cli_val, key);
        return spec.empty() ? abring::AxisSpec::fixed(fallback)
                            : abring::AxisSpec::parse(spec);
    };
    cfg.gamma = axis("--gamma", opt.gamma, "gamma", 0.0);
    cfg.phi = axis("--phi", opt.phi, "phi", 0.0);
    cfg.k = axis("--k", opt.k, "k", abring::kPi / 2.0 + 1e-3);

    cfg.output = pick("--output", opt.output, "output");
    const std::string format = pick("--format", opt.format, "format");
    if (format.empty() || format == "csv") {
        cfg.format = abring::OutputFormat::Csv;
    } else if (format == "json") {
        cfg.format = abring::OutputFormat::Json;
    } else {
        throw CLI::ValidationError("sweep", "--format must be csv or json");
    }
    if (sub.count("--lapse-threshold") > 0) {
        cfg.lapse_threshold = opt.lapse_threshold;
    } else if (cfg_json.contains("lapse_threshold")) {
        cfg.lapse_threshold = cfg_json.at("lapse_threshold").get<double>();
    }
    if (sub.count("--shift-grid") > 0) {
        cfg.shift_grid = opt.shift_grid;
    } else if (cfg_json.contains("shift_grid")) {
        cfg.shift_grid = cfg_json.at("shift_grid").get<int>();
    }

    if (cfg.quantity == abring::Quantity::PhaseProfile && !cfg.phi.swept()) {
        throw CLI::ValidationError("sweep", "phase_profile needs a phi range (lo:hi:count)");
    }
    if (cfg.quantity == abring::Quantity::MaxPhaseShift && cfg.phi.swept()) {
        throw CLI::ValidationError(
            "sweep", "max_phase_shift sweeps its own internal phi grid; "
                     "pass ranges for gamma and/or k only");
    }
    return cfg;
}

int run_sweep_command(const SweepOptions& opt, const CLI::App& sub) {
    const abring::SweepConfig cfg = resolve_sweep_config(opt, sub);
    const std::vector<abring::DatasetRow> rows = abring::run_sweep(cfg);
    abring::emit(rows, cfg.format, cfg.output);

    // companion summaries; kept off the dataset stream
    std::ostream& aux = cfg.output.empty() ? std::cerr : std::cout;
    if (cfg.quantity == abring::Quantity::PhaseProfile) {
        json events = json::array();
        for (int ig = 0; ig < cfg.gamma.count; ++ig) {
            for (int ik = 0; ik < cfg.k.count; ++ik) {
                const double g = cfg.gamma.value_at(ig);
                const double k = cfg.k.value_at(ik);
                const abring::PhaseProfile prof =
                    abring::phase_profile(k, g, cfg.phi.lo, cfg.phi.hi, cfg.phi.count,
                                          cfg.lapse_threshold);
                for (const auto& ev : prof.lapse_events) {
                    events.push_back(
                        {{"gamma", g}, {"k", k}, {"phi", ev.phi}, {"jump", ev.jump}});
                }
            }
        }
        aux << json{{"lapse_events", events}}.dump(2) << "\n";
    } else if (cfg.quantity == abring::Quantity::MaxPhaseShift) {
        json shifts = json::array();
        for (int ig = 0; ig < cfg.gamma.count; ++ig) {
            for (int ik = 0; ik < cfg.k.count; ++ik) {
                const double g = cfg.gamma.value_at(ig);
                const double k = cfg.k.value_at(ik);
                const abring::PhaseShift s =
                    abring::max_phase_shift_detail(k, g, cfg.shift_grid);
                shifts.push_back({{"gamma", g},
                                  {"k", k},
                                  {"delta_omega", s.delta_omega},
                                  {"phi_star", s.phi_star}});
            }
        }
        aux << json{{"phase_shifts", shifts}}.dump(2) << "\n";
    }
    return kExitOk;
}

int run_locus(double gamma) {
    const std::vector<double> phi_c = abring::singularity_locus(gamma);
    std::cout << json{{"gamma", gamma}, {"phi_c", phi_c}}.dump(2) << "\n";
    return kExitOk;
}

int run_phase_shift(const std::string& gamma_spec, const std::string& k_spec,
                    int grid, const std::string& output, const std::string& format) {
    const abring::AxisSpec gamma = abring::AxisSpec::parse(gamma_spec);
    const abring::AxisSpec k = k_spec.empty()
                                   ? abring::AxisSpec::fixed(abring::kPi / 2 + 1e-5)
                                   : abring::AxisSpec::parse(k_spec);
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!output.empty() && output != "-") {
        file.open(output, std::ios::binary);
        if (!file) {
            throw std::ios_base::failure("cannot open " + output);
        }
        out = &file;
    }
    std::vector<std::tuple<double, double, abring::PhaseShift>> rows;
    for (int ig = 0; ig < gamma.count; ++ig) {
        for (int ik = 0; ik < k.count; ++ik) {
            const double g = gamma.value_at(ig);
            const double kv = k.value_at(ik);
            rows.emplace_back(g, kv, abring::max_phase_shift_detail(kv, g, grid));
        }
    }
    if (format == "json") {
        json arr = json::array();
        for (const auto& [g, kv, s] : rows) {
            arr.push_back({{"gamma", g},
                           {"k", kv},
                           {"delta_omega", s.delta_omega},
                           {"phi_star", s.phi_star}});
        }
        *out << arr.dump(2) << "\n";
    } else {
        char buf[160];
        *out << "gamma,k,delta_omega,phi_star\n";
        for (const auto& [g, kv, s] : rows) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", g, kv,
                          s.delta_omega, s.phi_star);
            *out << buf;
        }
    }
    if (!*out) {
        throw std::ios_base::failure("write failed");
    }
    return kExitOk;
}

int run_verify(const std::string& suite) {
    const std::vector<abring::CheckResult> results = abring::run_verify_suite(suite);
    json arr = json::array();
    bool all_pass = true;
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        arr.push_back({{"name", r.name},
                       {"pass", r.pass},
                       {"value", r.value},
                       {"threshold", r.threshold}});
    }
    std::cout << json{{"suite", suite}, {"pass", all_pass}, {"checks", arr}}.dump(2)
              << "\n";
    return all_pass ? kExitOk : kExitVerification;
}

int run_equivalence(int n, double gamma) {
    const abring::EquivalenceReport rep = abring::verify_equivalence(n, gamma);
    const bool pass = rep.norm1 < 1e-12 && rep.norm2 < 1e-12 && rep.cross_block < 1e-12;
    std::cout << json{{"n", n},
                      {"gamma", gamma},
                      {"norm1", rep.norm1},
                      {"norm2", rep.norm2},
                      {"cross_block", rep.cross_block},
                      {"pass", pass}}
                     .dump(2)
              << "\n";
    return pass ? kExitOk : kExitVerification;
}

std::complex<double> parse_complex(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) {
        return {std::stod(s), 0.0};
    }
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

int run_state_dump(const std::string& branch_name, int n, double gamma, double phi,
                   double k, const std::string& alpha_minus,
                   const std::string& alpha_plus, const std::string& output) {
    using abring::Branch;
    Branch branch;
    if (branch_name == "psi1") branch = Branch::Psi1;
    else if (branch_name == "psi2") branch = Branch::Psi2;
    else if (branch_name == "bar1") branch = Branch::Bar1;
    else if (branch_name == "bar2") branch = Branch::Bar2;
    else if (branch_name == "singular-plus") branch = Branch::SingularPlus;
    else if (branch_name == "singular-minus") branch = Branch::SingularMinus;
    else if (branch_name == "bar-singular-plus") branch = Branch::BarSingularPlus;
    else if (branch_name == "bar-singular-minus") branch = Branch::BarSingularMinus;
    else {
        throw CLI::ValidationError("state-dump", "unknown branch " + branch_name);
    }

    abring::LatticeState state = [&] {
        switch (branch) {
            case Branch::SingularPlus:
                return abring::singular_state(+1, false, n, gamma, phi);
            case Branch::SingularMinus:
                return abring::singular_state(-1, false, n, gamma, phi);
            case Branch::BarSingularPlus:
                return abring::singular_state(+1, true, n, gamma, phi);
            case Branch::BarSingularMinus:
                return abring::singular_state(-1, true, n, gamma, phi);
            default: {
                const abring::ModelParams p{gamma, phi, k, n};
                const auto coeffs = abring::eigen_pair_coefficients(
                    p, parse_complex(alpha_minus), parse_complex(alpha_plus));
                return abring::bethe_state(p, coeffs, branch);
            }
        }
    }();

    json arr = json::array();
    auto push = [&](const json& site, const std::complex<double>& v) {
        arr.push_back({{"site", site}, {"re", v.real()}, {"im", v.imag()}});
    };
    for (int j = -n; j <= -1; ++j) {
        push(j, state.at(j));
    }
    push("+", state.at_plus());
    push("-", state.at_minus());
    for (int j = 1; j <= n; ++j) {
        push(j, state.at(j));
    }
    if (output.empty() || output == "-") {
        std::cout << arr.dump(2) << "\n";
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) {
            throw std::ios_base::failure("cannot open " + output);
        }
        out << arr.dump(2) << "\n";
        if (!out) {
            throw std::ios_base::failure("write failed");
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact non-Hermitian Aharonov-Bohm ring scattering toolkit"};
    app.require_subcommand(1);

    SweepOptions sweep_opt;
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep over (gamma, phi, k)");
    sweep->add_option("--quantity", sweep_opt.quantity,
                      "amplitudes|phase_profile|max_phase_shift|det_m|chi");
    sweep->add_option("--gamma", sweep_opt.gamma, "value or lo:hi:count");
    sweep->add_option("--phi", sweep_opt.phi, "value or lo:hi:count");
    sweep->add_option("--k", sweep_opt.k, "value or lo:hi:count");
    sweep->add_option("--output", sweep_opt.output, "output path (default stdout)");
    sweep->add_option("--format", sweep_opt.format, "csv (default) or json");
    sweep->add_option("--config", sweep_opt.config, "JSON config file; flags override");
    sweep->add_option("--lapse-threshold", sweep_opt.lapse_threshold,
                      "adjacent-sample jump threshold for lapse events (rad)");
    sweep->add_option("--shift-grid", sweep_opt.shift_grid,
                      "internal phi grid for max_phase_shift");

    double locus_gamma = 0.0;
    CLI::App* locus = app.add_subcommand("locus", "singularity locus phi_c(gamma)");
    locus->add_option("--gamma", locus_gamma, "gain/loss strength in (0, 1]")
        ->required();

    std::string ps_gamma, ps_k, ps_format = "json", ps_output;
    int ps_grid = abring::kDefaultShiftGrid;
    CLI::App* pshift =
        app.add_subcommand("phase-shift", "maximal transmission phase shift vs phi=pi/4");
    pshift->add_option("--gamma", ps_gamma, "value or lo:hi:count")->required();
    pshift->add_option("--k", ps_k, "value or lo:hi:count (default pi/2 + 1e-5)");
    pshift->add_option("--grid", ps_grid, "phi grid density");
    pshift->add_option("--output", ps_output, "output path (default stdout)");
    pshift->add_option("--format", ps_format, "json (default) or csv");

    std::string verify_suite = "all";
    CLI::App* verify = app.add_subcommand("verify", "run a self-verification suite");
    verify->add_option("--suite", verify_suite,
                       "unitarity|oracle|det-m|locus|symmetry|residual|"
                       "biorthogonality|equivalence|all");

    int eq_n = 20;
    double eq_gamma = 0.5;
    CLI::App* equiv =
        app.add_subcommand("equivalence", "verify the phi=pi/4 basis equivalences");
    equiv->add_option("--n", eq_n, "lead truncation N");
    equiv->add_option("--gamma", eq_gamma, "gain/loss strength");

    std::string sd_branch, sd_alpha_minus = "1", sd_alpha_plus = "0", sd_output;
    int sd_n = 60;
    double sd_gamma = 0.5, sd_phi = 0.3, sd_k = 1.2;
    CLI::App* sdump = app.add_subcommand("state-dump", "dump an eigenstate as JSON");
    sdump->add_option("--branch", sd_branch,
                      "psi1|psi2|bar1|bar2|singular-plus|singular-minus|"
                      "bar-singular-plus|bar-singular-minus")
        ->required();
    sdump->add_option("--n", sd_n, "lead truncation N");
    sdump->add_option("--gamma", sd_gamma, "gain/loss strength");
    sdump->add_option("--phi", sd_phi, "quarter flux");
    sdump->add_option("--k", sd_k, "wavenumber (Bethe branches only)");
    sdump->add_option("--alpha-minus", sd_alpha_minus, "re[,im]");
    sdump->add_option("--alpha-plus", sd_alpha_plus, "re[,im]");
    sdump->add_option("--output", sd_output, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sweep->parsed()) return run_sweep_command(sweep_opt, *sweep);
        if (locus->parsed()) return run_locus(locus_gamma);
        if (pshift->parsed())
            return run_phase_shift(ps_gamma, ps_k, ps_grid, ps_output, ps_format);
        if (verify->parsed()) return run_verify(verify_suite);
        if (equiv->parsed()) return run_equivalence(eq_n, eq_gamma);
        if (sdump->parsed())
            return run_state_dump(sd_branch, sd_n, sd_gamma, sd_phi, sd_k,
                                  sd_alpha_minus, sd_alpha_plus, sd_output);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const abring::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}
