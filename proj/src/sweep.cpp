#include "abring/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "abring/scattering.hpp"

namespace abring {

namespace {

// %.17g guarantees bit round-trip of IEEE doubles
std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_or_empty(double v, bool present) {
    return present && std::isfinite(v) ? fmt17(v) : std::string();
}

DatasetRow evaluate_row(double gamma, double phi, double k) {
    DatasetRow row;
    row.gamma = gamma;
    row.phi = phi;
    row.k = k;
    const ModelParams p{gamma, phi, k};
    const DerivedQuantities d = derived_quantities(p);
    row.chi_abs = d.chi_abs;
    if (d.xi_plus != 0.0) {
        const Complex det = Complex(d.xi_minus / d.xi_plus);
        row.det_m_re = det.real();
        row.det_m_im = det.imag();
    } else {
        row.det_m_re = row.det_m_im = std::numeric_limits<double>::quiet_NaN();
    }
    try {
        const ScatteringAmplitudes amp = scattering_amplitudes(p);
        row.re_t = amp.t_left.real();
        row.im_t = amp.t_left.imag();
        row.abs_t = std::abs(amp.t_left);
        row.arg_t = std::arg(amp.t_left);
        row.re_r = amp.r_left.real();
        row.im_r = amp.r_left.imag();
        row.abs_r = std::abs(amp.r_left);
        row.arg_r = std::arg(amp.r_left);
    } catch (const SingularTransmission&) {
        row.flag = DatasetRow::Flag::SingularGap;
    }
    return row;
}

void parallel_for(int count, const std::function<void(int)>& body) {
    const int threads = std::min(thread_cap(), std::max(count, 1));
    if (threads <= 1 || count < 2) {
        for (int i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<int> cursor{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const int i = cursor.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    for (auto& th : pool) {
        th.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

}  // namespace

Quantity parse_quantity(const std::string& s) {
    if (s == "amplitudes") return Quantity::Amplitudes;
    if (s == "phase_profile") return Quantity::PhaseProfile;
    if (s == "max_phase_shift") return Quantity::MaxPhaseShift;
    if (s == "det_m") return Quantity::DetM;
    if (s == "chi") return Quantity::Chi;
    throw std::invalid_argument("unknown quantity: " + s);
}

const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::Amplitudes: return "amplitudes";
        case Quantity::PhaseProfile: return "phase_profile";
        case Quantity::MaxPhaseShift: return "max_phase_shift";
        case Quantity::DetM: return "det_m";
        case Quantity::Chi: return "chi";
    }
    return "unknown";
}

double AxisSpec::value_at(int i) const {
    if (count == 1) {
        return lo;
    }
    return lo + (hi - lo) * static_cast<double>(i) / (count - 1);
}

AxisSpec AxisSpec::range(double lo, double hi, int count) {
    if (count < 2 || count > 100'000'000) {
        throw std::invalid_argument("axis range needs 2 <= count <= 1e8");
    }
    if (!(lo < hi)) {
        throw std::invalid_argument("axis range needs lo < hi");
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw std::invalid_argument("axis range needs finite endpoints");
    }
    return {lo, hi, count};
}

namespace {

// whole-string double parse; nullopt on any malformation
std::optional<double> parse_double(const std::string& s) {
    try {
        size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) {
            return std::nullopt;
        }
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::optional<long> parse_count(const std::string& s) {
    try {
        size_t used = 0;
        const long v = std::stol(s, &used);
        if (used != s.size()) {
            return std::nullopt;
        }
        return v;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace

AxisSpec AxisSpec::parse(const std::string& s) {
    const auto c1 = s.find(':');
    if (c1 == std::string::npos) {
        const auto v = parse_double(s);
        if (!v) {
            throw std::invalid_argument("malformed axis value: " + s);
        }
        return fixed(*v);
    }
    const auto c2 = s.find(':', c1 + 1);
    if (c2 == std::string::npos || s.find(':', c2 + 1) != std::string::npos) {
        throw std::invalid_argument("malformed range (want lo:hi:count): " + s);
    }
    const auto lo = parse_double(s.substr(0, c1));
    const auto hi = parse_double(s.substr(c1 + 1, c2 - c1 - 1));
    const auto cnt = parse_count(s.substr(c2 + 1));
    if (!lo || !hi || !cnt || *cnt > 100'000'000 || *cnt < 0) {
        throw std::invalid_argument("malformed range (want lo:hi:count): " + s);
    }
    return range(*lo, *hi, static_cast<int>(*cnt));
}

int thread_cap() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) {
        hw = 1;
    }
    const char* env = std::getenv("ABRING_THREADS");
    if (env == nullptr || *env == '\0') {
        return hw;
    }
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
        return hw;
    }
    return static_cast<int>(std::min<long>(v, 1024));
}

std::vector<DatasetRow> run_sweep(const SweepConfig& cfg) {
    const long long full_grid = static_cast<long long>(cfg.gamma.count) *
                                cfg.phi.count * cfg.k.count;
    if (full_grid > 100'000'000) {
        throw std::invalid_argument("run_sweep: grid exceeds 1e8 points");
    }
    std::vector<DatasetRow> rows;
    if (cfg.quantity == Quantity::MaxPhaseShift) {
        // grid over (gamma, k); phi column records the maximizing phi
        const int total = cfg.gamma.count * cfg.k.count;
        rows.resize(total);
        parallel_for(total, [&](int idx) {
            const int ig = idx / cfg.k.count;
            const int ik = idx % cfg.k.count;
            const double g = cfg.gamma.value_at(ig);
            const double k = cfg.k.value_at(ik);
            const PhaseShift shift = max_phase_shift_detail(k, g, cfg.shift_grid);
            rows[idx] = evaluate_row(g, shift.phi_star, k);
        });
        return rows;
    }
    const int total = cfg.gamma.count * cfg.phi.count * cfg.k.count;
    rows.resize(total);
    parallel_for(total, [&](int idx) {
        const int ik = idx % cfg.k.count;
        const int ip = (idx / cfg.k.count) % cfg.phi.count;
        const int ig = idx / (cfg.k.count * cfg.phi.count);
        rows[idx] = evaluate_row(cfg.gamma.value_at(ig), cfg.phi.value_at(ip),
                                 cfg.k.value_at(ik));
    });
    return rows;
}

void emit_csv(const std::vector<DatasetRow>& rows, std::ostream& out) {
    out << kCsvHeader << "\n";
    for (const auto& r : rows) {
        const bool ok = r.flag == DatasetRow::Flag::Ok;
        out << fmt17(r.gamma) << ',' << fmt17(r.phi) << ',' << fmt17(r.k) << ','
            << fmt_or_empty(r.re_t, ok) << ',' << fmt_or_empty(r.im_t, ok) << ','
            << fmt_or_empty(r.abs_t, ok) << ',' << fmt_or_empty(r.arg_t, ok) << ','
            << fmt_or_empty(r.re_r, ok) << ',' << fmt_or_empty(r.im_r, ok) << ','
            << fmt_or_empty(r.abs_r, ok) << ',' << fmt_or_empty(r.arg_r, ok) << ','
            << fmt_or_empty(r.det_m_re, true) << ',' << fmt_or_empty(r.det_m_im, true)
            << ',' << fmt17(r.chi_abs) << ','
            << (ok ? "ok" : "singular_gap") << "\n";
    }
}

void emit_json(const std::vector<DatasetRow>& rows, std::ostream& out) {
    auto field = [&](const char* name, double v, bool present, bool comma = true) {
        out << '"' << name << "\":";
        if (present && std::isfinite(v)) {
            out << fmt17(v);
        } else {
            out << "null";
        }
        if (comma) {
            out << ',';
        }
    };
    out << "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const bool ok = r.flag == DatasetRow::Flag::Ok;
        out << "{";
        field("gamma", r.gamma, true);
        field("phi", r.phi, true);
        field("k", r.k, true);
        field("re_t", r.re_t, ok);
        field("im_t", r.im_t, ok);
        field("abs_t", r.abs_t, ok);
        field("arg_t", r.arg_t, ok);
        field("re_r", r.re_r, ok);
        field("im_r", r.im_r, ok);
        field("abs_r", r.abs_r, ok);
        field("arg_r", r.arg_r, ok);
        field("det_m_re", r.det_m_re, true);
        field("det_m_im", r.det_m_im, true);
        field("chi_abs", r.chi_abs, true);
        out << "\"flag\":\"" << (ok ? "ok" : "singular_gap") << "\"}";
        if (i + 1 < rows.size()) {
            out << ',';
        }
        out << "\n";
    }
    out << "]\n";
}

void emit(const std::vector<DatasetRow>& rows, OutputFormat format,
          const std::string& path) {
    auto write = [&](std::ostream& out) {
        if (format == OutputFormat::Csv) {
            emit_csv(rows, out);
        } else {
            emit_json(rows, out);
        }
        if (!out) {
            throw std::ios_base::failure("emit: write failed");
        }
    };
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::ios_base::failure("emit: cannot open " + path);
    }
    write(out);
}

}  // namespace abring
