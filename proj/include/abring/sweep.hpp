#pragma once

// Parameter sweeps over (gamma, phi, k) grids and CSV/JSON dataset emission.

#include <iosfwd>
#include <string>
#include <vector>

#include "abring/model.hpp"

namespace abring {

enum class Quantity { Amplitudes, PhaseProfile, MaxPhaseShift, DetM, Chi };
enum class OutputFormat { Csv, Json };

Quantity parse_quantity(const std::string& s);
const char* to_string(Quantity q);

// One sweep axis: fixed value (count == 1) or an inclusive lo:hi:count grid.
struct AxisSpec {
    double lo = 0.0;
    double hi = 0.0;
    int count = 1;

    bool swept() const { return count > 1; }
    double value_at(int i) const;

    static AxisSpec fixed(double v) { return {v, v, 1}; }
    static AxisSpec range(double lo, double hi, int count);
    // "0.5" or "lo:hi:count"; throws std::invalid_argument on malformed input
    static AxisSpec parse(const std::string& s);
};

struct SweepConfig {
    Quantity quantity = Quantity::Amplitudes;
    AxisSpec gamma, phi, k;
    std::string output;  // empty = stdout
    OutputFormat format = OutputFormat::Csv;
    double lapse_threshold = kPi / 4;
    int shift_grid = 10001;  // internal phi grid for MaxPhaseShift
};

struct DatasetRow {
    enum class Flag { Ok, SingularGap };

    double gamma = 0, phi = 0, k = 0;
    double re_t = 0, im_t = 0, abs_t = 0, arg_t = 0;
    double re_r = 0, im_r = 0, abs_r = 0, arg_r = 0;
    double det_m_re = 0, det_m_im = 0;
    double chi_abs = 0;
    Flag flag = Flag::Ok;
};

// One row per grid point, gamma-major / k-minor lexicographic order. Singular
// grid points are flagged, never fatal. Grid evaluation honours the
// ABRING_THREADS cap; ordering is by grid index and thus deterministic.
// For MaxPhaseShift the grid is (gamma, k) and each row is evaluated at the
// maximizing phi (recorded in the phi column).
std::vector<DatasetRow> run_sweep(const SweepConfig& cfg);

inline constexpr const char* kCsvHeader =
    "gamma,phi,k,re_t,im_t,abs_t,arg_t,re_r,im_r,abs_r,arg_r,det_m_re,det_m_im,"
    "chi_abs,flag";

// CSV: pinned header, %.17g fields (bit round-trip), LF endings; singular-gap
// rows leave the eight amplitude cells empty. JSON: array of row objects with
// the same field names, null standing in for the empty cells.
void emit_csv(const std::vector<DatasetRow>& rows, std::ostream& out);
void emit_json(const std::vector<DatasetRow>& rows, std::ostream& out);
void emit(const std::vector<DatasetRow>& rows, OutputFormat format,
          const std::string& path);  // throws std::ios_base::failure on I/O

// Parallelism cap from the environment (>= 1); defaults to the hardware
// concurrency when ABRING_THREADS is unset or unparsable.
int thread_cap();

}  // namespace abring
