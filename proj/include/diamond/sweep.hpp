#pragma once

// Parameter grids and row emission for plot data. Rows are computed in
// parallel but always written in lexicographic grid order (T outermost,
// Jm innermost), so output bytes do not depend on the worker count.

#include "diamond/correlations.hpp"
#include "diamond/types.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace diamond {

/// start:stop:steps, or a single fixed value (steps == 1).
struct Range {
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 1;

  static Range fixed(double value) { return {value, value, 1}; }

  double at(std::size_t i) const {
    if (steps == 1) return start;
    if (i + 1 == steps) return stop;
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }

  bool is_fixed() const { return steps == 1; }

  void validate(std::string_view name) const {
    if (!std::isfinite(start) || !std::isfinite(stop))
      throw Error(ErrorKind::InvalidArgument, std::string(name) + ": range bounds must be finite");
    if (steps < 1) throw Error(ErrorKind::InvalidArgument, std::string(name) + ": steps must be >= 1");
    if (start > stop) throw Error(ErrorKind::InvalidArgument, std::string(name) + ": start must not exceed stop");
  }
};

namespace detail {

inline double parse_real(std::string_view text, std::string_view what) {
  // std::from_chars for double is available in libstdc++ >= 11.
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty())
    throw Error(ErrorKind::InvalidArgument, "cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  return value;
}

}  // namespace detail

inline Range parse_range(std::string_view text) {
  const auto first = text.find(':');
  if (first == std::string_view::npos) return Range::fixed(detail::parse_real(text, "value"));
  const auto second = text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos)
    throw Error(ErrorKind::InvalidArgument, "range must be start:stop:steps, got '" + std::string(text) + "'");
  Range r;
  r.start = detail::parse_real(text.substr(0, first), "range start");
  r.stop = detail::parse_real(text.substr(first + 1, second - first - 1), "range stop");
  const double steps = detail::parse_real(text.substr(second + 1), "range steps");
  if (steps < 1 || steps != std::floor(steps))
    throw Error(ErrorKind::InvalidArgument, "range steps must be a positive integer");
  r.steps = static_cast<std::size_t>(steps);
  return r;
}

inline MeasureSet parse_measures(std::string_view text) {
  MeasureSet m{false, false, false, false};
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto token = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (token == "all") m = MeasureSet::all();
    else if (token == "concurrence") m.concurrence = true;
    else if (token == "qd" || token == "classical_corr" || token == "mutual_info") m.discord = true;
    else if (token == "gmqd") m.gmqd = true;
    else if (token == "gqd1") m.gqd1 = true;
    else throw Error(ErrorKind::InvalidArgument, "unknown measure '" + std::string(token) + "'");
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return m;
}

enum class OutputFormat { Csv, JsonLines };

inline constexpr std::array<const char*, 13> kColumns{
    "T", "H", "J", "J2", "Jm", "concurrence", "qd", "classical_corr", "mutual_info", "gmqd", "gqd1", "theta", "flags"};

inline constexpr std::size_t kDefaultGridCap = 10'000'000;
inline constexpr double kDefaultTemperatureFloor = 1e-3;

struct SweepSpec {
  Range temperature = Range::fixed(1.0);
  Range field = Range::fixed(0.0);
  Range j = Range::fixed(0.0);
  Range j2 = Range::fixed(1.0);
  Range jm = Range::fixed(0.0);
  ReportOptions report{};
  std::size_t grid_cap = kDefaultGridCap;
  /// Substituted for a requested T = 0; unset means T = 0 is an error.
  std::optional<double> temperature_floor = kDefaultTemperatureFloor;

  std::array<const Range*, 5> axes() const { return {&temperature, &field, &j, &j2, &jm}; }

  /// Number of grid points; GridTooLarge above the cap.
  std::size_t size() const {
    std::size_t total = 1;
    for (const Range* r : axes()) {
      if (r->steps > grid_cap || total > grid_cap / r->steps)
        throw Error(ErrorKind::GridTooLarge, "sweep grid exceeds the cap of " + std::to_string(grid_cap) + " points");
      total *= r->steps;
    }
    return total;
  }

  void validate() const {
    temperature.validate("T");
    field.validate("H");
    j.validate("J");
    j2.validate("J2");
    jm.validate("Jm");
    (void)size();
  }

  /// Requested grid values at a flat index (T outermost, Jm innermost).
  ChainParams requested(std::size_t index) const {
    std::array<double, 5> values{};
    const auto ax = axes();
    for (std::size_t a = ax.size(); a-- > 0;) {
      values[a] = ax[a]->at(index % ax[a]->steps);
      index /= ax[a]->steps;
    }
    return {values[2], values[3], values[4], values[1], values[0]};
  }
};

struct PointRow {
  ChainParams requested;
  CorrelationReport report;
};

/// Full report at a requested point, applying the temperature floor.
inline PointRow evaluate_point(const ChainParams& requested, const ReportOptions& options,
                               std::optional<double> temperature_floor) {
  ChainParams effective = requested;
  bool floored = false;
  if (requested.temperature == 0.0) {
    if (!temperature_floor)
      throw Error(ErrorKind::TemperatureTooLow, "T = 0 requested; pass --temp-floor to substitute a small positive T");
    effective.temperature = *temperature_floor;
    floored = true;
  }
  PointRow row{requested, full_report(effective, options)};
  if (floored) row.report.flags.emplace_back(flag::kTemperatureFloor);
  return row;
}

// ---------------------------------------------------------------------------
// Formatting

/// 12 significant digits; negative zero printed as 0.
inline std::string format_real(double x) {
  if (x == 0.0) x = 0.0;
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.12g", x);
  return buf.data();
}

inline std::string csv_header() {
  std::string out;
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    if (i) out += ',';
    out += kColumns[i];
  }
  return out + '\n';
}

namespace detail {

inline std::string join_flags(const std::vector<std::string>& flags, char sep) {
  std::string out;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (i) out += sep;
    out += flags[i];
  }
  return out;
}

inline std::array<std::optional<double>, 12> row_values(const PointRow& row) {
  const auto& p = row.requested;
  const auto& r = row.report;
  return {p.temperature, p.field, p.j, p.j2, p.jm, r.concurrence, r.quantum_discord, r.classical_correlation,
          r.mutual_information, r.gmqd, r.gqd_1norm, r.theta};
}

}  // namespace detail

inline std::string format_csv_row(const PointRow& row) {
  std::string out;
  for (const auto& value : detail::row_values(row)) {
    out += value ? format_real(*value) : std::string("NA");
    out += ',';
  }
  out += detail::join_flags(row.report.flags, ';');
  return out + '\n';
}

inline std::string format_jsonl_row(const PointRow& row) {
  nlohmann::ordered_json j;
  const auto values = detail::row_values(row);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i]) j[kColumns[i]] = std::stod(format_real(*values[i]));
    else j[kColumns[i]] = nullptr;
  }
  j["flags"] = row.report.flags;
  return j.dump() + '\n';
}

inline std::string format_row(const PointRow& row, OutputFormat format) {
  return format == OutputFormat::Csv ? format_csv_row(row) : format_jsonl_row(row);
}

// ---------------------------------------------------------------------------
// Sweep driver

struct SweepOutcome {
  std::size_t rows_written = 0;
  bool cancelled = false;
};

/// Evaluates every grid point with `workers` threads and writes rows in
/// grid order. When `cancel` becomes true, the completed ordered prefix is
/// flushed and the sweep stops.
inline SweepOutcome run_sweep(const SweepSpec& spec, std::ostream& out, OutputFormat format,
                              unsigned workers = 1, const std::atomic<bool>* cancel = nullptr) {
  spec.validate();
  spec.report.grid.validate();
  const std::size_t total = spec.size();
  workers = std::max(1u, workers);
  const std::size_t block = 64 * static_cast<std::size_t>(workers);

  if (format == OutputFormat::Csv) out << csv_header();

  SweepOutcome outcome;
  std::vector<std::string> rows;
  std::vector<std::exception_ptr> errors;
  std::vector<char> done;
  for (std::size_t begin = 0; begin < total; begin += block) {
    const std::size_t count = std::min(block, total - begin);
    rows.assign(count, {});
    errors.assign(count, nullptr);
    done.assign(count, 0);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (;;) {
        if (cancel && cancel->load()) return;
        const std::size_t k = next.fetch_add(1);
        if (k >= count) return;
        try {
          rows[k] = format_row(evaluate_point(spec.requested(begin + k), spec.report, spec.temperature_floor), format);
        } catch (...) {
          errors[k] = std::current_exception();
        }
        done[k] = 1;
      }
    };
    if (workers == 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    for (std::size_t k = 0; k < count; ++k) {
      if (!done[k]) {
        outcome.cancelled = true;
        out.flush();
        return outcome;
      }
      if (errors[k]) {
        out.flush();
        std::rethrow_exception(errors[k]);
      }
      out << rows[k];
      ++outcome.rows_written;
    }
    if (cancel && cancel->load()) {
      outcome.cancelled = outcome.rows_written < total;
      break;
    }
  }
  out.flush();
  return outcome;
}

}  // namespace diamond
