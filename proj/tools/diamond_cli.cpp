// Batch front end: single-point reports, parameter sweeps, threshold
// finding and the validation harness.
//
// Exit status: 0 success, 2 usage error, 3 numeric-domain error,
// 4 validation failure, 130 interrupted.

#include "diamond/sweep.hpp"
#include "diamond/threshold.hpp"
#include "diamond/validation.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitValidation = 4;
constexpr int kExitInterrupted = 130;

std::atomic<bool> g_interrupted{false};

extern "C" void on_interrupt(int) { g_interrupted.store(true); }

struct ParamFlags {
  std::string j = "0";
  std::string j2 = "1";
  std::string jm = "0";
  std::string field = "0";
  std::string temp = "1";

  void add_to(CLI::App& app) {
    app.add_option("--j", j, "Ising-Heisenberg coupling J (value or start:stop:steps)")->capture_default_str();
    app.add_option("--j2", j2, "Heisenberg dimer coupling J2")->capture_default_str();
    app.add_option("--jm", jm, "nodal Ising coupling Jm")->capture_default_str();
    app.add_option("--field", field, "magnetic field H")->capture_default_str();
    app.add_option("--temp", temp, "temperature T")->capture_default_str();
  }
};

struct OutputFlags {
  std::string format = "csv";
  std::string out;
  std::string measures = "all";
  std::optional<double> temp_floor;
  bool verbatim_v = false;
  std::size_t grid_cap = diamond::kDefaultGridCap;
  unsigned workers = 0;

  void add_to(CLI::App& app, bool sweep) {
    app.add_option("--format", format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}))->capture_default_str();
    app.add_option("--out", out, "output path (default: standard output)");
    app.add_option("--measures", measures, "comma list of concurrence,qd,gmqd,gqd1 (or all)")->capture_default_str();
    app.add_option("--temp-floor", temp_floor,
                   sweep ? "temperature substituted for T = 0 (default 1e-3)" : "temperature substituted for T = 0");
    app.add_flag("--use-verbatim-v", verbatim_v, "use the published v-element exponent for theta");
    if (sweep) {
      app.add_option("--grid-cap", grid_cap, "maximum number of grid points")->capture_default_str();
      app.add_option("--workers", workers, "worker threads (0 = hardware concurrency)");
    }
  }
};

diamond::SweepSpec make_spec(const ParamFlags& pf, const OutputFlags& of, bool sweep) {
  diamond::SweepSpec spec;
  spec.j = diamond::parse_range(pf.j);
  spec.j2 = diamond::parse_range(pf.j2);
  spec.jm = diamond::parse_range(pf.jm);
  spec.field = diamond::parse_range(pf.field);
  spec.temperature = diamond::parse_range(pf.temp);
  spec.report.measures = diamond::parse_measures(of.measures);
  spec.report.v_variant = of.verbatim_v ? diamond::VElement::Verbatim : diamond::VElement::Corrected;
  spec.grid_cap = of.grid_cap;
  if (sweep) spec.temperature_floor = of.temp_floor.value_or(diamond::kDefaultTemperatureFloor);
  else spec.temperature_floor = of.temp_floor;
  if (spec.temperature_floor && !(*spec.temperature_floor > 0.0))
    throw diamond::Error(diamond::ErrorKind::InvalidArgument, "--temp-floor must be positive");
  return spec;
}

int run_rows(const diamond::SweepSpec& spec, const OutputFlags& of, unsigned workers) {
  std::unique_ptr<std::ofstream> file;
  std::ostream* out = &std::cout;
  if (!of.out.empty()) {
    file = std::make_unique<std::ofstream>(of.out, std::ios::binary);
    if (!*file) {
      std::cerr << "error: cannot open " << of.out << " for writing\n";
      return kExitUsage;
    }
    out = file.get();
  }
  const auto format = of.format == "jsonl" ? diamond::OutputFormat::JsonLines : diamond::OutputFormat::Csv;
  const auto outcome = diamond::run_sweep(spec, *out, format, workers, &g_interrupted);
  if (outcome.cancelled) {
    std::cerr << "interrupted after " << outcome.rows_written << " rows\n";
    return kExitInterrupted;
  }
  return 0;
}

int exit_code_for(const diamond::Error& e) {
  switch (e.kind()) {
    case diamond::ErrorKind::InvalidArgument: return kExitUsage;
    default: return kExitNumeric;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum correlations of the Ising-Heisenberg diamond-chain cluster"};
  app.require_subcommand(1);

  ParamFlags point_params;
  OutputFlags point_out;
  auto* point = app.add_subcommand("point", "all measures at a single parameter point");
  point_params.add_to(*point);
  point_out.add_to(*point, false);

  ParamFlags sweep_params;
  OutputFlags sweep_out;
  auto* sweep = app.add_subcommand("sweep", "measures over a parameter grid, one row per point");
  sweep_params.add_to(*sweep);
  sweep_out.add_to(*sweep, true);

  ParamFlags thr_params;
  std::string scan = "H";
  std::string measure = "concurrence";
  double lo = 0.0;
  double hi = 1.0;
  double dead = 1e-9;
  double tol = 1e-4;
  auto* threshold = app.add_subcommand("threshold", "locate where a measure dies along T or H");
  thr_params.add_to(*threshold);
  threshold->add_option("--scan", scan, "scanned parameter: T or H")->check(CLI::IsMember({"T", "H"}))->capture_default_str();
  threshold->add_option("--measure", measure, "concurrence, qd, gmqd or gqd1")->capture_default_str();
  threshold->add_option("--lo", lo, "bracket start")->required();
  threshold->add_option("--hi", hi, "bracket end")->required();
  threshold->add_option("--dead", dead, "dead threshold")->capture_default_str();
  threshold->add_option("--tol", tol, "bisection tolerance")->capture_default_str();

  std::size_t validate_cap = 200;
  bool validate_verbatim = false;
  auto* validate = app.add_subcommand("validate", "invariant and oracle checks over a deterministic sample grid");
  validate->add_option("--grid-cap", validate_cap, "number of sample points")->capture_default_str();
  validate->add_flag("--use-verbatim-v", validate_verbatim, "check the published v-element exponent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  std::signal(SIGINT, on_interrupt);

  try {
    if (*point) {
      const auto spec = make_spec(point_params, point_out, false);
      for (const auto* r : spec.axes()) {
        if (!r->is_fixed()) {
          std::cerr << "error: point takes fixed values; use sweep for ranges\n";
          return kExitUsage;
        }
      }
      return run_rows(spec, point_out, 1);
    }
    if (*sweep) {
      const auto spec = make_spec(sweep_params, sweep_out, true);
      unsigned workers = sweep_out.workers;
      if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
      return run_rows(spec, sweep_out, workers);
    }
    if (*threshold) {
      diamond::ThresholdQuery q;
      q.scan = diamond::parse_scan_parameter(scan);
      q.measure = diamond::parse_measure(measure);
      q.lo = lo;
      q.hi = hi;
      q.dead_threshold = dead;
      q.tolerance = tol;
      diamond::ChainParams fixed;
      const auto fixed_value = [](const std::string& text, const char* name, bool scanned) {
        if (scanned) return 0.0;
        const auto r = diamond::parse_range(text);
        if (!r.is_fixed())
          throw diamond::Error(diamond::ErrorKind::InvalidArgument, std::string(name) + " must be a fixed value");
        return r.start;
      };
      fixed.j = fixed_value(thr_params.j, "--j", false);
      fixed.j2 = fixed_value(thr_params.j2, "--j2", false);
      fixed.jm = fixed_value(thr_params.jm, "--jm", false);
      fixed.field = fixed_value(thr_params.field, "--field", q.scan == diamond::ScanParameter::Field);
      fixed.temperature = fixed_value(thr_params.temp, "--temp", q.scan == diamond::ScanParameter::Temperature);
      const auto result = diamond::find_threshold(q, fixed);
      if (!result.found) {
        std::cout << "NoThreshold: " << measure << " stays above " << diamond::format_real(dead) << " on ["
                  << diamond::format_real(lo) << ", " << diamond::format_real(hi) << "]\n";
      } else {
        std::cout << "threshold " << scan << " = " << diamond::format_real(result.location) << " (alive at "
                  << diamond::format_real(result.alive_side) << ", dead at " << diamond::format_real(result.dead_side)
                  << ")\n";
      }
      return 0;
    }
    if (*validate) {
      diamond::ValidationOptions opt;
      opt.grid_cap = validate_cap;
      opt.v_variant = validate_verbatim ? diamond::VElement::Verbatim : diamond::VElement::Corrected;
      const auto summary = diamond::run_validation(opt);
      diamond::print_summary(std::cout, summary);
      return summary.passed() ? 0 : kExitValidation;
    }
  } catch (const diamond::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.kind() == diamond::ErrorKind::TemperatureTooLow)
      std::cerr << "hint: use a positive --temp, or --temp-floor to substitute one for T = 0\n";
    return exit_code_for(e);
  }
  return 0;
}
