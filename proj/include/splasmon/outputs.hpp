#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "splasmon/integrator.hpp"

namespace splasmon {

inline constexpr const char* version_string = "0.1.0";

struct OutputFile {
  std::string path;  ///< relative to the output directory
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  std::string config_text;
  std::string code_version = version_string;
  std::string started;   ///< ISO-8601 UTC
  std::string finished;
  std::string platform;
  std::vector<OutputFile> outputs;
  std::string status;
  long steps_taken = 0;

  nlohmann::json to_json() const;
};

std::string sha256_file(const std::filesystem::path& path);

/// Column names of the diagnostics CSV for a given Sobolev index list.
std::vector<std::string> diagnostics_columns(const std::vector<double>& sobolev);
void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records,
                           const std::vector<double>& sobolev);
void write_surface_csv(std::ostream& out, const SurfaceData& surface);
/// initial / final / min / max of each diagnostic quantity.
nlohmann::json diagnostics_summary(const Trajectory& traj);

/// Writes diagnostics.csv, surface.csv (when sampled), snapshot_NNNN.bin
/// for each stored state (the field A = u + v), summary.json and
/// manifest.json into `outdir`. Throws Error for an empty trajectory and
/// IoError on write failures.
RunManifest emit_outputs(const Trajectory& traj, const std::filesystem::path& outdir);

struct ResolutionDeviation {
  int coarse = 0;
  int fine = 0;
  double max_abs_A = 0.0;  ///< sup over tau of relative difference
  double a_norm = 0.0;
  double tau_end = 0.0;    ///< end of the common window compared
};

struct ConvergenceReport {
  std::vector<int> resolutions;
  std::vector<Trajectory> runs;
  std::vector<ResolutionDeviation> deviations;  ///< consecutive pairs

  nlohmann::json to_json() const;
};

/// Sup over the common tau window of |q_b - q_a| / |q_b| for a quantity
/// extracted from two sample lists; b is interpolated linearly onto a's taus.
double sup_relative_deviation(const std::vector<DiagnosticsRecord>& a,
                              const std::vector<DiagnosticsRecord>& b,
                              double (*quantity)(const DiagnosticsRecord&));

/// Worker threads for concurrent runs: SPLASMON_THREADS if set, else the
/// hardware concurrency.
unsigned worker_threads();

/// Runs `base` at each resolution (initial data truncated to that N),
/// concurrently on worker threads. With a nonempty outdir, each run is
/// emitted into outdir/N<modes>/ and the combined curves (curves.csv) and
/// report (report.json) are written to outdir. Failed runs keep their
/// partial trajectories.
ConvergenceReport convergence_study(const RunConfig& base, const std::vector<int>& resolutions,
                                    const std::filesystem::path& outdir = {},
                                    unsigned threads = 0);

}  // namespace splasmon
