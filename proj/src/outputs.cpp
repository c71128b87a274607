#include "splasmon/outputs.hpp"

#include <openssl/evp.h>
#include <sys/utsname.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "splasmon/config.hpp"

namespace splasmon {

namespace fs = std::filesystem;

namespace {

std::string iso_utc(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string platform_string() {
  utsname u{};
  std::string s = "unknown";
  if (uname(&u) == 0) s = std::string(u.sysname) + " " + u.release + " " + u.machine;
#ifdef __VERSION__
  s += "; compiler " __VERSION__;
#endif
  return s;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const fs::path& p, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(p, mode);
  if (!out) throw IoError("cannot open " + p.string() + " for writing");
  return out;
}

double q_max_abs(const DiagnosticsRecord& r) { return r.max_abs_A; }
double q_a_norm(const DiagnosticsRecord& r) { return r.a_norm(); }

struct Quantity {
  const char* name;
  double (*get)(const DiagnosticsRecord&);
};

const std::vector<Quantity>& summary_quantities() {
  static const std::vector<Quantity> q{
      {"max_abs_A", q_max_abs},
      {"a_norm", q_a_norm},
      {"l2", [](const DiagnosticsRecord& r) { return r.l2(); }},
      {"H", [](const DiagnosticsRecord& r) { return r.hamiltonian; }},
      {"S", [](const DiagnosticsRecord& r) { return r.action_S; }},
      {"T", [](const DiagnosticsRecord& r) { return r.action_T; }},
      {"P", [](const DiagnosticsRecord& r) { return r.momentum_P; }},
      {"szego_momentum", [](const DiagnosticsRecord& r) { return r.szego_momentum; }},
      {"breakdown_integral", [](const DiagnosticsRecord& r) { return r.breakdown_integral; }},
  };
  return q;
}

}  // namespace

nlohmann::json RunManifest::to_json() const {
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : outputs) {
    files.push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  }
  return {{"config", config_text}, {"code_version", code_version}, {"started", started},
          {"finished", finished},  {"platform", platform},         {"outputs", files},
          {"status", status},      {"steps_taken", steps_taken}};
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  static const char* digits = "0123456789abcdef";
  for (unsigned i = 0; i < len; ++i) {
    hex += digits[digest[i] >> 4];
    hex += digits[digest[i] & 15];
  }
  return hex;
}

std::vector<std::string> diagnostics_columns(const std::vector<double>& sobolev) {
  std::vector<std::string> cols{"tau",        "max_abs_A", "a_norm",   "l2",  "H",
                                "S",          "T",         "P",        "breakdown_integral",
                                "a_norm_u",   "a_norm_v",  "l2_u",     "l2_v",
                                "szego_momentum"};
  for (const double s : sobolev) cols.push_back("sobolev_" + fmt(s));
  return cols;
}

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records,
                           const std::vector<double>& sobolev) {
  const auto cols = diagnostics_columns(sobolev);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const auto& r : records) {
    out << fmt(r.tau) << ',' << fmt(r.max_abs_A) << ',' << fmt(r.a_norm()) << ',' << fmt(r.l2())
        << ',' << fmt(r.hamiltonian) << ',' << fmt(r.action_S) << ',' << fmt(r.action_T) << ','
        << fmt(r.momentum_P) << ',' << fmt(r.breakdown_integral) << ',' << fmt(r.a_norm_u) << ','
        << fmt(r.a_norm_v) << ',' << fmt(r.l2_u) << ',' << fmt(r.l2_v) << ','
        << fmt(r.szego_momentum);
    for (const auto& [s, value] : r.sobolev) out << ',' << fmt(value);
    out << "\n";
  }
}

void write_surface_csv(std::ostream& out, const SurfaceData& surface) {
  out << "tau,x,abs_A\n";
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < surface.taus.size(); ++i) {
    for (int j = 0; j < surface.x_points; ++j) {
      const double x = two_pi * j / surface.x_points;
      out << fmt(surface.taus[i]) << ',' << fmt(x) << ',' << fmt(surface.abs_values[i][j]) << "\n";
    }
  }
}

nlohmann::json diagnostics_summary(const Trajectory& traj) {
  nlohmann::json out;
  out["status"] = traj.status_string();
  out["samples"] = traj.samples.size();
  for (const auto& q : summary_quantities()) {
    if (traj.samples.empty()) break;
    double lo = q.get(traj.samples.front());
    double hi = lo;
    for (const auto& r : traj.samples) {
      lo = std::min(lo, q.get(r));
      hi = std::max(hi, q.get(r));
    }
    out["quantities"][q.name] = {{"initial", q.get(traj.samples.front())},
                                 {"final", q.get(traj.samples.back())},
                                 {"min", lo},
                                 {"max", hi}};
  }
  return out;
}

RunManifest emit_outputs(const Trajectory& traj, const fs::path& outdir) {
  if (traj.samples.empty()) throw Error("emit_outputs: trajectory has no samples");
  std::error_code ec;
  fs::create_directories(outdir, ec);
  if (ec) throw IoError("cannot create " + outdir.string() + ": " + ec.message());

  std::vector<std::string> written;
  {
    auto out = open_out(outdir / "diagnostics.csv");
    write_diagnostics_csv(out, traj.samples, traj.config.sobolev);
    if (!out) throw IoError("write failed: diagnostics.csv");
    written.push_back("diagnostics.csv");
  }
  if (!traj.surface.taus.empty()) {
    auto out = open_out(outdir / "surface.csv");
    write_surface_csv(out, traj.surface);
    if (!out) throw IoError("write failed: surface.csv");
    written.push_back("surface.csv");
  }
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%04zu.bin", i);
    write_snapshot_file((outdir / name).string(), traj.snapshots[i].state.combined());
    written.push_back(name);
  }
  {
    auto summary = diagnostics_summary(traj);
    nlohmann::json snaps = nlohmann::json::array();
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) snaps.push_back(traj.snapshots[i].tau);
    summary["snapshot_taus"] = snaps;
    auto out = open_out(outdir / "summary.json");
    out << summary.dump(2) << "\n";
    if (!out) throw IoError("write failed: summary.json");
    written.push_back("summary.json");
  }

  RunManifest m;
  m.config_text = config_to_string(traj.config);
  m.started = iso_utc(traj.started);
  m.finished = iso_utc(traj.finished);
  m.platform = platform_string();
  m.status = traj.status_string();
  m.steps_taken = traj.steps_taken;
  for (const auto& name : written) {
    m.outputs.push_back({name, sha256_file(outdir / name), fs::file_size(outdir / name)});
  }
  auto out = open_out(outdir / "manifest.json");
  out << m.to_json().dump(2) << "\n";
  if (!out) throw IoError("write failed: manifest.json");
  return m;
}

// ---------------------------------------------------------------------------

double sup_relative_deviation(const std::vector<DiagnosticsRecord>& a,
                              const std::vector<DiagnosticsRecord>& b,
                              double (*quantity)(const DiagnosticsRecord&)) {
  if (a.empty() || b.empty()) return 0.0;
  const double end = std::min(a.back().tau, b.back().tau);
  double worst = 0.0;
  std::size_t j = 0;
  for (const auto& ra : a) {
    if (ra.tau > end) break;
    while (j + 1 < b.size() && b[j + 1].tau < ra.tau) ++j;
    double qb = quantity(b[j]);
    if (j + 1 < b.size() && b[j].tau != b[j + 1].tau && ra.tau > b[j].tau) {
      const double w = (ra.tau - b[j].tau) / (b[j + 1].tau - b[j].tau);
      qb = (1.0 - w) * qb + w * quantity(b[j + 1]);
    }
    const double qa = quantity(ra);
    const double scale = std::abs(qb);
    const double dev = scale > 0.0 ? std::abs(qa - qb) / scale : std::abs(qa - qb);
    worst = std::max(worst, dev);
  }
  return worst;
}

unsigned worker_threads() {
  if (const char* env = std::getenv("SPLASMON_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

nlohmann::json ConvergenceReport::to_json() const {
  nlohmann::json runs_json = nlohmann::json::array();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    runs_json.push_back({{"modes", resolutions[i]},
                         {"status", runs[i].status_string()},
                         {"samples", runs[i].samples.size()}});
  }
  nlohmann::json devs = nlohmann::json::array();
  for (const auto& d : deviations) {
    devs.push_back({{"coarse", d.coarse},
                    {"fine", d.fine},
                    {"max_abs_A_sup_rel_dev", d.max_abs_A},
                    {"a_norm_sup_rel_dev", d.a_norm},
                    {"tau_end", d.tau_end}});
  }
  return {{"runs", runs_json}, {"deviations", devs}};
}

ConvergenceReport convergence_study(const RunConfig& base, const std::vector<int>& resolutions,
                                    const fs::path& outdir, unsigned threads) {
  if (resolutions.empty()) throw ParameterError("convergence_study: no resolutions given");
  for (std::size_t i = 1; i < resolutions.size(); ++i) {
    if (resolutions[i] < resolutions[i - 1]) {
      throw ParameterError("convergence_study: resolutions must be ascending");
    }
  }
  ConvergenceReport report;
  report.resolutions = resolutions;
  report.runs.resize(resolutions.size());

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < resolutions.size(); i = next++) {
      RunConfig c = base;
      c.n_modes = resolutions[i];
      try {
        report.runs[i] = run(c);
      } catch (const Error& e) {
        report.runs[i].config = c;
        report.runs[i].status = RunStatus::error;
        report.runs[i].message = e.what();
      }
      if (!outdir.empty() && !report.runs[i].samples.empty()) {
        emit_outputs(report.runs[i], outdir / ("N" + std::to_string(resolutions[i])));
      }
    }
  };
  const unsigned n_threads =
      std::min<unsigned>(threads ? threads : worker_threads(),
                         static_cast<unsigned>(resolutions.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }

  for (std::size_t i = 1; i < resolutions.size(); ++i) {
    const auto& a = report.runs[i - 1].samples;
    const auto& b = report.runs[i].samples;
    ResolutionDeviation d;
    d.coarse = resolutions[i - 1];
    d.fine = resolutions[i];
    d.max_abs_A = sup_relative_deviation(a, b, q_max_abs);
    d.a_norm = sup_relative_deviation(a, b, q_a_norm);
    d.tau_end = (a.empty() || b.empty()) ? 0.0 : std::min(a.back().tau, b.back().tau);
    report.deviations.push_back(d);
  }

  if (!outdir.empty()) {
    fs::create_directories(outdir);
    auto curves = open_out(outdir / "curves.csv");
    curves << "modes,tau,max_abs_A,a_norm\n";
    for (std::size_t i = 0; i < resolutions.size(); ++i) {
      for (const auto& r : report.runs[i].samples) {
        curves << resolutions[i] << ',' << fmt(r.tau) << ',' << fmt(r.max_abs_A) << ','
               << fmt(r.a_norm()) << "\n";
      }
    }
    auto out = open_out(outdir / "report.json");
    out << report.to_json().dump(2) << "\n";
  }
  return report;
}

}  // namespace splasmon
