// Command line front end: enhance single clips, evaluate manifests of
// clips, and sweep the covariance parameterization grid.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mfse/errors.hpp"
#include "mfse/pipeline.hpp"
#include "mfse/wav_io.hpp"

namespace {

using nlohmann::json;

struct PipelineFlags {
  std::string filter = "mvdr";
  int order = 5;
  int lookahead = 2;
  int selection = 0;
  double f_mf = 4000.0;
  std::string param = "hermitian_inverse";
  std::string wf_mode = "scaled";
  double lambda = 0.96;
  double loading = mfse::kDiagonalLoading;
  std::string high_band = "passthrough";
  std::string weights;
};

void add_pipeline_options(CLI::App& cmd, PipelineFlags& f) {
  cmd.add_option("--filter", f.filter,
                 "Filter kind: df, wf, mvdr (undesired covariance) or "
                 "mvdr-noisy")
      ->capture_default_str();
  cmd.add_option("--order", f.order, "Multi-frame filter length N")
      ->capture_default_str();
  cmd.add_option("--lookahead", f.lookahead,
                 "Future frames admitted into the stack")
      ->capture_default_str();
  cmd.add_option("--selection", f.selection,
                 "Tap index the filter reconstructs")
      ->capture_default_str();
  cmd.add_option("--f_mf", f.f_mf,
                 "Upper edge in Hz of the multi-frame band")
      ->capture_default_str();
  cmd.add_option("--param", f.param,
                 "Covariance parameterization: direct, inverse, hermitian "
                 "or hermitian_inverse")
      ->capture_default_str();
  cmd.add_option("--wf_mode", f.wf_mode, "Wiener scaling: scaled or raw")
      ->check(CLI::IsMember({"scaled", "raw"}))
      ->capture_default_str();
  cmd.add_option("--lambda", f.lambda,
                 "Recursive averaging coefficient for the statistics")
      ->capture_default_str();
  cmd.add_option("--loading", f.loading,
                 "Diagonal loading before inversion, 0 disables")
      ->capture_default_str();
  cmd.add_option("--high_band", f.high_band,
                 "Bins above f_mf: passthrough or oracle")
      ->capture_default_str();
  cmd.add_option("--weights", f.weights,
                 "Tap sequence file for the df filter");
}

mfse::PipelineConfig to_config(const PipelineFlags& f) {
  mfse::PipelineConfig cfg;
  cfg.filter = mfse::filter_kind_from_string(f.filter);
  cfg.order = f.order;
  cfg.lookahead = f.lookahead;
  cfg.selection_index = f.selection;
  cfg.f_mf_hz = f.f_mf;
  cfg.param = mfse::cov_kind_from_string(f.param);
  cfg.wf_mode = f.wf_mode == "raw" ? mfse::WfScaling::StrictRaw
                                   : mfse::WfScaling::Scaled;
  cfg.smoothing = f.lambda;
  cfg.loading = f.loading;
  cfg.high_band = mfse::high_band_mode_from_string(f.high_band);
  cfg.weights_path = f.weights;
  mfse::validate(cfg);
  return cfg;
}

json report_line(const std::string& file, const mfse::PipelineConfig& cfg,
                 const mfse::EnhanceResult& result) {
  json line;
  line["file"] = file;
  line["filter"] = mfse::to_string(cfg.filter);
  line["N"] = cfg.order;
  line["lookahead"] = cfg.lookahead;
  line["si_sdr_db"] =
      result.si_sdr_db ? json(*result.si_sdr_db) : json(nullptr);
  line["seg_snr_db"] =
      result.seg_snr_db ? json(*result.seg_snr_db) : json(nullptr);
  line["rtf"] = result.rtf;
  line["latency_ms"] = result.latency.total_ms;
  return line;
}

std::vector<double> maybe_read(const std::string& path, int rate) {
  return path.empty() ? std::vector<double>{} : mfse::read_wav(path, rate);
}

std::optional<std::span<const double>> as_ref(
    const std::vector<double>& samples) {
  if (samples.empty()) return std::nullopt;
  return std::span<const double>(samples);
}

std::ofstream open_out(const std::string& path, const char* what) {
  std::ofstream out(path);
  if (!out) {
    throw mfse::IoError(std::string("cannot open ") + what + " file " +
                        path);
  }
  return out;
}

int run_enhance(const PipelineFlags& flags, const std::string& in_path,
                const std::string& clean_path, const std::string& noise_path,
                const std::string& out_path, const std::string& report_path) {
  const auto cfg = to_config(flags);
  const auto noisy = mfse::read_wav(in_path, cfg.bank.sample_rate);
  const auto clean = maybe_read(clean_path, cfg.bank.sample_rate);
  const auto noise = maybe_read(noise_path, cfg.bank.sample_rate);

  const auto result =
      mfse::enhance_stream(noisy, as_ref(clean), as_ref(noise), cfg);
  mfse::write_wav(out_path, result.enhanced, cfg.bank.sample_rate);

  const json line = report_line(in_path, cfg, result);
  if (!report_path.empty()) {
    auto report = open_out(report_path, "report");
    report << line.dump() << "\n";
  }
  std::cout << line.dump() << "\n";
  return 0;
}

struct ManifestRow {
  std::string noisy;
  std::string clean;
  std::string noise;
};

std::vector<ManifestRow> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mfse::IoError("cannot open manifest " + path);
  std::vector<ManifestRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    ManifestRow row;
    std::getline(fields, row.noisy, '\t');
    std::getline(fields, row.clean, '\t');
    std::getline(fields, row.noise, '\t');
    if (row.noisy.empty()) {
      throw mfse::IoError("manifest row without a noisy path: " + line);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

int run_evaluate(const PipelineFlags& flags, const std::string& manifest_path,
                 const std::string& out_dir,
                 const std::string& report_path) {
  const auto cfg = to_config(flags);
  const auto rows = read_manifest(manifest_path);
  std::filesystem::create_directories(out_dir);
  std::ofstream report;
  if (!report_path.empty()) report = open_out(report_path, "report");

  for (const auto& row : rows) {
    const auto noisy = mfse::read_wav(row.noisy, cfg.bank.sample_rate);
    const auto clean = maybe_read(row.clean, cfg.bank.sample_rate);
    const auto noise = maybe_read(row.noise, cfg.bank.sample_rate);
    const auto result =
        mfse::enhance_stream(noisy, as_ref(clean), as_ref(noise), cfg);

    const std::string stem =
        std::filesystem::path(row.noisy).stem().string();
    const auto in_dir = std::filesystem::path(out_dir);
    mfse::write_wav((in_dir / (stem + "_enhanced.wav")).string(),
                    result.enhanced, cfg.bank.sample_rate);
    if (!clean.empty()) {
      // latency-aligned pair for external scoring tools
      const std::size_t delay =
          static_cast<std::size_t>(result.latency.total_samples);
      std::vector<double> est(result.enhanced.begin() + delay,
                              result.enhanced.end());
      std::vector<double> ref(clean.begin(),
                              clean.end() - static_cast<long>(delay));
      mfse::write_wav((in_dir / (stem + "_est.wav")).string(), est,
                      cfg.bank.sample_rate);
      mfse::write_wav((in_dir / (stem + "_ref.wav")).string(), ref,
                      cfg.bank.sample_rate);
    }

    const json line = report_line(row.noisy, cfg, result);
    if (report.is_open()) {
      report << line.dump() << "\n";
      report.flush();
    }
    std::cout << line.dump() << "\n";
  }
  return 0;
}

int run_bench(const std::string& suite, const std::string& grid,
              std::vector<int> orders, bool no_loading, int clips,
              double seconds, std::uint64_t seed,
              const std::string& out_path) {
  (void)suite;
  (void)grid;
  mfse::BenchConfig cfg;
  cfg.seed = seed;
  cfg.num_clips = clips;
  cfg.seconds = seconds;
  if (!orders.empty()) cfg.orders = std::move(orders);
  if (no_loading) cfg.loading = 0.0;

  const auto rows = mfse::run_bench_grid(cfg);
  for (const auto& row : rows) {
    if (!row.completed) {
      std::cerr << "note: " << mfse::to_string(row.filter) << "/"
                << mfse::to_string(row.param) << " N=" << row.order
                << " failed: " << row.error << "\n";
    }
  }
  const std::string csv = mfse::bench_csv(rows);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    auto out = open_out(out_path, "csv");
    out << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low latency multi-frame speech enhancement"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "TOML file; keys under an [enhance], [evaluate] or "
                 "[bench] section match that subcommand's long options");

  PipelineFlags flags;

  auto* enhance = app.add_subcommand(
      "enhance", "Enhance one clip and write the result");
  enhance->fallthrough();
  std::string in_path, clean_path, noise_path, out_path, report_path;
  enhance->add_option("--in", in_path, "Noisy input wav")->required();
  enhance->add_option("--clean", clean_path,
                      "Clean reference wav for oracle statistics");
  enhance->add_option("--noise", noise_path,
                      "Noise reference wav for oracle statistics");
  enhance->add_option("--out", out_path, "Enhanced output wav")->required();
  enhance->add_option("--report", report_path, "Write a JSON line here");
  add_pipeline_options(*enhance, flags);

  auto* evaluate = app.add_subcommand(
      "evaluate", "Enhance every row of a tab separated manifest");
  evaluate->fallthrough();
  std::string manifest_path, out_dir, eval_report;
  evaluate->add_option("--manifest", manifest_path,
                       "TSV rows: noisy [clean [noise]]")
      ->required();
  evaluate->add_option("--out-dir", out_dir, "Directory for output wavs")
      ->required();
  evaluate->add_option("--report", eval_report,
                       "JSONL report, one line per row");
  add_pipeline_options(*evaluate, flags);

  auto* bench = app.add_subcommand(
      "bench", "Sweep filters across covariance parameterizations");
  bench->fallthrough();
  std::string suite = "synthetic";
  std::string grid = "default";
  std::vector<int> orders;
  bool no_loading = false;
  int clips = 10;
  double seconds = 5.0;
  std::uint64_t seed = 91;
  std::string bench_out;
  bench->add_option("--suite", suite, "Corpus to run on")
      ->check(CLI::IsMember({"synthetic"}))
      ->capture_default_str();
  bench->add_option("--grid", grid, "Configuration grid")
      ->check(CLI::IsMember({"default"}))
      ->capture_default_str();
  bench->add_option("--orders", orders, "Filter lengths to sweep")
      ->delimiter(',');
  bench->add_flag("--no-loading", no_loading,
                  "Disable diagonal loading before inversion");
  bench->add_option("--clips", clips, "Clips in the synthetic corpus")
      ->capture_default_str();
  bench->add_option("--seconds", seconds, "Length of each clip")
      ->capture_default_str();
  bench->add_option("--seed", seed, "Corpus seed")->capture_default_str();
  bench->add_option("--out", bench_out, "Write CSV here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (enhance->parsed()) {
      return run_enhance(flags, in_path, clean_path, noise_path, out_path,
                         report_path);
    }
    if (evaluate->parsed()) {
      return run_evaluate(flags, manifest_path, out_dir, eval_report);
    }
    return run_bench(suite, grid, orders, no_loading, clips, seconds, seed,
                     bench_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
