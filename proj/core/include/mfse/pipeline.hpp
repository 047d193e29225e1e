#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mfse/estimators.hpp"
#include "mfse/filterbank.hpp"
#include "mfse/mf_filters.hpp"
#include "mfse/synth.hpp"

namespace mfse {

// Treatment of bins at or above the multi-frame band edge.
enum class HighBandMode {
  Passthrough,  // copy the noisy coefficients
  OracleGain,   // reference-driven single-tap Wiener gain per bin
};

const char* to_string(HighBandMode m);
HighBandMode high_band_mode_from_string(const std::string& s);

struct PipelineConfig {
  FilterKind filter = FilterKind::MvdrNoise;
  int order = 5;
  int lookahead = 2;
  int selection_index = 0;
  double f_mf_hz = 4000.0;  // bins below this center frequency are
                            // multi-frame filtered
  CovKind param = CovKind::HermitianOfInverse;
  WfScaling wf_mode = WfScaling::Scaled;
  double smoothing = 0.96;
  double loading = kDiagonalLoading;  // 0 disables diagonal loading
  HighBandMode high_band = HighBandMode::Passthrough;
  FilterbankConfig bank;

  // Deep-filter tap sequence: either preloaded or read from weights_path.
  std::shared_ptr<const WeightSequence> weights;
  std::string weights_path;
};

void validate(const PipelineConfig& cfg);

// Number of bins the multi-frame stage covers under this configuration.
int mf_bin_count(const PipelineConfig& cfg);

struct EnhanceResult {
  std::vector<double> enhanced;  // same length as the input
  LatencyReport latency;
  double rtf = 0.0;  // wall time of this run over audio duration
  std::optional<double> si_sdr_db;   // present when clean was supplied
  std::optional<double> seg_snr_db;  // present when clean was supplied
};

// Runs the full enhancement chain on one clip. The statistical filters
// (Wiener and both MVDR forms) require clean and noise references, which
// must satisfy noisy == clean + noise within 1e-6 per sample. The output
// is the input delayed by the reported algorithmic latency; metrics are
// computed against the latency-compensated clean reference.
EnhanceResult enhance_stream(std::span<const double> noisy,
                             std::optional<std::span<const double>> clean,
                             std::optional<std::span<const double>> noise,
                             const PipelineConfig& cfg);

// One configuration of the covariance-parameterization sweep.
struct BenchRow {
  FilterKind filter = FilterKind::Wiener;
  CovKind param = CovKind::Direct;
  int order = 5;
  int lookahead = 2;
  bool completed = false;
  std::string error;  // set when the configuration aborted
  double si_sdr_db = 0.0;
  double seg_snr_db = 0.0;
  double rtf = 0.0;
};

struct BenchConfig {
  std::uint64_t seed = 91;
  int num_clips = 10;
  double seconds = 5.0;
  std::vector<FilterKind> filters = {FilterKind::Wiener,
                                     FilterKind::MvdrNoise};
  std::vector<CovKind> params = {CovKind::Direct, CovKind::Inverse,
                                 CovKind::Hermitian,
                                 CovKind::HermitianOfInverse};
  std::vector<int> orders = {5};
  int lookahead = 2;
  double loading = kDiagonalLoading;  // 0 disables diagonal loading
  int rtf_runs = 5;
};

// Sweeps filter x parameterization x order over a deterministic synthetic
// corpus. Rows that abort (for example a factorization failure when
// loading is disabled) are reported with completed = false instead of
// tearing down the sweep.
std::vector<BenchRow> run_bench_grid(const BenchConfig& cfg);

// Renders rows as CSV with the fixed header
// filter,param,order,lookahead,si_sdr_db,seg_snr_db,rtf.
// Failed rows carry "nan" in the metric columns.
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace mfse
