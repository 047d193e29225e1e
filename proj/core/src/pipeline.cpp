#include "mfse/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>

#include "mfse/errors.hpp"
#include "mfse/metrics.hpp"
#include "mfse/weights_io.hpp"

namespace mfse {

namespace {

constexpr double kRefTolerance = 1e-6;

void check_reference_sum(std::span<const double> noisy,
                         std::span<const double> clean,
                         std::span<const double> noise) {
  if (clean.size() != noisy.size() || noise.size() != noisy.size()) {
    throw RefMismatch("reference length differs from the noisy input");
  }
  for (std::size_t n = 0; n < noisy.size(); ++n) {
    const double gap = std::abs(noisy[n] - clean[n] - noise[n]);
    if (gap > kRefTolerance) {
      throw RefMismatch("noisy input is not the sum of the references at sample " +
                        std::to_string(n));
    }
  }
}

FilterWeights weights_for_bin(const PipelineConfig& cfg,
                              const EstimatorOutput& est) {
  ResolvedCov cov = resolve_cov(est.cov, cfg.loading);
  switch (cfg.filter) {
    case FilterKind::Wiener:
      return wf_weights(cov, est.ifc, est.phi_s, cfg.wf_mode);
    case FilterKind::MvdrNoisy:
    case FilterKind::MvdrNoise:
      return mvdr_weights(cov, est.ifc);
    case FilterKind::DeepFilter:
      break;
  }
  throw ConfigInvalid("statistical weights requested for the deep filter");
}

}  // namespace

const char* to_string(HighBandMode m) {
  switch (m) {
    case HighBandMode::Passthrough:
      return "passthrough";
    case HighBandMode::OracleGain:
      return "oracle";
  }
  return "?";
}

HighBandMode high_band_mode_from_string(const std::string& s) {
  if (s == "passthrough") return HighBandMode::Passthrough;
  if (s == "oracle") return HighBandMode::OracleGain;
  throw ConfigInvalid("unknown high-band mode: " + s);
}

void validate(const PipelineConfig& cfg) {
  validate(cfg.bank);
  if (cfg.order < 1 || cfg.order > kMaxOrder) {
    throw ConfigInvalid("filter order must be in [1, " +
                        std::to_string(kMaxOrder) + "]");
  }
  if (cfg.lookahead < 0) {
    throw ConfigInvalid("look-ahead must be non-negative");
  }
  if (cfg.selection_index < 0 || cfg.selection_index >= cfg.order) {
    throw ConfigInvalid("selection index must lie within the filter order");
  }
  if (!(cfg.f_mf_hz > 0.0) ||
      cfg.f_mf_hz > cfg.bank.sample_rate / 2.0 + 1e-9) {
    throw ConfigInvalid("multi-frame band edge must lie in (0, Nyquist]");
  }
  if (!(cfg.smoothing >= 0.0) || !(cfg.smoothing < 1.0)) {
    throw ConfigInvalid("smoothing factor must lie in [0, 1)");
  }
  if (!(cfg.loading >= 0.0)) {
    throw ConfigInvalid("diagonal loading must be non-negative");
  }
  if (cfg.filter == FilterKind::DeepFilter && !cfg.weights &&
      cfg.weights_path.empty()) {
    throw ConfigInvalid("the deep filter needs a tap sequence");
  }
}

int mf_bin_count(const PipelineConfig& cfg) {
  const int bins = cfg.bank.num_bins();
  int count = 0;
  for (int b = 0; b < bins; ++b) {
    if (cfg.bank.bin_center_hz(b) < cfg.f_mf_hz) ++count;
  }
  return count;
}

EnhanceResult enhance_stream(std::span<const double> noisy,
                             std::optional<std::span<const double>> clean,
                             std::optional<std::span<const double>> noise,
                             const PipelineConfig& cfg) {
  validate(cfg);

  const bool statistical = cfg.filter != FilterKind::DeepFilter;
  const bool needs_refs =
      statistical || cfg.high_band == HighBandMode::OracleGain;
  if (needs_refs && (!clean || !noise)) {
    throw MissingReference(
        "this configuration needs clean and noise references");
  }
  if (clean && noise) {
    check_reference_sum(noisy, *clean, *noise);
  }

  std::shared_ptr<const WeightSequence> taps = cfg.weights;
  if (cfg.filter == FilterKind::DeepFilter && !taps) {
    taps = std::make_shared<WeightSequence>(read_weight_file(cfg.weights_path));
  }

  const auto started = std::chrono::steady_clock::now();

  const ComplexSpectrogram x = analyze(noisy, cfg.bank);
  ComplexSpectrogram s;
  ComplexSpectrogram z;
  if (clean && noise) {
    s = analyze(*clean, cfg.bank);
    z = analyze(*noise, cfg.bank);
  }

  const int bins = x.num_bins;
  const int frames = x.frame_count;
  const int mf_bins = mf_bin_count(cfg);

  if (cfg.filter == FilterKind::DeepFilter) {
    if (taps->order() != cfg.order) {
      throw OrderMismatch("tap sequence order differs from the configuration");
    }
    if (taps->num_bins() != mf_bins) {
      throw BinCountMismatch(
          "tap sequence covers " + std::to_string(taps->num_bins()) +
          " bins, the multi-frame band has " + std::to_string(mf_bins));
    }
    if (taps->frame_count() < frames) {
      throw ConfigInvalid("tap sequence is shorter than the clip");
    }
  }

  // The stacked history is driven at every analysed frame; look-ahead is
  // accounted for purely as inserted output delay further down.
  MfBufferConfig stack_cfg;
  stack_cfg.order = cfg.order;
  stack_cfg.lookahead = 0;
  stack_cfg.selection_index = cfg.selection_index;
  validate(stack_cfg);

  MfBuffer x_buf(stack_cfg, mf_bins);
  MfBuffer s_buf(stack_cfg, mf_bins);
  MfBuffer z_buf(stack_cfg, mf_bins);

  EstimatorConfig est_cfg;
  est_cfg.order = cfg.order;
  est_cfg.selection_index = cfg.selection_index;
  est_cfg.smoothing = cfg.smoothing;
  est_cfg.cov_kind = cfg.param;
  est_cfg.filter = statistical ? cfg.filter : FilterKind::MvdrNoise;
  est_cfg.loading = cfg.loading;

  std::optional<OracleEstimator> oracle;
  if (statistical) {
    oracle.emplace(est_cfg, mf_bins);
  }
  std::optional<ScalarPsdTracker> high_tracker;
  if (cfg.high_band == HighBandMode::OracleGain) {
    high_tracker.emplace(cfg.smoothing, bins);
  }

  ComplexSpectrogram y;
  y.num_bins = bins;
  y.frame_count = frames;
  y.frame_rate_hz = x.frame_rate_hz;
  y.bin_width_hz = x.bin_width_hz;
  y.coeff.assign(static_cast<std::size_t>(bins) * frames, cdouble{0.0, 0.0});

  std::vector<cdouble> x_lo(static_cast<std::size_t>(mf_bins));
  std::vector<cdouble> s_lo(static_cast<std::size_t>(mf_bins));
  std::vector<cdouble> z_lo(static_cast<std::size_t>(mf_bins));

  for (int t = 0; t < frames; ++t) {
    const std::span<const cdouble> x_frame = x.frame(t);
    std::copy_n(x_frame.begin(), mf_bins, x_lo.begin());
    std::optional<MfFrame> x_mf = x_buf.push_frame(x_lo);
    std::optional<MfFrame> s_mf;
    std::optional<MfFrame> z_mf;
    if (clean && noise) {
      std::copy_n(s.frame(t).begin(), mf_bins, s_lo.begin());
      std::copy_n(z.frame(t).begin(), mf_bins, z_lo.begin());
      s_mf = s_buf.push_frame(s_lo);
      z_mf = z_buf.push_frame(z_lo);
    }

    const int slot = t - cfg.selection_index;
    for (int b = 0; b < mf_bins; ++b) {
      FilterWeights w;
      if (statistical) {
        const EstimatorOutput est =
            oracle->update_bin(b, s_mf->bin(b), z_mf->bin(b));
        w = weights_for_bin(cfg, est);
      } else {
        w = df_weights(taps->taps(t, b));
      }
      if (slot >= 0) {
        y.at(slot, b) = apply_weights(w, x_mf->bin(b));
      }
    }

    if (high_tracker) {
      high_tracker->update(s.frame(t), z.frame(t));
    }
    for (int b = mf_bins; b < bins; ++b) {
      const double gain = high_tracker ? high_tracker->wiener_gain(b) : 1.0;
      y.at(t, b) = gain * x_frame[static_cast<std::size_t>(b)];
    }
  }

  const std::vector<double> raw = synthesize(y, cfg.bank);

  // Shift by the look-ahead budget so the total delay matches the report.
  const std::size_t shift =
      static_cast<std::size_t>(cfg.lookahead) * cfg.bank.hop;
  EnhanceResult result;
  result.enhanced.assign(noisy.size(), 0.0);
  for (std::size_t n = 0; n < noisy.size(); ++n) {
    if (n >= shift && n - shift < raw.size()) {
      result.enhanced[n] = raw[n - shift];
    }
  }

  const auto finished = std::chrono::steady_clock::now();
  const double elapsed =
      std::chrono::duration<double>(finished - started).count();
  const double audio_seconds =
      static_cast<double>(noisy.size()) / cfg.bank.sample_rate;
  result.rtf = audio_seconds > 0.0 ? elapsed / audio_seconds : 0.0;

  result.latency = latency_report(cfg.bank, cfg.lookahead);

  if (clean) {
    const std::size_t delay =
        static_cast<std::size_t>(result.latency.total_samples);
    if (noisy.size() > delay) {
      const std::size_t usable = noisy.size() - delay;
      std::vector<double> aligned(result.enhanced.begin() + delay,
                                  result.enhanced.end());
      const std::span<const double> ref = clean->subspan(0, usable);
      result.si_sdr_db = si_sdr_db(ref, aligned);
      result.seg_snr_db = seg_snr_db(ref, aligned, cfg.bank.sample_rate);
    }
  }
  return result;
}

std::vector<BenchRow> run_bench_grid(const BenchConfig& cfg) {
  const FilterbankConfig bank;
  const std::vector<MixedClip> corpus =
      synthetic_corpus(cfg.seed, cfg.num_clips, cfg.seconds, bank.sample_rate);

  std::vector<BenchRow> rows;
  for (const FilterKind filter : cfg.filters) {
    for (const CovKind param : cfg.params) {
      for (const int order : cfg.orders) {
        BenchRow row;
        row.filter = filter;
        row.param = param;
        row.order = order;
        row.lookahead = cfg.lookahead;

        PipelineConfig pipe;
        pipe.filter = filter;
        pipe.param = param;
        pipe.order = order;
        pipe.lookahead = cfg.lookahead;
        pipe.loading = cfg.loading;
        pipe.high_band = HighBandMode::OracleGain;
        pipe.bank = bank;

        try {
          validate(pipe);
          double si_sum = 0.0;
          double seg_sum = 0.0;
          int scored = 0;
          for (const MixedClip& clip : corpus) {
            const EnhanceResult out = enhance_stream(
                clip.noisy, std::span<const double>(clip.clean),
                std::span<const double>(clip.noise), pipe);
            if (out.si_sdr_db && out.seg_snr_db) {
              si_sum += *out.si_sdr_db;
              seg_sum += *out.seg_snr_db;
              ++scored;
            }
          }
          if (scored == 0) {
            throw ConfigInvalid("no clip was long enough to score");
          }
          const MixedClip& timing = corpus.front();
          const RtfReport rtf = measure_rtf(
              [&] {
                enhance_stream(timing.noisy,
                               std::span<const double>(timing.clean),
                               std::span<const double>(timing.noise), pipe);
              },
              static_cast<double>(timing.noisy.size()) / bank.sample_rate,
              cfg.rtf_runs);
          row.si_sdr_db = si_sum / scored;
          row.seg_snr_db = seg_sum / scored;
          row.rtf = rtf.median;
          row.completed = true;
        } catch (const Error& e) {
          row.error = e.what();
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "filter,param,order,lookahead,si_sdr_db,seg_snr_db,rtf\n";
  const auto fmt = [](double v) {
    if (!std::isfinite(v)) return std::string("nan");
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return std::string(buf);
  };
  for (const BenchRow& row : rows) {
    out += to_string(row.filter);
    out += ',';
    out += to_string(row.param);
    out += ',';
    out += std::to_string(row.order);
    out += ',';
    out += std::to_string(row.lookahead);
    out += ',';
    if (row.completed) {
      out += fmt(row.si_sdr_db);
      out += ',';
      out += fmt(row.seg_snr_db);
      out += ',';
      out += fmt(row.rtf);
    } else {
      out += "nan,nan,nan";
    }
    out += '\n';
  }
  return out;
}

}  // namespace mfse
