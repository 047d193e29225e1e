#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "mfse/mf_model.hpp"

using namespace mfse;

namespace {

std::vector<cdouble> frame_of(int num_bins, double base) {
  std::vector<cdouble> f(num_bins);
  for (int b = 0; b < num_bins; ++b) {
    f[b] = cdouble{base + b, -base};
  }
  return f;
}

}  // namespace

TEST_SUITE("mf_model") {

TEST_CASE("buffer config validation") {
  MfBufferConfig cfg;
  cfg.order = 0;
  CHECK_THROWS_AS(validate(cfg), ConfigInvalid);
  cfg.order = kMaxOrder + 1;
  CHECK_THROWS_AS(validate(cfg), ConfigInvalid);
  cfg.order = 4;
  cfg.lookahead = -1;
  CHECK_THROWS_AS(validate(cfg), ConfigInvalid);
  cfg.lookahead = 2;
  cfg.selection_index = 4;
  CHECK_THROWS_AS(validate(cfg), ConfigInvalid);
  cfg.selection_index = 3;
  CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("buffer emits once the look-ahead frame arrived") {
  MfBufferConfig cfg;
  cfg.order = 4;
  cfg.lookahead = 2;
  MfBuffer buf(cfg, 3);

  CHECK_FALSE(buf.push_frame(frame_of(3, 0.0)).has_value());
  CHECK_FALSE(buf.push_frame(frame_of(3, 1.0)).has_value());

  const auto out = buf.push_frame(frame_of(3, 2.0));
  REQUIRE(out.has_value());
  CHECK(out->t == 0);
  CHECK(out->order == 4);
  CHECK(out->num_bins == 3);

  // newest first: frames 2, 1, 0, then zero prehistory
  const auto bin1 = out->bin(1);
  CHECK(bin1[0] == cdouble{3.0, -2.0});
  CHECK(bin1[1] == cdouble{2.0, -1.0});
  CHECK(bin1[2] == cdouble{1.0, 0.0});
  CHECK(bin1[3] == cdouble{0.0, 0.0});

  const auto next = buf.push_frame(frame_of(3, 3.0));
  REQUIRE(next.has_value());
  CHECK(next->t == 1);
  CHECK(next->bin(0)[0] == cdouble{3.0, -3.0});
  CHECK(next->bin(0)[3] == cdouble{0.0, 0.0});
}

TEST_CASE("buffer keeps a full history once warm") {
  MfBufferConfig cfg;
  cfg.order = 3;
  cfg.lookahead = 0;
  MfBuffer buf(cfg, 1);
  for (int k = 0; k < 5; ++k) {
    const auto out = buf.push_frame(std::vector<cdouble>{cdouble(k, 0.0)});
    REQUIRE(out.has_value());
    CHECK(out->t == k);
  }
  const auto out = buf.push_frame(std::vector<cdouble>{cdouble(5.0, 0.0)});
  const auto taps = out->bin(0);
  CHECK(taps[0] == cdouble{5.0, 0.0});
  CHECK(taps[1] == cdouble{4.0, 0.0});
  CHECK(taps[2] == cdouble{3.0, 0.0});
}

TEST_CASE("buffer rejects a wrong bin count") {
  MfBufferConfig cfg;
  MfBuffer buf(cfg, 4);
  CHECK_THROWS_AS(buf.push_frame(frame_of(3, 0.0)), BinCountMismatch);
}

TEST_CASE("unit correlation vector") {
  const auto v = IfcVector::unit(5, 2);
  CHECK(v.order == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(v.v[i] == (i == 2 ? cdouble{1.0, 0.0} : cdouble{0.0, 0.0}));
  }
}

TEST_CASE("speech_psd reads the selected diagonal entry, clamped") {
  HermitianMatrix cov(3);
  cov.set_lower(1, 1, 0.75);
  CHECK(speech_psd(cov, 1) == 0.75);
  cov.set_lower(2, 2, -1e-20);
  CHECK(speech_psd(cov, 2) == 0.0);
}

TEST_CASE("correlation vector of a rank-one covariance is exact") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> g;
  for (int sel : {0, 1, 3}) {
    std::vector<cdouble> s(4);
    for (auto& v : s) v = cdouble{g(rng), g(rng)};
    const HermitianMatrix cov = rank_one_update(HermitianMatrix(4), s, 1.0);
    const IfcVector ifc = ifc_from_cov(cov, sel);
    CHECK(ifc.v[sel] == cdouble{1.0, 0.0});  // pinned exactly
    for (int i = 0; i < 4; ++i) {
      const cdouble want = s[i] / s[sel];
      CHECK(std::abs(ifc.v[i] - want) < 1e-12);
    }
  }
}

TEST_CASE("correlation vector refuses a speech-free covariance") {
  HermitianMatrix cov(3);
  cov.set_lower(0, 0, 1.0);
  CHECK_THROWS_AS(ifc_from_cov(cov, 2), ZeroSpeechPsd);
}

TEST_CASE("compose_phixx rebuilds the decomposition") {
  std::mt19937_64 rng(24);
  std::normal_distribution<double> g;
  std::vector<cdouble> s(3);
  for (auto& v : s) v = cdouble{g(rng), g(rng)};

  HermitianMatrix undesired(3);
  for (int i = 0; i < 3; ++i) {
    undesired.set_lower(i, i, 2.0 + i);
  }
  undesired.set_lower(2, 0, cdouble{0.3, 0.1});

  IfcVector ifc;
  ifc.order = 3;
  for (int i = 0; i < 3; ++i) ifc.v[i] = s[i];

  const double phi_s = 1.7;
  const HermitianMatrix xx = compose_phixx(phi_s, ifc, undesired);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const cdouble want =
          undesired(i, j) + phi_s * s[i] * std::conj(s[j]);
      CHECK(std::abs(xx(i, j) - want) < 1e-12);
    }
  }
}

}  // TEST_SUITE
