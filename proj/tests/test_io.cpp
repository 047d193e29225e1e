#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "mfse/synth.hpp"
#include "mfse/wav_io.hpp"
#include "mfse/weights_io.hpp"

using namespace mfse;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("mfse_io_test_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

}  // namespace

TEST_SUITE("io") {

TEST_CASE("float wav round trips bit-exactly") {
  TempDir dir;
  const auto x = white_noise(3, 4801);
  std::vector<double> clipped(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) {
    clipped[n] = 0.5 * x[n];
  }
  const std::string path = dir.file("f32.wav");
  write_wav(path, clipped, 24000, WavFormat::Float32);
  const auto back = read_wav(path, 24000);
  REQUIRE(back.size() == clipped.size());
  for (std::size_t n = 0; n < back.size(); ++n) {
    CHECK(back[n] == static_cast<double>(static_cast<float>(clipped[n])));
  }
}

TEST_CASE("pcm16 wav round trips within quantization") {
  TempDir dir;
  const auto x = white_noise(4, 2400);
  std::vector<double> scaled(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) scaled[n] = 0.25 * x[n];
  const std::string path = dir.file("p16.wav");
  write_wav(path, scaled, 24000, WavFormat::Pcm16);
  const auto back = read_wav(path, 24000);
  REQUIRE(back.size() == scaled.size());
  for (std::size_t n = 0; n < back.size(); ++n) {
    // writes round at full scale 32767, reads divide by 32768
    CHECK(std::abs(back[n] - scaled[n]) <=
          (0.5 + std::abs(scaled[n])) / 32768.0);
  }
}

TEST_CASE("pcm16 write clamps out-of-range samples") {
  TempDir dir;
  const std::vector<double> hot{1.5, -1.5, 0.0};
  const std::string path = dir.file("hot.wav");
  write_wav(path, hot, 24000, WavFormat::Pcm16);
  const auto back = read_wav(path, 24000);
  CHECK(back[0] == doctest::Approx(32767.0 / 32768.0));
  CHECK(back[1] == doctest::Approx(-32767.0 / 32768.0));
}

TEST_CASE("wav reader enforces the sample rate without resampling") {
  TempDir dir;
  const std::vector<double> x(100, 0.1);
  const std::string path = dir.file("rate.wav");
  write_wav(path, x, 16000, WavFormat::Float32);
  CHECK_THROWS_WITH_AS(read_wav(path, 24000),
                       doctest::Contains("does not resample"), IoError);
}

TEST_CASE("wav reader rejects non-wav and truncated files") {
  TempDir dir;
  const std::string garbage = dir.file("garbage.wav");
  {
    std::ofstream out(garbage, std::ios::binary);
    out << "this is not a wav file at all";
  }
  CHECK_THROWS_AS(read_wav(garbage, 24000), IoError);

  const std::string trunc = dir.file("trunc.wav");
  write_wav(trunc, std::vector<double>(1000, 0.5), 24000, WavFormat::Pcm16);
  std::filesystem::resize_file(trunc, 200);
  CHECK_THROWS_AS(read_wav(trunc, 24000), IoError);

  CHECK_THROWS_AS(read_wav(dir.file("missing.wav"), 24000), IoError);
}

TEST_CASE("wav reader rejects stereo") {
  TempDir dir;
  // hand-build a 2-channel PCM16 header with one frame
  std::string h;
  auto u32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) h.push_back(char((v >> (8 * i)) & 0xff));
  };
  auto u16 = [&](std::uint16_t v) {
    h.push_back(char(v & 0xff));
    h.push_back(char(v >> 8));
  };
  h += "RIFF";
  u32(36 + 4);
  h += "WAVEfmt ";
  u32(16);
  u16(1);      // pcm
  u16(2);      // stereo
  u32(24000);  // rate
  u32(24000 * 4);
  u16(4);
  u16(16);
  h += "data";
  u32(4);
  u16(0);
  u16(0);
  const std::string path = dir.file("stereo.wav");
  {
    std::ofstream out(path, std::ios::binary);
    out.write(h.data(), static_cast<std::streamsize>(h.size()));
  }
  CHECK_THROWS_WITH_AS(read_wav(path, 24000), doctest::Contains("mono"),
                       IoError);
}

TEST_CASE("weight files round trip") {
  TempDir dir;
  std::mt19937_64 rng(51);
  std::normal_distribution<double> g;
  std::vector<cdouble> taps(3 * 4 * 5);
  for (auto& t : taps) t = cdouble{g(rng), g(rng)};
  const WeightSequence seq(3, 4, 5, taps);
  const std::string path = dir.file("w.mfw");
  write_weight_file(path, seq);
  const WeightSequence back = read_weight_file(path);
  CHECK(back.order() == 3);
  CHECK(back.num_bins() == 4);
  CHECK(back.frame_count() == 5);
  for (int t = 0; t < 5; ++t) {
    for (int b = 0; b < 4; ++b) {
      const auto want = seq.taps(t, b);
      const auto got = back.taps(t, b);
      for (int i = 0; i < 3; ++i) {
        // stored as float pairs
        CHECK(got[i].real() ==
              static_cast<double>(static_cast<float>(want[i].real())));
        CHECK(got[i].imag() ==
              static_cast<double>(static_cast<float>(want[i].imag())));
      }
    }
  }
}

TEST_CASE("weight reader checks magic and size") {
  TempDir dir;
  const std::string path = dir.file("bad.mfw");
  const WeightSequence seq = identity_weights(2, 3, 4);
  write_weight_file(path, seq);

  // corrupt the magic
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.put('X');
  }
  CHECK_THROWS_AS(read_weight_file(path), IoError);

  write_weight_file(path, seq);
  std::filesystem::resize_file(path, 20);
  CHECK_THROWS_AS(read_weight_file(path), IoError);

  CHECK_THROWS_AS(read_weight_file(dir.file("missing.mfw")), IoError);
}

TEST_CASE("identity weights put a single unit tap") {
  const WeightSequence seq = identity_weights(4, 2, 3, 1);
  for (int t = 0; t < 3; ++t) {
    for (int b = 0; b < 2; ++b) {
      const auto w = seq.taps(t, b);
      for (int i = 0; i < 4; ++i) {
        CHECK(w[i] == (i == 1 ? cdouble{1.0, 0.0} : cdouble{0.0, 0.0}));
      }
    }
  }
}

}  // TEST_SUITE
