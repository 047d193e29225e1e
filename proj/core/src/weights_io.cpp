#include "mfse/weights_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace mfse {

namespace {

constexpr char kMagic[4] = {'M', 'F', 'W', '1'};

std::uint32_t read_u32_le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void write_u32_le(std::uint32_t v, unsigned char* p) {
  p[0] = static_cast<unsigned char>(v & 0xff);
  p[1] = static_cast<unsigned char>((v >> 8) & 0xff);
  p[2] = static_cast<unsigned char>((v >> 16) & 0xff);
  p[3] = static_cast<unsigned char>((v >> 24) & 0xff);
}

float read_f32_le(const unsigned char* p) {
  const std::uint32_t bits = read_u32_le(p);
  float f;
  std::memcpy(&f, &bits, sizeof(f));
  return f;
}

void write_f32_le(float f, unsigned char* p) {
  std::uint32_t bits;
  std::memcpy(&bits, &f, sizeof(bits));
  write_u32_le(bits, p);
}

}  // namespace

WeightSequence read_weight_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open weight file: " + path);
  }
  unsigned char header[16];
  if (!in.read(reinterpret_cast<char*>(header), sizeof(header))) {
    throw IoError("weight file too short for header: " + path);
  }
  if (std::memcmp(header, kMagic, 4) != 0) {
    throw IoError("bad weight file magic in " + path);
  }
  const std::uint32_t order = read_u32_le(header + 4);
  const std::uint32_t bins = read_u32_le(header + 8);
  const std::uint32_t frames = read_u32_le(header + 12);
  if (order == 0 || order > static_cast<std::uint32_t>(kMaxOrder) ||
      bins == 0 || frames == 0) {
    throw IoError("weight file header out of range in " + path);
  }

  const std::size_t count =
      static_cast<std::size_t>(order) * bins * frames;
  std::vector<unsigned char> raw(count * 8);
  if (!in.read(reinterpret_cast<char*>(raw.data()),
               static_cast<std::streamsize>(raw.size()))) {
    throw IoError("weight file truncated: " + path);
  }

  std::vector<cdouble> taps(count);
  for (std::size_t i = 0; i < count; ++i) {
    const float re = read_f32_le(raw.data() + i * 8);
    const float im = read_f32_le(raw.data() + i * 8 + 4);
    taps[i] = cdouble(re, im);
  }
  return WeightSequence(static_cast<int>(order), static_cast<int>(bins),
                        static_cast<int>(frames), std::move(taps));
}

void write_weight_file(const std::string& path, const WeightSequence& seq) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot create weight file: " + path);
  }
  unsigned char header[16];
  std::memcpy(header, kMagic, 4);
  write_u32_le(static_cast<std::uint32_t>(seq.order()), header + 4);
  write_u32_le(static_cast<std::uint32_t>(seq.num_bins()), header + 8);
  write_u32_le(static_cast<std::uint32_t>(seq.frame_count()), header + 12);
  out.write(reinterpret_cast<const char*>(header), sizeof(header));

  std::vector<unsigned char> raw;
  raw.resize(static_cast<std::size_t>(seq.order()) * seq.num_bins() * 8);
  for (int t = 0; t < seq.frame_count(); ++t) {
    std::size_t pos = 0;
    for (int b = 0; b < seq.num_bins(); ++b) {
      for (cdouble w : seq.taps(t, b)) {
        write_f32_le(static_cast<float>(w.real()), raw.data() + pos);
        write_f32_le(static_cast<float>(w.imag()), raw.data() + pos + 4);
        pos += 8;
      }
    }
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
  }
  if (!out) {
    throw IoError("failed writing weight file: " + path);
  }
}

WeightSequence identity_weights(int order, int num_bins, int frame_count,
                                int unit_index) {
  if (unit_index < 0 || unit_index >= order) {
    throw ConfigInvalid("unit tap index must lie in [0, order)");
  }
  std::vector<cdouble> taps(
      static_cast<std::size_t>(order) * num_bins *
          static_cast<std::size_t>(frame_count),
      cdouble(0.0, 0.0));
  for (int t = 0; t < frame_count; ++t) {
    for (int b = 0; b < num_bins; ++b) {
      taps[(static_cast<std::size_t>(t) * num_bins + b) * order +
           unit_index] = 1.0;
    }
  }
  return WeightSequence(order, num_bins, frame_count, std::move(taps));
}

}  // namespace mfse
