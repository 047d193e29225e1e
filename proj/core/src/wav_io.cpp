#include "mfse/wav_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace mfse {

namespace {

std::uint32_t u32_le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t u16_le(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] |
                                    (static_cast<std::uint16_t>(p[1]) << 8));
}

void put_u32_le(std::uint32_t v, std::string& out) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_u16_le(std::uint16_t v, std::string& out) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;

}  // namespace

std::vector<double> read_wav(const std::string& path, int required_rate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open WAV file: " + path);
  }
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw IoError("not a RIFF/WAVE file: " + path);
  }

  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t rate = 0;
  std::uint16_t bits = 0;
  const unsigned char* data = nullptr;
  std::uint32_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t chunk_len = u32_le(chunk + 4);
    const std::size_t body = pos + 8;
    if (body + chunk_len > bytes.size()) {
      throw IoError("truncated chunk in WAV file: " + path);
    }
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (chunk_len < 16) {
        throw IoError("fmt chunk too short in " + path);
      }
      format = u16_le(chunk + 8);
      channels = u16_le(chunk + 10);
      rate = u32_le(chunk + 12);
      bits = u16_le(chunk + 22);
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      data_len = chunk_len;
    }
    pos = body + chunk_len + (chunk_len & 1);
  }

  if (format == 0 || data == nullptr) {
    throw IoError("missing fmt or data chunk in " + path);
  }
  if (channels != 1) {
    throw IoError(path + " has " + std::to_string(channels) +
                  " channels; only mono input is supported");
  }
  if (rate != static_cast<std::uint32_t>(required_rate)) {
    throw IoError(path + " is sampled at " + std::to_string(rate) +
                  " Hz; this engine requires " +
                  std::to_string(required_rate) + " Hz and does not resample");
  }

  std::vector<double> samples;
  if (format == kFormatPcm && bits == 16) {
    const std::size_t count = data_len / 2;
    samples.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      const std::int16_t v =
          static_cast<std::int16_t>(u16_le(data + i * 2));
      samples[i] = static_cast<double>(v) / 32768.0;
    }
  } else if (format == kFormatFloat && bits == 32) {
    const std::size_t count = data_len / 4;
    samples.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint32_t raw = u32_le(data + i * 4);
      float f;
      std::memcpy(&f, &raw, sizeof(f));
      samples[i] = static_cast<double>(f);
    }
  } else {
    throw IoError(path + " uses an unsupported sample format; expected " +
                  "16-bit PCM or 32-bit float");
  }
  return samples;
}

void write_wav(const std::string& path, const std::vector<double>& samples,
               int sample_rate, WavFormat format) {
  const bool is_float = format == WavFormat::Float32;
  const std::uint16_t bytes_per_sample = is_float ? 4 : 2;
  const std::uint32_t data_len =
      static_cast<std::uint32_t>(samples.size()) * bytes_per_sample;

  std::string out;
  out.reserve(44 + data_len);
  out.append("RIFF");
  put_u32_le(36 + data_len, out);
  out.append("WAVE");
  out.append("fmt ");
  put_u32_le(16, out);
  put_u16_le(is_float ? kFormatFloat : kFormatPcm, out);
  put_u16_le(1, out);
  put_u32_le(static_cast<std::uint32_t>(sample_rate), out);
  put_u32_le(static_cast<std::uint32_t>(sample_rate) * bytes_per_sample, out);
  put_u16_le(bytes_per_sample, out);
  put_u16_le(static_cast<std::uint16_t>(bytes_per_sample * 8), out);
  out.append("data");
  put_u32_le(data_len, out);

  if (is_float) {
    for (double v : samples) {
      const float f = static_cast<float>(v);
      std::uint32_t bits;
      std::memcpy(&bits, &f, sizeof(bits));
      put_u32_le(bits, out);
    }
  } else {
    for (double v : samples) {
      const double clipped = std::clamp(v, -1.0, 1.0);
      const long q = std::lround(clipped * 32767.0);
      put_u16_le(static_cast<std::uint16_t>(static_cast<std::int16_t>(q)),
                 out);
    }
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file || !file.write(out.data(), static_cast<std::streamsize>(out.size()))) {
    throw IoError("failed writing WAV file: " + path);
  }
}

}  // namespace mfse
