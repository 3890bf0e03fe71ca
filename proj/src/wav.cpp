// Minimal RIFF/WAVE PCM reader and writer (mono, 16-bit).

#include <array>
#include <fstream>

#include "convtag/audioseg.hpp"
#include "convtag/error.hpp"
#include "text_io.hpp"

namespace convtag::audioseg {

namespace {

std::uint32_t u32(const unsigned char* p) {
  return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 | std::uint32_t{p[2]} << 16 | std::uint32_t{p[3]} << 24;
}
std::uint16_t u16(const unsigned char* p) { return static_cast<std::uint16_t>(p[0] | p[1] << 8); }

void put32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>(v >> (8 * i) & 0xff));
}
void put16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>(v >> 8 & 0xff));
}

}  // namespace

double AudioClip::duration_ms() const noexcept {
  return sample_rate ? static_cast<double>(samples.size()) * 1000.0 / sample_rate : 0.0;
}

AudioClip read_wav(const std::filesystem::path& path) {
  const std::string bytes = detail::read_file(path);
  const auto* data = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::string where = "'" + path.string() + "'";
  if (bytes.size() < 12 || bytes.compare(0, 4, "RIFF") != 0 || bytes.compare(8, 4, "WAVE") != 0)
    throw Error(ErrorCode::Parse, where + " is not a RIFF/WAVE file");

  AudioClip clip;
  bool have_fmt = false, have_data = false;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::string id = bytes.substr(pos, 4);
    const std::size_t size = u32(data + pos + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) throw Error(ErrorCode::Parse, where + ": truncated '" + id + "' chunk");
    if (id == "fmt ") {
      if (size < 16) throw Error(ErrorCode::Parse, where + ": short fmt chunk");
      const auto format = u16(data + body);
      const auto channels = u16(data + body + 2);
      clip.sample_rate = u32(data + body + 4);
      const auto bits = u16(data + body + 14);
      if (format != 1) throw Error(ErrorCode::Parse, where + ": only integer PCM is supported");
      if (channels != 1) throw Error(ErrorCode::Parse, where + ": only mono audio is supported");
      if (bits != 16) throw Error(ErrorCode::Parse, where + ": only 16-bit samples are supported");
      if (clip.sample_rate == 0) throw Error(ErrorCode::Parse, where + ": sample rate is zero");
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw Error(ErrorCode::Parse, where + ": data chunk before fmt chunk");
      clip.samples.resize(size / 2);
      for (std::size_t i = 0; i < clip.samples.size(); ++i)
        clip.samples[i] = static_cast<std::int16_t>(u16(data + body + 2 * i));
      have_data = true;
    }
    pos = body + size + (size & 1);
  }
  if (!have_fmt || !have_data) throw Error(ErrorCode::Parse, where + ": missing fmt or data chunk");
  return clip;
}

void write_wav(const AudioClip& clip, const std::filesystem::path& path) {
  const auto data_size = static_cast<std::uint32_t>(clip.samples.size() * 2);
  std::string out = "RIFF";
  put32(out, 36 + data_size);
  out += "WAVEfmt ";
  put32(out, 16);
  put16(out, 1);
  put16(out, 1);
  put32(out, clip.sample_rate);
  put32(out, clip.sample_rate * 2);
  put16(out, 2);
  put16(out, 16);
  out += "data";
  put32(out, data_size);
  for (std::int16_t s : clip.samples) put16(out, static_cast<std::uint16_t>(s));
  auto file = detail::open_output(path);
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw Error(ErrorCode::Io, "failed writing '" + path.string() + "'");
}

}  // namespace convtag::audioseg
