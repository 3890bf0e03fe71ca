#pragma once

// Silence-based splitting of mono 16-bit PCM recordings, plus the WAV
// reader/writer it needs.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace convtag::audioseg {

struct AudioClip {
  std::vector<std::int16_t> samples;
  std::uint32_t sample_rate = 8000;

  double duration_ms() const noexcept;
};

// RIFF/WAVE, PCM, mono, 16-bit. Other layouts are rejected.
AudioClip read_wav(const std::filesystem::path& path);
void write_wav(const AudioClip& clip, const std::filesystem::path& path);

struct SilenceParams {
  double min_silence_len = 750;  // ms
  double silence_thresh = -34;   // dBFS
  double keep_silence = 450;     // ms
  double min_segment_len = 3000; // ms
  double step = 10;              // ms, analysis hop
};

struct Span {
  double start_ms = 0;
  double end_ms = 0;

  double length() const noexcept { return end_ms - start_ms; }
  friend bool operator==(const Span&, const Span&) = default;
};

constexpr double kFullScale16 = 32768.0;

// 20*log10(rms/full_scale); -infinity for an all-zero window.
double rms_dbfs(std::span<const std::int16_t> window, double full_scale = kFullScale16);

// Maximal intervals at least min_silence_len long whose every analysis
// window is strictly below the threshold.
std::vector<Span> detect_silences(const AudioClip& clip, const SilenceParams& params = {});

// Non-silent spans padded by up to keep_silence on each side (padding never
// crosses the middle of a silence) and filtered by min_segment_len.
std::vector<Span> segment_spans(const AudioClip& clip, const SilenceParams& params = {});
std::vector<AudioClip> split_segments(const AudioClip& clip, const SilenceParams& params = {});

AudioClip slice(const AudioClip& clip, const Span& span);

struct WrittenSegment {
  std::filesystem::path path;
  Span span;
};

// Writes `<stem>_<index>_<start_ms>.wav` files into `out_dir`.
std::vector<WrittenSegment> split_file(const std::filesystem::path& input, const std::filesystem::path& out_dir,
                                       const SilenceParams& params = {});

}  // namespace convtag::audioseg
