#include "convtag/audioseg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "convtag/error.hpp"

namespace convtag::audioseg {

namespace {

using Ms = long long;

Ms to_ms(double v, const char* what) {
  if (!(v >= 0) || !std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be >= 0");
  return std::llround(v);
}

std::size_t sample_at(const AudioClip& clip, Ms ms) {
  const auto idx = static_cast<std::size_t>(ms * static_cast<Ms>(clip.sample_rate) / 1000);
  return std::min(idx, clip.samples.size());
}

Ms length_ms(const AudioClip& clip) {
  return static_cast<Ms>(clip.samples.size()) * 1000 / static_cast<Ms>(clip.sample_rate);
}

void check_clip(const AudioClip& clip) {
  if (clip.sample_rate == 0) throw Error(ErrorCode::InvalidArgument, "sample rate must be positive");
}

std::vector<Span> nonsilent(const AudioClip& clip, const SilenceParams& params) {
  const Ms len = length_ms(clip);
  const auto silences = detect_silences(clip, params);
  std::vector<Span> out;
  double prev = 0;
  for (const auto& s : silences) {
    if (s.start_ms > prev) out.push_back({prev, s.start_ms});
    prev = s.end_ms;
  }
  if (prev < static_cast<double>(len)) out.push_back({prev, static_cast<double>(len)});
  return out;
}

}  // namespace

double rms_dbfs(std::span<const std::int16_t> window, double full_scale) {
  if (window.empty()) throw Error(ErrorCode::InvalidArgument, "empty window");
  if (!(full_scale > 0)) throw Error(ErrorCode::InvalidArgument, "full scale must be positive");
  double sum = 0;
  for (std::int16_t s : window) sum += static_cast<double>(s) * s;
  if (sum == 0) return -std::numeric_limits<double>::infinity();
  const double rms = std::sqrt(sum / static_cast<double>(window.size()));
  return 20.0 * std::log10(rms / full_scale);
}

std::vector<Span> detect_silences(const AudioClip& clip, const SilenceParams& params) {
  check_clip(clip);
  const Ms min_len = to_ms(params.min_silence_len, "min_silence_len");
  const Ms step = to_ms(params.step, "step");
  if (step <= 0) throw Error(ErrorCode::InvalidArgument, "step must be positive");
  const Ms len = length_ms(clip);
  if (len < min_len || len == 0) return {};

  const Ms last_start = len - min_len;
  std::vector<Ms> starts;
  for (Ms i = 0; i <= last_start; i += step) starts.push_back(i);
  if (last_start % step != 0) starts.push_back(last_start);

  std::vector<Span> out;
  for (Ms s : starts) {
    const std::size_t a = sample_at(clip, s);
    const std::size_t b = std::max(sample_at(clip, s + min_len), a + 1);
    const std::span<const std::int16_t> window(clip.samples.data() + a, std::min(b, clip.samples.size()) - a);
    if (window.empty() || !(rms_dbfs(window) < params.silence_thresh)) continue;
    const auto start = static_cast<double>(s), end = static_cast<double>(s + min_len);
    if (!out.empty() && start <= out.back().end_ms)
      out.back().end_ms = std::max(out.back().end_ms, end);
    else
      out.push_back({start, end});
  }
  return out;
}

std::vector<Span> segment_spans(const AudioClip& clip, const SilenceParams& params) {
  const Ms keep = to_ms(params.keep_silence, "keep_silence");
  const double min_seg = static_cast<double>(to_ms(params.min_segment_len, "min_segment_len"));
  const auto len = static_cast<double>(length_ms(clip));
  auto spans = nonsilent(clip, params);
  for (auto& s : spans) {
    s.start_ms -= static_cast<double>(keep);
    s.end_ms += static_cast<double>(keep);
  }
  // Overlapping padding meets in the middle of the silence.
  for (std::size_t i = 0; i + 1 < spans.size(); ++i) {
    if (spans[i + 1].start_ms < spans[i].end_ms) {
      const double mid = std::floor((spans[i].end_ms + spans[i + 1].start_ms) / 2);
      spans[i].end_ms = mid;
      spans[i + 1].start_ms = mid;
    }
  }
  std::vector<Span> out;
  for (auto s : spans) {
    s.start_ms = std::max(s.start_ms, 0.0);
    s.end_ms = std::min(s.end_ms, len);
    if (s.length() >= min_seg && s.length() > 0) out.push_back(s);
  }
  return out;
}

AudioClip slice(const AudioClip& clip, const Span& span) {
  check_clip(clip);
  const std::size_t a = sample_at(clip, std::llround(span.start_ms));
  const std::size_t b = std::max(a, sample_at(clip, std::llround(span.end_ms)));
  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.samples.assign(clip.samples.begin() + static_cast<std::ptrdiff_t>(a),
                     clip.samples.begin() + static_cast<std::ptrdiff_t>(b));
  return out;
}

std::vector<AudioClip> split_segments(const AudioClip& clip, const SilenceParams& params) {
  std::vector<AudioClip> out;
  for (const auto& s : segment_spans(clip, params)) out.push_back(slice(clip, s));
  return out;
}

std::vector<WrittenSegment> split_file(const std::filesystem::path& input, const std::filesystem::path& out_dir,
                                       const SilenceParams& params) {
  const AudioClip clip = read_wav(input);
  std::vector<WrittenSegment> out;
  std::size_t index = 0;
  for (const auto& s : segment_spans(clip, params)) {
    const auto name = input.stem().string() + "_" + std::to_string(index++) + "_" +
                      std::to_string(std::llround(s.start_ms)) + ".wav";
    const auto path = out_dir / name;
    write_wav(slice(clip, s), path);
    out.push_back({path, s});
  }
  return out;
}

}  // namespace convtag::audioseg
