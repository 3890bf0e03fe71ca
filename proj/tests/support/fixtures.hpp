#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "convtag/audioseg.hpp"

namespace fixture {

// Concatenated pieces of sine tone (amplitude > 0) or silence (amplitude 0).
struct Piece {
  double seconds;
  double amplitude;  // fraction of full scale
};

inline convtag::audioseg::AudioClip tone_clip(const std::vector<Piece>& pieces, std::uint32_t rate = 8000,
                                              double freq = 440.0) {
  convtag::audioseg::AudioClip clip;
  clip.sample_rate = rate;
  for (const auto& p : pieces) {
    const auto n = static_cast<std::size_t>(std::llround(p.seconds * rate));
    for (std::size_t i = 0; i < n; ++i) {
      const double v = p.amplitude * 32767.0 * std::sin(2 * std::numbers::pi * freq * static_cast<double>(i) / rate);
      clip.samples.push_back(static_cast<std::int16_t>(std::lround(v)));
    }
  }
  return clip;
}

// The 2 s tone / 1 s pause / 4 s tone recording.
inline convtag::audioseg::AudioClip two_one_four() { return tone_clip({{2, 0.5}, {1, 0}, {4, 0.5}}); }

}  // namespace fixture
