#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace hetmos {

using Rng = std::mt19937_64;

// Independent, reproducible stream keyed by a seed and a path of integers
// (e.g. {purpose, sample index, pass index}).
inline Rng substream(std::uint64_t seed, std::initializer_list<std::uint64_t> path = {}) {
  std::vector<std::uint32_t> words;
  words.reserve(2 + 2 * path.size());
  auto push = [&words](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (auto p : path) push(p);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

// Stream purposes, kept distinct so that no two consumers share draws.
namespace stream {
inline constexpr std::uint64_t kInit = 1;
inline constexpr std::uint64_t kShuffle = 2;
inline constexpr std::uint64_t kTrainDropout = 3;
inline constexpr std::uint64_t kMcPass = 4;
inline constexpr std::uint64_t kWorld = 5;
inline constexpr std::uint64_t kSamples = 6;
inline constexpr std::uint64_t kFeatureNoise = 7;
inline constexpr std::uint64_t kSplit = 8;
inline constexpr std::uint64_t kMcSample = 9;
}  // namespace stream

}  // namespace hetmos
