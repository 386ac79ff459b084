#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace cardmpc {

// Supplies the hidden offset of every shuffle in a run.
//
// Seeded mode samples offsets uniformly. Enumerating mode replays a fixed
// script, one offset per shuffle, which is how exhaustive verification walks
// every branch. Both modes log the support size of each draw so a probe run
// can discover the branching shape of a protocol.
class RandomSource {
 public:
  enum class Mode { Seeded, Enumerating };

  static RandomSource seeded(std::uint64_t seed);
  static RandomSource enumerating(std::vector<int> script);

  Mode mode() const noexcept { return mode_; }

  // Offset in [0, support). Enumerating mode throws ScriptMismatch when the
  // script is exhausted or the scripted offset is out of range.
  int draw(int support);

  // Enumerating mode: throws ScriptMismatch unless every offset was consumed.
  void finish() const;

  const std::vector<int>& supports() const noexcept { return supports_; }
  const std::vector<int>& script() const noexcept { return script_; }

 private:
  explicit RandomSource(Mode mode) : mode_(mode) {}

  Mode mode_;
  std::mt19937_64 engine_;
  std::vector<int> script_;
  std::size_t cursor_ = 0;
  std::vector<int> supports_;
};

}  // namespace cardmpc
