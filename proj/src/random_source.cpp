#include "cardmpc/random_source.hpp"

#include <string>

#include "cardmpc/error.hpp"

namespace cardmpc {

RandomSource RandomSource::seeded(std::uint64_t seed) {
  RandomSource rs(Mode::Seeded);
  rs.engine_.seed(seed);
  return rs;
}

RandomSource RandomSource::enumerating(std::vector<int> script) {
  RandomSource rs(Mode::Enumerating);
  rs.script_ = std::move(script);
  return rs;
}

int RandomSource::draw(int support) {
  if (support < 1) fail(ErrorCode::Domain, "shuffle support must be positive");
  supports_.push_back(support);
  if (mode_ == Mode::Enumerating) {
    if (cursor_ >= script_.size()) {
      fail(ErrorCode::ScriptMismatch, "offset script exhausted after " + std::to_string(script_.size()) + " shuffles");
    }
    const int r = script_[cursor_++];
    if (r < 0 || r >= support) {
      fail(ErrorCode::ScriptMismatch,
           "scripted offset " + std::to_string(r) + " outside support of size " + std::to_string(support));
    }
    return r;
  }
  // Rejection sampling keeps the draw exact and independent of the
  // standard library's distribution implementation.
  const auto bound = static_cast<std::uint64_t>(support);
  const std::uint64_t limit = std::mt19937_64::max() - (std::mt19937_64::max() % bound + 1) % bound;
  std::uint64_t x = engine_();
  while (x > limit) x = engine_();
  return static_cast<int>(x % bound);
}

void RandomSource::finish() const {
  if (mode_ == Mode::Enumerating && cursor_ != script_.size()) {
    fail(ErrorCode::ScriptMismatch, "script has " + std::to_string(script_.size()) + " offsets but only " +
                                        std::to_string(cursor_) + " shuffles ran");
  }
}

}  // namespace cardmpc
