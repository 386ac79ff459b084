#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "cardmpc/deck.hpp"

namespace cardmpc {

struct ShuffledEvent {
  ShuffleSpec spec;
};

struct RevealedEvent {
  int row = 0;
  std::vector<int> positions;
  std::vector<CardSymbol> symbols;
};

struct PublicMoveEvent {
  std::string tag;
  std::vector<int> args;
};

using TraceEvent = std::variant<ShuffledEvent, RevealedEvent, PublicMoveEvent>;

// Everything an observer of a run sees, in order.
class VisibleTrace {
 public:
  void shuffled(const ShuffleSpec& spec);
  void revealed(int row, std::vector<int> positions, std::vector<CardSymbol> symbols);
  void public_move(std::string tag, std::vector<int> args = {});

  const std::vector<TraceEvent>& events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }

  // One JSON object per line: {"step", "kind", "payload"}.
  std::string to_jsonl() const;

  // Compact symbol-only form used for multiset comparison.
  std::string canonical() const;

  // FNV-1a over canonical(), hex encoded.
  std::string digest() const;

 private:
  std::vector<TraceEvent> events_;
};

std::string fnv1a_hex(const std::string& data);

}  // namespace cardmpc
