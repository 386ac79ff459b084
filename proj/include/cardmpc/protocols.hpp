#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cardmpc/deck.hpp"
#include "cardmpc/encodings.hpp"
#include "cardmpc/random_source.hpp"
#include "cardmpc/trace.hpp"

namespace cardmpc {

// Free cards that protocols may draw from and return to.
class CardSupply {
 public:
  CardSupply() = default;
  CardSupply(int clubs, int hearts);

  // Enough of both symbols for any configuration this library runs.
  static CardSupply plentiful();

  int clubs() const noexcept { return free_.clubs; }
  int hearts() const noexcept { return free_.hearts; }

  // Throws InsufficientSupply when either symbol runs short.
  void take(const CardCount& c);
  void give(const CardCount& c);

 private:
  CardCount free_;
};

// Cards currently in play and the high-water mark of their total.
class CardBudget {
 public:
  void add(const CardCount& c);
  void remove(const CardCount& c);

  int clubs_in_play() const noexcept { return in_play_.clubs; }
  int hearts_in_play() const noexcept { return in_play_.hearts; }
  int in_play() const noexcept { return in_play_.total(); }
  int peak_total() const noexcept { return peak_total_; }

 private:
  CardCount in_play_;
  int peak_total_ = 0;
};

// Mutable state of one protocol run: the supply, the cards in play, the
// visible trace and the randomness. Single-threaded.
class Table {
 public:
  Table(CardSupply supply, RandomSource& rng) : supply_(supply), rng_(&rng) {}

  // A player's own cards entering play (not from the supply).
  void place(const Sequence& s);
  void place(const Commitment& c);
  // Supply cards laid out as `s`.
  Sequence deal(Sequence s);
  // A fresh E_n(a) built from supply cards.
  Sequence deal_En(int n, int a);
  // Cards leaving play back into the supply.
  void discard(const Sequence& s);
  void discard(const CardMatrix& m);
  // Moves supply cards into play permanently; they stay counted but are
  // never handed out again.
  void retire(const CardCount& c);

  CardSupply& supply() noexcept { return supply_; }
  const CardSupply& supply() const noexcept { return supply_; }
  const CardBudget& budget() const noexcept { return budget_; }
  VisibleTrace& trace() noexcept { return trace_; }
  const VisibleTrace& trace() const noexcept { return trace_; }
  RandomSource& rng() noexcept { return *rng_; }

  const CardCount& drawn() const noexcept { return drawn_; }
  const CardCount& returned() const noexcept { return returned_; }
  const CardCount& placed() const noexcept { return placed_; }
  const CardCount& retired() const noexcept { return retired_; }

 private:
  CardSupply supply_;
  CardBudget budget_;
  VisibleTrace trace_;
  RandomSource* rng_;
  CardCount drawn_;
  CardCount returned_;
  CardCount placed_;
  CardCount retired_;
};

// --- E_n protocols. Sequences passed in must already be in play. ---

// The five-card trick: AND of two E_2 bits. Frees all five cards.
bool five_card_trick(Table& table, const Sequence& a, const Sequence& b);

// Both outputs encode the value of `a`; `a`'s cards return to the supply.
std::pair<Sequence, Sequence> copy_protocol(Table& table, const Sequence& a);

// Copy into `target`, an E_n(0) already in play (the caller's allocation
// for the second output). Returns {first copy, second copy}.
std::pair<Sequence, Sequence> copy_into(Table& table, const Sequence& a, const Sequence& target);

// Output encodes a + b; `a`'s cards return to the supply.
Sequence add_protocol(Table& table, const Sequence& a, const Sequence& b);

// Output encodes a * b; everything but the selected column is freed.
Sequence mult_protocol(Table& table, const Sequence& a, const Sequence& b);

// --- Commitment-level protocols ---

// Per-part copy with every output part allocated up front, so one set of
// extras serves all parts. Works for the binary and CRT schemes.
std::pair<Commitment, Commitment> copy_parts(Table& table, const Commitment& c);

std::pair<Commitment, Commitment> crt_copy(Table& table, const Commitment& c);
Commitment crt_add(Table& table, const Commitment& a, const Commitment& b);

// Parts run in ascending-modulus order. When `optimized` is false, the
// input cards each part consumes are retired instead of re-entering the
// supply, so later parts only reuse earlier parts' extras.
Commitment crt_mult(Table& table, const Commitment& a, const Commitment& b, bool optimized);

// --- Run harness ---

enum class ProtocolKind { FiveCardTrick, Copy, Add, Mult };

const char* protocol_name(ProtocolKind k) noexcept;
ProtocolKind parse_protocol(std::string_view name);
// Number of secret inputs the protocol takes.
int protocol_arity(ProtocolKind k) noexcept;

struct ProtocolConfig {
  ProtocolKind protocol = ProtocolKind::Add;
  Scheme scheme = Scheme::direct(2);
  bool optimized = true;  // only affects crt mult
};

// Throws UnsupportedExecution for the binary scheme's add and mult (their
// Boolean-function subprotocol is not available) and for the five-card
// trick outside direct Z/2Z.
void check_executable(const ProtocolConfig& cfg);

struct ProtocolRun {
  ProtocolConfig config;
  std::vector<int> inputs;        // secret; harness use only
  VisibleTrace trace;
  CardBudget budget;
  std::vector<Commitment> outputs;
  std::vector<int> results;       // decoded outputs, or {a AND b} for the trick
  CardCount drawn;
  CardCount returned;
  CardCount placed;
  CardCount retired;
  CardCount remaining_in_play;
};

// Encodes `inputs`, places them, runs the protocol and decodes the outputs.
// Enumerating sources must be consumed exactly.
ProtocolRun run_protocol(const ProtocolConfig& cfg, const std::vector<int>& inputs, RandomSource& rng,
                         CardSupply supply = CardSupply::plentiful());

// The value the protocol must produce on every branch.
std::vector<int> expected_results(const ProtocolConfig& cfg, const std::vector<int>& inputs);

}  // namespace cardmpc
