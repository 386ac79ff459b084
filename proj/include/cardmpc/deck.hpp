#pragma once

// Physical layer: cards, sequences, matrices, shuffles and reveals.
//
// Positions are 0-indexed everywhere. Cards of one symbol are
// indistinguishable, so a Slot carries only its symbol and orientation.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cardmpc {

class RandomSource;
class VisibleTrace;

enum class CardSymbol : std::uint8_t { Club, Heart };
enum class Face : std::uint8_t { Down, Up };

char symbol_char(CardSymbol s) noexcept;

struct Slot {
  CardSymbol symbol = CardSymbol::Heart;
  Face face = Face::Down;

  friend bool operator==(const Slot&, const Slot&) = default;
};

struct CardCount {
  int clubs = 0;
  int hearts = 0;

  int total() const noexcept { return clubs + hearts; }
  CardCount& operator+=(const CardCount& o) noexcept {
    clubs += o.clubs;
    hearts += o.hearts;
    return *this;
  }
  friend CardCount operator+(CardCount a, const CardCount& b) noexcept { return a += b; }
  friend bool operator==(const CardCount&, const CardCount&) = default;
};

class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(std::vector<Slot> slots) : slots_(std::move(slots)) {}

  // Face-down sequence from a "CHH..." string. Throws Domain on other letters.
  static Sequence from_symbols(std::string_view symbols);

  std::size_t size() const noexcept { return slots_.size(); }
  bool empty() const noexcept { return slots_.empty(); }
  const Slot& operator[](std::size_t i) const { return slots_[i]; }
  Slot& operator[](std::size_t i) { return slots_[i]; }
  std::span<const Slot> slots() const noexcept { return slots_; }

  // Harness-only face-up view, e.g. "HHCH".
  std::string symbols() const;
  CardCount count() const noexcept;

  friend bool operator==(const Sequence&, const Sequence&) = default;

 private:
  std::vector<Slot> slots_;
};

// Row 0 is topmost, Column 0 leftmost; stored row-major.
class CardMatrix {
 public:
  CardMatrix(int rows, int cols);
  static CardMatrix from_rows(std::span<const Sequence> rows);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  Slot& at(int r, int c);
  const Slot& at(int r, int c) const;

  Sequence row(int r) const;
  Sequence column(int c) const;
  void set_row(int r, const Sequence& s);
  void set_column(int c, const Sequence& s);

  CardCount count() const noexcept;

  friend bool operator==(const CardMatrix&, const CardMatrix&) = default;

 private:
  int rows_;
  int cols_;
  std::vector<Slot> grid_;
};

struct ShuffleSpec {
  enum class Kind : std::uint8_t { RandomCut, PileShift };

  Kind kind = Kind::PileShift;
  int size = 0;  // L for a random cut, column count for a pile shift

  static ShuffleSpec random_cut(int length);
  static ShuffleSpec pile_shift(int columns);

  // Number of equiprobable cyclic offsets.
  int support() const noexcept { return size; }

  friend bool operator==(const ShuffleSpec&, const ShuffleSpec&) = default;
};

const char* shuffle_kind_name(ShuffleSpec::Kind k) noexcept;

// E_n(a): n face-down hearts except a club at position a.
Sequence encode_En(int n, int a);
int decode_En(const Sequence& seq);

// Index of the single club among `symbols`; State error otherwise.
int locate_club(std::span<const CardSymbol> symbols);

// Keeps position 0, sends position i to n - i. Maps E_n(a) to E_n(-a mod n).
Sequence reverse_tail(const Sequence& seq);

// Column l moves to column (l + r) mod cols.
CardMatrix pile_shift(const CardMatrix& m, int r);
Sequence rotate_right(const Sequence& seq, int r);

// Uniform cyclic shift drawn from `rng`; the trace records only the shuffle kind.
void apply_shuffle(CardMatrix& m, const ShuffleSpec& spec, RandomSource& rng,
                   VisibleTrace& trace);
void apply_shuffle(Sequence& seq, const ShuffleSpec& spec, RandomSource& rng,
                   VisibleTrace& trace);

std::vector<CardSymbol> turn_over_row(CardMatrix& m, int row, VisibleTrace& trace);
std::vector<CardSymbol> turn_over_all(Sequence& seq, VisibleTrace& trace);

// Turns every face-up card in `m` face-down again.
void turn_face_down(CardMatrix& m, VisibleTrace& trace);

// Public move: column l goes to column l - j.
CardMatrix shift_columns_left(const CardMatrix& m, int j, VisibleTrace& trace);

}  // namespace cardmpc
