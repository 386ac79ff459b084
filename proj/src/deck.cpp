#include "cardmpc/deck.hpp"

#include <array>
#include <string>

#include "cardmpc/error.hpp"
#include "cardmpc/random_source.hpp"
#include "cardmpc/trace.hpp"

namespace cardmpc {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::MalformedEncoding: return "malformed encoding";
    case ErrorCode::SchemeInapplicable: return "scheme inapplicable";
    case ErrorCode::ScriptMismatch: return "script mismatch";
    case ErrorCode::State: return "state error";
    case ErrorCode::InsufficientSupply: return "insufficient supply";
    case ErrorCode::UnsupportedExecution: return "unsupported execution";
    case ErrorCode::BranchCapExceeded: return "branch cap exceeded";
    case ErrorCode::SchemeMismatch: return "scheme mismatch";
  }
  return "unknown error";
}

char symbol_char(CardSymbol s) noexcept { return s == CardSymbol::Club ? 'C' : 'H'; }

Sequence Sequence::from_symbols(std::string_view symbols) {
  std::vector<Slot> slots;
  slots.reserve(symbols.size());
  for (char ch : symbols) {
    if (ch == 'C' || ch == 'c') {
      slots.push_back({CardSymbol::Club, Face::Down});
    } else if (ch == 'H' || ch == 'h') {
      slots.push_back({CardSymbol::Heart, Face::Down});
    } else {
      fail(ErrorCode::Domain, std::string("unexpected card symbol '") + ch + "'");
    }
  }
  return Sequence(std::move(slots));
}

std::string Sequence::symbols() const {
  std::string out;
  out.reserve(slots_.size());
  for (const auto& s : slots_) out.push_back(symbol_char(s.symbol));
  return out;
}

CardCount Sequence::count() const noexcept {
  CardCount c;
  for (const auto& s : slots_) (s.symbol == CardSymbol::Club ? c.clubs : c.hearts)++;
  return c;
}

CardMatrix::CardMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) {
    fail(ErrorCode::Domain, "matrix needs at least one row and one column");
  }
  grid_.resize(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
}

CardMatrix CardMatrix::from_rows(std::span<const Sequence> rows) {
  if (rows.empty()) fail(ErrorCode::Domain, "matrix needs at least one row");
  CardMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int r = 0; r < m.rows(); ++r) m.set_row(r, rows[static_cast<std::size_t>(r)]);
  return m;
}

Slot& CardMatrix::at(int r, int c) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) fail(ErrorCode::Domain, "matrix index out of range");
  return grid_[static_cast<std::size_t>(r) * cols_ + c];
}

const Slot& CardMatrix::at(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) fail(ErrorCode::Domain, "matrix index out of range");
  return grid_[static_cast<std::size_t>(r) * cols_ + c];
}

Sequence CardMatrix::row(int r) const {
  std::vector<Slot> out;
  out.reserve(cols_);
  for (int c = 0; c < cols_; ++c) out.push_back(at(r, c));
  return Sequence(std::move(out));
}

Sequence CardMatrix::column(int c) const {
  std::vector<Slot> out;
  out.reserve(rows_);
  for (int r = 0; r < rows_; ++r) out.push_back(at(r, c));
  return Sequence(std::move(out));
}

void CardMatrix::set_row(int r, const Sequence& s) {
  if (static_cast<int>(s.size()) != cols_) fail(ErrorCode::Domain, "row length does not match matrix width");
  for (int c = 0; c < cols_; ++c) at(r, c) = s[static_cast<std::size_t>(c)];
}

void CardMatrix::set_column(int c, const Sequence& s) {
  if (static_cast<int>(s.size()) != rows_) fail(ErrorCode::Domain, "column length does not match matrix height");
  for (int r = 0; r < rows_; ++r) at(r, c) = s[static_cast<std::size_t>(r)];
}

CardCount CardMatrix::count() const noexcept {
  CardCount c;
  for (const auto& s : grid_) (s.symbol == CardSymbol::Club ? c.clubs : c.hearts)++;
  return c;
}

ShuffleSpec ShuffleSpec::random_cut(int length) {
  if (length < 2) fail(ErrorCode::Domain, "random cut needs at least two cards");
  return {Kind::RandomCut, length};
}

ShuffleSpec ShuffleSpec::pile_shift(int columns) {
  if (columns < 2) fail(ErrorCode::Domain, "pile-shifting shuffle needs at least two columns");
  return {Kind::PileShift, columns};
}

const char* shuffle_kind_name(ShuffleSpec::Kind k) noexcept {
  return k == ShuffleSpec::Kind::RandomCut ? "random_cut" : "pile_shift";
}

Sequence encode_En(int n, int a) {
  if (n < 2) fail(ErrorCode::Domain, "E_n requires n >= 2, got " + std::to_string(n));
  if (a < 0 || a >= n) {
    fail(ErrorCode::Domain, "value " + std::to_string(a) + " outside [0, " + std::to_string(n) + ")");
  }
  std::vector<Slot> slots(static_cast<std::size_t>(n), Slot{CardSymbol::Heart, Face::Down});
  slots[static_cast<std::size_t>(a)].symbol = CardSymbol::Club;
  return Sequence(std::move(slots));
}

int decode_En(const Sequence& seq) {
  int pos = -1;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i].symbol != CardSymbol::Club) continue;
    if (pos >= 0) fail(ErrorCode::MalformedEncoding, "sequence " + seq.symbols() + " holds more than one club");
    pos = static_cast<int>(i);
  }
  if (pos < 0) fail(ErrorCode::MalformedEncoding, "sequence " + seq.symbols() + " holds no club");
  return pos;
}

int locate_club(std::span<const CardSymbol> symbols) {
  int pos = -1;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] != CardSymbol::Club) continue;
    if (pos >= 0) fail(ErrorCode::State, "revealed row holds more than one club");
    pos = static_cast<int>(i);
  }
  if (pos < 0) fail(ErrorCode::State, "revealed row holds no club");
  return pos;
}

Sequence reverse_tail(const Sequence& seq) {
  const auto n = seq.size();
  if (n < 2) fail(ErrorCode::Domain, "reverse_tail needs at least two cards");
  std::vector<Slot> out(n);
  out[0] = seq[0];
  for (std::size_t i = 1; i < n; ++i) out[n - i] = seq[i];
  return Sequence(std::move(out));
}

CardMatrix pile_shift(const CardMatrix& m, int r) {
  if (r < 0 || r >= m.cols()) fail(ErrorCode::Domain, "shift offset out of range");
  CardMatrix out(m.rows(), m.cols());
  for (int c = 0; c < m.cols(); ++c) {
    const int dst = (c + r) % m.cols();
    for (int row = 0; row < m.rows(); ++row) out.at(row, dst) = m.at(row, c);
  }
  return out;
}

Sequence rotate_right(const Sequence& seq, int r) {
  const int n = static_cast<int>(seq.size());
  if (r < 0 || r >= n) fail(ErrorCode::Domain, "rotation offset out of range");
  std::vector<Slot> out(seq.size());
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>((i + r) % n)] = seq[static_cast<std::size_t>(i)];
  return Sequence(std::move(out));
}

void apply_shuffle(CardMatrix& m, const ShuffleSpec& spec, RandomSource& rng, VisibleTrace& trace) {
  // A random cut is a pile shift of a one-row matrix.
  if (spec.kind == ShuffleSpec::Kind::RandomCut && m.rows() != 1) {
    fail(ErrorCode::Domain, "random cut applies to a single row");
  }
  if (spec.size != m.cols()) fail(ErrorCode::Domain, "shuffle size does not match layout width");
  const int r = rng.draw(spec.support());
  m = pile_shift(m, r);
  trace.shuffled(spec);
}

void apply_shuffle(Sequence& seq, const ShuffleSpec& spec, RandomSource& rng, VisibleTrace& trace) {
  std::array<Sequence, 1> rows{seq};
  auto m = CardMatrix::from_rows(rows);
  apply_shuffle(m, spec, rng, trace);
  seq = m.row(0);
}

std::vector<CardSymbol> turn_over_row(CardMatrix& m, int row, VisibleTrace& trace) {
  if (row < 0 || row >= m.rows()) fail(ErrorCode::Domain, "row index out of range");
  std::vector<int> positions;
  std::vector<CardSymbol> symbols;
  for (int c = 0; c < m.cols(); ++c) {
    if (m.at(row, c).face == Face::Up) fail(ErrorCode::State, "row " + std::to_string(row) + " is already face-up");
  }
  for (int c = 0; c < m.cols(); ++c) {
    auto& slot = m.at(row, c);
    slot.face = Face::Up;
    positions.push_back(c);
    symbols.push_back(slot.symbol);
  }
  trace.revealed(row, std::move(positions), symbols);
  return symbols;
}

std::vector<CardSymbol> turn_over_all(Sequence& seq, VisibleTrace& trace) {
  std::array<Sequence, 1> rows{seq};
  auto m = CardMatrix::from_rows(rows);
  auto symbols = turn_over_row(m, 0, trace);
  seq = m.row(0);
  return symbols;
}

void turn_face_down(CardMatrix& m, VisibleTrace& trace) {
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) m.at(r, c).face = Face::Down;
  }
  trace.public_move("turn_face_down");
}

CardMatrix shift_columns_left(const CardMatrix& m, int j, VisibleTrace& trace) {
  if (j < 0 || j >= m.cols()) fail(ErrorCode::Domain, "shift amount out of range");
  auto out = pile_shift(m, (m.cols() - j) % m.cols());
  trace.public_move("shift_left", {j});
  return out;
}

}  // namespace cardmpc
