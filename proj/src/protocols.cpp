#include "cardmpc/protocols.hpp"

#include <array>
#include <limits>
#include <string>

#include "cardmpc/error.hpp"

namespace cardmpc {

CardSupply::CardSupply(int clubs, int hearts) : free_{clubs, hearts} {
  if (clubs < 0 || hearts < 0) fail(ErrorCode::Domain, "supply counts must be non-negative");
}

CardSupply CardSupply::plentiful() {
  constexpr int lots = std::numeric_limits<int>::max() / 4;
  return CardSupply(lots, lots);
}

void CardSupply::take(const CardCount& c) {
  if (c.clubs > free_.clubs || c.hearts > free_.hearts) {
    fail(ErrorCode::InsufficientSupply, "need " + std::to_string(c.clubs) + " clubs and " + std::to_string(c.hearts) +
                                            " hearts, supply holds " + std::to_string(free_.clubs) + " and " +
                                            std::to_string(free_.hearts));
  }
  free_.clubs -= c.clubs;
  free_.hearts -= c.hearts;
}

void CardSupply::give(const CardCount& c) { free_ += c; }

void CardBudget::add(const CardCount& c) {
  in_play_ += c;
  peak_total_ = std::max(peak_total_, in_play_.total());
}

void CardBudget::remove(const CardCount& c) {
  if (c.clubs > in_play_.clubs || c.hearts > in_play_.hearts) {
    fail(ErrorCode::State, "removing cards that are not in play");
  }
  in_play_.clubs -= c.clubs;
  in_play_.hearts -= c.hearts;
}

void Table::place(const Sequence& s) {
  budget_.add(s.count());
  placed_ += s.count();
}

void Table::place(const Commitment& c) {
  for (const auto& p : c.parts) place(p);
}

Sequence Table::deal(Sequence s) {
  supply_.take(s.count());
  budget_.add(s.count());
  drawn_ += s.count();
  return s;
}

Sequence Table::deal_En(int n, int a) { return deal(encode_En(n, a)); }

void Table::discard(const Sequence& s) {
  budget_.remove(s.count());
  supply_.give(s.count());
  returned_ += s.count();
}

void Table::discard(const CardMatrix& m) {
  budget_.remove(m.count());
  supply_.give(m.count());
  returned_ += m.count();
}

void Table::retire(const CardCount& c) {
  supply_.take(c);
  budget_.add(c);
  retired_ += c;
}

namespace {

void require_width(const Sequence& s, std::size_t n, const char* what) {
  if (s.size() != n) {
    fail(ErrorCode::Domain, std::string(what) + " has " + std::to_string(s.size()) + " cards, expected " +
                                std::to_string(n));
  }
}

// Steps 3-5 shared by copy and add: shuffle, open Row 0, undo the shift.
// Leaves Row 0 face-down again.
CardMatrix shuffle_open_and_realign(Table& table, CardMatrix m) {
  apply_shuffle(m, ShuffleSpec::pile_shift(m.cols()), table.rng(), table.trace());
  const auto symbols = turn_over_row(m, 0, table.trace());
  const int j = locate_club(symbols);
  m = shift_columns_left(m, j, table.trace());
  turn_face_down(m, table.trace());
  return m;
}

void require_crt_pair(const Commitment& a, const Commitment& b) {
  if (a.scheme.kind() != Scheme::Kind::Crt) fail(ErrorCode::SchemeMismatch, "expected a crt commitment");
  if (!(a.scheme == b.scheme)) fail(ErrorCode::SchemeMismatch, "commitments use different schemes");
}

}  // namespace

bool five_card_trick(Table& table, const Sequence& a, const Sequence& b) {
  require_width(a, 2, "first commitment");
  require_width(b, 2, "second commitment");
  const Sequence middle = table.deal(Sequence::from_symbols("C"));

  Sequence layout({a[0], a[1], middle[0], b[1], b[0]});
  table.trace().public_move("five_card_layout");
  apply_shuffle(layout, ShuffleSpec::random_cut(5), table.rng(), table.trace());
  const auto symbols = turn_over_all(layout, table.trace());

  bool adjacent_hearts = false;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] == CardSymbol::Heart && symbols[(i + 1) % symbols.size()] == CardSymbol::Heart) {
      adjacent_hearts = true;
    }
  }
  table.discard(layout);
  return adjacent_hearts;
}

std::pair<Sequence, Sequence> copy_into(Table& table, const Sequence& a, const Sequence& target) {
  const int n = static_cast<int>(a.size());
  require_width(target, a.size(), "copy target");
  if (decode_En(target) != 0) fail(ErrorCode::State, "copy target must be E_n(0)");

  const Sequence negated = reverse_tail(a);
  table.trace().public_move("reverse_tail", {n});
  const Sequence extra = table.deal_En(n, 0);

  const std::array<Sequence, 3> rows{negated, target, extra};
  auto m = CardMatrix::from_rows(rows);
  table.trace().public_move("layout", {3, n});
  m = shuffle_open_and_realign(table, std::move(m));

  table.discard(m.row(0));
  return {m.row(1), m.row(2)};
}

std::pair<Sequence, Sequence> copy_protocol(Table& table, const Sequence& a) {
  if (a.size() < 2) fail(ErrorCode::Domain, "copy needs an E_n with n >= 2");
  const Sequence target = table.deal_En(static_cast<int>(a.size()), 0);
  return copy_into(table, a, target);
}

Sequence add_protocol(Table& table, const Sequence& a, const Sequence& b) {
  if (a.size() < 2) fail(ErrorCode::Domain, "add needs an E_n with n >= 2");
  require_width(b, a.size(), "second summand");
  const int n = static_cast<int>(a.size());

  const Sequence negated = reverse_tail(a);
  table.trace().public_move("reverse_tail", {n});
  const std::array<Sequence, 2> rows{negated, b};
  auto m = CardMatrix::from_rows(rows);
  table.trace().public_move("layout", {2, n});
  m = shuffle_open_and_realign(table, std::move(m));

  table.discard(m.row(0));
  return m.row(1);
}

Sequence mult_protocol(Table& table, const Sequence& a, const Sequence& b) {
  if (a.size() < 2) fail(ErrorCode::Domain, "mult needs an E_n with n >= 2");
  require_width(b, a.size(), "second factor");
  const int n = static_cast<int>(a.size());

  // multiples[l] encodes l * a.
  std::vector<Sequence> multiples(static_cast<std::size_t>(n));
  multiples[1] = a;
  for (int i = 1; i <= n - 3; ++i) {
    auto [first, copy_of_first] = copy_protocol(table, multiples[1]);
    multiples[1] = std::move(first);
    auto [ith, copy_of_ith] = copy_protocol(table, multiples[static_cast<std::size_t>(i)]);
    multiples[static_cast<std::size_t>(i)] = std::move(ith);
    multiples[static_cast<std::size_t>(i) + 1] = add_protocol(table, copy_of_first, copy_of_ith);
  }
  if (n >= 3) {
    auto [first, spare] = copy_protocol(table, multiples[1]);
    multiples[1] = std::move(first);
    multiples[static_cast<std::size_t>(n) - 1] = reverse_tail(spare);
    table.trace().public_move("reverse_tail", {n});
  }
  // For n >= 3 these come out of the cards the last copy returned.
  multiples[0] = table.deal_En(n, 0);

  CardMatrix m(n + 1, n);
  m.set_row(0, b);
  for (int l = 0; l < n; ++l) {
    const auto& col = multiples[static_cast<std::size_t>(l)];
    for (int r = 0; r < n; ++r) m.at(r + 1, l) = col[static_cast<std::size_t>(r)];
  }
  table.trace().public_move("layout", {n + 1, n});

  apply_shuffle(m, ShuffleSpec::pile_shift(n), table.rng(), table.trace());
  const auto symbols = turn_over_row(m, 0, table.trace());
  const int j = locate_club(symbols);
  table.trace().public_move("select_column", {j});

  std::vector<Slot> picked;
  for (int r = 1; r <= n; ++r) picked.push_back(m.at(r, j));
  Sequence out(std::move(picked));

  table.discard(m.row(0));
  for (int l = 0; l < n; ++l) {
    if (l == j) continue;
    std::vector<Slot> col;
    for (int r = 1; r <= n; ++r) col.push_back(m.at(r, l));
    table.discard(Sequence(std::move(col)));
  }
  return out;
}

std::pair<Commitment, Commitment> copy_parts(Table& table, const Commitment& c) {
  const auto& moduli = c.scheme.part_moduli();
  if (c.parts.size() != moduli.size()) fail(ErrorCode::MalformedEncoding, "commitment part count mismatch");

  std::vector<Sequence> targets;
  for (int q : moduli) targets.push_back(table.deal_En(q, 0));

  Commitment first{c.scheme, {}};
  Commitment second{c.scheme, {}};
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    auto [x, y] = copy_into(table, c.parts[i], targets[i]);
    first.parts.push_back(std::move(x));
    second.parts.push_back(std::move(y));
  }
  return {std::move(first), std::move(second)};
}

std::pair<Commitment, Commitment> crt_copy(Table& table, const Commitment& c) {
  if (c.scheme.kind() != Scheme::Kind::Crt) fail(ErrorCode::SchemeMismatch, "expected a crt commitment");
  return copy_parts(table, c);
}

Commitment crt_add(Table& table, const Commitment& a, const Commitment& b) {
  require_crt_pair(a, b);
  Commitment out{a.scheme, {}};
  for (std::size_t i = 0; i < a.parts.size(); ++i) out.parts.push_back(add_protocol(table, a.parts[i], b.parts[i]));
  return out;
}

Commitment crt_mult(Table& table, const Commitment& a, const Commitment& b, bool optimized) {
  require_crt_pair(a, b);
  Commitment out{a.scheme, {}};
  for (std::size_t i = 0; i < a.parts.size(); ++i) {
    out.parts.push_back(mult_protocol(table, a.parts[i], b.parts[i]));
    if (!optimized) {
      // The consumed input part (one E_q worth of cards) stays out of reuse.
      const int q = a.scheme.part_moduli()[i];
      table.retire({1, q - 1});
    }
  }
  return out;
}

const char* protocol_name(ProtocolKind k) noexcept {
  switch (k) {
    case ProtocolKind::FiveCardTrick: return "five-card-trick";
    case ProtocolKind::Copy: return "copy";
    case ProtocolKind::Add: return "add";
    case ProtocolKind::Mult: return "mult";
  }
  return "?";
}

ProtocolKind parse_protocol(std::string_view name) {
  if (name == "five-card-trick") return ProtocolKind::FiveCardTrick;
  if (name == "copy") return ProtocolKind::Copy;
  if (name == "add") return ProtocolKind::Add;
  if (name == "mult") return ProtocolKind::Mult;
  fail(ErrorCode::Domain, "unknown protocol '" + std::string(name) + "' (expected five-card-trick, copy, add or mult)");
}

int protocol_arity(ProtocolKind k) noexcept { return k == ProtocolKind::Copy ? 1 : 2; }

void check_executable(const ProtocolConfig& cfg) {
  const auto kind = cfg.scheme.kind();
  if (cfg.protocol == ProtocolKind::FiveCardTrick && !(kind == Scheme::Kind::Direct && cfg.scheme.n() == 2)) {
    fail(ErrorCode::UnsupportedExecution, "the five-card trick runs on bits only (direct scheme, n = 2)");
  }
  if (kind == Scheme::Kind::Binary && (cfg.protocol == ProtocolKind::Add || cfg.protocol == ProtocolKind::Mult)) {
    fail(ErrorCode::UnsupportedExecution,
         std::string("binary-scheme ") + protocol_name(cfg.protocol) +
             " is count-only: it relies on a general Boolean-function protocol whose steps are not specified, "
             "so only its card count is available");
  }
}

std::vector<int> expected_results(const ProtocolConfig& cfg, const std::vector<int>& inputs) {
  const int n = cfg.scheme.n();
  switch (cfg.protocol) {
    case ProtocolKind::FiveCardTrick: return {inputs.at(0) & inputs.at(1)};
    case ProtocolKind::Copy: return {inputs.at(0), inputs.at(0)};
    case ProtocolKind::Add: return {(inputs.at(0) + inputs.at(1)) % n};
    case ProtocolKind::Mult:
      return {static_cast<int>(static_cast<std::int64_t>(inputs.at(0)) * inputs.at(1) % n)};
  }
  return {};
}

ProtocolRun run_protocol(const ProtocolConfig& cfg, const std::vector<int>& inputs, RandomSource& rng,
                         CardSupply supply) {
  check_executable(cfg);
  const auto arity = static_cast<std::size_t>(protocol_arity(cfg.protocol));
  if (inputs.size() != arity) {
    fail(ErrorCode::Domain, std::string(protocol_name(cfg.protocol)) + " takes " + std::to_string(arity) +
                                " input(s), got " + std::to_string(inputs.size()));
  }

  Table table(supply, rng);
  std::vector<Commitment> in;
  for (int v : inputs) {
    in.push_back(encode(cfg.scheme, v));
    table.place(in.back());
  }

  ProtocolRun run{cfg, inputs, {}, {}, {}, {}, {}, {}, {}, {}, {}};
  const bool direct = cfg.scheme.kind() == Scheme::Kind::Direct;
  switch (cfg.protocol) {
    case ProtocolKind::FiveCardTrick:
      run.results = {five_card_trick(table, in[0].parts[0], in[1].parts[0]) ? 1 : 0};
      break;
    case ProtocolKind::Copy: {
      if (direct) {
        auto [x, y] = copy_protocol(table, in[0].parts[0]);
        run.outputs = {Commitment{cfg.scheme, {std::move(x)}}, Commitment{cfg.scheme, {std::move(y)}}};
      } else {
        auto [x, y] = copy_parts(table, in[0]);
        run.outputs = {std::move(x), std::move(y)};
      }
      break;
    }
    case ProtocolKind::Add:
      run.outputs = {direct ? Commitment{cfg.scheme, {add_protocol(table, in[0].parts[0], in[1].parts[0])}}
                            : crt_add(table, in[0], in[1])};
      break;
    case ProtocolKind::Mult:
      run.outputs = {direct ? Commitment{cfg.scheme, {mult_protocol(table, in[0].parts[0], in[1].parts[0])}}
                            : crt_mult(table, in[0], in[1], cfg.optimized)};
      break;
  }
  rng.finish();

  for (const auto& c : run.outputs) run.results.push_back(decode(c));
  run.trace = table.trace();
  run.budget = table.budget();
  run.drawn = table.drawn();
  run.returned = table.returned();
  run.placed = table.placed();
  run.retired = table.retired();
  run.remaining_in_play = {table.budget().clubs_in_play(), table.budget().hearts_in_play()};
  return run;
}

}  // namespace cardmpc
