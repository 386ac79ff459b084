#include <algorithm>
#include <cstdio>
#include <json.hpp>

#include "cardmpc/analysis.hpp"
#include "cardmpc/error.hpp"

namespace cardmpc {

namespace {

constexpr std::array<ProtocolKind, 3> kColumns{ProtocolKind::Copy, ProtocolKind::Add, ProtocolKind::Mult};
constexpr std::array<const char*, 3> kColumnNames{"copy", "add", "mult"};
constexpr std::array<Scheme::Kind, 3> kSchemes{Scheme::Kind::Direct, Scheme::Kind::Binary, Scheme::Kind::Crt};

Scheme make_scheme(Scheme::Kind k, int n) {
  switch (k) {
    case Scheme::Kind::Direct: return Scheme::direct(n);
    case Scheme::Kind::Binary: return Scheme::binary(n);
    case Scheme::Kind::Crt: return Scheme::crt(n);
  }
  fail(ErrorCode::Domain, "unknown scheme kind");
}

std::vector<CountRow> rows_for(int n) {
  std::vector<CountRow> rows;
  for (auto kind : kSchemes) {
    const auto scheme = make_scheme(kind, n);
    CountRow row{n, kind, {}};
    for (std::size_t c = 0; c < kColumns.size(); ++c) row.cells[c].value = count_cards(scheme, kColumns[c], true);
    rows.push_back(row);
  }
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    int best = rows.front().cells[c].value;
    for (const auto& r : rows) best = std::min(best, r.cells[c].value);
    for (auto& r : rows) r.cells[c].minimal = r.cells[c].value == best;
  }
  return rows;
}

bool crt_applicable(int n) {
  try {
    (void)crt_decompose(n);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::string flags(const CountRow& r) {
  std::string out;
  for (std::size_t c = 0; c < r.cells.size(); ++c) {
    if (!r.cells[c].minimal) continue;
    if (!out.empty()) out += ';';
    out += kColumnNames[c];
  }
  return out;
}

void csv_block(std::string& out, const std::vector<CountRow>& rows) {
  out += "n,scheme,copy,add,mult,flags\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',' + scheme_kind_name(r.scheme);
    for (const auto& cell : r.cells) out += ',' + std::to_string(cell.value);
    out += ',' + flags(r) + '\n';
  }
}

void text_block(std::string& out, const char* title, const std::vector<CountRow>& rows) {
  out += title;
  out += '\n';
  char line[128];
  std::snprintf(line, sizeof line, "%-8s %-8s %7s %7s %7s\n", "Z/nZ", "scheme", "copy", "add", "mult");
  out += line;
  for (const auto& r : rows) {
    std::string cells[3];
    for (std::size_t c = 0; c < 3; ++c) cells[c] = std::to_string(r.cells[c].value) + (r.cells[c].minimal ? "*" : "");
    std::snprintf(line, sizeof line, "%-8s %-8s %7s %7s %7s\n", ("Z/" + std::to_string(r.n) + "Z").c_str(),
                  scheme_kind_name(r.scheme), cells[0].c_str(), cells[1].c_str(), cells[2].c_str());
    out += line;
  }
}

nlohmann::ordered_json json_rows(const std::vector<CountRow>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["n"] = r.n;
    row["scheme"] = scheme_kind_name(r.scheme);
    for (std::size_t c = 0; c < 3; ++c) row[kColumnNames[c]] = {{"cards", r.cells[c].value}, {"minimal", r.cells[c].minimal}};
    arr.push_back(row);
  }
  return arr;
}

}  // namespace

CountTables emit_tables() {
  CountTables t;
  t.table1 = rows_for(6);
  for (int n = 2; n <= 20; ++n) {
    if (!crt_applicable(n)) continue;
    auto rows = rows_for(n);
    t.table2.insert(t.table2.end(), rows.begin(), rows.end());
  }
  return t;
}

std::string tables_to_csv(const CountTables& t) {
  std::string out;
  csv_block(out, t.table1);
  out += '\n';
  csv_block(out, t.table2);
  return out;
}

std::string tables_to_text(const CountTables& t) {
  std::string out;
  text_block(out, "Cards required in Z/6Z (* = fewest for that protocol)", t.table1);
  out += '\n';
  text_block(out, "Cards required for composite n <= 20, CRT mult with card reuse (* = fewest)", t.table2);
  return out;
}

std::string tables_to_json(const CountTables& t) {
  nlohmann::ordered_json j;
  j["table1"] = json_rows(t.table1);
  j["table2"] = json_rows(t.table2);
  return j.dump(2);
}

}  // namespace cardmpc
