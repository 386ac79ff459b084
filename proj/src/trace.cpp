#include "cardmpc/trace.hpp"

#include <cstdio>
#include <json.hpp>

namespace cardmpc {

namespace {

std::string symbol_string(const std::vector<CardSymbol>& symbols) {
  std::string s;
  s.reserve(symbols.size());
  for (auto sym : symbols) s.push_back(symbol_char(sym));
  return s;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

void VisibleTrace::shuffled(const ShuffleSpec& spec) { events_.emplace_back(ShuffledEvent{spec}); }

void VisibleTrace::revealed(int row, std::vector<int> positions, std::vector<CardSymbol> symbols) {
  events_.emplace_back(RevealedEvent{row, std::move(positions), std::move(symbols)});
}

void VisibleTrace::public_move(std::string tag, std::vector<int> args) {
  events_.emplace_back(PublicMoveEvent{std::move(tag), std::move(args)});
}

std::string VisibleTrace::to_jsonl() const {
  std::string out;
  for (std::size_t step = 0; step < events_.size(); ++step) {
    nlohmann::ordered_json rec;
    rec["step"] = step;
    std::visit(overloaded{
                   [&](const ShuffledEvent& e) {
                     rec["kind"] = "shuffled";
                     rec["payload"] = {{"shuffle", shuffle_kind_name(e.spec.kind)}, {"size", e.spec.size}};
                   },
                   [&](const RevealedEvent& e) {
                     rec["kind"] = "revealed";
                     rec["payload"] = {{"row", e.row}, {"positions", e.positions}, {"symbols", symbol_string(e.symbols)}};
                   },
                   [&](const PublicMoveEvent& e) {
                     rec["kind"] = "public_move";
                     rec["payload"] = {{"move", e.tag}, {"args", e.args}};
                   },
               },
               events_[step]);
    out += rec.dump();
    out += '\n';
  }
  return out;
}

std::string VisibleTrace::canonical() const {
  std::string out;
  for (const auto& ev : events_) {
    std::visit(overloaded{
                   [&](const ShuffledEvent& e) {
                     out += 'S';
                     out += shuffle_kind_name(e.spec.kind);
                     out += std::to_string(e.spec.size);
                   },
                   [&](const RevealedEvent& e) {
                     out += 'R';
                     out += std::to_string(e.row);
                     out += ':';
                     out += symbol_string(e.symbols);
                   },
                   [&](const PublicMoveEvent& e) {
                     out += 'M';
                     out += e.tag;
                     for (int a : e.args) {
                       out += ',';
                       out += std::to_string(a);
                     }
                   },
               },
               ev);
    out += ';';
  }
  return out;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string VisibleTrace::digest() const { return fnv1a_hex(canonical()); }

}  // namespace cardmpc
