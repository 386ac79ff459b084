#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cardmpc/encodings.hpp"
#include "cardmpc/protocols.hpp"

namespace cardmpc {

// ---------------------------------------------------------------------------
// Card counting
// ---------------------------------------------------------------------------

// One modulus of a CRT multiplication, processed in ascending order.
struct ScheduleStep {
  int modulus = 0;
  int idle = 0;     // cards in play that this part does not touch
  int drawn = 0;    // extras the part needs beyond its own inputs (q^2 - q)
  int freed = 0;    // cards released back for reuse afterwards
  int peak = 0;     // idle + q^2 + q
  int after = 0;    // in play once the part has finished
};

struct MultSchedule {
  int peak = 0;
  std::vector<ScheduleStep> steps;
};

// With `reuse`, every card a part frees is available to later parts. Without
// it, only the part's extras come back and its consumed inputs stay idle,
// which reproduces 2*sum + m^2 - m.
MultSchedule simulate_mult_schedule(const CrtDecomposition& d, bool reuse);
MultSchedule simulate_optimized_mult_schedule(const CrtDecomposition& d);

// Closed-form card counts:
//   direct  copy 3n, add 2n, mult n^2 + n, five-card trick 5 (n = 2 only)
//   binary  copy 4 ceil(lg n) + 2, add and mult 6 ceil(lg n) + 4
//   crt     copy 2*sum + m, add 2*sum, mult scheduled (or 2*sum + m^2 - m)
int count_cards(const Scheme& scheme, ProtocolKind protocol, bool optimized = true);

// True when the protocol can only be counted, not run.
bool count_only(const Scheme& scheme, ProtocolKind protocol);

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

struct VerifyOptions {
  enum class Mode { Exhaustive, Sampled };

  Mode mode = Mode::Exhaustive;
  std::uint64_t trials = 10000;  // sampled mode
  std::uint64_t seed = 1;        // sampled mode
  std::uint64_t branch_cap = 10'000'000;
  double significance = 1e-3;    // chi-square level for sampled reveal histograms
};

const char* mode_name(VerifyOptions::Mode m) noexcept;

// Everything the verifier needs to know about a protocol.
struct VerificationTarget {
  std::string protocol;
  Scheme scheme = Scheme::direct(2);
  bool optimized = true;
  std::vector<std::vector<int>> inputs;
  std::function<ProtocolRun(const std::vector<int>&, RandomSource&)> run;
  std::function<std::vector<int>(const std::vector<int>&)> oracle;
  // Inputs with the same class must yield identically distributed traces.
  // The five-card trick reveals a AND b, so it groups by that value.
  std::function<int(const std::vector<int>&)> public_class;
};

VerificationTarget make_target(const ProtocolConfig& cfg);

struct Counterexample {
  std::vector<int> inputs;
  std::vector<int> script;            // exhaustive mode
  std::optional<std::uint64_t> seed;  // sampled mode
  std::vector<int> expected;
  std::vector<int> got;
  std::string trace_digest;
  std::string detail;
};

struct Distinguisher {
  std::vector<int> inputs_a;
  std::vector<int> inputs_b;
  std::string trace_digest;  // a trace whose multiplicity differs
  std::string detail;
};

// Uniformity of one reveal's rotation offset, tested per input and pooled.
struct HistogramCheck {
  int reveal_index = 0;
  int support = 0;
  std::vector<std::uint64_t> counts;  // summed over inputs
  int degrees_of_freedom = 0;
  double chi_square = 0;
  double critical = 0;
  bool pass = false;
};

struct VerificationReport {
  std::string protocol;
  std::string scheme;
  int n = 0;
  bool optimized = true;
  VerifyOptions::Mode mode = VerifyOptions::Mode::Exhaustive;
  std::uint64_t trials = 0;
  std::uint64_t branches = 0;

  bool correctness_checked = false;
  bool correctness_pass = true;
  std::optional<Counterexample> counterexample;

  bool security_checked = false;
  bool security_pass = true;
  std::optional<Distinguisher> distinguisher;
  std::uint64_t input_pairs_compared = 0;
  std::vector<HistogramCheck> histograms;

  bool passed() const noexcept { return correctness_pass && security_pass; }
  std::string to_json() const;
};

// Exhaustive mode runs every input against every offset script; it throws
// BranchCapExceeded when that exceeds options.branch_cap. Sampled mode runs
// options.trials seeded runs with random inputs.
VerificationReport verify(const VerificationTarget& target, const VerifyOptions& options, bool check_correctness,
                          bool check_security);

VerificationReport verify_correctness(const ProtocolConfig& cfg, const VerifyOptions& options);
VerificationReport verify_security(const ProtocolConfig& cfg, const VerifyOptions& options);

// Exact branch count of an exhaustive run: inputs times the product of
// shuffle supports.
std::uint64_t exhaustive_branch_count(const VerificationTarget& target);

// Offset that rotates `symbols` to its lexicographically least rotation.
int canonical_rotation(const std::vector<CardSymbol>& symbols);

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

struct CountCell {
  int value = 0;
  bool minimal = false;  // lowest among the three schemes for this n and protocol
};

struct CountRow {
  int n = 0;
  Scheme::Kind scheme = Scheme::Kind::Direct;
  std::array<CountCell, 3> cells;  // copy, add, mult
};

struct CountTables {
  std::vector<CountRow> table1;  // Z/6Z
  std::vector<CountRow> table2;  // every n <= 20 the CRT scheme applies to
};

CountTables emit_tables();

// CSV blocks with header "n,scheme,copy,add,mult,flags"; flags lists the
// minimal cells joined by ';'. The Z/6Z block first, a blank line, then the
// block for every applicable n.
std::string tables_to_csv(const CountTables& t);
std::string tables_to_text(const CountTables& t);
std::string tables_to_json(const CountTables& t);

}  // namespace cardmpc
