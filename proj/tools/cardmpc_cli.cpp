// cardmpc: run, verify and count card-based protocols from the command line.
//
// Exit codes: 0 success / verification passed, 1 verification failed,
// 2 usage or input error. Secrets are accepted on the command line; this is
// a simulation harness, not a deployment.

#include <CLI11.hpp>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cardmpc/cardmpc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct LibraryError {
  cardmpc_status status;
  std::string message;
};

void check(cardmpc_status st) {
  if (st != CARDMPC_OK) throw LibraryError{st, cardmpc_last_error()};
}

// Two-call pattern: size, then fill.
template <class F>
std::string fetch(F&& call) {
  size_t len = 0;
  auto st = call(nullptr, 0, &len);
  if (st != CARDMPC_E_BUFFER_TOO_SMALL) check(st);
  std::string out(len + 1, '\0');
  check(call(out.data(), out.size(), &len));
  out.resize(len);
  return out;
}

struct RunHandle {
  cardmpc_run* ptr = nullptr;
  ~RunHandle() { cardmpc_run_destroy(ptr); }
};

struct ReportHandle {
  cardmpc_report* ptr = nullptr;
  ~ReportHandle() { cardmpc_report_destroy(ptr); }
};

std::uint64_t branch_cap_from_env() {
  const char* env = std::getenv("CARDMPC_BRANCH_CAP");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const auto v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) {
    throw LibraryError{CARDMPC_E_INVALID_ARGUMENT, std::string("CARDMPC_BRANCH_CAP must be a positive integer, got '") +
                                                       env + "'"};
  }
  return v;
}

int resolve_n(const std::string& protocol, int n) {
  if (n > 0) return n;
  if (protocol == "five-card-trick") return 2;
  throw CLI::ValidationError("--n", "required for protocol " + protocol);
}

std::string join(const std::vector<int>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate, verify and count card-based secure computation protocols over Z/nZ"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cardmpc_version());

  std::string format = "text";
  const std::vector<std::string> schemes{"direct", "binary", "crt"};
  const std::vector<std::string> protocols{"five-card-trick", "copy", "add", "mult"};

  // encode
  auto* encode = app.add_subcommand("encode", "Print the commitment of a value (harness-only face-up view)");
  int enc_n = 0, enc_a = 0;
  std::string enc_scheme = "crt";
  encode->add_option("--n", enc_n, "Modulus")->required();
  encode->add_option("--a", enc_a, "Value in [0, n)")->required();
  encode->add_option("--scheme", enc_scheme, "direct, binary or crt")->check(CLI::IsMember(schemes));
  encode->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  // run
  auto* run = app.add_subcommand("run", "Execute one protocol run");
  std::string run_protocol, run_scheme = "direct";
  int run_n = 0;
  std::vector<int> run_inputs, run_script;
  std::optional<std::uint64_t> run_seed;
  bool run_optimized = true, run_trace = false;
  run->add_option("protocol", run_protocol, "five-card-trick, copy, add or mult")
      ->required()
      ->check(CLI::IsMember(protocols));
  run->add_option("--scheme", run_scheme, "direct, binary or crt")->check(CLI::IsMember(schemes));
  run->add_option("--n", run_n, "Modulus (five-card-trick: 2)");
  run->add_option("--inputs", run_inputs, "Secret inputs, e.g. 4,5")->required()->delimiter(',');
  auto* seed_opt = run->add_option("--seed", run_seed, "Sample shuffle offsets from this seed");
  auto* script_opt = run->add_option("--script", run_script, "Fixed shuffle offsets, e.g. 3,0,5")->delimiter(',');
  seed_opt->excludes(script_opt);
  run->add_flag("--optimized,!--unoptimized", run_optimized, "Reuse freed cards across CRT parts (default on)");
  run->add_flag("--trace", run_trace, "Print the visible trace as JSON lines");
  run->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  // verify
  auto* verify = app.add_subcommand("verify", "Check correctness and security of a protocol");
  std::string ver_protocol, ver_scheme = "direct";
  int ver_n = 0;
  bool ver_exhaustive = false, ver_optimized = true, ver_corr_only = false, ver_sec_only = false;
  std::uint64_t ver_trials = 0, ver_seed = 1;
  verify->add_option("protocol", ver_protocol)->required()->check(CLI::IsMember(protocols));
  verify->add_option("--scheme", ver_scheme)->check(CLI::IsMember(schemes));
  verify->add_option("--n", ver_n, "Modulus (five-card-trick: 2)");
  auto* exh = verify->add_flag("--exhaustive", ver_exhaustive, "Every input against every shuffle offset (default)");
  auto* smp = verify->add_option("--sampled", ver_trials, "Number of random-seed trials")->check(CLI::PositiveNumber);
  exh->excludes(smp);
  verify->add_option("--seed", ver_seed, "Master seed for sampled mode");
  verify->add_flag("--optimized,!--unoptimized", ver_optimized);
  auto* co = verify->add_flag("--correctness-only", ver_corr_only);
  auto* so = verify->add_flag("--security-only", ver_sec_only);
  co->excludes(so);
  verify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  // counts
  auto* counts = app.add_subcommand("counts", "Print the card-count tables");
  counts->add_option("--format", format)->check(CLI::IsMember({"text", "csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*encode) {
      const auto s = fetch([&](char* b, size_t c, size_t* l) {
        return cardmpc_encode(enc_scheme.c_str(), enc_n, enc_a, b, c, l);
      });
      if (format == "json") {
        std::cout << nlohmann::json{{"scheme", enc_scheme}, {"n", enc_n}, {"a", enc_a}, {"commitment", s}}.dump()
                  << '\n';
      } else {
        std::cout << s << '\n';
      }
      return kExitOk;
    }

    if (*run) {
      if (!run_seed && script_opt->count() == 0) {
        std::cerr << "run: exactly one of --seed or --script is required\n";
        return kExitUsage;
      }
      const int n = resolve_n(run_protocol, run_n);
      cardmpc_run_config cfg{};
      cfg.protocol = run_protocol.c_str();
      cfg.scheme = run_scheme.c_str();
      cfg.n = n;
      cfg.inputs = run_inputs.data();
      cfg.input_count = run_inputs.size();
      cfg.optimized = run_optimized ? 1 : 0;
      cfg.use_script = run_seed ? 0 : 1;
      cfg.script = run_script.data();
      cfg.script_len = run_script.size();
      cfg.seed = run_seed.value_or(0);

      RunHandle handle;
      check(cardmpc_run_create(&cfg, &handle.ptr));
      std::vector<int> results;
      for (size_t i = 0; i < cardmpc_run_result_count(handle.ptr); ++i) {
        results.push_back(cardmpc_run_result(handle.ptr, i));
      }
      const int peak = cardmpc_run_peak(handle.ptr);

      if (format == "json") {
        std::vector<std::string> commitments;
        for (size_t i = 0; i < cardmpc_run_output_count(handle.ptr); ++i) {
          commitments.push_back(fetch([&](char* b, size_t c, size_t* l) {
            return cardmpc_run_output(handle.ptr, i, b, c, l);
          }));
        }
        nlohmann::ordered_json j;
        j["protocol"] = run_protocol;
        j["scheme"] = run_scheme;
        j["n"] = n;
        j["output"] = results;
        j["peak_cards"] = peak;
        j["commitments"] = commitments;
        std::cout << j.dump() << '\n';
      } else {
        std::cout << "protocol: " << run_protocol << "\n"
                  << "scheme: " << run_scheme << " (n = " << n << ")\n"
                  << "output: " << join(results, " ") << "\n"
                  << "peak cards: " << peak << "\n";
      }
      if (run_trace) {
        std::cout << fetch([&](char* b, size_t c, size_t* l) { return cardmpc_run_trace_jsonl(handle.ptr, b, c, l); });
      }
      return kExitOk;
    }

    if (*verify) {
      const int n = resolve_n(ver_protocol, ver_n);
      cardmpc_verify_config cfg{};
      cfg.protocol = ver_protocol.c_str();
      cfg.scheme = ver_scheme.c_str();
      cfg.n = n;
      cfg.optimized = ver_optimized ? 1 : 0;
      cfg.sampled = smp->count() > 0 ? 1 : 0;
      cfg.trials = ver_trials;
      cfg.seed = ver_seed;
      cfg.branch_cap = branch_cap_from_env();
      cfg.check_correctness = ver_sec_only ? 0 : 1;
      cfg.check_security = ver_corr_only ? 0 : 1;

      ReportHandle handle;
      const auto st = cardmpc_verify(&cfg, &handle.ptr);
      if (st == CARDMPC_E_BRANCH_CAP_EXCEEDED) {
        std::cerr << "verify: " << cardmpc_last_error() << "\n"
                  << "hint: run with --sampled 10000, or set CARDMPC_BRANCH_CAP to a larger value\n";
        return kExitUsage;
      }
      check(st);
      const auto json = fetch([&](char* b, size_t c, size_t* l) { return cardmpc_report_json(handle.ptr, b, c, l); });
      const bool passed = cardmpc_report_passed(handle.ptr) != 0;
      if (format == "json") {
        std::cout << json << '\n';
      } else {
        const auto r = nlohmann::json::parse(json);
        std::cout << "verify " << ver_protocol << " (" << ver_scheme << ", n = " << n << ", "
                  << r["mode"].get<std::string>() << ")\n"
                  << "branches: " << r["branches"].get<std::uint64_t>() << "\n";
        for (const char* part : {"correctness", "security"}) {
          const auto& p = r[part];
          if (!p["checked"].get<bool>()) continue;
          std::cout << part << ": " << (p["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
          if (p.contains("counterexample")) std::cout << "  counterexample: " << p["counterexample"].dump() << "\n";
          if (p.contains("distinguisher")) std::cout << "  distinguisher: " << p["distinguisher"].dump() << "\n";
        }
        std::cout << "result: " << (passed ? "PASS" : "FAIL") << "\n";
      }
      return passed ? kExitOk : kExitFailed;
    }

    if (*counts) {
      std::cout << fetch([&](char* b, size_t c, size_t* l) { return cardmpc_tables(format.c_str(), b, c, l); });
      return kExitOk;
    }
  } catch (const LibraryError& e) {
    std::cerr << "error (" << cardmpc_status_name(e.status) << "): " << e.message << "\n";
    return kExitUsage;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
