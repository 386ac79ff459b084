#include "cardmpc/analysis.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <json.hpp>
#include <map>
#include <random>

#include "cardmpc/error.hpp"

namespace cardmpc {

MultSchedule simulate_mult_schedule(const CrtDecomposition& d, bool reuse) {
  if (d.factors.size() < 2) fail(ErrorCode::SchemeInapplicable, "schedule needs at least two moduli");
  MultSchedule out;
  int in_play = static_cast<int>(2 * d.modulus_sum());
  for (const auto& f : d.factors) {
    const int q = static_cast<int>(f.modulus);
    ScheduleStep step;
    step.modulus = q;
    step.idle = in_play - 2 * q;
    step.drawn = q * q - q;
    step.peak = step.idle + q * q + q;
    if (reuse) {
      step.freed = q * q;
      step.after = step.idle + q;
    } else {
      step.freed = q * q - q;
      step.after = step.idle + 2 * q;
    }
    in_play = step.after;
    out.peak = std::max(out.peak, step.peak);
    out.steps.push_back(step);
  }
  return out;
}

MultSchedule simulate_optimized_mult_schedule(const CrtDecomposition& d) { return simulate_mult_schedule(d, true); }

bool count_only(const Scheme& scheme, ProtocolKind protocol) {
  return scheme.kind() == Scheme::Kind::Binary && (protocol == ProtocolKind::Add || protocol == ProtocolKind::Mult);
}

int count_cards(const Scheme& scheme, ProtocolKind protocol, bool optimized) {
  const int n = scheme.n();
  if (protocol == ProtocolKind::FiveCardTrick) {
    if (scheme.kind() == Scheme::Kind::Direct && n == 2) return 5;
    fail(ErrorCode::Domain, "the five-card trick is only defined for the direct scheme with n = 2");
  }
  switch (scheme.kind()) {
    case Scheme::Kind::Direct:
      switch (protocol) {
        case ProtocolKind::Copy: return 3 * n;
        case ProtocolKind::Add: return 2 * n;
        case ProtocolKind::Mult: return n * n + n;
        default: break;
      }
      break;
    case Scheme::Kind::Binary: {
      const int bits = ceil_lg(n);
      return protocol == ProtocolKind::Copy ? 4 * bits + 2 : 6 * bits + 4;
    }
    case Scheme::Kind::Crt: {
      const auto& d = scheme.decomposition();
      const int sum = static_cast<int>(d.modulus_sum());
      const int m = static_cast<int>(d.largest);
      switch (protocol) {
        case ProtocolKind::Copy: return 2 * sum + m;
        case ProtocolKind::Add: return 2 * sum;
        case ProtocolKind::Mult: return optimized ? simulate_optimized_mult_schedule(d).peak : 2 * sum + m * m - m;
        default: break;
      }
      break;
    }
  }
  fail(ErrorCode::Domain, "unsupported (scheme, protocol) pair");
}

const char* mode_name(VerifyOptions::Mode m) noexcept {
  return m == VerifyOptions::Mode::Exhaustive ? "exhaustive" : "sampled";
}

VerificationTarget make_target(const ProtocolConfig& cfg) {
  check_executable(cfg);
  VerificationTarget t;
  t.protocol = protocol_name(cfg.protocol);
  t.scheme = cfg.scheme;
  t.optimized = cfg.optimized;
  const int n = cfg.scheme.n();
  if (protocol_arity(cfg.protocol) == 1) {
    for (int a = 0; a < n; ++a) t.inputs.push_back({a});
  } else {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t.inputs.push_back({a, b});
  }
  t.run = [cfg](const std::vector<int>& in, RandomSource& rng) { return run_protocol(cfg, in, rng); };
  t.oracle = [cfg](const std::vector<int>& in) { return expected_results(cfg, in); };
  if (cfg.protocol == ProtocolKind::FiveCardTrick) {
    t.public_class = [](const std::vector<int>& in) { return in.at(0) & in.at(1); };
  } else {
    t.public_class = [](const std::vector<int>&) { return 0; };
  }
  return t;
}

int canonical_rotation(const std::vector<CardSymbol>& symbols) {
  const int n = static_cast<int>(symbols.size());
  auto less_at = [&](int x, int y) {
    for (int i = 0; i < n; ++i) {
      const auto a = symbols[static_cast<std::size_t>((x + i) % n)];
      const auto b = symbols[static_cast<std::size_t>((y + i) % n)];
      if (a != b) return a < b;
    }
    return false;
  };
  int best = 0;
  for (int k = 1; k < n; ++k) {
    if (less_at(k, best)) best = k;
  }
  return best;
}

namespace {

std::uint64_t hash_trace(const VisibleTrace& t) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : t.canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<int> probe_supports(const VerificationTarget& target) {
  auto rng = RandomSource::seeded(0);
  (void)target.run(target.inputs.front(), rng);
  return rng.supports();
}

// Advances `script` through the mixed-radix space given by `supports`.
bool next_script(std::vector<int>& script, const std::vector<int>& supports) {
  for (std::size_t i = script.size(); i-- > 0;) {
    if (++script[i] < supports[i]) return true;
    script[i] = 0;
  }
  return false;
}

std::string describe(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// First hash whose multiplicity differs between two sorted multisets.
std::uint64_t first_difference(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  std::vector<std::uint64_t> diff;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
  return diff.empty() ? 0 : diff.front();
}

void check_outputs(VerificationReport& report, const std::vector<int>& inputs, const ProtocolRun& run,
                   const std::vector<int>& expected, const std::vector<int>& script,
                   std::optional<std::uint64_t> seed) {
  if (report.counterexample || run.results == expected) return;
  report.correctness_pass = false;
  report.counterexample =
      Counterexample{inputs, script, seed, expected, run.results, run.trace.digest(), "output mismatch"};
}

void exhaustive(const VerificationTarget& target, const VerifyOptions& opt, VerificationReport& report,
                bool check_correctness, bool check_security) {
  const auto supports = probe_supports(target);
  std::uint64_t scripts = 1;
  for (int s : supports) scripts *= static_cast<std::uint64_t>(s);
  const std::uint64_t branches = scripts * target.inputs.size();
  if (branches > opt.branch_cap) {
    fail(ErrorCode::BranchCapExceeded, std::to_string(branches) + " branches exceed the exhaustive cap of " +
                                           std::to_string(opt.branch_cap) +
                                           "; use sampled mode or raise the cap (CARDMPC_BRANCH_CAP)");
  }

  struct Reference {
    std::vector<int> inputs;
    std::vector<std::uint64_t> traces;
  };
  std::map<int, Reference> references;

  for (const auto& in : target.inputs) {
    const auto expected = target.oracle(in);
    std::vector<std::uint64_t> traces;
    traces.reserve(scripts);
    std::vector<int> script(supports.size(), 0);
    do {
      auto rng = RandomSource::enumerating(script);
      ProtocolRun run;
      try {
        run = target.run(in, rng);
      } catch (const Error& e) {
        if (!report.counterexample) {
          report.counterexample = Counterexample{in, script, std::nullopt, expected, {}, "", e.what()};
        }
        report.correctness_pass = false;
        ++report.branches;
        continue;
      }
      ++report.branches;
      if (check_correctness) check_outputs(report, in, run, expected, script, std::nullopt);
      if (check_security) traces.push_back(hash_trace(run.trace));
    } while (next_script(script, supports));

    if (!check_security) continue;
    std::sort(traces.begin(), traces.end());
    const int cls = target.public_class(in);
    auto it = references.find(cls);
    if (it == references.end()) {
      references.emplace(cls, Reference{in, std::move(traces)});
      continue;
    }
    ++report.input_pairs_compared;
    if (report.distinguisher || it->second.traces == traces) continue;
    report.security_pass = false;
    report.distinguisher = Distinguisher{it->second.inputs, in, hex(first_difference(it->second.traces, traces)),
                                         "trace multisets differ between inputs " + describe(it->second.inputs) +
                                             " and " + describe(in)};
  }
  // Every class member matched the class reference, hence every pair matches.
  if (check_security && report.security_pass) {
    std::map<int, std::uint64_t> sizes;
    for (const auto& in : target.inputs) ++sizes[target.public_class(in)];
    report.input_pairs_compared = 0;
    for (const auto& [cls, k] : sizes) report.input_pairs_compared += k * (k - 1) / 2;
  }
}

void sampled(const VerificationTarget& target, const VerifyOptions& opt, VerificationReport& report,
             bool check_correctness, bool check_security) {
  std::mt19937_64 master(opt.seed);
  // counts[reveal][input][canonical rotation offset]
  std::vector<std::vector<std::vector<std::uint64_t>>> counts;
  std::vector<int> supports;
  std::vector<std::uint64_t> per_input(target.inputs.size(), 0);
  std::optional<std::string> skeleton;

  for (std::uint64_t t = 0; t < opt.trials; ++t) {
    const std::size_t idx = master() % target.inputs.size();
    const auto& in = target.inputs[idx];
    const std::uint64_t seed = master();
    auto rng = RandomSource::seeded(seed);
    const auto run = target.run(in, rng);
    ++report.branches;
    if (check_correctness) check_outputs(report, in, run, target.oracle(in), {}, seed);
    if (!check_security) continue;

    // Everything but revealed symbols must be input-independent; the
    // revealed rows are checked for uniform rotation below.
    ++per_input[idx];
    std::string shape;
    std::size_t reveal = 0;
    for (const auto& ev : run.trace.events()) {
      if (const auto* r = std::get_if<RevealedEvent>(&ev)) {
        if (counts.size() <= reveal) {
          counts.emplace_back(target.inputs.size(), std::vector<std::uint64_t>(r->symbols.size(), 0));
          supports.push_back(static_cast<int>(r->symbols.size()));
        }
        auto& row = counts[reveal][idx];
        if (row.size() == r->symbols.size()) ++row[static_cast<std::size_t>(canonical_rotation(r->symbols))];
        shape += "R" + std::to_string(r->row) + ";";
        ++reveal;
      } else if (const auto* s = std::get_if<ShuffledEvent>(&ev)) {
        shape += "S" + std::to_string(s->spec.size) + ";";
      } else if (const auto* m = std::get_if<PublicMoveEvent>(&ev)) {
        shape += "M" + m->tag + ";";
      }
    }
    if (!skeleton) {
      skeleton = shape;
    } else if (*skeleton != shape && !report.distinguisher) {
      report.security_pass = false;
      report.distinguisher = Distinguisher{{}, in, fnv1a_hex(shape), "trace shape depends on the inputs"};
    }
  }

  if (!check_security || !report.security_pass) return;
  // Goodness of fit to the uniform offset, conditioned on the input: the
  // per-input statistics are summed, one degree of freedom short per input.
  for (std::size_t k = 0; k < counts.size(); ++k) {
    HistogramCheck h;
    h.reveal_index = static_cast<int>(k);
    h.support = supports[k];
    h.counts.assign(static_cast<std::size_t>(h.support), 0);
    for (std::size_t i = 0; i < counts[k].size(); ++i) {
      if (per_input[i] == 0) continue;
      const double expected = static_cast<double>(per_input[i]) / h.support;
      for (std::size_t b = 0; b < counts[k][i].size(); ++b) {
        const double c = static_cast<double>(counts[k][i][b]);
        h.chi_square += (c - expected) * (c - expected) / expected;
        h.counts[b] += counts[k][i][b];
      }
      h.degrees_of_freedom += h.support - 1;
    }
    if (h.degrees_of_freedom == 0) continue;
    boost::math::chi_squared dist(h.degrees_of_freedom);
    h.critical = boost::math::quantile(boost::math::complement(dist, opt.significance));
    h.pass = h.chi_square <= h.critical;
    if (!h.pass) {
      report.security_pass = false;
      if (!report.distinguisher) {
        report.distinguisher =
            Distinguisher{{}, {}, "", "reveal " + std::to_string(k) + " is not uniform (chi-square " +
                                          std::to_string(h.chi_square) + " > " + std::to_string(h.critical) + ")"};
      }
    }
    report.histograms.push_back(std::move(h));
  }
}

}  // namespace

std::uint64_t exhaustive_branch_count(const VerificationTarget& target) {
  std::uint64_t scripts = 1;
  for (int s : probe_supports(target)) scripts *= static_cast<std::uint64_t>(s);
  return scripts * target.inputs.size();
}

VerificationReport verify(const VerificationTarget& target, const VerifyOptions& options, bool check_correctness,
                          bool check_security) {
  if (target.inputs.empty()) fail(ErrorCode::Domain, "verification target has no inputs");
  VerificationReport report;
  report.protocol = target.protocol;
  report.scheme = target.scheme.name();
  report.n = target.scheme.n();
  report.optimized = target.optimized;
  report.mode = options.mode;
  report.correctness_checked = check_correctness;
  report.security_checked = check_security;
  if (options.mode == VerifyOptions::Mode::Exhaustive) {
    exhaustive(target, options, report, check_correctness, check_security);
  } else {
    report.trials = options.trials;
    sampled(target, options, report, check_correctness, check_security);
  }
  return report;
}

VerificationReport verify_correctness(const ProtocolConfig& cfg, const VerifyOptions& options) {
  return verify(make_target(cfg), options, true, false);
}

VerificationReport verify_security(const ProtocolConfig& cfg, const VerifyOptions& options) {
  return verify(make_target(cfg), options, false, true);
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["protocol"] = protocol;
  j["scheme"] = scheme;
  j["n"] = n;
  j["optimized"] = optimized;
  j["mode"] = mode_name(mode);
  if (mode == VerifyOptions::Mode::Sampled) j["trials"] = trials;
  j["branches"] = branches;
  j["passed"] = passed();

  auto& c = j["correctness"];
  c["checked"] = correctness_checked;
  c["pass"] = correctness_pass;
  if (counterexample) {
    auto& ce = c["counterexample"];
    ce["inputs"] = counterexample->inputs;
    if (counterexample->seed) {
      ce["seed"] = *counterexample->seed;
    } else {
      ce["script"] = counterexample->script;
    }
    ce["expected"] = counterexample->expected;
    ce["got"] = counterexample->got;
    ce["trace_digest"] = counterexample->trace_digest;
    ce["detail"] = counterexample->detail;
  }

  auto& s = j["security"];
  s["checked"] = security_checked;
  s["pass"] = security_pass;
  if (mode == VerifyOptions::Mode::Exhaustive) s["input_pairs_compared"] = input_pairs_compared;
  if (distinguisher) {
    auto& d = s["distinguisher"];
    d["inputs_a"] = distinguisher->inputs_a;
    d["inputs_b"] = distinguisher->inputs_b;
    d["trace_digest"] = distinguisher->trace_digest;
    d["detail"] = distinguisher->detail;
  }
  if (!histograms.empty()) {
    auto& hs = s["histograms"];
    hs = nlohmann::ordered_json::array();
    for (const auto& h : histograms) {
      hs.push_back({{"reveal", h.reveal_index},
                    {"support", h.support},
                    {"counts", h.counts},
                    {"degrees_of_freedom", h.degrees_of_freedom},
                    {"chi_square", h.chi_square},
                    {"critical", h.critical},
                    {"pass", h.pass}});
    }
  }
  return j.dump();
}

}  // namespace cardmpc
