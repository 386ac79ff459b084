#include "cardmpc/cardmpc.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "cardmpc/analysis.hpp"
#include "cardmpc/error.hpp"

using namespace cardmpc;

struct cardmpc_run {
  ProtocolRun run;
};

struct cardmpc_report {
  VerificationReport report;
};

namespace {

thread_local std::string g_last_error;

static_assert(static_cast<int>(ErrorCode::Domain) == CARDMPC_E_DOMAIN);
static_assert(static_cast<int>(ErrorCode::MalformedEncoding) == CARDMPC_E_MALFORMED_ENCODING);
static_assert(static_cast<int>(ErrorCode::SchemeInapplicable) == CARDMPC_E_SCHEME_INAPPLICABLE);
static_assert(static_cast<int>(ErrorCode::ScriptMismatch) == CARDMPC_E_SCRIPT_MISMATCH);
static_assert(static_cast<int>(ErrorCode::State) == CARDMPC_E_STATE);
static_assert(static_cast<int>(ErrorCode::InsufficientSupply) == CARDMPC_E_INSUFFICIENT_SUPPLY);
static_assert(static_cast<int>(ErrorCode::UnsupportedExecution) == CARDMPC_E_UNSUPPORTED_EXECUTION);
static_assert(static_cast<int>(ErrorCode::BranchCapExceeded) == CARDMPC_E_BRANCH_CAP_EXCEEDED);
static_assert(static_cast<int>(ErrorCode::SchemeMismatch) == CARDMPC_E_SCHEME_MISMATCH);

cardmpc_status set_error(cardmpc_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body` and maps exceptions onto status codes.
template <class F>
cardmpc_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const Error& e) {
    return set_error(static_cast<cardmpc_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(CARDMPC_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(CARDMPC_E_INTERNAL, e.what());
  }
}

cardmpc_status write_string(const std::string& s, char* buf, size_t cap, size_t* len) {
  if (len) *len = s.size();
  if (buf == nullptr || cap <= s.size()) {
    return set_error(CARDMPC_E_BUFFER_TOO_SMALL, "buffer needs " + std::to_string(s.size() + 1) + " bytes");
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return CARDMPC_OK;
}

std::string required(const char* s, const char* what) {
  if (s == nullptr) fail(ErrorCode::Domain, std::string(what) + " must not be NULL");
  return s;
}

}  // namespace

extern "C" {

const char* cardmpc_version(void) { return "1.0.0"; }

const char* cardmpc_status_name(cardmpc_status status) {
  switch (status) {
    case CARDMPC_OK: return "ok";
    case CARDMPC_E_INVALID_ARGUMENT: return "invalid argument";
    case CARDMPC_E_BUFFER_TOO_SMALL: return "buffer too small";
    case CARDMPC_E_INTERNAL: return "internal error";
    default: break;
  }
  if (status >= CARDMPC_E_DOMAIN && status <= CARDMPC_E_SCHEME_MISMATCH) {
    return error_code_name(static_cast<ErrorCode>(status));
  }
  return "unknown status";
}

const char* cardmpc_last_error(void) { return g_last_error.c_str(); }

cardmpc_status cardmpc_encode(const char* scheme, int n, int value, char* buf, size_t cap, size_t* len) {
  return guarded([&] {
    const auto s = Scheme::parse(required(scheme, "scheme"), n);
    return write_string(encode(s, value).to_string(), buf, cap, len);
  });
}

cardmpc_status cardmpc_decode(const char* scheme, int n, const char* symbols, int* value) {
  return guarded([&] {
    if (value == nullptr) return set_error(CARDMPC_E_INVALID_ARGUMENT, "value must not be NULL");
    const auto s = Scheme::parse(required(scheme, "scheme"), n);
    *value = decode(parse_commitment(s, required(symbols, "symbols")));
    return CARDMPC_OK;
  });
}

cardmpc_status cardmpc_commitment_width(const char* scheme, int n, int* width) {
  return guarded([&] {
    if (width == nullptr) return set_error(CARDMPC_E_INVALID_ARGUMENT, "width must not be NULL");
    *width = commitment_width(Scheme::parse(required(scheme, "scheme"), n));
    return CARDMPC_OK;
  });
}

cardmpc_status cardmpc_count_cards(const char* scheme, int n, const char* protocol, int optimized, int* cards) {
  return guarded([&] {
    if (cards == nullptr) return set_error(CARDMPC_E_INVALID_ARGUMENT, "cards must not be NULL");
    const auto s = Scheme::parse(required(scheme, "scheme"), n);
    *cards = count_cards(s, parse_protocol(required(protocol, "protocol")), optimized != 0);
    return CARDMPC_OK;
  });
}

cardmpc_status cardmpc_count_only(const char* scheme, int n, const char* protocol, int* out) {
  return guarded([&] {
    if (out == nullptr) return set_error(CARDMPC_E_INVALID_ARGUMENT, "count_only must not be NULL");
    const auto s = Scheme::parse(required(scheme, "scheme"), n);
    *out = count_only(s, parse_protocol(required(protocol, "protocol"))) ? 1 : 0;
    return CARDMPC_OK;
  });
}

cardmpc_status cardmpc_tables(const char* format, char* buf, size_t cap, size_t* len) {
  return guarded([&] {
    const std::string f = format ? format : "text";
    const auto t = emit_tables();
    if (f == "text") return write_string(tables_to_text(t), buf, cap, len);
    if (f == "csv") return write_string(tables_to_csv(t), buf, cap, len);
    if (f == "json") return write_string(tables_to_json(t), buf, cap, len);
    return set_error(CARDMPC_E_INVALID_ARGUMENT, "unknown format '" + f + "' (expected text, csv or json)");
  });
}

cardmpc_status cardmpc_run_create(const cardmpc_run_config* config, cardmpc_run** out) {
  return guarded([&] {
    if (config == nullptr || out == nullptr) return set_error(CARDMPC_E_INVALID_ARGUMENT, "config and out are required");
    *out = nullptr;
    if (config->input_count > 0 && config->inputs == nullptr) {
      return set_error(CARDMPC_E_INVALID_ARGUMENT, "inputs must not be NULL");
    }
    if (config->use_script && config->script_len > 0 && config->script == nullptr) {
      return set_error(CARDMPC_E_INVALID_ARGUMENT, "script must not be NULL");
    }
    ProtocolConfig cfg{parse_protocol(required(config->protocol, "protocol")),
                       Scheme::parse(required(config->scheme, "scheme"), config->n), config->optimized != 0};
    std::vector<int> inputs(config->inputs, config->inputs + config->input_count);
    auto rng = config->use_script
                   ? RandomSource::enumerating(std::vector<int>(config->script, config->script + config->script_len))
                   : RandomSource::seeded(config->seed);
    *out = new cardmpc_run{run_protocol(cfg, inputs, rng)};
    return CARDMPC_OK;
  });
}

void cardmpc_run_destroy(cardmpc_run* run) { delete run; }

size_t cardmpc_run_result_count(const cardmpc_run* run) { return run ? run->run.results.size() : 0; }

int cardmpc_run_result(const cardmpc_run* run, size_t index) {
  if (run == nullptr || index >= run->run.results.size()) return -1;
  return run->run.results[index];
}

int cardmpc_run_peak(const cardmpc_run* run) { return run ? run->run.budget.peak_total() : -1; }

size_t cardmpc_run_output_count(const cardmpc_run* run) { return run ? run->run.outputs.size() : 0; }

cardmpc_status cardmpc_run_output(const cardmpc_run* run, size_t index, char* buf, size_t cap, size_t* len) {
  return guarded([&] {
    if (run == nullptr || index >= run->run.outputs.size()) {
      return set_error(CARDMPC_E_INVALID_ARGUMENT, "no such output");
    }
    return write_string(run->run.outputs[index].to_string(), buf, cap, len);
  });
}

cardmpc_status cardmpc_run_trace_jsonl(const cardmpc_run* run, char* buf, size_t cap, size_t* len) {
  return guarded([&] {
    if (run == nullptr) return set_error(CARDMPC_E_INVALID_ARGUMENT, "run must not be NULL");
    return write_string(run->run.trace.to_jsonl(), buf, cap, len);
  });
}

cardmpc_status cardmpc_verify(const cardmpc_verify_config* config, cardmpc_report** out) {
  return guarded([&] {
    if (config == nullptr || out == nullptr) return set_error(CARDMPC_E_INVALID_ARGUMENT, "config and out are required");
    *out = nullptr;
    ProtocolConfig cfg{parse_protocol(required(config->protocol, "protocol")),
                       Scheme::parse(required(config->scheme, "scheme"), config->n), config->optimized != 0};
    VerifyOptions opt;
    opt.mode = config->sampled ? VerifyOptions::Mode::Sampled : VerifyOptions::Mode::Exhaustive;
    if (config->trials) opt.trials = config->trials;
    opt.seed = config->seed;
    if (config->branch_cap) opt.branch_cap = config->branch_cap;
    *out = new cardmpc_report{
        verify(make_target(cfg), opt, config->check_correctness != 0, config->check_security != 0)};
    return CARDMPC_OK;
  });
}

void cardmpc_report_destroy(cardmpc_report* report) { delete report; }

int cardmpc_report_passed(const cardmpc_report* report) { return report && report->report.passed() ? 1 : 0; }

uint64_t cardmpc_report_branches(const cardmpc_report* report) { return report ? report->report.branches : 0; }

cardmpc_status cardmpc_report_json(const cardmpc_report* report, char* buf, size_t cap, size_t* len) {
  return guarded([&] {
    if (report == nullptr) return set_error(CARDMPC_E_INVALID_ARGUMENT, "report must not be NULL");
    return write_string(report->report.to_json(), buf, cap, len);
  });
}

}  // extern "C"
