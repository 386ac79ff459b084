/*
 * C interface to the card-protocol simulator.
 *
 * All objects are opaque handles released with the matching _destroy call.
 * Every fallible call returns a cardmpc_status; on failure a message for the
 * calling thread is available from cardmpc_last_error().
 *
 * Strings are returned through caller buffers: pass `buf`/`cap` and receive
 * the string length (excluding the terminator) in `*len`. When `buf` is NULL
 * or `cap <= *len` nothing is written and CARDMPC_E_BUFFER_TOO_SMALL is
 * returned, so a NULL first call sizes the buffer.
 *
 * Scheme names: "direct", "binary", "crt".
 * Protocol names: "five-card-trick", "copy", "add", "mult".
 */
#ifndef CARDMPC_H
#define CARDMPC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CARDMPC_BUILDING)
#    define CARDMPC_API __declspec(dllexport)
#  else
#    define CARDMPC_API __declspec(dllimport)
#  endif
#else
#  define CARDMPC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cardmpc_status {
  CARDMPC_OK = 0,
  CARDMPC_E_DOMAIN = 1,
  CARDMPC_E_MALFORMED_ENCODING = 2,
  CARDMPC_E_SCHEME_INAPPLICABLE = 3,
  CARDMPC_E_SCRIPT_MISMATCH = 4,
  CARDMPC_E_STATE = 5,
  CARDMPC_E_INSUFFICIENT_SUPPLY = 6,
  CARDMPC_E_UNSUPPORTED_EXECUTION = 7,
  CARDMPC_E_BRANCH_CAP_EXCEEDED = 8,
  CARDMPC_E_SCHEME_MISMATCH = 9,
  CARDMPC_E_INVALID_ARGUMENT = 100,
  CARDMPC_E_BUFFER_TOO_SMALL = 101,
  CARDMPC_E_INTERNAL = 102
} cardmpc_status;

CARDMPC_API const char* cardmpc_version(void);
CARDMPC_API const char* cardmpc_status_name(cardmpc_status status);
CARDMPC_API const char* cardmpc_last_error(void);

/* ---- encodings ---- */

/* Face-up view of the commitment to `value`, parts separated by '|'. */
CARDMPC_API cardmpc_status cardmpc_encode(const char* scheme, int n, int value, char* buf, size_t cap,
                                          size_t* len);
CARDMPC_API cardmpc_status cardmpc_decode(const char* scheme, int n, const char* symbols, int* value);
CARDMPC_API cardmpc_status cardmpc_commitment_width(const char* scheme, int n, int* width);

/* ---- card counts ---- */

CARDMPC_API cardmpc_status cardmpc_count_cards(const char* scheme, int n, const char* protocol, int optimized,
                                               int* cards);
/* 1 if the protocol is count-only for this scheme, 0 otherwise. */
CARDMPC_API cardmpc_status cardmpc_count_only(const char* scheme, int n, const char* protocol, int* count_only);
/* format: "text", "csv" or "json". */
CARDMPC_API cardmpc_status cardmpc_tables(const char* format, char* buf, size_t cap, size_t* len);

/* ---- protocol runs ---- */

typedef struct cardmpc_run_config {
  const char* protocol;
  const char* scheme;
  int n;
  const int* inputs;
  size_t input_count;
  int optimized;     /* crt mult only; nonzero reuses freed cards across parts */
  int use_script;    /* nonzero: enumerate `script`; zero: sample with `seed` */
  const int* script;
  size_t script_len;
  uint64_t seed;
} cardmpc_run_config;

typedef struct cardmpc_run cardmpc_run;

CARDMPC_API cardmpc_status cardmpc_run_create(const cardmpc_run_config* config, cardmpc_run** out);
CARDMPC_API void cardmpc_run_destroy(cardmpc_run* run);

/* Decoded outputs (copy: two values; five-card trick: a AND b). */
CARDMPC_API size_t cardmpc_run_result_count(const cardmpc_run* run);
CARDMPC_API int cardmpc_run_result(const cardmpc_run* run, size_t index);
CARDMPC_API int cardmpc_run_peak(const cardmpc_run* run);
CARDMPC_API size_t cardmpc_run_output_count(const cardmpc_run* run);
CARDMPC_API cardmpc_status cardmpc_run_output(const cardmpc_run* run, size_t index, char* buf, size_t cap,
                                              size_t* len);
/* One JSON object per trace event: {"step","kind","payload"}. */
CARDMPC_API cardmpc_status cardmpc_run_trace_jsonl(const cardmpc_run* run, char* buf, size_t cap, size_t* len);

/* ---- verification ---- */

typedef struct cardmpc_verify_config {
  const char* protocol;
  const char* scheme;
  int n;
  int optimized;
  int sampled;          /* zero: exhaustive */
  uint64_t trials;      /* sampled mode */
  uint64_t seed;        /* sampled mode */
  uint64_t branch_cap;  /* zero: library default */
  int check_correctness;
  int check_security;
} cardmpc_verify_config;

typedef struct cardmpc_report cardmpc_report;

CARDMPC_API cardmpc_status cardmpc_verify(const cardmpc_verify_config* config, cardmpc_report** out);
CARDMPC_API void cardmpc_report_destroy(cardmpc_report* report);
CARDMPC_API int cardmpc_report_passed(const cardmpc_report* report);
CARDMPC_API uint64_t cardmpc_report_branches(const cardmpc_report* report);
CARDMPC_API cardmpc_status cardmpc_report_json(const cardmpc_report* report, char* buf, size_t cap, size_t* len);

#ifdef __cplusplus
}
#endif

#endif /* CARDMPC_H */
