#include <gtest/gtest.h>

#include <json.hpp>
#include <string>
#include <thread>
#include <vector>

#include "cardmpc/cardmpc.h"

namespace {

std::string encode(const char* scheme, int n, int a) {
  size_t len = 0;
  EXPECT_EQ(cardmpc_encode(scheme, n, a, nullptr, 0, &len), CARDMPC_E_BUFFER_TOO_SMALL);
  std::string buf(len + 1, '\0');
  EXPECT_EQ(cardmpc_encode(scheme, n, a, buf.data(), buf.size(), &len), CARDMPC_OK);
  buf.resize(len);
  return buf;
}

cardmpc_run_config config(const char* protocol, const char* scheme, int n, const std::vector<int>& inputs) {
  cardmpc_run_config c{};
  c.protocol = protocol;
  c.scheme = scheme;
  c.n = n;
  c.inputs = inputs.data();
  c.input_count = inputs.size();
  c.optimized = 1;
  return c;
}

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(cardmpc_version(), "1.0.0");
  EXPECT_STREQ(cardmpc_status_name(CARDMPC_OK), "ok");
  EXPECT_STREQ(cardmpc_status_name(CARDMPC_E_INSUFFICIENT_SUPPLY), "insufficient supply");
  EXPECT_STREQ(cardmpc_status_name(static_cast<cardmpc_status>(55)), "unknown status");
}

TEST(CApi, EncodeDecode) {
  EXPECT_EQ(encode("crt", 6, 2), "CH|HHC");
  EXPECT_EQ(encode("direct", 6, 0), "CHHHHH");
  int v = -1;
  EXPECT_EQ(cardmpc_decode("crt", 6, "HC|HHC", &v), CARDMPC_OK);
  EXPECT_EQ(v, 5);
  EXPECT_EQ(cardmpc_decode("binary", 6, "HC|HC|HC", &v), CARDMPC_E_MALFORMED_ENCODING);
  EXPECT_NE(std::string(cardmpc_last_error()), "");
  int w = 0;
  EXPECT_EQ(cardmpc_commitment_width("crt", 12, &w), CARDMPC_OK);
  EXPECT_EQ(w, 7);
}

TEST(CApi, ErrorsMapToStatuses) {
  size_t len = 0;
  char buf[64];
  EXPECT_EQ(cardmpc_encode("crt", 6, 6, buf, sizeof buf, &len), CARDMPC_E_DOMAIN);
  EXPECT_EQ(cardmpc_encode("crt", 8, 1, buf, sizeof buf, &len), CARDMPC_E_SCHEME_INAPPLICABLE);
  EXPECT_EQ(cardmpc_encode(nullptr, 6, 1, buf, sizeof buf, &len), CARDMPC_E_DOMAIN);
  EXPECT_EQ(cardmpc_decode("crt", 6, "CH", nullptr), CARDMPC_E_INVALID_ARGUMENT);
  EXPECT_EQ(cardmpc_tables("xml", buf, sizeof buf, &len), CARDMPC_E_INVALID_ARGUMENT);
}

TEST(CApi, BufferExactlyTooSmall) {
  size_t len = 0;
  char buf[6];
  // "CH|HHC" needs 7 bytes with the terminator.
  EXPECT_EQ(cardmpc_encode("crt", 6, 2, buf, sizeof buf, &len), CARDMPC_E_BUFFER_TOO_SMALL);
  EXPECT_EQ(len, 6U);
}

TEST(CApi, Counts) {
  int c = 0;
  EXPECT_EQ(cardmpc_count_cards("crt", 6, "mult", 1, &c), CARDMPC_OK);
  EXPECT_EQ(c, 14);
  EXPECT_EQ(cardmpc_count_cards("crt", 6, "mult", 0, &c), CARDMPC_OK);
  EXPECT_EQ(c, 16);
  EXPECT_EQ(cardmpc_count_cards("binary", 6, "add", 1, &c), CARDMPC_OK);
  EXPECT_EQ(c, 22);
  EXPECT_EQ(cardmpc_count_cards("crt", 6, "five-card-trick", 1, &c), CARDMPC_E_DOMAIN);
  int only = -1;
  EXPECT_EQ(cardmpc_count_only("binary", 6, "mult", &only), CARDMPC_OK);
  EXPECT_EQ(only, 1);

  size_t len = 0;
  ASSERT_EQ(cardmpc_tables("csv", nullptr, 0, &len), CARDMPC_E_BUFFER_TOO_SMALL);
  std::string csv(len + 1, '\0');
  ASSERT_EQ(cardmpc_tables("csv", csv.data(), csv.size(), &len), CARDMPC_OK);
  EXPECT_NE(csv.find("18,crt,31,22,92,add\n"), std::string::npos);
}

TEST(CApi, RunWithScript) {
  const std::vector<int> inputs{0, 3}, script{2};
  auto cfg = config("add", "direct", 6, inputs);
  cfg.use_script = 1;
  cfg.script = script.data();
  cfg.script_len = script.size();
  cardmpc_run* run = nullptr;
  ASSERT_EQ(cardmpc_run_create(&cfg, &run), CARDMPC_OK);
  ASSERT_EQ(cardmpc_run_result_count(run), 1U);
  EXPECT_EQ(cardmpc_run_result(run, 0), 3);
  EXPECT_EQ(cardmpc_run_result(run, 1), -1);
  EXPECT_EQ(cardmpc_run_peak(run), 12);
  ASSERT_EQ(cardmpc_run_output_count(run), 1U);
  char buf[32];
  size_t len = 0;
  ASSERT_EQ(cardmpc_run_output(run, 0, buf, sizeof buf, &len), CARDMPC_OK);
  EXPECT_STREQ(buf, "HHHCHH");

  size_t tlen = 0;
  ASSERT_EQ(cardmpc_run_trace_jsonl(run, nullptr, 0, &tlen), CARDMPC_E_BUFFER_TOO_SMALL);
  std::string trace(tlen + 1, '\0');
  ASSERT_EQ(cardmpc_run_trace_jsonl(run, trace.data(), trace.size(), &tlen), CARDMPC_OK);
  trace.resize(tlen);
  const auto first = nlohmann::json::parse(trace.substr(0, trace.find('\n')));
  EXPECT_EQ(first["step"], 0);
  cardmpc_run_destroy(run);
}

TEST(CApi, RunErrors) {
  const std::vector<int> inputs{1, 2};
  auto cfg = config("add", "binary", 6, inputs);
  cardmpc_run* run = reinterpret_cast<cardmpc_run*>(0x1);
  EXPECT_EQ(cardmpc_run_create(&cfg, &run), CARDMPC_E_UNSUPPORTED_EXECUTION);
  EXPECT_EQ(run, nullptr);
  EXPECT_NE(std::string(cardmpc_last_error()).find("count-only"), std::string::npos);

  cfg = config("mult", "direct", 3, inputs);
  cfg.use_script = 1;
  EXPECT_EQ(cardmpc_run_create(&cfg, &run), CARDMPC_E_SCRIPT_MISMATCH);
  EXPECT_EQ(cardmpc_run_create(nullptr, &run), CARDMPC_E_INVALID_ARGUMENT);
  cardmpc_run_destroy(nullptr);
}

TEST(CApi, VerifyReport) {
  cardmpc_verify_config cfg{};
  cfg.protocol = "mult";
  cfg.scheme = "crt";
  cfg.n = 6;
  cfg.optimized = 1;
  cfg.check_correctness = 1;
  cfg.check_security = 1;
  cardmpc_report* rep = nullptr;
  ASSERT_EQ(cardmpc_verify(&cfg, &rep), CARDMPC_OK);
  EXPECT_EQ(cardmpc_report_passed(rep), 1);
  EXPECT_EQ(cardmpc_report_branches(rep), 648U);
  size_t len = 0;
  ASSERT_EQ(cardmpc_report_json(rep, nullptr, 0, &len), CARDMPC_E_BUFFER_TOO_SMALL);
  std::string json(len + 1, '\0');
  ASSERT_EQ(cardmpc_report_json(rep, json.data(), json.size(), &len), CARDMPC_OK);
  json.resize(len);
  EXPECT_EQ(nlohmann::json::parse(json)["branches"], 648);
  cardmpc_report_destroy(rep);

  cfg.n = 7;
  cfg.scheme = "direct";
  cfg.branch_cap = 10;
  EXPECT_EQ(cardmpc_verify(&cfg, &rep), CARDMPC_E_BRANCH_CAP_EXCEEDED);
}

TEST(CApi, LastErrorIsPerThread) {
  size_t len = 0;
  char buf[8];
  ASSERT_EQ(cardmpc_encode("crt", 6, 9, buf, sizeof buf, &len), CARDMPC_E_DOMAIN);
  const std::string mine = cardmpc_last_error();
  std::string other = "unset";
  std::thread([&] { other = cardmpc_last_error(); }).join();
  EXPECT_EQ(other, "");
  EXPECT_EQ(std::string(cardmpc_last_error()), mine);
}
