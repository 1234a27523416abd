#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "doctest.h"
#include "httplib.h"
#include "strucbench/gpt_client.hpp"
#include "strucbench/prompts.hpp"

using namespace strucbench;
using namespace std::chrono_literals;

namespace {

std::string read_golden(const char* name) {
  std::ifstream in(std::string(STRUCBENCH_GOLDEN_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
  return s;
}

std::string score_json(double content, double structure) {
  std::ostringstream out;
  out << "Reasoning...\n```json\n{\"content_similarity\": " << content
      << ", \"structural_similarity\": " << structure << "}\n```";
  return out.str();
}

// Replies from a fixed script in call order, failing when `fail` says so.
class ScriptedTransport : public ChatTransport {
 public:
  explicit ScriptedTransport(std::vector<std::string> replies) : replies_(std::move(replies)) {}

  std::string complete(const ChatRequest& request) override {
    std::lock_guard lock(mutex_);
    prompts.push_back(request.messages.back().content);
    const std::size_t k = calls++;
    if (k < failures_before_success) throw TransportError("scripted outage", retryable);
    const std::size_t i = k - failures_before_success;
    return replies_[std::min(i, replies_.size() - 1)];
  }

  std::size_t failures_before_success = 0;
  bool retryable = true;
  std::size_t calls = 0;
  std::vector<std::string> prompts;

 private:
  std::mutex mutex_;
  std::vector<std::string> replies_;
};

ChatEndpointConfig test_config() {
  ChatEndpointConfig c;
  c.base_url = "http://127.0.0.1:1/v1/chat/completions";
  c.model_name = "judge";
  c.backoff_base = 10ms;
  return c;
}

struct SleepLog {
  std::vector<std::chrono::milliseconds> sleeps;
  ChatClient::Sleeper sleeper() {
    return [this](std::chrono::milliseconds d) { sleeps.push_back(d); };
  }
};

}  // namespace

TEST_CASE("gptscore prompt matches the transcription") {
  const std::string t1 = "| a | b |\n| 1 | 2 |";
  const std::string t2 = "| a | b |\n| 1 | 3 |";
  const std::string expected = replace_all(
      replace_all(read_golden("gptscore_prompt_template.txt"), "{input1}", t1), "{input2}", t2);
  CHECK(build_gptscore_prompt(t1, t2) == expected);
}

TEST_CASE("description prompts match the transcriptions") {
  const std::string payload = "<table><tr><td>1</td></tr></table>";
  CHECK(build_description_prompt(TableFormat::kRawText, payload) ==
        read_golden("describe_raw_text.txt") + "\n\n" + payload);
  CHECK(build_description_prompt(TableFormat::kHtml, payload) ==
        read_golden("describe_html.txt") + "\n\n" + payload);
  CHECK(build_description_prompt(TableFormat::kLatex, payload) ==
        read_golden("describe_latex.txt") + "\n\n" + payload);
}

TEST_CASE("response parsing") {
  CHECK(parse_gptscore_response(score_json(8, 6)).pair == GptScorePair{8, 6});
  // The example in the prompt has no comma between the keys.
  CHECK(parse_gptscore_response("{\n  \"content_similarity\": 7\n  \"structural_similarity\": 5.5\n}")
            .pair == GptScorePair{7, 5.5});
  // Last qualifying object wins; objects without both keys are skipped.
  CHECK(parse_gptscore_response(
            "{\"content_similarity\": 1, \"structural_similarity\": 1} then "
            "{\"note\": \"}\"} final {\"content_similarity\": \"9\", \"structural_similarity\": 4}")
            .pair == GptScorePair{9, 4});
  const ParsedGptScore clamped =
      parse_gptscore_response("{\"content_similarity\": 12, \"structural_similarity\": -1}");
  CHECK(clamped.pair == GptScorePair{10, 0});
  CHECK(clamped.diagnostics.size() == 2);
  CHECK_THROWS_AS(parse_gptscore_response("no scores here"), MalformedResponse);
  CHECK_THROWS_AS(parse_gptscore_response("{\"content_similarity\": 3}"), MalformedResponse);
  CHECK_THROWS_AS(parse_gptscore_response("{\"content_similarity\": \"high\", "
                                          "\"structural_similarity\": 3}"),
                  MalformedResponse);
}

TEST_CASE("wire format") {
  const ChatRequest r{"m", {{"user", "hi"}}, 0.0};
  const nlohmann::json j = to_wire(r);
  CHECK(j["model"] == "m");
  CHECK(j["messages"][0]["role"] == "user");
  CHECK(j["messages"][0]["content"] == "hi");
  CHECK(j["temperature"] == 0.0);
  CHECK(content_from_wire(R"({"choices":[{"message":{"role":"assistant","content":"ok"}}]})") == "ok");
  CHECK_THROWS_AS(content_from_wire("{}"), TransportError);
}

TEST_CASE("gptscore averages both orders") {
  auto fake = std::make_shared<ScriptedTransport>(
      std::vector<std::string>{score_json(8, 6), score_json(6, 6)});
  ChatClient client(test_config(), fake);
  const GptScoreResult r = gptscore("PRED", "GOLD", client);
  CHECK(r.pair == GptScorePair{7.0, 6.0});
  CHECK(r.status == GptScoreStatus::kFull);
  REQUIRE(fake->prompts.size() == 2);
  CHECK(fake->prompts[0] == build_gptscore_prompt("PRED", "GOLD"));
  CHECK(fake->prompts[1] == build_gptscore_prompt("GOLD", "PRED"));
}

TEST_CASE("gptscore is symmetric in its arguments for an order-blind judge") {
  auto fake = std::make_shared<ScriptedTransport>(std::vector<std::string>{score_json(5, 3)});
  ChatClient client(test_config(), fake);
  CHECK(gptscore("A", "B", client).pair == gptscore("B", "A", client).pair);
}

TEST_CASE("retries are bounded and back off exponentially") {
  auto fake = std::make_shared<ScriptedTransport>(std::vector<std::string>{score_json(8, 8)});
  fake->failures_before_success = 100;
  SleepLog log;
  ChatClient client(test_config(), fake, log.sleeper());
  CHECK_THROWS_AS(client.complete("p"), EndpointUnavailable);
  CHECK(fake->calls == 4);  // 1 + max_retries
  CHECK(log.sleeps == std::vector<std::chrono::milliseconds>{10ms, 20ms, 40ms});
}

TEST_CASE("a transient failure is retried") {
  auto fake = std::make_shared<ScriptedTransport>(std::vector<std::string>{score_json(8, 8)});
  fake->failures_before_success = 2;
  SleepLog log;
  ChatClient client(test_config(), fake, log.sleeper());
  CHECK(client.complete("p") == score_json(8, 8));
  CHECK(client.request_count() == 3);
}

TEST_CASE("non-retryable failures stop immediately") {
  auto fake = std::make_shared<ScriptedTransport>(std::vector<std::string>{score_json(8, 8)});
  fake->failures_before_success = 100;
  fake->retryable = false;
  SleepLog log;
  ChatClient client(test_config(), fake, log.sleeper());
  CHECK_THROWS_AS(client.complete("p"), EndpointUnavailable);
  CHECK(fake->calls == 1);
  CHECK(log.sleeps.empty());
}

TEST_CASE("malformed responses consume the retry budget") {
  auto fake = std::make_shared<ScriptedTransport>(
      std::vector<std::string>{"no json", "still none", score_json(4, 2)});
  SleepLog log;
  ChatClient client(test_config(), fake, log.sleeper());
  const GptScoreResult r = gptscore("a", "b", client);
  CHECK(r.pair == GptScorePair{4, 2});
  CHECK(fake->calls == 4);
}

TEST_CASE("one failed order gives a partial result, two raise") {
  auto fake = std::make_shared<ScriptedTransport>(std::vector<std::string>{score_json(9, 7)});
  fake->failures_before_success = 4;  // exhausts the first order only
  SleepLog log;
  ChatClient client(test_config(), fake, log.sleeper());
  const GptScoreResult r = gptscore("a", "b", client);
  CHECK(r.status == GptScoreStatus::kPartial);
  CHECK(r.pair == GptScorePair{9, 7});

  auto down = std::make_shared<ScriptedTransport>(std::vector<std::string>{score_json(1, 1)});
  down->failures_before_success = 1000;
  ChatClient dead(test_config(), down, log.sleeper());
  CHECK_THROWS_AS(gptscore("a", "b", dead), EndpointUnavailable);
}

namespace {

class SlowCountingTransport : public ChatTransport {
 public:
  std::string complete(const ChatRequest&) override {
    const int now = ++active;
    int seen = peak.load();
    while (now > seen && !peak.compare_exchange_weak(seen, now)) {
    }
    std::this_thread::sleep_for(5ms);
    --active;
    return "{\"content_similarity\": 5, \"structural_similarity\": 5}";
  }
  std::atomic<int> active{0};
  std::atomic<int> peak{0};
};

}  // namespace

TEST_CASE("concurrent requests respect max_in_flight") {
  auto slow = std::make_shared<SlowCountingTransport>();
  ChatEndpointConfig config = test_config();
  config.max_in_flight = 2;
  ChatClient client(config, slow);
  std::vector<std::thread> workers;
  for (int i = 0; i < 8; ++i) {
    workers.emplace_back([&] {
      for (int k = 0; k < 5; ++k) client.complete("p");
    });
  }
  for (auto& w : workers) w.join();
  CHECK(slow->peak.load() <= 2);
  CHECK(slow->peak.load() >= 1);
  CHECK(client.request_count() == 40);
}

TEST_CASE("config validation") {
  ChatEndpointConfig c = test_config();
  c.max_in_flight = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = test_config();
  c.max_retries = -1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("record then replay") {
  const auto path = std::filesystem::temp_directory_path() / "strucbench_transcript.jsonl";
  std::filesystem::remove(path);
  auto fake = std::make_shared<ScriptedTransport>(
      std::vector<std::string>{score_json(8, 6), score_json(6, 6)});
  {
    ChatClient recording(test_config(), std::make_shared<RecordingTransport>(fake, path));
    CHECK(gptscore("P", "G", recording).pair == GptScorePair{7, 6});
  }
  ChatClient replaying(test_config(), std::make_shared<ReplayTransport>(path));
  CHECK(gptscore("P", "G", replaying).pair == GptScorePair{7, 6});
  SleepLog log;
  ChatClient unknown(test_config(), std::make_shared<ReplayTransport>(path), log.sleeper());
  CHECK_THROWS_AS(unknown.complete("never recorded"), EndpointUnavailable);
  std::filesystem::remove(path);
}

TEST_CASE("http transport against a loopback server") {
  httplib::Server server;
  std::atomic<int> hits{0};
  std::string auth_seen;
  std::mutex auth_mutex;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    const int n = ++hits;
    {
      std::lock_guard lock(auth_mutex);
      auth_seen = req.get_header_value("Authorization");
    }
    const nlohmann::json body = nlohmann::json::parse(req.body);
    if (body["messages"][0]["content"] == "forbidden") {
      res.status = 403;
      return;
    }
    if (n == 1) {
      res.status = 503;
      return;
    }
    const nlohmann::json reply = {
        {"choices", {{{"message", {{"role", "assistant"}, {"content", "echo:" + body["model"].get<std::string>()}}}}}}};
    res.set_content(reply.dump(), "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  ::setenv("STRUCBENCH_TEST_TOKEN", "sekret", 1);
  ChatEndpointConfig config = test_config();
  config.base_url = "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
  config.auth_token_env = "STRUCBENCH_TEST_TOKEN";
  config.timeout = 5000ms;
  SleepLog log;
  ChatClient client(config, std::make_shared<HttpChatTransport>(config), log.sleeper());
  CHECK(client.complete("hello") == "echo:judge");
  CHECK(hits.load() == 2);  // 503 retried once
  {
    std::lock_guard lock(auth_mutex);
    CHECK(auth_seen == "Bearer sekret");
  }
  hits = 10;
  CHECK_THROWS_AS(client.complete("forbidden"), EndpointUnavailable);
  CHECK(hits.load() == 11);  // 403 not retried

  server.stop();
  thread.join();
}
