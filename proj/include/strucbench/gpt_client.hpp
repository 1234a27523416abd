#ifndef STRUCBENCH_GPT_CLIENT_HPP
#define STRUCBENCH_GPT_CLIENT_HPP

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace strucbench {

struct ChatEndpointConfig {
  // Full URL of the chat-completions endpoint, e.g.
  // "https://api.example.com/v1/chat/completions".
  std::string base_url;
  std::string model_name;
  // Environment variable holding the bearer token; unset means no auth header.
  std::string auth_token_env = "STRUCBENCH_API_KEY";
  std::chrono::milliseconds timeout{60'000};
  int max_retries = 3;
  int max_in_flight = 4;
  std::chrono::milliseconds backoff_base{500};
  double temperature = 0.0;

  // Throws std::invalid_argument.
  void validate() const;
};

struct ChatMessage {
  std::string role;
  std::string content;
};

struct ChatRequest {
  std::string model;
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
};

// {"model", "messages": [{"role", "content"}], "temperature"}
nlohmann::json to_wire(const ChatRequest& request);

// Content of the first choice's message. Throws TransportError when the body
// does not have that shape.
std::string content_from_wire(std::string_view body);

class TransportError : public std::runtime_error {
 public:
  TransportError(const std::string& what, bool retryable)
      : std::runtime_error(what), retryable_(retryable) {}
  bool retryable() const { return retryable_; }

 private:
  bool retryable_;
};

class MalformedResponse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EndpointUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One request/response exchange. Implementations must be thread-safe.
class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  virtual std::string complete(const ChatRequest& request) = 0;
};

class HttpChatTransport : public ChatTransport {
 public:
  explicit HttpChatTransport(ChatEndpointConfig config);
  std::string complete(const ChatRequest& request) override;

 private:
  ChatEndpointConfig config_;
  std::string scheme_host_port_;
  std::string path_;
};

// Serves responses from a transcript of {"prompt", "response"} JSON lines,
// keyed by the last message's content. Repeated prompts consume their
// recorded responses in order and then keep returning the last one.
class ReplayTransport : public ChatTransport {
 public:
  explicit ReplayTransport(const std::filesystem::path& transcript);
  std::string complete(const ChatRequest& request) override;

 private:
  std::mutex mutex_;
  std::map<std::string, std::vector<std::string>> responses_;
  std::map<std::string, std::size_t> served_;
};

// Forwards to `inner` and appends every successful exchange to a transcript
// readable by ReplayTransport.
class RecordingTransport : public ChatTransport {
 public:
  RecordingTransport(std::shared_ptr<ChatTransport> inner, std::filesystem::path transcript);
  std::string complete(const ChatRequest& request) override;

 private:
  std::shared_ptr<ChatTransport> inner_;
  std::filesystem::path transcript_;
  std::mutex mutex_;
};

// Shared client: at most max_in_flight concurrent transport calls, and at
// most 1 + max_retries attempts per prompt with exponential backoff
// (backoff_base * 2^k before retry k+1).
class ChatClient {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  ChatClient(ChatEndpointConfig config, std::shared_ptr<ChatTransport> transport,
             Sleeper sleeper = {});

  // Sends `prompt` as a single user message. `accept` may throw
  // MalformedResponse to reject a response, which then counts as a failed
  // attempt. Throws EndpointUnavailable once attempts are exhausted or on a
  // non-retryable transport error.
  std::string complete(const std::string& prompt,
                       const std::function<void(const std::string&)>& accept = {});

  std::size_t request_count() const { return requests_.load(); }
  const ChatEndpointConfig& config() const { return config_; }

 private:
  std::string send(const ChatRequest& request);

  ChatEndpointConfig config_;
  std::shared_ptr<ChatTransport> transport_;
  Sleeper sleeper_;
  std::atomic<std::size_t> requests_{0};
  std::mutex slots_mutex_;
  std::condition_variable slots_cv_;
  int in_flight_ = 0;
};

struct GptScorePair {
  double content_similarity = 0.0;
  double structural_similarity = 0.0;
  friend bool operator==(const GptScorePair&, const GptScorePair&) = default;
};

struct ParsedGptScore {
  GptScorePair pair;
  std::vector<std::string> diagnostics;
};

// Takes the last JSON object in `response` that has both score keys, fenced
// or not; values are clamped into [0, 10]. Objects that are not strict JSON
// (the requested example omits the comma between keys) are read key by key.
// Throws MalformedResponse.
ParsedGptScore parse_gptscore_response(std::string_view response);

enum class GptScoreStatus { kFull, kPartial };

struct GptScoreResult {
  GptScorePair pair;
  GptScoreStatus status = GptScoreStatus::kFull;
  std::vector<std::string> diagnostics;
};

// Queries (pred, gold) and (gold, pred) and averages the two pairs. When
// only one order succeeds the result is kPartial and carries that order's
// pair. Throws EndpointUnavailable when both fail.
GptScoreResult gptscore(std::string_view pred, std::string_view gold, ChatClient& client);

}  // namespace strucbench

#endif  // STRUCBENCH_GPT_CLIENT_HPP
