#include "strucbench/gpt_client.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <regex>
#include <thread>

#include "httplib.h"
#include "strucbench/prompts.hpp"

namespace strucbench {

void ChatEndpointConfig::validate() const {
  if (timeout.count() <= 0) throw std::invalid_argument("timeout must be positive");
  if (max_retries < 0) throw std::invalid_argument("max_retries must be >= 0");
  if (max_in_flight < 1) throw std::invalid_argument("max_in_flight must be >= 1");
}

nlohmann::json to_wire(const ChatRequest& request) {
  nlohmann::json messages = nlohmann::json::array();
  for (const ChatMessage& m : request.messages) {
    messages.push_back({{"role", m.role}, {"content", m.content}});
  }
  return {{"model", request.model}, {"messages", messages}, {"temperature", request.temperature}};
}

std::string content_from_wire(std::string_view body) {
  const nlohmann::json doc = nlohmann::json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_object() && doc.contains("choices") && doc["choices"].is_array() &&
      !doc["choices"].empty()) {
    const nlohmann::json& choice = doc["choices"][0];
    if (choice.contains("message") && choice["message"].contains("content") &&
        choice["message"]["content"].is_string()) {
      return choice["message"]["content"].get<std::string>();
    }
  }
  throw TransportError("response has no choices[0].message.content", /*retryable=*/true);
}

// --- HttpChatTransport -----------------------------------------------------

HttpChatTransport::HttpChatTransport(ChatEndpointConfig config) : config_(std::move(config)) {
  config_.validate();
  const std::string& url = config_.base_url;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw std::invalid_argument("endpoint URL needs a scheme: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
}

std::string HttpChatTransport::complete(const ChatRequest& request) {
  httplib::Client client(scheme_host_port_);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  httplib::Headers headers;
  if (const char* token = std::getenv(config_.auth_token_env.c_str()); token && *token) {
    headers.emplace("Authorization", std::string("Bearer ") + token);
  }
  const auto result = client.Post(path_, headers, to_wire(request).dump(), "application/json");
  if (!result) {
    throw TransportError("request failed: " + httplib::to_string(result.error()), true);
  }
  if (result->status != 200) {
    const bool retryable = result->status == 408 || result->status == 429 || result->status >= 500;
    throw TransportError("HTTP " + std::to_string(result->status), retryable);
  }
  return content_from_wire(result->body);
}

// --- Record / replay ---------------------------------------------------------

namespace {

const std::string& last_content(const ChatRequest& request) {
  static const std::string kEmpty;
  return request.messages.empty() ? kEmpty : request.messages.back().content;
}

}  // namespace

ReplayTransport::ReplayTransport(const std::filesystem::path& transcript) {
  std::ifstream in(transcript);
  if (!in) throw std::runtime_error("cannot open transcript " + transcript.string());
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const nlohmann::json doc = nlohmann::json::parse(line, nullptr, false);
    if (!doc.is_object() || !doc.contains("prompt") || !doc.contains("response") ||
        !doc["prompt"].is_string() || !doc["response"].is_string()) {
      throw std::runtime_error(transcript.string() + ":" + std::to_string(number) +
                               ": expected {\"prompt\", \"response\"}");
    }
    responses_[doc["prompt"].get<std::string>()].push_back(doc["response"].get<std::string>());
  }
}

std::string ReplayTransport::complete(const ChatRequest& request) {
  std::lock_guard lock(mutex_);
  const auto it = responses_.find(last_content(request));
  if (it == responses_.end()) {
    throw TransportError("prompt not found in transcript", /*retryable=*/false);
  }
  std::size_t& next = served_[it->first];
  const std::string& response = it->second[std::min(next, it->second.size() - 1)];
  ++next;
  return response;
}

RecordingTransport::RecordingTransport(std::shared_ptr<ChatTransport> inner,
                                       std::filesystem::path transcript)
    : inner_(std::move(inner)), transcript_(std::move(transcript)) {}

std::string RecordingTransport::complete(const ChatRequest& request) {
  std::string response = inner_->complete(request);
  const nlohmann::json entry = {{"prompt", last_content(request)}, {"response", response}};
  std::lock_guard lock(mutex_);
  std::ofstream out(transcript_, std::ios::app);
  out << entry.dump() << '\n';
  return response;
}

// --- ChatClient ----------------------------------------------------------------

ChatClient::ChatClient(ChatEndpointConfig config, std::shared_ptr<ChatTransport> transport,
                       Sleeper sleeper)
    : config_(std::move(config)), transport_(std::move(transport)), sleeper_(std::move(sleeper)) {
  config_.validate();
  if (!transport_) throw std::invalid_argument("ChatClient needs a transport");
  if (!sleeper_) sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

std::string ChatClient::send(const ChatRequest& request) {
  {
    std::unique_lock lock(slots_mutex_);
    slots_cv_.wait(lock, [this] { return in_flight_ < config_.max_in_flight; });
    ++in_flight_;
  }
  struct Release {
    ChatClient* self;
    ~Release() {
      {
        std::lock_guard lock(self->slots_mutex_);
        --self->in_flight_;
      }
      self->slots_cv_.notify_one();
    }
  } release{this};
  ++requests_;
  return transport_->complete(request);
}

std::string ChatClient::complete(const std::string& prompt,
                                 const std::function<void(const std::string&)>& accept) {
  const ChatRequest request{config_.model_name, {{"user", prompt}}, config_.temperature};
  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) sleeper_(config_.backoff_base * (1LL << std::min(attempt - 1, 20)));
    try {
      std::string response = send(request);
      if (accept) accept(response);
      return response;
    } catch (const TransportError& e) {
      last_error = e.what();
      if (!e.retryable()) break;
    } catch (const MalformedResponse& e) {
      last_error = std::string("malformed response: ") + e.what();
    }
  }
  throw EndpointUnavailable(last_error);
}

// --- GPTscore --------------------------------------------------------------------

namespace {

std::optional<double> as_score(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    char* end = nullptr;
    const double d = std::strtod(s.c_str(), &end);
    if (end != s.c_str() && *end == '\0') return d;
  }
  return std::nullopt;
}

std::optional<double> regex_score(const std::string& text, const char* key) {
  const std::regex pattern(std::string("\"") + key +
                           R"("\s*:\s*"?\s*(-?[0-9]+(?:\.[0-9]+)?))");
  std::smatch match;
  if (!std::regex_search(text, match, pattern)) return std::nullopt;
  return std::strtod(match[1].str().c_str(), nullptr);
}

// Index of the '}' closing the '{' at `open`, skipping JSON strings.
std::size_t match_object(std::string_view s, std::size_t open) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = open; i < s.size(); ++i) {
    const char c = s[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}' && --depth == 0) {
      return i;
    }
  }
  return std::string_view::npos;
}

std::optional<GptScorePair> read_object(const std::string& candidate) {
  const nlohmann::json doc = nlohmann::json::parse(candidate, nullptr, false);
  if (doc.is_object()) {
    if (!doc.contains("content_similarity") || !doc.contains("structural_similarity")) {
      return std::nullopt;
    }
    const auto content = as_score(doc["content_similarity"]);
    const auto structural = as_score(doc["structural_similarity"]);
    if (content && structural) return GptScorePair{*content, *structural};
    return std::nullopt;
  }
  const auto content = regex_score(candidate, "content_similarity");
  const auto structural = regex_score(candidate, "structural_similarity");
  if (content && structural) return GptScorePair{*content, *structural};
  return std::nullopt;
}

double clamp_score(double v, const char* key, std::vector<std::string>& diagnostics) {
  if (v < 0.0 || v > 10.0) {
    diagnostics.push_back(std::string(key) + " " + std::to_string(v) + " clamped into [0, 10]");
    return std::clamp(v, 0.0, 10.0);
  }
  return v;
}

}  // namespace

ParsedGptScore parse_gptscore_response(std::string_view response) {
  std::optional<GptScorePair> found;
  for (std::size_t open = response.find('{'); open != std::string_view::npos;
       open = response.find('{', open + 1)) {
    const std::size_t close = match_object(response, open);
    if (close == std::string_view::npos) continue;
    if (auto pair = read_object(std::string(response.substr(open, close - open + 1)))) {
      found = pair;
    }
  }
  if (!found || !std::isfinite(found->content_similarity) ||
      !std::isfinite(found->structural_similarity)) {
    throw MalformedResponse("no JSON object with content_similarity and structural_similarity");
  }
  ParsedGptScore out;
  out.pair.content_similarity =
      clamp_score(found->content_similarity, "content_similarity", out.diagnostics);
  out.pair.structural_similarity =
      clamp_score(found->structural_similarity, "structural_similarity", out.diagnostics);
  return out;
}

GptScoreResult gptscore(std::string_view pred, std::string_view gold, ChatClient& client) {
  std::vector<ParsedGptScore> ok;
  GptScoreResult result;
  const std::pair<std::string_view, std::string_view> orders[] = {{pred, gold}, {gold, pred}};
  for (std::size_t k = 0; k < 2; ++k) {
    const auto [first, second] = orders[k];
    try {
      const std::string response =
          client.complete(build_gptscore_prompt(first, second),
                          [](const std::string& r) { parse_gptscore_response(r); });
      ok.push_back(parse_gptscore_response(response));
      for (const std::string& d : ok.back().diagnostics) {
        result.diagnostics.push_back("order " + std::to_string(k + 1) + ": " + d);
      }
    } catch (const EndpointUnavailable& e) {
      result.diagnostics.push_back("order " + std::to_string(k + 1) + " failed: " + e.what());
    }
  }
  if (ok.empty()) throw EndpointUnavailable("both GPTscore orders failed");
  if (ok.size() == 1) {
    result.pair = ok.front().pair;
    result.status = GptScoreStatus::kPartial;
    return result;
  }
  result.pair.content_similarity =
      (ok[0].pair.content_similarity + ok[1].pair.content_similarity) / 2.0;
  result.pair.structural_similarity =
      (ok[0].pair.structural_similarity + ok[1].pair.structural_similarity) / 2.0;
  return result;
}

}  // namespace strucbench
