#include <cstdlib>

#include "httplib.h"
#include "json.hpp"
#include "strfix/semantics.hpp"

namespace strfix {

using nlohmann::json;

std::optional<HttpOracleConfig> HttpOracleConfig::from_env() {
  const char* url = std::getenv("ORACLE_URL");
  if (!url || !*url) return std::nullopt;
  HttpOracleConfig c;
  c.url = url;
  if (const char* key = std::getenv("ORACLE_KEY")) c.api_key = key;
  if (const char* model = std::getenv("ORACLE_MODEL"); model && *model) c.model = model;
  return c;
}

HttpOracle::HttpOracle(HttpOracleConfig config) : config_(std::move(config)) {
  if (config_.batch == 0) config_.batch = 1;
}

namespace {

std::string task_description(const SemanticTypeList& types) {
  std::string list;
  for (const auto& t : types.types) {
    if (!list.empty()) list += ", ";
    list += t;
  }
  return "You are given a column of spreadsheet values as a JSON array. In every value, find each substring that "
         "denotes one of these semantic types: " +
         list +
         ". Rewrite such a substring s of type t as {t(s')} where s' is s with spelling and formatting normalized. "
         "Keep every other character exactly as it is. Answer with a JSON array holding exactly one string per "
         "input value, in the same order, and nothing else.";
}

struct Endpoint {
  std::string base;
  std::string path;
};

Endpoint split_url(const std::string& url) {
  const auto scheme = url.find("://");
  const std::size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
  const auto slash = url.find('/', host_start);
  if (slash == std::string::npos) return {url, "/v1/chat/completions"};
  return {url.substr(0, slash), url.substr(slash)};
}

std::string strip_fences(std::string s) {
  const auto first = s.find('[');
  const auto last = s.rfind(']');
  if (first != std::string::npos && last != std::string::npos && last > first) return s.substr(first, last - first + 1);
  return s;
}

}  // namespace

std::string HttpOracle::request_body(std::span<const std::string> values, const SemanticTypeList& types) const {
  json few_shot = json::array();
  json shot_inputs = json::array();
  json shot_outputs = json::array();
  for (const auto& [in, out] : few_shot_examples()) {
    few_shot.push_back({{"input", in}, {"output", out}});
    shot_inputs.push_back(in);
    shot_outputs.push_back(out);
  }
  const json batch(std::vector<std::string>(values.begin(), values.end()));
  json messages = json::array({
      {{"role", "system"}, {"content", task_description(types)}},
      {{"role", "user"}, {"content", shot_inputs.dump()}},
      {{"role", "assistant"}, {"content", shot_outputs.dump()}},
      {{"role", "user"}, {"content", batch.dump()}},
  });
  json body = {
      {"model", config_.model},
      {"temperature", 0},
      {"messages", messages},
      {"values", batch},
      {"types", types.types},
      {"few_shot", few_shot},
  };
  return body.dump();
}

std::vector<std::string> HttpOracle::parse_response(const std::string& body, std::size_t expected) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::exception& e) {
    throw OracleError(std::string("response is not JSON: ") + e.what());
  }
  json list;
  try {
    if (doc.is_object() && doc.contains("annotations")) {
      list = doc.at("annotations");
    } else if (doc.is_array()) {
      list = doc;
    } else {
      const std::string content = doc.at("choices").at(0).at("message").at("content").get<std::string>();
      list = json::parse(strip_fences(content));
    }
  } catch (const json::exception& e) {
    throw OracleError(std::string("unexpected response shape: ") + e.what());
  }
  if (!list.is_array() || list.size() != expected) {
    throw OracleError("expected " + std::to_string(expected) + " annotations");
  }
  std::vector<std::string> out;
  for (const auto& item : list) {
    if (!item.is_string()) throw OracleError("annotation is not a string");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<std::string> HttpOracle::annotate(std::span<const std::string> values, const SemanticTypeList& types) {
  const Endpoint ep = split_url(config_.url);
  const std::string body = request_body(values, types);
  std::lock_guard lock(budget_);
  httplib::Client client(ep.base);
  if (!client.is_valid()) throw OracleError("unsupported oracle URL " + config_.url);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);
  auto res = client.Post(ep.path, headers, body, "application/json");
  if (!res) throw OracleError("request failed: " + httplib::to_string(res.error()));
  if (res->status != 200) throw OracleError("oracle answered HTTP " + std::to_string(res->status));
  return parse_response(res->body, values.size());
}

}  // namespace strfix
