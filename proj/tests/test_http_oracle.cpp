#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "strfix/semantics.hpp"

using namespace strfix;
using nlohmann::json;

namespace {

// Local chat-completion stand-in: wraps a leading "US" as a country span.
class FakeServer {
 public:
  explicit FakeServer(int status = 200) {
    server_.Post("/v1/chat/completions", [status](const httplib::Request& req, httplib::Response& res) {
      res.status = status;
      const auto body = json::parse(req.body);
      json out = json::array();
      for (const auto& v : body.at("values")) {
        std::string s = v.get<std::string>();
        if (s.rfind("US", 0) == 0) s = "{country(US)}" + s.substr(2);
        out.push_back(s);
      }
      const json reply = {{"choices", {{{"message", {{"role", "assistant"}, {"content", out.dump()}}}}}}};
      res.set_content(reply.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeServer() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions"; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace

TEST_CASE("chat-completion round trip") {
  FakeServer server;
  HttpOracleConfig c;
  c.url = server.url();
  c.timeout_seconds = 5;
  HttpOracle oracle(c);
  const std::vector<std::string> values{"US-1", "x-2"};
  const auto out = oracle.annotate(values, SemanticTypeList::defaults());
  CHECK(out == std::vector<std::string>{"{country(US)}-1", "x-2"});
}

TEST_CASE("a server error is an oracle error") {
  FakeServer server(500);
  HttpOracleConfig c;
  c.url = server.url();
  c.timeout_seconds = 5;
  HttpOracle oracle(c);
  const std::vector<std::string> values{"US-1"};
  CHECK_THROWS_AS(oracle.annotate(values, SemanticTypeList::defaults()), OracleError);
}

TEST_CASE("response shapes") {
  CHECK(HttpOracle::parse_response(R"(["a","b"])", 2) == std::vector<std::string>{"a", "b"});
  CHECK(HttpOracle::parse_response(R"({"annotations":["a"]})", 1) == std::vector<std::string>{"a"});
  const json fenced = {{"choices", {{{"message", {{"content", "```json\n[\"q\"]\n```"}}}}}}};
  CHECK(HttpOracle::parse_response(fenced.dump(), 1) == std::vector<std::string>{"q"});
  CHECK_THROWS_AS(HttpOracle::parse_response("not json", 1), OracleError);
  CHECK_THROWS_AS(HttpOracle::parse_response(R"(["a"])", 2), OracleError);
  CHECK_THROWS_AS(HttpOracle::parse_response(R"([1])", 1), OracleError);
  CHECK_THROWS_AS(HttpOracle::parse_response(R"({"other":1})", 1), OracleError);
}

TEST_CASE("request body carries values, types and examples") {
  HttpOracleConfig c;
  c.url = "http://127.0.0.1:1/";
  c.model = "m";
  HttpOracle oracle(c);
  const std::vector<std::string> values{"US-1"};
  const auto body = json::parse(oracle.request_body(values, SemanticTypeList{{"country"}}));
  CHECK(body.at("model") == "m");
  CHECK(body.at("values") == json::array({"US-1"}));
  CHECK(body.at("types") == json::array({"country"}));
  CHECK(body.at("messages").size() == 4);
  CHECK(body.at("few_shot").size() == few_shot_examples().size());
  CHECK(body.at("messages").back().at("content") == "[\"US-1\"]");
}
