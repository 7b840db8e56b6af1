#pragma once

// Chat-completion provider over HTTP. Request body:
//   {"model": M, "messages": [{"role": "system", ...}, {"role": "user", ...}]}
// The reply text is read from choices[0].message.content, or from a top-level "text" field.
// https endpoints need CPPHTTPLIB_OPENSSL_SUPPORT at build time.

#include <cstdlib>
#include <regex>
#include <string>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "walkfit/layout/provider.hpp"

namespace walkfit::layout {

struct HttpProviderConfig {
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model = "gpt-4o";
  std::string key_env = "OPENAI_API_KEY";  // empty or unset variable: no Authorization header
  int timeout_seconds = 120;
};

class HttpProvider : public Provider {
 public:
  explicit HttpProvider(HttpProviderConfig cfg) : cfg_(std::move(cfg)) {
    static const std::regex url(R"((https?)://([^/:]+)(?::(\d+))?(/.*)?)");
    std::smatch m;
    if (!std::regex_match(cfg_.endpoint, m, url)) throw ConfigError("bad provider endpoint " + cfg_.endpoint);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (m[1] == "https") throw ConfigError("this build has no TLS support; use an http:// endpoint");
#endif
    base_ = m[1].str() + "://" + m[2].str() + (m[3].matched ? ":" + m[3].str() : "");
    path_ = m[4].matched ? m[4].str() : "/";
    if (!cfg_.key_env.empty())
      if (const char* k = std::getenv(cfg_.key_env.c_str())) key_ = k;
  }

  std::string name() const override { return "http"; }

 protected:
  std::string complete(const std::string& system, const std::string& user) override {
    httplib::Client client(base_);
    client.set_connection_timeout(cfg_.timeout_seconds);
    client.set_read_timeout(cfg_.timeout_seconds);
    httplib::Headers headers;
    if (!key_.empty()) headers.emplace("Authorization", "Bearer " + key_);
    const nlohmann::json body = {
        {"model", cfg_.model},
        {"messages", {{{"role", "system"}, {"content", system}}, {{"role", "user"}, {"content", user}}}}};
    const auto res = client.Post(path_, headers, body.dump(), "application/json");
    if (!res) throw ProviderError("request to " + cfg_.endpoint + " failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
      throw ProviderError("endpoint answered " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
    try {
      const auto j = nlohmann::json::parse(res->body);
      if (j.contains("choices")) return j.at("choices").at(0).at("message").at("content").get<std::string>();
      return j.at("text").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw ProviderError(std::string("unexpected reply body: ") + e.what());
    }
  }

 private:
  HttpProviderConfig cfg_;
  std::string base_;
  std::string path_;
  std::string key_;
};

}  // namespace walkfit::layout
