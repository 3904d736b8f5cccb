// Copyright 2026 The TIC Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include <atomic>
#include <cstdlib>

#include "json.hpp"
#include "tic/errors.hpp"
#include "tic/translate.hpp"

namespace tic {
namespace {

std::atomic<std::uint64_t> g_requests{0};

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint split_endpoint(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw ConfigError("provider endpoint '" + url + "' has no scheme");
  }
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

}  // namespace

HttpProvider::HttpProvider(ProviderProfile profile)
    : profile_(std::move(profile)) {}

std::uint64_t HttpProvider::request_count() { return g_requests.load(); }

std::string HttpProvider::complete(const PromptSpec& prompt) {
  if (profile_.endpoint.empty()) {
    throw ConfigError("provider profile '" + profile_.name +
                      "' has no endpoint");
  }
  const char* key = std::getenv(profile_.auth_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw ConfigError("environment variable " + profile_.auth_env +
                      " is not set");
  }
  const Endpoint ep = split_endpoint(profile_.endpoint);

  nlohmann::json body;
  body["model"] = profile_.model;
  body["messages"] = nlohmann::json::array(
      {{{"role", "user"}, {"content", prompt.text}}});
  body["temperature"] = profile_.temperature;

  httplib::Client client(ep.origin);
  client.set_connection_timeout(profile_.timeout_seconds, 0);
  client.set_read_timeout(profile_.timeout_seconds, 0);
  httplib::Headers headers{{"Authorization", std::string("Bearer ") + key}};
  ++g_requests;
  auto res = client.Post(ep.path, headers, body.dump(), "application/json");
  if (!res) {
    throw ProviderError(0, "transport error: " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw ProviderError(res->status, res->body);
  }
  try {
    const auto j = nlohmann::json::parse(res->body);
    return j.at(nlohmann::json::json_pointer(profile_.response_path))
        .get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError(res->status,
                        "unexpected response shape (" + std::string(e.what()) +
                            "): " + res->body.substr(0, 200));
  }
}

}  // namespace tic
