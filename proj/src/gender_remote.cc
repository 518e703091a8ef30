// Copyright 2026 The scimob Authors.
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
#include <httplib.h>

#include <cstdlib>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "scimob/demography.h"
#include "scimob/error.h"

namespace scimob {

namespace {

// Splits "http://host:port/some/path" into ("http://host:port", "/some/path").
std::pair<std::string, std::string> SplitUrl(const std::string &url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorKind::kInvalidArgument, "provider URL needs a scheme: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

RemoteGenderProvider::RemoteGenderProvider(RemoteProviderConfig config)
    : config_(std::move(config)) {
  SplitUrl(config_.base_url);
}

RemoteGenderProvider::~RemoteGenderProvider() = default;

size_t RemoteGenderProvider::remote_calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return remote_calls_;
}

std::optional<GenderGuess> RemoteGenderProvider::Lookup(const std::string &first_name,
                                                        const CountryCode &country) {
  const std::pair<std::string, std::string> key{GenderLookupName(first_name), country};
  if (key.first.empty()) return std::nullopt;
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  auto answer = Fetch(key.first, country);
  std::lock_guard<std::mutex> lock(mu_);
  cache_.emplace(key, answer);
  return answer;
}

std::optional<GenderGuess> RemoteGenderProvider::Fetch(const std::string &first_name,
                                                       const CountryCode &country) {
  // Reserve a call slot under the lock, then wait for it outside.
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard<std::mutex> lock(mu_);
    const auto now = std::chrono::steady_clock::now();
    slot = std::max(now, last_call_ + config_.min_interval);
    last_call_ = slot;
    ++remote_calls_;
  }
  std::this_thread::sleep_until(slot);

  const auto [origin, path] = SplitUrl(config_.base_url);
  httplib::Client client(origin);
  const auto timeout = config_.timeout;
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout).count(),
                                (timeout.count() % 1000) * 1000);
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout).count(),
                          (timeout.count() % 1000) * 1000);

  httplib::Params params{{"name", first_name}};
  if (country != "*") params.emplace("country", country);
  if (!config_.api_key_env.empty()) {
    if (const char *key = std::getenv(config_.api_key_env.c_str()); key && *key) {
      params.emplace("apikey", key);
    }
  }
  auto response = client.Get(path, params, httplib::Headers{});
  if (!response) {
    throw ProviderUnavailable(fmt::format("{}: {}", config_.base_url,
                                          httplib::to_string(response.error())));
  }
  if (response->status != 200) {
    throw ProviderUnavailable(fmt::format("{}: HTTP {}", config_.base_url, response->status));
  }
  auto doc = nlohmann::json::parse(response->body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw ProviderUnavailable(config_.base_url + ": response is not a JSON object");
  }
  auto gender = doc.find("gender");
  if (gender == doc.end() || !gender->is_string()) return std::nullopt;
  GenderGuess guess;
  try {
    guess.gender = ParseGender(gender->get<std::string>());
  } catch (const Error &) {
    return std::nullopt;
  }
  auto probability = doc.find("probability");
  guess.confidence = probability != doc.end() && probability->is_number()
                         ? probability->get<double>()
                         : 0.0;
  return guess;
}

}  // namespace scimob
