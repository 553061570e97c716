/*
 * Copyright 2026 The Airslice Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "airslice/nwpd.hpp"

#include <fstream>
#include <mutex>
#include <sstream>
#include <system_error>

#include <httplib.h>
#include <json.hpp>

namespace airslice {

PolicyDocument load_store(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::CorruptStore, "cannot open store file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.empty()) throw Error(Errc::CorruptStore, path.string() + ": store file is empty");
  PolicyDocument doc;
  try {
    doc = policy_from_json(text);
  } catch (const Error& e) {
    throw Error(Errc::CorruptStore, path.string() + ": " + e.what());
  }
  const auto violations = validate_policy(doc);
  if (!violations.empty()) {
    throw Error(Errc::CorruptStore, path.string() + ": stored document fails validation (" +
                                        violations.front().field + ": " +
                                        violations.front().detail + ")");
  }
  return doc;
}

void persist_store(const PolicyDocument& doc, const std::filesystem::path& path) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoError, "cannot write " + tmp.string());
    out << policy_to_json(doc) << "\n";
    out.flush();
    if (!out) throw Error(Errc::IoError, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(Errc::IoError, "rename to " + path.string() + ": " + ec.message());
}

PolicyStore::PolicyStore(std::filesystem::path path) : path_(std::move(path)) {
  if (!path_.empty() && std::filesystem::exists(path_)) {
    auto doc = load_store(path_);
    current_ = std::make_shared<const StoredPolicy>(StoredPolicy{doc, policy_to_json(doc)});
  }
}

std::shared_ptr<const StoredPolicy> PolicyStore::current() const {
  std::shared_lock lock(mutex_);
  return current_;
}

std::int64_t PolicyStore::put(const PolicyDocument& doc) {
  const auto violations = validate_policy(doc);
  if (!violations.empty()) {
    throw Error(Errc::ValidationFailed,
                violations.front().field + ": " + violations.front().detail);
  }
  std::unique_lock lock(mutex_);
  if (current_ && doc.version <= current_->doc.version) {
    throw Error(Errc::StaleVersion,
                "version " + std::to_string(doc.version) + " is not above current " +
                    std::to_string(current_->doc.version));
  }
  if (!path_.empty()) persist_store(doc, path_);
  current_ = std::make_shared<const StoredPolicy>(StoredPolicy{doc, policy_to_json(doc)});
  return doc.version;
}

struct NwpdServer::Impl {
  PolicyStore& store;
  httplib::Server server;

  explicit Impl(PolicyStore& s) : store(s) {
    // Pollers hold keep-alive connections, each pinning one worker; the
    // default pool is too small for a fleet of controllers.
    server.new_task_queue = [] { return new httplib::ThreadPool(32); };
    server.Get("/policy", [this](const httplib::Request&, httplib::Response& res) {
      auto snapshot = store.current();
      if (!snapshot) {
        res.status = 404;
        res.set_content(R"({"error":"no_policy"})", "application/json");
        return;
      }
      res.set_content(snapshot->bytes, "application/json");
    });
    server.Put("/policy", [this](const httplib::Request& req, httplib::Response& res) {
      nlohmann::json reply;
      try {
        const PolicyDocument doc = policy_from_json(req.body);
        const std::int64_t version = store.put(doc);
        reply["version"] = version;
        res.set_content(reply.dump(), "application/json");
        return;
      } catch (const Error& e) {
        switch (e.code()) {
          case Errc::MalformedPolicy:
          case Errc::ValidationFailed:
            res.status = 400;
            reply["error"] = "validation_failed";
            break;
          case Errc::StaleVersion: {
            res.status = 409;
            reply["error"] = "stale_version";
            auto snapshot = store.current();
            if (snapshot) reply["current_version"] = snapshot->doc.version;
            break;
          }
          default:
            res.status = 500;
            reply["error"] = "internal";
            break;
        }
        reply["detail"] = e.what();
        res.set_content(reply.dump(), "application/json");
      }
    });
  }
};

NwpdServer::NwpdServer(PolicyStore& store) : impl_(std::make_unique<Impl>(store)) {}

NwpdServer::~NwpdServer() { stop(); }

bool NwpdServer::listen(const std::string& host, int port) {
  return impl_->server.listen(host, port);
}

int NwpdServer::bind_any_port(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool NwpdServer::serve_after_bind() { return impl_->server.listen_after_bind(); }

void NwpdServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

bool NwpdServer::is_running() const { return impl_ && impl_->server.is_running(); }

}  // namespace airslice
