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

#pragma once

#include <filesystem>
#include <memory>
#include <shared_mutex>
#include <string>

#include "airslice/policy.hpp"

namespace airslice {

/// A validated policy with its frozen wire bytes; the GET response is
/// byte-stable for a given version.
struct StoredPolicy {
  PolicyDocument doc;
  std::string bytes;
};

/// Single-document policy store with atomic snapshot semantics: readers see
/// either the previous or the new document in full, never a blend, and a
/// write is persisted to disk (write-temp + rename) before it becomes
/// visible. Versions strictly increase.
class PolicyStore {
 public:
  /// In-memory only when `path` is empty; otherwise loads an existing store
  /// file (absent file means empty store, unreadable content throws
  /// CorruptStore).
  explicit PolicyStore(std::filesystem::path path = {});

  /// Current snapshot, or nullptr when no policy is installed.
  std::shared_ptr<const StoredPolicy> current() const;

  /// Validates, persists, and atomically swaps in the document. Returns the
  /// installed version. Throws ValidationFailed (field detail) or
  /// StaleVersion (version <= current).
  std::int64_t put(const PolicyDocument& doc);

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::shared_ptr<const StoredPolicy> current_;
  mutable std::shared_mutex mutex_;
};

/// Parses and validates a store file. Throws CorruptStore with the parse
/// location for unreadable, truncated, or invalid content.
PolicyDocument load_store(const std::filesystem::path& path);

/// Atomically writes the document to `path` (temp file + rename).
void persist_store(const PolicyDocument& doc, const std::filesystem::path& path);

/// HTTP front end:
///   GET /policy  -> 200 + JSON document | 404 when none installed
///   PUT /policy  -> 200 {"version": n} | 400 validation error | 409 stale
class NwpdServer {
 public:
  explicit NwpdServer(PolicyStore& store);
  ~NwpdServer();

  NwpdServer(const NwpdServer&) = delete;
  NwpdServer& operator=(const NwpdServer&) = delete;

  /// Binds and serves until stop(); returns false on bind failure.
  bool listen(const std::string& host, int port);

  /// Binds to an OS-assigned port (returns it, or -1 on failure); serving
  /// starts with serve_after_bind(), which blocks until stop().
  int bind_any_port(const std::string& host);
  bool serve_after_bind();

  void stop();
  bool is_running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace airslice
