/*
 * Copyright (c) 2026, The webtab Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
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
#include <optional>
#include <string>

#include <json.hpp>

namespace httplib {
class Server;
}

namespace webtab {

struct LabelerServerOptions {
  std::filesystem::path clusters;    // clusters-for-labeling document
  std::filesystem::path labels_out;  // where POSTed labels are written
  std::optional<std::filesystem::path> ui_dir;
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 binds an ephemeral port
};

// Serves the labeling UI and its two documents:
//   GET  /clusters.json  the clusters file, unchanged
//   GET  /labels.json    the last saved labels, or 404
//   POST /labels.json    a label map; validated against the clusters file
//                        and written to labels_out
//   GET  /*              static files from ui_dir
class LabelerServer {
 public:
  // Throws DataError if the clusters file is missing or malformed.
  explicit LabelerServer(LabelerServerOptions opts);
  ~LabelerServer();

  LabelerServer(const LabelerServer&) = delete;
  LabelerServer& operator=(const LabelerServer&) = delete;

  // Binds the socket and returns the port actually bound. Throws
  // UsageError when the address is unavailable.
  int bind();
  // Blocks until stop() is called from another thread.
  void listen();
  void stop();

  const nlohmann::json& clusters() const { return clusters_; }

 private:
  LabelerServerOptions opts_;
  std::string clusters_text_;
  nlohmann::json clusters_;
  std::unique_ptr<httplib::Server> server_;
};

// Checks a clusters-for-labeling document. Throws DataError on mismatch.
void validate_clusters_document(const nlohmann::json& doc);

}  // namespace webtab
