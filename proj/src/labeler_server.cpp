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

#include "webtab/labeler_server.hpp"

#include <set>

#include <httplib.h>

#include "webtab/cluster.hpp"
#include "webtab/error.hpp"
#include "webtab/io.hpp"

namespace webtab {

namespace {

constexpr const char* kFallbackIndex =
    "<!doctype html><meta charset=\"utf-8\"><title>webtab labeler</title>"
    "<p>No UI directory configured. Start serve-labeler with --ui-dir, or fetch "
    "<a href=\"/clusters.json\">/clusters.json</a> and POST a label map to /labels.json.</p>";

void reply_error(httplib::Response& res, int status, const std::string& message) {
  res.status = status;
  res.set_content(io::dump({{"error", message}}), "application/json");
}

}  // namespace

void validate_clusters_document(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("clusters") || !doc["clusters"].is_array()) {
    throw DataError("clusters: expected an object with a \"clusters\" array");
  }
  for (const auto& c : doc["clusters"]) {
    if (!c.is_object() || !c.contains("id") || !c["id"].is_number_unsigned() ||
        !c.contains("size") || !c["size"].is_number_unsigned() ||
        !c.contains("representatives") || !c["representatives"].is_array()) {
      throw DataError("clusters: malformed cluster entry");
    }
    for (const auto& r : c["representatives"]) {
      if (!r.is_object() || !r.contains("table_id") || !r["table_id"].is_string() ||
          !r.contains("html") || !r["html"].is_string() || !r.contains("grid") ||
          !r["grid"].is_array()) {
        throw DataError("clusters: malformed representative in cluster " + c["id"].dump());
      }
    }
  }
}

LabelerServer::LabelerServer(LabelerServerOptions opts)
    : opts_(std::move(opts)), server_(std::make_unique<httplib::Server>()) {
  clusters_text_ = io::read_file(opts_.clusters);
  try {
    clusters_ = nlohmann::json::parse(clusters_text_);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(opts_.clusters.string() + ": " + e.what());
  }
  validate_clusters_document(clusters_);

  server_->Get("/clusters.json", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(clusters_text_, "application/json");
  });

  server_->Get("/labels.json", [this](const httplib::Request&, httplib::Response& res) {
    std::error_code ec;
    if (!std::filesystem::exists(opts_.labels_out, ec)) {
      reply_error(res, 404, "no labels saved yet");
      return;
    }
    res.set_content(io::read_file(opts_.labels_out), "application/json");
  });

  server_->Post("/labels.json", [this](const httplib::Request& req, httplib::Response& res) {
    LabelMap labels;
    try {
      labels = label_map_from_json(nlohmann::json::parse(req.body));
    } catch (const std::exception& e) {
      reply_error(res, 400, e.what());
      return;
    }
    std::set<std::size_t> ids;
    for (const auto& c : clusters_["clusters"]) ids.insert(c["id"].get<std::size_t>());
    for (const auto& [cluster, type] : labels) {
      if (!ids.count(cluster)) {
        reply_error(res, 400, "invalid cluster " + std::to_string(cluster));
        return;
      }
    }
    if (labels.size() != ids.size()) {
      reply_error(res, 400, "every cluster needs a label");
      return;
    }
    const std::string body = io::dump(to_json(labels));
    try {
      io::write_file(opts_.labels_out, body);
    } catch (const std::exception& e) {
      reply_error(res, 500, e.what());
      return;
    }
    res.set_content(body, "application/json");
  });

  bool mounted = false;
  if (opts_.ui_dir) {
    mounted = server_->set_mount_point("/", opts_.ui_dir->string());
    if (!mounted) throw UsageError("ui directory not found: " + opts_.ui_dir->string());
  }
  if (!mounted) {
    server_->Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kFallbackIndex, "text/html; charset=utf-8");
    });
  }
}

LabelerServer::~LabelerServer() { stop(); }

int LabelerServer::bind() {
  if (opts_.port < 0 || opts_.port > 65535) throw UsageError("port out of range");
  int port = opts_.port;
  if (port == 0) {
    port = server_->bind_to_any_port(opts_.host);
    if (port < 0) throw UsageError("cannot bind " + opts_.host);
  } else if (!server_->bind_to_port(opts_.host, port)) {
    throw UsageError("cannot bind " + opts_.host + ":" + std::to_string(port));
  }
  return port;
}

void LabelerServer::listen() { server_->listen_after_bind(); }

void LabelerServer::stop() {
  if (server_) server_->stop();
}

}  // namespace webtab
