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

#include <gtest/gtest.h>

#include <httplib.h>

#include <filesystem>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "webtab/cli.hpp"
#include "webtab/cluster.hpp"
#include "webtab/io.hpp"
#include "webtab/labeler_server.hpp"

using namespace webtab;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(fs::temp_directory_path() / ("webtab_" + name + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& f) const { return (path_ / f).string(); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

// synth through evaluate inside dir; returns false on the first failing stage.
::testing::AssertionResult full_chain(const TempDir& d, const std::string& k = "4") {
  io::write_file(d / "cfg.json", R"({"dim":48,"seed":5})");
  const std::string cfg = d / "cfg.json";
  const std::vector<std::vector<std::string>> stages = {
      {"synth", "--config", cfg, "--per-type", "10", "--out", d / "pages.jsonl", "--truth-out", d / "truth.jsonl"},
      {"extract", "--config", cfg, "--in", d / "pages.jsonl", "--out", d / "tables.jsonl", "--text-out",
       d / "text.jsonl"},
      {"preprocess", "--config", cfg, "--in", d / "tables.jsonl", "--out", d / "grids.jsonl"},
      {"corpus", "--config", cfg, "--in", d / "grids.jsonl", d / "text.jsonl", "--out", d / "sentences.txt"},
      {"train", "--config", cfg, "--in", d / "sentences.txt", "--out", d / "ws.json", "--threads", "3"},
      {"vectorize", "--config", cfg, "--in", d / "grids.jsonl", d / "ws.json", "--out", d / "vectors.jsonl"},
      {"cluster", "--config", cfg, "--k", k, "--in", d / "vectors.jsonl", d / "tables.jsonl", d / "grids.jsonl",
       "--out", d / "model.json"},
      {"autolabel", "--config", cfg, "--in", d / "model.clusters.json", d / "truth.jsonl", "--out",
       d / "labels.json"},
      {"classify", "--config", cfg, "--in", d / "model.json", d / "labels.json", "--out", d / "pred.jsonl"},
      {"evaluate", "--config", cfg, "--in", d / "pred.jsonl", d / "truth.jsonl", "--out", d / "metrics.json"},
  };
  for (const auto& args : stages) {
    const CliRun r = run(args);
    if (r.code != 0) return ::testing::AssertionFailure() << args[0] << " exited " << r.code << ": " << r.err;
  }
  return ::testing::AssertionSuccess();
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    files[e.path().filename().string()] = io::read_file(e.path());
  }
  return files;
}

}  // namespace

TEST(Cli, FullChainWithProvenance) {
  TempDir d("chain");
  ASSERT_TRUE(full_chain(d));
  const auto meta = io::read_json(d / "pred.jsonl.meta.json");
  std::set<std::string> stages;
  for (const auto& entry : meta.at("chain")) stages.insert(entry.at("stage").get<std::string>());
  for (const char* s : {"synth", "extract", "preprocess", "corpus", "train", "vectorize", "cluster", "autolabel",
                        "classify"}) {
    EXPECT_TRUE(stages.count(s)) << s;
  }
  EXPECT_EQ(meta.at("output"), io::sha256_hex(io::read_file(d / "pred.jsonl")));
  EXPECT_EQ(meta.at("inputs").at(0), io::sha256_hex(io::read_file(d / "model.json")));
  EXPECT_EQ(meta.at("config").at("dim"), 48);
  EXPECT_EQ(io::dump(meta).find(d.path().string()), std::string::npos);

  const auto metrics = io::read_json(d / "metrics.json");
  EXPECT_GE(metrics.at("micro_f1").get<double>(), 0.5);
  const auto model = io::read_json(d / "model.json");
  EXPECT_EQ(model.at("k"), 4);
  EXPECT_EQ(model.at("assignments").size(), 40u);
  EXPECT_NO_THROW(validate_clusters_document(io::read_json(d / "model.clusters.json")));
}

TEST(Cli, RerunsAreByteIdentical) {
  TempDir a("rerun_a"), b("rerun_b");
  ASSERT_TRUE(full_chain(a));
  ASSERT_TRUE(full_chain(b));
  const auto fa = snapshot(a.path()), fb = snapshot(b.path());
  EXPECT_EQ(fa.size(), fb.size());
  for (const auto& [name, content] : fa) EXPECT_EQ(content, fb.at(name)) << name;

  // Rerunning one downstream stage leaves its output unchanged.
  const std::string before = io::read_file(a / "vectors.jsonl.meta.json");
  ASSERT_EQ(run({"vectorize", "--config", a / "cfg.json", "--in", a / "grids.jsonl", a / "ws.json", "--out",
                 a / "vectors.jsonl"})
                .code,
            0);
  EXPECT_EQ(io::read_file(a / "vectors.jsonl.meta.json"), before);
}

TEST(Cli, InvalidClusterLabel) {
  TempDir d("invalid");
  ASSERT_TRUE(full_chain(d, "12"));
  io::write_file(d / "bad_labels.json", R"({"99":"relational"})");
  const CliRun r = run({"classify", "--in", d / "model.json", d / "bad_labels.json", "--out", d / "p.jsonl"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("invalid cluster"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(d / "p.jsonl"));
}

TEST(Cli, UsageErrors) {
  TempDir d("usage");
  io::write_file(d / "bad.json", R"({"dimension":3})");
  io::write_file(d / "grids.jsonl", "");
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"preprocess", "--in", d / "grids.jsonl"}).code, 1);
  EXPECT_EQ(run({"cluster", "--k", "abc", "--in", d / "grids.jsonl", "--out", d / "m.json"}).code, 1);
  EXPECT_EQ(run({"train", "--config", d / "bad.json", "--in", d / "grids.jsonl", "--out", d / "x"}).code, 1);
  EXPECT_EQ(run({"corpus", "--contexts", "c,t", "--in", d / "grids.jsonl", "--out", d / "s.txt"}).code, 1);
  EXPECT_EQ(run({"train", "--dim", "2", "--in", d / "grids.jsonl", "--out", d / "x"}).code, 1);
  const CliRun missing = run({"preprocess", "--in", d / "absent.jsonl", "--out", d / "g.jsonl"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_EQ(nlohmann::json::parse(missing.err.substr(0, missing.err.find('\n'))).at("level"), "error");
}

TEST(Cli, MalformedRecordsAreDataErrors) {
  TempDir d("malformed");
  io::write_file(d / "pages.jsonl", "{\"page_id\":\"a\",\"html\":\"x\"}\nnot json\n");
  const CliRun r = run({"extract", "--in", d / "pages.jsonl", "--out", d / "t.jsonl"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":2"), std::string::npos) << r.err;
}

TEST(Cli, KnnAndCrossValidation) {
  TempDir d("knn");
  ASSERT_TRUE(full_chain(d));
  const CliRun knn = run({"classify", "--knn", "--knn-k", "500", "--in", d / "vectors.jsonl", d / "truth.jsonl",
                       d / "vectors.jsonl", "--out", d / "knn.jsonl"});
  ASSERT_EQ(knn.code, 0) << knn.err;
  EXPECT_NE(knn.err.find("clamped"), std::string::npos);
  const CliRun cv = run({"evaluate", "--cv", "--folds", "5", "--in", d / "vectors.jsonl", d / "truth.jsonl", "--out",
                      d / "cv.json"});
  ASSERT_EQ(cv.code, 0) << cv.err;
  const auto j = io::read_json(d / "cv.json");
  EXPECT_EQ(j.at("folds"), 5);
  EXPECT_EQ(j.at("fold_of").size(), 40u);
  EXPECT_EQ(cv.out.rfind("micro_f1 ", 0), 0u);
}

TEST(Cli, SweepWritesCsv) {
  TempDir d("sweep");
  ASSERT_TRUE(full_chain(d));
  const CliRun r = run({"sweep", "--in", d / "grids.jsonl", d / "truth.jsonl", "--dims", "20,40", "--contexts-grid",
                     "C,CH", "--ks", "4,auto", "--out", d / "sweep.csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = io::read_file(d / "sweep.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 9);
  EXPECT_EQ(run({"sweep", "--in", d / "grids.jsonl", d / "truth.jsonl", "--contexts-grid", "T", "--out",
                 d / "s2.csv"})
                .code,
            1);
}

TEST(Cli, LabelerRoundTrip) {
  TempDir d("labeler");
  ASSERT_TRUE(full_chain(d, "3"));
  const std::string clusters_text = io::read_file(d / "model.clusters.json");
  const std::string labels_path = d / "exported.json";
  const std::string export_body = R"({"0":"relational","1":"matrix","2":"non_data"})";

  std::thread client;
  std::vector<std::string> failures;
  CliHooks hooks;
  hooks.on_listen = [&](LabelerServer& server, int port) {
    client = std::thread([&, port] {
      httplib::Client c("127.0.0.1", port);
      auto expect = [&](bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
      };
      auto clusters = c.Get("/clusters.json");
      expect(clusters && clusters->status == 200 && clusters->body == clusters_text, "GET clusters");
      auto none = c.Get("/labels.json");
      expect(none && none->status == 404, "GET labels before save");
      auto partial = c.Post("/labels.json", R"({"0":"relational"})", "application/json");
      expect(partial && partial->status == 400, "POST incomplete labels");
      auto bad = c.Post("/labels.json", R"({"0":"relational","1":"matrix","7":"list"})", "application/json");
      expect(bad && bad->status == 400, "POST unknown cluster");
      auto saved = c.Post("/labels.json", export_body, "application/json");
      expect(saved && saved->status == 200, "POST labels");
      auto back = c.Get("/labels.json");
      expect(back && back->status == 200 && nlohmann::json::parse(back->body) == nlohmann::json::parse(export_body),
             "GET labels after save");
      auto index = c.Get("/");
      expect(index && index->status == 200, "GET /");
      server.stop();
    });
  };
  std::ostringstream out, err;
  const int code = run_cli({"serve-labeler", "--clusters", d / "model.clusters.json", "--labels-out", labels_path,
                            "--port", "0"},
                           out, err, hooks);
  if (client.joinable()) client.join();
  EXPECT_EQ(code, 0) << err.str();
  EXPECT_EQ(out.str().rfind("listening on http://127.0.0.1:", 0), 0u);
  EXPECT_TRUE(failures.empty()) << failures.front();

  const CliRun classify = run({"classify", "--in", d / "model.json", labels_path, "--out", d / "round.jsonl"});
  ASSERT_EQ(classify.code, 0) << classify.err;
  const auto model = cluster_model_from_json(io::read_json(d / "model.json"));
  const auto expected = apply_labels(model, label_map_from_json(nlohmann::json::parse(export_body)));
  EXPECT_EQ(io::read_labeling(d / "round.jsonl", true), expected);
  for (const auto& [id, t] : expected) EXPECT_NE(t, TableType::unknown);
}

TEST(Cli, LabelerRejectsBadClustersFile) {
  TempDir d("labeler_bad");
  io::write_file(d / "c.json", R"({"clusters":"nope"})");
  EXPECT_EQ(run({"serve-labeler", "--clusters", d / "c.json", "--labels-out", d / "l.json"}).code, 2);
  EXPECT_EQ(run({"serve-labeler", "--clusters", d / "c.json"}).code, 1);
}
