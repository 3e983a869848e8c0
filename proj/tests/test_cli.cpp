// Copyright 2026 The masogeom Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "masogeom/io.hpp"

namespace fs = std::filesystem;
using masogeom::Json;

namespace {

struct Workdir {
  fs::path path;
  Workdir() {
    path = fs::temp_directory_path() /
           ("masogeom_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~Workdir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
  static int& counter() {
    static int n = 0;
    return n;
  }
};

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Result run(const Workdir& dir, const std::string& args) {
  const std::string out = dir / "stdout.txt";
  const std::string err = dir / "stderr.txt";
  const std::string cmd =
      std::string("\"") + MASOGEOM_CLI_PATH + "\" " + args + " >\"" + out + "\" 2>\"" + err + "\"";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("gen then infer") {
  Workdir dir;
  const std::string net = dir / "net.json";
  REQUIRE(run(dir, "gen --dims 2,6,6,1 --act relu --style orthogonal --seed 7 --out " + net).code == 0);
  const Result r = run(dir, "infer --net " + net + " --point \"0.3,0.4\"");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["codes"].size() == 3);
  CHECK(j["outputs"][2].size() == 1);

  // Same seed and flags give the same file.
  const std::string again = dir / "again.json";
  run(dir, "gen --dims 2,6,6,1 --act relu --style orthogonal --seed 7 --out " + again);
  CHECK(slurp(net) == slurp(again));
}

TEST_CASE("quadrant pipeline") {
  Workdir dir;
  const std::string net = dir / "net.json";
  write(net, R"({"input_dim": 2, "layers": [
      {"W": [[1, 0], [0, 1]], "b": [0, 0], "activation": "relu"},
      {"W": [[1, 1]], "b": [-0.5], "activation": "identity"}]})");
  const std::string part = dir / "part.json";
  const std::string csv = dir / "part.csv";
  REQUIRE(run(dir, "enumerate --net " + net + " --domain \"-1,-1,1,1\" --depth 1 --out " + part +
                       " --csv " + csv)
              .code == 0);
  CHECK(Json::parse(slurp(part))["cells"].size() == 4);
  CHECK(slurp(csv).rfind("cell,codes", 0) == 0);

  const Result stats = run(dir, "stats --partition " + part);
  REQUIRE(stats.code == 0);
  const Json s = Json::parse(stats.out);
  CHECK(s["cells_per_depth"][1] == 4);
  CHECK(s["upper_bounds"][0] == 4.0);
  CHECK(s["bounds_hold"] == true);

  const std::string boundary = dir / "b.json";
  REQUIRE(run(dir, "boundary --net " + net + " --domain \"-1,-1,1,1\" --out " + boundary).code == 0);
  CHECK_FALSE(Json::parse(slurp(boundary))["segments"].empty());
  const std::string svg = dir / "fig.svg";
  REQUIRE(run(dir, "svg --partition " + part + " --boundary " + boundary + " --out " + svg).code == 0);
  CHECK(slurp(svg).find("decision-boundary") != std::string::npos);

  const Result angles = run(dir, "angles --net " + net + " --domain \"-1,-1,1,1\"");
  REQUIRE(angles.code == 0);
  for (const auto& pair : Json::parse(angles.out)["pairs"]) {
    REQUIRE_FALSE(pair["closed_form"].is_null());
    CHECK(pair["cos"].get<double>() ==
          doctest::Approx(pair["closed_form"].get<double>()).epsilon(1e-12));
  }

  const Result c = run(dir, "centroids --net " + net + " --point 0.5,0.5 --layer 1");
  REQUIRE(c.code == 0);
  CHECK(Json::parse(c.out)["mu"] == Json::parse("[1.0, 1.0]"));
}

TEST_CASE("dataset commands") {
  Workdir dir;
  const std::string net = dir / "net.json";
  run(dir, "gen --dims 2,5,1 --act abs --seed 3 --out " + net);
  const std::string data = dir / "points.csv";
  write(data, "x,y\n0.1,0.2\n-0.5,0.7\n0.9,-0.3\n");
  const Result occ = run(dir, "occupancy --net " + net + " --data " + data + " --depth 2");
  REQUIRE(occ.code == 0);
  CHECK(Json::parse(occ.out)["dataset_size"] == 3);
  const std::string hist = dir / "hist.json";
  REQUIRE(run(dir, "margins --net " + net + " --data " + data + " --layer 1 --out " + hist).code == 0);
  CHECK(Json::parse(slurp(hist))["count"] == 3);
}

TEST_CASE("bench") {
  Workdir dir;
  const Result r = run(dir, "bench --max-k 3 --trials 50 --runs 1 --seed 2");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["rows"].size() == 3);
  for (const auto& row : j["rows"]) CHECK(row["codes_equal"] == true);
}

TEST_CASE("exit codes and error JSON") {
  Workdir dir;
  const std::string net = dir / "net.json";
  run(dir, "gen --dims 2,4,1 --seed 1 --out " + net);

  const Result deep = run(dir, "enumerate --net " + net + " --domain \"-1,-1,1,1\" --depth 3");
  CHECK(deep.code == 1);
  CHECK(Json::parse(deep.err)["error"]["kind"] == "usage");

  CHECK(run(dir, "").code == 1);
  CHECK(run(dir, "infer --net " + net).code == 1);
  CHECK(run(dir, "enumerate --net " + net + " --domain 1,2").code == 1);

  const std::string bad = dir / "bad.json";
  write(bad, R"({"input_dim": 2, "layers": [{"W": [[1, 2]], "b": [0, 1], "activation": "relu"}]})");
  const Result parse = run(dir, "infer --net " + bad + " --point 0,0");
  CHECK(parse.code == 2);
  CHECK(Json::parse(parse.err)["error"]["message"].get<std::string>().find("layers[0].b") !=
        std::string::npos);
  CHECK(run(dir, "infer --net " + net + " --point 1,2,3").code == 2);
  CHECK(run(dir, "infer --net " + (dir / "missing.json") + " --point 0,0").code == 2);

  const Result cap = run(dir, "enumerate --net " + net + " --domain \"-1,-1,1,1\" --cap 2");
  CHECK(cap.code == 3);
  CHECK(Json::parse(cap.err)["error"]["kind"] == "capacity");
}
