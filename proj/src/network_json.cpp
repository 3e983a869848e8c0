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

#include <cmath>
#include <sstream>

#include "masogeom/errors.hpp"
#include "masogeom/io.hpp"
#include "json_util.hpp"

namespace masogeom {

using namespace detail;

Network parse_network(const std::string& text, NetworkMeta* meta) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::kParse, std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) parse_fail("$", "expected an object");
  if (!root.contains("input_dim") || !root["input_dim"].is_number_integer() ||
      root["input_dim"].get<long long>() <= 0)
    parse_fail("input_dim", "expected a positive integer");
  const int input_dim = root["input_dim"].get<int>();
  if (!root.contains("layers") || !root["layers"].is_array() || root["layers"].empty())
    parse_fail("layers", "expected a non-empty array");

  std::vector<DenseLayer> layers;
  int prev = input_dim;
  const Json& js = root["layers"];
  for (std::size_t i = 0; i < js.size(); ++i) {
    const std::string path = "layers[" + std::to_string(i) + "]";
    const Json& jl = js[i];
    if (!jl.is_object()) parse_fail(path, "expected an object");
    if (!jl.contains("W")) parse_fail(path + ".W", "missing");
    if (!jl.contains("b")) parse_fail(path + ".b", "missing");
    DenseLayer layer;
    layer.W = matrix_at(jl["W"], path + ".W");
    layer.b = vector_at(jl["b"], path + ".b");
    if (layer.W.cols() != prev) {
      std::ostringstream os;
      os << "expected " << prev << " columns to match the previous width, got "
         << layer.W.cols();
      parse_fail(path + ".W", os.str());
    }
    if (layer.b.size() != layer.W.rows()) {
      std::ostringstream os;
      os << "expected " << layer.W.rows() << " entries, got " << layer.b.size();
      parse_fail(path + ".b", os.str());
    }
    const std::string act =
        jl.contains("activation") && jl["activation"].is_string()
            ? jl["activation"].get<std::string>()
            : std::string();
    if (act == "leaky_relu") {
      if (!jl.contains("eta")) parse_fail(path + ".eta", "required for leaky_relu");
      const double eta = number_at(jl["eta"], path + ".eta");
      if (!(eta > 0.0 && eta < 1.0)) parse_fail(path + ".eta", "must lie in (0, 1)");
      layer.act = Activation::leaky_relu(eta);
    } else if (act == "relu") {
      layer.act = Activation::relu();
    } else if (act == "abs") {
      layer.act = Activation::abs();
    } else if (act == "identity") {
      layer.act = Activation::identity();
    } else {
      parse_fail(path + ".activation", "unknown activation '" + act + "'");
    }
    prev = static_cast<int>(layer.W.rows());
    layers.push_back(std::move(layer));
  }

  if (meta) {
    *meta = {};
    if (root.contains("meta")) {
      const Json& jm = root["meta"];
      if (!jm.is_object()) parse_fail("meta", "expected an object");
      if (jm.contains("seed")) {
        if (!jm["seed"].is_number_unsigned()) parse_fail("meta.seed", "expected an unsigned integer");
        meta->seed = jm["seed"].get<std::uint64_t>();
      }
      if (jm.contains("generator")) {
        if (!jm["generator"].is_string()) parse_fail("meta.generator", "expected a string");
        meta->generator = jm["generator"].get<std::string>();
      }
    }
  }
  try {
    return Network(input_dim, std::move(layers));
  } catch (const Error& e) {
    fail(ErrorKind::kParse, std::string("layers: ") + e.what());
  }
}

Json network_to_json(const Network& net, const NetworkMeta& meta) {
  Json root;
  root["input_dim"] = net.input_dim();
  Json layers = Json::array();
  for (int l = 1; l <= net.depth(); ++l) {
    const DenseLayer& d = net.dense(l);
    Json jl;
    jl["W"] = matrix_json(d.W);
    jl["b"] = vector_json(d.b);
    jl["activation"] = d.act.name();
    if (d.act.kind == Activation::Kind::kLeakyRelu) jl["eta"] = d.act.eta;
    layers.push_back(std::move(jl));
  }
  root["layers"] = std::move(layers);
  Json jm = Json::object();
  if (meta.seed) jm["seed"] = *meta.seed;
  if (meta.generator) jm["generator"] = *meta.generator;
  root["meta"] = std::move(jm);
  return root;
}

std::string emit_network(const Network& net, const NetworkMeta& meta) {
  return network_to_json(net, meta).dump(2) + "\n";
}

}  // namespace masogeom
