// Copyright 2026 The kerrsim Authors
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

#include "kerrsim/network.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace kerrsim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("network description: " + what);
}

cplx parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cplx(j[0].get<double>(), j[1].get<double>());
  fail(where + " must be a number or [re, im] pair");
}

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

NetworkNode parse_node(const json& j) {
  if (!j.is_object() || !j.contains("op") || !j.at("op").is_string())
    fail("every node needs a string \"op\" field");
  const std::string op = j.at("op").get<std::string>();
  NetworkNode n;
  if (op == "series" || op == "concat") {
    n.kind = op == "series" ? NetworkNode::Kind::Series
                            : NetworkNode::Kind::Concat;
    const char* key = op == "series" ? "stages" : "parts";
    if (!j.contains(key) || !j.at(key).is_array() || j.at(key).empty())
      fail("\"" + op + "\" needs a non-empty \"" + key + "\" array");
    for (const auto& c : j.at(key)) n.children.push_back(parse_node(c));
  } else if (op == "feedback") {
    n.kind = NetworkNode::Kind::Feedback;
    if (!j.contains("of")) fail("\"feedback\" needs an \"of\" child");
    n.children.push_back(parse_node(j.at("of")));
    n.output_channel = j.value("output", 0);
    n.input_channel = j.value("input", 0);
    if (n.output_channel < 1 || n.input_channel < 1)
      fail("\"feedback\" needs 1-based \"output\" and \"input\" channels");
  } else if (op == "identity") {
    n.kind = NetworkNode::Kind::Identity;
    n.channels = j.value("channels", 1);
    if (n.channels < 1) fail("\"identity\" channel count must be positive");
  } else if (op == "beamsplitter") {
    n.kind = NetworkNode::Kind::Beamsplitter;
    if (!j.contains("theta")) fail("\"beamsplitter\" needs \"theta\"");
    n.angle = j.at("theta").get<double>();
  } else if (op == "phase") {
    n.kind = NetworkNode::Kind::Phase;
    if (!j.contains("phi")) fail("\"phase\" needs \"phi\"");
    n.angle = j.at("phi").get<double>();
  } else if (op == "permutation") {
    n.kind = NetworkNode::Kind::Permutation;
    if (!j.contains("sigma") || !j.at("sigma").is_array())
      fail("\"permutation\" needs a \"sigma\" array");
    for (const auto& e : j.at("sigma")) n.sigma.push_back(e.get<int>());
  } else if (op == "displacement") {
    n.kind = NetworkNode::Kind::Displacement;
    const bool has_param = j.contains("param");
    const bool has_value = j.contains("value");
    if (has_param == has_value)
      fail("\"displacement\" needs exactly one of \"param\" or \"value\"");
    if (has_param) {
      n.has_param = true;
      n.param = j.at("param").get<std::string>();
      if (n.param.empty()) fail("\"displacement\" parameter name is empty");
    } else {
      n.value = parse_complex(j.at("value"), "\"displacement\" value");
    }
  } else if (op == "kerr_cavity" || op == "kerr_half1" || op == "kerr_half2") {
    n.kind = op == "kerr_cavity"  ? NetworkNode::Kind::KerrCavity
             : op == "kerr_half1" ? NetworkNode::Kind::KerrHalf1
                                  : NetworkNode::Kind::KerrHalf2;
    n.mode = j.value("mode", 0);
    if (n.mode < 0) fail("cavity \"mode\" index must be non-negative");
  } else {
    fail("unknown op \"" + op + "\"");
  }
  return n;
}

json node_to_json(const NetworkNode& n) {
  json j;
  switch (n.kind) {
    case NetworkNode::Kind::Series:
    case NetworkNode::Kind::Concat: {
      const bool series = n.kind == NetworkNode::Kind::Series;
      j["op"] = series ? "series" : "concat";
      json arr = json::array();
      for (const auto& c : n.children) arr.push_back(node_to_json(c));
      j[series ? "stages" : "parts"] = std::move(arr);
      break;
    }
    case NetworkNode::Kind::Feedback:
      j["op"] = "feedback";
      j["of"] = node_to_json(n.children.at(0));
      j["output"] = n.output_channel;
      j["input"] = n.input_channel;
      break;
    case NetworkNode::Kind::Identity:
      j["op"] = "identity";
      j["channels"] = n.channels;
      break;
    case NetworkNode::Kind::Beamsplitter:
      j["op"] = "beamsplitter";
      j["theta"] = n.angle;
      break;
    case NetworkNode::Kind::Phase:
      j["op"] = "phase";
      j["phi"] = n.angle;
      break;
    case NetworkNode::Kind::Permutation:
      j["op"] = "permutation";
      j["sigma"] = n.sigma;
      break;
    case NetworkNode::Kind::Displacement:
      j["op"] = "displacement";
      if (n.has_param)
        j["param"] = n.param;
      else
        j["value"] = complex_to_json(n.value);
      break;
    case NetworkNode::Kind::KerrCavity:
      j["op"] = "kerr_cavity";
      j["mode"] = n.mode;
      break;
    case NetworkNode::Kind::KerrHalf1:
      j["op"] = "kerr_half1";
      j["mode"] = n.mode;
      break;
    case NetworkNode::Kind::KerrHalf2:
      j["op"] = "kerr_half2";
      j["mode"] = n.mode;
      break;
  }
  return j;
}

void collect_impl(const NetworkNode& n, std::set<std::string>& out) {
  if (n.kind == NetworkNode::Kind::Displacement && n.has_param)
    out.insert(n.param);
  for (const auto& c : n.children) collect_impl(c, out);
}

struct BuildContext {
  const NetworkDescription& desc;
  const std::vector<CavityOps>& mode_ops;
  SpaceDescriptor space;
};

const CavityOps& ops_for_mode(const BuildContext& ctx, int mode) {
  if (mode < 0 || mode >= static_cast<int>(ctx.mode_ops.size()))
    throw std::invalid_argument(
        "network description: cavity mode " + std::to_string(mode) +
        " out of range for " + std::to_string(ctx.mode_ops.size()) +
        " mode(s)");
  return ctx.mode_ops[static_cast<std::size_t>(mode)];
}

SlhTriple build_node(const BuildContext& ctx, const NetworkNode& n) {
  switch (n.kind) {
    case NetworkNode::Kind::Series: {
      SlhTriple acc = build_node(ctx, n.children.front());
      for (std::size_t i = 1; i < n.children.size(); ++i)
        acc = series(build_node(ctx, n.children[i]), acc);
      return acc;
    }
    case NetworkNode::Kind::Concat: {
      SlhTriple acc = build_node(ctx, n.children.front());
      for (std::size_t i = 1; i < n.children.size(); ++i)
        acc = concat(acc, build_node(ctx, n.children[i]));
      return acc;
    }
    case NetworkNode::Kind::Feedback:
      return feedback(build_node(ctx, n.children.front()), n.output_channel,
                      n.input_channel);
    case NetworkNode::Kind::Identity:
      return identity_system(ctx.space, n.channels);
    case NetworkNode::Kind::Beamsplitter:
      return beamsplitter(ctx.space, n.angle);
    case NetworkNode::Kind::Phase:
      return phase_shift(ctx.space, n.angle);
    case NetworkNode::Kind::Permutation:
      return permutation(ctx.space, n.sigma);
    case NetworkNode::Kind::Displacement:
      return displacement(ctx.space,
                          n.has_param ? DriveExpr::parameter(n.param)
                                      : DriveExpr(n.value));
    case NetworkNode::Kind::KerrCavity:
      return kerr_cavity(ctx.space, ops_for_mode(ctx, n.mode),
                         ctx.desc.cavity.kappa);
    case NetworkNode::Kind::KerrHalf1:
      return kerr_half1(ctx.space, ops_for_mode(ctx, n.mode),
                        ctx.desc.cavity.kappa);
    case NetworkNode::Kind::KerrHalf2:
      return kerr_half2(ctx.space, ops_for_mode(ctx, n.mode),
                        ctx.desc.cavity.kappa);
  }
  throw std::logic_error("unreachable network node kind");
}

}  // namespace

std::set<std::string> collect_parameters(const NetworkNode& node) {
  std::set<std::string> out;
  collect_impl(node, out);
  return out;
}

void NetworkDescription::validate() const {
  if (modes < 1)
    throw std::invalid_argument("network description: needs at least one mode");
  const std::set<std::string> used = collect_parameters(root);
  const std::set<std::string> declared(parameters.begin(), parameters.end());
  if (used != declared) {
    std::string msg =
        "network description: declared parameters do not match the tree;";
    msg += " declared = {";
    for (const auto& p : declared) msg += " " + p;
    msg += " }, used = {";
    for (const auto& p : used) msg += " " + p;
    msg += " }";
    throw std::invalid_argument(msg);
  }
  for (const auto& [name, value] : defaults) {
    (void)value;
    if (!declared.count(name))
      throw std::invalid_argument(
          "network description: default for undeclared parameter " + name);
  }
}

NetworkDescription parse_network(const json& j) {
  NetworkDescription d;
  if (!j.is_object()) fail("top level must be an object");
  d.name = j.value("name", std::string("network"));
  d.modes = j.value("modes", 1);
  if (!j.contains("cavity") || !j.at("cavity").is_object())
    fail("top level needs a \"cavity\" object");
  const json& c = j.at("cavity");
  d.cavity.kappa = c.value("kappa", 0.0);
  d.cavity.delta = c.value("delta", 0.0);
  d.cavity.chi = c.value("chi", 0.0);
  if (j.contains("parameters"))
    for (const auto& p : j.at("parameters"))
      d.parameters.push_back(p.get<std::string>());
  if (j.contains("defaults"))
    for (const auto& [key, val] : j.at("defaults").items())
      d.defaults[key] = parse_complex(val, "default for " + key);
  if (j.contains("output_channels"))
    for (const auto& ch : j.at("output_channels"))
      d.output_channels.push_back(ch.get<int>());
  if (!j.contains("network")) fail("top level needs a \"network\" tree");
  d.root = parse_node(j.at("network"));
  d.validate();
  return d;
}

json to_json(const NetworkDescription& desc) {
  json j;
  j["name"] = desc.name;
  j["modes"] = desc.modes;
  j["cavity"] = {{"kappa", desc.cavity.kappa},
                 {"delta", desc.cavity.delta},
                 {"chi", desc.cavity.chi}};
  j["parameters"] = desc.parameters;
  if (!desc.defaults.empty()) {
    json defs = json::object();
    for (const auto& [key, val] : desc.defaults)
      defs[key] = complex_to_json(val);
    j["defaults"] = std::move(defs);
  }
  j["output_channels"] = desc.output_channels;
  j["network"] = node_to_json(desc.root);
  return j;
}

NetworkDescription load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    fail(path.string() + ": " + e.what());
  }
  return parse_network(j);
}

void save_network(const NetworkDescription& desc,
                  const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail("cannot open " + path.string() + " for writing");
  out << to_json(desc).dump(2) << "\n";
}

SlhTriple build_network(const NetworkDescription& desc,
                        const SpaceDescriptor& space) {
  if (space.modes() != desc.modes)
    throw std::invalid_argument(
        "network description: space has " + std::to_string(space.modes()) +
        " mode(s) but the description declares " + std::to_string(desc.modes));
  std::vector<CavityOps> ops;
  ops.reserve(static_cast<std::size_t>(desc.modes));
  for (int m = 0; m < desc.modes; ++m)
    ops.push_back(
        fock_cavity_ops(space, m, desc.cavity.delta, desc.cavity.chi));
  return build_network(desc, ops);
}

SlhTriple build_network(const NetworkDescription& desc,
                        const std::vector<CavityOps>& mode_ops) {
  desc.validate();
  if (mode_ops.empty())
    throw std::invalid_argument("network description: no mode operators");
  BuildContext ctx{desc, mode_ops, mode_ops.front().lower.space()};
  return build_node(ctx, desc.root);
}

}  // namespace kerrsim
