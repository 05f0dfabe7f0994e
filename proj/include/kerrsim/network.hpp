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

#ifndef KERRSIM_NETWORK_HPP_
#define KERRSIM_NETWORK_HPP_

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "kerrsim/components.hpp"
#include "kerrsim/slh.hpp"

namespace kerrsim {

// Declarative description of a photonic network: a composition tree over
// static linear optics, displacement sources, and Kerr cavity mirrors.
// Channel indices (feedback ports, permutation entries) are 1-based to match
// the usual network diagrams; cavity mode indices are 0-based like the rest
// of the C++ API.
struct NetworkNode {
  enum class Kind {
    Series,        // children are stages in signal order (first acts first)
    Concat,        // children stacked as independent channel blocks
    Feedback,      // single child; output_channel fed back into input_channel
    Identity,      // `channels` pass-through lines
    Beamsplitter,  // two channels, mixing angle `angle`
    Phase,         // one channel, shift `angle`
    Permutation,   // input k routed to output sigma[k-1]
    Displacement,  // one channel, amplitude = named parameter or fixed value
    KerrCavity,    // both mirrors of cavity `mode`
    KerrHalf1,     // input mirror of cavity `mode`
    KerrHalf2,     // output mirror of cavity `mode` (carries the detuning
                   // and Kerr Hamiltonian)
  };

  Kind kind = Kind::Identity;
  std::vector<NetworkNode> children;
  int output_channel = 0;
  int input_channel = 0;
  int channels = 1;
  double angle = 0.0;
  std::vector<int> sigma;
  bool has_param = false;
  std::string param;
  cplx value{0.0, 0.0};
  int mode = 0;
};

struct CavityParams {
  double kappa = 0.0;
  double delta = 0.0;
  double chi = 0.0;
};

struct NetworkDescription {
  std::string name;
  int modes = 1;
  CavityParams cavity;
  std::vector<std::string> parameters;       // declared drive names
  std::map<std::string, cplx> defaults;      // default bindings for parameters
  std::vector<int> output_channels;          // 1-based channels of interest
  NetworkNode root;

  // Declared parameters must exactly match the parameters appearing in the
  // tree; throws std::invalid_argument otherwise.
  void validate() const;
};

std::set<std::string> collect_parameters(const NetworkNode& node);

NetworkDescription parse_network(const nlohmann::json& j);
nlohmann::json to_json(const NetworkDescription& desc);
NetworkDescription load_network(const std::filesystem::path& path);
void save_network(const NetworkDescription& desc,
                  const std::filesystem::path& path);

// Assembles the SLH triple. The first overload builds number-state cavity
// operators on `space` from desc.cavity; the second substitutes caller
// supplied per-mode operators (already living on the joint space), which is
// how reduced cavity models enter a network.
SlhTriple build_network(const NetworkDescription& desc,
                        const SpaceDescriptor& space);
SlhTriple build_network(const NetworkDescription& desc,
                        const std::vector<CavityOps>& mode_ops);

}  // namespace kerrsim

#endif  // KERRSIM_NETWORK_HPP_
