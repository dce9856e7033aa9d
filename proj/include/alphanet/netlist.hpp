#pragma once

// Netlist JSON:
//   { "nodes": ["a", "n1", "b"], "a": "a", "b": "b",
//     "branches": [["a", "n1"], ["n1", "b"]] }
// Branch array order defines the branch index.

#include "alphanet/topology.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace alphanet {

/// Throws ParseError (with line/field context) on malformed input and
/// TopologyError when the described digraph is invalid.
Digraph parse_netlist(std::string_view json_text);
Digraph load_netlist(const std::filesystem::path& path);

std::string serialize_netlist(const Digraph& g);
void save_netlist(const Digraph& g, const std::filesystem::path& path);

}  // namespace alphanet
