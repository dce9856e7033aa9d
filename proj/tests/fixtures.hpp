#pragma once

#include "alphanet/errors.hpp"
#include "alphanet/topology.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

using alphanet::Digraph;

inline Digraph single() { return Digraph({"a", "b"}, "a", "b", {{"a", "b"}}); }

inline Digraph chain() { return Digraph({"a", "n1", "b"}, "a", "b", {{"a", "n1"}, {"n1", "b"}}); }

/// a -> n1 and two parallel n1 -> b.
inline Digraph divider() { return Digraph({"a", "n1", "b"}, "a", "b", {{"a", "n1"}, {"n1", "b"}, {"n1", "b"}}); }

/// Divider without the parallel pair: a -> n1, n1 -> b, n1 -> n2 -> b.
inline Digraph divider_w1() {
    return Digraph({"a", "n1", "n2", "b"}, "a", "b", {{"a", "n1"}, {"n1", "b"}, {"n1", "n2"}, {"n2", "b"}});
}

/// Two sides with opposite voltage division: c sinks towards b, d rises towards a.
inline Digraph bridge() {
    return Digraph({"a", "c", "p", "q", "d", "x", "y", "b"}, "a", "b",
                   {{"a", "c"}, {"a", "p"}, {"p", "q"}, {"q", "c"}, {"c", "b"},
                    {"a", "d"}, {"d", "b"}, {"d", "x"}, {"x", "y"}, {"y", "b"}});
}

/// The bridge with a weak c-d link through a five-conductor chain and one extra
/// conductor in the left series chain, removing the symmetry.
inline Digraph bridge_asymmetric() {
    return Digraph({"a", "c", "p", "q", "r", "d", "x", "y", "b", "h1", "h2", "h3", "h4"}, "a", "b",
                   {{"a", "c"}, {"a", "p"}, {"p", "q"}, {"q", "r"}, {"r", "c"}, {"c", "b"},
                    {"a", "d"}, {"d", "b"}, {"d", "x"}, {"x", "y"}, {"y", "b"},
                    {"c", "h1"}, {"h1", "h2"}, {"h2", "h3"}, {"h3", "h4"}, {"h4", "d"}});
}

/// Hand-rolled generator for property tests: random undirected simple graph on
/// a, b and `interior` nodes, resampled until it forms a valid 1-port.
inline Digraph random_small_circuit(std::mt19937_64& rng, std::size_t interior, double density = 0.5) {
    std::vector<std::string> labels = {"a", "b"};
    for (std::size_t i = 0; i < interior; ++i) labels.push_back("k" + std::to_string(i));
    std::bernoulli_distribution keep(density);
    std::bernoulli_distribution flip(0.5);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<std::pair<std::string, std::string>> branches;
        for (std::size_t u = 0; u < labels.size(); ++u) {
            for (std::size_t v = u + 1; v < labels.size(); ++v) {
                if (!keep(rng)) continue;
                if (flip(rng)) branches.emplace_back(labels[v], labels[u]);
                else branches.emplace_back(labels[u], labels[v]);
            }
        }
        if (branches.empty()) continue;
        try {
            return Digraph(labels, "a", "b", branches);
        } catch (const alphanet::TopologyError&) {
        }
    }
    throw std::runtime_error("random_small_circuit: no valid graph found");
}

}  // namespace fixtures
