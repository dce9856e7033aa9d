#include "alphanet/campaign.hpp"

#include "alphanet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace alphanet {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

using Pair = std::pair<std::size_t, std::size_t>;

Pair unordered(std::size_t u, std::size_t v) { return u < v ? Pair{u, v} : Pair{v, u}; }

}  // namespace

std::uint64_t circuit_seed(std::uint64_t campaign_seed, std::size_t index) {
    return splitmix64(campaign_seed ^ splitmix64(static_cast<std::uint64_t>(index)));
}

Digraph generate_random_circuit(std::mt19937_64& rng, const CampaignConfig& cfg) {
    std::uniform_int_distribution<int> node_dist(cfg.node_range.first, cfg.node_range.second);
    const auto interior = static_cast<std::size_t>(node_dist(rng));

    // Indices: 0 = a, 1 = b, 2.. = interior.
    constexpr std::size_t a = 0;
    constexpr std::size_t b = 1;
    std::vector<std::string> labels = {"a", "b"};
    for (std::size_t i = 1; i <= interior; ++i) labels.push_back("n" + std::to_string(i));

    std::vector<std::size_t> pending(interior);
    for (std::size_t i = 0; i < interior; ++i) pending[i] = i + 2;
    std::shuffle(pending.begin(), pending.end(), rng);

    std::vector<std::size_t> placed = {a, b};
    std::vector<Pair> edges;
    std::multiset<Pair> used;
    auto add_edge = [&](std::size_t u, std::size_t v) {
        edges.push_back({u, v});
        used.insert(unordered(u, v));
    };
    auto add_ear = [&](std::size_t from, std::size_t to, std::size_t length) {
        std::size_t prev = from;
        for (std::size_t i = 0; i < length; ++i) {
            const std::size_t next = pending.back();
            pending.pop_back();
            placed.push_back(next);
            add_edge(prev, next);
            prev = next;
        }
        add_edge(prev, to);
    };

    {
        std::uniform_int_distribution<std::size_t> len(interior ? 1 : 0, interior);
        add_ear(a, b, len(rng));
    }
    while (!pending.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, placed.size() - 1);
        const std::size_t u = placed[pick(rng)];
        std::size_t v = u;
        while (v == u) v = placed[pick(rng)];
        std::uniform_int_distribution<std::size_t> len(1, pending.size());
        add_ear(u, v, len(rng));
    }

    // Extra chords.
    const std::size_t n_nodes = labels.size();
    auto allowed = [&](std::size_t u, std::size_t v) {
        if (u == v) return false;
        if (used.count(unordered(u, v)) == 0) return true;
        return !cfg.enforce_w1 && (u == b || v == b) && u != a && v != a;
    };
    std::size_t free_pairs = 0;
    for (std::size_t u = 0; u < n_nodes; ++u) {
        for (std::size_t v = u + 1; v < n_nodes; ++v) free_pairs += used.count({u, v}) == 0 ? 1 : 0;
    }
    std::uniform_real_distribution<double> factor(cfg.branch_factor.first, cfg.branch_factor.second);
    std::size_t chords = static_cast<std::size_t>(std::llround(factor(rng) * static_cast<double>(interior)));
    if (cfg.enforce_w1) chords = std::min(chords, free_pairs);

    std::uniform_int_distribution<std::size_t> any(0, n_nodes - 1);
    std::size_t budget = 1000 * (chords + 1);
    for (std::size_t added = 0; added < chords;) {
        if (budget-- == 0) throw GenerationError("could not place " + std::to_string(chords) + " extra branches");
        const std::size_t u = any(rng);
        const std::size_t v = any(rng);
        if (!allowed(u, v)) continue;
        add_edge(u, v);
        ++added;
    }

    std::shuffle(edges.begin(), edges.end(), rng);
    std::bernoulli_distribution flip(0.5);
    std::vector<std::pair<std::string, std::string>> branches;
    branches.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (flip(rng)) std::swap(u, v);
        branches.emplace_back(labels[u], labels[v]);
    }
    try {
        return Digraph(labels, "a", "b", branches);
    } catch (const TopologyError& e) {
        throw GenerationError(std::string("generated an invalid digraph: ") + e.what());
    }
}

}  // namespace alphanet
