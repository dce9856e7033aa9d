#pragma once

// =============================================================================
// 1-port topology: digraph, terminal-relative branch classes, f-connection
// =============================================================================

#include "alphanet/conductance_law.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace alphanet {

using NodeIndex = std::size_t;
using BranchIndex = std::size_t;

/// Directed branch. Its voltage is v_tail - v_head.
struct Branch {
    NodeIndex tail = 0;
    NodeIndex head = 0;

    friend bool operator==(const Branch&, const Branch&) = default;
};

/// Fixed topology of a 1-port driven between terminal a (v = v_in) and
/// terminal b (grounded).
///
/// Node indices follow label insertion order and branch indices follow branch
/// list order; both are stable and used by every downstream result.
/// Construction validates: a != b, unique labels, known endpoints, no
/// self-loops, and that every node lies on some a-b path.
class Digraph {
public:
    /// Throws TopologyError when any invariant is violated.
    Digraph(std::vector<std::string> node_labels, std::string terminal_a, std::string terminal_b,
            const std::vector<std::pair<std::string, std::string>>& branches);

    std::size_t node_count() const noexcept { return labels_.size(); }
    std::size_t branch_count() const noexcept { return branches_.size(); }

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(NodeIndex k) const { return labels_.at(k); }
    std::optional<NodeIndex> find(std::string_view label) const;
    /// Throws TopologyError for unknown labels.
    NodeIndex index_of(std::string_view label) const;

    NodeIndex terminal_a() const noexcept { return a_; }
    NodeIndex terminal_b() const noexcept { return b_; }

    const std::vector<Branch>& branches() const noexcept { return branches_; }
    const Branch& branch(BranchIndex s) const { return branches_.at(s); }

    /// Nodes other than a and b, in index order.
    std::vector<NodeIndex> interior_nodes() const;

    friend bool operator==(const Digraph&, const Digraph&) = default;

private:
    std::vector<std::string> labels_;
    NodeIndex a_ = 0;
    NodeIndex b_ = 0;
    std::vector<Branch> branches_;
};

/// Branch sets relative to the terminals.
struct BranchClassification {
    std::vector<BranchIndex> s_double_prime;   ///< branches incident to b
    std::vector<BranchIndex> s_prime;          ///< branches incident to a
    std::vector<NodeIndex> k_s_double_prime;   ///< non-b end of each s'' branch (parallel to s_double_prime)
    std::map<NodeIndex, std::size_t> w_s_double_prime;  ///< parallel branch count from k to b
    bool has_ab_branch = false;

    /// The bound derivations assume no two s'' branches share a k_{s''}.
    bool all_w_one() const noexcept;
};

BranchClassification classify_branches(const Digraph& g);

/// A digraph together with the law of all of its conductors.
struct Realization {
    Digraph graph;
    ConductanceLaw law;
};

/// Which realizations are f-connected and how their nodes correspond.
///
/// `correspondence[i]` maps node labels of participant i to labels of
/// participant 0; an empty map means identity. `partial`, when set, lists the
/// reference labels that are short-circuited; only full plans are solvable.
struct ConnectionPlan {
    std::vector<std::string> participants;
    std::vector<std::map<std::string, std::string>> correspondence;
    std::optional<std::vector<std::string>> partial;

    bool is_full() const noexcept { return !partial.has_value(); }
};

/// True when `mapping` (labels of `other` -> labels of `reference`) is a bijection
/// sending a->a, b->b and carrying the directed branch multiset of `other` onto
/// that of `reference`. An empty mapping is the identity.
bool is_isomorphic_under(const Digraph& reference, const Digraph& other,
                         const std::map<std::string, std::string>& mapping);

/// f-connection of same-topology realizations: the topology of participant 0
/// with the term-wise sum of all participant laws.
/// Throws TopologyError on a mismatched topology, DomainError on a partial plan.
Realization f_connect(std::span<const Realization> participants, const ConnectionPlan& plan);

/// f-connection on one shared digraph is plain law addition.
ConductanceLaw f_connect(std::span<const ConductanceLaw> laws);

/// Binary merge tree over participant indices (0-based).
struct MergeSchedule {
    std::optional<std::size_t> participant;  ///< set on leaves
    std::vector<MergeSchedule> children;     ///< exactly two on internal nodes

    static MergeSchedule leaf(std::size_t participant);
    static MergeSchedule merge(MergeSchedule left, MergeSchedule right);

    /// Parses the 1-based nested form used on the command line, e.g. "((1,3),2)".
    static MergeSchedule parse(std::string_view text);

    std::string to_string() const;
};

struct StepwiseResult {
    std::vector<ConductanceLaw> intermediates;  ///< internal merges in post-order, root excluded
    ConductanceLaw total;
};

/// Performs the f-connection in the order given by `schedule`.
/// Throws DomainError for fewer than three laws, ScheduleError when the tree
/// misses, repeats or overruns a participant.
StepwiseResult stepwise_connect(std::span<const ConductanceLaw> laws, const MergeSchedule& schedule);

}  // namespace alphanet
