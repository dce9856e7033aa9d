#include "alphanet/topology.hpp"

#include "alphanet/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

namespace alphanet {

namespace {

// Articulation-point search on the undirected multigraph g + {a-b}. The graph
// with the extra a-b edge is 2-connected exactly when every node lies on a
// simple a-b path of g.
bool has_articulation_point(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);  // (neighbor, edge id)
    for (std::size_t e = 0; e < edges.size(); ++e) {
        adj[edges[e].first].push_back({edges[e].second, e});
        adj[edges[e].second].push_back({edges[e].first, e});
    }
    std::vector<int> disc(n, -1), low(n, 0);
    int timer = 0;
    bool found = false;
    std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t u, std::size_t parent_edge) {
        disc[u] = low[u] = timer++;
        int children = 0;
        for (auto [v, e] : adj[u]) {
            if (e == parent_edge) continue;
            if (disc[v] >= 0) {
                low[u] = std::min(low[u], disc[v]);
                continue;
            }
            ++children;
            dfs(v, e);
            low[u] = std::min(low[u], low[v]);
            if (parent_edge != static_cast<std::size_t>(-1) && low[v] >= disc[u]) found = true;
        }
        if (parent_edge == static_cast<std::size_t>(-1) && children > 1) found = true;
    };
    dfs(0, static_cast<std::size_t>(-1));
    const bool connected = std::all_of(disc.begin(), disc.end(), [](int d) { return d >= 0; });
    return found || !connected;
}

void collect_leaves(const MergeSchedule& node, std::vector<std::size_t>& out) {
    if (node.participant) {
        if (!node.children.empty()) throw ScheduleError("schedule leaf must not have children");
        out.push_back(*node.participant);
        return;
    }
    if (node.children.size() != 2) throw ScheduleError("schedule merges must be binary");
    for (const auto& c : node.children) collect_leaves(c, out);
}

ConductanceLaw run_schedule(const MergeSchedule& node, std::span<const ConductanceLaw> laws,
                            std::vector<ConductanceLaw>& intermediates) {
    if (node.participant) return laws[*node.participant];
    auto left = run_schedule(node.children[0], laws, intermediates);
    auto right = run_schedule(node.children[1], laws, intermediates);
    auto merged = left + right;
    intermediates.push_back(merged);
    return merged;
}

}  // namespace

// -----------------------------------------------------------------------------
// Digraph
// -----------------------------------------------------------------------------

Digraph::Digraph(std::vector<std::string> node_labels, std::string terminal_a, std::string terminal_b,
                 const std::vector<std::pair<std::string, std::string>>& branches)
    : labels_(std::move(node_labels)) {
    std::set<std::string> seen;
    for (const auto& l : labels_) {
        if (!seen.insert(l).second) throw TopologyError("duplicate node label '" + l + "'");
    }
    if (terminal_a == terminal_b) throw TopologyError("terminals a and b must differ");
    a_ = index_of(terminal_a);
    b_ = index_of(terminal_b);
    if (branches.empty()) throw TopologyError("digraph has no branches");

    branches_.reserve(branches.size());
    for (std::size_t s = 0; s < branches.size(); ++s) {
        const auto& [tail, head] = branches[s];
        auto t = find(tail);
        auto h = find(head);
        if (!t || !h) {
            throw TopologyError("branch " + std::to_string(s) + " references unknown node '" +
                                (t ? head : tail) + "'");
        }
        if (*t == *h) throw TopologyError("branch " + std::to_string(s) + " is a self-loop at '" + tail + "'");
        branches_.push_back({*t, *h});
    }

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(branches_.size() + 1);
    for (const auto& br : branches_) edges.push_back({br.tail, br.head});
    edges.push_back({a_, b_});
    if (labels_.size() > 2 && has_articulation_point(labels_.size(), edges)) {
        throw TopologyError("every node must lie on some a-b path (graph is disconnected or has a dangling part)");
    }
}

std::optional<NodeIndex> Digraph::find(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<NodeIndex>(it - labels_.begin());
}

NodeIndex Digraph::index_of(std::string_view label) const {
    auto k = find(label);
    if (!k) throw TopologyError("unknown node '" + std::string(label) + "'");
    return *k;
}

std::vector<NodeIndex> Digraph::interior_nodes() const {
    std::vector<NodeIndex> out;
    out.reserve(labels_.size());
    for (NodeIndex k = 0; k < labels_.size(); ++k) {
        if (k != a_ && k != b_) out.push_back(k);
    }
    return out;
}

// -----------------------------------------------------------------------------
// Classification
// -----------------------------------------------------------------------------

bool BranchClassification::all_w_one() const noexcept {
    return std::all_of(w_s_double_prime.begin(), w_s_double_prime.end(),
                       [](const auto& kv) { return kv.second == 1; });
}

BranchClassification classify_branches(const Digraph& g) {
    BranchClassification cls;
    const NodeIndex a = g.terminal_a();
    const NodeIndex b = g.terminal_b();
    for (BranchIndex s = 0; s < g.branch_count(); ++s) {
        const auto& br = g.branch(s);
        if (br.tail == b || br.head == b) {
            const NodeIndex k = br.tail == b ? br.head : br.tail;
            cls.s_double_prime.push_back(s);
            cls.k_s_double_prime.push_back(k);
            ++cls.w_s_double_prime[k];
            if (k == a) cls.has_ab_branch = true;
        }
        if (br.tail == a || br.head == a) cls.s_prime.push_back(s);
    }
    return cls;
}

// -----------------------------------------------------------------------------
// f-connection
// -----------------------------------------------------------------------------

bool is_isomorphic_under(const Digraph& reference, const Digraph& other,
                         const std::map<std::string, std::string>& mapping) {
    if (reference.node_count() != other.node_count() || reference.branch_count() != other.branch_count()) {
        return false;
    }
    std::vector<NodeIndex> to_ref(other.node_count());
    std::vector<bool> hit(reference.node_count(), false);
    for (NodeIndex k = 0; k < other.node_count(); ++k) {
        const auto& label = other.label(k);
        std::string target = label;
        if (!mapping.empty()) {
            auto it = mapping.find(label);
            if (it == mapping.end()) return false;
            target = it->second;
        }
        auto r = reference.find(target);
        if (!r || hit[*r]) return false;
        hit[*r] = true;
        to_ref[k] = *r;
    }
    if (to_ref[other.terminal_a()] != reference.terminal_a() || to_ref[other.terminal_b()] != reference.terminal_b()) {
        return false;
    }
    std::multiset<std::pair<NodeIndex, NodeIndex>> ref_edges, mapped_edges;
    for (const auto& br : reference.branches()) ref_edges.insert({br.tail, br.head});
    for (const auto& br : other.branches()) mapped_edges.insert({to_ref[br.tail], to_ref[br.head]});
    return ref_edges == mapped_edges;
}

Realization f_connect(std::span<const Realization> participants, const ConnectionPlan& plan) {
    if (participants.empty()) throw DomainError("f-connection needs at least one participant");
    if (!plan.is_full()) throw DomainError("partial f-connections cannot be solved");
    const auto& reference = participants.front().graph;
    std::vector<ConductanceLaw> laws;
    laws.reserve(participants.size());
    for (std::size_t i = 0; i < participants.size(); ++i) {
        static const std::map<std::string, std::string> identity;
        const auto& mapping = i < plan.correspondence.size() ? plan.correspondence[i] : identity;
        if (!is_isomorphic_under(reference, participants[i].graph, mapping)) {
            const std::string name = i < plan.participants.size() ? plan.participants[i] : std::to_string(i);
            throw TopologyError("participant '" + name + "' does not match the reference topology");
        }
        laws.push_back(participants[i].law);
    }
    return {reference, f_connect(laws)};
}

ConductanceLaw f_connect(std::span<const ConductanceLaw> laws) {
    if (laws.empty()) throw DomainError("f-connection needs at least one participant");
    ConductanceLaw total = laws.front();
    for (std::size_t i = 1; i < laws.size(); ++i) total = total + laws[i];
    return total;
}

// -----------------------------------------------------------------------------
// Stepwise connection
// -----------------------------------------------------------------------------

MergeSchedule MergeSchedule::leaf(std::size_t participant) {
    MergeSchedule s;
    s.participant = participant;
    return s;
}

MergeSchedule MergeSchedule::merge(MergeSchedule left, MergeSchedule right) {
    MergeSchedule s;
    s.children.push_back(std::move(left));
    s.children.push_back(std::move(right));
    return s;
}

MergeSchedule MergeSchedule::parse(std::string_view text) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& msg) -> ParseError {
        return ParseError("schedule '" + std::string(text) + "' at offset " + std::to_string(pos) + ": " + msg);
    };
    std::function<MergeSchedule()> parse_node = [&]() -> MergeSchedule {
        skip_ws();
        if (pos >= text.size()) throw fail("unexpected end");
        if (text[pos] == '(') {
            ++pos;
            auto left = parse_node();
            skip_ws();
            if (pos >= text.size() || text[pos] != ',') throw fail("expected ','");
            ++pos;
            auto right = parse_node();
            skip_ws();
            if (pos >= text.size() || text[pos] != ')') throw fail("expected ')'");
            ++pos;
            return merge(std::move(left), std::move(right));
        }
        std::size_t value = 0;
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            value = value * 10 + static_cast<std::size_t>(text[pos] - '0');
            ++pos;
        }
        if (pos == start) throw fail("expected participant number");
        if (value == 0) throw fail("participants are numbered from 1");
        return leaf(value - 1);
    };
    auto root = parse_node();
    skip_ws();
    if (pos != text.size()) throw fail("trailing characters");
    return root;
}

std::string MergeSchedule::to_string() const {
    if (participant) return std::to_string(*participant + 1);
    return "(" + children.at(0).to_string() + "," + children.at(1).to_string() + ")";
}

StepwiseResult stepwise_connect(std::span<const ConductanceLaw> laws, const MergeSchedule& schedule) {
    if (laws.size() < 3) throw DomainError("stepwise connection needs at least three participants");
    std::vector<std::size_t> leaves;
    collect_leaves(schedule, leaves);
    std::vector<int> count(laws.size(), 0);
    for (auto p : leaves) {
        if (p >= laws.size()) throw ScheduleError("schedule references participant " + std::to_string(p + 1) + " of " + std::to_string(laws.size()));
        if (++count[p] > 1) throw ScheduleError("schedule repeats participant " + std::to_string(p + 1));
    }
    for (std::size_t p = 0; p < laws.size(); ++p) {
        if (count[p] == 0) throw ScheduleError("schedule does not cover participant " + std::to_string(p + 1));
    }
    std::vector<ConductanceLaw> intermediates;
    auto total = run_schedule(schedule, laws, intermediates);
    intermediates.pop_back();  // root merge is the total
    return {std::move(intermediates), std::move(total)};
}

}  // namespace alphanet
