#include "alphanet/report_io.hpp"

#include "alphanet/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace alphanet {

using nlohmann::json;

namespace {

/// JSON has no inf/nan; they are written as strings.
json number(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

std::string num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json numbers(const std::vector<double>& xs) {
    json out = json::array();
    for (double x : xs) out.push_back(number(x));
    return out;
}

json node_map(const Digraph& g, const std::vector<double>& values) {
    json out = json::object();
    for (NodeIndex k = 0; k < values.size() && k < g.node_count(); ++k) out[g.label(k)] = number(values[k]);
    return out;
}

json branch_label(const Digraph& g, BranchIndex s) {
    const auto& br = g.branch(s);
    return {{"index", s}, {"tail", g.label(br.tail)}, {"head", g.label(br.head)}};
}

json branch_list(const Digraph& g, const std::vector<BranchIndex>& list) {
    json out = json::array();
    for (auto s : list) out.push_back(branch_label(g, s));
    return out;
}

json partition(const Digraph& g, const BranchPartition& p) {
    return {{"first", branch_list(g, p.first)}, {"second", branch_list(g, p.second)}, {"ties", branch_list(g, p.ties)}};
}

}  // namespace

json to_json(const Digraph& g, const OperatingPoint& op) {
    json branches = json::array();
    for (BranchIndex s = 0; s < op.branch_voltages.size(); ++s) {
        auto entry = branch_label(g, s);
        entry["voltage"] = number(op.branch_voltages[s]);
        entry["current"] = number(op.branch_currents[s]);
        branches.push_back(std::move(entry));
    }
    return {{"v_in", number(op.v_in)},
            {"law", op.law.to_string()},
            {"input_current", number(op.input_current)},
            {"node_potentials", node_map(g, op.node_potentials)},
            {"branches", std::move(branches)},
            {"residual_norm", number(op.residual_norm)},
            {"iterations", op.iterations},
            {"used_homotopy", op.used_homotopy}};
}

json to_json(const Digraph& g, const SuperpositionReport& rep) {
    json participants = json::array();
    for (const auto& p : rep.participants) participants.push_back(p.to_string());
    json out = {{"v_in", number(rep.v_in)},
                {"participants", std::move(participants)},
                {"total_law", rep.total_law.to_string()},
                {"F", number(rep.F)},
                {"G", number(rep.G)},
                {"eta", rep.eta ? number(*rep.eta) : json(nullptr)},
                {"F_alpha", numbers(rep.F_alpha)},
                {"F_alpha_cnct", numbers(rep.F_alpha_cnct)},
                {"delta_P", numbers(rep.delta_P)},
                {"P_F", number(rep.P_F)},
                {"P_G", number(rep.P_G)},
                {"case", to_string(rep.error_case)},
                {"w_one", rep.w_one},
                {"two_alpha", rep.two_alpha},
                {"connected_potentials", node_map(g, rep.connected.node_potentials)}};
    json separate = json::array();
    for (const auto& op : rep.separate) separate.push_back(node_map(g, op.node_potentials));
    out["separate_potentials"] = std::move(separate);
    json rel = json::array();
    for (std::size_t i = 0; i < rep.F_alpha.size() && i < rep.F_alpha_cnct.size(); ++i) {
        rel.push_back(rep.F_alpha[i] > 0.0 ? number((rep.F_alpha_cnct[i] - rep.F_alpha[i]) / rep.F_alpha[i]) : json(nullptr));
    }
    out["wing_relative_change"] = std::move(rel);
    if (rep.sign_opposition) out["sign_opposition"] = *rep.sign_opposition;
    if (rep.similarly_monotonic) out["similarly_monotonic"] = *rep.similarly_monotonic;
    if (rep.s2_partition) out["s2_partition"] = partition(g, *rep.s2_partition);
    if (rep.s_partition) out["s_partition"] = partition(g, *rep.s_partition);
    return out;
}

json to_json(const BoundSet& bounds) {
    json entries = json::array();
    for (const auto& e : bounds.entries) {
        json entry = {{"id", e.id},
                      {"rhs", number(e.rhs)},
                      {"dominated", number(e.dominated)},
                      {"applicable", e.applicable},
                      {"holds", e.holds}};
        if (!e.note.empty()) entry["note"] = e.note;
        entries.push_back(std::move(entry));
    }
    return {{"entries", std::move(entries)}, {"all_hold", bounds.all_hold()}};
}

json to_json(const Digraph& g, const AlphaSweep& sweep) {
    json samples = json::array();
    for (std::size_t i = 0; i < sweep.alphas.size(); ++i) {
        samples.push_back({{"alpha", number(sweep.alphas[i])},
                           {"phi", number(sweep.phi_values[i])},
                           {"potentials", node_map(g, sweep.potentials[i])}});
    }
    json trends = json::object();
    for (NodeIndex k = 0; k < sweep.node_trends.size(); ++k) trends[g.label(k)] = to_string(sweep.node_trends[k]);
    json s2 = json::array();
    for (std::size_t j = 0; j < sweep.s2_branches.size(); ++j) {
        auto entry = branch_label(g, sweep.s2_branches[j]);
        entry["trend"] = to_string(sweep.s2_trends[j]);
        s2.push_back(std::move(entry));
    }
    json counter = json::array();
    for (auto k : sweep.counterexamples()) counter.push_back(g.label(k));
    json failures = json::array();
    for (const auto& [alpha, msg] : sweep.failures) failures.push_back({{"alpha", alpha}, {"error", msg}});
    const auto mono = classify_monotonicity(sweep);
    return {{"v_in", number(sweep.v_in)},
            {"samples", std::move(samples)},
            {"node_trends", std::move(trends)},
            {"s2_branches", std::move(s2)},
            {"similarly_monotonic", mono.similar},
            {"ideal", mono.all_constant},
            {"counterexamples", std::move(counter)},
            {"failures", std::move(failures)}};
}

json to_json(const Digraph& g, const P3Report& rep) {
    json per = json::array();
    for (std::size_t j = 0; j < rep.s2_branches.size(); ++j) {
        auto entry = branch_label(g, rep.s2_branches[j]);
        entry["separate"] = {number(rep.separate[j][0]), number(rep.separate[j][1]), number(rep.separate[j][2])};
        entry["connected13"] = number(rep.connected13[j]);
        entry["connected123"] = number(rep.connected123[j]);
        entry["bracketed"] = static_cast<bool>(rep.bracketed[j]);
        entry["chain_ordered"] = static_cast<bool>(rep.chain_ordered[j]);
        entry["closeness"] = number(rep.closeness[j]);
        per.push_back(std::move(entry));
    }
    return {{"alphas", rep.alphas},
            {"s2", std::move(per)},
            {"F13", number(rep.F13)},
            {"F2", number(rep.F2)},
            {"F123", number(rep.F123)},
            {"completion_change", number(rep.completion_change)},
            {"bracketing_holds", rep.bracketing_holds},
            {"chain_holds", rep.chain_holds}};
}

json to_json(const Digraph& g, const P4Report& rep) {
    json chain = json::object();
    for (NodeIndex k = 0; k < rep.chain_ordered.size(); ++k) chain[g.label(k)] = static_cast<bool>(rep.chain_ordered[k]);
    json interior = json::array();
    for (bool b : rep.intermediates_interior) interior.push_back(b);
    return {{"alphas", rep.alphas},
            {"potentials14", node_map(g, rep.potentials14)},
            {"potentials23", node_map(g, rep.potentials23)},
            {"max_intermediate_distance", number(rep.max_intermediate_distance)},
            {"intermediates_interior", std::move(interior)},
            {"chain_ordered", std::move(chain)},
            {"F_full", number(rep.F_full)},
            {"G", number(rep.G)},
            {"F_intermediates", number(rep.F_intermediates)},
            {"chain_holds", rep.chain_holds},
            {"interior_holds", rep.interior_holds}};
}

json to_json(const DContinuityReport& rep) {
    return {{"alpha1", number(rep.alpha1)},
            {"alpha2", number(rep.alpha2)},
            {"d_values", numbers(rep.d_values)},
            {"distance_to_alpha1", numbers(rep.distance_to_alpha1)},
            {"distance_to_alpha2", numbers(rep.distance_to_alpha2)},
            {"low_tail_monotone", rep.low_tail_monotone},
            {"high_tail_monotone", rep.high_tail_monotone}};
}

json to_json(const TellegenResult& t) {
    return {{"residual", number(t.residual)}, {"power_scale", number(t.power_scale)}, {"cross_power", number(t.cross_power)}};
}

json campaign_summary(const CampaignResult& result) {
    json eta = json::object();
    for (const auto& [key, q] : result.eta_by_pair) {
        eta[key] = {{"count", q.count}, {"min", number(q.min)},   {"q25", number(q.q25)},
                    {"median", number(q.median)}, {"q75", number(q.q75)}, {"max", number(q.max)}};
    }
    return {{"config", json::parse(result.config.to_json_text())},
            {"instances", result.rows.size()},
            {"solver_failures", result.solver_failures},
            {"violations", result.violations},
            {"applicable", result.applicable},
            {"eta_quantiles", std::move(eta)},
            {"cases", {{"F>G", result.f_greater}, {"G>F", result.g_greater}, {"F=G", result.equal}}},
            {"similarly_monotonic_fraction", number(result.similarly_monotonic_fraction)},
            {"guaranteed_ok", result.guaranteed_ok()},
            {"all_ok", result.all_ok()}};
}

std::string sweep_csv(const Digraph& g, const AlphaSweep& sweep) {
    std::ostringstream out;
    out << "alpha,node,potential\n";
    for (std::size_t i = 0; i < sweep.alphas.size(); ++i) {
        for (NodeIndex k = 0; k < sweep.potentials[i].size(); ++k) {
            out << num(sweep.alphas[i]) << ',' << g.label(k) << ',' << num(sweep.potentials[i][k]) << '\n';
        }
    }
    return out.str();
}

std::string bounds_csv(const BoundSet& bounds) {
    std::ostringstream out;
    out << "id,applicable,holds,dominated,rhs\n";
    for (const auto& e : bounds.entries) {
        out << e.id << ',' << (e.applicable ? 1 : 0) << ',' << (e.holds ? 1 : 0) << ',' << num(e.dominated) << ','
            << num(e.rhs) << '\n';
    }
    return out.str();
}

std::string operating_point_csv(const Digraph& g, const OperatingPoint& op) {
    std::ostringstream out;
    out << "branch,tail,head,voltage,current\n";
    for (BranchIndex s = 0; s < op.branch_voltages.size(); ++s) {
        const auto& br = g.branch(s);
        out << s << ',' << g.label(br.tail) << ',' << g.label(br.head) << ',' << num(op.branch_voltages[s]) << ','
            << num(op.branch_currents[s]) << '\n';
    }
    return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace alphanet
