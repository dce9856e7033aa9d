#include "alphanet/netlist.hpp"

#include "alphanet/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace alphanet {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* field) {
    auto it = obj.find(field);
    if (it == obj.end()) throw ParseError(std::string("netlist: missing field '") + field + "'");
    return *it;
}

std::string require_string(const json& value, const std::string& where) {
    if (!value.is_string()) throw ParseError("netlist: " + where + " must be a string");
    return value.get<std::string>();
}

}  // namespace

Digraph parse_netlist(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("netlist: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("netlist: top level must be an object");

    const auto& nodes_json = require(doc, "nodes");
    if (!nodes_json.is_array()) throw ParseError("netlist: field 'nodes' must be an array");
    std::vector<std::string> nodes;
    for (std::size_t i = 0; i < nodes_json.size(); ++i) {
        nodes.push_back(require_string(nodes_json[i], "nodes[" + std::to_string(i) + "]"));
    }
    const auto a = require_string(require(doc, "a"), "field 'a'");
    const auto b = require_string(require(doc, "b"), "field 'b'");

    const auto& branches_json = require(doc, "branches");
    if (!branches_json.is_array()) throw ParseError("netlist: field 'branches' must be an array");
    std::vector<std::pair<std::string, std::string>> branches;
    for (std::size_t s = 0; s < branches_json.size(); ++s) {
        const auto& br = branches_json[s];
        const std::string where = "branches[" + std::to_string(s) + "]";
        if (!br.is_array() || br.size() != 2) throw ParseError("netlist: " + where + " must be a [tail, head] pair");
        branches.emplace_back(require_string(br[0], where + "[0]"), require_string(br[1], where + "[1]"));
    }
    return Digraph(std::move(nodes), a, b, branches);
}

Digraph load_netlist(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open netlist '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_netlist(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::string serialize_netlist(const Digraph& g) {
    json doc;
    doc["nodes"] = g.labels();
    doc["a"] = g.label(g.terminal_a());
    doc["b"] = g.label(g.terminal_b());
    json branches = json::array();
    for (const auto& br : g.branches()) branches.push_back({g.label(br.tail), g.label(br.head)});
    doc["branches"] = std::move(branches);
    return doc.dump(2);
}

void save_netlist(const Digraph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write netlist '" + path.string() + "'");
    out << serialize_netlist(g) << '\n';
}

}  // namespace alphanet
