#pragma once

// =============================================================================
// JSON / CSV rendering of solver, superposition, sweep and campaign results
// =============================================================================

#include "alphanet/campaign.hpp"
#include "alphanet/solver.hpp"
#include "alphanet/superposition.hpp"
#include "alphanet/sweep.hpp"
#include "alphanet/topology.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace alphanet {

nlohmann::json to_json(const Digraph& g, const OperatingPoint& op);
nlohmann::json to_json(const Digraph& g, const SuperpositionReport& rep);
nlohmann::json to_json(const BoundSet& bounds);
nlohmann::json to_json(const Digraph& g, const AlphaSweep& sweep);
nlohmann::json to_json(const Digraph& g, const P3Report& rep);
nlohmann::json to_json(const Digraph& g, const P4Report& rep);
nlohmann::json to_json(const DContinuityReport& rep);
nlohmann::json to_json(const TellegenResult& t);

/// Aggregates only; rows go to campaign_csv.
nlohmann::json campaign_summary(const CampaignResult& result);

/// Long format: alpha,node,potential.
std::string sweep_csv(const Digraph& g, const AlphaSweep& sweep);
/// id,applicable,holds,dominated,rhs
std::string bounds_csv(const BoundSet& bounds);
/// node,potential / branch,tail,head,voltage,current sections collapsed into one table.
std::string operating_point_csv(const Digraph& g, const OperatingPoint& op);

/// Throws Error when the file cannot be written.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace alphanet
