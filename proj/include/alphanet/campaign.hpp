#pragma once

// =============================================================================
// Random circuits and the bound-verification campaign
// =============================================================================

#include "alphanet/solver.hpp"
#include "alphanet/superposition.hpp"
#include "alphanet/topology.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace alphanet {

struct CampaignConfig {
    std::uint64_t seed = 1;
    std::size_t num_circuits = 1000;
    std::pair<int, int> node_range{1, 8};              ///< interior node count, inclusive
    std::pair<double, double> branch_factor{0.0, 2.0}; ///< extra branches per interior node
    std::vector<std::pair<double, double>> exponent_pairs{{1.0, 3.0}};
    std::vector<double> v_in_values{1.0};
    std::pair<double, double> coefficients{1.0, 1.0};  ///< D_m, D_n
    bool enforce_w1 = true;   ///< no parallel branches from one node to b
    unsigned threads = 0;     ///< 0: hardware concurrency
    SolverConfig solver;

    /// Throws DomainError on an invalid configuration.
    void validate() const;

    /// Reads the JSON form; absent fields keep their defaults.
    /// Throws ParseError on unknown fields or wrong types.
    static CampaignConfig from_json_text(std::string_view text);
    std::string to_json_text() const;
};

/// Seed of circuit `index` in a campaign seeded with `campaign_seed`.
std::uint64_t circuit_seed(std::uint64_t campaign_seed, std::size_t index);

/// Random valid 1-port.
///
/// An a-b path is grown by ears (paths between two distinct placed nodes
/// through fresh nodes) until every interior node is placed, so every node sits
/// on an a-b path; then extra chords are added without duplicating node pairs
/// (parallel branches into b are allowed only when enforce_w1 is off).
/// Orientations and branch order are randomized. Throws GenerationError when
/// the chord budget cannot be met.
Digraph generate_random_circuit(std::mt19937_64& rng, const CampaignConfig& cfg);

/// One row per circuit x exponent pair x v_in.
struct CampaignRow {
    std::uint64_t seed = 0;
    std::size_t circuit_index = 0;
    std::size_t nodes = 0;
    std::size_t branches = 0;
    double m = 0.0;
    double n = 0.0;
    double v_in = 0.0;
    bool solved = false;
    std::string failure;  ///< solver message when !solved

    double F = 0.0;
    double G = 0.0;
    double eta = 0.0;
    ErrorCase error_case = ErrorCase::equal;
    bool similarly_monotonic = false;
    BoundSet bounds;
    BracketingResult double_inequality;
    double tellegen_residual = 0.0;  ///< worst residual / power scale over the 6 cross pairings
    double identity_residual = 0.0;  ///< relative
    double energy_residual = 0.0;    ///< worst relative energy imbalance of the 3 solutions
};

struct EtaQuantiles {
    double min = 0.0;
    double q25 = 0.0;
    double median = 0.0;
    double q75 = 0.0;
    double max = 0.0;
    std::size_t count = 0;
};

struct CampaignResult {
    CampaignConfig config;
    std::vector<CampaignRow> rows;
    std::size_t solver_failures = 0;
    std::map<std::string, std::size_t> violations;   ///< per bound id / property
    std::map<std::string, std::size_t> applicable;   ///< instances where each was checked
    std::map<std::string, EtaQuantiles> eta_by_pair; ///< key "m,n"
    std::size_t f_greater = 0;
    std::size_t g_greater = 0;
    std::size_t equal = 0;
    double similarly_monotonic_fraction = 0.0;

    /// Double inequality, Tellegen, identity and energy checks all clean.
    bool guaranteed_ok() const;
    /// No violation of any kind.
    bool all_ok() const;
};

/// Property names tracked besides the bound ids.
inline constexpr const char* kDoubleInequality = "double_inequality";
inline constexpr const char* kTellegen = "tellegen";
inline constexpr const char* kTellegenIdentity = "tellegen_identity";
inline constexpr const char* kEnergy = "energy";

/// Analyzes a single circuit for one exponent pair and v_in.
CampaignRow analyze_instance(const Digraph& g, double m, double n, double v_in, const CampaignConfig& cfg);

/// Runs every circuit x pair x v_in; circuits are processed in parallel and
/// merged in index order, so results depend only on the config.
CampaignResult run_campaign(const CampaignConfig& cfg);

/// Fixed-column CSV, one line per row (header included).
std::string campaign_csv(const CampaignResult& result);

}  // namespace alphanet
