#pragma once

// =============================================================================
// Potentials as functions of the exponent and of a term coefficient
// =============================================================================

#include "alphanet/solver.hpp"
#include "alphanet/topology.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace alphanet {

enum class Trend { increasing, decreasing, constant, non_monotonic };

const char* to_string(Trend t) noexcept;

/// Finite-grid monotonicity of a sampled sequence. Steps smaller than `band`
/// are neutral; a total variation below `band` is constant.
Trend classify_sequence(std::span<const double> values, double band);

/// Default exponent grid for monotonicity certification.
inline const std::vector<double> kDefaultAlphaGrid = {1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0};

struct AlphaSweep {
    double v_in = 1.0;
    std::vector<double> alphas;                   ///< grid points that solved
    std::vector<std::vector<double>> potentials;  ///< [sample][node]
    std::vector<BranchIndex> s2_branches;
    std::vector<NodeIndex> s2_nodes;
    std::vector<std::vector<double>> s2_voltages; ///< [sample][s'' position]
    std::vector<double> phi_values;               ///< F_alpha(v_in) / v_in^alpha at D = 1
    std::vector<Trend> node_trends;
    std::vector<Trend> s2_trends;
    std::vector<std::pair<double, std::string>> failures;  ///< grid points whose solve failed

    /// Nodes whose potential has an interior extremum on the grid.
    std::vector<NodeIndex> counterexamples() const;
};

/// Solves the D = 1 alpha-circuit at each grid point and classifies every
/// potential. Throws DomainError for a grid that is not strictly ascending,
/// has fewer than 3 points or contains alpha < 1, and when fewer than 3 points
/// survive the solver.
AlphaSweep sweep_alpha(const Digraph& g, const std::vector<double>& alphas, double v_in, const SolverConfig& cfg = {});

struct MonotonicityClass {
    bool similar = true;        ///< all non-constant s'' voltages move the same way
    bool all_constant = false;  ///< every s'' voltage is constant (ideal superposition)
    std::vector<Trend> per_branch;
};

MonotonicityClass classify_monotonicity(const AlphaSweep& sweep);

/// Two-step construction with three exponents a1 < a2 < a3.
struct P3Report {
    std::array<double, 3> alphas{};
    std::vector<BranchIndex> s2_branches;
    std::vector<std::array<double, 3>> separate;  ///< v_{s''}(a_i), per s''
    std::vector<double> connected13;              ///< v_{s''} of the a1 + a3 connection
    std::vector<double> connected123;             ///< v_{s''} of the full connection
    std::vector<bool> bracketed;                  ///< connected13 strictly between v(a1) and v(a3)
    std::vector<bool> chain_ordered;              ///< v(a1), v(a2), v(a3) monotone
    std::vector<double> closeness;                ///< |connected13 - v(a2)| / |v(a3) - v(a1)|
    double F13 = 0.0;
    double F2 = 0.0;
    double F123 = 0.0;
    double completion_change = 0.0;  ///< F123 - (F13 + F2)
    bool bracketing_holds = true;
    bool chain_holds = true;
};

P3Report bracketing_check_p3(const Digraph& g, const std::array<double, 3>& alphas, double v_in,
                             const SolverConfig& cfg = {});

/// Pairing (a1 + a4) and (a2 + a3) of four exponents.
struct P4Report {
    std::array<double, 4> alphas{};
    std::vector<double> potentials14;  ///< per node
    std::vector<double> potentials23;
    double max_intermediate_distance = 0.0;
    std::vector<bool> intermediates_interior;  ///< per s'': both intermediates inside [v(a1), v(a4)]
    std::vector<bool> chain_ordered;           ///< per node: v(a1..a4) monotone on separate solutions
    double F_full = 0.0;
    double G = 0.0;                             ///< sum of the four separate input currents
    double F_intermediates = 0.0;               ///< F(a1 + a4) + F(a2 + a3)
    bool chain_holds = true;
    bool interior_holds = true;
};

P4Report bracketing_check_p4(const Digraph& g, const std::array<double, 4>& alphas, double v_in,
                             const SolverConfig& cfg = {});

/// f = v^a1 + D v^a2 over a grid of D.
struct DContinuityReport {
    double alpha1 = 1.0;
    double alpha2 = 1.0;
    std::vector<double> d_values;
    std::vector<double> distance_to_alpha1;  ///< max_k |v_k(D) - v_k(a1 only)|
    std::vector<double> distance_to_alpha2;  ///< max_k |v_k(D) - v_k(a2 only)|
    bool low_tail_monotone = true;   ///< distance to a1 shrinks as D decreases
    bool high_tail_monotone = true;  ///< distance to a2 shrinks as D increases
};

/// Throws DomainError unless the positive D values span at least four decades.
/// D = 0 is allowed and means the a1 circuit itself.
DContinuityReport d_continuity(const Digraph& g, double alpha1, double alpha2, const std::vector<double>& d_values,
                               double v_in, const SolverConfig& cfg = {});

}  // namespace alphanet
