#pragma once

// =============================================================================
// DC operating point of a power-law / polynomial resistive 1-port
// =============================================================================

#include "alphanet/conductance_law.hpp"
#include "alphanet/topology.hpp"

#include <cstdint>
#include <vector>

namespace alphanet {

struct SolverConfig {
    double residual_tol = 1e-12;  ///< on the infinity norm of KCL residuals / current scale
    int max_iter = 200;           ///< Newton iterations per continuation stage
    double damping = 0.5;         ///< line-search contraction factor, in (0, 1)
    int homotopy_steps = 8;       ///< exponent continuation stages for the fallback

    /// Throws DomainError on a nonsensical configuration.
    void validate() const;
};

/// Solved state of one realization at one input voltage.
struct OperatingPoint {
    double v_in = 0.0;
    std::vector<double> node_potentials;  ///< v_a = v_in, v_b = 0
    std::vector<double> branch_voltages;  ///< v_tail - v_head
    std::vector<double> branch_currents;  ///< f(branch voltage), tail -> head
    double input_current = 0.0;           ///< i_in = F(v_in), summed over branches at a
    double residual_norm = 0.0;           ///< scaled KCL residual at convergence
    int iterations = 0;
    bool used_homotopy = false;
    ConductanceLaw law;                   ///< law the point was solved with
    std::uint64_t topology_id = 0;        ///< fingerprint of the solved digraph
};

/// Stable fingerprint of node labels, terminals and branch list.
std::uint64_t topology_fingerprint(const Digraph& g);

/// Unique operating point of g with every branch obeying `law`, terminal a
/// held at v_in and b grounded.
///
/// Damped Newton on the interior node potentials, started from the solution of
/// the linear (alpha = 1) network. When the line search stagnates, exponents are
/// continued from 1 to their targets in `homotopy_steps` stages (refined up to
/// three times). Throws DomainError for v_in <= 0 and ConvergenceError when all
/// of that fails.
OperatingPoint solve(const Digraph& g, const ConductanceLaw& law, double v_in, const SolverConfig& cfg = {});

/// Input current rebuilt from the grounded side: sum over s'' of f(v_{s''}).
/// Throws MismatchError when cls does not fit op.
double input_current_via_b(const OperatingPoint& op, const BranchClassification& cls, const ConductanceLaw& law);

/// phi(alpha) = F_alpha(1) / D, so that F_alpha(v_in) = D phi(alpha) v_in^alpha.
double phi(const Digraph& g, double alpha, const SolverConfig& cfg = {});

/// Current drawn at b by one participant's conductors at the connected-state
/// voltages: sum over s'' of f_component(v_{s''}).
/// Throws CompositionError if `component_law` is not part of op.law.
double wing_current(const OperatingPoint& op, const BranchClassification& cls, const ConductanceLaw& component_law);

}  // namespace alphanet
