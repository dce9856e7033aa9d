#pragma once

// =============================================================================
// Approximate analytical superposition F ~ G = sum F_alpha and its error bounds
// =============================================================================
//
// For participants f_1..f_P on one digraph:
//   F  input current of the f-connection (law f_1 + ... + f_P)
//   G  sum of the input currents of the separately solved participants
//   eta = |F - G| / F
// With exactly two one-term participants m and n the report also carries the
// branch partitions and the quantities every error bound is checked against.

#include "alphanet/solver.hpp"
#include "alphanet/topology.hpp"

#include <optional>
#include <string>
#include <vector>

namespace alphanet {

/// Which side of the approximation is larger.
enum class ErrorCase { f_greater, g_greater, equal };

const char* to_string(ErrorCase c) noexcept;

/// Branch sets built by comparing the separate m and n solutions.
///
/// `first` holds branches with v(m) < v(n), `second` those with v(n) < v(m);
/// branches whose values differ by less than the tie band go to `ties`.
/// The s'' sets compare node potentials at b; the all-branch sets compare
/// branch-voltage magnitudes.
struct BranchPartition {
    std::vector<BranchIndex> first;
    std::vector<BranchIndex> second;
    std::vector<BranchIndex> ties;
};

struct SuperpositionReport {
    double v_in = 0.0;
    std::vector<ConductanceLaw> participants;
    ConductanceLaw total_law;

    double F = 0.0;
    double G = 0.0;
    std::optional<double> eta;             ///< empty when F underflows
    std::vector<double> F_alpha;           ///< separate input currents
    std::vector<double> F_alpha_cnct;      ///< wing currents in the connected state
    std::vector<double> delta_P;           ///< connected minus separate power, per participant
    double P_F = 0.0;
    double P_G = 0.0;
    ErrorCase error_case = ErrorCase::equal;
    bool w_one = true;                     ///< no parallel s'' branches share a node

    /// Two one-term participants (m = participants[0], n = participants[1]).
    bool two_alpha = false;
    std::optional<bool> sign_opposition;   ///< wing currents changed in opposite directions
    std::optional<BranchPartition> s2_partition;  ///< over {s''}
    std::optional<BranchPartition> s_partition;   ///< over all branches {s}
    std::optional<bool> similarly_monotonic;      ///< one of the s'' cells is empty

    BranchClassification classification;
    OperatingPoint connected;
    std::vector<OperatingPoint> separate;
};

/// Relative width of the band inside which two voltages count as equal.
inline constexpr double kTieBand = 1e-10;

/// Solves every participant alone and the f-connection once.
/// Throws DomainError for fewer than two participants; solver errors propagate.
SuperpositionReport superpose(const Digraph& g, const std::vector<ConductanceLaw>& participants, double v_in,
                              const SolverConfig& cfg = {});

/// One evaluated inequality: `dominated` must not exceed `rhs`.
struct BoundEntry {
    std::string id;
    double rhs = 0.0;
    double dominated = 0.0;
    bool applicable = false;
    bool holds = true;  ///< meaningful only when applicable
    std::string note;
};

struct BoundSet {
    std::vector<BoundEntry> entries;

    const BoundEntry* find(const std::string& id) const;
    /// Every applicable entry holds.
    bool all_hold() const;
};

/// Comparisons carry an absolute slack of this fraction of the quantity's scale
/// (currents: max(F, G); powers: max(P_F, P_G); eta: 1).
inline constexpr double kHoldsSlack = 1e-10;

struct Statement2Result {
    bool applicable = false;  ///< two participants and similarly monotonic
    bool holds = false;
    double lhs = 0.0;         ///< |F - G|
    double rhs = 0.0;         ///< max of the wing-current changes
    bool sign_opposition = false;
};

/// |F - G| against the larger wing-current change.
Statement2Result statement2_check(const SuperpositionReport& rep);

struct Statement3Result {
    bool applicable = false;
    double lhs = 0.0;              ///< |F - G|
    double bound15 = 0.0;          ///< max(positive cross sum, |negative cross sum|)
    bool holds15 = false;
    bool wing_form_applicable = false;  ///< full m-sum and n-sum of opposite sign
    double wing_form_rhs = 0.0;
    bool wing_form_holds = false;
    bool grouping_applicable = false;   ///< per-cell sums of opposite sign
    double grouping_rhs = 0.0;
    bool grouping_holds = false;
};

/// Bounds built from the {s''}_1 / {s''}_2 split; valid for mixed monotonicity.
Statement3Result statement3_check(const SuperpositionReport& rep);

/// b10 (on |F - G|), b11 and b12 (on eta) from the separate s'' voltages.
/// Only applicable when the report is similarly monotonic.
std::vector<BoundEntry> bounds_s2(const SuperpositionReport& rep);

/// b25 / b26 (on |P_F - P_G|, per case), their maximum, and b21 (on eta)
/// from the all-branch partition of the separate solutions.
std::vector<BoundEntry> bounds_power(const SuperpositionReport& rep);

struct TellegenResult {
    double residual = 0.0;     ///< |-v_in(1) i_in(2) + sum_s v_s(1) i_s(2)|
    double power_scale = 0.0;  ///< v_in(1) times the largest current of (2)
    double cross_power = 0.0;  ///< sum_s v_s(1) i_s(2)
};

/// Tellegen's theorem between two realizations of g.
/// Throws MismatchError when either point was not solved on g.
TellegenResult tellegen_check(const Digraph& g, const OperatingPoint& voltages_from, const OperatingPoint& currents_from);

struct IdentityResult {
    double lhs = 0.0;       ///< v_in (F - G)
    double rhs = 0.0;       ///< sum_s v_s [f_m(v_s) - f_m(v_s(m)) + f_n(v_s) - f_n(v_s(n))]
    double residual = 0.0;  ///< |lhs - rhs|
    double relative = 0.0;  ///< residual over the summed magnitude of all terms
};

/// v_in (F - G) expressed through all connected branch voltages.
/// Throws DomainError unless the report has two one-term participants.
IdentityResult tellegen_identity(const Digraph& g, const SuperpositionReport& rep);

/// Outcome of the s'' double-inequality check.
struct BracketingResult {
    std::size_t checked = 0;           ///< non-tied s'' branches
    std::size_t violations = 0;        ///< connected value not strictly inside
    std::size_t partial_equalities = 0;  ///< equal to exactly one endpoint
    std::vector<BranchIndex> violating;
};

/// min(v(m), v(n)) < v < max(v(m), v(n)) for every non-tied s''.
BracketingResult check_double_inequality(const SuperpositionReport& rep);

/// Every bound and identity above, in one set.
BoundSet evaluate_bounds(const Digraph& g, const SuperpositionReport& rep);

}  // namespace alphanet
