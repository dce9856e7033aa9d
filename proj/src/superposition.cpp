#include "alphanet/superposition.hpp"

#include "alphanet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace alphanet {

namespace {

constexpr double kEtaUnderflow = 1e-300;

int sign_of(double x, double zero_band) {
    if (x > zero_band) return 1;
    if (x < -zero_band) return -1;
    return 0;
}

/// Per-branch view of the two-alpha data shared by every bound.
struct TwoAlphaView {
    PowerTerm m;
    PowerTerm n;
    ConductanceLaw law_m;
    ConductanceLaw law_n;
    const OperatingPoint& conn;
    const OperatingPoint& sep_m;
    const OperatingPoint& sep_n;

    explicit TwoAlphaView(const SuperpositionReport& rep)
        : m(rep.participants.at(0).terms().front()),
          n(rep.participants.at(1).terms().front()),
          law_m(rep.participants[0]),
          law_n(rep.participants[1]),
          conn(rep.connected),
          sep_m(rep.separate.at(0)),
          sep_n(rep.separate.at(1)) {}

    /// Node potential at the far end of the j-th s'' branch.
    static double s2_voltage(const SuperpositionReport& rep, const OperatingPoint& op, std::size_t j) {
        return op.node_potentials[rep.classification.k_s_double_prime[j]];
    }

    std::size_t s2_position(const SuperpositionReport& rep, BranchIndex s) const {
        const auto& sdp = rep.classification.s_double_prime;
        return static_cast<std::size_t>(std::find(sdp.begin(), sdp.end(), s) - sdp.begin());
    }
};

void require_two_alpha(const SuperpositionReport& rep, const char* what) {
    if (!rep.two_alpha) throw DomainError(std::string(what) + " needs exactly two one-term participants");
}

double current_scale(const SuperpositionReport& rep) {
    return std::max({rep.F, rep.G, std::numeric_limits<double>::min()});
}

double power_scale(const SuperpositionReport& rep) {
    return std::max({rep.P_F, rep.P_G, std::numeric_limits<double>::min()});
}

BoundEntry make_entry(std::string id, double rhs, double dominated, bool applicable, double scale,
                      std::string note = {}) {
    BoundEntry e{std::move(id), rhs, dominated, applicable, true, std::move(note)};
    if (applicable) e.holds = std::isfinite(rhs) && dominated <= rhs + kHoldsSlack * scale;
    return e;
}

/// Sums of D_p [v^p(conn) - v^p(own separate)] over one s'' cell, for the m and n terms.
struct CellSums {
    double m = 0.0;
    double n = 0.0;
};

CellSums cell_sums(const SuperpositionReport& rep, const TwoAlphaView& view, const std::vector<BranchIndex>& cell) {
    CellSums sums;
    for (BranchIndex s : cell) {
        const auto j = view.s2_position(rep, s);
        const double vc = TwoAlphaView::s2_voltage(rep, view.conn, j);
        const double vm = TwoAlphaView::s2_voltage(rep, view.sep_m, j);
        const double vn = TwoAlphaView::s2_voltage(rep, view.sep_n, j);
        sums.m += view.law_m.current(vc) - view.law_m.current(vm);
        sums.n += view.law_n.current(vc) - view.law_n.current(vn);
    }
    return sums;
}

}  // namespace

const char* to_string(ErrorCase c) noexcept {
    switch (c) {
        case ErrorCase::f_greater: return "F>G";
        case ErrorCase::g_greater: return "G>F";
        case ErrorCase::equal: return "F=G";
    }
    return "?";
}

// -----------------------------------------------------------------------------
// superpose
// -----------------------------------------------------------------------------

SuperpositionReport superpose(const Digraph& g, const std::vector<ConductanceLaw>& participants, double v_in,
                              const SolverConfig& cfg) {
    if (participants.size() < 2) throw DomainError("superposition needs at least two participants");

    SuperpositionReport rep;
    rep.v_in = v_in;
    rep.participants = participants;
    rep.total_law = f_connect(participants);
    rep.classification = classify_branches(g);
    rep.w_one = rep.classification.all_w_one();

    rep.connected = solve(g, rep.total_law, v_in, cfg);
    rep.F = rep.connected.input_current;
    rep.P_F = 0.0;
    for (std::size_t s = 0; s < g.branch_count(); ++s) {
        rep.P_F += rep.total_law.power_dissipated(rep.connected.branch_voltages[s]);
    }

    for (const auto& law : participants) {
        auto op = solve(g, law, v_in, cfg);
        double p_sep = 0.0;
        double p_conn = 0.0;
        for (std::size_t s = 0; s < g.branch_count(); ++s) {
            p_sep += law.power_dissipated(op.branch_voltages[s]);
            p_conn += law.power_dissipated(rep.connected.branch_voltages[s]);
        }
        rep.F_alpha.push_back(op.input_current);
        rep.F_alpha_cnct.push_back(wing_current(rep.connected, rep.classification, law));
        rep.delta_P.push_back(p_conn - p_sep);
        rep.P_G += p_sep;
        rep.G += op.input_current;
        rep.separate.push_back(std::move(op));
    }

    if (rep.F > kEtaUnderflow) rep.eta = std::abs(rep.F - rep.G) / rep.F;
    const double zero_band = kHoldsSlack * current_scale(rep);
    switch (sign_of(rep.F - rep.G, zero_band)) {
        case 1: rep.error_case = ErrorCase::f_greater; break;
        case -1: rep.error_case = ErrorCase::g_greater; break;
        default: rep.error_case = ErrorCase::equal; break;
    }

    rep.two_alpha = participants.size() == 2 && participants[0].is_single_term() && participants[1].is_single_term();
    if (!rep.two_alpha) return rep;

    const double tie = kTieBand * v_in;
    const auto& sep_m = rep.separate[0];
    const auto& sep_n = rep.separate[1];

    BranchPartition s2;
    for (std::size_t j = 0; j < rep.classification.s_double_prime.size(); ++j) {
        const BranchIndex s = rep.classification.s_double_prime[j];
        const NodeIndex k = rep.classification.k_s_double_prime[j];
        const double diff = sep_n.node_potentials[k] - sep_m.node_potentials[k];
        if (diff > tie) s2.first.push_back(s);
        else if (diff < -tie) s2.second.push_back(s);
        else s2.ties.push_back(s);
    }
    rep.similarly_monotonic = s2.first.empty() || s2.second.empty();
    rep.s2_partition = std::move(s2);

    BranchPartition all;
    for (BranchIndex s = 0; s < g.branch_count(); ++s) {
        const double diff = std::abs(sep_n.branch_voltages[s]) - std::abs(sep_m.branch_voltages[s]);
        if (diff > tie) all.first.push_back(s);
        else if (diff < -tie) all.second.push_back(s);
        else all.ties.push_back(s);
    }
    rep.s_partition = std::move(all);

    const double dm = rep.F_alpha_cnct[0] - rep.F_alpha[0];
    const double dn = rep.F_alpha_cnct[1] - rep.F_alpha[1];
    const int sm = sign_of(dm, zero_band);
    const int sn = sign_of(dn, zero_band);
    rep.sign_opposition = sm == -sn;
    return rep;
}

// -----------------------------------------------------------------------------
// Bound sets
// -----------------------------------------------------------------------------

const BoundEntry* BoundSet::find(const std::string& id) const {
    auto it = std::find_if(entries.begin(), entries.end(), [&](const BoundEntry& e) { return e.id == id; });
    return it == entries.end() ? nullptr : &*it;
}

bool BoundSet::all_hold() const {
    return std::all_of(entries.begin(), entries.end(), [](const BoundEntry& e) { return !e.applicable || e.holds; });
}

Statement2Result statement2_check(const SuperpositionReport& rep) {
    Statement2Result r;
    if (!rep.two_alpha) return r;
    r.lhs = std::abs(rep.F - rep.G);
    r.rhs = std::max(std::abs(rep.F_alpha_cnct[0] - rep.F_alpha[0]), std::abs(rep.F_alpha_cnct[1] - rep.F_alpha[1]));
    r.sign_opposition = rep.sign_opposition.value_or(false);
    r.applicable = rep.similarly_monotonic.value_or(false);
    r.holds = r.lhs <= r.rhs + kHoldsSlack * current_scale(rep);
    return r;
}

Statement3Result statement3_check(const SuperpositionReport& rep) {
    Statement3Result r;
    if (!rep.two_alpha) return r;
    r.applicable = true;
    const TwoAlphaView view(rep);
    const auto c1 = cell_sums(rep, view, rep.s2_partition->first);
    const auto c2 = cell_sums(rep, view, rep.s2_partition->second);
    const double slack = kHoldsSlack * current_scale(rep);
    r.lhs = std::abs(rep.F - rep.G);

    // Cross pairs: (m over cell 1 + n over cell 2) is nonnegative, the other nonpositive.
    const double positive = c1.m + c2.n;
    const double negative = c2.m + c1.n;
    r.bound15 = std::max(positive, std::abs(negative));
    r.holds15 = r.lhs <= r.bound15 + slack;

    const double m_total = c1.m + c2.m;
    const double n_total = c1.n + c2.n;
    r.wing_form_applicable = sign_of(m_total, slack) * sign_of(n_total, slack) < 0;
    r.wing_form_rhs = std::max(std::abs(m_total), std::abs(n_total));
    r.wing_form_holds = r.lhs <= r.wing_form_rhs + slack;

    const double group1 = c1.m + c1.n;
    const double group2 = c2.m + c2.n;
    r.grouping_applicable = sign_of(group1, slack) * sign_of(group2, slack) < 0;
    r.grouping_rhs = std::max(std::abs(group1), std::abs(group2));
    r.grouping_holds = r.lhs <= r.grouping_rhs + slack;
    return r;
}

std::vector<BoundEntry> bounds_s2(const SuperpositionReport& rep) {
    std::vector<BoundEntry> out;
    if (!rep.two_alpha) {
        for (const char* id : {"b10", "b11", "b12"}) out.push_back(make_entry(id, 0.0, 0.0, false, 1.0, "needs two one-term participants"));
        return out;
    }
    const TwoAlphaView view(rep);
    const bool similar = rep.similarly_monotonic.value_or(false);
    const std::string note = similar ? std::string{} : std::string{"s'' voltages not similarly monotonic"};

    // The two sums of the |F - G| bound, as they appear for v(m) < v(n):
    //   up   = sum D_m [v^m(n) - v^m(m)]   bounds F - G
    //   down = sum D_n [v^n(m) - v^n(n)]   bounds G - F when v(n) < v(m)
    // b10 is their signed maximum; max(|up|, |down|) covers both orderings and
    // both error cases and is reported alongside.
    double up = 0.0;
    double down = 0.0;
    double reduced_f = 0.0;
    const std::size_t count = rep.classification.s_double_prime.size();
    for (std::size_t j = 0; j < count; ++j) {
        const double vm = TwoAlphaView::s2_voltage(rep, view.sep_m, j);
        const double vn = TwoAlphaView::s2_voltage(rep, view.sep_n, j);
        up += view.law_m.current(vn) - view.law_m.current(vm);
        down += view.law_n.current(vm) - view.law_n.current(vn);
        reduced_f += rep.total_law.current(std::min(vm, vn));
    }
    const double b10 = std::max(up, down);
    const double abs_err = std::abs(rep.F - rep.G);
    const double eta = rep.eta.value_or(0.0);

    out.push_back(make_entry("b10", b10, abs_err, similar, current_scale(rep), note));
    out.push_back(make_entry("b10_abs", std::max(std::abs(up), std::abs(down)), abs_err, false, current_scale(rep),
                             "max of the two sum magnitudes; reported only"));
    const bool b11_ok = similar && reduced_f > 0.0;
    out.push_back(make_entry("b11", b11_ok ? b10 / reduced_f : std::numeric_limits<double>::infinity(), eta,
                             b11_ok && rep.eta.has_value(), 1.0, note));
    const bool b12_ok = similar && b10 < rep.G && rep.eta.has_value();
    out.push_back(make_entry("b12", b12_ok ? b10 / (rep.G - b10) : std::numeric_limits<double>::infinity(), eta,
                             b12_ok, 1.0, b10 < rep.G ? note : std::string{"b10 >= G"}));
    return out;
}

std::vector<BoundEntry> bounds_power(const SuperpositionReport& rep) {
    std::vector<BoundEntry> out;
    if (!rep.two_alpha) {
        for (const char* id : {"b25", "b26", "b25_26", "b21"}) out.push_back(make_entry(id, 0.0, 0.0, false, 1.0, "needs two one-term participants"));
        return out;
    }
    const TwoAlphaView view(rep);
    double b25 = 0.0;
    double b26 = 0.0;
    for (BranchIndex s : rep.s_partition->first) {
        const double am = view.sep_m.branch_voltages[s];
        const double an = view.sep_n.branch_voltages[s];
        b25 += view.law_m.power_dissipated(an) - view.law_m.power_dissipated(am);
        b26 += view.law_n.power_dissipated(an) - view.law_n.power_dissipated(am);
    }
    for (BranchIndex s : rep.s_partition->second) {
        const double am = view.sep_m.branch_voltages[s];
        const double an = view.sep_n.branch_voltages[s];
        b25 += view.law_n.power_dissipated(am) - view.law_n.power_dissipated(an);
        b26 += view.law_m.power_dissipated(am) - view.law_m.power_dissipated(an);
    }
    const double diff = rep.P_F - rep.P_G;
    const double pscale = power_scale(rep);
    out.push_back(make_entry("b25", b25, diff, rep.error_case == ErrorCase::f_greater, pscale, "bounds P_F - P_G"));
    out.push_back(make_entry("b26", b26, -diff, rep.error_case == ErrorCase::g_greater, pscale, "bounds P_G - P_F"));
    const double both = std::max(b25, b26);
    out.push_back(make_entry("b25_26", both, std::abs(diff), true, pscale, "bounds |P_F - P_G|"));
    const bool b21_ok = both < rep.P_G && rep.eta.has_value();
    out.push_back(make_entry("b21", b21_ok ? both / (rep.P_G - both) : std::numeric_limits<double>::infinity(),
                             rep.eta.value_or(0.0), b21_ok, 1.0, b21_ok ? std::string{} : std::string{"power bound >= P_G"}));
    return out;
}

// -----------------------------------------------------------------------------
// Tellegen
// -----------------------------------------------------------------------------

TellegenResult tellegen_check(const Digraph& g, const OperatingPoint& voltages_from, const OperatingPoint& currents_from) {
    const auto id = topology_fingerprint(g);
    if (voltages_from.topology_id != id || currents_from.topology_id != id ||
        voltages_from.branch_voltages.size() != g.branch_count() ||
        currents_from.branch_currents.size() != g.branch_count()) {
        throw MismatchError("operating points were not solved on this digraph");
    }
    TellegenResult r;
    double max_current = std::abs(currents_from.input_current);
    for (std::size_t s = 0; s < g.branch_count(); ++s) {
        r.cross_power += voltages_from.branch_voltages[s] * currents_from.branch_currents[s];
        max_current = std::max(max_current, std::abs(currents_from.branch_currents[s]));
    }
    r.residual = std::abs(-voltages_from.v_in * currents_from.input_current + r.cross_power);
    r.power_scale = voltages_from.v_in * max_current;
    return r;
}

IdentityResult tellegen_identity(const Digraph& g, const SuperpositionReport& rep) {
    require_two_alpha(rep, "the Tellegen identity");
    const TwoAlphaView view(rep);
    IdentityResult r;
    r.lhs = rep.v_in * (rep.F - rep.G);
    double magnitude = rep.v_in * (std::abs(rep.F) + std::abs(rep.G));
    for (std::size_t s = 0; s < g.branch_count(); ++s) {
        const double vs = view.conn.branch_voltages.at(s);
        const double terms[4] = {view.law_m.current(vs), -view.law_m.current(view.sep_m.branch_voltages[s]),
                                 view.law_n.current(vs), -view.law_n.current(view.sep_n.branch_voltages[s])};
        for (double t : terms) {
            r.rhs += vs * t;
            magnitude += std::abs(vs * t);
        }
    }
    r.residual = std::abs(r.lhs - r.rhs);
    r.relative = magnitude > 0.0 ? r.residual / magnitude : 0.0;
    return r;
}

// -----------------------------------------------------------------------------
// Double inequality over s''
// -----------------------------------------------------------------------------

BracketingResult check_double_inequality(const SuperpositionReport& rep) {
    require_two_alpha(rep, "the double inequality");
    BracketingResult r;
    const double band = kTieBand * rep.v_in;
    const auto& cls = rep.classification;
    for (std::size_t j = 0; j < cls.s_double_prime.size(); ++j) {
        const NodeIndex k = cls.k_s_double_prime[j];
        const double vm = rep.separate[0].node_potentials[k];
        const double vn = rep.separate[1].node_potentials[k];
        const double vc = rep.connected.node_potentials[k];
        if (std::abs(vm - vn) <= band) continue;
        ++r.checked;
        const double lo = std::min(vm, vn);
        const double hi = std::max(vm, vn);
        if (!(lo < vc && vc < hi)) {
            ++r.violations;
            r.violating.push_back(cls.s_double_prime[j]);
        }
        if ((std::abs(vc - vm) <= band) != (std::abs(vc - vn) <= band)) ++r.partial_equalities;
    }
    return r;
}

BoundSet evaluate_bounds(const Digraph& g, const SuperpositionReport& rep) {
    BoundSet set;
    const double cscale = current_scale(rep);

    const auto s2 = statement2_check(rep);
    set.entries.push_back(make_entry("stmt2", s2.rhs, s2.lhs, s2.applicable, cscale,
                                     s2.sign_opposition ? "wing changes opposite" : "wing changes not opposite"));

    const auto s3 = statement3_check(rep);
    set.entries.push_back(make_entry("b15", s3.bound15, s3.lhs, s3.applicable, cscale));
    set.entries.push_back(make_entry("stmt3_wing_form", s3.wing_form_rhs, s3.lhs, s3.wing_form_applicable, cscale));
    set.entries.push_back(make_entry("stmt3_grouping", s3.grouping_rhs, s3.lhs, s3.grouping_applicable, cscale));

    for (auto& e : bounds_s2(rep)) set.entries.push_back(std::move(e));
    for (auto& e : bounds_power(rep)) set.entries.push_back(std::move(e));

    if (rep.two_alpha) {
        const auto id = tellegen_identity(g, rep);
        BoundEntry e{"tellegen_identity_residual", 1e-9, id.relative, true, id.relative <= 1e-9, "relative to the summed term magnitude"};
        set.entries.push_back(std::move(e));
    }
    return set;
}

}  // namespace alphanet
