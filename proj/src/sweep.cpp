#include "alphanet/sweep.hpp"

#include "alphanet/errors.hpp"
#include "alphanet/superposition.hpp"

#include <algorithm>
#include <cmath>

namespace alphanet {

namespace {

double max_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d;
}

bool strictly_ascending(std::span<const double> xs) {
    return std::adjacent_find(xs.begin(), xs.end(), [](double l, double r) { return !(l < r); }) == xs.end();
}

std::vector<double> s2_values(const OperatingPoint& op, const BranchClassification& cls) {
    std::vector<double> out;
    out.reserve(cls.k_s_double_prime.size());
    for (NodeIndex k : cls.k_s_double_prime) out.push_back(op.node_potentials[k]);
    return out;
}

bool chain_monotone(std::span<const double> values, double band) {
    const auto t = classify_sequence(values, band);
    if (t == Trend::constant) return true;
    if (t == Trend::non_monotonic) return false;
    // Every step must move (neutral steps break the strict chain).
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (std::abs(values[i] - values[i - 1]) <= band) return false;
    }
    return true;
}

}  // namespace

const char* to_string(Trend t) noexcept {
    switch (t) {
        case Trend::increasing: return "increasing";
        case Trend::decreasing: return "decreasing";
        case Trend::constant: return "constant";
        case Trend::non_monotonic: return "non-monotonic";
    }
    return "?";
}

Trend classify_sequence(std::span<const double> values, double band) {
    if (values.empty()) return Trend::constant;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (*hi - *lo < band) return Trend::constant;
    bool up = false;
    bool down = false;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double d = values[i] - values[i - 1];
        if (d > band) up = true;
        if (d < -band) down = true;
    }
    if (up && down) return Trend::non_monotonic;
    return up ? Trend::increasing : Trend::decreasing;
}

// -----------------------------------------------------------------------------
// Exponent sweep
// -----------------------------------------------------------------------------

std::vector<NodeIndex> AlphaSweep::counterexamples() const {
    std::vector<NodeIndex> out;
    for (NodeIndex k = 0; k < node_trends.size(); ++k) {
        if (node_trends[k] == Trend::non_monotonic) out.push_back(k);
    }
    return out;
}

AlphaSweep sweep_alpha(const Digraph& g, const std::vector<double>& alphas, double v_in, const SolverConfig& cfg) {
    if (alphas.size() < 3) throw DomainError("an exponent sweep needs at least 3 grid points");
    if (!strictly_ascending(alphas)) throw DomainError("exponent grid must be strictly ascending");
    if (alphas.front() < 1.0) throw DomainError("exponents below 1 are not supported");

    const auto cls = classify_branches(g);
    AlphaSweep sw;
    sw.v_in = v_in;
    sw.s2_branches = cls.s_double_prime;
    sw.s2_nodes = cls.k_s_double_prime;
    for (double alpha : alphas) {
        try {
            const auto op = solve(g, ConductanceLaw::power(1.0, alpha), v_in, cfg);
            sw.alphas.push_back(alpha);
            sw.potentials.push_back(op.node_potentials);
            sw.s2_voltages.push_back(s2_values(op, cls));
            sw.phi_values.push_back(op.input_current / std::pow(v_in, alpha));
        } catch (const Error& e) {
            sw.failures.emplace_back(alpha, e.what());
        }
    }
    if (sw.alphas.size() < 3) throw DomainError("fewer than 3 grid points solved");

    const double band = kTieBand * v_in;
    std::vector<double> series(sw.alphas.size());
    for (NodeIndex k = 0; k < g.node_count(); ++k) {
        for (std::size_t i = 0; i < series.size(); ++i) series[i] = sw.potentials[i][k];
        sw.node_trends.push_back(classify_sequence(series, band));
    }
    for (std::size_t j = 0; j < sw.s2_branches.size(); ++j) {
        for (std::size_t i = 0; i < series.size(); ++i) series[i] = sw.s2_voltages[i][j];
        sw.s2_trends.push_back(classify_sequence(series, band));
    }
    return sw;
}

MonotonicityClass classify_monotonicity(const AlphaSweep& sweep) {
    MonotonicityClass mc;
    mc.per_branch = sweep.s2_trends;
    bool up = false;
    bool down = false;
    bool any_moving = false;
    for (Trend t : sweep.s2_trends) {
        if (t == Trend::increasing) up = true;
        if (t == Trend::decreasing) down = true;
        if (t != Trend::constant) any_moving = true;
        if (t == Trend::non_monotonic) mc.similar = false;
    }
    if (up && down) mc.similar = false;
    mc.all_constant = !any_moving;
    return mc;
}

// -----------------------------------------------------------------------------
// Three and four exponents
// -----------------------------------------------------------------------------

P3Report bracketing_check_p3(const Digraph& g, const std::array<double, 3>& alphas, double v_in,
                             const SolverConfig& cfg) {
    if (!strictly_ascending(alphas) || alphas[0] < 1.0) {
        throw DomainError("three ascending exponents >= 1 are required");
    }
    const auto cls = classify_branches(g);
    std::array<OperatingPoint, 3> sep;
    for (std::size_t i = 0; i < 3; ++i) sep[i] = solve(g, ConductanceLaw::power(1.0, alphas[i]), v_in, cfg);
    const ConductanceLaw law1 = ConductanceLaw::power(1.0, alphas[0]);
    const ConductanceLaw law2 = ConductanceLaw::power(1.0, alphas[1]);
    const ConductanceLaw law3 = ConductanceLaw::power(1.0, alphas[2]);
    const auto op13 = solve(g, law1 + law3, v_in, cfg);
    const auto op123 = solve(g, law1 + law2 + law3, v_in, cfg);

    P3Report r;
    r.alphas = alphas;
    r.s2_branches = cls.s_double_prime;
    const double band = kTieBand * v_in;
    for (std::size_t j = 0; j < cls.s_double_prime.size(); ++j) {
        const NodeIndex k = cls.k_s_double_prime[j];
        const std::array<double, 3> v = {sep[0].node_potentials[k], sep[1].node_potentials[k], sep[2].node_potentials[k]};
        const double c13 = op13.node_potentials[k];
        r.separate.push_back(v);
        r.connected13.push_back(c13);
        r.connected123.push_back(op123.node_potentials[k]);

        const double lo = std::min(v[0], v[2]);
        const double hi = std::max(v[0], v[2]);
        const bool tie = hi - lo <= band;
        r.bracketed.push_back(tie || (lo < c13 && c13 < hi));
        r.chain_ordered.push_back(chain_monotone(v, band));
        r.closeness.push_back(tie ? 0.0 : std::abs(c13 - v[1]) / (hi - lo));
    }
    r.F13 = op13.input_current;
    r.F2 = sep[1].input_current;
    r.F123 = op123.input_current;
    r.completion_change = r.F123 - (r.F13 + r.F2);
    r.bracketing_holds = std::all_of(r.bracketed.begin(), r.bracketed.end(), [](bool b) { return b; });
    r.chain_holds = std::all_of(r.chain_ordered.begin(), r.chain_ordered.end(), [](bool b) { return b; });
    return r;
}

P4Report bracketing_check_p4(const Digraph& g, const std::array<double, 4>& alphas, double v_in,
                             const SolverConfig& cfg) {
    if (!strictly_ascending(alphas) || alphas[0] < 1.0) {
        throw DomainError("four ascending exponents >= 1 are required");
    }
    const auto cls = classify_branches(g);
    std::array<ConductanceLaw, 4> laws;
    std::array<OperatingPoint, 4> sep;
    for (std::size_t i = 0; i < 4; ++i) {
        laws[i] = ConductanceLaw::power(1.0, alphas[i]);
        sep[i] = solve(g, laws[i], v_in, cfg);
    }
    const auto op14 = solve(g, laws[0] + laws[3], v_in, cfg);
    const auto op23 = solve(g, laws[1] + laws[2], v_in, cfg);
    const auto full = solve(g, laws[0] + laws[1] + laws[2] + laws[3], v_in, cfg);

    P4Report r;
    r.alphas = alphas;
    r.potentials14 = op14.node_potentials;
    r.potentials23 = op23.node_potentials;
    r.max_intermediate_distance = max_distance(op14.node_potentials, op23.node_potentials);
    const double band = kTieBand * v_in;
    for (NodeIndex k = 0; k < g.node_count(); ++k) {
        const std::array<double, 4> v = {sep[0].node_potentials[k], sep[1].node_potentials[k],
                                         sep[2].node_potentials[k], sep[3].node_potentials[k]};
        r.chain_ordered.push_back(chain_monotone(v, band));
    }
    for (NodeIndex k : cls.k_s_double_prime) {
        const double lo = std::min(sep[0].node_potentials[k], sep[3].node_potentials[k]);
        const double hi = std::max(sep[0].node_potentials[k], sep[3].node_potentials[k]);
        auto inside = [&](double x) { return hi - lo <= band || (lo < x && x < hi); };
        r.intermediates_interior.push_back(inside(op14.node_potentials[k]) && inside(op23.node_potentials[k]));
    }
    r.F_full = full.input_current;
    for (const auto& op : sep) r.G += op.input_current;
    r.F_intermediates = op14.input_current + op23.input_current;
    r.chain_holds = std::all_of(r.chain_ordered.begin(), r.chain_ordered.end(), [](bool b) { return b; });
    r.interior_holds = std::all_of(r.intermediates_interior.begin(), r.intermediates_interior.end(), [](bool b) { return b; });
    return r;
}

// -----------------------------------------------------------------------------
// Coefficient continuity
// -----------------------------------------------------------------------------

DContinuityReport d_continuity(const Digraph& g, double alpha1, double alpha2, const std::vector<double>& d_values,
                               double v_in, const SolverConfig& cfg) {
    if (d_values.empty() || !strictly_ascending(d_values) || d_values.front() < 0.0) {
        throw DomainError("D grid must be ascending and nonnegative");
    }
    const auto first_positive = std::find_if(d_values.begin(), d_values.end(), [](double d) { return d > 0.0; });
    if (first_positive == d_values.end() || d_values.back() / *first_positive < 1e4 * (1.0 - 1e-12)) {
        throw DomainError("D grid must span at least four decades");
    }

    const auto only1 = solve(g, ConductanceLaw::power(1.0, alpha1), v_in, cfg).node_potentials;
    const auto only2 = solve(g, ConductanceLaw::power(1.0, alpha2), v_in, cfg).node_potentials;

    DContinuityReport r;
    r.alpha1 = alpha1;
    r.alpha2 = alpha2;
    r.d_values = d_values;
    for (double d : d_values) {
        const ConductanceLaw law = d > 0.0 ? ConductanceLaw({{1.0, alpha1}, {d, alpha2}}) : ConductanceLaw::power(1.0, alpha1);
        const auto v = solve(g, law, v_in, cfg).node_potentials;
        r.distance_to_alpha1.push_back(max_distance(v, only1));
        r.distance_to_alpha2.push_back(max_distance(v, only2));
    }
    const double band = kTieBand * v_in;
    for (std::size_t i = 1; i < d_values.size(); ++i) {
        if (r.distance_to_alpha1[i] + band < r.distance_to_alpha1[i - 1]) r.low_tail_monotone = false;
        if (r.distance_to_alpha2[i] > r.distance_to_alpha2[i - 1] + band) r.high_tail_monotone = false;
    }
    return r;
}

}  // namespace alphanet
