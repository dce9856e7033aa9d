#include "alphanet/errors.hpp"
#include "alphanet/superposition.hpp"
#include "alphanet/sweep.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace alphanet;
using Catch::Approx;

namespace {

const std::vector<ConductanceLaw> kLinearCubic = {ConductanceLaw::power(1, 1), ConductanceLaw::power(1, 3)};

double divider_v(double alpha) { return 1.0 / (1.0 + std::pow(2.0, 1.0 / alpha)); }

double divider_v13() {
    return oracle::bisect_increasing([](double v) { return 2.0 * (v + v * v * v) - ((1 - v) + std::pow(1 - v, 3)); }, 0.0, 1.0);
}

/// A five-node circuit whose s'' potential at n1 leaves the interval spanned by
/// the two separate solutions; v_n1(alpha) peaks near alpha = 1.25.
Digraph non_bracketing_circuit() {
    return Digraph({"a", "b", "n1", "n2", "n3"}, "a", "b",
                   {{"n2", "n1"}, {"n2", "a"}, {"n1", "b"}, {"n1", "n3"}, {"b", "n2"}, {"n3", "b"}, {"b", "a"}, {"a", "n3"}});
}

}  // namespace

TEST_CASE("divider superposition matches closed forms", "[superposition]") {
    const auto g = fixtures::divider();
    const auto rep = superpose(g, kLinearCubic, 1.0);
    const double v = divider_v13();
    const double v3 = divider_v(3.0);
    CHECK(rep.F_alpha[0] == Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(rep.F_alpha[1] == Approx(2.0 * v3 * v3 * v3).epsilon(1e-10));
    CHECK(rep.G == Approx(2.0 / 3.0 + 2.0 * v3 * v3 * v3).epsilon(1e-10));
    CHECK(rep.F == Approx(2.0 * (v + v * v * v)).epsilon(1e-10));
    CHECK(rep.F == Approx(0.8632).margin(1e-4));
    REQUIRE(rep.eta.has_value());
    CHECK(*rep.eta == Approx(0.027).margin(5e-4));
    CHECK(rep.error_case == ErrorCase::f_greater);
    CHECK(rep.two_alpha);
    CHECK_FALSE(rep.w_one);
    CHECK(rep.similarly_monotonic.value());
    CHECK(rep.P_F == Approx(rep.F * rep.v_in).epsilon(1e-10));
    CHECK(rep.P_G == Approx(rep.G * rep.v_in).epsilon(1e-10));
}

TEST_CASE("report additivity invariants", "[superposition][property]") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<std::size_t> n(1, 7);
        const auto g = fixtures::random_small_circuit(rng, n(rng), 0.45);
        const double v_in = std::pow(10.0, trial % 3 - 1);
        const auto rep = superpose(g, {ConductanceLaw::power(0.7, 1 + trial % 2), ConductanceLaw::power(1.9, 3 + trial % 3)}, v_in);
        CHECK(rep.F == Approx(rep.F_alpha_cnct[0] + rep.F_alpha_cnct[1]).epsilon(1e-10));
        CHECK(rep.G == Approx(rep.F_alpha[0] + rep.F_alpha[1]).epsilon(1e-12));
        CHECK(rep.P_F == Approx(v_in * rep.F).epsilon(1e-10));
        CHECK(rep.P_G == Approx(v_in * rep.G).epsilon(1e-10));
        REQUIRE(rep.eta.has_value());
        CHECK(*rep.eta >= 0.0);
        CHECK(*rep.eta == Approx(std::abs(rep.F - rep.G) / rep.F).margin(1e-15));
        CHECK(rep.delta_P.size() == 2);
        CHECK(rep.delta_P[0] + rep.delta_P[1] == Approx(rep.P_F - rep.P_G).margin(1e-9 * rep.P_F));
    }
}

TEST_CASE("duplicated participant gives exact superposition", "[superposition]") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = fixtures::random_small_circuit(rng, 4, 0.5);
        const auto rep = superpose(g, {ConductanceLaw::power(0.5, 3), ConductanceLaw::power(0.5, 3)}, 1.0);
        CHECK(rep.F == Approx(rep.G).epsilon(1e-12));
        CHECK(rep.eta.value() <= 1e-12);
        const auto bounds = evaluate_bounds(g, rep);
        CHECK(bounds.all_hold());
    }
}

TEST_CASE("chain is an ideal superposition", "[superposition]") {
    const auto g = fixtures::chain();
    const auto rep = superpose(g, kLinearCubic, 1.0);
    CHECK(rep.connected.node_potentials[1] == Approx(0.5).epsilon(1e-12));
    CHECK(rep.separate[0].node_potentials[1] == Approx(0.5).epsilon(1e-12));
    CHECK(rep.separate[1].node_potentials[1] == Approx(0.5).epsilon(1e-12));
    CHECK(rep.eta.value() <= 1e-12);
    CHECK(rep.error_case == ErrorCase::equal);
    CHECK(rep.s2_partition->first.empty());
    CHECK(rep.s2_partition->second.empty());
    CHECK(rep.s2_partition->ties.size() == 1);

    const auto s2 = statement2_check(rep);
    CHECK(s2.applicable);
    CHECK(s2.holds);
    CHECK(s2.lhs <= 1e-12);
    CHECK(s2.rhs <= 1e-12);

    const auto b = bounds_s2(rep);
    CHECK(b[0].id == "b10");
    CHECK(std::abs(b[0].rhs) <= 1e-12);

    const auto id = tellegen_identity(g, rep);
    CHECK(std::abs(id.lhs) <= 1e-12);
    CHECK(std::abs(id.rhs) <= 1e-12);
}

TEST_CASE("superpose input validation", "[superposition]") {
    const auto g = fixtures::divider();
    CHECK_THROWS_AS(superpose(g, {ConductanceLaw::power(1, 1)}, 1.0), DomainError);
    CHECK_THROWS_AS(superpose(g, kLinearCubic, 0.0), DomainError);
}

TEST_CASE("three participants mark two-exponent bounds not applicable", "[superposition]") {
    const auto g = fixtures::bridge();
    const auto rep = superpose(g, {ConductanceLaw::power(1, 1), ConductanceLaw::power(1, 2), ConductanceLaw::power(1, 3)}, 1.0);
    CHECK_FALSE(rep.two_alpha);
    CHECK(rep.F_alpha_cnct.size() == 3);
    CHECK(rep.F == Approx(rep.F_alpha_cnct[0] + rep.F_alpha_cnct[1] + rep.F_alpha_cnct[2]).epsilon(1e-10));
    const auto bounds = evaluate_bounds(g, rep);
    for (const auto& e : bounds.entries) CHECK_FALSE(e.applicable);
    CHECK_FALSE(statement2_check(rep).applicable);
    CHECK_THROWS_AS(tellegen_identity(g, rep), DomainError);
}

TEST_CASE("wing-shift bound on the divider", "[superposition]") {
    const auto rep = superpose(fixtures::divider(), kLinearCubic, 1.0);
    const auto s2 = statement2_check(rep);
    REQUIRE(s2.applicable);
    CHECK(s2.holds);
    CHECK(s2.sign_opposition);
    CHECK(s2.lhs == Approx(0.0233).margin(1e-4));
    CHECK(s2.rhs == Approx(0.0887).margin(1e-4));
    CHECK(rep.F_alpha_cnct[0] - rep.F_alpha[0] == Approx(0.0887).margin(1e-4));
    CHECK(rep.F_alpha_cnct[1] - rep.F_alpha[1] == Approx(-0.0654).margin(1e-4));
}

TEST_CASE("s'' bounds on the divider", "[superposition]") {
    const auto rep = superpose(fixtures::divider(), kLinearCubic, 1.0);
    const auto b = bounds_s2(rep);
    const auto find = [&](const std::string& id) {
        for (const auto& e : b)
            if (e.id == id) return e;
        FAIL("missing bound " << id);
        return BoundEntry{};
    };
    const auto b10 = find("b10");
    CHECK(b10.rhs == Approx(2.0 * (divider_v(3) - divider_v(1))).epsilon(1e-9));
    CHECK(b10.rhs == Approx(0.2184).margin(1e-4));
    CHECK(b10.applicable);
    CHECK(b10.holds);
    const auto b11 = find("b11");
    CHECK(b11.applicable);
    CHECK(b11.holds);
    CHECK(b11.rhs == Approx(b10.rhs / (2.0 * (1.0 / 3.0 + 1.0 / 27.0))).epsilon(1e-9));
    const auto b12 = find("b12");
    CHECK(b12.applicable);
    CHECK(b12.holds);
    CHECK(b12.rhs == Approx(b10.rhs / (rep.G - b10.rhs)).epsilon(1e-12));
}

TEST_CASE("power bounds on the divider", "[superposition]") {
    const auto rep = superpose(fixtures::divider(), kLinearCubic, 1.0);
    REQUIRE(rep.s_partition.has_value());
    CHECK(rep.s_partition->first == std::vector<BranchIndex>{1, 2});
    CHECK(rep.s_partition->second == std::vector<BranchIndex>{0});

    // Closed forms for the separate branch voltages.
    const double n1 = divider_v(1), n3 = divider_v(3);
    const double a1 = 1 - n1, a3 = 1 - n3;
    const double b25 = 2 * (n3 * n3 - n1 * n1) + (std::pow(a1, 4) - std::pow(a3, 4));
    const double b26 = 2 * (std::pow(n3, 4) - std::pow(n1, 4)) + (a1 * a1 - a3 * a3);
    const auto b = bounds_power(rep);
    CHECK(b[0].id == "b25");
    CHECK(b[0].rhs == Approx(b25).epsilon(1e-9));
    CHECK(b[0].applicable);
    CHECK(b[0].holds);
    CHECK(b[1].id == "b26");
    CHECK(b[1].rhs == Approx(b26).epsilon(1e-9));
    CHECK_FALSE(b[1].applicable);
    CHECK(b[2].id == "b25_26");
    CHECK(b[2].rhs == Approx(std::max(b25, b26)).epsilon(1e-9));
    CHECK(b[2].rhs >= std::abs(rep.P_F - rep.P_G));
    CHECK(b[3].id == "b21");
    CHECK(b[3].holds);
}

TEST_CASE("Tellegen cross pairings vanish", "[superposition]") {
    const auto g = fixtures::divider();
    const auto rep = superpose(g, kLinearCubic, 1.0);
    const auto t = tellegen_check(g, rep.connected, rep.separate[0]);
    CHECK(t.residual <= 1e-12 * t.power_scale);
    double expected = 0.0;
    for (std::size_t s = 0; s < g.branch_count(); ++s) expected += rep.connected.branch_voltages[s] * rep.separate[0].branch_voltages[s];
    CHECK(t.cross_power == Approx(expected).epsilon(1e-12));
    CHECK(t.cross_power == Approx(rep.v_in * rep.F_alpha[0]).epsilon(1e-10));

    const auto same = tellegen_check(g, rep.connected, rep.connected);
    CHECK(same.cross_power == Approx(rep.v_in * rep.F).epsilon(1e-10));

    const auto other = fixtures::chain();
    CHECK_THROWS_AS(tellegen_check(other, rep.connected, rep.separate[0]), MismatchError);
    const auto op_chain = solve(other, ConductanceLaw::power(1, 1), 1.0);
    CHECK_THROWS_AS(tellegen_check(g, rep.connected, op_chain), MismatchError);
}

TEST_CASE("Tellegen identity on the divider", "[superposition]") {
    const auto g = fixtures::divider();
    const auto rep = superpose(g, kLinearCubic, 1.0);
    const auto id = tellegen_identity(g, rep);
    CHECK(id.lhs == Approx(rep.F - rep.G).epsilon(1e-12));
    CHECK(id.lhs == Approx(0.0233).margin(1e-4));
    CHECK(id.rhs == Approx(id.lhs).epsilon(1e-9));
    CHECK(id.relative <= 1e-9);
}

TEST_CASE("Tellegen properties over random circuits", "[superposition][property]") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<std::size_t> n(1, 7);
        const auto g = fixtures::random_small_circuit(rng, n(rng), 0.45);
        const auto rep = superpose(g, {ConductanceLaw::power(1.5, 2), ConductanceLaw::power(0.4, 5)}, 2.0);
        const OperatingPoint* ops[3] = {&rep.separate[0], &rep.separate[1], &rep.connected};
        for (auto* x : ops) {
            for (auto* y : ops) {
                const auto t = tellegen_check(g, *x, *y);
                CHECK(t.residual <= 1e-9 * t.power_scale);
            }
        }
        CHECK(tellegen_identity(g, rep).relative <= 1e-9);
    }
}

TEST_CASE("double inequality on the divider", "[superposition]") {
    const auto rep = superpose(fixtures::divider(), kLinearCubic, 1.0);
    const auto r = check_double_inequality(rep);
    CHECK(r.checked == 2);
    CHECK(r.violations == 0);
    CHECK(r.partial_equalities == 0);
    const double v = rep.connected.node_potentials[1];
    CHECK(1.0 / 3.0 < v);
    CHECK(v < divider_v(3));
}

TEST_CASE("double inequality fails where the potential is not monotone in alpha", "[superposition][counterexample]") {
    const auto g = non_bracketing_circuit();
    const auto rep = superpose(g, kLinearCubic, 1.0);
    const auto r = check_double_inequality(rep);
    CHECK(r.violations == 1);
    REQUIRE(r.violating.size() == 1);
    CHECK(g.label(g.branch(r.violating[0]).tail) == "n1");

    // Independent confirmation: the oracle reproduces the connected potential.
    oracle::NestedBisection ref(g, oracle::power_sum({{1, 1}, {1, 3}}), 1.0);
    const auto v = ref.solve();
    const auto n1 = g.index_of("n1");
    CHECK(v[n1] == Approx(rep.connected.node_potentials[n1]).margin(1e-9));
    CHECK(v[n1] > std::max(rep.separate[0].node_potentials[n1], rep.separate[1].node_potentials[n1]));

    // The sweep exposes the interior maximum that breaks the premise.
    const auto sw = sweep_alpha(g, {1.0, 1.25, 1.5, 2.0, 3.0}, 1.0);
    const auto ce = sw.counterexamples();
    CHECK(std::find(ce.begin(), ce.end(), n1) != ce.end());
}

TEST_CASE("opposite monotonicity on the bridge", "[superposition]") {
    for (const auto& g : {fixtures::bridge(), fixtures::bridge_asymmetric()}) {
        const auto rep = superpose(g, kLinearCubic, 1.0);
        REQUIRE(rep.s2_partition.has_value());
        CHECK_FALSE(rep.s2_partition->first.empty());
        CHECK_FALSE(rep.s2_partition->second.empty());
        CHECK_FALSE(rep.similarly_monotonic.value());
        CHECK_FALSE(statement2_check(rep).applicable);

        const auto s3 = statement3_check(rep);
        CHECK(s3.applicable);
        CHECK(s3.holds15);
        CHECK(s3.bound15 >= s3.lhs);
        const auto bounds = evaluate_bounds(g, rep);
        CHECK(bounds.all_hold());
        CHECK(check_double_inequality(rep).violations == 0);
    }
}

TEST_CASE("mixed check reduces to the similar case when one cell is empty", "[superposition]") {
    const auto rep = superpose(fixtures::divider_w1(), kLinearCubic, 1.0);
    REQUIRE(rep.similarly_monotonic.value());
    const auto s2 = statement2_check(rep);
    const auto s3 = statement3_check(rep);
    CHECK(s3.lhs == Approx(s2.lhs).epsilon(1e-14));
    // With one empty cell, the first grouping is the m-sum over all s''.
    const double dm = rep.F_alpha_cnct[0] - rep.F_alpha[0];
    const double dn = rep.F_alpha_cnct[1] - rep.F_alpha[1];
    CHECK(s3.bound15 == Approx(std::max(std::max(dm, dn), std::abs(std::min(dm, dn)))).epsilon(1e-12));
    CHECK(s3.wing_form_applicable);
    CHECK(s3.wing_form_rhs == Approx(s2.rhs).epsilon(1e-12));
}

TEST_CASE("eta shrinks with the input voltage", "[superposition]") {
    const auto g = fixtures::bridge_asymmetric();
    double prev = 0.0;
    for (double v : {0.01, 0.1, 1.0}) {
        const auto rep = superpose(g, kLinearCubic, v);
        CHECK(rep.eta.value() > prev);
        prev = rep.eta.value();
    }
    for (double v : {0.01, 1.0, 100.0}) {
        const auto rep = superpose(g, {ConductanceLaw::power(1, 3), ConductanceLaw::power(2, 3)}, v);
        CHECK(rep.eta.value() <= 1e-12);
    }
}

TEST_CASE("bound ids are all reported", "[superposition]") {
    const auto g = fixtures::divider();
    const auto bounds = evaluate_bounds(g, superpose(g, kLinearCubic, 1.0));
    for (const char* id : {"stmt2", "b15", "stmt3_wing_form", "stmt3_grouping", "b10", "b10_abs", "b11", "b12", "b25", "b26",
                           "b25_26", "b21", "tellegen_identity_residual"}) {
        CHECK(bounds.find(id) != nullptr);
    }
    CHECK(bounds.find("nope") == nullptr);
    CHECK(bounds.all_hold());
}
