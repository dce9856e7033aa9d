// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "alphanet/campaign.hpp"
#include "alphanet/solver.hpp"
#include "alphanet/superposition.hpp"
#include "alphanet/sweep.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace alphanet;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
    std::printf("%s  %2d  %-34s %s\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

/// Runs a criterion body; an exception counts as a failure.
void criterion(int id, const char* title, const std::function<bool(std::ostringstream&)>& body) {
    std::ostringstream detail;
    detail.precision(3);
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail << "exception: " << e.what();
    }
    report(id, title, ok, detail.str());
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<Digraph> random_circuits(std::uint64_t seed, std::size_t count) {
    CampaignConfig cfg;
    std::vector<Digraph> out;
    for (std::size_t i = 0; i < count; ++i) {
        std::mt19937_64 rng(circuit_seed(seed, i));
        out.push_back(generate_random_circuit(rng, cfg));
    }
    return out;
}

std::size_t violations(const CampaignResult& res, const std::string& id) {
    auto it = res.violations.find(id);
    return it == res.violations.end() ? 0 : it->second;
}

std::size_t applicable(const CampaignResult& res, const std::string& id) {
    auto it = res.applicable.find(id);
    return it == res.applicable.end() ? 0 : it->second;
}

/// Violations of `id` on rows where the double inequality held.
std::size_t violations_with_bracketing(const CampaignResult& res, const std::string& id) {
    std::size_t n = 0;
    for (const auto& row : res.rows) {
        if (!row.solved || row.double_inequality.violations > 0) continue;
        const auto* e = row.bounds.find(id);
        if (e && e->applicable && !e->holds) ++n;
    }
    return n;
}

}  // namespace

int main() {
    // 1. Closed-form circuits.
    criterion(1, "analytic exactness", [](std::ostringstream& d) {
        const auto single = fixtures::single();
        const auto chain = fixtures::chain();
        double err_single = 0.0;
        double err_chain = 0.0;
        double worst_time = 0.0;
        for (double D : {0.5, 2.0}) {
            for (double a : {1.0, 2.0, 3.0, 4.5}) {
                for (double v : {0.1, 1.0, 3.0}) {
                    const auto law = ConductanceLaw::power(D, a);
                    auto t0 = Clock::now();
                    constexpr int reps = 50;
                    OperatingPoint s, c;
                    for (int r = 0; r < reps; ++r) s = solve(single, law, v);
                    worst_time = std::max(worst_time, seconds_since(t0) / reps);
                    t0 = Clock::now();
                    for (int r = 0; r < reps; ++r) c = solve(chain, law, v);
                    worst_time = std::max(worst_time, seconds_since(t0) / reps);
                    err_single = std::max(err_single, std::abs(s.input_current - D * std::pow(v, a)));
                    err_chain = std::max(err_chain, std::abs(c.node_potentials[chain.index_of("n1")] - 0.5 * v));
                }
            }
        }
        d << "|F - D v^a| = " << err_single << ", |v_mid - v_in/2| = " << err_chain << ", slowest solve " << worst_time * 1e3
          << " ms";
        return err_single <= 1e-10 && err_chain <= 1e-10 && worst_time < 1e-3;
    });

    // 2. Divider against closed form and bisection.
    criterion(2, "oracle equivalence", [](std::ostringstream& d) {
        const auto g = fixtures::divider();
        double err_closed = 0.0;
        for (double a : {1.0, 2.0, 3.0, 4.0, 5.0}) {
            const auto op = solve(g, ConductanceLaw::power(1, a), 1.0);
            err_closed = std::max(err_closed, std::abs(op.node_potentials[1] - 1.0 / (1.0 + std::pow(2.0, 1.0 / a))));
        }
        const double v = oracle::bisect_increasing(
            [](double x) { return 2.0 * (x + x * x * x) - ((1 - x) + std::pow(1 - x, 3)); }, 0.0, 1.0);
        const double err_13 = std::abs(solve(g, ConductanceLaw({{1, 1}, {1, 3}}), 1.0).node_potentials[1] - v);
        d << "closed-form error " << err_closed << ", connection vs bisection " << err_13;
        return err_closed <= 1e-9 && err_13 <= 1e-8;
    });

    // 3. Wing currents move oppositely and the total moves least.
    criterion(3, "wing-current pattern", [](std::ostringstream& d) {
        const auto g = fixtures::divider();
        const auto rep = superpose(g, {ConductanceLaw::power(1, 1), ConductanceLaw::power(1, 3)}, 1.0);
        const double r1 = (rep.F_alpha_cnct[0] - rep.F_alpha[0]) / rep.F_alpha[0];
        const double r3 = (rep.F_alpha_cnct[1] - rep.F_alpha[1]) / rep.F_alpha[1];
        const double eta = rep.eta.value();
        d << "alpha=1 wing " << 100 * r1 << "%, alpha=3 wing " << 100 * r3 << "%, eta " << 100 * eta << "%";
        return r1 > 0.0 && r3 < 0.0 && eta < std::abs(r1) && eta < std::abs(r3);
    });

    // 4-8 share one campaign.
    CampaignConfig cfg;
    cfg.seed = 20240611;
    cfg.num_circuits = 1000;
    cfg.exponent_pairs = {{1, 2}, {1, 3}, {2, 5}};
    cfg.v_in_values = {0.1, 1.0, 10.0};
    const auto t0 = Clock::now();
    CampaignResult res;
    std::string campaign_error;
    try {
        res = run_campaign(cfg);
    } catch (const std::exception& e) {
        campaign_error = e.what();
    }
    const double campaign_seconds = seconds_since(t0);
    const bool campaign_ok = campaign_error.empty();

    criterion(4, "double inequality", [&](std::ostringstream& d) {
        if (!campaign_ok) throw std::runtime_error(campaign_error);
        std::size_t branches = 0;
        for (const auto& row : res.rows) branches += row.double_inequality.violations;
        const auto n = violations(res, kDoubleInequality);
        d << n << " of " << applicable(res, kDoubleInequality) << " instances violate (" << branches << " s'' branches), "
          << res.solver_failures << " solver failures, " << campaign_seconds << " s";
        return n == 0 && campaign_seconds < 60.0;
    });

    criterion(5, "wing-shift bound", [&](std::ostringstream& d) {
        if (!campaign_ok) throw std::runtime_error(campaign_error);
        const auto n = violations(res, "stmt2");
        d << n << " of " << applicable(res, "stmt2") << " similarly monotonic instances violate; " << violations_with_bracketing(res, "stmt2")
          << " where the double inequality holds";
        return n == 0 && applicable(res, "stmt2") > 0;
    });

    criterion(6, "error bounds", [&](std::ostringstream& d) {
        if (!campaign_ok) throw std::runtime_error(campaign_error);
        bool ok = true;
        for (const char* id : {"b10", "b11", "b12", "b15", "b25_26", "b21"}) {
            const auto n = violations(res, id);
            d << id << " " << n << "/" << applicable(res, id);
            if (n) d << " (" << violations_with_bracketing(res, id) << " with bracketing)";
            d << "  ";
            ok = ok && n == 0 && applicable(res, id) > 0;
        }
        return ok;
    });

    criterion(7, "Tellegen cross pairings", [&](std::ostringstream& d) {
        if (!campaign_ok) throw std::runtime_error(campaign_error);
        double worst_t = 0.0;
        double worst_i = 0.0;
        for (const auto& row : res.rows) {
            if (!row.solved) continue;
            worst_t = std::max(worst_t, row.tellegen_residual);
            worst_i = std::max(worst_i, row.identity_residual);
        }
        d << "worst cross residual " << worst_t << " of power scale, worst identity residual " << worst_i;
        return violations(res, kTellegen) == 0 && violations(res, kTellegenIdentity) == 0 && worst_t <= 1e-9 && worst_i <= 1e-9;
    });

    criterion(8, "energy balance", [&](std::ostringstream& d) {
        if (!campaign_ok) throw std::runtime_error(campaign_error);
        double worst = 0.0;
        std::size_t solved = 0;
        for (const auto& row : res.rows) {
            if (!row.solved) continue;
            ++solved;
            worst = std::max(worst, row.energy_residual);
        }
        d << "worst relative imbalance " << worst << " over " << solved << " instances";
        return violations(res, kEnergy) == 0 && worst <= 1e-9 && solved > 0;
    });

    // 9. Error vanishes with the input voltage.
    criterion(9, "small-signal limit", [](std::ostringstream& d) {
        const auto circuits = random_circuits(9009, 100);
        std::size_t ideal = 0;
        std::size_t ordered = 0;
        std::size_t failed = 0;
        double worst_single = 0.0;
        const std::vector<ConductanceLaw> mn = {ConductanceLaw::power(1, 1), ConductanceLaw::power(1, 3)};
        for (const auto& g : circuits) {
            const double e1 = superpose(g, mn, 0.01).eta.value();
            const double e2 = superpose(g, mn, 0.1).eta.value();
            const double e3 = superpose(g, mn, 1.0).eta.value();
            if (e3 <= 1e-12) {
                ++ideal;
            } else if (e1 < e2 && e2 < e3) {
                ++ordered;
            } else {
                ++failed;
            }
            for (double v : {0.01, 1.0, 10.0}) {
                const auto single = superpose(g, {ConductanceLaw::power(1, 3), ConductanceLaw::power(0.5, 3)}, v);
                worst_single = std::max(worst_single, single.eta.value());
            }
        }
        d << ordered << " strictly ordered, " << ideal << " ideal (eta <= 1e-12), " << failed << " unordered; one-term eta max "
          << worst_single;
        return failed == 0 && ordered > 0 && worst_single <= 1e-12;
    });

    // 10. Coefficient scaling.
    criterion(10, "D-scaling", [](std::ostringstream& d) {
        auto circuits = random_circuits(1010, 50);
        circuits.push_back(fixtures::divider());
        circuits.push_back(fixtures::bridge_asymmetric());
        double drift = 0.0;
        double ratio_err = 0.0;
        for (const auto& g : circuits) {
            for (const auto& law : {ConductanceLaw::power(1, 3), ConductanceLaw({{1, 1}, {1, 3}})}) {
                const auto base = solve(g, law, 1.0);
                for (double c : {1e-3, 1e3}) {
                    const auto op = solve(g, law.scaled(c), 1.0);
                    for (std::size_t k = 0; k < g.node_count(); ++k) {
                        drift = std::max(drift, std::abs(op.node_potentials[k] - base.node_potentials[k]));
                    }
                    ratio_err = std::max(ratio_err, std::abs(op.input_current / (c * base.input_current) - 1.0));
                }
            }
        }
        d << "potential drift " << drift << ", current ratio error " << ratio_err;
        return drift <= 1e-12 && ratio_err <= 1e-10;
    });

    // 11. Stepwise connections and coefficient continuity.
    criterion(11, "multi-exponent procedures", [](std::ostringstream& d) {
        const auto circuits = random_circuits(1111, 100);
        const std::vector<double> grid = {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
        std::size_t bracket_fail = 0;
        std::size_t chain_fail = 0;
        std::size_t tail_fail = 0;
        for (const auto& g : circuits) {
            if (!bracketing_check_p3(g, {1, 2, 3}, 1.0).bracketing_holds) ++bracket_fail;
            if (!bracketing_check_p4(g, {1, 2, 3, 4}, 1.0).chain_holds) ++chain_fail;
            const auto dc = d_continuity(g, 1, 3, grid, 1.0);
            if (!dc.low_tail_monotone || !dc.high_tail_monotone) ++tail_fail;
        }
        d << "bracketing fails on " << bracket_fail << "/100, chain ordering on " << chain_fail << "/100, D tails on "
          << tail_fail << "/100";
        return bracket_fail == 0 && chain_fail == 0 && tail_fail == 0;
    });

    // 12. Opposite monotonicity fixture.
    criterion(12, "opposite monotonicity fixture", [](std::ostringstream& d) {
        bool ok = true;
        for (const auto& g : {fixtures::bridge(), fixtures::bridge_asymmetric()}) {
            const auto sw = sweep_alpha(g, kDefaultAlphaGrid, 1.0);
            const auto tc = sw.node_trends[g.index_of("c")];
            const auto td = sw.node_trends[g.index_of("d")];
            std::size_t held = 0;
            std::size_t checked = 0;
            for (double v : {0.1, 1.0, 10.0}) {
                const auto rep = superpose(g, {ConductanceLaw::power(1, 1), ConductanceLaw::power(1, 3)}, v);
                for (const auto& e : evaluate_bounds(g, rep).entries) {
                    if (!e.applicable) continue;
                    ++checked;
                    held += e.holds;
                }
                ok = ok && check_double_inequality(rep).violations == 0;
            }
            d << g.node_count() << "-node: v_c " << to_string(tc) << ", v_d " << to_string(td) << ", bounds " << held << "/"
              << checked << "  ";
            ok = ok && tc == Trend::decreasing && td == Trend::increasing && held == checked && checked > 0;
        }
        return ok;
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
