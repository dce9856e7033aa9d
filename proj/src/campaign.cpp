#include "alphanet/campaign.hpp"

#include "alphanet/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace alphanet {

using nlohmann::json;

namespace {

constexpr double kPropertyTol = 1e-9;

std::string num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

template <typename T>
T get_field(const json& j, const char* name) {
    try {
        return j.at(name).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("campaign config field '") + name + "': " + e.what());
    }
}

EtaQuantiles quantiles(std::vector<double> xs) {
    EtaQuantiles q;
    q.count = xs.size();
    if (xs.empty()) return q;
    std::sort(xs.begin(), xs.end());
    auto at = [&](double p) {
        const double pos = p * static_cast<double>(xs.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, xs.size() - 1);
        return xs[lo] + (pos - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
    };
    q.min = xs.front();
    q.q25 = at(0.25);
    q.median = at(0.5);
    q.q75 = at(0.75);
    q.max = xs.back();
    return q;
}

std::string pair_key(double m, double n) {
    std::ostringstream out;
    out << m << ',' << n;
    return out.str();
}

}  // namespace

// -----------------------------------------------------------------------------
// Config
// -----------------------------------------------------------------------------

void CampaignConfig::validate() const {
    if (num_circuits < 1) throw DomainError("num_circuits must be >= 1");
    if (node_range.first < 0 || node_range.first > node_range.second) throw DomainError("node_range must be [min, max] with 0 <= min <= max");
    if (branch_factor.first < 0.0 || branch_factor.first > branch_factor.second) throw DomainError("branch_factor must be [min, max] with 0 <= min <= max");
    if (exponent_pairs.empty()) throw DomainError("exponent_pairs must not be empty");
    for (const auto& [m, n] : exponent_pairs) {
        if (m < 1.0 || n < 1.0) throw DomainError("exponents must be >= 1");
        if (m == n) throw DomainError("exponent pairs need m != n");
    }
    if (v_in_values.empty()) throw DomainError("v_in_values must not be empty");
    for (double v : v_in_values) {
        if (!(v > 0.0)) throw DomainError("v_in values must be > 0");
    }
    if (!(coefficients.first > 0.0) || !(coefficients.second > 0.0)) throw DomainError("coefficients must be > 0");
    solver.validate();
}

CampaignConfig CampaignConfig::from_json_text(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("campaign config: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("campaign config: top level must be an object");
    static const std::set<std::string> known = {"seed", "num_circuits", "node_range", "branch_factor", "exponent_pairs",
                                                "v_in_values", "coefficients", "enforce_w1", "threads", "solver"};
    for (const auto& [key, _] : j.items()) {
        if (!known.count(key)) throw ParseError("campaign config: unknown field '" + key + "'");
    }

    CampaignConfig cfg;
    if (j.contains("seed")) cfg.seed = get_field<std::uint64_t>(j, "seed");
    if (j.contains("num_circuits")) cfg.num_circuits = get_field<std::size_t>(j, "num_circuits");
    if (j.contains("node_range")) cfg.node_range = get_field<std::pair<int, int>>(j, "node_range");
    if (j.contains("branch_factor")) cfg.branch_factor = get_field<std::pair<double, double>>(j, "branch_factor");
    if (j.contains("exponent_pairs")) cfg.exponent_pairs = get_field<std::vector<std::pair<double, double>>>(j, "exponent_pairs");
    if (j.contains("v_in_values")) cfg.v_in_values = get_field<std::vector<double>>(j, "v_in_values");
    if (j.contains("coefficients")) cfg.coefficients = get_field<std::pair<double, double>>(j, "coefficients");
    if (j.contains("enforce_w1")) cfg.enforce_w1 = get_field<bool>(j, "enforce_w1");
    if (j.contains("threads")) cfg.threads = get_field<unsigned>(j, "threads");
    if (j.contains("solver")) {
        const auto& s = j["solver"];
        if (!s.is_object()) throw ParseError("campaign config: field 'solver' must be an object");
        if (s.contains("residual_tol")) cfg.solver.residual_tol = get_field<double>(s, "residual_tol");
        if (s.contains("max_iter")) cfg.solver.max_iter = get_field<int>(s, "max_iter");
        if (s.contains("damping")) cfg.solver.damping = get_field<double>(s, "damping");
        if (s.contains("homotopy_steps")) cfg.solver.homotopy_steps = get_field<int>(s, "homotopy_steps");
    }
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw ParseError(std::string("campaign config: ") + e.what());
    }
    return cfg;
}

std::string CampaignConfig::to_json_text() const {
    json j;
    j["seed"] = seed;
    j["num_circuits"] = num_circuits;
    j["node_range"] = node_range;
    j["branch_factor"] = branch_factor;
    j["exponent_pairs"] = exponent_pairs;
    j["v_in_values"] = v_in_values;
    j["coefficients"] = coefficients;
    j["enforce_w1"] = enforce_w1;
    j["threads"] = threads;
    j["solver"] = {{"residual_tol", solver.residual_tol},
                   {"max_iter", solver.max_iter},
                   {"damping", solver.damping},
                   {"homotopy_steps", solver.homotopy_steps}};
    return j.dump(2);
}

// -----------------------------------------------------------------------------
// Instances
// -----------------------------------------------------------------------------

CampaignRow analyze_instance(const Digraph& g, double m, double n, double v_in, const CampaignConfig& cfg) {
    CampaignRow row;
    row.nodes = g.node_count();
    row.branches = g.branch_count();
    row.m = m;
    row.n = n;
    row.v_in = v_in;

    SuperpositionReport rep;
    try {
        rep = superpose(g, {ConductanceLaw::power(cfg.coefficients.first, m), ConductanceLaw::power(cfg.coefficients.second, n)},
                        v_in, cfg.solver);
    } catch (const Error& e) {
        row.failure = e.what();
        return row;
    }
    row.solved = true;
    row.F = rep.F;
    row.G = rep.G;
    row.eta = rep.eta.value_or(0.0);
    row.error_case = rep.error_case;
    row.similarly_monotonic = rep.similarly_monotonic.value_or(false);
    row.bounds = evaluate_bounds(g, rep);
    row.double_inequality = check_double_inequality(rep);

    const OperatingPoint* ops[3] = {&rep.separate[0], &rep.separate[1], &rep.connected};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const auto t = tellegen_check(g, *ops[i], *ops[j]);
            if (i == j) {
                const double p_in = ops[i]->v_in * std::abs(ops[i]->input_current);
                row.energy_residual = std::max(row.energy_residual, p_in > 0.0 ? t.residual / p_in : t.residual);
            } else if (t.power_scale > 0.0) {
                row.tellegen_residual = std::max(row.tellegen_residual, t.residual / t.power_scale);
            }
        }
    }
    row.identity_residual = tellegen_identity(g, rep).relative;
    return row;
}

CampaignResult run_campaign(const CampaignConfig& cfg) {
    cfg.validate();
    CampaignResult result;
    result.config = cfg;

    std::vector<std::vector<CampaignRow>> per_circuit(cfg.num_circuits);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < cfg.num_circuits; i = next++) {
            try {
                const auto seed = circuit_seed(cfg.seed, i);
                std::mt19937_64 rng(seed);
                const auto g = generate_random_circuit(rng, cfg);
                auto& rows = per_circuit[i];
                for (const auto& [m, n] : cfg.exponent_pairs) {
                    for (double v_in : cfg.v_in_values) {
                        auto row = analyze_instance(g, m, n, v_in, cfg);
                        row.seed = seed;
                        row.circuit_index = i;
                        rows.push_back(std::move(row));
                    }
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.num_circuits));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    std::map<std::string, std::vector<double>> etas;
    std::size_t similar = 0;
    std::size_t solved = 0;
    for (auto& rows : per_circuit) {
        for (auto& row : rows) {
            if (!row.solved) {
                ++result.solver_failures;
                result.rows.push_back(std::move(row));
                continue;
            }
            ++solved;
            for (const auto& e : row.bounds.entries) {
                if (!e.applicable) continue;
                ++result.applicable[e.id];
                if (!e.holds) ++result.violations[e.id];
            }
            auto tally = [&](const char* id, bool checked, bool ok) {
                if (!checked) return;
                ++result.applicable[id];
                if (!ok) ++result.violations[id];
            };
            tally(kDoubleInequality, row.double_inequality.checked > 0, row.double_inequality.violations == 0);
            tally(kTellegen, true, row.tellegen_residual <= kPropertyTol);
            tally(kTellegenIdentity, true, row.identity_residual <= kPropertyTol);
            tally(kEnergy, true, row.energy_residual <= kPropertyTol);

            switch (row.error_case) {
                case ErrorCase::f_greater: ++result.f_greater; break;
                case ErrorCase::g_greater: ++result.g_greater; break;
                case ErrorCase::equal: ++result.equal; break;
            }
            if (row.similarly_monotonic) ++similar;
            etas[pair_key(row.m, row.n)].push_back(row.eta);
            result.rows.push_back(std::move(row));
        }
    }
    for (auto& [key, xs] : etas) result.eta_by_pair[key] = quantiles(std::move(xs));
    result.similarly_monotonic_fraction = solved ? static_cast<double>(similar) / static_cast<double>(solved) : 0.0;
    return result;
}

bool CampaignResult::guaranteed_ok() const {
    for (const char* id : {kDoubleInequality, kTellegen, kTellegenIdentity, kEnergy}) {
        auto it = violations.find(id);
        if (it != violations.end() && it->second > 0) return false;
    }
    return true;
}

bool CampaignResult::all_ok() const {
    return std::all_of(violations.begin(), violations.end(), [](const auto& kv) { return kv.second == 0; });
}

std::string campaign_csv(const CampaignResult& result) {
    std::ostringstream out;
    out << "seed,circuit_index,nodes,branches,m,n,v_in,F,G,eta,case,similarly_monotonic,stmt2_holds,"
           "b10,b11,b12,b15,b25,b26,b21,tellegen_residual,eq29_residual\n";
    for (const auto& r : result.rows) {
        out << r.seed << ',' << r.circuit_index << ',' << r.nodes << ',' << r.branches << ',' << num(r.m) << ','
            << num(r.n) << ',' << num(r.v_in) << ',';
        if (!r.solved) {
            out << "NA,NA,NA,failed,NA,NA,NA,NA,NA,NA,NA,NA,NA,NA,NA\n";
            continue;
        }
        auto rhs = [&](const char* id) {
            const auto* e = r.bounds.find(id);
            return e ? num(e->rhs) : std::string("NA");
        };
        const auto* s2 = r.bounds.find("stmt2");
        out << num(r.F) << ',' << num(r.G) << ',' << num(r.eta) << ',' << to_string(r.error_case) << ','
            << (r.similarly_monotonic ? 1 : 0) << ',' << (s2 && s2->applicable ? (s2->holds ? "1" : "0") : "NA") << ','
            << rhs("b10") << ',' << rhs("b11") << ',' << rhs("b12") << ',' << rhs("b15") << ',' << rhs("b25") << ','
            << rhs("b26") << ',' << rhs("b21") << ',' << num(r.tellegen_residual) << ',' << num(r.identity_residual) << '\n';
    }
    return out.str();
}

}  // namespace alphanet
