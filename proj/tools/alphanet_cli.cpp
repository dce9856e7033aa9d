// alphanet command-line front end.
//
// Every subcommand prints JSON to stdout; --csv writes the tabular form.
// Exit codes: 0 success, 1 property violation, 2 usage or solver error.

#include "alphanet/campaign.hpp"
#include "alphanet/conductance_law.hpp"
#include "alphanet/errors.hpp"
#include "alphanet/netlist.hpp"
#include "alphanet/report_io.hpp"
#include "alphanet/solver.hpp"
#include "alphanet/superposition.hpp"
#include "alphanet/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace alphanet;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kFailure = 2;

struct Common {
    std::string netlist;
    double v_in = 1.0;
    std::string csv;
    SolverConfig solver;
};

void add_common(CLI::App* cmd, Common& c, bool with_netlist = true) {
    if (with_netlist) cmd->add_option("netlist", c.netlist, "Netlist JSON file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--vin", c.v_in, "Input voltage")->capture_default_str();
    cmd->add_option("--csv", c.csv, "Also write a CSV table to this path");
    cmd->add_option("--residual-tol", c.solver.residual_tol, "Scaled KCL residual tolerance")->capture_default_str();
    cmd->add_option("--max-iter", c.solver.max_iter, "Newton iterations per stage")->capture_default_str();
    cmd->add_option("--homotopy-steps", c.solver.homotopy_steps, "Exponent continuation stages")->capture_default_str();
}

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

void maybe_csv(const Common& c, const std::string& text) {
    if (!c.csv.empty()) write_text_file(c.csv, text);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Power-law resistive 1-ports: operating points and superposition error analysis"};
    app.require_subcommand(1);

    // solve
    Common solve_opt;
    std::string solve_law;
    auto* solve_cmd = app.add_subcommand("solve", "Operating point of one realization");
    add_common(solve_cmd, solve_opt);
    solve_cmd->add_option("--law", solve_law, "Conductance law \"D:alpha[,D:alpha...]\"")->required();

    // superpose
    Common sup_opt;
    std::string sup_laws;
    auto* sup_cmd = app.add_subcommand("superpose", "Connected vs superposed input current");
    add_common(sup_cmd, sup_opt);
    sup_cmd->add_option("--laws", sup_laws, "Participants \"D:alpha;D:alpha[;...]\"")->required();

    // bounds
    Common bounds_opt;
    std::string bounds_laws = "1:1;1:3";
    auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate every error bound for two one-term participants");
    add_common(bounds_cmd, bounds_opt);
    bounds_cmd->add_option("--laws", bounds_laws, "Participants \"D:m;D:n\"")->capture_default_str();

    // sweep
    Common sweep_opt;
    std::vector<double> sweep_alphas = kDefaultAlphaGrid;
    auto* sweep_cmd = app.add_subcommand("sweep", "Node potentials across an exponent grid");
    add_common(sweep_cmd, sweep_opt);
    sweep_cmd->add_option("--alphas", sweep_alphas, "Ascending exponent grid, comma separated")->delimiter(',');

    // p3
    Common p3_opt;
    std::vector<double> p3_alphas = {1.0, 2.0, 3.0};
    auto* p3_cmd = app.add_subcommand("p3", "Two-step connection with three exponents");
    add_common(p3_cmd, p3_opt);
    p3_cmd->add_option("--alphas", p3_alphas, "Three ascending exponents")->delimiter(',')->expected(3);

    // p4
    Common p4_opt;
    std::vector<double> p4_alphas = {1.0, 2.0, 3.0, 4.0};
    auto* p4_cmd = app.add_subcommand("p4", "Pairwise connection with four exponents");
    add_common(p4_cmd, p4_opt);
    p4_cmd->add_option("--alphas", p4_alphas, "Four ascending exponents")->delimiter(',')->expected(4);

    // dscan
    Common d_opt;
    double d_alpha1 = 1.0;
    double d_alpha2 = 3.0;
    std::vector<double> d_values = {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
    auto* d_cmd = app.add_subcommand("dscan", "Continuity in the coefficient of the second term");
    add_common(d_cmd, d_opt);
    d_cmd->add_option("--alpha1", d_alpha1)->capture_default_str();
    d_cmd->add_option("--alpha2", d_alpha2)->capture_default_str();
    d_cmd->add_option("--d-values", d_values, "Coefficient grid, comma separated")->delimiter(',');

    // campaign
    Common camp_opt;
    std::string camp_config;
    bool camp_strict = false;
    auto* camp_cmd = app.add_subcommand("campaign", "Random-circuit verification campaign");
    camp_cmd->add_option("--config", camp_config, "Campaign config JSON")->check(CLI::ExistingFile);
    camp_cmd->add_option("--csv", camp_opt.csv, "Write the per-instance CSV to this path");
    camp_cmd->add_flag("--strict", camp_strict, "Exit 1 on any bound violation, not only guaranteed properties");

    // tellegen
    Common tel_opt;
    std::string tel_law1;
    std::string tel_law2;
    auto* tel_cmd = app.add_subcommand("tellegen", "Cross power of two realizations of one digraph");
    add_common(tel_cmd, tel_opt);
    tel_cmd->add_option("--law1", tel_law1, "Law of the voltage realization")->required();
    tel_cmd->add_option("--law2", tel_law2, "Law of the current realization")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kFailure;
    }

    try {
        if (*solve_cmd) {
            const auto g = load_netlist(solve_opt.netlist);
            const auto op = solve(g, ConductanceLaw::parse(solve_law), solve_opt.v_in, solve_opt.solver);
            emit(to_json(g, op));
            maybe_csv(solve_opt, operating_point_csv(g, op));
            return kOk;
        }
        if (*sup_cmd) {
            const auto g = load_netlist(sup_opt.netlist);
            const auto rep = superpose(g, parse_laws(sup_laws), sup_opt.v_in, sup_opt.solver);
            emit(to_json(g, rep));
            maybe_csv(sup_opt, operating_point_csv(g, rep.connected));
            return kOk;
        }
        if (*bounds_cmd) {
            const auto g = load_netlist(bounds_opt.netlist);
            const auto rep = superpose(g, parse_laws(bounds_laws), bounds_opt.v_in, bounds_opt.solver);
            const auto bounds = evaluate_bounds(g, rep);
            auto j = to_json(bounds);
            j["F"] = rep.F;
            j["G"] = rep.G;
            emit(j);
            maybe_csv(bounds_opt, bounds_csv(bounds));
            return bounds.all_hold() ? kOk : kViolation;
        }
        if (*sweep_cmd) {
            const auto g = load_netlist(sweep_opt.netlist);
            const auto sw = sweep_alpha(g, sweep_alphas, sweep_opt.v_in, sweep_opt.solver);
            emit(to_json(g, sw));
            maybe_csv(sweep_opt, sweep_csv(g, sw));
            return kOk;
        }
        if (*p3_cmd) {
            const auto g = load_netlist(p3_opt.netlist);
            const auto rep = bracketing_check_p3(g, {p3_alphas[0], p3_alphas[1], p3_alphas[2]}, p3_opt.v_in, p3_opt.solver);
            emit(to_json(g, rep));
            return rep.bracketing_holds && rep.chain_holds ? kOk : kViolation;
        }
        if (*p4_cmd) {
            const auto g = load_netlist(p4_opt.netlist);
            const auto rep = bracketing_check_p4(g, {p4_alphas[0], p4_alphas[1], p4_alphas[2], p4_alphas[3]}, p4_opt.v_in,
                                                 p4_opt.solver);
            emit(to_json(g, rep));
            return rep.chain_holds && rep.interior_holds ? kOk : kViolation;
        }
        if (*d_cmd) {
            const auto g = load_netlist(d_opt.netlist);
            const auto rep = d_continuity(g, d_alpha1, d_alpha2, d_values, d_opt.v_in, d_opt.solver);
            emit(to_json(rep));
            return rep.low_tail_monotone && rep.high_tail_monotone ? kOk : kViolation;
        }
        if (*camp_cmd) {
            const auto cfg = camp_config.empty() ? CampaignConfig{} : CampaignConfig::from_json_text(read_file(camp_config));
            const auto result = run_campaign(cfg);
            emit(campaign_summary(result));
            maybe_csv(camp_opt, campaign_csv(result));
            if (!result.guaranteed_ok()) return kViolation;
            return camp_strict && !result.all_ok() ? kViolation : kOk;
        }
        if (*tel_cmd) {
            const auto g = load_netlist(tel_opt.netlist);
            const auto op1 = solve(g, ConductanceLaw::parse(tel_law1), tel_opt.v_in, tel_opt.solver);
            const auto op2 = solve(g, ConductanceLaw::parse(tel_law2), tel_opt.v_in, tel_opt.solver);
            const auto t = tellegen_check(g, op1, op2);
            const bool ok = t.residual <= 1e-9 * t.power_scale;
            auto j = to_json(t);
            j["holds"] = ok;
            emit(j);
            return ok ? kOk : kViolation;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kFailure;
}
