#include "alphanet/solver.hpp"

#include "alphanet/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace alphanet {

namespace {

constexpr std::size_t kNotUnknown = std::numeric_limits<std::size_t>::max();

/// Nodal equations restricted to the interior nodes.
class NodalSystem {
public:
    NodalSystem(const Digraph& g, double v_in) : g_(g), v_in_(v_in), unknown_of_(g.node_count(), kNotUnknown) {
        for (NodeIndex k : g.interior_nodes()) {
            unknown_of_[k] = nodes_.size();
            nodes_.push_back(k);
        }
    }

    std::size_t size() const { return nodes_.size(); }

    std::vector<double> potentials(const Eigen::VectorXd& x) const {
        std::vector<double> v(g_.node_count(), 0.0);
        v[g_.terminal_a()] = v_in_;
        for (std::size_t i = 0; i < nodes_.size(); ++i) v[nodes_[i]] = x[static_cast<Eigen::Index>(i)];
        return v;
    }

    /// KCL: sum of branch currents leaving each interior node.
    Eigen::VectorXd residual(const ConductanceLaw& law, const Eigen::VectorXd& x) const {
        const auto v = potentials(x);
        Eigen::VectorXd r = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size()));
        for (const auto& br : g_.branches()) {
            const double i = law.current(v[br.tail] - v[br.head]);
            if (auto u = unknown_of_[br.tail]; u != kNotUnknown) r[static_cast<Eigen::Index>(u)] += i;
            if (auto u = unknown_of_[br.head]; u != kNotUnknown) r[static_cast<Eigen::Index>(u)] -= i;
        }
        return r;
    }

    Eigen::MatrixXd jacobian(const ConductanceLaw& law, const Eigen::VectorXd& x) const {
        const auto v = potentials(x);
        const auto n = static_cast<Eigen::Index>(size());
        Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
        for (const auto& br : g_.branches()) {
            const double gs = law.conductance(v[br.tail] - v[br.head]);
            stamp(j, br, gs);
        }
        return j;
    }

    /// Characteristic current: total magnitude of the branch currents at a.
    double current_scale(const ConductanceLaw& law, const Eigen::VectorXd& x) const {
        const auto v = potentials(x);
        double total = 0.0;
        for (const auto& br : g_.branches()) {
            if (br.tail == g_.terminal_a() || br.head == g_.terminal_a()) {
                total += std::abs(law.current(v[br.tail] - v[br.head]));
            }
        }
        return std::max(total, std::numeric_limits<double>::min());
    }

    /// Unit-conductance network; its solution seeds Newton.
    Eigen::VectorXd linear_solution() const {
        const auto n = static_cast<Eigen::Index>(size());
        Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
        for (const auto& br : g_.branches()) {
            stamp(lap, br, 1.0);
            const auto ut = unknown_of_[br.tail];
            const auto uh = unknown_of_[br.head];
            if (ut != kNotUnknown && uh == kNotUnknown && br.head == g_.terminal_a()) rhs[static_cast<Eigen::Index>(ut)] += v_in_;
            if (uh != kNotUnknown && ut == kNotUnknown && br.tail == g_.terminal_a()) rhs[static_cast<Eigen::Index>(uh)] += v_in_;
        }
        return lap.ldlt().solve(rhs);
    }

    void clamp(Eigen::VectorXd& x) const { x = x.cwiseMax(0.0).cwiseMin(v_in_); }

private:
    void stamp(Eigen::MatrixXd& m, const Branch& br, double gs) const {
        const auto ut = unknown_of_[br.tail];
        const auto uh = unknown_of_[br.head];
        if (ut != kNotUnknown) m(static_cast<Eigen::Index>(ut), static_cast<Eigen::Index>(ut)) += gs;
        if (uh != kNotUnknown) m(static_cast<Eigen::Index>(uh), static_cast<Eigen::Index>(uh)) += gs;
        if (ut != kNotUnknown && uh != kNotUnknown) {
            m(static_cast<Eigen::Index>(ut), static_cast<Eigen::Index>(uh)) -= gs;
            m(static_cast<Eigen::Index>(uh), static_cast<Eigen::Index>(ut)) -= gs;
        }
    }

    const Digraph& g_;
    double v_in_;
    std::vector<std::size_t> unknown_of_;
    std::vector<NodeIndex> nodes_;
};

struct NewtonOutcome {
    bool converged = false;
    double scaled_residual = std::numeric_limits<double>::infinity();
    int iterations = 0;
};

double scaled_inf_norm(const NodalSystem& sys, const ConductanceLaw& law, const Eigen::VectorXd& x) {
    if (sys.size() == 0) return 0.0;
    return sys.residual(law, x).lpNorm<Eigen::Infinity>() / sys.current_scale(law, x);
}

NewtonOutcome damped_newton(const NodalSystem& sys, const ConductanceLaw& law, Eigen::VectorXd& x,
                            const SolverConfig& cfg) {
    NewtonOutcome out;
    if (sys.size() == 0) {
        out.converged = true;
        out.scaled_residual = 0.0;
        return out;
    }
    Eigen::VectorXd r = sys.residual(law, x);
    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        out.scaled_residual = r.lpNorm<Eigen::Infinity>() / sys.current_scale(law, x);
        if (out.scaled_residual <= cfg.residual_tol) {
            out.converged = true;
            break;
        }
        Eigen::MatrixXd j = sys.jacobian(law, x);
        const double eps = 1e-12 * std::max(j.diagonal().maxCoeff(), std::numeric_limits<double>::min());
        j.diagonal().array() += eps;
        const Eigen::VectorXd dx = j.ldlt().solve(-r);

        const double r0 = r.norm();
        double t = 1.0;
        bool accepted = false;
        for (int k = 0; k < 60; ++k, t *= cfg.damping) {
            Eigen::VectorXd trial = x + t * dx;
            sys.clamp(trial);
            Eigen::VectorXd rt = sys.residual(law, trial);
            if (rt.norm() < r0) {
                x = std::move(trial);
                r = std::move(rt);
                accepted = true;
                break;
            }
        }
        ++out.iterations;
        if (!accepted) return out;
    }
    if (!out.converged) return out;

    // A couple of extra steps take the quadratic phase down to roundoff.
    for (int polish = 0; polish < 3; ++polish) {
        Eigen::MatrixXd j = sys.jacobian(law, x);
        j.diagonal().array() += 1e-12 * std::max(j.diagonal().maxCoeff(), std::numeric_limits<double>::min());
        Eigen::VectorXd trial = x + j.ldlt().solve(-r);
        sys.clamp(trial);
        Eigen::VectorXd rt = sys.residual(law, trial);
        if (!(rt.norm() < r.norm())) break;
        x = std::move(trial);
        r = std::move(rt);
        ++out.iterations;
    }
    out.scaled_residual = r.lpNorm<Eigen::Infinity>() / sys.current_scale(law, x);
    return out;
}

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

void SolverConfig::validate() const {
    if (!(residual_tol > 0.0)) throw DomainError("residual_tol must be > 0");
    if (max_iter < 1) throw DomainError("max_iter must be >= 1");
    if (!(damping > 0.0 && damping < 1.0)) throw DomainError("damping must lie in (0, 1)");
    if (homotopy_steps < 1) throw DomainError("homotopy_steps must be >= 1");
}

std::uint64_t topology_fingerprint(const Digraph& g) {
    std::uint64_t h = 14695981039346656037ULL;
    for (const auto& l : g.labels()) {
        h = fnv1a(h, l.data(), l.size());
        h = fnv1a(h, "\0", 1);
    }
    const NodeIndex terminals[2] = {g.terminal_a(), g.terminal_b()};
    h = fnv1a(h, terminals, sizeof terminals);
    for (const auto& br : g.branches()) {
        const NodeIndex ends[2] = {br.tail, br.head};
        h = fnv1a(h, ends, sizeof ends);
    }
    return h;
}

OperatingPoint solve(const Digraph& g, const ConductanceLaw& law, double v_in, const SolverConfig& cfg) {
    cfg.validate();
    if (!(v_in > 0.0) || !std::isfinite(v_in)) throw DomainError("v_in must be finite and > 0");

    NodalSystem sys(g, v_in);
    Eigen::VectorXd x = sys.size() ? sys.linear_solution() : Eigen::VectorXd();
    sys.clamp(x);
    const Eigen::VectorXd seed = x;

    NewtonOutcome outcome = damped_newton(sys, law, x, cfg);
    bool used_homotopy = false;
    double best = outcome.scaled_residual;

    for (int refine = 0; !outcome.converged && refine < 4; ++refine) {
        used_homotopy = true;
        const int stages = cfg.homotopy_steps << refine;
        x = seed;
        int total_iterations = 0;
        for (int stage = 1; stage <= stages; ++stage) {
            const auto stage_law = law.with_exponent_fraction(static_cast<double>(stage) / stages);
            outcome = damped_newton(sys, stage_law, x, cfg);
            total_iterations += outcome.iterations;
            if (!outcome.converged) break;
        }
        outcome.iterations = total_iterations;
        best = std::min(best, outcome.scaled_residual);
    }
    if (!outcome.converged) {
        throw ConvergenceError("operating point did not converge (best scaled residual " + std::to_string(best) + ")",
                               best);
    }

    OperatingPoint op{.v_in = v_in,
                      .node_potentials = sys.potentials(x),
                      .branch_voltages = {},
                      .branch_currents = {},
                      .input_current = 0.0,
                      .residual_norm = scaled_inf_norm(sys, law, x),
                      .iterations = outcome.iterations,
                      .used_homotopy = used_homotopy,
                      .law = law,
                      .topology_id = topology_fingerprint(g)};
    op.branch_voltages.reserve(g.branch_count());
    op.branch_currents.reserve(g.branch_count());
    for (const auto& br : g.branches()) {
        const double vs = op.node_potentials[br.tail] - op.node_potentials[br.head];
        const double is = law.current(vs);
        op.branch_voltages.push_back(vs);
        op.branch_currents.push_back(is);
        if (br.tail == g.terminal_a()) op.input_current += is;
        if (br.head == g.terminal_a()) op.input_current -= is;
    }
    return op;
}

double input_current_via_b(const OperatingPoint& op, const BranchClassification& cls, const ConductanceLaw& law) {
    if (cls.s_double_prime.size() != cls.k_s_double_prime.size()) {
        throw MismatchError("classification is inconsistent");
    }
    double total = 0.0;
    for (std::size_t j = 0; j < cls.s_double_prime.size(); ++j) {
        const auto s = cls.s_double_prime[j];
        const auto k = cls.k_s_double_prime[j];
        if (s >= op.branch_voltages.size() || k >= op.node_potentials.size()) {
            throw MismatchError("classification does not belong to this operating point");
        }
        const double vk = op.node_potentials[k];
        if (std::abs(std::abs(op.branch_voltages[s]) - std::abs(vk)) > 1e-12 * std::max(1.0, op.v_in)) {
            throw MismatchError("branch " + std::to_string(s) + " is not incident to b in the solved circuit");
        }
        total += law.current(vk);
    }
    return total;
}

double phi(const Digraph& g, double alpha, const SolverConfig& cfg) {
    return solve(g, ConductanceLaw::power(1.0, alpha), 1.0, cfg).input_current;
}

double wing_current(const OperatingPoint& op, const BranchClassification& cls, const ConductanceLaw& component_law) {
    if (!op.law.contains(component_law)) {
        throw CompositionError("law '" + component_law.to_string() + "' is not part of '" + op.law.to_string() + "'");
    }
    return input_current_via_b(op, cls, component_law);
}

}  // namespace alphanet
