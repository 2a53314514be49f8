#include "erasure/transducer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace erasure {

namespace {

std::size_t find_label(const std::vector<std::string>& labels, const std::string& label, const char* kind)
{
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
        throw std::out_of_range(std::string("unknown ") + kind + " '" + label + "'");
    }
    return static_cast<std::size_t>(it - labels.begin());
}

void require_unique(const std::vector<std::string>& labels, const char* kind)
{
    if (labels.empty()) {
        throw ValidationError(std::string("machine has no ") + kind);
    }
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) {
        throw ValidationError(std::string("duplicate label among machine ") + kind);
    }
}

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (const auto& s : items) {
        if (!out.empty()) {
            out += ", ";
        }
        out += s;
    }
    return out;
}

} // namespace

EpsilonTransducer::EpsilonTransducer(std::vector<std::string> states, std::vector<std::string> inputs,
                                     std::vector<std::string> outputs, const std::vector<KernelEntry>& kernel,
                                     std::optional<ProbDist> input_policy)
    : states_(std::move(states)), inputs_(std::move(inputs)), outputs_(std::move(outputs))
{
    require_unique(states_, "states");
    require_unique(inputs_, "inputs");
    require_unique(outputs_, "outputs");

    input_policy_ = input_policy ? std::move(*input_policy) : ProbDist::uniform(inputs_);
    for (const auto& label : input_policy_.labels()) {
        (void)find_label(inputs_, label, "input in policy");
    }
    input_probs_.reserve(inputs_.size());
    for (const auto& x : inputs_) {
        input_probs_.push_back(input_policy_.prob(x));
    }

    rows_.assign(states_.size() * inputs_.size(), {});
    for (const auto& e : kernel) {
        const std::size_t s = find_label(states_, e.from, "state");
        const std::size_t x = find_label(inputs_, e.input, "input");
        const std::size_t y = find_label(outputs_, e.output, "output");
        const std::size_t t = find_label(states_, e.to, "state");
        if (e.p.value() < 0.0 || (e.p.is_exact() && e.p.rational() < 0)) {
            throw ValidationError("negative kernel probability for " + e.from + " --" + e.input + "/" +
                                  e.output + "--> " + e.to);
        }
        if (e.p.is_zero()) {
            continue;
        }
        auto& row = rows_[s * inputs_.size() + x];
        for (const auto& tr : row) {
            if (tr.output == y && tr.next == t) {
                throw ValidationError("duplicate kernel entry " + e.from + " --" + e.input + "/" + e.output +
                                      "--> " + e.to);
            }
        }
        row.push_back({y, t, e.p});
    }
    for (std::size_t s = 0; s < states_.size(); ++s) {
        for (std::size_t x = 0; x < inputs_.size(); ++x) {
            const auto& row = rows_[s * inputs_.size() + x];
            const std::string where = "kernel row (" + states_[s] + ", " + inputs_[x] + ")";
            if (row.empty()) {
                throw ValidationError(where + " is empty");
            }
            Probability total;
            bool exact = true;
            for (const auto& tr : row) {
                total += tr.p;
                exact = exact && tr.p.is_exact();
            }
            if (exact ? total.rational() != 1 : std::abs(total.value() - 1.0) > kSumTolerance) {
                throw ValidationError(where + " sums to " + total.to_string());
            }
        }
    }
}

std::span<const Transition> EpsilonTransducer::row(std::size_t state, std::size_t input) const
{
    if (state >= states_.size() || input >= inputs_.size()) {
        throw std::out_of_range("kernel row index out of range");
    }
    return rows_[state * inputs_.size() + input];
}

std::vector<KernelEntry> EpsilonTransducer::entries() const
{
    std::vector<KernelEntry> out;
    for (std::size_t s = 0; s < states_.size(); ++s) {
        for (std::size_t x = 0; x < inputs_.size(); ++x) {
            for (const auto& tr : row(s, x)) {
                out.push_back({states_[s], inputs_[x], outputs_[tr.output], states_[tr.next], tr.p});
            }
        }
    }
    return out;
}

std::size_t EpsilonTransducer::state_index(const std::string& label) const
{
    return find_label(states_, label, "state");
}

std::size_t EpsilonTransducer::input_index(const std::string& label) const
{
    return find_label(inputs_, label, "input");
}

std::size_t EpsilonTransducer::output_index(const std::string& label) const
{
    return find_label(outputs_, label, "output");
}

bool EpsilonTransducer::is_exact() const noexcept
{
    if (!input_policy_.is_exact()) {
        return false;
    }
    for (const auto& row : rows_) {
        for (const auto& tr : row) {
            if (!tr.p.is_exact()) {
                return false;
            }
        }
    }
    return true;
}

bool EpsilonTransducer::is_unifilar() const
{
    for (const auto& row : rows_) {
        std::map<std::size_t, std::size_t> next_for_output;
        for (const auto& tr : row) {
            auto [it, inserted] = next_for_output.emplace(tr.output, tr.next);
            if (!inserted && it->second != tr.next) {
                return false;
            }
        }
    }
    return true;
}

std::optional<std::size_t> EpsilonTransducer::entering_output(std::size_t state) const
{
    std::optional<std::size_t> found;
    for (std::size_t s = 0; s < states_.size(); ++s) {
        for (std::size_t x = 0; x < inputs_.size(); ++x) {
            if (input_probs_[x].is_zero()) {
                continue;
            }
            for (const auto& tr : row(s, x)) {
                if (tr.next != state) {
                    continue;
                }
                if (found && *found != tr.output) {
                    return std::nullopt;
                }
                found = tr.output;
            }
        }
    }
    return found;
}

bool EpsilonTransducer::is_output_deterministic() const
{
    std::vector<std::set<std::size_t>> entering(states_.size());
    for (std::size_t s = 0; s < states_.size(); ++s) {
        for (std::size_t x = 0; x < inputs_.size(); ++x) {
            if (input_probs_[x].is_zero()) {
                continue;
            }
            for (const auto& tr : row(s, x)) {
                entering[tr.next].insert(tr.output);
            }
        }
    }
    return std::all_of(entering.begin(), entering.end(), [](const auto& outs) { return outs.size() <= 1; });
}

std::vector<std::vector<Probability>> state_transition_matrix(const EpsilonTransducer& m)
{
    const std::size_t n = m.states().size();
    std::vector<std::vector<Probability>> p(n, std::vector<Probability>(n));
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t x = 0; x < m.inputs().size(); ++x) {
            const Probability& px = m.input_prob(x);
            if (px.is_zero()) {
                continue;
            }
            for (const auto& tr : m.row(s, x)) {
                p[s][tr.next] += px * tr.p;
            }
        }
    }
    return p;
}

namespace {

std::vector<bool> reachable(const std::vector<std::vector<Probability>>& p, std::size_t start, bool forward)
{
    const std::size_t n = p.size();
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < n; ++v) {
            const bool edge = forward ? !p[u][v].is_zero() : !p[v][u].is_zero();
            if (edge && !seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    return seen;
}

void require_irreducible(const EpsilonTransducer& m, const std::vector<std::vector<Probability>>& p)
{
    const auto fwd = reachable(p, 0, true);
    const auto bwd = reachable(p, 0, false);
    std::vector<std::string> outside;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!fwd[i] || !bwd[i]) {
            outside.push_back(m.states()[i]);
        }
    }
    if (!outside.empty()) {
        throw ReducibleChainError("state chain is reducible; states outside the recurrent class of '" +
                                      m.states().front() + "': {" + join(outside) + "}",
                                  outside);
    }
}

std::vector<Rational> solve_exact(const std::vector<std::vector<Probability>>& p)
{
    // (P^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
    const std::size_t n = p.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = p[j][i].rational() - (i == j ? 1 : 0);
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        a[n - 1][j] = 1;
    }
    a[n - 1][n] = 1;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) {
            ++pivot;
        }
        if (pivot == n) {
            throw std::domain_error("singular stationary system");
        }
        std::swap(a[pivot], a[col]);
        const Rational inv = 1 / a[col][col];
        for (std::size_t j = col; j <= n; ++j) {
            a[col][j] *= inv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) {
                continue;
            }
            const Rational f = a[i][col];
            for (std::size_t j = col; j <= n; ++j) {
                a[i][j] -= f * a[col][j];
            }
        }
    }
    std::vector<Rational> pi(n);
    for (std::size_t i = 0; i < n; ++i) {
        pi[i] = a[i][n];
    }
    return pi;
}

std::vector<double> solve_power_iteration(const std::vector<std::vector<Probability>>& p)
{
    constexpr double kResidual = 1e-12;
    constexpr std::size_t kMaxIterations = 1'000'000;
    const std::size_t n = p.size();
    std::vector<double> pi(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n);
    auto step = [&](const std::vector<double>& in, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                out[j] += in[i] * p[i][j].value();
            }
        }
    };
    for (std::size_t it = 0; it < kMaxIterations; ++it) {
        step(pi, next);
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            residual += std::abs(next[i] - pi[i]);
        }
        if (residual <= kResidual) {
            return pi;
        }
        // lazy chain (I + P) / 2 shares pi and is aperiodic
        for (std::size_t i = 0; i < n; ++i) {
            pi[i] = 0.5 * (pi[i] + next[i]);
        }
        const double total = std::accumulate(pi.begin(), pi.end(), 0.0);
        for (auto& v : pi) {
            v /= total;
        }
    }
    throw std::domain_error("power iteration did not reach the 1e-12 residual");
}

void require_prior(const EpsilonTransducer& m, const ProbDist& prior)
{
    for (const auto& label : prior.labels()) {
        if (std::find(m.states().begin(), m.states().end(), label) == m.states().end()) {
            throw std::invalid_argument("prior mentions unknown state '" + label + "'");
        }
    }
}

} // namespace

ProbDist stationary_distribution(const EpsilonTransducer& m)
{
    const auto p = state_transition_matrix(m);
    require_irreducible(m, p);
    std::vector<ProbDist::Entry> out;
    if (m.is_exact()) {
        const auto pi = solve_exact(p);
        for (std::size_t i = 0; i < pi.size(); ++i) {
            out.emplace_back(m.states()[i], Probability::exact(pi[i]));
        }
    } else {
        const auto pi = solve_power_iteration(p);
        for (std::size_t i = 0; i < pi.size(); ++i) {
            out.emplace_back(m.states()[i], Probability::approx(pi[i]));
        }
    }
    return ProbDist(std::move(out));
}

double statistical_complexity(const EpsilonTransducer& m)
{
    return shannon_entropy(stationary_distribution(m));
}

std::optional<Rational> statistical_complexity_exact(const EpsilonTransducer& m)
{
    return exact_entropy(stationary_distribution(m));
}

JointTable build_joint(const EpsilonTransducer& m, const ProbDist& prior)
{
    require_prior(m, prior);
    std::map<JointTable::Key, Probability> entries;
    for (std::size_t s = 0; s < m.states().size(); ++s) {
        const Probability ps = prior.prob(m.states()[s]);
        if (ps.is_zero()) {
            continue;
        }
        for (std::size_t x = 0; x < m.inputs().size(); ++x) {
            const Probability& px = m.input_prob(x);
            if (px.is_zero()) {
                continue;
            }
            for (const auto& tr : m.row(s, x)) {
                entries[{m.states()[s], m.inputs()[x], m.outputs()[tr.output], m.states()[tr.next]}] +=
                    ps * px * tr.p;
            }
        }
    }
    return JointTable({axis::kPrevState, axis::kInput, axis::kOutput, axis::kNextState}, std::move(entries));
}

double erased_information(const EpsilonTransducer& m, const ProbDist& prior)
{
    return conditional_entropy(build_joint(m, prior), axis::kPrevState,
                               {axis::kInput, axis::kOutput, axis::kNextState});
}

std::optional<Rational> erased_information_exact(const EpsilonTransducer& m, const ProbDist& prior)
{
    return conditional_entropy_exact(build_joint(m, prior), axis::kPrevState,
                                     {axis::kInput, axis::kOutput, axis::kNextState});
}

AppendixReport verify_appendix_identity(const EpsilonTransducer& m, const ProbDist& prior)
{
    if (!m.is_unifilar()) {
        throw AssumptionError("appendix identity requires a unifilar machine: some (state, input, output) "
                              "has more than one successor");
    }
    if (!m.is_output_deterministic()) {
        throw AssumptionError("appendix identity requires output determinism H(Y_t|S_t)=0: some state is "
                              "entered with more than one output symbol");
    }
    require_prior(m, prior);
    const ProbDist pi = stationary_distribution(m);
    for (const auto& [label, p] : pi.outcomes()) {
        if (std::abs(p.value() - prior.prob(label).value()) > 1e-10) {
            throw AssumptionError("appendix identity requires a time-independent ensemble: prior differs from "
                                  "the stationary distribution at state '" + label + "'");
        }
    }

    // Extend the joint with Y_prev, the output symbol that entered S_prev.
    const JointTable base = build_joint(m, prior);
    std::map<JointTable::Key, Probability> extended;
    for (const auto& [key, p] : base.entries()) {
        const std::size_t s = m.state_index(key[0]);
        const auto y_prev = m.entering_output(s);
        if (!y_prev) {
            throw AssumptionError("state '" + key[0] + "' carries prior mass but is never entered");
        }
        extended[{m.outputs()[*y_prev], key[0], key[1], key[2], key[3]}] += p;
    }
    const JointTable j({axis::kPrevOutput, axis::kPrevState, axis::kInput, axis::kOutput, axis::kNextState},
                       std::move(extended));

    AppendixReport r;
    r.lhs = joint_entropy(j, {axis::kInput, axis::kOutput, axis::kNextState}) -
            joint_entropy(j, {axis::kPrevOutput, axis::kPrevState, axis::kInput});
    r.rhs = -conditional_entropy(j, axis::kPrevState, {axis::kInput, axis::kOutput, axis::kNextState});
    r.residual = std::abs(r.lhs - r.rhs);
    r.output_branching = conditional_entropy(j, axis::kOutput, {axis::kInput, axis::kPrevState});
    r.corrected_residual = std::abs(r.lhs - (r.output_branching + r.rhs));
    return r;
}

std::optional<std::vector<std::size_t>> find_isomorphism(const EpsilonTransducer& a, const EpsilonTransducer& b,
                                                         double tol)
{
    const std::size_t n = a.states().size();
    if (n != b.states().size() || a.inputs().size() != b.inputs().size() ||
        a.outputs().size() != b.outputs().size() || n > 10) {
        return std::nullopt;
    }
    // Alphabet correspondences by label.
    std::vector<std::size_t> in_map(b.inputs().size());
    std::vector<std::size_t> out_map(b.outputs().size());
    try {
        for (std::size_t x = 0; x < b.inputs().size(); ++x) {
            in_map[x] = a.input_index(b.inputs()[x]);
        }
        for (std::size_t y = 0; y < b.outputs().size(); ++y) {
            out_map[y] = a.output_index(b.outputs()[y]);
        }
    } catch (const std::out_of_range&) {
        return std::nullopt;
    }
    for (std::size_t x = 0; x < b.inputs().size(); ++x) {
        if (std::abs(b.input_prob(x).value() - a.input_prob(in_map[x]).value()) > tol) {
            return std::nullopt;
        }
    }

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    auto rows_match = [&](const std::vector<std::size_t>& to_a) {
        for (std::size_t s = 0; s < n; ++s) {
            for (std::size_t x = 0; x < b.inputs().size(); ++x) {
                std::map<std::pair<std::size_t, std::size_t>, double> want;
                for (const auto& tr : a.row(to_a[s], in_map[x])) {
                    want[{tr.output, tr.next}] += tr.p.value();
                }
                std::map<std::pair<std::size_t, std::size_t>, double> got;
                for (const auto& tr : b.row(s, x)) {
                    got[{out_map[tr.output], to_a[tr.next]}] += tr.p.value();
                }
                for (const auto& [k, v] : got) {
                    auto it = want.find(k);
                    if (std::abs(v - (it == want.end() ? 0.0 : it->second)) > tol) {
                        return false;
                    }
                }
                for (const auto& [k, v] : want) {
                    if (!got.count(k) && v > tol) {
                        return false;
                    }
                }
            }
        }
        return true;
    };
    do {
        if (rows_match(perm)) {
            return perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

} // namespace erasure
