#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "erasure/entropy.hpp"

namespace erasure {

/// One positive-probability branch of a kernel row: emit `output`, move to `next`.
struct Transition {
    std::size_t output;
    std::size_t next;
    Probability p;
};

/// Flat form of a kernel entry, as it appears in machine files.
struct KernelEntry {
    std::string from;
    std::string input;
    std::string output;
    std::string to;
    Probability p;
};

/// A machine assumption (unifilarity, output determinism, stationarity) is violated.
class AssumptionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The state chain is not irreducible; `states()` lists the offending states.
class ReducibleChainError : public std::domain_error {
public:
    ReducibleChainError(const std::string& what, std::vector<std::string> states)
        : std::domain_error(what), states_(std::move(states)) {}
    [[nodiscard]] const std::vector<std::string>& states() const noexcept { return states_; }

private:
    std::vector<std::string> states_;
};

/// Stochastic input-output machine over causal states. For every state s and
/// input x the kernel row is a distribution over (output y, next state s').
/// Immutable after construction.
class EpsilonTransducer {
public:
    /// Builds and validates. When `input_policy` is empty the policy is uniform
    /// over `inputs`. Zero-probability entries are dropped.
    EpsilonTransducer(std::vector<std::string> states, std::vector<std::string> inputs,
                      std::vector<std::string> outputs, const std::vector<KernelEntry>& kernel,
                      std::optional<ProbDist> input_policy = std::nullopt);

    [[nodiscard]] const std::vector<std::string>& states() const noexcept { return states_; }
    [[nodiscard]] const std::vector<std::string>& inputs() const noexcept { return inputs_; }
    [[nodiscard]] const std::vector<std::string>& outputs() const noexcept { return outputs_; }
    [[nodiscard]] const ProbDist& input_policy() const noexcept { return input_policy_; }
    /// Policy probability of input index x.
    [[nodiscard]] const Probability& input_prob(std::size_t x) const { return input_probs_.at(x); }

    [[nodiscard]] std::span<const Transition> row(std::size_t state, std::size_t input) const;
    [[nodiscard]] std::vector<KernelEntry> entries() const;

    [[nodiscard]] std::size_t state_index(const std::string& label) const;
    [[nodiscard]] std::size_t input_index(const std::string& label) const;
    [[nodiscard]] std::size_t output_index(const std::string& label) const;

    [[nodiscard]] bool is_exact() const noexcept;
    /// (s, x, y) determines s'.
    [[nodiscard]] bool is_unifilar() const;
    /// Every state is entered with a single output symbol, so H(Y_t | S_t) = 0.
    [[nodiscard]] bool is_output_deterministic() const;
    /// Output symbol that enters `state`, if the machine is output-deterministic
    /// and the state has incoming transitions.
    [[nodiscard]] std::optional<std::size_t> entering_output(std::size_t state) const;

private:
    std::vector<std::string> states_;
    std::vector<std::string> inputs_;
    std::vector<std::string> outputs_;
    std::vector<std::vector<Transition>> rows_; // index: state * |inputs| + input
    ProbDist input_policy_;
    std::vector<Probability> input_probs_;
};

/// State-to-state transition matrix with inputs and outputs marginalized out.
std::vector<std::vector<Probability>> state_transition_matrix(const EpsilonTransducer& m);

/// Stationary distribution pi = pi P. Exact for rational kernels, otherwise
/// power iteration on the lazy chain to a 1e-12 L1 residual.
/// Throws ReducibleChainError when the chain is not irreducible.
ProbDist stationary_distribution(const EpsilonTransducer& m);

/// H(pi) in bits.
double statistical_complexity(const EpsilonTransducer& m);
std::optional<Rational> statistical_complexity_exact(const EpsilonTransducer& m);

namespace axis {
inline const std::string kPrevState = "S_prev";
inline const std::string kInput = "X";
inline const std::string kOutput = "Y";
inline const std::string kNextState = "S_next";
inline const std::string kPrevOutput = "Y_prev";
} // namespace axis

/// Joint over (S_prev, X, Y, S_next) with P = prior(s) * policy(x) * kernel(s, x)(y, s').
JointTable build_joint(const EpsilonTransducer& m, const ProbDist& prior);

/// H(S_prev | X, Y, S_next): information about the previous state that the
/// present input, output, and state cannot recover.
double erased_information(const EpsilonTransducer& m, const ProbDist& prior);
std::optional<Rational> erased_information_exact(const EpsilonTransducer& m, const ProbDist& prior);

struct AppendixReport {
    double lhs = 0.0;              // H(X_t, Y_t, S_t) - H(X_t, Y_{t-1}, S_{t-1})
    double rhs = 0.0;              // -H(S_{t-1} | X_t, Y_t, S_t)
    double residual = 0.0;         // |lhs - rhs|
    double output_branching = 0.0; // H(Y_t | X_t, S_{t-1})
    double corrected_residual = 0.0; // |lhs - (output_branching + rhs)|
};

/// Checks the entropy-difference identity against -I_erased. Requires a
/// unifilar, output-deterministic machine and its stationary prior; throws
/// AssumptionError naming the violated assumption otherwise.
///
/// Under those assumptions the exact relation is
///   lhs = H(Y_t | X_t, S_{t-1}) - I_erased,
/// so `residual` vanishes only when outputs are deterministic given the input
/// and previous state. `corrected_residual` checks the exact relation.
AppendixReport verify_appendix_identity(const EpsilonTransducer& m, const ProbDist& prior);

/// State bijection b -> a (result[i] is the index in `a` matched to state i of
/// `b`) under which both machines have the same alphabets, input policy and
/// kernel probabilities within `tol`. nullopt if none exists.
std::optional<std::vector<std::size_t>> find_isomorphism(const EpsilonTransducer& a,
                                                         const EpsilonTransducer& b, double tol);

} // namespace erasure
