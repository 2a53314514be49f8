#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "erasure/probability.hpp"

namespace erasure {

/// Raised when a distribution or joint table violates its invariants.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr double kSumTolerance = 1e-12;

/// Finite distribution over labeled outcomes. Labels are unique; probabilities
/// are non-negative and sum to one (exactly when every entry is rational).
class ProbDist {
public:
    using Entry = std::pair<std::string, Probability>;

    ProbDist() = default;
    explicit ProbDist(std::vector<Entry> outcomes);

    static ProbDist uniform(const std::vector<std::string>& labels);
    static ProbDist point(const std::string& label);

    [[nodiscard]] std::size_t size() const noexcept { return outcomes_.size(); }
    [[nodiscard]] bool empty() const noexcept { return outcomes_.empty(); }
    [[nodiscard]] const std::vector<Entry>& outcomes() const noexcept { return outcomes_; }
    [[nodiscard]] bool is_exact() const noexcept;
    [[nodiscard]] bool contains(const std::string& label) const;
    /// Probability of label, zero when absent.
    [[nodiscard]] Probability prob(const std::string& label) const;
    [[nodiscard]] std::vector<std::string> labels() const;

private:
    std::vector<Entry> outcomes_;
};

/// Joint distribution over named variables. Each entry maps a tuple of labels
/// (one per axis, in axis order) to its probability.
class JointTable {
public:
    using Key = std::vector<std::string>;

    JointTable() = default;
    JointTable(std::vector<std::string> axes, std::map<Key, Probability> entries);

    [[nodiscard]] const std::vector<std::string>& axes() const noexcept { return axes_; }
    [[nodiscard]] const std::map<Key, Probability>& entries() const noexcept { return entries_; }
    [[nodiscard]] std::size_t axis_index(const std::string& name) const;
    [[nodiscard]] bool is_exact() const noexcept;
    /// Probability of a full label tuple, zero when absent.
    [[nodiscard]] Probability prob(const Key& key) const;

    /// Distribution over the single variable `axis`.
    [[nodiscard]] ProbDist marginal(const std::string& axis) const;

private:
    std::vector<std::string> axes_;
    std::map<Key, Probability> entries_;
};

/// -sum p log2 p with 0 log 0 := 0.
double shannon_entropy(const ProbDist& d);

/// Exact entropy in bits when every probability is an integral power of two
/// (the only case where the value is rational and computable exactly).
std::optional<Rational> exact_entropy(const ProbDist& d);

/// Sums out every axis not listed in `keep`. Result axes follow the table's order.
JointTable marginalize(const JointTable& j, const std::vector<std::string>& keep);

/// H(vars) of the marginal over `vars`; an empty list gives 0.
double joint_entropy(const JointTable& j, const std::vector<std::string>& vars);

/// H(target | given) = sum_c P(c) H(target | given = c).
double conditional_entropy(const JointTable& j, const std::string& target,
                           const std::vector<std::string>& given);

/// Exact rational H(target | given) when the table is exact and every
/// conditional distribution is dyadic; nullopt otherwise.
std::optional<Rational> conditional_entropy_exact(const JointTable& j, const std::string& target,
                                                  const std::vector<std::string>& given);

/// Conditional distribution of `target` for one assignment of `given` variables.
ProbDist conditional(const JointTable& j, const std::string& target,
                     const std::vector<std::pair<std::string, std::string>>& given);

double binary_entropy(double p);

} // namespace erasure
