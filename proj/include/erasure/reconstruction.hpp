#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "erasure/trajectory.hpp"
#include "erasure/transducer.hpp"

namespace erasure {

/// Counts of next-step (x, y) continuations for every input-output past word
/// of length 1..max_length seen in a trajectory.
class HistoryTable {
public:
    using Symbol = std::pair<std::uint16_t, std::uint16_t>; // (x, y)
    using Word = std::vector<Symbol>;

    struct Continuations {
        std::map<Symbol, std::uint64_t> counts;
        std::uint64_t total = 0;
    };

    static HistoryTable from_trajectory(const Trajectory& t, std::size_t max_length);

    [[nodiscard]] std::size_t max_length() const noexcept { return max_length_; }
    [[nodiscard]] const std::vector<std::string>& inputs() const noexcept { return inputs_; }
    [[nodiscard]] const std::vector<std::string>& outputs() const noexcept { return outputs_; }
    [[nodiscard]] const std::map<Word, Continuations>& words() const noexcept { return words_; }
    [[nodiscard]] bool empty() const noexcept { return words_.empty(); }

    /// Empirical P(y | x, past word); empty when x never followed the word.
    [[nodiscard]] std::map<std::uint16_t, double> next_output(const Word& w, std::uint16_t x) const;

private:
    std::size_t max_length_ = 0;
    std::vector<std::string> inputs_;
    std::vector<std::string> outputs_;
    std::map<Word, Continuations> words_;
};

/// Thrown when the merged histories do not form a unifilar quotient machine.
class ReconstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ReconstructionOptions {
    double tol = 0.05;
    /// Past words seen fewer times than this are ignored as statistically unreliable.
    std::uint64_t min_count = 20;
};

/// Groups length-L past words whose one-step conditional futures P(y | x, past)
/// lie within `tol` in total-variation distance (worst case over inputs),
/// greedily in lexicographic word order, then closes the grouping transitively.
/// States of the result are named c0, c1, ... in order of first appearance.
EpsilonTransducer reconstruct_causal_states(const HistoryTable& h, const ReconstructionOptions& opts);

inline EpsilonTransducer reconstruct_causal_states(const HistoryTable& h, double tol)
{
    return reconstruct_causal_states(h, ReconstructionOptions{tol});
}

} // namespace erasure
