#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "erasure/entropy.hpp"
#include "erasure/transducer.hpp"

namespace erasure {

/// One time step: input x_t, output y_t, and the state s_t after the step.
/// Symbols are indices into the owning Trajectory's alphabets.
struct Step {
    std::uint64_t t;
    std::uint16_t x;
    std::uint16_t y;
    std::uint16_t s;

    friend bool operator==(const Step&, const Step&) = default;
};

/// A realization of an input-output process together with the state labels of
/// the generator (or a compatible physical simulator).
struct Trajectory {
    std::uint64_t seed = 0;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<std::string> states;
    std::optional<std::uint16_t> initial_state;
    std::vector<Step> steps;

    [[nodiscard]] const std::string& x_label(const Step& s) const { return inputs.at(s.x); }
    [[nodiscard]] const std::string& y_label(const Step& s) const { return outputs.at(s.y); }
    [[nodiscard]] const std::string& s_label(const Step& s) const { return states.at(s.s); }

    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Samples x ~ input_policy then (y, s') ~ kernel(s, x) for n_steps steps.
Trajectory simulate(const EpsilonTransducer& m, const std::string& initial_state, std::size_t n_steps,
                    std::uint64_t seed);

/// Like simulate, but with a prescribed input sequence.
Trajectory simulate_with_inputs(const EpsilonTransducer& m, const std::string& initial_state,
                                const std::vector<std::string>& inputs, std::uint64_t seed);

/// Empirical joint over (S_prev, X, Y, S_next) from consecutive steps.
JointTable empirical_joint(const Trajectory& t);

/// Empirical H(S_prev | X, Y, S_next). Labels must belong to `m`'s alphabets.
/// Throws std::invalid_argument for trajectories with fewer than two steps.
double estimate_erased_information(const Trajectory& t, const EpsilonTransducer& m);

/// Empirical occupancy of each state label among s_t.
std::map<std::string, double> state_occupancy(const Trajectory& t);

/// Fraction of steps with s_t != s_{t-1}.
double state_change_fraction(const Trajectory& t);

/// Sliding-window frequencies of (x, y) words of exactly `length` steps.
/// Words are rendered as "x:y x:y ...".
std::map<std::string, double> word_frequencies(const Trajectory& t, std::size_t length);

/// Largest absolute difference between two word-frequency tables (missing words count as 0).
double max_frequency_gap(const std::map<std::string, double>& a, const std::map<std::string, double>& b);

/// Malformed trajectory file; `line()` is 1-based.
class CsvError : public std::runtime_error {
public:
    CsvError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// CSV with header "t,x,y,s". When the initial state is known it is written as
/// a t=0 row with empty x and y.
void write_csv(std::ostream& os, const Trajectory& t);
Trajectory read_csv(std::istream& is);

} // namespace erasure
