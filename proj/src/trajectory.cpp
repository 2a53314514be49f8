#include "erasure/trajectory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <set>

#include "erasure/rng.hpp"

namespace erasure {

namespace {

/// Per-row cumulative sampling tables for a machine.
class Sampler {
public:
    explicit Sampler(const EpsilonTransducer& m) : m_(m)
    {
        for (std::size_t x = 0; x < m.inputs().size(); ++x) {
            input_weights_.push_back(m.input_prob(x).value());
        }
        const std::size_t nx = m.inputs().size();
        row_weights_.resize(m.states().size() * nx);
        for (std::size_t s = 0; s < m.states().size(); ++s) {
            for (std::size_t x = 0; x < nx; ++x) {
                for (const auto& tr : m.row(s, x)) {
                    row_weights_[s * nx + x].push_back(tr.p.value());
                }
            }
        }
    }

    std::size_t input(Rng& rng) const { return rng.categorical(input_weights_); }

    const Transition& transition(std::size_t s, std::size_t x, Rng& rng) const
    {
        const auto& w = row_weights_[s * m_.inputs().size() + x];
        return m_.row(s, x)[rng.categorical(w)];
    }

private:
    const EpsilonTransducer& m_;
    std::vector<double> input_weights_;
    std::vector<std::vector<double>> row_weights_;
};

void check_alphabet_size(const EpsilonTransducer& m)
{
    constexpr std::size_t kMax = std::numeric_limits<std::uint16_t>::max();
    if (m.states().size() > kMax || m.inputs().size() > kMax || m.outputs().size() > kMax) {
        throw std::length_error("alphabet too large for trajectory encoding");
    }
}

Trajectory empty_trajectory(const EpsilonTransducer& m, std::size_t s0, std::uint64_t seed)
{
    check_alphabet_size(m);
    Trajectory t;
    t.seed = seed;
    t.inputs = m.inputs();
    t.outputs = m.outputs();
    t.states = m.states();
    t.initial_state = static_cast<std::uint16_t>(s0);
    return t;
}

} // namespace

Trajectory simulate(const EpsilonTransducer& m, const std::string& initial_state, std::size_t n_steps,
                    std::uint64_t seed)
{
    if (n_steps < 1) {
        throw std::invalid_argument("simulate needs at least one step");
    }
    std::size_t s = m.state_index(initial_state);
    Trajectory t = empty_trajectory(m, s, seed);
    t.steps.reserve(n_steps);
    const Sampler sampler(m);
    Rng rng(seed);
    for (std::size_t i = 1; i <= n_steps; ++i) {
        const std::size_t x = sampler.input(rng);
        const Transition& tr = sampler.transition(s, x, rng);
        s = tr.next;
        t.steps.push_back({i, static_cast<std::uint16_t>(x), static_cast<std::uint16_t>(tr.output),
                           static_cast<std::uint16_t>(s)});
    }
    return t;
}

Trajectory simulate_with_inputs(const EpsilonTransducer& m, const std::string& initial_state,
                                const std::vector<std::string>& inputs, std::uint64_t seed)
{
    if (inputs.empty()) {
        throw std::invalid_argument("simulate needs at least one step");
    }
    std::size_t s = m.state_index(initial_state);
    Trajectory t = empty_trajectory(m, s, seed);
    const Sampler sampler(m);
    Rng rng(seed);
    std::uint64_t i = 0;
    for (const auto& label : inputs) {
        const std::size_t x = m.input_index(label);
        const Transition& tr = sampler.transition(s, x, rng);
        s = tr.next;
        t.steps.push_back({++i, static_cast<std::uint16_t>(x), static_cast<std::uint16_t>(tr.output),
                           static_cast<std::uint16_t>(s)});
    }
    return t;
}

JointTable empirical_joint(const Trajectory& t)
{
    std::map<std::array<std::uint16_t, 4>, std::uint64_t> counts;
    std::uint64_t total = 0;
    std::optional<std::uint16_t> prev = t.initial_state;
    for (const auto& step : t.steps) {
        if (prev) {
            ++counts[{*prev, step.x, step.y, step.s}];
            ++total;
        }
        prev = step.s;
    }
    if (total == 0) {
        throw std::invalid_argument("trajectory has no state transitions");
    }
    std::map<JointTable::Key, Probability> entries;
    const double n = static_cast<double>(total);
    for (const auto& [k, c] : counts) {
        entries[{t.states.at(k[0]), t.inputs.at(k[1]), t.outputs.at(k[2]), t.states.at(k[3])}] =
            Probability::approx(static_cast<double>(c) / n);
    }
    return JointTable({axis::kPrevState, axis::kInput, axis::kOutput, axis::kNextState}, std::move(entries));
}

double estimate_erased_information(const Trajectory& t, const EpsilonTransducer& m)
{
    if (t.steps.size() < 2) {
        throw std::invalid_argument("erased-information estimate needs at least two steps");
    }
    for (const auto& x : t.inputs) {
        (void)m.input_index(x);
    }
    for (const auto& y : t.outputs) {
        (void)m.output_index(y);
    }
    for (const auto& s : t.states) {
        (void)m.state_index(s);
    }
    return conditional_entropy(empirical_joint(t), axis::kPrevState,
                               {axis::kInput, axis::kOutput, axis::kNextState});
}

std::map<std::string, double> state_occupancy(const Trajectory& t)
{
    std::vector<std::uint64_t> counts(t.states.size(), 0);
    for (const auto& step : t.steps) {
        ++counts.at(step.s);
    }
    std::map<std::string, double> out;
    const double n = static_cast<double>(t.steps.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        out[t.states[i]] = n > 0 ? static_cast<double>(counts[i]) / n : 0.0;
    }
    return out;
}

double state_change_fraction(const Trajectory& t)
{
    std::uint64_t changes = 0;
    std::uint64_t total = 0;
    std::optional<std::uint16_t> prev = t.initial_state;
    for (const auto& step : t.steps) {
        if (prev) {
            changes += (*prev != step.s) ? 1 : 0;
            ++total;
        }
        prev = step.s;
    }
    if (total == 0) {
        throw std::invalid_argument("trajectory has no state transitions");
    }
    return static_cast<double>(changes) / static_cast<double>(total);
}

std::map<std::string, double> word_frequencies(const Trajectory& t, std::size_t length)
{
    if (length == 0 || t.steps.size() < length) {
        throw std::invalid_argument("word length must be in [1, trajectory length]");
    }
    // Encode each window as an integer in base |X||Y| and render labels at the end.
    const std::uint64_t base = t.inputs.size() * t.outputs.size();
    std::map<std::uint64_t, std::uint64_t> counts;
    const std::size_t windows = t.steps.size() - length + 1;
    for (std::size_t i = 0; i < windows; ++i) {
        std::uint64_t code = 0;
        for (std::size_t k = 0; k < length; ++k) {
            const auto& st = t.steps[i + k];
            code = code * base + st.x * t.outputs.size() + st.y;
        }
        ++counts[code];
    }
    std::map<std::string, double> out;
    for (const auto& [code, c] : counts) {
        std::vector<std::string> parts(length);
        std::uint64_t v = code;
        for (std::size_t k = length; k-- > 0;) {
            const std::uint64_t sym = v % base;
            v /= base;
            parts[k] = t.inputs[sym / t.outputs.size()] + ":" + t.outputs[sym % t.outputs.size()];
        }
        std::string word;
        for (const auto& p : parts) {
            if (!word.empty()) {
                word += ' ';
            }
            word += p;
        }
        out[word] = static_cast<double>(c) / static_cast<double>(windows);
    }
    return out;
}

double max_frequency_gap(const std::map<std::string, double>& a, const std::map<std::string, double>& b)
{
    std::set<std::string> words;
    for (const auto& [w, f] : a) {
        words.insert(w);
    }
    for (const auto& [w, f] : b) {
        words.insert(w);
    }
    double gap = 0.0;
    for (const auto& w : words) {
        auto ia = a.find(w);
        auto ib = b.find(w);
        const double fa = ia == a.end() ? 0.0 : ia->second;
        const double fb = ib == b.end() ? 0.0 : ib->second;
        gap = std::max(gap, std::abs(fa - fb));
    }
    return gap;
}

void write_csv(std::ostream& os, const Trajectory& t)
{
    os << "t,x,y,s\n";
    if (t.initial_state) {
        os << "0,,," << t.states.at(*t.initial_state) << '\n';
    }
    for (const auto& step : t.steps) {
        os << step.t << ',' << t.x_label(step) << ',' << t.y_label(step) << ',' << t.s_label(step) << '\n';
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::uint16_t intern(std::vector<std::string>& alphabet, const std::string& label, std::size_t line)
{
    auto it = std::find(alphabet.begin(), alphabet.end(), label);
    if (it != alphabet.end()) {
        return static_cast<std::uint16_t>(it - alphabet.begin());
    }
    if (alphabet.size() >= std::numeric_limits<std::uint16_t>::max()) {
        throw CsvError(line, "alphabet too large");
    }
    alphabet.push_back(label);
    return static_cast<std::uint16_t>(alphabet.size() - 1);
}

} // namespace

Trajectory read_csv(std::istream& is)
{
    Trajectory t;
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(is, line)) {
        throw CsvError(1, "missing header");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "t,x,y,s") {
        throw CsvError(line_no, "expected header 't,x,y,s'");
    }
    std::optional<std::uint64_t> last_t;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != 4) {
            throw CsvError(line_no, "expected 4 fields, found " + std::to_string(f.size()));
        }
        std::uint64_t step_t = 0;
        try {
            std::size_t used = 0;
            step_t = std::stoull(f[0], &used);
            if (used != f[0].size()) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception&) {
            throw CsvError(line_no, "malformed time index '" + f[0] + "'");
        }
        if (last_t && step_t <= *last_t) {
            throw CsvError(line_no, "time index does not increase");
        }
        last_t = step_t;
        if (f[1].empty() && f[2].empty()) {
            if (!t.steps.empty() || t.initial_state) {
                throw CsvError(line_no, "empty input/output allowed only on the first row");
            }
            t.initial_state = intern(t.states, f[3], line_no);
            continue;
        }
        if (f[1].empty() || f[2].empty()) {
            throw CsvError(line_no, "missing input or output symbol");
        }
        t.steps.push_back({step_t, intern(t.inputs, f[1], line_no), intern(t.outputs, f[2], line_no),
                           intern(t.states, f[3], line_no)});
    }
    if (t.steps.empty()) {
        throw CsvError(line_no, "trajectory has no steps");
    }
    return t;
}

} // namespace erasure
