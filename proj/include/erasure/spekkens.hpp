#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "erasure/rng.hpp"
#include "erasure/trajectory.hpp"

namespace erasure::spekkens {

// Cells: 1 = top-left, 2 = bottom-left, 3 = top-right, 4 = bottom-right.
enum class Partition { none, vertical, horizontal };

enum class Side { left, right, top, bottom };

/// A classical particle in a 2D box with at most one partition inserted.
struct SpekkensBox {
    int ontic = 1;
    Partition partition = Partition::none;

    friend bool operator==(const SpekkensBox&, const SpekkensBox&) = default;
};

/// Thrown when the box is used without a partition in place.
class ProtocolError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An observer's knowledge: one of the four halves, or no knowledge at all.
class EpistemicState {
public:
    static EpistemicState of(std::set<int> cells);
    static EpistemicState unknown() { return of({1, 2, 3, 4}); }
    static EpistemicState from_side(Side side);

    [[nodiscard]] const std::set<int>& support() const noexcept { return support_; }
    [[nodiscard]] bool is_maximal_knowledge() const noexcept { return support_.size() == 2; }

    friend bool operator==(const EpistemicState&, const EpistemicState&) = default;

private:
    explicit EpistemicState(std::set<int> s) : support_(std::move(s)) {}
    std::set<int> support_;
};

/// Cells on the same side of `partition` as `cell`.
std::array<int, 2> accessible_region(int cell, Partition partition);

/// Inserts a partition in the given orientation; the swap is atomic and leaves the cell unchanged.
SpekkensBox set_partition(SpekkensBox box, Partition orientation);

/// Free evolution behind the current partition: the cell is re-sampled
/// uniformly within its half. Throws ProtocolError when no partition is set.
SpekkensBox evolve(SpekkensBox box, Rng& rng);

/// Which half of the current partition holds the particle. Does not disturb the box.
Side observe(const SpekkensBox& box);

/// Qubit vocabulary for a readout: vertical is the z basis (left = +1),
/// horizontal is the x basis (top = +1).
const std::string& basis_label(Partition p);
const std::string& outcome_label(Side s);

enum class RetrodictionKind { cell, underdetermined };

struct Retrodiction {
    RetrodictionKind kind;
    int cell = 0; // valid when kind == cell
};

/// Pre-measurement cell implied by a preparation and a later observation.
/// Throws std::invalid_argument for disjoint supports or non-maximal states.
Retrodiction retrodict(const EpistemicState& prepared, const EpistemicState& observed);

struct ProtocolOptions {
    double reorient_probability = 0.5;
    Partition initial_partition = Partition::vertical;
};

struct ProtocolRun {
    Trajectory trajectory;         // filled only when record = true
    std::vector<int> cells;        // ontic cell at each observation (record = true)
    SpekkensBox final_box;
    std::uint64_t steps = 0;
    std::uint64_t same_basis_steps = 0;
    std::uint64_t same_basis_repeats = 0;
    std::uint64_t orientation_changes = 0;
};

/// Repeated random-basis measurement: each step re-orients the partition with
/// probability 1/2 (input x_t), lets the particle evolve, and reads the side
/// (output y_t). The trajectory uses the qubit machine's alphabets, with s_t
/// the corresponding causal-state label.
ProtocolRun run_protocol(std::size_t n_steps, std::uint64_t seed, bool record,
                         const ProtocolOptions& opts = {});

} // namespace erasure::spekkens
