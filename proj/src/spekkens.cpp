#include "erasure/spekkens.hpp"

#include <algorithm>
#include <iterator>

#include "erasure/quantum.hpp"

namespace erasure::spekkens {

namespace {

void require_cell(int cell)
{
    if (cell < 1 || cell > 4) {
        throw std::invalid_argument("ontic cell must be in 1..4");
    }
}

bool is_left(int cell) { return cell == 1 || cell == 2; }
bool is_top(int cell) { return cell == 1 || cell == 3; }

} // namespace

EpistemicState EpistemicState::of(std::set<int> cells)
{
    static const std::array<std::set<int>, 4> halves{{{1, 2}, {3, 4}, {1, 3}, {2, 4}}};
    const bool allowed = cells == std::set<int>{1, 2, 3, 4} ||
                         std::find(halves.begin(), halves.end(), cells) != halves.end();
    if (!allowed) {
        throw std::invalid_argument("epistemic state must be a half of the box or the whole box");
    }
    return EpistemicState(std::move(cells));
}

EpistemicState EpistemicState::from_side(Side side)
{
    switch (side) {
    case Side::left:
        return of({1, 2});
    case Side::right:
        return of({3, 4});
    case Side::top:
        return of({1, 3});
    case Side::bottom:
        return of({2, 4});
    }
    throw std::invalid_argument("unknown side");
}

std::array<int, 2> accessible_region(int cell, Partition partition)
{
    require_cell(cell);
    switch (partition) {
    case Partition::vertical:
        return is_left(cell) ? std::array<int, 2>{1, 2} : std::array<int, 2>{3, 4};
    case Partition::horizontal:
        return is_top(cell) ? std::array<int, 2>{1, 3} : std::array<int, 2>{2, 4};
    case Partition::none:
        break;
    }
    throw ProtocolError("no partition in place");
}

SpekkensBox set_partition(SpekkensBox box, Partition orientation)
{
    if (orientation == Partition::none) {
        throw ProtocolError("the protocol always keeps one partition in place");
    }
    box.partition = orientation;
    return box;
}

SpekkensBox evolve(SpekkensBox box, Rng& rng)
{
    if (box.partition == Partition::none) {
        throw ProtocolError("cannot evolve without a partition in place");
    }
    const auto region = accessible_region(box.ontic, box.partition);
    box.ontic = region[rng.index(2)];
    return box;
}

Side observe(const SpekkensBox& box)
{
    require_cell(box.ontic);
    switch (box.partition) {
    case Partition::vertical:
        return is_left(box.ontic) ? Side::left : Side::right;
    case Partition::horizontal:
        return is_top(box.ontic) ? Side::top : Side::bottom;
    case Partition::none:
        break;
    }
    throw ProtocolError("cannot observe without a partition in place");
}

const std::string& basis_label(Partition p)
{
    switch (p) {
    case Partition::vertical:
        return qubit::kZ;
    case Partition::horizontal:
        return qubit::kX;
    case Partition::none:
        break;
    }
    throw ProtocolError("no basis without a partition");
}

const std::string& outcome_label(Side s)
{
    return (s == Side::left || s == Side::top) ? qubit::kPlus : qubit::kMinus;
}

Retrodiction retrodict(const EpistemicState& prepared, const EpistemicState& observed)
{
    if (!prepared.is_maximal_knowledge() || !observed.is_maximal_knowledge()) {
        throw std::invalid_argument("retrodiction needs two-cell epistemic states");
    }
    std::vector<int> common;
    std::set_intersection(prepared.support().begin(), prepared.support().end(), observed.support().begin(),
                          observed.support().end(), std::back_inserter(common));
    if (common.empty()) {
        throw std::invalid_argument("observation is impossible for this preparation");
    }
    if (common.size() == 1) {
        return {RetrodictionKind::cell, common.front()};
    }
    return {RetrodictionKind::underdetermined, 0};
}

ProtocolRun run_protocol(std::size_t n_steps, std::uint64_t seed, bool record, const ProtocolOptions& opts)
{
    if (n_steps < 1) {
        throw std::invalid_argument("protocol needs at least one step");
    }
    if (opts.initial_partition == Partition::none) {
        throw ProtocolError("the protocol starts with a partition in place");
    }
    const EpsilonTransducer machine = build_qubit_machine();
    Rng rng(seed);
    ProtocolRun run;
    SpekkensBox box{static_cast<int>(rng.index(4)) + 1, opts.initial_partition};
    if (record) {
        run.trajectory.seed = seed;
        run.trajectory.inputs = machine.inputs();
        run.trajectory.outputs = machine.outputs();
        run.trajectory.states = machine.states();
        run.trajectory.steps.reserve(n_steps);
        run.cells.reserve(n_steps);
    }
    std::optional<Side> last_side;
    for (std::size_t t = 1; t <= n_steps; ++t) {
        const Partition before = box.partition;
        if (rng.bernoulli(opts.reorient_probability)) {
            box = set_partition(box, before == Partition::vertical ? Partition::horizontal : Partition::vertical);
            ++run.orientation_changes;
        }
        const int cell_before = box.ontic;
        box = evolve(box, rng);
        const auto region = accessible_region(cell_before, box.partition);
        if (box.ontic != region[0] && box.ontic != region[1]) {
            throw std::logic_error("particle crossed the partition");
        }
        const Side side = observe(box);
        if (t > 1 && box.partition == before) {
            ++run.same_basis_steps;
            run.same_basis_repeats += (last_side && *last_side == side) ? 1 : 0;
        }
        last_side = side;
        if (record) {
            const std::string& x = basis_label(box.partition);
            const std::string& y = outcome_label(side);
            run.trajectory.steps.push_back({t, static_cast<std::uint16_t>(machine.input_index(x)),
                                            static_cast<std::uint16_t>(machine.output_index(y)),
                                            static_cast<std::uint16_t>(machine.state_index(qubit::state_for(x, y)))});
            run.cells.push_back(box.ontic);
        }
    }
    run.final_box = box;
    run.steps = n_steps;
    return run;
}

} // namespace erasure::spekkens
