#include "erasure/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

namespace erasure {

HistoryTable HistoryTable::from_trajectory(const Trajectory& t, std::size_t max_length)
{
    if (max_length < 1) {
        throw std::invalid_argument("history length must be at least 1");
    }
    HistoryTable h;
    h.max_length_ = max_length;
    h.inputs_ = t.inputs;
    h.outputs_ = t.outputs;
    const auto& steps = t.steps;
    Word word;
    word.reserve(max_length);
    for (std::size_t i = 1; i < steps.size(); ++i) {
        const Symbol next{steps[i].x, steps[i].y};
        for (std::size_t len = 1; len <= max_length && len <= i; ++len) {
            word.clear();
            for (std::size_t k = i - len; k < i; ++k) {
                word.emplace_back(steps[k].x, steps[k].y);
            }
            auto& c = h.words_[word];
            ++c.counts[next];
            ++c.total;
        }
    }
    return h;
}

std::map<std::uint16_t, double> HistoryTable::next_output(const Word& w, std::uint16_t x) const
{
    std::map<std::uint16_t, double> out;
    auto it = words_.find(w);
    if (it == words_.end()) {
        return out;
    }
    std::uint64_t total = 0;
    for (const auto& [sym, c] : it->second.counts) {
        if (sym.first == x) {
            total += c;
        }
    }
    for (const auto& [sym, c] : it->second.counts) {
        if (sym.first == x) {
            out[sym.second] = static_cast<double>(c) / static_cast<double>(total);
        }
    }
    return out;
}

namespace {

using Symbol = HistoryTable::Symbol;
using Counts = std::map<Symbol, std::uint64_t>;

/// Worst-case total-variation distance between P(y | x, a) and P(y | x, b)
/// over the inputs observed after both.
double future_distance(const Counts& a, const Counts& b)
{
    std::map<std::uint16_t, std::uint64_t> ta;
    std::map<std::uint16_t, std::uint64_t> tb;
    for (const auto& [s, c] : a) {
        ta[s.first] += c;
    }
    for (const auto& [s, c] : b) {
        tb[s.first] += c;
    }
    double worst = 0.0;
    for (const auto& [x, na] : ta) {
        auto it = tb.find(x);
        if (it == tb.end()) {
            continue;
        }
        const double nb = static_cast<double>(it->second);
        std::set<std::uint16_t> ys;
        for (const auto& [s, c] : a) {
            if (s.first == x) {
                ys.insert(s.second);
            }
        }
        for (const auto& [s, c] : b) {
            if (s.first == x) {
                ys.insert(s.second);
            }
        }
        double tv = 0.0;
        for (auto y : ys) {
            auto ia = a.find({x, y});
            auto ib = b.find({x, y});
            const double pa = ia == a.end() ? 0.0 : static_cast<double>(ia->second) / static_cast<double>(na);
            const double pb = ib == b.end() ? 0.0 : static_cast<double>(ib->second) / nb;
            tv += std::abs(pa - pb);
        }
        worst = std::max(worst, 0.5 * tv);
    }
    return worst;
}

void pool_into(Counts& into, const Counts& from)
{
    for (const auto& [s, c] : from) {
        into[s] += c;
    }
}

} // namespace

EpsilonTransducer reconstruct_causal_states(const HistoryTable& h, const ReconstructionOptions& opts)
{
    if (!(opts.tol > 0.0)) {
        throw std::invalid_argument("merge tolerance must be positive");
    }
    if (h.empty()) {
        throw std::invalid_argument("history table is empty");
    }
    const std::size_t L = h.max_length();

    std::vector<const HistoryTable::Word*> words;
    for (const auto& [w, c] : h.words()) {
        if (w.size() == L && c.total >= opts.min_count) {
            words.push_back(&w);
        }
    }
    if (words.empty()) {
        throw ReconstructionError("no past word of length " + std::to_string(L) + " has at least " +
                                  std::to_string(opts.min_count) + " observations; collect more data");
    }

    // Greedy assignment in lexicographic word order (map iteration order).
    std::vector<std::vector<std::size_t>> members;
    std::vector<Counts> pooled;
    for (std::size_t i = 0; i < words.size(); ++i) {
        const Counts& c = h.words().at(*words[i]).counts;
        bool placed = false;
        for (std::size_t k = 0; k < pooled.size(); ++k) {
            if (future_distance(pooled[k], c) < opts.tol) {
                members[k].push_back(i);
                pool_into(pooled[k], c);
                placed = true;
                break;
            }
        }
        if (!placed) {
            members.push_back({i});
            pooled.push_back(c);
        }
    }
    // Transitive closure over clusters.
    for (bool merged = true; merged;) {
        merged = false;
        for (std::size_t a = 0; a < pooled.size() && !merged; ++a) {
            for (std::size_t b = a + 1; b < pooled.size(); ++b) {
                if (future_distance(pooled[a], pooled[b]) < opts.tol) {
                    members[a].insert(members[a].end(), members[b].begin(), members[b].end());
                    pool_into(pooled[a], pooled[b]);
                    members.erase(members.begin() + static_cast<std::ptrdiff_t>(b));
                    pooled.erase(pooled.begin() + static_cast<std::ptrdiff_t>(b));
                    merged = true;
                    break;
                }
            }
        }
    }

    std::map<HistoryTable::Word, std::size_t> cluster_of;
    for (std::size_t k = 0; k < members.size(); ++k) {
        for (auto i : members[k]) {
            cluster_of[*words[i]] = k;
        }
    }

    std::vector<std::string> states;
    for (std::size_t k = 0; k < members.size(); ++k) {
        states.push_back("c" + std::to_string(k));
    }

    // Successor of (cluster, x, y) must be unique for a unifilar quotient.
    std::map<std::tuple<std::size_t, std::uint16_t, std::uint16_t>, std::size_t> successor;
    for (const auto& [w, k] : cluster_of) {
        for (const auto& [sym, c] : h.words().at(w).counts) {
            HistoryTable::Word next(w.begin() + 1, w.end());
            next.push_back(sym);
            auto it = cluster_of.find(next);
            if (it == cluster_of.end()) {
                continue;
            }
            auto [pos, inserted] = successor.emplace(std::make_tuple(k, sym.first, sym.second), it->second);
            if (!inserted && pos->second != it->second) {
                throw ReconstructionError("merged histories are not unifilar: state " + states[k] + " on (" +
                                          h.inputs()[sym.first] + ", " + h.outputs()[sym.second] +
                                          ") leads to two states; increase the history length or collect "
                                          "more data");
            }
        }
    }

    std::vector<KernelEntry> kernel;
    std::vector<std::uint64_t> input_totals(h.inputs().size(), 0);
    for (std::size_t k = 0; k < members.size(); ++k) {
        for (std::uint16_t x = 0; x < h.inputs().size(); ++x) {
            std::uint64_t total = 0;
            std::vector<std::pair<std::uint16_t, std::uint64_t>> ys;
            for (const auto& [sym, c] : pooled[k]) {
                if (sym.first == x && successor.count({k, x, sym.second})) {
                    ys.emplace_back(sym.second, c);
                    total += c;
                }
            }
            if (total == 0) {
                throw ReconstructionError("state " + states[k] + " has no usable observations after input '" +
                                          h.inputs()[x] + "'; collect more data");
            }
            input_totals[x] += total;
            for (const auto& [y, c] : ys) {
                kernel.push_back({states[k], h.inputs()[x], h.outputs()[y], states[successor.at({k, x, y})],
                                  Probability::approx(static_cast<double>(c) / static_cast<double>(total))});
            }
        }
    }

    std::uint64_t grand = 0;
    for (auto v : input_totals) {
        grand += v;
    }
    std::vector<ProbDist::Entry> policy;
    for (std::size_t x = 0; x < h.inputs().size(); ++x) {
        policy.emplace_back(h.inputs()[x],
                            Probability::approx(static_cast<double>(input_totals[x]) / static_cast<double>(grand)));
    }
    return EpsilonTransducer(std::move(states), h.inputs(), h.outputs(), kernel, ProbDist(std::move(policy)));
}

} // namespace erasure
