#include "erasure/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace erasure {

namespace {

void check_sum(const Probability& total, bool exact, const char* what)
{
    if (exact) {
        if (total.rational() != 1) {
            throw ValidationError(std::string(what) + " sums to " + total.to_string() + ", not 1");
        }
    } else if (std::abs(total.value() - 1.0) > kSumTolerance) {
        throw ValidationError(std::string(what) + " sums to " + total.to_string() + ", not 1");
    }
}

void check_entry(const Probability& p, const char* what)
{
    if (p.value() < 0.0 || (p.is_exact() && p.rational() < 0)) {
        throw ValidationError(std::string(what) + " has a negative probability " + p.to_string());
    }
}

double plogp_term(double p, double norm)
{
    // p * log2(norm / p) with 0 log 0 := 0
    return p > 0.0 ? p * std::log2(norm / p) : 0.0;
}

} // namespace

ProbDist::ProbDist(std::vector<Entry> outcomes) : outcomes_(std::move(outcomes))
{
    if (outcomes_.empty()) {
        throw ValidationError("distribution has no outcomes");
    }
    std::set<std::string> seen;
    Probability total;
    bool exact = true;
    for (const auto& [label, p] : outcomes_) {
        if (!seen.insert(label).second) {
            throw ValidationError("duplicate outcome label '" + label + "'");
        }
        check_entry(p, "distribution");
        exact = exact && p.is_exact();
        total += p;
    }
    check_sum(total, exact, "distribution");
}

ProbDist ProbDist::uniform(const std::vector<std::string>& labels)
{
    if (labels.empty()) {
        throw ValidationError("uniform distribution over an empty set");
    }
    std::vector<Entry> entries;
    entries.reserve(labels.size());
    const auto p = Probability::exact(1, static_cast<long long>(labels.size()));
    for (const auto& l : labels) {
        entries.emplace_back(l, p);
    }
    return ProbDist(std::move(entries));
}

ProbDist ProbDist::point(const std::string& label)
{
    return ProbDist({{label, Probability::exact(1, 1)}});
}

bool ProbDist::is_exact() const noexcept
{
    return std::all_of(outcomes_.begin(), outcomes_.end(),
                       [](const Entry& e) { return e.second.is_exact(); });
}

bool ProbDist::contains(const std::string& label) const
{
    return std::any_of(outcomes_.begin(), outcomes_.end(),
                       [&](const Entry& e) { return e.first == label; });
}

Probability ProbDist::prob(const std::string& label) const
{
    for (const auto& [l, p] : outcomes_) {
        if (l == label) {
            return p;
        }
    }
    return Probability::exact(0, 1);
}

std::vector<std::string> ProbDist::labels() const
{
    std::vector<std::string> out;
    out.reserve(outcomes_.size());
    for (const auto& e : outcomes_) {
        out.push_back(e.first);
    }
    return out;
}

JointTable::JointTable(std::vector<std::string> axes, std::map<Key, Probability> entries)
    : axes_(std::move(axes)), entries_(std::move(entries))
{
    if (axes_.empty()) {
        throw ValidationError("joint table needs at least one axis");
    }
    std::set<std::string> names(axes_.begin(), axes_.end());
    if (names.size() != axes_.size()) {
        throw ValidationError("duplicate axis name in joint table");
    }
    if (entries_.empty()) {
        throw ValidationError("joint table has no entries");
    }
    Probability total;
    bool exact = true;
    for (const auto& [key, p] : entries_) {
        if (key.size() != axes_.size()) {
            throw ValidationError("joint table key arity does not match its axes");
        }
        check_entry(p, "joint table");
        exact = exact && p.is_exact();
        total += p;
    }
    check_sum(total, exact, "joint table");
}

std::size_t JointTable::axis_index(const std::string& name) const
{
    auto it = std::find(axes_.begin(), axes_.end(), name);
    if (it == axes_.end()) {
        throw std::out_of_range("unknown axis '" + name + "'");
    }
    return static_cast<std::size_t>(it - axes_.begin());
}

bool JointTable::is_exact() const noexcept
{
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const auto& e) { return e.second.is_exact(); });
}

Probability JointTable::prob(const Key& key) const
{
    auto it = entries_.find(key);
    return it == entries_.end() ? Probability::exact(0, 1) : it->second;
}

ProbDist JointTable::marginal(const std::string& axis) const
{
    const JointTable m = marginalize(*this, {axis});
    std::vector<ProbDist::Entry> out;
    for (const auto& [key, p] : m.entries()) {
        out.emplace_back(key.front(), p);
    }
    return ProbDist(std::move(out));
}

double shannon_entropy(const ProbDist& d)
{
    if (d.empty()) {
        throw ValidationError("entropy of an empty distribution");
    }
    double h = 0.0;
    for (const auto& [label, p] : d.outcomes()) {
        h += plogp_term(p.value(), 1.0);
    }
    return h;
}

std::optional<Rational> exact_entropy(const ProbDist& d)
{
    Rational h = 0;
    for (const auto& [label, p] : d.outcomes()) {
        if (!p.is_exact()) {
            return std::nullopt;
        }
        if (p.is_zero()) {
            continue;
        }
        auto k = exact_log2(p.rational());
        if (!k) {
            return std::nullopt;
        }
        h -= p.rational() * *k;
    }
    return h;
}

JointTable marginalize(const JointTable& j, const std::vector<std::string>& keep)
{
    if (keep.empty()) {
        throw std::invalid_argument("marginalize needs a non-empty set of axes to keep");
    }
    std::set<std::string> wanted(keep.begin(), keep.end());
    if (wanted.size() != keep.size()) {
        throw std::invalid_argument("duplicate axis in keep set");
    }
    for (const auto& name : keep) {
        (void)j.axis_index(name);
    }
    std::vector<std::size_t> idx;
    std::vector<std::string> axes;
    for (std::size_t i = 0; i < j.axes().size(); ++i) {
        if (wanted.count(j.axes()[i])) {
            idx.push_back(i);
            axes.push_back(j.axes()[i]);
        }
    }
    std::map<JointTable::Key, Probability> out;
    for (const auto& [key, p] : j.entries()) {
        JointTable::Key sub;
        sub.reserve(idx.size());
        for (auto i : idx) {
            sub.push_back(key[i]);
        }
        out[sub] += p;
    }
    return JointTable(std::move(axes), std::move(out));
}

double joint_entropy(const JointTable& j, const std::vector<std::string>& vars)
{
    if (vars.empty()) {
        return 0.0;
    }
    const JointTable m = marginalize(j, vars);
    double h = 0.0;
    for (const auto& [key, p] : m.entries()) {
        h += plogp_term(p.value(), 1.0);
    }
    return h;
}

namespace {

struct Grouped {
    // given-assignment -> (target label -> mass)
    std::map<JointTable::Key, std::map<std::string, Probability>> groups;
};

Grouped group_by(const JointTable& j, const std::string& target, const std::vector<std::string>& given)
{
    const std::size_t t = j.axis_index(target);
    std::vector<std::size_t> g;
    for (const auto& name : given) {
        const std::size_t i = j.axis_index(name);
        if (i == t) {
            throw std::invalid_argument("target '" + target + "' also appears among the conditioning axes");
        }
        if (std::find(g.begin(), g.end(), i) != g.end()) {
            throw std::invalid_argument("duplicate conditioning axis '" + name + "'");
        }
        g.push_back(i);
    }
    Grouped out;
    for (const auto& [key, p] : j.entries()) {
        JointTable::Key c;
        c.reserve(g.size());
        for (auto i : g) {
            c.push_back(key[i]);
        }
        out.groups[c][key[t]] += p;
    }
    return out;
}

} // namespace

double conditional_entropy(const JointTable& j, const std::string& target,
                           const std::vector<std::string>& given)
{
    const Grouped grouped = group_by(j, target, given);
    double h = 0.0;
    for (const auto& [c, cells] : grouped.groups) {
        double mass = 0.0;
        for (const auto& [label, p] : cells) {
            mass += p.value();
        }
        if (mass <= 0.0) {
            continue;
        }
        for (const auto& [label, p] : cells) {
            h += plogp_term(p.value(), mass);
        }
    }
    return h;
}

std::optional<Rational> conditional_entropy_exact(const JointTable& j, const std::string& target,
                                                  const std::vector<std::string>& given)
{
    if (!j.is_exact()) {
        return std::nullopt;
    }
    const Grouped grouped = group_by(j, target, given);
    Rational h = 0;
    for (const auto& [c, cells] : grouped.groups) {
        Rational mass = 0;
        for (const auto& [label, p] : cells) {
            mass += p.rational();
        }
        if (mass == 0) {
            continue;
        }
        for (const auto& [label, p] : cells) {
            if (p.is_zero()) {
                continue;
            }
            auto k = exact_log2(p.rational() / mass);
            if (!k) {
                return std::nullopt;
            }
            h -= p.rational() * *k;
        }
    }
    return h;
}

ProbDist conditional(const JointTable& j, const std::string& target,
                     const std::vector<std::pair<std::string, std::string>>& given)
{
    const std::size_t t = j.axis_index(target);
    std::vector<std::pair<std::size_t, std::string>> fixed;
    for (const auto& [name, value] : given) {
        fixed.emplace_back(j.axis_index(name), value);
    }
    std::map<std::string, Probability> cells;
    Probability mass;
    for (const auto& [key, p] : j.entries()) {
        bool match = std::all_of(fixed.begin(), fixed.end(),
                                 [&](const auto& f) { return key[f.first] == f.second; });
        if (!match || p.is_zero()) {
            continue;
        }
        cells[key[t]] += p;
        mass += p;
    }
    if (mass.is_zero()) {
        throw std::domain_error("conditioning event for '" + target + "' has zero probability");
    }
    std::vector<ProbDist::Entry> out;
    for (auto& [label, p] : cells) {
        out.emplace_back(label, p / mass);
    }
    return ProbDist(std::move(out));
}

double binary_entropy(double p)
{
    if (p < 0.0 || p > 1.0) {
        throw std::domain_error("binary entropy argument outside [0, 1]");
    }
    return plogp_term(p, 1.0) + plogp_term(1.0 - p, 1.0);
}

} // namespace erasure
