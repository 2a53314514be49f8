#include "erasure/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace erasure {

namespace qubit {

const std::string& state_for(const std::string& basis, const std::string& outcome)
{
    const bool plus = outcome == kPlus;
    if (!plus && outcome != kMinus) {
        throw std::invalid_argument("unknown qubit outcome '" + outcome + "'");
    }
    if (basis == kZ) {
        return plus ? kS0 : kS1;
    }
    if (basis == kX) {
        return plus ? kSPlus : kSMinus;
    }
    throw std::invalid_argument("unknown qubit basis '" + basis + "'");
}

} // namespace qubit

EpsilonTransducer build_qubit_machine()
{
    using namespace qubit;
    const auto one = Probability::exact(1, 1);
    const auto half = Probability::exact(1, 2);
    struct Eigen {
        const std::string& state;
        const std::string& basis;
        const std::string& outcome;
    };
    const std::array<Eigen, 4> eigenstates{{
        {kS0, kZ, kPlus},
        {kS1, kZ, kMinus},
        {kSPlus, kX, kPlus},
        {kSMinus, kX, kMinus},
    }};
    std::vector<KernelEntry> kernel;
    for (const auto& from : eigenstates) {
        for (const std::string* basis : {&kZ, &kX}) {
            if (*basis == from.basis) {
                kernel.push_back({from.state, *basis, from.outcome, from.state, one});
            } else {
                kernel.push_back({from.state, *basis, kPlus, state_for(*basis, kPlus), half});
                kernel.push_back({from.state, *basis, kMinus, state_for(*basis, kMinus), half});
            }
        }
    }
    return EpsilonTransducer({kS0, kS1, kSPlus, kSMinus}, {kZ, kX}, {kPlus, kMinus}, kernel);
}

EpsilonTransducer build_nor_machine()
{
    const auto one = Probability::exact(1, 1);
    std::vector<KernelEntry> kernel;
    for (int prev : {0, 1}) {
        for (int x : {0, 1}) {
            const int y = (x == 0 && prev == 0) ? 1 : 0;
            kernel.push_back({std::to_string(prev), std::to_string(x), std::to_string(y), std::to_string(y), one});
        }
    }
    return EpsilonTransducer({"0", "1"}, {"0", "1"}, {"0", "1"}, kernel);
}

namespace {

constexpr double kTol = 1e-12;

using Mat = DensityMatrix2::Entries;

Mat multiply(const Mat& a, const Mat& b)
{
    Mat r{};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    return r;
}

Mat sandwich(const Mat& p, const Mat& rho)
{
    return multiply(multiply(p, rho), p);
}

Complex trace(const Mat& m)
{
    return m[0][0] + m[1][1];
}

std::array<double, 2> hermitian_eigenvalues(const Mat& m)
{
    const double a = m[0][0].real();
    const double d = m[1][1].real();
    const double mean = 0.5 * (a + d);
    const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m[0][1]));
    return {mean + half_gap, mean - half_gap};
}

} // namespace

DensityMatrix2::DensityMatrix2(const Entries& entries) : m_(entries)
{
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            if (!std::isfinite(m_[i][j].real()) || !std::isfinite(m_[i][j].imag())) {
                throw ValidationError("density matrix has a non-finite entry");
            }
            if (std::abs(m_[i][j] - std::conj(m_[j][i])) > kTol) {
                throw ValidationError("density matrix is not Hermitian");
            }
        }
    }
    if (std::abs(trace(m_) - Complex(1.0, 0.0)) > kTol) {
        throw ValidationError("density matrix trace is not 1");
    }
    if (hermitian_eigenvalues(m_)[1] < -kTol) {
        throw ValidationError("density matrix has a negative eigenvalue");
    }
}

DensityMatrix2 DensityMatrix2::pure(Complex a, Complex b)
{
    const double n = std::norm(a) + std::norm(b);
    if (n <= 0.0) {
        throw ValidationError("zero state vector");
    }
    const double s = 1.0 / std::sqrt(n);
    a *= s;
    b *= s;
    return DensityMatrix2(Entries{{{a * std::conj(a), a * std::conj(b)}, {b * std::conj(a), b * std::conj(b)}}});
}

DensityMatrix2 DensityMatrix2::maximally_mixed()
{
    return diagonal(0.5, 0.5);
}

DensityMatrix2 DensityMatrix2::diagonal(double p0, double p1)
{
    return DensityMatrix2(Entries{{{p0, 0.0}, {0.0, p1}}});
}

std::array<double, 2> DensityMatrix2::eigenvalues() const
{
    return hermitian_eigenvalues(m_);
}

double DensityMatrix2::purity() const
{
    return trace(multiply(m_, m_)).real();
}

bool DensityMatrix2::approx_equal(const DensityMatrix2& o, double tol) const
{
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            if (std::abs(m_[i][j] - o.m_[i][j]) > tol) {
                return false;
            }
        }
    }
    return true;
}

MeasurementBasis::MeasurementBasis(std::string label, Projector plus, Projector minus)
    : label_(std::move(label)), projectors_{plus, minus}
{
}

MeasurementBasis MeasurementBasis::z()
{
    return MeasurementBasis(qubit::kZ, Projector{{{1.0, 0.0}, {0.0, 0.0}}}, Projector{{{0.0, 0.0}, {0.0, 1.0}}});
}

MeasurementBasis MeasurementBasis::x()
{
    return MeasurementBasis(qubit::kX, Projector{{{0.5, 0.5}, {0.5, 0.5}}}, Projector{{{0.5, -0.5}, {-0.5, 0.5}}});
}

MeasurementBasis MeasurementBasis::from_label(const std::string& label)
{
    if (label == qubit::kZ) {
        return z();
    }
    if (label == qubit::kX) {
        return x();
    }
    throw std::invalid_argument("unknown measurement basis '" + label + "'");
}

DensityMatrix2 measure_nonselective(const DensityMatrix2& rho, const MeasurementBasis& b)
{
    const Mat a = sandwich(b.projector(0), rho.entries());
    const Mat c = sandwich(b.projector(1), rho.entries());
    Mat out{};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            out[i][j] = a[i][j] + c[i][j];
        }
    }
    return DensityMatrix2(out);
}

SelectiveOutcome measure_selective(const DensityMatrix2& rho, const MeasurementBasis& b, Rng& rng)
{
    const Mat branch_plus = sandwich(b.projector(0), rho.entries());
    const double p_plus = std::clamp(trace(branch_plus).real(), 0.0, 1.0);
    const bool plus = rng.uniform() < p_plus;
    const Mat branch = plus ? branch_plus : sandwich(b.projector(1), rho.entries());
    const double p = plus ? p_plus : 1.0 - p_plus;
    Mat post{};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            post[i][j] = branch[i][j] / p;
        }
    }
    return {plus ? +1 : -1, DensityMatrix2(post)};
}

SelectiveOutcome measure_selective(const DensityMatrix2& rho, const MeasurementBasis& b, std::uint64_t seed)
{
    Rng rng(seed);
    return measure_selective(rho, b, rng);
}

double von_neumann_entropy(const DensityMatrix2& rho)
{
    double h = 0.0;
    for (double lambda : rho.eigenvalues()) {
        const double l = std::clamp(lambda, 0.0, 1.0);
        if (l > kTol) {
            h -= l * std::log2(l);
        }
    }
    return h;
}

HeatBound landauer_lower_bound(double delta_bits, double temperature, double boltzmann)
{
    if (!(temperature > 0.0)) {
        throw std::domain_error("temperature must be positive");
    }
    if (!(boltzmann > 0.0)) {
        throw std::domain_error("Boltzmann constant must be positive");
    }
    const double units = delta_bits == 0.0 ? 0.0 : -delta_bits;
    return {units, units * boltzmann * temperature * std::numbers::ln2};
}

InformationBoundCheck check_information_bound(const LogicalOperationAudit& audit, double tol)
{
    InformationBoundCheck c;
    c.delta_s_ni = audit.environment_entropy_change + audit.sub_ensembles_after - audit.sub_ensembles_before;
    c.bound = -(audit.shannon_after_bits - audit.shannon_before_bits) * std::numbers::ln2;
    c.satisfied = c.delta_s_ni >= c.bound - tol;
    c.saturated = std::abs(c.delta_s_ni - c.bound) <= tol;
    return c;
}

LogicalOperationAudit box_erasure_scenario(bool reversible, double excess_heat)
{
    // Before: particle in either half with probability 1/2 (one bit). After:
    // particle in the reset half. Each logical sub-ensemble is a particle in
    // half the box, so its entropy is the same before and after.
    const double half_box_entropy = std::log(0.5);
    LogicalOperationAudit a;
    a.shannon_before_bits = 1.0;
    a.shannon_after_bits = 0.0;
    a.sub_ensembles_before = half_box_entropy;
    a.sub_ensembles_after = half_box_entropy;
    const double heat_units = 1.0 + (reversible ? 0.0 : excess_heat); // in k T ln2
    a.environment_entropy_change = heat_units * std::numbers::ln2;    // Q / T in units of k
    return a;
}

QuantumRun simulate_quantum(std::size_t n_steps, std::uint64_t seed, bool keep_entropies)
{
    if (n_steps < 1) {
        throw std::invalid_argument("quantum run needs at least one step");
    }
    const EpsilonTransducer m = build_qubit_machine();
    QuantumRun run;
    Trajectory& t = run.trajectory;
    t.seed = seed;
    t.inputs = m.inputs();
    t.outputs = m.outputs();
    t.states = m.states();
    t.initial_state = static_cast<std::uint16_t>(m.state_index(qubit::kS0));
    t.steps.reserve(n_steps);
    if (keep_entropies) {
        run.entropy_before.reserve(n_steps);
        run.entropy_after.reserve(n_steps);
    }
    const std::array<MeasurementBasis, 2> bases{MeasurementBasis::z(), MeasurementBasis::x()};
    DensityMatrix2 rho = DensityMatrix2::pure(1.0, 0.0);
    Rng rng(seed);
    for (std::size_t i = 1; i <= n_steps; ++i) {
        const std::size_t x = rng.index(2);
        const MeasurementBasis& basis = bases[x];
        const double before = keep_entropies ? von_neumann_entropy(rho) : 0.0;
        SelectiveOutcome r = measure_selective(rho, basis, rng);
        rho = r.state;
        const std::string& y = r.outcome > 0 ? qubit::kPlus : qubit::kMinus;
        const std::string& s = qubit::state_for(basis.label(), y);
        t.steps.push_back({i, static_cast<std::uint16_t>(m.input_index(basis.label())),
                           static_cast<std::uint16_t>(m.output_index(y)),
                           static_cast<std::uint16_t>(m.state_index(s))});
        if (keep_entropies) {
            run.entropy_before.push_back(before);
            run.entropy_after.push_back(von_neumann_entropy(rho));
        }
    }
    return run;
}

} // namespace erasure
