#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "erasure/rng.hpp"
#include "erasure/trajectory.hpp"
#include "erasure/transducer.hpp"

namespace erasure {

namespace qubit {
inline const std::string kZ = "z";
inline const std::string kX = "x";
inline const std::string kPlus = "+1";
inline const std::string kMinus = "-1";
inline const std::string kS0 = "s0";
inline const std::string kS1 = "s1";
inline const std::string kSPlus = "s+";
inline const std::string kSMinus = "s-";

/// Causal state reached by measuring `basis` with `outcome`:
/// (z,+1)->s0, (z,-1)->s1, (x,+1)->s+, (x,-1)->s-.
const std::string& state_for(const std::string& basis, const std::string& outcome);
} // namespace qubit

/// Four-state machine of repeated Pauli measurements on one qubit. Inputs are
/// bases {z, x} chosen uniformly; the state is the post-measurement eigenstate.
EpsilonTransducer build_qubit_machine();

/// Two-state feedback NOR channel: y_t = NOR(x_t, y_{t-1}), state = last output.
EpsilonTransducer build_nor_machine();

using Complex = std::complex<double>;

/// 2x2 density matrix: Hermitian, unit trace, positive semidefinite (1e-12).
class DensityMatrix2 {
public:
    using Entries = std::array<std::array<Complex, 2>, 2>;

    explicit DensityMatrix2(const Entries& entries);

    static DensityMatrix2 pure(Complex a, Complex b);
    static DensityMatrix2 maximally_mixed();
    static DensityMatrix2 diagonal(double p0, double p1);

    [[nodiscard]] const Entries& entries() const noexcept { return m_; }
    [[nodiscard]] Complex operator()(std::size_t i, std::size_t j) const { return m_[i][j]; }
    [[nodiscard]] std::array<double, 2> eigenvalues() const;
    [[nodiscard]] double purity() const;
    [[nodiscard]] bool approx_equal(const DensityMatrix2& o, double tol = 1e-12) const;

private:
    Entries m_;
};

/// Projective measurement in one Pauli basis; projector 0 <-> outcome +1.
class MeasurementBasis {
public:
    using Projector = DensityMatrix2::Entries;

    static MeasurementBasis z();
    static MeasurementBasis x();
    /// "z" or "x".
    static MeasurementBasis from_label(const std::string& label);

    [[nodiscard]] const std::string& label() const noexcept { return label_; }
    [[nodiscard]] const Projector& projector(std::size_t i) const { return projectors_.at(i); }

private:
    MeasurementBasis(std::string label, Projector plus, Projector minus);

    std::string label_;
    std::array<Projector, 2> projectors_;
};

/// sum_i P_i rho P_i.
DensityMatrix2 measure_nonselective(const DensityMatrix2& rho, const MeasurementBasis& b);

struct SelectiveOutcome {
    int outcome; // +1 or -1
    DensityMatrix2 state;
};

/// Born-rule sample of an outcome and the normalized post-measurement state.
SelectiveOutcome measure_selective(const DensityMatrix2& rho, const MeasurementBasis& b, Rng& rng);
SelectiveOutcome measure_selective(const DensityMatrix2& rho, const MeasurementBasis& b, std::uint64_t seed);

/// -sum lambda log2 lambda over eigenvalues clamped to [0, 1].
double von_neumann_entropy(const DensityMatrix2& rho);

/// Units where one bit of entropy corresponds to k*T*ln2 of heat.
struct HeatBound {
    double kt_ln2_units; // minimal average heat to the bath, in k T ln2
    double joules;       // same bound in joules for the given k and T
};

/// Minimal average heat dissipated into a bath at temperature T for a change
/// of delta_bits in the system's entropy: <dQ> >= -T dS with dS = k ln2 * bits.
/// Throws std::domain_error for T <= 0.
HeatBound landauer_lower_bound(double delta_bits, double temperature, double boltzmann = 1.0);

inline constexpr double kBoltzmannSI = 1.380649e-23;

/// Entropy bookkeeping for one logical operation alpha -> beta in the
/// information-bearing form of Landauer's principle. Entropies of the
/// non-information-bearing degrees of freedom are in units of k.
struct LogicalOperationAudit {
    double shannon_before_bits = 0.0;
    double shannon_after_bits = 0.0;
    double environment_entropy_change = 0.0;    // dS_E / k
    double sub_ensembles_before = 0.0;          // sum_alpha P(alpha) S_alpha / k
    double sub_ensembles_after = 0.0;           // sum_beta P(beta) S_beta / k
};

struct InformationBoundCheck {
    double delta_s_ni = 0.0; // dS_NI / k
    double bound = 0.0;      // -dH ln2
    bool satisfied = false;
    bool saturated = false;  // equality within tolerance
};

/// dS_NI = dS_E + sum_beta P S_beta - sum_alpha P S_alpha  >=  -k dH ln2.
InformationBoundCheck check_information_bound(const LogicalOperationAudit& audit, double tol = 1e-12);

/// Scripted erasure of a uniformly random bit in a one-particle box at bath
/// temperature T. A quasi-static push (`reversible`) transfers exactly kT ln2;
/// otherwise `excess_heat` (in kT ln2) is dissipated on top.
LogicalOperationAudit box_erasure_scenario(bool reversible, double excess_heat = 0.5);

/// Selective-measurement run of the repeated-Pauli protocol on a pure qubit.
struct QuantumRun {
    Trajectory trajectory;                 // labeled with the qubit machine's alphabets
    std::vector<double> entropy_before;    // S(rho) before each step
    std::vector<double> entropy_after;     // S(rho) after each step
};

/// Starts in |0><0| (state s0); each step picks a basis uniformly, measures
/// selectively and records (x_t, y_t, s_t).
QuantumRun simulate_quantum(std::size_t n_steps, std::uint64_t seed, bool keep_entropies = true);

} // namespace erasure
