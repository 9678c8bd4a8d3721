#pragma once

// Two-valued homomorphisms on projection lattices, functional valuations on
// X-form extensions, and the atomic measure over valuations that reproduces
// quantum statistics.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modal/interpretation_rules.hpp"
#include "modal/operator_algebra.hpp"
#include "modal/projection_lattice.hpp"
#include "modal/xform.hpp"

namespace modal {

// ---------------------------------------------------------------------------
// Two-valued homomorphisms

struct TwoValuedHomomorphism {
    Projection atom;
    DefiniteSetPredicate domain;

    /// Throws PreconditionViolated if the atom is zero.
    TwoValuedHomomorphism(Projection atom, DefiniteSetPredicate domain, const ToleranceContext& ctx);
};

/// 1 if atom <= P, 0 if atom <= I - P; AtomNotResolved otherwise.
int homomorphism_eval(const TwoValuedHomomorphism& h, const Projection& p, const ToleranceContext& ctx);

/// Values of a map L -> {0,1}, indexed like the lattice elements.
using ValueMap = std::vector<std::uint8_t>;

struct LawReport {
    bool pass = true;
    std::size_t checks = 0;
    double max_residual = 0.0;
    std::vector<std::string> violations;  // first few, human readable
};

/// Exhaustive check of [x⊥] = 1-[x], [x∧y] = [x][y], [x∨y] = [x]+[y]-[x][y].
LawReport check_value_map(const FiniteLattice& l, const ValueMap& values);
/// Evaluates h on every element of L (which must lie in h.domain) and checks the laws.
LawReport check_homomorphism_laws(const TwoValuedHomomorphism& h, const FiniteLattice& l,
                                  const ToleranceContext& ctx);
ValueMap homomorphism_values(const TwoValuedHomomorphism& h, const FiniteLattice& l, const ToleranceContext& ctx);

inline constexpr std::size_t kExhaustiveBound = 20;

/// Every map L -> {0,1} obeying the three laws, by depth-first search with
/// each law checked as soon as its elements are assigned. Throws TooLarge if
/// |L| > bound.
std::vector<ValueMap> enumerate_homomorphisms(const FiniteLattice& l, std::size_t bound = kExhaustiveBound);

/// Element indices of a lattice ideal.
using IdealIndices = std::vector<std::size_t>;

/// Throws IdealInvalid unless nonempty, downward closed, join closed and without the top.
void validate_ideal(const FiniteLattice& l, const IdealIndices& ideal);
/// All ideals of a finite lattice: the principal ideals x↓ for x != top.
std::vector<IdealIndices> all_ideals(const FiniteLattice& l);
IdealIndices principal_ideal(const FiniteLattice& l, std::size_t x);

struct QuasiBooleanResult {
    bool quasi_boolean = false;
    /// Atom-set route: an orthogonal atom family A resolving every element with
    /// I = (∨A)⊥↓, as lattice indices.
    std::optional<std::vector<std::size_t>> atom_set;
    /// Definition route: an element outside I that no homomorphism sends to 1.
    std::optional<std::size_t> unreachable_element;
    std::size_t homomorphism_count = 0;
};

/// Decides I-quasiBooleanness by the atom-set characterization and by exhaustive
/// homomorphism search; throws OracleDisagreement if they differ.
QuasiBooleanResult check_quasiboolean(const FiniteLattice& l, const IdealIndices& ideal,
                                      std::size_t bound = kExhaustiveBound);

// ---------------------------------------------------------------------------
// Functional valuations

class FunctionalValuation {
public:
    /// Selects member `index` of spec as the atom Y.
    FunctionalValuation(XFormSpec spec, std::size_t index);

    const XFormSpec& spec() const noexcept { return spec_; }
    std::size_t index() const noexcept { return index_; }
    const Projection& selector() const { return spec_.members()[index_]; }

private:
    XFormSpec spec_;
    std::size_t index_;
};

std::vector<FunctionalValuation> all_valuations(const XFormSpec& spec);

/// <Q> = q_i for the unique spectral projector Q_i with Y <= Q_i.
/// Throws NotInExtension, NoOnes or MultipleOnes.
double valuation_eval(const FunctionalValuation& v, const Operator& q, const ToleranceContext& ctx);

struct FaithfulSample {
    Operator q;
    Operator s;
    double a = 1.0;
};

/// Linearity <aQ+S> = a<Q>+<S>, squaring <Q^2> = <Q>^2 and spectrum membership,
/// each within 10 atol.
LawReport check_faithful(const FunctionalValuation& v, const std::vector<FaithfulSample>& samples,
                         const ToleranceContext& ctx);

struct FunctionalReport {
    bool pass = false;
    std::size_t terms = 0;
    double final_distance = 0.0;     // ||F_N - F||
    double final_deviation = 0.0;    // |<F_N> - <F>|
    double max_bound_excess = 0.0;   // max_n (|<F_n> - <F>| - ||F_n - F||), should be <= 10 atol
    double max_mechanism_residual = 0.0;  // max_n ||F_n Y - q_n Y|| and |q_n - <F_n>|
};

/// Evaluates F_1..F_terms. Requires the distances ||F_n - F|| to be
/// non-increasing over the second half and to end below the first distance
/// (or within atol), else SequenceNotConvergent. Each value must satisfy
/// |<F_n> - <F>| <= ||F_n - F|| and match the eigenvalue q_n read off F_n Y = q_n Y.
FunctionalReport check_functional(const FunctionalValuation& v, const Operator& target,
                                  const std::function<Operator(int)>& sequence, int terms,
                                  const ToleranceContext& ctx);

// ---------------------------------------------------------------------------
// Measure over valuations

/// Pairing of an X-form family with a density state. Construction requires
/// W's image to lie in span(X) (IdealMismatch otherwise); `exact()` reports
/// whether additionally {P in d : PW = 0} = {P in d : P ΣX = 0}, which holds
/// iff every member carries positive weight.
class IdealSpec {
public:
    static IdealSpec make(XFormSpec spec, DensityState state, const ToleranceContext& ctx);

    const XFormSpec& spec() const noexcept { return spec_; }
    const DensityState& state() const noexcept { return state_; }
    bool exact() const noexcept { return exact_; }

private:
    IdealSpec(XFormSpec spec, DensityState state, bool exact)
        : spec_(std::move(spec)), state_(std::move(state)), exact_(exact) {}

    XFormSpec spec_;
    DensityState state_;
    bool exact_;
};

class StatisticsMeasure {
public:
    StatisticsMeasure(XFormSpec spec, DensityState state, std::vector<double> weights)
        : spec_(std::move(spec)), state_(std::move(state)), weights_(std::move(weights)) {}

    const XFormSpec& spec() const noexcept { return spec_; }
    const DensityState& state() const noexcept { return state_; }
    /// weights()[k] is the mass of the valuation selecting member k.
    const std::vector<double>& weights() const noexcept { return weights_; }
    double total() const;
    /// μ(S_P) = Σ_{Y : PY = Y} Tr(YW).
    double measure_of(const Projection& p, const ToleranceContext& ctx) const;

private:
    XFormSpec spec_;
    DensityState state_;
    std::vector<double> weights_;
};

/// Throws IdealMismatch if span(X) does not contain the image of W.
StatisticsMeasure build_measure(const XFormSpec& spec, const DensityState& state, const ToleranceContext& ctx);

inline constexpr double kProbabilityTolerance = 1e-9;

struct StatisticsReport {
    double quantum = 0.0;  // Tr(P_α P_β ... W)
    double measure = 0.0;  // μ{<.> : <A> ∈ α, ...}
    double difference = 0.0;
    bool pass = false;
};

/// Selections list eigenvalues (matched within eig_cluster_tol) per observable.
/// Throws NotCommuting or NotInExtension.
StatisticsReport verify_statistics(const StatisticsMeasure& measure, const std::vector<Operator>& family,
                                   const std::vector<std::vector<double>>& selections,
                                   const ToleranceContext& ctx);

struct AdditivityReport {
    double measure_of_join = 0.0;
    double sum_of_measures = 0.0;
    double operator_residual = 0.0;  // ||(∨P)W - (ΣP)W||
    bool pass = false;
};

/// Family members must lie in d and have pairwise zero meets (NotInD / NotDisjoint).
AdditivityReport check_countable_additivity(const StatisticsMeasure& measure, const std::vector<Projection>& family,
                                            const ToleranceContext& ctx);

}  // namespace modal
