#pragma once

// Executable versions of the no-go arguments: von Neumann's linearity demand
// on a spin-1/2 system, the two-dimensional lattices that admit no suitable
// homomorphisms or commutant representation, and the positive counterpart for
// X-form sets.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modal/interpretation_rules.hpp"
#include "modal/operator_algebra.hpp"
#include "modal/projection_lattice.hpp"
#include "modal/valuation_engine.hpp"

namespace modal {

struct SpinAssignment {
    int a = 1;  // value assigned to σ_x
    int b = 1;  // value assigned to σ_y
    int c = 1;  // value assigned to (σ_x + σ_y)/√2
    double residual = 0.0;  // |c - (a + b)/√2|
};

struct SpinDemoResult {
    Operator sigma_x;
    Operator sigma_y;
    Operator diagonal;  // (σ_x + σ_y)/√2
    std::vector<SpinAssignment> assignments;  // all 8
    double min_residual = 0.0;
    std::vector<double> diagonal_spectrum;
    double spectrum_error = 0.0;  // distance of that spectrum from {+1, -1}
};

SpinDemoResult von_neumann_spin_demo(const ToleranceContext& ctx);

struct H2ObstructionReport {
    bool obstruction_confirmed = false;
    std::size_t lattice_size = 0;
    std::size_t homomorphism_count = 0;
    std::vector<std::size_t> candidates_p;  // lattice atoms a with a <= P or a <= P⊥
    std::vector<std::size_t> candidates_q;
    bool candidates_disjoint = false;
    std::size_t ideals_checked = 0;
    std::size_t quasi_boolean_ideals = 0;
    std::string detail;
};

/// P, Q rank-one in dimension 2, neither parallel nor orthogonal; otherwise
/// PreconditionViolated.
H2ObstructionReport h2_quasiboolean_obstruction(const Projection& p, const Projection& q, const ToleranceContext& ctx);

struct H2CommutantReport {
    std::size_t lattice_size = 0;
    std::size_t double_commutant_dim = 0;
    Projection witness = Projection::zero(2);
    bool witness_in_d = true;
    bool witness_in_restriction = false;
    ClosureReport closure;
    bool counterexample_confirmed = false;
};

/// The pairs {P, P⊥} and {Q, Q⊥}; PairsNotDistinct if they coincide.
H2CommutantReport h2_commutant_counterexample(const Projection& p, const Projection& q, std::uint64_t seed,
                                              const ToleranceContext& ctx);

struct ExistenceReport {
    std::string rule;
    std::vector<Projection> x_list;
    ClosureReport closure;
    std::size_t lattice_size = 0;
    bool quasi_boolean = false;
    bool quasi_boolean_state_ideal = false;
    std::vector<double> weights;
    std::size_t statistics_checked = 0;
    std::size_t statistics_passed = 0;
    double max_statistics_difference = 0.0;
    std::optional<std::pair<Projection, Projection>> incompatible_pair;
    double incompatible_commutator = 0.0;
    bool pass = false;
};

/// Runs closure, quasiBoolean, measure and statistics checks for an X-form
/// rule, and exhibits two non-commuting members of d when the null block has
/// dimension at least 2. Throws PreconditionViolated for the naive rule.
ExistenceReport positive_existence_demo(const DensityState& state, Rule rule, const BubRuleInput* bub,
                                        std::size_t observable_count, std::uint64_t seed,
                                        const ToleranceContext& ctx);

}  // namespace modal
