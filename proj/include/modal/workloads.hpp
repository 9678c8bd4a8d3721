#pragma once

// Seeded test workloads over an X-form set: finite sublattices with their
// ideals, commuting observable families inside the extension, and disjoint
// projection families.

#include <vector>

#include "modal/interpretation_rules.hpp"
#include "modal/projection_lattice.hpp"
#include "modal/sampling.hpp"
#include "modal/valuation_engine.hpp"
#include "modal/xform.hpp"

namespace modal {

/// Default size cap for sublattices fed to the exhaustive homomorphism search.
inline constexpr std::size_t kSublatticeBound = 32;

/// Sublattice generated by the X family and its null block; when it fits
/// within `bound`, two non-commuting rank-one projections from the null block
/// are added as generators too.
FiniteLattice xform_sublattice(const XFormSpec& spec, Rng& rng, std::size_t bound, const ToleranceContext& ctx);

/// { P in L : P ΣX = 0 }.
IdealIndices xform_ideal(const FiniteLattice& l, const XFormSpec& spec, const ToleranceContext& ctx);
/// { P in L : PW = 0 }.
IdealIndices state_ideal(const FiniteLattice& l, const DensityState& state, const ToleranceContext& ctx);

/// Orthonormal basis adapted to the X family: the columns span each X in
/// turn, followed by a random rotation of the null block.
Operator adapted_basis(const XFormSpec& spec, Rng& rng);

/// `count` pairwise commuting self-adjoint operators in the extension of the
/// X-form set, diagonal in one adapted basis with small-integer eigenvalues
/// (so coincidences and degeneracies occur).
std::vector<Operator> commuting_family(const XFormSpec& spec, std::size_t count, Rng& rng);

/// A random nonempty subset of the distinct eigenvalues of each observable.
std::vector<std::vector<double>> random_selections(const std::vector<Operator>& family, Rng& rng,
                                                   const ToleranceContext& ctx);

/// Members of d with pairwise zero meets: each X goes to at most one member,
/// and members may also carry pieces of the null block.
std::vector<Projection> disjoint_family(const XFormSpec& spec, Rng& rng, const ToleranceContext& ctx);

/// A random member of the X-form set.
Projection random_member(const XFormSpec& spec, Rng& rng);

}  // namespace modal
