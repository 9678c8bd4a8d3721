#pragma once

// Commutants, double commutants and von Neumann algebra membership for
// finite-dimensional operator sets, plus the restriction/extension maps that
// move between self-adjoint operator sets and projection sets.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "modal/matrix_core.hpp"
#include "modal/xform.hpp"

namespace modal {

struct OperatorSet {
    std::vector<Operator> elements;
    bool self_adjoint_set = false;

    /// Validates uniform dimension and computes the self-adjoint-set flag.
    static OperatorSet make(std::vector<Operator> elements, const ToleranceContext& ctx);
    static OperatorSet make(const std::vector<Projection>& projections, const ToleranceContext& ctx);
    std::size_t dim() const;
};

/// Linear subspace of n x n operators, stored as an orthonormal basis of
/// vectorized (column-major) matrices under the Frobenius inner product.
class OperatorSpan {
public:
    /// Orthonormalizes `ops`; rank is decided at atol relative to the largest singular value.
    static OperatorSpan from_operators(const std::vector<Operator>& ops, std::size_t dim,
                                       const ToleranceContext& ctx);
    /// Wraps columns that are already orthonormal.
    static OperatorSpan from_orthonormal_columns(std::size_t dim, Eigen::MatrixXcd columns,
                                                 const ToleranceContext& ctx);

    std::size_t dim() const noexcept { return dim_; }
    /// Dimension of the subspace.
    std::size_t size() const noexcept { return static_cast<std::size_t>(columns_.cols()); }
    bool contains_identity() const noexcept { return contains_identity_; }
    const Eigen::MatrixXcd& columns() const noexcept { return columns_; }

    std::vector<Operator> basis() const;
    Operator basis_element(std::size_t k) const;
    /// Frobenius distance from `a` to the span.
    double residual(const Operator& a) const;
    bool contains(const Operator& a, const ToleranceContext& ctx) const;

private:
    OperatorSpan(std::size_t dim, Eigen::MatrixXcd columns, const ToleranceContext& ctx);

    std::size_t dim_ = 0;
    Eigen::MatrixXcd columns_;
    bool contains_identity_ = false;
};

bool span_contains(const OperatorSpan& outer, const OperatorSpan& inner, const ToleranceContext& ctx);
bool span_equal(const OperatorSpan& a, const OperatorSpan& b, const ToleranceContext& ctx);
OperatorSpan span_intersection(const OperatorSpan& a, const OperatorSpan& b, const ToleranceContext& ctx);

OperatorSpan commutant(const OperatorSet& s, const ToleranceContext& ctx);
OperatorSpan commutant(const OperatorSpan& a, const ToleranceContext& ctx);
OperatorSpan double_commutant(const OperatorSet& s, const ToleranceContext& ctx);

/// Smallest subspace containing I and the generators that is closed under
/// products and adjoints (iterated to a fixpoint within the span).
OperatorSpan generate_star_algebra(const std::vector<Operator>& generators, std::size_t dim,
                                   const ToleranceContext& ctx);

bool is_von_neumann_algebra(const OperatorSpan& a, const ToleranceContext& ctx);
bool self_adjoint_part_contains(const OperatorSpan& a, const Operator& q, const ToleranceContext& ctx);
bool restriction_membership(const OperatorSpan& a, const Projection& p, const ToleranceContext& ctx);

/// A set of definite-valued projections, represented by a membership test.
struct FullLattice {
    std::size_t dim;
};
struct AlgebraRestriction {
    OperatorSpan algebra;  // a verified von Neumann algebra
};
struct ExplicitProjectionSet {
    std::vector<Projection> elements;
};

class DefiniteSetPredicate {
public:
    using Carrier = std::variant<FullLattice, XFormSpec, AlgebraRestriction, ExplicitProjectionSet>;

    static DefiniteSetPredicate full_lattice(std::size_t dim);
    static DefiniteSetPredicate x_form(XFormSpec spec);
    /// Throws PreconditionViolated unless `algebra` is a von Neumann algebra.
    static DefiniteSetPredicate algebra_restriction(OperatorSpan algebra, const ToleranceContext& ctx);
    static DefiniteSetPredicate explicit_set(std::vector<Projection> elements);

    std::size_t dim() const;
    std::string kind() const;
    const Carrier& carrier() const noexcept { return carrier_; }
    bool contains(const Projection& p, const ToleranceContext& ctx) const;

private:
    explicit DefiniteSetPredicate(Carrier c) : carrier_(std::move(c)) {}
    Carrier carrier_;
};

/// True iff every spectral projector of the self-adjoint operator `q` lies in d.
bool extension_membership(const DefiniteSetPredicate& d, const Operator& q, const ToleranceContext& ctx);

struct ClosureReport {
    bool pass = false;
    std::string kind;
    std::size_t samples = 0;
    std::size_t agreements = 0;
    std::size_t members_sampled = 0;      // samples that were in d
    std::size_t generator_count = 0;      // size of the finite generating family for P
    std::size_t commutant_dim = 0;        // dim span(P')
    std::size_t double_commutant_dim = 0; // dim span(d'')
    bool double_commutant_matches = false;
    std::optional<Projection> witness;    // a projection on which the two predicates disagree
    bool witness_in_d = false;
    std::string detail;
};

/// Checks that d coincides with the projections of P' for the finitely generated
/// family P built from d, comparing the two membership tests on sample_budget
/// seeded projections, and that span(d'') matches P'.
ClosureReport star_closure_check(const DefiniteSetPredicate& d, std::size_t sample_budget,
                                 std::uint64_t seed, const ToleranceContext& ctx);

}  // namespace modal
