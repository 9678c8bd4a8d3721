#include "doctest.h"

#include <cmath>

#include "modal/error.hpp"
#include "modal/interpretation_rules.hpp"
#include "modal/operator_algebra.hpp"
#include "modal/sampling.hpp"
#include "modal/xform.hpp"
#include "oracles.hpp"

using namespace modal;

namespace {

const ToleranceContext ctx;

Vector vec(std::initializer_list<Complex> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (auto x : xs) v(i++) = x;
    return v;
}

OperatorSet set_of(std::vector<Operator> ops) { return OperatorSet::make(std::move(ops), ctx); }

Operator nilpotent() {
    Operator n(2, 2);
    n << 0, 1, 0, 0;
    return n;
}

}  // namespace

TEST_CASE("OperatorSet flags self-adjoint sets") {
    CHECK(set_of({pauli_x(), pauli_z()}).self_adjoint_set);
    CHECK_FALSE(set_of({nilpotent()}).self_adjoint_set);
    CHECK(set_of({nilpotent(), nilpotent().adjoint()}).self_adjoint_set);
    CHECK_THROWS_AS(set_of({identity(2), identity(3)}), Error);
}

TEST_CASE("commutant examples") {
    const auto c1 = commutant(set_of({identity(2)}), ctx);
    CHECK(c1.size() == 4);
    CHECK(c1.contains_identity());

    const auto cz = commutant(set_of({pauli_z()}), ctx);
    CHECK(cz.size() == oracle::commutant_dim({pauli_z()}));
    CHECK(cz.size() == 2);
    CHECK(cz.contains(diag({3, -1}), ctx));
    CHECK_FALSE(cz.contains(pauli_x(), ctx));

    const auto cxz = commutant(set_of({pauli_x(), pauli_z()}), ctx);
    CHECK(cxz.size() == oracle::commutant_dim({pauli_x(), pauli_z()}));
    CHECK(cxz.size() == 1);
    CHECK(cxz.contains_identity());
}

TEST_CASE("double_commutant examples") {
    CHECK(double_commutant(set_of({identity(2)}), ctx).size() == 1);
    CHECK(double_commutant(set_of({pauli_z()}), ctx).size() == 2);
    CHECK(double_commutant(set_of({pauli_x(), pauli_z()}), ctx).size() == 4);
}

TEST_CASE("commutant dimension agrees with an LU oracle on random sets") {
    Rng rng(21);
    for (int k = 0; k < 30; ++k) {
        const auto n = static_cast<std::size_t>(rng.integer(2, 5));
        std::vector<Operator> ops;
        const int m = rng.integer(1, 3);
        for (int i = 0; i < m; ++i) {
            // Block-structured generators so commutants are nontrivial.
            const auto r = static_cast<std::size_t>(rng.integer(1, static_cast<int>(n)));
            ops.push_back(random_projection(n, r, rng).matrix());
        }
        CHECK(commutant(set_of(ops), ctx).size() == oracle::commutant_dim(ops));
    }
}

TEST_CASE("commutant mismatch raises DimensionMismatch") {
    try {
        OperatorSet s;
        s.elements = {identity(2), identity(3)};
        commutant(s, ctx);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
}

TEST_CASE("span utilities") {
    const auto diag_span = OperatorSpan::from_operators({identity(2), pauli_z()}, 2, ctx);
    CHECK(diag_span.size() == 2);
    CHECK(diag_span.contains_identity());
    const auto full = OperatorSpan::from_operators({identity(2), pauli_x(), pauli_y(), pauli_z()}, 2, ctx);
    CHECK(span_contains(full, diag_span, ctx));
    CHECK_FALSE(span_contains(diag_span, full, ctx));
    CHECK(span_equal(span_intersection(full, diag_span, ctx), diag_span, ctx));
    const auto xs = OperatorSpan::from_operators({pauli_x()}, 2, ctx);
    CHECK(span_intersection(xs, diag_span, ctx).size() == 0);
    // Dependent input collapses.
    CHECK(OperatorSpan::from_operators({pauli_x(), 2.0 * pauli_x()}, 2, ctx).size() == 1);
    CHECK(diag_span.residual(pauli_x()) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("is_von_neumann_algebra examples") {
    CHECK(is_von_neumann_algebra(OperatorSpan::from_operators({identity(2), pauli_z()}, 2, ctx), ctx));
    CHECK(is_von_neumann_algebra(
        OperatorSpan::from_operators({identity(2), pauli_x(), pauli_y(), pauli_z()}, 2, ctx), ctx));
    CHECK_FALSE(is_von_neumann_algebra(OperatorSpan::from_operators({identity(2), nilpotent()}, 2, ctx), ctx));
    // Missing identity.
    CHECK_FALSE(is_von_neumann_algebra(OperatorSpan::from_operators({diag({1, 0})}, 2, ctx), ctx));
    // Adjoint closed but not product closed.
    CHECK_FALSE(is_von_neumann_algebra(OperatorSpan::from_operators({identity(2), pauli_x(), pauli_z()}, 2, ctx), ctx));
}

TEST_CASE("generate_star_algebra produces von Neumann algebras") {
    Rng rng(5);
    for (int k = 0; k < 10; ++k) {
        const auto n = static_cast<std::size_t>(rng.integer(2, 4));
        const auto a = generate_star_algebra({random_projection(n, 1, rng).matrix()}, n, ctx);
        CHECK(a.size() == 2);
        CHECK(is_von_neumann_algebra(a, ctx));
        const auto b = generate_star_algebra({random_matrix(n, rng)}, n, ctx);
        CHECK(b.size() == n * n);  // a generic matrix generates everything
        CHECK(is_von_neumann_algebra(b, ctx));
    }
    // Block-diagonal generator: the algebra stays block diagonal.
    Operator g = zeros(3);
    g.topLeftCorner(2, 2) = pauli_x() + 0.3 * pauli_z();
    g(2, 2) = 5;
    const auto a = generate_star_algebra({g}, 3, ctx);
    CHECK(a.size() == 3);
    CHECK(is_von_neumann_algebra(a, ctx));
}

TEST_CASE("self_adjoint_part_contains examples") {
    const auto a = OperatorSpan::from_operators({identity(2), pauli_z()}, 2, ctx);
    CHECK(self_adjoint_part_contains(a, pauli_z(), ctx));
    CHECK_FALSE(self_adjoint_part_contains(a, pauli_x(), ctx));
    CHECK(self_adjoint_part_contains(a, 3.0 * identity(2) + 2.0 * pauli_z(), ctx));
    CHECK_THROWS_AS(self_adjoint_part_contains(a, nilpotent(), ctx), Error);
}

TEST_CASE("restriction_membership examples") {
    const auto diag_alg = OperatorSpan::from_operators({diag({1, 0}), diag({0, 1})}, 2, ctx);
    CHECK(restriction_membership(diag_alg, Projection::trusted(diag({1, 0})), ctx));
    CHECK_FALSE(restriction_membership(diag_alg, rank_one(vec({1, 1})), ctx));
    const auto scalars = OperatorSpan::from_operators({identity(2)}, 2, ctx);
    CHECK(restriction_membership(scalars, Projection::identity(2), ctx));
}

TEST_CASE("extension_membership examples") {
    Rng rng(1);
    CHECK(extension_membership(DefiniteSetPredicate::full_lattice(3), random_hermitian(3, rng), ctx));
    const XFormSpec spec(3, {Projection::trusted(diag({1, 0, 0})), Projection::trusted(diag({0, 1, 0}))}, ctx);
    const auto d = DefiniteSetPredicate::x_form(spec);
    CHECK(extension_membership(d, diag({2, 3, 5}), ctx));
    // Q with eigenvector (1,1,0)/sqrt2.
    const Operator q = 4.0 * rank_one(vec({1, 1, 0})).matrix() + diag({0, 0, 1});
    CHECK_FALSE(extension_membership(d, q, ctx));
    CHECK_THROWS_AS(extension_membership(d, Operator(Operator::Identity(3, 3) * Complex(0, 1)), ctx), Error);
}

TEST_CASE("DefiniteSetPredicate kinds") {
    CHECK(DefiniteSetPredicate::full_lattice(2).kind() == "full-lattice");
    const XFormSpec spec(3, {Projection::trusted(diag({1, 1, 0}))}, ctx);
    CHECK(DefiniteSetPredicate::x_form(spec).kind() == "x-form");
    const auto alg = OperatorSpan::from_operators({identity(2), pauli_z()}, 2, ctx);
    CHECK(DefiniteSetPredicate::algebra_restriction(alg, ctx).kind() == "algebra-restriction");
    CHECK_THROWS_AS(DefiniteSetPredicate::algebra_restriction(
                        OperatorSpan::from_operators({identity(2), nilpotent()}, 2, ctx), ctx),
                    Error);
    CHECK(DefiniteSetPredicate::explicit_set({Projection::zero(2), Projection::identity(2)}).kind() == "explicit");
}

TEST_CASE("star_closure_check examples") {
    SUBCASE("x-form set with a degenerate member passes") {
        const XFormSpec spec(3, {Projection::trusted(diag({1, 1, 0}))}, ctx);
        const ClosureReport r = star_closure_check(DefiniteSetPredicate::x_form(spec), 200, 1, ctx);
        CHECK(r.pass);
        CHECK(r.samples == 200);
        CHECK(r.agreements == 200);
        CHECK(r.members_sampled > 0);
        CHECK(r.members_sampled < 200);
        CHECK(r.double_commutant_matches);
        CHECK_FALSE(r.witness);
    }
    SUBCASE("full lattice passes with the trivial family") {
        const ClosureReport r = star_closure_check(DefiniteSetPredicate::full_lattice(2), 200, 2, ctx);
        CHECK(r.pass);
        CHECK(r.commutant_dim == 4);
    }
    SUBCASE("two orthogonal pairs in dimension two fail with a witness") {
        const Projection p = Projection::trusted(diag({1, 0}));
        const Projection q = rank_one(vec({1, 1}));
        const auto d = DefiniteSetPredicate::explicit_set(
            {Projection::zero(2), p, p.complement(), q, q.complement(), Projection::identity(2)});
        const ClosureReport r = star_closure_check(d, 200, 3, ctx);
        CHECK_FALSE(r.pass);
        REQUIRE(r.witness);
        CHECK_FALSE(d.contains(*r.witness, ctx));
        CHECK(r.double_commutant_dim == 4);
    }
    SUBCASE("algebra restriction passes") {
        const auto alg = generate_star_algebra({diag({1, 1, 0, 0}), diag({1, 0, 0, 0})}, 4, ctx);
        const ClosureReport r = star_closure_check(DefiniteSetPredicate::algebra_restriction(alg, ctx), 100, 4, ctx);
        CHECK(r.pass);
    }
}

TEST_CASE("closure check is deterministic in the seed") {
    const XFormSpec spec(4, {Projection::trusted(diag({1, 0, 0, 0})), Projection::trusted(diag({0, 1, 1, 0}))}, ctx);
    const auto d = DefiniteSetPredicate::x_form(spec);
    const ClosureReport a = star_closure_check(d, 80, 99, ctx);
    const ClosureReport b = star_closure_check(d, 80, 99, ctx);
    CHECK(a.members_sampled == b.members_sampled);
    CHECK(a.detail == b.detail);
}

TEST_CASE("commutant invariants on random self-adjoint sets") {
    Rng rng(11);
    for (int k = 0; k < 15; ++k) {
        const auto n = static_cast<std::size_t>(rng.integer(2, 4));
        std::vector<Operator> gens{random_projection(n, 1, rng).matrix(), random_projection(n, 1, rng).matrix()};
        const auto s = set_of(gens);
        const auto c = commutant(s, ctx);
        const auto cc = commutant(c, ctx);
        const auto ccc = commutant(cc, ctx);
        for (const auto& g : gens) CHECK(cc.contains(g, ctx));
        CHECK(span_equal(c, ccc, ctx));
        for (const auto& t : c.basis()) CHECK(c.contains(t.adjoint(), ctx));
    }
}

TEST_CASE("restriction then extension recovers the self-adjoint part") {
    Rng rng(12);
    const auto alg = generate_star_algebra({diag({1, 1, 0}), rank_one(vec({1, 1, 0})).matrix()}, 3, ctx);
    REQUIRE(is_von_neumann_algebra(alg, ctx));
    const auto d = DefiniteSetPredicate::algebra_restriction(alg, ctx);
    for (int k = 0; k < 20; ++k) {
        Operator h = zeros(3);
        for (std::size_t i = 0; i < alg.size(); ++i) h += rng.normal() * alg.basis_element(i);
        h = (0.5 * (h + h.adjoint())).eval();
        CHECK(extension_membership(d, h, ctx) == self_adjoint_part_contains(alg, h, ctx));
        const Operator outside = random_hermitian(3, rng);
        CHECK(extension_membership(d, outside, ctx) == self_adjoint_part_contains(alg, outside, ctx));
    }
}
