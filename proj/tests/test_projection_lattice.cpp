#include "doctest.h"

#include <cmath>

#include "modal/error.hpp"
#include "modal/projection_lattice.hpp"
#include "modal/sampling.hpp"
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

Projection P(std::initializer_list<double> d) { return Projection::trusted(diag(d)); }

Projection at_angle(double theta) { return rank_one(vec({std::cos(theta), std::sin(theta)})); }

FiniteLattice two_pairs() {
    return generate_ortholattice({P({1, 0}), at_angle(M_PI / 4)}, kDefaultLatticeCap, ctx);
}

}  // namespace

TEST_CASE("leq examples") {
    CHECK(leq(Projection::zero(3), P({1, 0, 1}), ctx));
    CHECK(leq(P({1, 0, 0}), P({1, 1, 0}), ctx));
    CHECK_FALSE(leq(at_angle(M_PI / 4), P({1, 0}), ctx));
    CHECK_THROWS_AS(leq(P({1, 0}), P({1, 0, 0}), ctx), Error);
}

TEST_CASE("meet_exact examples") {
    const Projection p = P({1, 1, 0});
    CHECK(proj_equal(meet_exact(p, p, ctx), p, ctx));
    CHECK(meet_exact(p, p.complement(), ctx).is_zero(ctx));
    const Projection m = meet_exact(P({1, 0}), at_angle(0.3), ctx);
    CHECK(m.is_zero(ctx));
    CHECK(op_norm(m.matrix() - oracle::meet(diag({1, 0}), at_angle(0.3).matrix())) <= ctx.atol);
}

TEST_CASE("meet_exact agrees with the LU intersection oracle") {
    Rng rng(31);
    for (int k = 0; k < 60; ++k) {
        const auto n = static_cast<std::size_t>(rng.integer(2, 6));
        // Share a planted common subspace so meets are frequently nonzero.
        const Operator u = random_unitary(n, rng);
        const auto common = static_cast<std::size_t>(rng.integer(0, static_cast<int>(n) - 1));
        auto build = [&](std::size_t extra) {
            std::vector<Vector> vs;
            for (std::size_t i = 0; i < common; ++i) vs.push_back(u.col(static_cast<Eigen::Index>(i)));
            for (std::size_t i = 0; i < extra; ++i) vs.push_back(random_unit_vector(n, rng));
            return projection_onto_span(vs, n, ctx);
        };
        const Projection p = build(static_cast<std::size_t>(rng.integer(0, 1)));
        const Projection q = build(static_cast<std::size_t>(rng.integer(0, 1)));
        const Projection m = meet_exact(p, q, ctx);
        CHECK(is_projection(m.matrix(), ctx));
        CHECK(op_norm(m.matrix() - oracle::meet(p.matrix(), q.matrix())) <= 1e-8);
    }
}

TEST_CASE("meet_iterative examples") {
    SUBCASE("commuting pair converges to the product") {
        const Projection p = P({1, 1, 0}), q = P({0, 1, 1});
        const IterativeMeet r = meet_iterative(p, q, ctx);
        CHECK(r.converged);
        CHECK(op_norm(r.value.matrix() - p.matrix() * q.matrix()) <= ctx.atol);
    }
    SUBCASE("45 degree rank-one pair contracts to zero") {
        const IterativeMeet r = meet_iterative(P({1, 0}), at_angle(M_PI / 4), ctx);
        CHECK(r.converged);
        CHECK(r.value.is_zero(ctx));
        // On span{p, q} the symmetric product has eigenvalues c(c ± 1)/2 with c = cos θ.
        const double c = std::cos(M_PI / 4);
        CHECK(r.contraction == doctest::Approx(c * (c + 1) / 2).epsilon(1e-9));
    }
    SUBCASE("P with itself is immediate") {
        const Projection p = at_angle(0.7);
        const IterativeMeet r = meet_iterative(p, p, ctx);
        CHECK(r.converged);
        CHECK(r.iterations <= 1);
        CHECK(proj_equal(r.value, p, ctx));
    }
    SUBCASE("nearly parallel pair exceeds a tiny iteration cap") {
        ToleranceContext tight = ctx;
        tight.max_iter = 2;
        const IterativeMeet r = meet_iterative(P({1, 0}), at_angle(1e-3), tight);
        CHECK_FALSE(r.converged);
        CHECK(r.contraction > 0.99);
        try {
            meet_iterative_or_throw(P({1, 0}), at_angle(1e-3), tight);
            FAIL("expected NoConvergence");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NoConvergence);
            CHECK(std::string(e.what()).find("contraction") != std::string::npos);
        }
    }
}

TEST_CASE("meet_iterative agrees with meet_exact on random pairs") {
    Rng rng(32);
    for (int k = 0; k < 80; ++k) {
        const auto n = static_cast<std::size_t>(rng.integer(2, 5));
        const Projection p = random_projection(n, static_cast<std::size_t>(rng.integer(0, static_cast<int>(n))), rng);
        const Projection q = k % 2 ? random_projection(n, static_cast<std::size_t>(rng.integer(0, static_cast<int>(n))), rng)
                                   : Projection::trusted(p.matrix() * random_projection(n, n, rng).matrix());
        const IterativeMeet r = meet_iterative(p, q, ctx);
        REQUIRE(r.converged);
        CHECK(op_norm(r.value.matrix() - meet_exact(p, q, ctx).matrix()) <= 10 * ctx.atol);
    }
}

TEST_CASE("join examples and de Morgan") {
    const Projection p = P({1, 0, 0});
    CHECK(proj_equal(join(p, Projection::zero(3), ctx), p, ctx));
    CHECK(proj_equal(join(p, p.complement(), ctx), Projection::identity(3), ctx));
    const Projection j = join(P({1, 0, 0}), P({0, 0, 1}), ctx);
    CHECK(op_norm(j.matrix() - diag({1, 0, 1})) <= ctx.atol);
    CHECK(j.rank() == 2);

    Rng rng(33);
    for (int k = 0; k < 30; ++k) {
        const auto n = static_cast<std::size_t>(rng.integer(2, 5));
        const Projection a = random_projection(n, static_cast<std::size_t>(rng.integer(0, static_cast<int>(n))), rng);
        const Projection b = random_projection(n, static_cast<std::size_t>(rng.integer(0, static_cast<int>(n))), rng);
        const Projection m = meet_exact(a, b, ctx);
        const Projection dm = join(a.complement(), b.complement(), ctx).complement();
        CHECK(op_norm(m.matrix() - dm.matrix()) <= 10 * ctx.atol);
        CHECK(is_projection(join(a, b, ctx).matrix(), ctx));
        // Span oracle for the join rank: rank(a) + rank(b) - rank(a ∧ b).
        CHECK(join(a, b, ctx).rank() == a.rank() + b.rank() - m.rank());
    }
}

TEST_CASE("antisymmetry of the order") {
    Rng rng(34);
    for (int k = 0; k < 20; ++k) {
        const Projection a = random_projection(4, 2, rng);
        const Projection b = Projection::trusted(a.matrix());
        CHECK(leq(a, b, ctx));
        CHECK(leq(b, a, ctx));
        CHECK(op_norm(a.matrix() - b.matrix()) <= 10 * ctx.atol);
    }
}

TEST_CASE("generate_ortholattice examples") {
    CHECK(generate_ortholattice({P({1, 0})}, 16, ctx).size() == 4);
    const FiniteLattice h2 = two_pairs();
    CHECK(h2.size() == 6);
    CHECK(generate_ortholattice({P({1, 0, 0}), P({0, 1, 0})}, 16, ctx).size() == 8);
    CHECK(generate_ortholattice({Projection::identity(2)}, 16, ctx).size() == 2);
    // Generic projections in dimension 3 generate more than a small cap allows.
    Rng rng(35);
    try {
        generate_ortholattice({random_projection(3, 1, rng), random_projection(3, 2, rng), random_projection(3, 1, rng)}, 10, ctx);
        FAIL("expected CapExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CapExceeded);
    }
}

TEST_CASE("FiniteLattice rejects non-closed element lists") {
    try {
        FiniteLattice({Projection::zero(2), P({1, 0}), Projection::identity(2)}, ctx);
        FAIL("expected InvalidLattice");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidLattice);
    }
    CHECK_THROWS_AS(FiniteLattice({P({1, 0}), P({1, 0}), P({0, 1}), Projection::zero(2), Projection::identity(2)}, ctx),
                    Error);
}

TEST_CASE("structural checks") {
    const FiniteLattice h2 = two_pairs();
    CHECK(check_orthomodular(h2));
    CHECK_FALSE(check_boolean(h2));
    CHECK(check_ortholattice_axioms(h2));

    const FiniteLattice b8 = generate_ortholattice({P({1, 0, 0}), P({0, 1, 0})}, 16, ctx);
    CHECK(check_boolean(b8));
    CHECK(check_orthomodular(b8));
    CHECK(check_ortholattice_axioms(b8));

    const FiniteLattice trivial = generate_ortholattice({Projection::identity(2)}, 4, ctx);
    CHECK(check_boolean(trivial));
}

TEST_CASE("atoms examples") {
    const auto a4 = atoms(generate_ortholattice({P({1, 0})}, 8, ctx));
    REQUIRE(a4.size() == 2);
    const auto a6 = atoms(two_pairs());
    CHECK(a6.size() == 4);
    for (const auto& a : a6) CHECK(a.rank() == 1);
    const FiniteLattice l3({Projection::zero(3), Projection::identity(3)}, ctx);
    const auto at = atoms(l3);
    REQUIRE(at.size() == 1);
    CHECK(proj_equal(at.front(), Projection::identity(3), ctx));
}

TEST_CASE("every element is the join of the atoms below it") {
    Rng rng(36);
    std::vector<FiniteLattice> lattices{two_pairs(), generate_ortholattice({P({1, 0, 0, 0}), P({0, 1, 1, 0})}, 64, ctx)};
    const Projection nb = P({0, 0, 1, 1});
    lattices.push_back(generate_ortholattice({P({1, 0, 0, 0}), random_subprojection(nb, 1, rng), random_subprojection(nb, 1, rng)}, 64, ctx));
    for (const auto& l : lattices) {
        const auto at = atom_indices(l);
        for (std::size_t x = 0; x < l.size(); ++x) {
            std::size_t acc = l.bottom();
            for (std::size_t a : at)
                if (l.leq(a, x)) acc = l.join(acc, a);
            CHECK(acc == x);
        }
    }
}

TEST_CASE("operation tables match the operator results") {
    const FiniteLattice l = two_pairs();
    for (std::size_t i = 0; i < l.size(); ++i) {
        CHECK(proj_equal(l[l.complement(i)], l[i].complement(), ctx));
        for (std::size_t j = 0; j < l.size(); ++j) {
            CHECK(proj_equal(l[l.meet(i, j)], meet_exact(l[i], l[j], ctx), ctx));
            CHECK(proj_equal(l[l.join(i, j)], join(l[i], l[j], ctx), ctx));
            CHECK(l.leq(i, j) == leq(l[i], l[j], ctx));
        }
    }
}

TEST_CASE("atomicity_demo examples") {
    SUBCASE("three-step chain in dimension four") {
        const ChainDemoResult r = atomicity_demo({P({1, 1, 1, 0}), P({1, 1, 0, 0}), P({1, 0, 0, 0})}, 2, ctx);
        CHECK(r.completeness_residual <= 1e-10);
        CHECK(r.orthogonality_residual <= 1e-10);
        // Q_2 = diag(e^-1, e^-2, 0, 1) by direct construction.
        CHECK(op_norm(r.truncated - diag({0, std::exp(-2.0), std::exp(-1.0), 1})) <= 1e-10);
        REQUIRE(r.spectrum.size() == 4);
        CHECK(r.spectrum.eigenvalues[0] == doctest::Approx(1.0));
        CHECK(r.spectrum.eigenvalues[1] == doctest::Approx(std::exp(-1.0)));
        CHECK(r.spectrum.eigenvalues[2] == doctest::Approx(std::exp(-2.0)));
        CHECK(std::abs(r.spectrum.eigenvalues[3]) <= 1e-10);  // P∞ = diag(1,0,0,0) is nonzero
        for (const auto& p : r.spectrum.projectors) CHECK(p.rank() == 1);
    }
    SUBCASE("chain of length two") {
        const ChainDemoResult r = atomicity_demo({P({1, 1, 0}), P({1, 0, 0})}, 1, ctx);
        REQUIRE(r.spectrum.size() == 3);
        CHECK(r.spectrum.eigenvalues[0] == doctest::Approx(1.0));
        CHECK(r.spectrum.eigenvalues[1] == doctest::Approx(std::exp(-1.0)));
        CHECK(std::abs(r.spectrum.eigenvalues[2]) <= 1e-10);
    }
    SUBCASE("chain ending in zero has no zero eigenvalue when P1 is the identity") {
        const ChainDemoResult r = atomicity_demo({Projection::identity(2), P({1, 0}), Projection::zero(2)}, 2, ctx);
        REQUIRE(r.spectrum.size() == 2);
        CHECK(r.spectrum.eigenvalues[0] == doctest::Approx(std::exp(-1.0)));
        CHECK(r.spectrum.eigenvalues[1] == doctest::Approx(std::exp(-2.0)));
    }
    SUBCASE("non-strict chains are rejected") {
        try {
            atomicity_demo({P({1, 0}), P({1, 0})}, 1, ctx);
            FAIL("expected ChainNotStrict");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ChainNotStrict);
        }
        CHECK_THROWS_AS(atomicity_demo({P({1, 0})}, 1, ctx), Error);
        CHECK_THROWS_AS(atomicity_demo({P({1, 0}), P({0, 1})}, 1, ctx), Error);
        CHECK_THROWS_AS(atomicity_demo({P({1, 1}), P({1, 0})}, 0, ctx), Error);
    }
}
