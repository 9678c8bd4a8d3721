#include "doctest.h"

#include <cmath>

#include "modal/error.hpp"
#include "modal/nogo_demos.hpp"

using namespace modal;

namespace {

const ToleranceContext ctx;

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a modal::Error");
    return ErrorCode::ValidationError;
}

Projection ray(double x, double y) {
    Vector v(2);
    v << x, y;
    return rank_one(v.normalized());
}

}  // namespace

TEST_CASE("spin demo: no sign assignment is linear") {
    const auto r = von_neumann_spin_demo(ctx);
    CHECK(r.assignments.size() == 8);
    CHECK(std::abs(r.min_residual - (std::sqrt(2.0) - 1.0)) <= 1e-12);
    for (const auto& a : r.assignments) {
        const double want = std::abs(a.c - (a.a + a.b) / std::sqrt(2.0));
        CHECK(std::abs(a.residual - want) <= 1e-12);
        CHECK(a.residual >= r.min_residual - 1e-15);
    }
    REQUIRE(r.diagonal_spectrum.size() == 2);
    CHECK(r.spectrum_error <= 1e-10);
    CHECK(op_norm(r.diagonal - (pauli_x() + pauli_y()) / std::sqrt(2.0)) <= 1e-15);
    CHECK(op_norm(r.diagonal * r.diagonal - identity(2)) <= 1e-12);
}

TEST_CASE("h2 obstruction for incompatible rays") {
    for (double angle : {0.3, 0.7854, 1.2}) {
        const auto r = h2_quasiboolean_obstruction(ray(1, 0), ray(std::cos(angle), std::sin(angle)), ctx);
        CHECK(r.obstruction_confirmed);
        CHECK(r.lattice_size == 6);
        CHECK(r.homomorphism_count == 0);
        CHECK(r.candidates_disjoint);
        CHECK(r.ideals_checked == 5);
        CHECK(r.quasi_boolean_ideals == 0);
    }
    CHECK(code_of([&] { h2_quasiboolean_obstruction(ray(1, 0), ray(1, 0), ctx); }) == ErrorCode::PreconditionViolated);
    CHECK(code_of([&] { h2_quasiboolean_obstruction(ray(1, 0), ray(0, 1), ctx); }) == ErrorCode::PreconditionViolated);
    CHECK(code_of([&] {
              h2_quasiboolean_obstruction(Projection::identity(2), ray(1, 1), ctx);
          }) == ErrorCode::PreconditionViolated);
}

TEST_CASE("h2 commutant counterexample") {
    const auto r = h2_commutant_counterexample(ray(1, 0), ray(1, 1), 5, ctx);
    CHECK(r.lattice_size == 6);
    CHECK(r.double_commutant_dim == 4);
    CHECK(r.counterexample_confirmed);
    CHECK_FALSE(r.witness_in_d);
    CHECK(r.witness_in_restriction);
    CHECK(r.witness.rank() == 1);
    CHECK_FALSE(r.closure.pass);

    // The default witness is the ray through (1, 2).
    const Projection w = ray(1, 2);
    CHECK(op_norm(r.witness.matrix() - w.matrix()) <= 1e-12);

    CHECK(code_of([&] { h2_commutant_counterexample(ray(1, 0), ray(0, 1), 5, ctx); }) == ErrorCode::PairsNotDistinct);
    CHECK(code_of([&] { h2_commutant_counterexample(ray(1, 1), ray(1, 1), 5, ctx); }) == ErrorCode::PairsNotDistinct);
}

TEST_CASE("positive existence for X-form rules") {
    const auto st4 = DensityState::make(diag({0.6, 0.4, 0.0, 0.0}), ctx);
    const auto r = positive_existence_demo(st4, Rule::Clifton, nullptr, 20, 1, ctx);
    CHECK(r.pass);
    CHECK(r.closure.pass);
    CHECK(r.quasi_boolean);
    CHECK(r.quasi_boolean_state_ideal);
    REQUIRE(r.weights.size() == 2);
    CHECK(r.weights[0] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(r.statistics_checked == 3 * 20);
    CHECK(r.statistics_passed == r.statistics_checked);
    CHECK(r.max_statistics_difference <= 1e-9);
    REQUIRE(r.incompatible_pair.has_value());
    const Operator& a = r.incompatible_pair->first.matrix();
    const Operator& b = r.incompatible_pair->second.matrix();
    CHECK(op_norm(a * b - b * a) > 1e-3);
    CHECK(r.incompatible_commutator == doctest::Approx(op_norm(a * b - b * a)).epsilon(1e-9));

    Vector psi(3);
    psi << 0.6, Complex(0, 0.8), 0;
    const auto pure = DensityState::make(rank_one(psi).matrix(), ctx);
    const auto ro = positive_existence_demo(pure, Rule::Orthodox, nullptr, 10, 2, ctx);
    CHECK(ro.pass);
    CHECK(ro.x_list.size() == 1);
    REQUIRE(ro.incompatible_pair.has_value());

    // No room for an incompatible pair when the null block is one-dimensional.
    const auto st2 = DensityState::make(diag({0.7, 0.3}), ctx);
    const auto r2 = positive_existence_demo(st2, Rule::KochenDieks, nullptr, 10, 3, ctx);
    CHECK(r2.pass);
    CHECK_FALSE(r2.incompatible_pair.has_value());

    BubRuleInput bub{psi, diag({1, 2, 3})};
    const auto rb = positive_existence_demo(pure, Rule::Bub, &bub, 10, 4, ctx);
    CHECK(rb.pass);
    CHECK(rb.x_list.size() == 2);

    CHECK(code_of([&] { positive_existence_demo(st2, Rule::Naive, nullptr, 10, 3, ctx); }) ==
          ErrorCode::PreconditionViolated);
}

TEST_CASE("demos are deterministic for a fixed seed") {
    const auto st = DensityState::make(diag({0.5, 0.3, 0.2, 0.0, 0.0}), ctx);
    const auto a = positive_existence_demo(st, Rule::Clifton, nullptr, 15, 42, ctx);
    const auto b = positive_existence_demo(st, Rule::Clifton, nullptr, 15, 42, ctx);
    CHECK(a.max_statistics_difference == b.max_statistics_difference);
    CHECK(a.incompatible_commutator == b.incompatible_commutator);
    CHECK(a.lattice_size == b.lattice_size);
}
