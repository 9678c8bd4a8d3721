#include "modal/nogo_demos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "modal/workloads.hpp"

namespace modal {

SpinDemoResult von_neumann_spin_demo(const ToleranceContext& ctx) {
    SpinDemoResult r;
    r.sigma_x = pauli_x();
    r.sigma_y = pauli_y();
    const double root2 = std::sqrt(2.0);
    r.diagonal = (r.sigma_x + r.sigma_y) / root2;

    r.min_residual = std::numeric_limits<double>::infinity();
    for (int a : {1, -1}) {
        for (int b : {1, -1}) {
            for (int c : {1, -1}) {
                const double residual = std::abs(c - (a + b) / root2);
                r.assignments.push_back({a, b, c, residual});
                r.min_residual = std::min(r.min_residual, residual);
            }
        }
    }

    const SpectralResolution sr = spectral_resolution(r.diagonal, ctx);
    r.diagonal_spectrum = sr.eigenvalues;
    if (sr.size() != 2) {
        r.spectrum_error = std::numeric_limits<double>::infinity();
    } else {
        r.spectrum_error = std::max(std::abs(sr.eigenvalues[0] - 1.0), std::abs(sr.eigenvalues[1] + 1.0));
    }
    return r;
}

namespace {

void require_h2_rank_one(const Projection& p, const char* name) {
    if (p.dim() != 2) throw Error(ErrorCode::PreconditionViolated, std::string(name) + " must act on a 2-dimensional space");
    if (p.rank() != 1) throw Error(ErrorCode::PreconditionViolated, std::string(name) + " must be rank one");
}

}  // namespace

H2ObstructionReport h2_quasiboolean_obstruction(const Projection& p, const Projection& q, const ToleranceContext& ctx) {
    require_h2_rank_one(p, "P");
    require_h2_rank_one(q, "Q");
    if (op_norm(p.matrix() - q.matrix()) <= ctx.atol) throw Error(ErrorCode::PreconditionViolated, "P and Q are parallel");
    if (op_norm(p.matrix() * q.matrix()) <= ctx.atol) throw Error(ErrorCode::PreconditionViolated, "P and Q are orthogonal");

    H2ObstructionReport r;
    const FiniteLattice l = generate_ortholattice({p, q}, kDefaultLatticeCap, ctx);
    r.lattice_size = l.size();

    const auto resolves = [&](std::size_t a, const Projection& y) {
        return leq(l[a], y, ctx) || leq(l[a], y.complement(), ctx);
    };
    for (std::size_t a : atom_indices(l)) {
        if (resolves(a, p)) r.candidates_p.push_back(a);
        if (resolves(a, q)) r.candidates_q.push_back(a);
    }
    r.candidates_disjoint = std::none_of(r.candidates_p.begin(), r.candidates_p.end(), [&](std::size_t a) {
        return std::find(r.candidates_q.begin(), r.candidates_q.end(), a) != r.candidates_q.end();
    });
    // In dimension 2 a rank-one atom below P or P⊥ must be P or P⊥ itself.
    const bool p_candidates_exact = r.candidates_p.size() == 2 && l.find(p, ctx) && l.find(p.complement(), ctx);
    const bool q_candidates_exact = r.candidates_q.size() == 2 && l.find(q, ctx) && l.find(q.complement(), ctx);

    r.homomorphism_count = enumerate_homomorphisms(l).size();
    for (const auto& ideal : all_ideals(l)) {
        ++r.ideals_checked;
        if (check_quasiboolean(l, ideal).quasi_boolean) ++r.quasi_boolean_ideals;
    }

    r.obstruction_confirmed = r.candidates_disjoint && p_candidates_exact && q_candidates_exact &&
                              r.homomorphism_count == 0 && r.quasi_boolean_ideals == 0;
    std::ostringstream os;
    os << r.lattice_size << "-element lattice; atoms resolving P: " << r.candidates_p.size()
       << ", resolving Q: " << r.candidates_q.size() << (r.candidates_disjoint ? " (disjoint)" : " (overlap)")
       << "; homomorphisms: " << r.homomorphism_count << "; quasiBoolean ideals: " << r.quasi_boolean_ideals
       << "/" << r.ideals_checked;
    r.detail = os.str();
    return r;
}

H2CommutantReport h2_commutant_counterexample(const Projection& p, const Projection& q, std::uint64_t seed,
                                              const ToleranceContext& ctx) {
    require_h2_rank_one(p, "P");
    require_h2_rank_one(q, "Q");
    if (op_norm(p.matrix() - q.matrix()) <= ctx.atol || op_norm(p.matrix() * q.matrix()) <= ctx.atol) {
        throw Error(ErrorCode::PairsNotDistinct, "the two orthogonal pairs coincide");
    }

    H2CommutantReport r;
    const FiniteLattice l = generate_ortholattice({p, q}, kDefaultLatticeCap, ctx);
    r.lattice_size = l.size();
    const auto d = DefiniteSetPredicate::explicit_set(l.elements());
    const OperatorSpan dd = double_commutant(OperatorSet::make(l.elements(), ctx), ctx);
    r.double_commutant_dim = dd.size();

    Vector candidates[] = {Vector(2), Vector(2), Vector(2)};
    candidates[0] << 1.0, 2.0;
    candidates[1] << 2.0, 1.0;
    candidates[2] << 1.0, Complex(0.0, 1.0);
    for (const auto& v : candidates) {
        const Projection w = rank_one(v);
        if (!d.contains(w, ctx)) {
            r.witness = w;
            break;
        }
    }
    r.witness_in_d = d.contains(r.witness, ctx);
    r.witness_in_restriction = restriction_membership(dd, r.witness, ctx);
    r.closure = star_closure_check(d, 200, seed, ctx);
    r.counterexample_confirmed = r.double_commutant_dim == 4 && !r.witness_in_d && r.witness_in_restriction &&
                                 !r.closure.pass;
    return r;
}

ExistenceReport positive_existence_demo(const DensityState& state, Rule rule, const BubRuleInput* bub,
                                        std::size_t observable_count, std::uint64_t seed,
                                        const ToleranceContext& ctx) {
    if (rule == Rule::Naive) throw Error(ErrorCode::PreconditionViolated, "the naive set is not of X-form");
    const DefiniteSetPredicate d = definite_set(rule, state, bub, ctx);
    const XFormSpec& spec = std::get<XFormSpec>(d.carrier());

    ExistenceReport r;
    r.rule = std::string(to_string(rule));
    r.x_list = spec.members();
    r.closure = star_closure_check(d, 200, seed, ctx);

    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const FiniteLattice l = xform_sublattice(spec, rng, kSublatticeBound, ctx);
    r.lattice_size = l.size();
    const std::size_t bound = std::max(kExhaustiveBound, l.size());
    r.quasi_boolean = check_quasiboolean(l, xform_ideal(l, spec, ctx), bound).quasi_boolean;
    r.quasi_boolean_state_ideal = check_quasiboolean(l, state_ideal(l, state, ctx), bound).quasi_boolean;

    const StatisticsMeasure mu = build_measure(spec, state, ctx);
    r.weights = mu.weights();
    for (std::size_t f = 0; f < observable_count; ++f) {
        const std::vector<Operator> family = commuting_family(spec, 3, rng);
        const auto selections = random_selections(family, rng, ctx);
        for (std::size_t arity = 1; arity <= family.size(); ++arity) {
            const std::vector<Operator> sub(family.begin(), family.begin() + static_cast<std::ptrdiff_t>(arity));
            const std::vector<std::vector<double>> sel(selections.begin(),
                                                       selections.begin() + static_cast<std::ptrdiff_t>(arity));
            const StatisticsReport s = verify_statistics(mu, sub, sel, ctx);
            ++r.statistics_checked;
            if (s.pass) ++r.statistics_passed;
            r.max_statistics_difference = std::max(r.max_statistics_difference, s.difference);
        }
    }

    bool exhibit_ok = true;
    const Eigen::MatrixXcd nb = range_basis(spec.null_block());
    if (nb.cols() >= 2) {
        const Projection a = rank_one(nb.col(0));
        const Projection b = rank_one((nb.col(0) + nb.col(1)) / std::sqrt(2.0));
        r.incompatible_commutator = op_norm(a.matrix() * b.matrix() - b.matrix() * a.matrix());
        exhibit_ok = xform_membership(spec, a, ctx) && xform_membership(spec, b, ctx) &&
                     r.incompatible_commutator > ctx.atol;
        r.incompatible_pair = std::make_pair(a, b);
    }

    r.pass = r.closure.pass && r.quasi_boolean && r.quasi_boolean_state_ideal &&
             r.statistics_passed == r.statistics_checked && exhibit_ok;
    return r;
}

}  // namespace modal
