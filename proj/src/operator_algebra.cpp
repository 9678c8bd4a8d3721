#include "modal/operator_algebra.hpp"

#include <algorithm>
#include <sstream>

#include "modal/sampling.hpp"

namespace modal {

namespace {

Eigen::VectorXcd vectorize(const Operator& a) {
    return Eigen::Map<const Eigen::VectorXcd>(a.data(), a.size());
}

Operator unvectorize(const Eigen::VectorXcd& v, std::size_t n) {
    const auto k = static_cast<Eigen::Index>(n);
    return Eigen::Map<const Operator>(v.data(), k, k);
}

// Orthonormal basis of the column span, rank decided relative to the largest singular value.
Eigen::MatrixXcd orthonormal_range(const Eigen::MatrixXcd& m, double atol) {
    if (m.cols() == 0) return Eigen::MatrixXcd(m.rows(), 0);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU);
    const Eigen::VectorXd& s = svd.singularValues();
    const double cutoff = atol * std::max(1.0, s.size() ? s(0) : 0.0);
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > cutoff) ++r;
    return svd.matrixU().leftCols(r);
}

double scaled_tol(const Operator& a, const ToleranceContext& ctx) {
    return ctx.atol * std::max(1.0, a.norm());
}

}  // namespace

OperatorSet OperatorSet::make(std::vector<Operator> elements, const ToleranceContext& ctx) {
    if (elements.empty()) throw Error(ErrorCode::PreconditionViolated, "operator set is empty");
    const Eigen::Index n = elements.front().rows();
    for (const auto& e : elements) {
        if (e.rows() != n || e.cols() != n) throw Error(ErrorCode::DimensionMismatch, "operator set has mixed dimensions");
    }
    OperatorSet s{std::move(elements), true};
    for (const auto& e : s.elements) {
        const Operator ea = e.adjoint();
        const bool found = std::any_of(s.elements.begin(), s.elements.end(), [&](const Operator& f) {
            return op_norm(f - ea) <= ctx.atol;
        });
        if (!found) {
            s.self_adjoint_set = false;
            break;
        }
    }
    return s;
}

OperatorSet OperatorSet::make(const std::vector<Projection>& projections, const ToleranceContext& ctx) {
    std::vector<Operator> ops;
    ops.reserve(projections.size());
    for (const auto& p : projections) ops.push_back(p.matrix());
    return make(std::move(ops), ctx);
}

std::size_t OperatorSet::dim() const { return static_cast<std::size_t>(elements.front().rows()); }

OperatorSpan::OperatorSpan(std::size_t dim, Eigen::MatrixXcd columns, const ToleranceContext& ctx)
    : dim_(dim), columns_(std::move(columns)) {
    contains_identity_ = contains(identity(dim_), ctx);
}

OperatorSpan OperatorSpan::from_operators(const std::vector<Operator>& ops, std::size_t dim,
                                          const ToleranceContext& ctx) {
    const auto n2 = static_cast<Eigen::Index>(dim * dim);
    Eigen::MatrixXcd stacked(n2, static_cast<Eigen::Index>(ops.size()));
    for (std::size_t j = 0; j < ops.size(); ++j) {
        if (static_cast<std::size_t>(ops[j].rows()) != dim || static_cast<std::size_t>(ops[j].cols()) != dim) {
            throw Error(ErrorCode::DimensionMismatch, "span element has wrong dimension");
        }
        stacked.col(static_cast<Eigen::Index>(j)) = vectorize(ops[j]);
    }
    return OperatorSpan(dim, orthonormal_range(stacked, ctx.atol), ctx);
}

OperatorSpan OperatorSpan::from_orthonormal_columns(std::size_t dim, Eigen::MatrixXcd columns,
                                                    const ToleranceContext& ctx) {
    return OperatorSpan(dim, std::move(columns), ctx);
}

std::vector<Operator> OperatorSpan::basis() const {
    std::vector<Operator> out;
    out.reserve(size());
    for (std::size_t k = 0; k < size(); ++k) out.push_back(basis_element(k));
    return out;
}

Operator OperatorSpan::basis_element(std::size_t k) const {
    return unvectorize(columns_.col(static_cast<Eigen::Index>(k)), dim_);
}

double OperatorSpan::residual(const Operator& a) const {
    const Eigen::VectorXcd v = vectorize(a);
    if (columns_.cols() == 0) return v.norm();
    return (v - columns_ * (columns_.adjoint() * v)).norm();
}

bool OperatorSpan::contains(const Operator& a, const ToleranceContext& ctx) const {
    if (static_cast<std::size_t>(a.rows()) != dim_ || a.rows() != a.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "span membership");
    }
    return residual(a) <= scaled_tol(a, ctx);
}

bool span_contains(const OperatorSpan& outer, const OperatorSpan& inner, const ToleranceContext& ctx) {
    if (outer.dim() != inner.dim()) throw Error(ErrorCode::DimensionMismatch, "span_contains");
    for (std::size_t k = 0; k < inner.size(); ++k) {
        if (!outer.contains(inner.basis_element(k), ctx)) return false;
    }
    return true;
}

bool span_equal(const OperatorSpan& a, const OperatorSpan& b, const ToleranceContext& ctx) {
    return a.size() == b.size() && span_contains(a, b, ctx) && span_contains(b, a, ctx);
}

OperatorSpan span_intersection(const OperatorSpan& a, const OperatorSpan& b, const ToleranceContext& ctx) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "span_intersection");
    const auto n2 = static_cast<Eigen::Index>(a.dim() * a.dim());
    // Kernel of (I - Pa) + (I - Pb) on the vectorized space is span(a) ∩ span(b).
    const Eigen::MatrixXcd h = 2.0 * Eigen::MatrixXcd::Identity(n2, n2) -
                               a.columns() * a.columns().adjoint() - b.columns() * b.columns().adjoint();
    return OperatorSpan::from_orthonormal_columns(a.dim(), psd_kernel(h, ctx.eig_cluster_tol), ctx);
}

namespace {

OperatorSpan commutant_of(const std::vector<Operator>& gens, std::size_t n, const ToleranceContext& ctx) {
    const auto k = static_cast<Eigen::Index>(n);
    const auto n2 = k * k;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(k, k);
    // vec(TB - BT) = (B^T ⊗ I - I ⊗ B) vec(T) for column-major vec.
    Eigen::MatrixXcd system(n2 * static_cast<Eigen::Index>(gens.size()), n2);
    for (std::size_t g = 0; g < gens.size(); ++g) {
        const Operator& b = gens[g];
        Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(n2, n2);
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = 0; j < k; ++j) {
                block.block(i * k, j * k, k, k) += b(j, i) * id;
            }
            block.block(i * k, i * k, k, k) -= b;
        }
        system.middleRows(n2 * static_cast<Eigen::Index>(g), n2) = block;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(system, Eigen::ComputeFullV);
    const Eigen::VectorXd& s = svd.singularValues();
    const double cutoff = ctx.atol * std::max(1.0, s.size() ? s(0) : 0.0);
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > cutoff) ++r;
    return OperatorSpan::from_orthonormal_columns(n, svd.matrixV().rightCols(n2 - r), ctx);
}

}  // namespace

OperatorSpan commutant(const OperatorSet& s, const ToleranceContext& ctx) {
    if (s.elements.empty()) throw Error(ErrorCode::PreconditionViolated, "commutant of an empty set");
    const std::size_t n = s.dim();
    for (const auto& e : s.elements) {
        if (static_cast<std::size_t>(e.rows()) != n || e.rows() != e.cols()) {
            throw Error(ErrorCode::DimensionMismatch, "commutant: mixed dimensions");
        }
    }
    return commutant_of(s.elements, n, ctx);
}

OperatorSpan commutant(const OperatorSpan& a, const ToleranceContext& ctx) {
    std::vector<Operator> gens = a.basis();
    if (gens.empty()) gens.push_back(zeros(a.dim()));
    return commutant_of(gens, a.dim(), ctx);
}

OperatorSpan double_commutant(const OperatorSet& s, const ToleranceContext& ctx) {
    return commutant(commutant(s, ctx), ctx);
}

OperatorSpan generate_star_algebra(const std::vector<Operator>& generators, std::size_t dim,
                                   const ToleranceContext& ctx) {
    std::vector<Operator> seed{identity(dim)};
    for (const auto& g : generators) {
        seed.push_back(g);
        seed.push_back(g.adjoint());
    }
    OperatorSpan span = OperatorSpan::from_operators(seed, dim, ctx);
    for (;;) {
        const std::vector<Operator> basis = span.basis();
        std::vector<Operator> grown = basis;
        for (const auto& x : basis) {
            grown.push_back(x.adjoint());
            for (const auto& y : basis) grown.push_back(x * y);
        }
        OperatorSpan next = OperatorSpan::from_operators(grown, dim, ctx);
        if (next.size() == span.size()) return next;
        span = std::move(next);
    }
}

bool is_von_neumann_algebra(const OperatorSpan& a, const ToleranceContext& ctx) {
    if (!a.contains_identity()) return false;
    const std::vector<Operator> basis = a.basis();
    for (const auto& x : basis) {
        if (!a.contains(x.adjoint(), ctx)) return false;
    }
    for (const auto& x : basis) {
        for (const auto& y : basis) {
            if (!a.contains(x * y, ctx)) return false;
        }
    }
    return span_equal(a, commutant(commutant(a, ctx), ctx), ctx);
}

bool self_adjoint_part_contains(const OperatorSpan& a, const Operator& q, const ToleranceContext& ctx) {
    if (!is_self_adjoint(q, ctx)) throw Error(ErrorCode::NotSelfAdjoint, "self_adjoint_part_contains");
    return a.contains(q, ctx);
}

bool restriction_membership(const OperatorSpan& a, const Projection& p, const ToleranceContext& ctx) {
    return a.contains(p.matrix(), ctx);
}

DefiniteSetPredicate DefiniteSetPredicate::full_lattice(std::size_t dim) {
    return DefiniteSetPredicate(FullLattice{dim});
}

DefiniteSetPredicate DefiniteSetPredicate::x_form(XFormSpec spec) {
    return DefiniteSetPredicate(std::move(spec));
}

DefiniteSetPredicate DefiniteSetPredicate::algebra_restriction(OperatorSpan algebra, const ToleranceContext& ctx) {
    if (!is_von_neumann_algebra(algebra, ctx)) {
        throw Error(ErrorCode::PreconditionViolated, "restriction carrier is not a von Neumann algebra");
    }
    return DefiniteSetPredicate(AlgebraRestriction{std::move(algebra)});
}

DefiniteSetPredicate DefiniteSetPredicate::explicit_set(std::vector<Projection> elements) {
    if (elements.empty()) throw Error(ErrorCode::PreconditionViolated, "explicit projection set is empty");
    return DefiniteSetPredicate(ExplicitProjectionSet{std::move(elements)});
}

std::size_t DefiniteSetPredicate::dim() const {
    return std::visit(
        [](const auto& c) -> std::size_t {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, FullLattice>) return c.dim;
            else if constexpr (std::is_same_v<T, XFormSpec>) return c.dim();
            else if constexpr (std::is_same_v<T, AlgebraRestriction>) return c.algebra.dim();
            else return c.elements.front().dim();
        },
        carrier_);
}

std::string DefiniteSetPredicate::kind() const {
    switch (carrier_.index()) {
        case 0: return "full-lattice";
        case 1: return "x-form";
        case 2: return "algebra-restriction";
        default: return "explicit";
    }
}

bool DefiniteSetPredicate::contains(const Projection& p, const ToleranceContext& ctx) const {
    if (p.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "definite-set membership");
    return std::visit(
        [&](const auto& c) -> bool {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, FullLattice>) {
                return is_projection(p.matrix(), ctx);
            } else if constexpr (std::is_same_v<T, XFormSpec>) {
                return xform_membership(c, p, ctx);
            } else if constexpr (std::is_same_v<T, AlgebraRestriction>) {
                return restriction_membership(c.algebra, p, ctx);
            } else {
                return std::any_of(c.elements.begin(), c.elements.end(), [&](const Projection& e) {
                    return op_norm(e.matrix() - p.matrix()) <= ctx.atol;
                });
            }
        },
        carrier_);
}

bool extension_membership(const DefiniteSetPredicate& d, const Operator& q, const ToleranceContext& ctx) {
    if (!is_self_adjoint(q, ctx)) throw Error(ErrorCode::NotSelfAdjoint, "extension_membership");
    const SpectralResolution sr = spectral_resolution(q, ctx);
    return std::all_of(sr.projectors.begin(), sr.projectors.end(),
                       [&](const Projection& p) { return d.contains(p, ctx); });
}

namespace {

std::vector<Operator> matrices_of(const std::vector<Projection>& ps) {
    std::vector<Operator> out;
    out.reserve(ps.size());
    for (const auto& p : ps) out.push_back(p.matrix());
    return out;
}

void append_family(std::vector<Operator>& out, const Projection& block, const ToleranceContext& ctx) {
    if (block.is_zero(ctx)) return;
    for (const auto& p : spanning_rank_one_family(block)) out.push_back(p.matrix());
}

// Finite family whose commutant equals that of the (generally infinite) P.
std::vector<Operator> p_family(const DefiniteSetPredicate& d, const ToleranceContext& ctx) {
    const std::size_t n = d.dim();
    return std::visit(
        [&](const auto& c) -> std::vector<Operator> {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, FullLattice>) {
                return {zeros(n), identity(n)};
            } else if constexpr (std::is_same_v<T, XFormSpec>) {
                // P = { P : XP = P for some X }; its span is the direct sum of B(ran X).
                std::vector<Operator> out;
                for (const auto& x : c.members()) {
                    out.push_back(x.matrix());
                    append_family(out, x, ctx);
                }
                return out;
            } else if constexpr (std::is_same_v<T, AlgebraRestriction>) {
                return commutant(c.algebra, ctx).basis();
            } else {
                return commutant(OperatorSet::make(c.elements, ctx), ctx).basis();
            }
        },
        d.carrier());
}

// Finite family generating d as a von Neumann algebra.
std::vector<Operator> d_generators(const DefiniteSetPredicate& d, const ToleranceContext& ctx) {
    const std::size_t n = d.dim();
    return std::visit(
        [&](const auto& c) -> std::vector<Operator> {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, FullLattice>) {
                std::vector<Operator> out;
                append_family(out, Projection::identity(n), ctx);
                return out;
            } else if constexpr (std::is_same_v<T, XFormSpec>) {
                std::vector<Operator> out = matrices_of(c.members());
                append_family(out, c.null_block(), ctx);
                if (out.empty()) out.push_back(identity(n));
                return out;
            } else if constexpr (std::is_same_v<T, AlgebraRestriction>) {
                return c.algebra.basis();
            } else {
                return matrices_of(c.elements);
            }
        },
        d.carrier());
}

Projection sample_in_algebra(const OperatorSpan& a, Rng& rng, const ToleranceContext& ctx) {
    Operator h = zeros(a.dim());
    for (std::size_t k = 0; k < a.size(); ++k) h += rng.complex_normal() * a.basis_element(k);
    h = 0.5 * (h + h.adjoint().eval());
    const SpectralResolution sr = spectral_resolution(h, ctx);
    Operator p = zeros(a.dim());
    for (const auto& proj : sr.projectors) {
        if (rng.coin()) p += proj.matrix();
    }
    return Projection::trusted(p);
}

Projection sample_member(const DefiniteSetPredicate& d, Rng& rng,
                         const ToleranceContext& ctx) {
    const std::size_t n = d.dim();
    return std::visit(
        [&](const auto& c) -> Projection {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, FullLattice>) {
                return random_projection(n, static_cast<std::size_t>(rng.integer(0, static_cast<int>(n))), rng);
            } else if constexpr (std::is_same_v<T, XFormSpec>) {
                Operator p = zeros(n);
                for (const auto& x : c.members()) {
                    if (rng.coin()) p += x.matrix();
                }
                const Projection nb = c.null_block();
                const std::size_t r = nb.rank();
                if (r > 0) {
                    const auto k = static_cast<std::size_t>(rng.integer(0, static_cast<int>(r)));
                    p += random_subprojection(nb, k, rng).matrix();
                }
                return Projection::trusted(p);
            } else if constexpr (std::is_same_v<T, AlgebraRestriction>) {
                return sample_in_algebra(c.algebra, rng, ctx);
            } else {
                return c.elements[static_cast<std::size_t>(rng.integer(0, static_cast<int>(c.elements.size()) - 1))];
            }
        },
        d.carrier());
}

Projection sample_near_miss(const DefiniteSetPredicate& d, Rng& rng) {
    const std::size_t n = d.dim();
    if (const auto* spec = std::get_if<XFormSpec>(&d.carrier())) {
        for (const auto& x : spec->members()) {
            const std::size_t r = x.rank();
            if (r >= 2) {
                const auto k = static_cast<std::size_t>(rng.integer(1, static_cast<int>(r) - 1));
                return random_subprojection(x, k, rng);
            }
        }
    }
    return random_projection(n, 1, rng);
}

}  // namespace

ClosureReport star_closure_check(const DefiniteSetPredicate& d, std::size_t sample_budget,
                                 std::uint64_t seed, const ToleranceContext& ctx) {
    ClosureReport report;
    report.kind = d.kind();
    const std::size_t n = d.dim();

    const std::vector<Operator> family = p_family(d, ctx);
    report.generator_count = family.size();
    const OperatorSpan p_comm = commutant(OperatorSet::make(family, ctx), ctx);
    report.commutant_dim = p_comm.size();

    const OperatorSpan dd = double_commutant(OperatorSet::make(d_generators(d, ctx), ctx), ctx);
    report.double_commutant_dim = dd.size();
    report.double_commutant_matches = span_equal(dd, p_comm, ctx);

    Rng rng(seed);
    for (std::size_t i = 0; i < sample_budget; ++i) {
        Projection s = [&]() -> Projection {
            switch (i % 4) {
                case 0: return random_projection(n, static_cast<std::size_t>(rng.integer(0, static_cast<int>(n))), rng);
                case 1: return sample_in_algebra(p_comm, rng, ctx);
                case 2: return sample_member(d, rng, ctx);
                default: return sample_near_miss(d, rng);
            }
        }();
        const bool in_d = d.contains(s, ctx);
        const bool in_restriction = restriction_membership(p_comm, s, ctx);
        ++report.samples;
        if (in_d) ++report.members_sampled;
        if (in_d == in_restriction) {
            ++report.agreements;
        } else if (!report.witness) {
            report.witness = s;
            report.witness_in_d = in_d;
        }
    }

    report.pass = report.agreements == report.samples && report.double_commutant_matches;
    std::ostringstream os;
    os << report.kind << ": " << report.agreements << "/" << report.samples
       << " samples agree; dim P' = " << report.commutant_dim << ", dim d'' = " << report.double_commutant_dim
       << (report.double_commutant_matches ? " (equal)" : " (differ)");
    if (report.witness) {
        os << "; witness lies in " << (report.witness_in_d ? "d but not P'" : "restriction(P') but not d");
    }
    report.detail = os.str();
    return report;
}

}  // namespace modal
