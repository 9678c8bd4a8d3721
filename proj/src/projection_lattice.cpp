#include "modal/projection_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace modal {

namespace {

void same_dim(const Projection& p, const Projection& q, const char* where) {
    if (p.dim() != q.dim()) throw Error(ErrorCode::DimensionMismatch, where);
}

}  // namespace

bool leq(const Projection& p, const Projection& q, const ToleranceContext& ctx) {
    same_dim(p, q, "leq");
    return op_norm(q.matrix() * p.matrix() - p.matrix()) <= ctx.atol;
}

bool proj_equal(const Projection& p, const Projection& q, const ToleranceContext& ctx) {
    same_dim(p, q, "proj_equal");
    const Operator diff = p.matrix() - q.matrix();
    // Frobenius bounds the operator norm from above; only borderline cases need the SVD.
    const double fro = diff.norm();
    if (fro <= ctx.atol) return true;
    if (fro > ctx.atol * std::sqrt(static_cast<double>(p.dim()))) return false;
    return op_norm(diff) <= ctx.atol;
}

Projection meet_exact(const Projection& p, const Projection& q, const ToleranceContext& ctx) {
    same_dim(p, q, "meet_exact");
    const std::size_t n = p.dim();
    // Both summands are positive semidefinite, so the kernel of the sum is ker(I-P) ∩ ker(I-Q).
    const Operator h = 2.0 * identity(n) - p.matrix() - q.matrix();
    const Eigen::MatrixXcd k = psd_kernel(h, ctx.eig_cluster_tol);
    return Projection::trusted(k * k.adjoint());
}

IterativeMeet meet_iterative(const Projection& p, const Projection& q, const ToleranceContext& ctx) {
    same_dim(p, q, "meet_iterative");
    Operator g = 0.5 * (p.matrix() * q.matrix() + q.matrix() * p.matrix());

    double contraction = 0.0;
    {
        Eigen::SelfAdjointEigenSolver<Operator> es(g);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            const double a = std::abs(es.eigenvalues()(i));
            if (a < 1.0 - ctx.eig_cluster_tol) contraction = std::max(contraction, a);
        }
    }

    IterativeMeet out{Projection::trusted(g), false, 0, contraction};
    for (int k = 1; k < ctx.max_iter; ++k) {
        Operator next = g * g;
        next = 0.5 * (next + next.adjoint().eval());
        const double step = op_norm(next - g);
        g = std::move(next);
        out.iterations = k;
        if (step <= ctx.atol) {
            out.converged = true;
            break;
        }
    }
    out.value = Projection::trusted(g);
    return out;
}

Projection meet_iterative_or_throw(const Projection& p, const Projection& q, const ToleranceContext& ctx) {
    IterativeMeet r = meet_iterative(p, q, ctx);
    if (!r.converged) {
        std::ostringstream os;
        os << "symmetric-product powers did not settle within " << ctx.max_iter
           << " squarings; contraction factor " << r.contraction;
        throw Error(ErrorCode::NoConvergence, os.str());
    }
    return r.value;
}

Projection join(const Projection& p, const Projection& q, const ToleranceContext& ctx) {
    same_dim(p, q, "join");
    return meet_exact(p.complement(), q.complement(), ctx).complement();
}

FiniteLattice::FiniteLattice(std::vector<Projection> elements, const ToleranceContext& ctx)
    : elements_(std::move(elements)) {
    const std::size_t n = elements_.size();
    if (n == 0) throw Error(ErrorCode::InvalidLattice, "empty element list");
    const std::size_t d = elements_.front().dim();
    for (const auto& e : elements_) {
        if (e.dim() != d) throw Error(ErrorCode::DimensionMismatch, "lattice elements have mixed dimensions");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (proj_equal(elements_[i], elements_[j], ctx)) {
                throw Error(ErrorCode::InvalidLattice, "duplicate elements");
            }
        }
    }

    auto locate = [&](const Projection& p, const char* what) {
        auto idx = find(p, ctx);
        if (!idx) throw Error(ErrorCode::InvalidLattice, std::string("not closed under ") + what);
        return *idx;
    };
    bottom_ = locate(Projection::zero(d), "zero");
    top_ = locate(Projection::identity(d), "identity");

    complement_.resize(n);
    for (std::size_t i = 0; i < n; ++i) complement_[i] = locate(elements_[i].complement(), "complement");

    meet_.assign(n * n, 0);
    join_.assign(n * n, 0);
    order_.assign(n * n, false);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const std::size_t m = locate(meet_exact(elements_[i], elements_[j], ctx), "meet");
            const std::size_t v = locate(modal::join(elements_[i], elements_[j], ctx), "join");
            meet_[i * n + j] = meet_[j * n + i] = m;
            join_[i * n + j] = join_[j * n + i] = v;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) order_[i * n + j] = meet_[i * n + j] == i;
}

std::optional<std::size_t> FiniteLattice::find(const Projection& p, const ToleranceContext& ctx) const {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (proj_equal(elements_[i], p, ctx)) return i;
    }
    return std::nullopt;
}

FiniteLattice generate_ortholattice(const std::vector<Projection>& generators, std::size_t cap,
                                    const ToleranceContext& ctx) {
    if (generators.empty()) throw Error(ErrorCode::PreconditionViolated, "no generators");
    const std::size_t d = generators.front().dim();
    std::vector<Projection> elems;
    auto add = [&](const Projection& p) {
        if (p.dim() != d) throw Error(ErrorCode::DimensionMismatch, "generator dimension");
        for (const auto& e : elems) {
            if (proj_equal(e, p, ctx)) return;
        }
        elems.push_back(p);
        if (elems.size() > cap) {
            std::ostringstream os;
            os << "more than " << cap << " elements generated";
            throw Error(ErrorCode::CapExceeded, os.str());
        }
    };
    add(Projection::zero(d));
    add(Projection::identity(d));
    for (const auto& g : generators) add(g);

    for (std::size_t i = 0; i < elems.size(); ++i) {
        add(elems[i].complement());
        for (std::size_t j = 0; j < i; ++j) {
            // Copies: `add` may reallocate.
            const Projection a = elems[i];
            const Projection b = elems[j];
            add(meet_exact(a, b, ctx));
            add(join(a, b, ctx));
        }
    }
    return FiniteLattice(std::move(elems), ctx);
}

bool check_orthomodular(const FiniteLattice& l) {
    for (std::size_t x = 0; x < l.size(); ++x) {
        for (std::size_t y = 0; y < l.size(); ++y) {
            if (l.leq(x, y) && l.join(x, l.meet(y, l.complement(x))) != y) return false;
        }
    }
    return true;
}

bool check_boolean(const FiniteLattice& l) {
    const std::size_t n = l.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))) return false;
    return true;
}

bool check_ortholattice_axioms(const FiniteLattice& l) {
    for (std::size_t x = 0; x < l.size(); ++x) {
        const std::size_t xc = l.complement(x);
        if (l.join(x, xc) != l.top() || l.meet(x, xc) != l.bottom() || l.complement(xc) != x) return false;
        for (std::size_t y = 0; y < l.size(); ++y) {
            if (l.leq(x, y) && !l.leq(l.complement(y), xc)) return false;
        }
    }
    return true;
}

std::vector<std::size_t> atom_indices(const FiniteLattice& l) {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < l.size(); ++x) {
        if (x == l.bottom()) continue;
        bool minimal = true;
        for (std::size_t z = 0; z < l.size() && minimal; ++z) {
            if (z != x && z != l.bottom() && l.leq(z, x)) minimal = false;
        }
        if (minimal) out.push_back(x);
    }
    return out;
}

std::vector<Projection> atoms(const FiniteLattice& l) {
    std::vector<Projection> out;
    for (std::size_t i : atom_indices(l)) out.push_back(l[i]);
    return out;
}

ChainDemoResult atomicity_demo(const std::vector<Projection>& chain, std::size_t n_terms,
                               const ToleranceContext& ctx) {
    if (chain.size() < 2) throw Error(ErrorCode::ChainNotStrict, "chain needs at least two projections");
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        if (!leq(chain[i + 1], chain[i], ctx) || proj_equal(chain[i + 1], chain[i], ctx)) {
            std::ostringstream os;
            os << "element " << i + 1 << " is not strictly below element " << i;
            throw Error(ErrorCode::ChainNotStrict, os.str());
        }
    }
    if (n_terms < 1 || n_terms > chain.size() - 1) {
        throw Error(ErrorCode::PreconditionViolated, "truncation must satisfy 1 <= N <= chain length - 1");
    }

    const std::size_t d = chain.front().dim();
    ChainDemoResult out{chain, {}, chain.back(), zeros(d), {}, 0.0, 0.0};
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        out.differences.push_back(Projection::trusted(chain[i].matrix() - chain[i + 1].matrix()));
    }

    const Operator p1_perp = chain.front().complement().matrix();
    Operator total = p1_perp + out.tail.matrix();
    for (const auto& m : out.differences) total += m.matrix();
    out.completeness_residual = op_norm(total - identity(d));

    for (std::size_t i = 0; i < out.differences.size(); ++i) {
        const Operator& mi = out.differences[i].matrix();
        out.orthogonality_residual = std::max(out.orthogonality_residual, op_norm(mi * out.tail.matrix()));
        for (std::size_t j = 0; j < i; ++j) {
            out.orthogonality_residual =
                std::max(out.orthogonality_residual, op_norm(mi * out.differences[j].matrix()));
        }
    }

    out.truncated = p1_perp;
    for (std::size_t k = 1; k <= n_terms; ++k) {
        out.truncated += std::exp(-static_cast<double>(k)) * out.differences[k - 1].matrix();
    }
    out.spectrum = spectral_resolution(out.truncated, ctx);
    return out;
}

}  // namespace modal
