#include "modal/workloads.hpp"

#include <algorithm>

namespace modal {

FiniteLattice xform_sublattice(const XFormSpec& spec, Rng& rng, std::size_t bound, const ToleranceContext& ctx) {
    std::vector<Projection> gens = spec.members();
    const Projection nb = spec.null_block();
    if (!nb.is_zero(ctx)) gens.push_back(nb);
    if (gens.empty()) gens.push_back(Projection::identity(spec.dim()));

    if (nb.rank() >= 2) {
        std::vector<Projection> richer = gens;
        richer.push_back(random_subprojection(nb, 1, rng));
        richer.push_back(random_subprojection(nb, 1, rng));
        try {
            FiniteLattice l = generate_ortholattice(richer, bound, ctx);
            return l;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::CapExceeded) throw;
        }
    }
    return generate_ortholattice(gens, std::max<std::size_t>(bound, kDefaultLatticeCap), ctx);
}

IdealIndices xform_ideal(const FiniteLattice& l, const XFormSpec& spec, const ToleranceContext& ctx) {
    const Operator s = spec.support().matrix();
    IdealIndices out;
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (op_norm(l[i].matrix() * s) <= ctx.atol) out.push_back(i);
    }
    return out;
}

IdealIndices state_ideal(const FiniteLattice& l, const DensityState& state, const ToleranceContext& ctx) {
    IdealIndices out;
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (op_norm(l[i].matrix() * state.matrix()) <= ctx.atol) out.push_back(i);
    }
    return out;
}

Operator adapted_basis(const XFormSpec& spec, Rng& rng) {
    const auto n = static_cast<Eigen::Index>(spec.dim());
    Operator u(n, n);
    Eigen::Index col = 0;
    for (const auto& x : spec.members()) {
        const Eigen::MatrixXcd b = range_basis(x);
        u.middleCols(col, b.cols()) = b;
        col += b.cols();
    }
    const Eigen::MatrixXcd nb = range_basis(spec.null_block());
    if (nb.cols() > 0) {
        u.middleCols(col, nb.cols()) = nb * random_unitary(static_cast<std::size_t>(nb.cols()), rng);
        col += nb.cols();
    }
    return u.leftCols(col);
}

std::vector<Operator> commuting_family(const XFormSpec& spec, std::size_t count, Rng& rng) {
    const Operator u = adapted_basis(spec, rng);
    std::vector<Eigen::Index> block_of;  // member index per column, -1 for the null block
    for (std::size_t k = 0; k < spec.size(); ++k) {
        block_of.insert(block_of.end(), spec.members()[k].rank(), static_cast<Eigen::Index>(k));
    }
    block_of.resize(static_cast<std::size_t>(u.cols()), -1);

    std::vector<Operator> out;
    out.reserve(count);
    for (std::size_t c = 0; c < count; ++c) {
        std::vector<double> block_value(spec.size());
        for (auto& v : block_value) v = rng.integer(-2, 3);
        Eigen::VectorXd d(u.cols());
        for (Eigen::Index i = 0; i < u.cols(); ++i) {
            const Eigen::Index b = block_of[static_cast<std::size_t>(i)];
            d(i) = b >= 0 ? block_value[static_cast<std::size_t>(b)] : rng.integer(-2, 3);
        }
        Operator a = u * d.cast<Complex>().asDiagonal() * u.adjoint();
        out.push_back(0.5 * (a + a.adjoint()));
    }
    return out;
}

std::vector<std::vector<double>> random_selections(const std::vector<Operator>& family, Rng& rng,
                                                   const ToleranceContext& ctx) {
    std::vector<std::vector<double>> out;
    for (const auto& a : family) {
        const SpectralResolution sr = spectral_resolution(a, ctx);
        std::vector<double> pick;
        for (double e : sr.eigenvalues) {
            if (rng.coin()) pick.push_back(e);
        }
        if (pick.empty()) pick.push_back(sr.eigenvalues[static_cast<std::size_t>(rng.integer(0, static_cast<int>(sr.size()) - 1))]);
        out.push_back(std::move(pick));
    }
    return out;
}

std::vector<Projection> disjoint_family(const XFormSpec& spec, Rng& rng, const ToleranceContext& ctx) {
    const std::size_t groups = static_cast<std::size_t>(rng.integer(1, static_cast<int>(std::max<std::size_t>(spec.size(), 1))));
    std::vector<Operator> parts(groups, zeros(spec.dim()));
    for (const auto& x : spec.members()) {
        const int g = rng.integer(-1, static_cast<int>(groups) - 1);  // -1 leaves X out
        if (g >= 0) parts[static_cast<std::size_t>(g)] += x.matrix();
    }
    // Null-block pieces: mutually orthogonal slices of a rotated basis.
    const Eigen::MatrixXcd nb = range_basis(spec.null_block());
    if (nb.cols() > 0) {
        const Eigen::MatrixXcd rotated = nb * random_unitary(static_cast<std::size_t>(nb.cols()), rng);
        for (Eigen::Index c = 0; c < rotated.cols(); ++c) {
            const int g = rng.integer(-1, static_cast<int>(groups) - 1);
            if (g >= 0) parts[static_cast<std::size_t>(g)] += rotated.col(c) * rotated.col(c).adjoint();
        }
    }
    std::vector<Projection> out;
    for (const auto& p : parts) {
        Projection proj = Projection::trusted(p);
        if (!proj.is_zero(ctx)) out.push_back(std::move(proj));
    }
    if (out.empty()) out.push_back(spec.members().front());
    return out;
}

Projection random_member(const XFormSpec& spec, Rng& rng) {
    Operator p = zeros(spec.dim());
    for (const auto& x : spec.members()) {
        if (rng.coin()) p += x.matrix();
    }
    const Projection nb = spec.null_block();
    if (nb.rank() > 0) {
        const auto k = static_cast<std::size_t>(rng.integer(0, static_cast<int>(nb.rank())));
        p += random_subprojection(nb, k, rng).matrix();
    }
    return Projection::trusted(p);
}

}  // namespace modal
