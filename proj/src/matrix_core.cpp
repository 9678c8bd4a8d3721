#include "modal/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace modal {

void ToleranceContext::validate() const {
    if (!(atol > 0.0) || !(eig_cluster_tol > 0.0) || max_iter < 1) {
        std::ostringstream os;
        os << "tolerances must be positive (atol=" << atol << ", eig_cluster_tol="
           << eig_cluster_tol << ", max_iter=" << max_iter << ")";
        throw Error(ErrorCode::ValidationError, os.str());
    }
}

double op_norm(const Operator& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Operator> svd(a);
    return svd.singularValues()(0);
}

Operator identity(std::size_t n) {
    return Operator::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

Operator zeros(std::size_t n) {
    return Operator::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

Operator adjoint(const Operator& a) { return a.adjoint(); }

bool is_self_adjoint(const Operator& a, const ToleranceContext& ctx) {
    if (a.rows() != a.cols()) return false;
    return op_norm(a - a.adjoint()) <= ctx.atol;
}

bool is_projection(const Operator& a, const ToleranceContext& ctx) {
    if (a.rows() != a.cols() || !a.allFinite()) return false;
    return is_self_adjoint(a, ctx) && op_norm(a * a - a) <= ctx.atol;
}

namespace {
Operator hermitian_part(const Operator& a) { return 0.5 * (a + a.adjoint()); }
}  // namespace

Projection::Projection(const Operator& m, const ToleranceContext& ctx) {
    if (!is_projection(m, ctx)) {
        throw Error(ErrorCode::NotProjection, "matrix is not a self-adjoint idempotent");
    }
    m_ = hermitian_part(m);
}

Projection Projection::zero(std::size_t n) { return Projection(zeros(n)); }
Projection Projection::identity(std::size_t n) { return Projection(modal::identity(n)); }
Projection Projection::trusted(const Operator& m) { return Projection(hermitian_part(m)); }

std::size_t Projection::rank() const {
    return static_cast<std::size_t>(std::lround(m_.trace().real()));
}

Projection Projection::complement() const { return Projection(modal::identity(dim()) - m_); }

bool Projection::is_zero(const ToleranceContext& ctx) const { return op_norm(m_) <= ctx.atol; }

Operator SpectralResolution::reconstruct() const {
    if (projectors.empty()) return Operator{};
    Operator out = zeros(projectors.front().dim());
    for (std::size_t i = 0; i < size(); ++i) out += eigenvalues[i] * projectors[i].matrix();
    return out;
}

SpectralResolution spectral_resolution(const Operator& a, const ToleranceContext& ctx) {
    if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "operator is not square");
    if (!is_self_adjoint(a, ctx)) {
        throw Error(ErrorCode::NotSelfAdjoint, "spectral resolution requires a self-adjoint operator");
    }
    Eigen::SelfAdjointEigenSolver<Operator> es(hermitian_part(a));
    const Eigen::VectorXd& vals = es.eigenvalues();  // ascending
    const Operator& vecs = es.eigenvectors();
    const Eigen::Index n = vals.size();

    SpectralResolution out;
    // Walk from the top so clusters come out in descending order.
    Eigen::Index hi = n - 1;
    while (hi >= 0) {
        Eigen::Index lo = hi;
        while (lo > 0 && vals(lo) - vals(lo - 1) <= ctx.eig_cluster_tol) --lo;
        const Eigen::Index count = hi - lo + 1;
        const auto block = vecs.middleCols(lo, count);
        out.eigenvalues.push_back(vals.segment(lo, count).mean());
        out.projectors.push_back(Projection::trusted(block * block.adjoint()));
        hi = lo - 1;
    }
    return out;
}

Eigen::MatrixXcd psd_kernel(const Operator& h, double threshold) {
    Eigen::SelfAdjointEigenSolver<Operator> es(hermitian_part(h));
    const Eigen::VectorXd& vals = es.eigenvalues();
    Eigen::Index k = 0;
    while (k < vals.size() && vals(k) <= threshold) ++k;
    return es.eigenvectors().leftCols(k);
}

Projection projection_onto_span(const std::vector<Vector>& vectors, std::size_t n,
                                const ToleranceContext& ctx) {
    if (vectors.empty()) return Projection::zero(n);
    Eigen::MatrixXcd stacked(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (static_cast<std::size_t>(vectors[j].size()) != n) {
            throw Error(ErrorCode::DimensionMismatch, "span vectors have inconsistent length");
        }
        stacked.col(static_cast<Eigen::Index>(j)) = vectors[j];
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeThinU);
    const Eigen::VectorXd& s = svd.singularValues();
    const double cutoff = ctx.atol * std::max(1.0, s.size() ? s(0) : 0.0);
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > cutoff) ++r;
    const auto u = svd.matrixU().leftCols(r);
    return Projection::trusted(u * u.adjoint());
}

Projection projection_onto_span(const std::vector<Vector>& vectors, const ToleranceContext& ctx) {
    if (vectors.empty()) throw Error(ErrorCode::DimensionMismatch, "empty span needs an explicit dimension");
    return projection_onto_span(vectors, static_cast<std::size_t>(vectors.front().size()), ctx);
}

Eigen::MatrixXcd range_basis(const Projection& p) {
    Eigen::SelfAdjointEigenSolver<Operator> es(p.matrix());
    const Eigen::VectorXd& vals = es.eigenvalues();
    Eigen::Index first = 0;
    while (first < vals.size() && vals(first) < 0.5) ++first;
    return es.eigenvectors().rightCols(vals.size() - first);
}

LimitResult norm_limit(const std::function<Operator(int)>& generator, const ToleranceContext& ctx) {
    LimitResult out;
    out.value = generator(1);
    out.iterations = 1;
    for (int k = 2; k <= ctx.max_iter; ++k) {
        Operator next = generator(k);
        require_same_dim(out.value, next, "norm_limit");
        out.last_step = op_norm(next - out.value);
        out.value = std::move(next);
        out.iterations = k;
        if (out.last_step <= ctx.atol) {
            out.converged = true;
            return out;
        }
    }
    return out;
}

Operator norm_limit_or_throw(const std::function<Operator(int)>& generator,
                             const ToleranceContext& ctx) {
    LimitResult r = norm_limit(generator, ctx);
    if (!r.converged) {
        std::ostringstream os;
        os << "no convergence after " << r.iterations << " terms (last step " << r.last_step << ")";
        throw Error(ErrorCode::NoConvergence, os.str());
    }
    return std::move(r.value);
}

void require_same_dim(const Operator& a, const Operator& b, const char* where) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream os;
        os << where << ": " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x" << b.cols();
        throw Error(ErrorCode::DimensionMismatch, os.str());
    }
}

Operator pauli_x() {
    Operator m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Operator pauli_y() {
    Operator m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Operator pauli_z() {
    Operator m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Operator diag(std::initializer_list<double> values) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v(i++) = x;
    return v.cast<Complex>().asDiagonal();
}

Projection rank_one(const Vector& v) {
    const Vector u = v / v.norm();
    return Projection::trusted(u * u.adjoint());
}

}  // namespace modal
