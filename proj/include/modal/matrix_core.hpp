#pragma once

// Dense complex matrix utilities shared by every other module: tolerance
// context, projections, Hermitian spectral resolution and operator-norm limits.

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "modal/error.hpp"

namespace modal {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct ToleranceContext {
    double atol = 1e-10;
    double eig_cluster_tol = 1e-8;
    int max_iter = 200;

    /// Throws ValidationError unless every field is strictly positive.
    void validate() const;
};

/// Spectral (largest singular value) norm.
double op_norm(const Operator& a);

Operator identity(std::size_t n);
Operator zeros(std::size_t n);
Operator adjoint(const Operator& a);

bool is_self_adjoint(const Operator& a, const ToleranceContext& ctx);
bool is_projection(const Operator& a, const ToleranceContext& ctx);

/// Self-adjoint idempotent operator. Construction validates the invariant and
/// symmetrizes the stored matrix so that downstream products stay Hermitian.
class Projection {
public:
    Projection(const Operator& m, const ToleranceContext& ctx);

    static Projection zero(std::size_t n);
    static Projection identity(std::size_t n);
    /// Wraps a matrix already known to be a projection (symmetrized, not checked).
    static Projection trusted(const Operator& m);

    const Operator& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    /// Numerical rank (trace rounded to the nearest integer).
    std::size_t rank() const;
    Projection complement() const;
    bool is_zero(const ToleranceContext& ctx) const;

private:
    explicit Projection(Operator m) : m_(std::move(m)) {}
    Operator m_;
};

struct SpectralResolution {
    std::vector<double> eigenvalues;     // distinct, strictly descending
    std::vector<Projection> projectors;  // same length as eigenvalues

    std::size_t size() const noexcept { return eigenvalues.size(); }
    Operator reconstruct() const;
};

/// Eigenvalues closer than eig_cluster_tol to their sorted neighbour are merged
/// into one degenerate eigenspace. Throws NotSelfAdjoint.
SpectralResolution spectral_resolution(const Operator& a, const ToleranceContext& ctx);

/// Orthogonal projector onto span(vectors). `n` gives the dimension for an empty list.
Projection projection_onto_span(const std::vector<Vector>& vectors, std::size_t n,
                                const ToleranceContext& ctx);
Projection projection_onto_span(const std::vector<Vector>& vectors, const ToleranceContext& ctx);

/// Orthonormal basis (columns) of the range of a projection.
Eigen::MatrixXcd range_basis(const Projection& p);

/// Orthonormal basis (columns) of the kernel of a Hermitian positive semidefinite matrix.
Eigen::MatrixXcd psd_kernel(const Operator& h, double threshold);

struct LimitResult {
    Operator value;
    bool converged = false;
    int iterations = 0;
    double last_step = 0.0;  // ||G_n - G_{n-1}|| at termination
};

/// Evaluates generator(1), generator(2), ... until consecutive terms differ by at
/// most atol in operator norm, or max_iter terms have been produced.
LimitResult norm_limit(const std::function<Operator(int)>& generator, const ToleranceContext& ctx);

/// Same as norm_limit but throws NoConvergence when the cap is reached.
Operator norm_limit_or_throw(const std::function<Operator(int)>& generator,
                             const ToleranceContext& ctx);

void require_same_dim(const Operator& a, const Operator& b, const char* where);

// Standard matrices used throughout tests and demos.
Operator pauli_x();
Operator pauli_y();
Operator pauli_z();
Operator diag(std::initializer_list<double> values);
Projection rank_one(const Vector& v);

}  // namespace modal
