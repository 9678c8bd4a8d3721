#include "modal/sampling.hpp"

#include <cmath>

namespace modal {

Vector random_unit_vector(std::size_t n, Rng& rng) {
    Vector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
    return v / v.norm();
}

Operator random_matrix(std::size_t n, Rng& rng) {
    const auto k = static_cast<Eigen::Index>(n);
    Operator g(k, k);
    for (Eigen::Index j = 0; j < k; ++j)
        for (Eigen::Index i = 0; i < k; ++i) g(i, j) = rng.complex_normal();
    return g;
}

Operator random_unitary(std::size_t n, Rng& rng) {
    Operator g = random_matrix(n, rng);
    Eigen::HouseholderQR<Operator> qr(g);
    Operator q = qr.householderQ();
    const Operator r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return q;
}

Operator random_hermitian(std::size_t n, Rng& rng) {
    const Operator g = random_matrix(n, rng);
    return 0.5 * (g + g.adjoint());
}

Projection random_projection(std::size_t n, std::size_t rank, Rng& rng) {
    const Operator u = random_unitary(n, rng);
    const auto cols = u.leftCols(static_cast<Eigen::Index>(rank));
    return Projection::trusted(cols * cols.adjoint());
}

Projection random_subprojection(const Projection& block, std::size_t rank, Rng& rng) {
    const Eigen::MatrixXcd basis = range_basis(block);
    const auto r = static_cast<std::size_t>(basis.cols());
    if (rank > r) throw Error(ErrorCode::PreconditionViolated, "subprojection rank exceeds block rank");
    const Operator u = random_unitary(r, rng);
    const Eigen::MatrixXcd cols = basis * u.leftCols(static_cast<Eigen::Index>(rank));
    return Projection::trusted(cols * cols.adjoint());
}

std::vector<Projection> spanning_rank_one_family(const Projection& block) {
    const Eigen::MatrixXcd basis = range_basis(block);
    const Eigen::Index r = basis.cols();
    std::vector<Projection> out;
    out.reserve(static_cast<std::size_t>(r * r));
    const double s = 1.0 / std::sqrt(2.0);
    for (Eigen::Index j = 0; j < r; ++j) {
        out.push_back(rank_one(basis.col(j)));
        for (Eigen::Index k = j + 1; k < r; ++k) {
            out.push_back(rank_one(s * (basis.col(j) + basis.col(k))));
            out.push_back(rank_one(s * (basis.col(j) + Complex(0, 1) * basis.col(k))));
        }
    }
    return out;
}

}  // namespace modal
