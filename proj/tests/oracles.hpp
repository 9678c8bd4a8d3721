#pragma once

// Independent reference computations for the unit and acceptance tests. They
// deliberately use different numerical routes from the library (LU kernels,
// explicit enumeration) so that agreement is evidence rather than tautology.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "modal/matrix_core.hpp"
#include "modal/projection_lattice.hpp"

namespace oracle {

using modal::Operator;

inline double fro(const Operator& a) { return a.norm(); }

// Commutant dimension as n^2 minus the rank of the stacked Kronecker system,
// computed with a full-pivoting LU instead of an SVD.
inline std::size_t commutant_dim(const std::vector<Operator>& ops, double tol = 1e-9) {
    const Eigen::Index n = ops.front().rows();
    Eigen::MatrixXcd sys(static_cast<Eigen::Index>(ops.size()) * n * n, n * n);
    const Operator id = Operator::Identity(n, n);
    for (std::size_t k = 0; k < ops.size(); ++k) {
        const Operator& b = ops[k];
        Eigen::MatrixXcd blk(n * n, n * n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                for (Eigen::Index p = 0; p < n; ++p)
                    for (Eigen::Index q = 0; q < n; ++q)
                        blk(i * n + p, j * n + q) = b(j, i) * id(p, q) - id(i, j) * b(p, q);
        sys.middleRows(static_cast<Eigen::Index>(k) * n * n, n * n) = blk;
    }
    // Absolute pivot threshold: a relative one counts rounding noise as rank
    // when the system is numerically zero.
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(sys);
    const Eigen::VectorXcd pivots = lu.matrixLU().diagonal();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < pivots.size(); ++i)
        if (std::abs(pivots(i)) > tol) ++rank;
    return static_cast<std::size_t>(n * n - rank);
}

// Projector onto ran(P) ∩ ran(Q) from the LU kernel of [U_P, -U_Q].
inline Operator meet(const Operator& p, const Operator& q) {
    const Eigen::Index n = p.rows();
    auto range = [](const Operator& m) {
        Eigen::SelfAdjointEigenSolver<Operator> es(m);
        std::vector<Eigen::Index> cols;
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (es.eigenvalues()(i) > 0.5) cols.push_back(i);
        Eigen::MatrixXcd u(m.rows(), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t k = 0; k < cols.size(); ++k) u.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(cols[k]);
        return u;
    };
    const Eigen::MatrixXcd up = range(p), uq = range(q);
    if (up.cols() == 0 || uq.cols() == 0) return Operator::Zero(n, n);
    Eigen::MatrixXcd stacked(n, up.cols() + uq.cols());
    stacked << up, -uq;
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(stacked);
    lu.setThreshold(1e-8);
    const Eigen::MatrixXcd ker = lu.kernel();
    if (lu.rank() == stacked.cols()) return Operator::Zero(n, n);
    const Eigen::MatrixXcd vecs = up * ker.topRows(up.cols());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(vecs);
    const Eigen::MatrixXcd qmat = qr.householderQ() * Eigen::MatrixXcd::Identity(n, vecs.cols());
    return qmat * qmat.adjoint();
}

// Sorted-diagonal clustering: the distinct values of a real diagonal grouped by gap.
inline std::vector<double> cluster_values(std::vector<double> v, double gap) {
    std::sort(v.begin(), v.end(), std::greater<>());
    std::vector<std::vector<double>> groups;
    for (double x : v) {
        if (groups.empty() || groups.back().back() - x > gap) groups.push_back({});
        groups.back().push_back(x);
    }
    std::vector<double> out;
    for (const auto& g : groups) {
        double s = 0;
        for (double x : g) s += x;
        out.push_back(s / static_cast<double>(g.size()));
    }
    return out;
}

// All maps L -> {0,1} satisfying the three homomorphism laws, by plain 2^n enumeration.
inline std::vector<std::vector<std::uint8_t>> brute_force_homomorphisms(const modal::FiniteLattice& l) {
    const std::size_t n = l.size();
    std::vector<std::vector<std::uint8_t>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        auto v = [&](std::size_t i) { return static_cast<int>((mask >> i) & 1U); };
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (v(l.complement(i)) != 1 - v(i)) ok = false;
            for (std::size_t j = 0; j < n && ok; ++j) {
                if (v(l.meet(i, j)) != v(i) * v(j)) ok = false;
                if (v(l.join(i, j)) != v(i) + v(j) - v(i) * v(j)) ok = false;
            }
        }
        if (!ok) continue;
        std::vector<std::uint8_t> m(n);
        for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<std::uint8_t>(v(i));
        out.push_back(std::move(m));
    }
    return out;
}

// Definition of I-quasiBooleanness checked directly against a homomorphism list.
inline bool quasi_boolean_by_definition(const modal::FiniteLattice& l, const std::vector<std::size_t>& ideal,
                                        const std::vector<std::vector<std::uint8_t>>& homs) {
    for (std::size_t x = 0; x < l.size(); ++x) {
        if (std::find(ideal.begin(), ideal.end(), x) != ideal.end()) continue;
        const bool reached = std::any_of(homs.begin(), homs.end(), [&](const auto& h) { return h[x] == 1; });
        if (!reached) return false;
    }
    return true;
}

}  // namespace oracle
