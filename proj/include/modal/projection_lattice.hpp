#pragma once

// Ortholattice operations on projections and exhaustive structural checks on
// finite sublattices.

#include <cstddef>
#include <optional>
#include <vector>

#include "modal/matrix_core.hpp"

namespace modal {

bool leq(const Projection& p, const Projection& q, const ToleranceContext& ctx);
bool proj_equal(const Projection& p, const Projection& q, const ToleranceContext& ctx);

/// Projection onto ran(P) ∩ ran(Q), from the kernel of (I-P) + (I-Q).
Projection meet_exact(const Projection& p, const Projection& q, const ToleranceContext& ctx);

struct IterativeMeet {
    Projection value;
    bool converged = false;
    int iterations = 0;
    /// Largest |eigenvalue| of ½(PQ+QP) below 1; the powers contract like this number.
    double contraction = 0.0;
};

/// P ∧ Q as the limit of (½(PQ+QP))^n, evaluated along the subsequence n = 2^k
/// by repeated squaring. Stops when consecutive terms differ by at most atol.
IterativeMeet meet_iterative(const Projection& p, const Projection& q, const ToleranceContext& ctx);

/// Throws NoConvergence (with the contraction factor in the message) if the cap is hit.
Projection meet_iterative_or_throw(const Projection& p, const Projection& q, const ToleranceContext& ctx);

/// I - ((I-P) ∧ (I-Q)).
Projection join(const Projection& p, const Projection& q, const ToleranceContext& ctx);

/// A finite set of projections closed under complement, meet and join, with
/// the operation tables precomputed as element indices.
class FiniteLattice {
public:
    /// Validates closure; throws InvalidLattice naming the first violation.
    FiniteLattice(std::vector<Projection> elements, const ToleranceContext& ctx);

    std::size_t size() const noexcept { return elements_.size(); }
    std::size_t dim() const noexcept { return elements_.front().dim(); }
    const std::vector<Projection>& elements() const noexcept { return elements_; }
    const Projection& operator[](std::size_t i) const { return elements_[i]; }

    std::size_t bottom() const noexcept { return bottom_; }
    std::size_t top() const noexcept { return top_; }
    std::size_t complement(std::size_t i) const { return complement_[i]; }
    std::size_t meet(std::size_t i, std::size_t j) const { return meet_[i * size() + j]; }
    std::size_t join(std::size_t i, std::size_t j) const { return join_[i * size() + j]; }
    bool leq(std::size_t i, std::size_t j) const { return order_[i * size() + j]; }

    /// Index of the element equal to p within atol.
    std::optional<std::size_t> find(const Projection& p, const ToleranceContext& ctx) const;

private:
    std::vector<Projection> elements_;
    std::size_t bottom_ = 0;
    std::size_t top_ = 0;
    std::vector<std::size_t> complement_;
    std::vector<std::size_t> meet_;
    std::vector<std::size_t> join_;
    std::vector<bool> order_;
};

/// Closes generators ∪ {0, I} under complement, meet and join. Throws
/// CapExceeded once more than `cap` distinct elements appear.
FiniteLattice generate_ortholattice(const std::vector<Projection>& generators, std::size_t cap,
                                    const ToleranceContext& ctx);

inline constexpr std::size_t kDefaultLatticeCap = 512;

bool check_orthomodular(const FiniteLattice& l);
bool check_boolean(const FiniteLattice& l);
/// Complement laws, order reversal and involution over all elements and pairs.
bool check_ortholattice_axioms(const FiniteLattice& l);
std::vector<std::size_t> atom_indices(const FiniteLattice& l);
std::vector<Projection> atoms(const FiniteLattice& l);

struct ChainDemoResult {
    std::vector<Projection> chain;
    std::vector<Projection> differences;  // M_n = P_n - P_{n+1}
    Projection tail;                      // P∞: last chain element
    Operator truncated;                   // Q_N = P1⊥ + Σ_{n<=N} e^{-n} M_n
    SpectralResolution spectrum;          // of Q_N
    double completeness_residual = 0.0;   // ||Σ M_n + P∞ + P1⊥ - I||
    double orthogonality_residual = 0.0;  // max ||M_i M_j||, ||M_i P∞|| for i != j
};

/// Requires a strictly decreasing chain of at least two projections and
/// 1 <= n_terms <= chain.size() - 1; throws ChainNotStrict otherwise.
ChainDemoResult atomicity_demo(const std::vector<Projection>& chain, std::size_t n_terms,
                               const ToleranceContext& ctx);

}  // namespace modal
