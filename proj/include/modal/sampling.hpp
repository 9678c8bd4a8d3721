#pragma once

// Seeded pseudo-random operators. Every generator is a deterministic function
// of the Rng state so reports and tests are reproducible for a fixed seed.

#include <cstdint>
#include <random>
#include <vector>

#include "modal/matrix_core.hpp"

namespace modal {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    /// Uniform integer in [lo, hi].
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    bool coin() { return integer(0, 1) == 1; }
    Complex complex_normal() { return {normal(), normal()}; }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

Vector random_unit_vector(std::size_t n, Rng& rng);
/// Haar-distributed unitary (QR of a complex Gaussian matrix with phase fix).
Operator random_unitary(std::size_t n, Rng& rng);
/// Self-adjoint matrix with i.i.d. Gaussian entries (GUE up to scale).
Operator random_hermitian(std::size_t n, Rng& rng);
Operator random_matrix(std::size_t n, Rng& rng);

/// Unitary conjugate of the coordinate projector diag(1,...,1,0,...,0) with `rank` ones.
Projection random_projection(std::size_t n, std::size_t rank, Rng& rng);

/// Random projection of the given rank whose range lies inside ran(block).
Projection random_subprojection(const Projection& block, std::size_t rank, Rng& rng);

/// Rank-one projections whose linear span is the whole operator space on
/// ran(block): r^2 of them for a rank-r block.
std::vector<Projection> spanning_rank_one_family(const Projection& block);

}  // namespace modal
