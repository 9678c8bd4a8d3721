#pragma once

#include <cstddef>
#include <vector>

#include "modal/matrix_core.hpp"

namespace modal {

/// A family of mutually orthogonal nonzero projections. The X-form set it
/// defines is { P : PX = X or PX = 0 for every X in the family }.
class XFormSpec {
public:
    /// Throws InvalidXForm on a zero member or a non-orthogonal pair,
    /// DimensionMismatch on mixed dimensions.
    XFormSpec(std::size_t dim, std::vector<Projection> xs, const ToleranceContext& ctx);

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<Projection>& members() const noexcept { return xs_; }
    std::size_t size() const noexcept { return xs_.size(); }

    /// Sum of the family: the projection onto the span of all ranges.
    Projection support() const;
    /// I - support().
    Projection null_block() const;

private:
    std::size_t dim_;
    std::vector<Projection> xs_;
};

bool xform_membership(const XFormSpec& spec, const Projection& p, const ToleranceContext& ctx);

/// Membership in I = { P in d : P (sum X) = 0 }. Throws NotInD when p is not in d.
bool xform_ideal_membership(const XFormSpec& spec, const Projection& p, const ToleranceContext& ctx);

}  // namespace modal
