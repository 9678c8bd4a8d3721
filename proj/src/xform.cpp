#include "modal/xform.hpp"

#include <sstream>

namespace modal {

XFormSpec::XFormSpec(std::size_t dim, std::vector<Projection> xs, const ToleranceContext& ctx)
    : dim_(dim), xs_(std::move(xs)) {
    for (std::size_t i = 0; i < xs_.size(); ++i) {
        if (xs_[i].dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "X-form member has wrong dimension");
        if (xs_[i].is_zero(ctx)) throw Error(ErrorCode::InvalidXForm, "X-form family contains the zero projection");
        for (std::size_t j = 0; j < i; ++j) {
            if (op_norm(xs_[i].matrix() * xs_[j].matrix()) > ctx.atol) {
                std::ostringstream os;
                os << "members " << j << " and " << i << " are not orthogonal";
                throw Error(ErrorCode::InvalidXForm, os.str());
            }
        }
    }
}

Projection XFormSpec::support() const {
    Operator s = zeros(dim_);
    for (const auto& x : xs_) s += x.matrix();
    return Projection::trusted(s);
}

Projection XFormSpec::null_block() const { return support().complement(); }

bool xform_membership(const XFormSpec& spec, const Projection& p, const ToleranceContext& ctx) {
    if (p.dim() != spec.dim()) throw Error(ErrorCode::DimensionMismatch, "xform_membership");
    for (const auto& x : spec.members()) {
        const Operator px = p.matrix() * x.matrix();
        if (op_norm(px - x.matrix()) > ctx.atol && op_norm(px) > ctx.atol) return false;
    }
    return true;
}

bool xform_ideal_membership(const XFormSpec& spec, const Projection& p, const ToleranceContext& ctx) {
    if (!xform_membership(spec, p, ctx)) throw Error(ErrorCode::NotInD, "projection is not in the X-form set");
    return op_norm(p.matrix() * spec.support().matrix()) <= ctx.atol;
}

}  // namespace modal
