#include "modal/interpretation_rules.hpp"

#include <cmath>
#include <sstream>

namespace modal {

DensityState DensityState::make(const Operator& w, const ToleranceContext& ctx) {
    if (w.rows() != w.cols() || w.rows() == 0) throw Error(ErrorCode::NotDensityOperator, "W must be square and nonempty");
    if (!w.allFinite()) throw Error(ErrorCode::NotDensityOperator, "W has non-finite entries");
    if (!is_self_adjoint(w, ctx)) throw Error(ErrorCode::NotDensityOperator, "W is not self-adjoint");
    const Complex tr = w.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > ctx.atol) {
        std::ostringstream os;
        os << "trace is " << tr.real() << ", expected 1";
        throw Error(ErrorCode::NotDensityOperator, os.str());
    }
    SpectralResolution sr = spectral_resolution(w, ctx);
    if (sr.eigenvalues.back() < -ctx.atol) {
        std::ostringstream os;
        os << "negative eigenvalue " << sr.eigenvalues.back();
        throw Error(ErrorCode::NotDensityOperator, os.str());
    }
    Projection null = Projection::zero(static_cast<std::size_t>(w.rows()));
    if (std::abs(sr.eigenvalues.back()) <= ctx.eig_cluster_tol) {
        null = sr.projectors.back();
        sr.eigenvalues.back() = 0.0;
    }
    return DensityState(0.5 * (w + w.adjoint()), std::move(sr), std::move(null));
}

std::vector<Projection> DensityState::nonzero_projectors() const {
    std::vector<Projection> out;
    for (std::size_t i = 0; i < spectral_.size(); ++i) {
        if (spectral_.eigenvalues[i] != 0.0) out.push_back(spectral_.projectors[i]);
    }
    return out;
}

std::vector<double> DensityState::nonzero_eigenvalues() const {
    std::vector<double> out;
    for (double v : spectral_.eigenvalues) {
        if (v != 0.0) out.push_back(v);
    }
    return out;
}

void BubRuleInput::validate(const ToleranceContext& ctx) const {
    if (observable.rows() != observable.cols() || observable.rows() != psi.size()) {
        throw Error(ErrorCode::ValidationError, "psi and R dimensions disagree");
    }
    if (std::abs(psi.norm() - 1.0) > ctx.atol) throw Error(ErrorCode::ValidationError, "psi is not a unit vector");
    if (!is_self_adjoint(observable, ctx)) throw Error(ErrorCode::ValidationError, "R is not self-adjoint");
}

std::string_view to_string(Rule r) noexcept {
    switch (r) {
        case Rule::Naive: return "naive";
        case Rule::Orthodox: return "orthodox";
        case Rule::Clifton: return "clifton";
        case Rule::KochenDieks: return "kochen-dieks";
        case Rule::Bub: return "bub";
    }
    return "unknown";
}

Rule parse_rule(std::string_view name) {
    for (Rule r : {Rule::Naive, Rule::Orthodox, Rule::Clifton, Rule::KochenDieks, Rule::Bub}) {
        if (name == to_string(r)) return r;
    }
    throw Error(ErrorCode::ValidationError, "unknown rule '" + std::string(name) + "'");
}

XFormSpec rule_orthodox(const DensityState& s, const ToleranceContext& ctx) {
    return XFormSpec(s.dim(), {s.null_projector().complement()}, ctx);
}

XFormSpec rule_clifton(const DensityState& s, const ToleranceContext& ctx) {
    return XFormSpec(s.dim(), s.nonzero_projectors(), ctx);
}

XFormSpec rule_kochen_dieks(const DensityState& s, const ToleranceContext& ctx) {
    std::vector<Projection> xs = s.nonzero_projectors();
    if (!s.null_projector().is_zero(ctx)) xs.push_back(s.null_projector());
    return XFormSpec(s.dim(), std::move(xs), ctx);
}

XFormSpec rule_bub(const BubRuleInput& input, const ToleranceContext& ctx) {
    input.validate(ctx);
    const SpectralResolution sr = spectral_resolution(input.observable, ctx);
    std::vector<Projection> xs;
    for (const auto& rj : sr.projectors) {
        const Vector component = rj.matrix() * input.psi;
        if (component.norm() > ctx.atol) xs.push_back(rank_one(component));
    }
    if (xs.empty()) throw Error(ErrorCode::AllComponentsZero, "psi has no nonzero component along R");
    return XFormSpec(static_cast<std::size_t>(input.psi.size()), std::move(xs), ctx);
}

DefiniteSetPredicate definite_set(Rule rule, const DensityState& s, const BubRuleInput* bub,
                                  const ToleranceContext& ctx) {
    switch (rule) {
        case Rule::Naive: return DefiniteSetPredicate::full_lattice(s.dim());
        case Rule::Orthodox: return DefiniteSetPredicate::x_form(rule_orthodox(s, ctx));
        case Rule::Clifton: return DefiniteSetPredicate::x_form(rule_clifton(s, ctx));
        case Rule::KochenDieks: return DefiniteSetPredicate::x_form(rule_kochen_dieks(s, ctx));
        case Rule::Bub:
            if (bub == nullptr) throw Error(ErrorCode::ValidationError, "bub rule needs psi and R");
            return DefiniteSetPredicate::x_form(rule_bub(*bub, ctx));
    }
    throw Error(ErrorCode::ValidationError, "unknown rule");
}

}  // namespace modal
