#pragma once

// Definite-valued projection sets of the modal interpretations, each built
// from the spectral data of a density operator as an X-form family.

#include <string>
#include <string_view>

#include "modal/matrix_core.hpp"
#include "modal/operator_algebra.hpp"
#include "modal/xform.hpp"

namespace modal {

class DensityState {
public:
    /// Throws NotDensityOperator for non-Hermitian input, an eigenvalue below
    /// -atol, or a trace differing from 1 by more than atol.
    static DensityState make(const Operator& w, const ToleranceContext& ctx);

    const Operator& matrix() const noexcept { return w_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(w_.rows()); }
    /// Clustered spectrum, descending; includes the zero cluster when present.
    const SpectralResolution& spectral() const noexcept { return spectral_; }
    /// Projector onto the kernel of W (zero projection if W is nonsingular).
    const Projection& null_projector() const noexcept { return null_; }
    /// Spectral projectors with nonzero eigenvalue, in spectral order.
    std::vector<Projection> nonzero_projectors() const;
    std::vector<double> nonzero_eigenvalues() const;

private:
    DensityState(Operator w, SpectralResolution sr, Projection null)
        : w_(std::move(w)), spectral_(std::move(sr)), null_(std::move(null)) {}

    Operator w_;
    SpectralResolution spectral_;
    Projection null_;
};

struct BubRuleInput {
    Vector psi;       // unit vector
    Operator observable;  // self-adjoint preferred observable R

    /// Throws ValidationError when psi is not a unit vector or R is not self-adjoint.
    void validate(const ToleranceContext& ctx) const;
};

enum class Rule { Naive, Orthodox, Clifton, KochenDieks, Bub };

std::string_view to_string(Rule r) noexcept;
/// Accepts the names used in configuration files; throws ValidationError otherwise.
Rule parse_rule(std::string_view name);

/// Single member: the support projection of W.
XFormSpec rule_orthodox(const DensityState& s, const ToleranceContext& ctx);
/// Spectral projectors of W with nonzero eigenvalue.
XFormSpec rule_clifton(const DensityState& s, const ToleranceContext& ctx);
/// All spectral projectors of W, the kernel projector included when nonzero.
XFormSpec rule_kochen_dieks(const DensityState& s, const ToleranceContext& ctx);
/// Rank-one projectors onto the nonzero components R_j psi of psi in the
/// eigenspaces of R. Throws AllComponentsZero if every component vanishes.
XFormSpec rule_bub(const BubRuleInput& input, const ToleranceContext& ctx);

/// The definite set for a rule: full lattice for Naive, otherwise the X-form set.
/// `bub` is required (and only read) for Rule::Bub.
DefiniteSetPredicate definite_set(Rule rule, const DensityState& s, const BubRuleInput* bub,
                                  const ToleranceContext& ctx);

}  // namespace modal
