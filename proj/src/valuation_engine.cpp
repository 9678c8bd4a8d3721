#include "modal/valuation_engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace modal {

TwoValuedHomomorphism::TwoValuedHomomorphism(Projection atom_, DefiniteSetPredicate domain_,
                                             const ToleranceContext& ctx)
    : atom(std::move(atom_)), domain(std::move(domain_)) {
    if (atom.is_zero(ctx)) throw Error(ErrorCode::PreconditionViolated, "homomorphism atom is zero");
    if (atom.dim() != domain.dim()) throw Error(ErrorCode::DimensionMismatch, "atom and domain dimensions differ");
}

int homomorphism_eval(const TwoValuedHomomorphism& h, const Projection& p, const ToleranceContext& ctx) {
    if (leq(h.atom, p, ctx)) return 1;
    if (leq(h.atom, p.complement(), ctx)) return 0;
    throw Error(ErrorCode::AtomNotResolved, "atom lies neither below P nor below its complement");
}

LawReport check_value_map(const FiniteLattice& l, const ValueMap& values) {
    LawReport r;
    auto fail = [&](const std::string& msg) {
        r.pass = false;
        if (r.violations.size() < 8) r.violations.push_back(msg);
    };
    const std::size_t n = l.size();
    if (values.size() != n) throw Error(ErrorCode::DimensionMismatch, "value map size differs from lattice size");
    for (std::size_t x = 0; x < n; ++x) {
        ++r.checks;
        if (values[l.complement(x)] != 1 - values[x]) {
            std::ostringstream os;
            os << "complement law fails at element " << x;
            fail(os.str());
        }
        for (std::size_t y = 0; y < n; ++y) {
            r.checks += 2;
            const int vx = values[x], vy = values[y];
            if (values[l.meet(x, y)] != vx * vy) {
                std::ostringstream os;
                os << "meet law fails at pair (" << x << ", " << y << ")";
                fail(os.str());
            }
            if (values[l.join(x, y)] != vx + vy - vx * vy) {
                std::ostringstream os;
                os << "join law fails at pair (" << x << ", " << y << ")";
                fail(os.str());
            }
        }
    }
    return r;
}

ValueMap homomorphism_values(const TwoValuedHomomorphism& h, const FiniteLattice& l, const ToleranceContext& ctx) {
    ValueMap values(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (!h.domain.contains(l[i], ctx)) {
            throw Error(ErrorCode::PreconditionViolated, "lattice element outside the homomorphism domain");
        }
        values[i] = static_cast<std::uint8_t>(homomorphism_eval(h, l[i], ctx));
    }
    return values;
}

LawReport check_homomorphism_laws(const TwoValuedHomomorphism& h, const FiniteLattice& l,
                                  const ToleranceContext& ctx) {
    return check_value_map(l, homomorphism_values(h, l, ctx));
}

namespace {

enum class Law { Complement, Meet, Join };

struct Constraint {
    Law law;
    std::size_t a, b, result;
};

bool satisfied(const Constraint& c, const ValueMap& v) {
    switch (c.law) {
        case Law::Complement: return v[c.result] == 1 - v[c.a];
        case Law::Meet: return v[c.result] == v[c.a] * v[c.b];
        case Law::Join: return v[c.result] == v[c.a] + v[c.b] - v[c.a] * v[c.b];
    }
    return false;
}

void search(std::size_t k, const std::vector<std::vector<Constraint>>& ready, ValueMap& v,
            std::vector<ValueMap>& out) {
    if (k == v.size()) {
        out.push_back(v);
        return;
    }
    for (std::uint8_t bit : {std::uint8_t{0}, std::uint8_t{1}}) {
        v[k] = bit;
        const bool ok = std::all_of(ready[k].begin(), ready[k].end(),
                                    [&](const Constraint& c) { return satisfied(c, v); });
        if (ok) search(k + 1, ready, v, out);
    }
}

}  // namespace

std::vector<ValueMap> enumerate_homomorphisms(const FiniteLattice& l, std::size_t bound) {
    const std::size_t n = l.size();
    if (n > bound) {
        std::ostringstream os;
        os << "lattice has " << n << " elements; exhaustive bound is " << bound;
        throw Error(ErrorCode::TooLarge, os.str());
    }
    // Bucket every law by the largest index it mentions so it is checked as
    // soon as all its values are fixed.
    std::vector<std::vector<Constraint>> ready(n);
    for (std::size_t x = 0; x < n; ++x) {
        const std::size_t c = l.complement(x);
        ready[std::max(x, c)].push_back({Law::Complement, x, x, c});
        for (std::size_t y = 0; y <= x; ++y) {
            const std::size_t m = l.meet(x, y);
            const std::size_t j = l.join(x, y);
            ready[std::max({x, y, m})].push_back({Law::Meet, x, y, m});
            ready[std::max({x, y, j})].push_back({Law::Join, x, y, j});
        }
    }
    std::vector<ValueMap> out;
    ValueMap v(n, 0);
    search(0, ready, v, out);
    return out;
}

IdealIndices principal_ideal(const FiniteLattice& l, std::size_t x) {
    IdealIndices out;
    for (std::size_t y = 0; y < l.size(); ++y) {
        if (l.leq(y, x)) out.push_back(y);
    }
    return out;
}

void validate_ideal(const FiniteLattice& l, const IdealIndices& ideal) {
    if (ideal.empty()) throw Error(ErrorCode::IdealInvalid, "ideal is empty");
    std::vector<bool> in(l.size(), false);
    for (std::size_t i : ideal) {
        if (i >= l.size()) throw Error(ErrorCode::IdealInvalid, "ideal index out of range");
        in[i] = true;
    }
    if (in[l.top()]) throw Error(ErrorCode::IdealInvalid, "ideal contains the top element");
    for (std::size_t x : ideal) {
        for (std::size_t y = 0; y < l.size(); ++y) {
            if (l.leq(y, x) && !in[y]) throw Error(ErrorCode::IdealInvalid, "ideal is not downward closed");
        }
        for (std::size_t y : ideal) {
            if (!in[l.join(x, y)]) throw Error(ErrorCode::IdealInvalid, "ideal is not closed under joins");
        }
    }
}

std::vector<IdealIndices> all_ideals(const FiniteLattice& l) {
    std::vector<IdealIndices> out;
    for (std::size_t x = 0; x < l.size(); ++x) {
        if (x != l.top()) out.push_back(principal_ideal(l, x));
    }
    return out;
}

namespace {

// Atom-set characterization: search orthogonal families of resolving atoms
// whose join's complement generates exactly the ideal.
std::optional<std::vector<std::size_t>> find_atom_set(const FiniteLattice& l, const std::vector<bool>& in_ideal) {
    std::vector<std::size_t> resolving;
    for (std::size_t a : atom_indices(l)) {
        bool ok = true;
        for (std::size_t y = 0; y < l.size() && ok; ++y) {
            ok = l.leq(a, y) || l.leq(a, l.complement(y));
        }
        if (ok) resolving.push_back(a);
    }
    const std::size_t r = resolving.size();
    if (r > 24) throw Error(ErrorCode::TooLarge, "too many resolving atoms for subset search");

    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << r); ++mask) {
        std::vector<std::size_t> family;
        for (std::size_t k = 0; k < r; ++k) {
            if (mask & (std::uint64_t{1} << k)) family.push_back(resolving[k]);
        }
        bool orthogonal = true;
        for (std::size_t i = 0; i < family.size() && orthogonal; ++i)
            for (std::size_t j = 0; j < i && orthogonal; ++j)
                orthogonal = l.leq(family[i], l.complement(family[j]));
        if (!orthogonal) continue;

        std::size_t joined = l.bottom();
        for (std::size_t a : family) joined = l.join(joined, a);
        const std::size_t perp = l.complement(joined);
        bool matches = true;
        for (std::size_t y = 0; y < l.size() && matches; ++y) matches = (l.leq(y, perp) == in_ideal[y]);
        if (matches) return family;
    }
    return std::nullopt;
}

}  // namespace

QuasiBooleanResult check_quasiboolean(const FiniteLattice& l, const IdealIndices& ideal, std::size_t bound) {
    validate_ideal(l, ideal);
    std::vector<bool> in_ideal(l.size(), false);
    for (std::size_t i : ideal) in_ideal[i] = true;

    QuasiBooleanResult out;
    out.atom_set = find_atom_set(l, in_ideal);

    const std::vector<ValueMap> homs = enumerate_homomorphisms(l, bound);
    out.homomorphism_count = homs.size();
    for (std::size_t x = 0; x < l.size() && !out.unreachable_element; ++x) {
        if (in_ideal[x]) continue;
        const bool reached = std::any_of(homs.begin(), homs.end(), [&](const ValueMap& h) { return h[x] == 1; });
        if (!reached) out.unreachable_element = x;
    }

    const bool by_atoms = out.atom_set.has_value();
    const bool by_definition = !out.unreachable_element.has_value();
    if (by_atoms != by_definition) {
        std::ostringstream os;
        os << "atom-set route says " << by_atoms << ", homomorphism search says " << by_definition;
        throw Error(ErrorCode::OracleDisagreement, os.str());
    }
    out.quasi_boolean = by_atoms;
    return out;
}

// ---------------------------------------------------------------------------

FunctionalValuation::FunctionalValuation(XFormSpec spec, std::size_t index)
    : spec_(std::move(spec)), index_(index) {
    if (index_ >= spec_.size()) throw Error(ErrorCode::PreconditionViolated, "selector index outside the X family");
}

std::vector<FunctionalValuation> all_valuations(const XFormSpec& spec) {
    std::vector<FunctionalValuation> out;
    for (std::size_t k = 0; k < spec.size(); ++k) out.emplace_back(spec, k);
    return out;
}

double valuation_eval(const FunctionalValuation& v, const Operator& q, const ToleranceContext& ctx) {
    if (!is_self_adjoint(q, ctx)) throw Error(ErrorCode::NotSelfAdjoint, "valuation_eval");
    const SpectralResolution sr = spectral_resolution(q, ctx);
    const Projection& y = v.selector();
    std::optional<double> value;
    for (std::size_t i = 0; i < sr.size(); ++i) {
        const Projection& qi = sr.projectors[i];
        if (!xform_membership(v.spec(), qi, ctx)) {
            throw Error(ErrorCode::NotInExtension, "a spectral projector lies outside the X-form set");
        }
        if (leq(y, qi, ctx)) {
            if (value) throw Error(ErrorCode::MultipleOnes, "two spectral projectors absorb the selector");
            value = sr.eigenvalues[i];
        }
    }
    if (!value) throw Error(ErrorCode::NoOnes, "no spectral projector absorbs the selector");
    return *value;
}

namespace {

void record(LawReport& r, double residual, double tol, const std::string& what) {
    ++r.checks;
    r.max_residual = std::max(r.max_residual, residual);
    if (residual > tol) {
        r.pass = false;
        if (r.violations.size() < 8) {
            std::ostringstream os;
            os << what << " residual " << residual;
            r.violations.push_back(os.str());
        }
    }
}

bool in_spectrum(double value, const Operator& q, const ToleranceContext& ctx) {
    const SpectralResolution sr = spectral_resolution(q, ctx);
    return std::any_of(sr.eigenvalues.begin(), sr.eigenvalues.end(),
                       [&](double e) { return std::abs(e - value) <= 10 * ctx.atol; });
}

}  // namespace

LawReport check_faithful(const FunctionalValuation& v, const std::vector<FaithfulSample>& samples,
                         const ToleranceContext& ctx) {
    LawReport r;
    const double tol = 10 * ctx.atol;
    for (const auto& s : samples) {
        const double vq = valuation_eval(v, s.q, ctx);
        const double vs = valuation_eval(v, s.s, ctx);
        const double vlin = valuation_eval(v, s.a * s.q + s.s, ctx);
        const double vsq = valuation_eval(v, s.q * s.q, ctx);
        record(r, std::abs(vlin - (s.a * vq + vs)), tol, "linearity");
        record(r, std::abs(vsq - vq * vq), tol, "squaring");
        record(r, in_spectrum(vq, s.q, ctx) ? 0.0 : 1.0, tol, "spectrum membership");
    }
    return r;
}

FunctionalReport check_functional(const FunctionalValuation& v, const Operator& target,
                                  const std::function<Operator(int)>& sequence, int terms,
                                  const ToleranceContext& ctx) {
    if (terms < 1) throw Error(ErrorCode::PreconditionViolated, "need at least one term");
    FunctionalReport r;
    r.terms = static_cast<std::size_t>(terms);
    const double vf = valuation_eval(v, target, ctx);
    const Operator& y = v.selector().matrix();
    const double tr_y = y.trace().real();

    std::vector<double> distance(static_cast<std::size_t>(terms));
    for (int n = 1; n <= terms; ++n) {
        const Operator fn = sequence(n);
        require_same_dim(fn, target, "check_functional");
        const double dist = op_norm(fn - target);
        distance[static_cast<std::size_t>(n - 1)] = dist;
        const double vn = valuation_eval(v, fn, ctx);
        r.max_bound_excess = std::max(r.max_bound_excess, std::abs(vn - vf) - dist);
        // F_n Y = q_n Y identifies the value independently of the spectral search.
        const double qn = (y * fn * y).trace().real() / tr_y;
        r.max_mechanism_residual = std::max({r.max_mechanism_residual, op_norm(fn * y - qn * y), std::abs(qn - vn)});
        if (n == terms) {
            r.final_distance = dist;
            r.final_deviation = std::abs(vn - vf);
        }
    }

    const std::size_t half = distance.size() / 2;
    bool settling = true;
    for (std::size_t i = half + 1; i < distance.size(); ++i) {
        settling = settling && distance[i] <= distance[i - 1] + ctx.atol;
    }
    const bool converging = r.final_distance <= ctx.atol || (settling && r.final_distance < distance.front());
    if (!converging) throw Error(ErrorCode::SequenceNotConvergent, "||F_n - F|| does not decrease towards 0");

    const double tol = 10 * ctx.atol;
    r.pass = r.max_bound_excess <= tol && r.max_mechanism_residual <= tol &&
             r.final_deviation <= r.final_distance + tol;
    return r;
}

// ---------------------------------------------------------------------------

namespace {

void require_image_in_span(const XFormSpec& spec, const DensityState& state, const ToleranceContext& ctx) {
    if (spec.dim() != state.dim()) throw Error(ErrorCode::DimensionMismatch, "X family and state dimensions differ");
    const Operator& w = state.matrix();
    if (op_norm(spec.support().matrix() * w - w) > ctx.atol) {
        throw Error(ErrorCode::IdealMismatch, "span of the X family does not contain the image of W");
    }
}

}  // namespace

IdealSpec IdealSpec::make(XFormSpec spec, DensityState state, const ToleranceContext& ctx) {
    require_image_in_span(spec, state, ctx);
    bool exact = true;
    for (const auto& x : spec.members()) {
        exact = exact && (x.matrix() * state.matrix()).trace().real() > ctx.atol;
    }
    return IdealSpec(std::move(spec), std::move(state), exact);
}

double StatisticsMeasure::total() const {
    double t = 0.0;
    for (double w : weights_) t += w;
    return t;
}

double StatisticsMeasure::measure_of(const Projection& p, const ToleranceContext& ctx) const {
    double mu = 0.0;
    for (std::size_t k = 0; k < spec_.size(); ++k) {
        const Operator& y = spec_.members()[k].matrix();
        if (op_norm(p.matrix() * y - y) <= ctx.atol) mu += weights_[k];
    }
    return mu;
}

StatisticsMeasure build_measure(const XFormSpec& spec, const DensityState& state, const ToleranceContext& ctx) {
    require_image_in_span(spec, state, ctx);
    std::vector<double> weights;
    weights.reserve(spec.size());
    for (const auto& y : spec.members()) {
        weights.push_back(std::max(0.0, (y.matrix() * state.matrix()).trace().real()));
    }
    return StatisticsMeasure(spec, state, std::move(weights));
}

namespace {

Operator selection_projector(const Operator& a, const std::vector<double>& selection, const ToleranceContext& ctx) {
    const SpectralResolution sr = spectral_resolution(a, ctx);
    Operator p = zeros(static_cast<std::size_t>(a.rows()));
    for (std::size_t i = 0; i < sr.size(); ++i) {
        const bool chosen = std::any_of(selection.begin(), selection.end(), [&](double s) {
            return std::abs(s - sr.eigenvalues[i]) <= ctx.eig_cluster_tol;
        });
        if (chosen) p += sr.projectors[i].matrix();
    }
    return p;
}

bool selected(double value, const std::vector<double>& selection, const ToleranceContext& ctx) {
    return std::any_of(selection.begin(), selection.end(),
                       [&](double s) { return std::abs(s - value) <= ctx.eig_cluster_tol; });
}

}  // namespace

StatisticsReport verify_statistics(const StatisticsMeasure& measure, const std::vector<Operator>& family,
                                   const std::vector<std::vector<double>>& selections,
                                   const ToleranceContext& ctx) {
    if (family.size() != selections.size()) {
        throw Error(ErrorCode::PreconditionViolated, "one eigenvalue selection per observable is required");
    }
    const auto predicate = DefiniteSetPredicate::x_form(measure.spec());
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (!extension_membership(predicate, family[i], ctx)) {
            throw Error(ErrorCode::NotInExtension, "observable lies outside the extension of d");
        }
        for (std::size_t j = 0; j < i; ++j) {
            const Operator c = family[i] * family[j] - family[j] * family[i];
            if (op_norm(c) > ctx.atol * std::max(1.0, op_norm(family[i]) * op_norm(family[j]))) {
                throw Error(ErrorCode::NotCommuting, "family members do not commute");
            }
        }
    }

    const std::size_t n = measure.state().dim();
    Operator joint = identity(n);
    for (std::size_t i = 0; i < family.size(); ++i) joint = joint * selection_projector(family[i], selections[i], ctx);

    StatisticsReport r;
    r.quantum = (joint * measure.state().matrix()).trace().real();

    const auto valuations = all_valuations(measure.spec());
    for (std::size_t k = 0; k < valuations.size(); ++k) {
        bool all = true;
        for (std::size_t i = 0; i < family.size() && all; ++i) {
            all = selected(valuation_eval(valuations[k], family[i], ctx), selections[i], ctx);
        }
        if (all) r.measure += measure.weights()[k];
    }
    r.difference = std::abs(r.quantum - r.measure);
    r.pass = r.difference <= kProbabilityTolerance;
    return r;
}

AdditivityReport check_countable_additivity(const StatisticsMeasure& measure, const std::vector<Projection>& family,
                                            const ToleranceContext& ctx) {
    if (family.empty()) throw Error(ErrorCode::PreconditionViolated, "empty family");
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (!xform_membership(measure.spec(), family[i], ctx)) throw Error(ErrorCode::NotInD, "family member outside d");
        for (std::size_t j = 0; j < i; ++j) {
            if (!meet_exact(family[i], family[j], ctx).is_zero(ctx)) {
                throw Error(ErrorCode::NotDisjoint, "family members have a nonzero meet");
            }
        }
    }
    Projection joined = family.front();
    Operator sum = family.front().matrix();
    AdditivityReport r;
    r.sum_of_measures = measure.measure_of(family.front(), ctx);
    for (std::size_t i = 1; i < family.size(); ++i) {
        joined = join(joined, family[i], ctx);
        sum += family[i].matrix();
        r.sum_of_measures += measure.measure_of(family[i], ctx);
    }
    r.measure_of_join = measure.measure_of(joined, ctx);
    const Operator& w = measure.state().matrix();
    r.operator_residual = op_norm(joined.matrix() * w - sum * w);
    r.pass = std::abs(r.measure_of_join - r.sum_of_measures) <= kProbabilityTolerance &&
             r.operator_residual <= ctx.atol;
    return r;
}

}  // namespace modal
