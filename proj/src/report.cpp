#include "modal/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "modal/nogo_demos.hpp"
#include "modal/operator_algebra.hpp"
#include "modal/valuation_engine.hpp"
#include "modal/workloads.hpp"

namespace modal {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::ValidationError, path + ": " + what);
}

Complex complex_from_json(const json& j, const std::string& path) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        invalid(path, "expected a number or an [re, im] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Vector vector_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) invalid(path, "expected a nonempty array of [re, im] pairs");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], path + "[" + std::to_string(i) + "]");
    }
    return v;
}

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

template <typename T>
T read_or(const json& obj, const char* key, T fallback, const std::string& path) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        invalid(path + "." + key, "has the wrong type");
    }
}

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names{"closure", "quasiboolean", "statistics", "additivity", "demos"};
    return names;
}

}  // namespace

json matrix_to_json(const Operator& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Operator matrix_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) invalid(path, "expected a nonempty array of rows");
    const std::size_t n = j.size();
    Operator m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const std::string row_path = path + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != n) invalid(row_path, "matrix must be square");
        for (std::size_t k = 0; k < n; ++k) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                complex_from_json(j[i][k], row_path + "[" + std::to_string(k) + "]");
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Configuration

AnalysisConfig load_config_text(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    if (!j.is_object()) invalid("$", "configuration must be an object");

    AnalysisConfig c;
    if (j.contains("schema") && j["schema"] != kConfigSchema) invalid("schema", "unsupported configuration schema");

    c.dimension = read_or<std::size_t>(j, "dimension", 0, "$");
    c.seed = read_or<std::uint64_t>(j, "seed", 0, "$");
    c.rule = parse_rule(read_or<std::string>(j, "rule", "clifton", "$"));

    if (j.contains("checks")) {
        if (!j["checks"].is_array()) invalid("checks", "expected an array of names");
        for (const auto& item : j["checks"]) {
            if (!item.is_string()) invalid("checks", "entries must be strings");
            const auto name = item.get<std::string>();
            if (std::find(known_checks().begin(), known_checks().end(), name) == known_checks().end()) {
                invalid("checks", "unknown check '" + name + "'");
            }
            if (std::find(c.checks.begin(), c.checks.end(), name) == c.checks.end()) c.checks.push_back(name);
        }
    } else {
        c.checks = known_checks();
    }

    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        if (!t.is_object()) invalid("tolerances", "expected an object");
        c.tolerances.atol = read_or<double>(t, "atol", c.tolerances.atol, "tolerances");
        c.tolerances.eig_cluster_tol = read_or<double>(t, "eig_cluster_tol", c.tolerances.eig_cluster_tol, "tolerances");
        c.tolerances.max_iter = read_or<int>(t, "max_iter", c.tolerances.max_iter, "tolerances");
    }
    try {
        c.tolerances.validate();
    } catch (const Error& e) {
        invalid("tolerances", e.what());
    }

    if (j.contains("samples")) {
        const json& s = j["samples"];
        if (!s.is_object()) invalid("samples", "expected an object");
        c.samples.closure = read_or<std::size_t>(s, "closure", c.samples.closure, "samples");
        c.samples.families = read_or<std::size_t>(s, "families", c.samples.families, "samples");
        c.samples.additivity = read_or<std::size_t>(s, "additivity", c.samples.additivity, "samples");
    }

    if (j.contains("density")) {
        const json& d = j["density"];
        if (d.is_object()) {
            if (!d.contains("eigenvalues") || !d.contains("eigenvectors")) {
                invalid("density", "eigen form needs 'eigenvalues' and 'eigenvectors'");
            }
            const json& vals = d["eigenvalues"];
            const json& vecs = d["eigenvectors"];
            if (!vals.is_array() || !vecs.is_array() || vals.size() != vecs.size() || vals.empty()) {
                invalid("density", "eigenvalues and eigenvectors must be arrays of equal length");
            }
            Operator w;
            for (std::size_t k = 0; k < vals.size(); ++k) {
                const std::string path = "density.eigenvectors[" + std::to_string(k) + "]";
                if (!vals[k].is_number()) invalid("density.eigenvalues[" + std::to_string(k) + "]", "expected a number");
                const Vector v = vector_from_json(vecs[k], path);
                if (k == 0) w = Operator::Zero(v.size(), v.size());
                if (v.size() != w.rows()) invalid(path, "eigenvector length differs");
                if (std::abs(v.norm() - 1.0) > c.tolerances.atol) invalid(path, "eigenvector is not normalized");
                w += vals[k].get<double>() * (v * v.adjoint());
            }
            c.density = w;
        } else {
            c.density = matrix_from_json(d, "density");
        }
    }

    if (c.rule == Rule::Bub) {
        if (!j.contains("bub") || !j["bub"].is_object()) invalid("bub", "rule 'bub' requires a 'bub' object");
        const json& b = j["bub"];
        if (!b.contains("psi")) invalid("bub.psi", "missing");
        if (!b.contains("observable")) invalid("bub.observable", "missing");
        BubRuleInput in{vector_from_json(b["psi"], "bub.psi"), matrix_from_json(b["observable"], "bub.observable")};
        if (in.observable.rows() != in.psi.size()) invalid("bub.observable", "dimension differs from psi");
        if (std::abs(in.psi.norm() - 1.0) > c.tolerances.atol) invalid("bub.psi", "not a unit vector");
        if (!is_self_adjoint(in.observable, c.tolerances)) invalid("bub.observable", "not self-adjoint");
        if (!c.density) c.density = in.psi * in.psi.adjoint();
        c.bub = std::move(in);
    }

    const bool demos_only = c.checks.size() == 1 && c.checks.front() == "demos";
    if (!c.density && !demos_only) invalid("density", "missing");
    if (c.density) {
        if (c.dimension == 0) c.dimension = static_cast<std::size_t>(c.density->rows());
        if (static_cast<std::size_t>(c.density->rows()) != c.dimension) invalid("density", "size differs from 'dimension'");
        try {
            (void)DensityState::make(*c.density, c.tolerances);
        } catch (const Error& e) {
            invalid("density", e.what());
        }
    }
    return c;
}

AnalysisConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open configuration file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_config_text(ss.str());
}

json config_to_json(const AnalysisConfig& c) {
    json j;
    j["schema"] = kConfigSchema;
    j["dimension"] = c.dimension;
    j["rule"] = std::string(to_string(c.rule));
    j["checks"] = c.checks;
    j["seed"] = c.seed;
    j["tolerances"] = {{"atol", c.tolerances.atol},
                       {"eig_cluster_tol", c.tolerances.eig_cluster_tol},
                       {"max_iter", c.tolerances.max_iter}};
    j["samples"] = {{"closure", c.samples.closure},
                    {"families", c.samples.families},
                    {"additivity", c.samples.additivity}};
    if (c.density) j["density"] = matrix_to_json(*c.density);
    if (c.bub) j["bub"] = {{"psi", vector_to_json(c.bub->psi)}, {"observable", matrix_to_json(c.bub->observable)}};
    return j;
}

// ---------------------------------------------------------------------------
// Analysis

std::string_view to_string(CheckStatus s) noexcept {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::NotApplicable: return "not-applicable";
    }
    return "unknown";
}

bool AnalysisReport::all_passed() const {
    const auto ok = [](const CheckResult& c) { return c.status != CheckStatus::Fail; };
    return std::all_of(checks.begin(), checks.end(), ok) && std::all_of(demos.begin(), demos.end(), ok);
}

bool AnalysisReport::operator==(const AnalysisReport& other) const {
    return schema == other.schema && config == other.config && spectrum == other.spectrum &&
           x_list == other.x_list && checks == other.checks && demos == other.demos;
}

namespace {

// Independent stream per check so that enabling or reordering checks never
// changes another check's numbers.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CheckStatus status_of(bool pass) { return pass ? CheckStatus::Pass : CheckStatus::Fail; }

CheckResult closure_check(const DefiniteSetPredicate& d, const AnalysisConfig& c) {
    const ClosureReport r = star_closure_check(d, c.samples.closure, stream_seed(c.seed, 1), c.tolerances);
    CheckResult out{"closure", status_of(r.pass), r.detail, static_cast<double>(r.samples - r.agreements), {}, {}};
    out.metrics = {{"samples", static_cast<double>(r.samples)},
                   {"agreements", static_cast<double>(r.agreements)},
                   {"members_sampled", static_cast<double>(r.members_sampled)},
                   {"commutant_dim", static_cast<double>(r.commutant_dim)},
                   {"double_commutant_dim", static_cast<double>(r.double_commutant_dim)}};
    if (r.witness) out.witness = r.witness->matrix();
    return out;
}

CheckResult h2_obstruction_check(std::uint64_t seed, const ToleranceContext& ctx) {
    Rng rng(seed);
    const Projection p = rank_one(random_unit_vector(2, rng));
    const Projection q = rank_one(random_unit_vector(2, rng));
    const H2ObstructionReport r = h2_quasiboolean_obstruction(p, q, ctx);
    CheckResult out{"h2-obstruction", status_of(r.obstruction_confirmed), r.detail, 0.0, {}, {}};
    out.metrics = {{"lattice_size", static_cast<double>(r.lattice_size)},
                   {"homomorphisms", static_cast<double>(r.homomorphism_count)},
                   {"quasiboolean_ideals", static_cast<double>(r.quasi_boolean_ideals)}};
    return out;
}

CheckResult quasiboolean_check(const DefiniteSetPredicate& d, const DensityState& state, const AnalysisConfig& c) {
    const ToleranceContext& ctx = c.tolerances;
    if (d.kind() != "x-form") {
        CheckResult na = h2_obstruction_check(stream_seed(c.seed, 2), ctx);
        na.name = "quasiboolean";
        na.status = CheckStatus::NotApplicable;
        na.detail = "the full lattice is not of X-form; a sampled two-dimensional pair already admits no "
                    "two-valued homomorphism (" + na.detail + ")";
        return na;
    }
    const XFormSpec& spec = std::get<XFormSpec>(d.carrier());
    Rng rng(stream_seed(c.seed, 2));
    const FiniteLattice l = xform_sublattice(spec, rng, kSublatticeBound, ctx);
    const std::size_t bound = std::max(kExhaustiveBound, l.size());
    const QuasiBooleanResult by_span = check_quasiboolean(l, xform_ideal(l, spec, ctx), bound);
    const QuasiBooleanResult by_state = check_quasiboolean(l, state_ideal(l, state, ctx), bound);
    const bool pass = by_span.quasi_boolean && by_state.quasi_boolean && check_orthomodular(l);

    std::ostringstream os;
    os << l.size() << "-element sublattice, " << atom_indices(l).size() << " atoms, "
       << by_span.homomorphism_count << " homomorphisms; X-span ideal "
       << (by_span.quasi_boolean ? "quasiBoolean" : "not quasiBoolean") << ", state ideal "
       << (by_state.quasi_boolean ? "quasiBoolean" : "not quasiBoolean");
    CheckResult out{"quasiboolean", status_of(pass), os.str(), 0.0, {}, {}};
    out.metrics = {{"lattice_size", static_cast<double>(l.size())},
                   {"homomorphisms", static_cast<double>(by_span.homomorphism_count)},
                   {"atom_set_size", by_span.atom_set ? static_cast<double>(by_span.atom_set->size()) : 0.0}};
    if (by_span.unreachable_element) out.witness = l[*by_span.unreachable_element].matrix();
    return out;
}

CheckResult statistics_check(const DefiniteSetPredicate& d, const DensityState& state, const AnalysisConfig& c) {
    if (d.kind() != "x-form") {
        return {"statistics", CheckStatus::NotApplicable,
                "no atomic measure over valuations is defined for the full lattice", 0.0, {}, {}};
    }
    const ToleranceContext& ctx = c.tolerances;
    const XFormSpec& spec = std::get<XFormSpec>(d.carrier());
    StatisticsMeasure mu = [&] {
        try {
            return build_measure(spec, state, ctx);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::IdealMismatch) throw;
            throw;
        }
    }();
    Rng rng(stream_seed(c.seed, 3));
    std::size_t checked = 0, passed = 0;
    double worst = 0.0;
    for (std::size_t f = 0; f < c.samples.families; ++f) {
        const std::vector<Operator> family = commuting_family(spec, 3, rng);
        const auto selections = random_selections(family, rng, ctx);
        for (std::size_t arity = 1; arity <= family.size(); ++arity) {
            const std::vector<Operator> sub(family.begin(), family.begin() + static_cast<std::ptrdiff_t>(arity));
            const std::vector<std::vector<double>> sel(selections.begin(),
                                                       selections.begin() + static_cast<std::ptrdiff_t>(arity));
            const StatisticsReport s = verify_statistics(mu, sub, sel, ctx);
            ++checked;
            if (s.pass) ++passed;
            worst = std::max(worst, s.difference);
        }
    }
    std::ostringstream os;
    os << passed << "/" << checked << " joint selections match; max |Prob_W - mu| = " << worst
       << "; total weight " << mu.total();
    CheckResult out{"statistics", status_of(passed == checked && std::abs(mu.total() - 1.0) <= kProbabilityTolerance),
                    os.str(), worst, {}, {}};
    out.metrics = {{"checked", static_cast<double>(checked)},
                   {"passed", static_cast<double>(passed)},
                   {"total_weight", mu.total()}};
    return out;
}

CheckResult additivity_check(const DefiniteSetPredicate& d, const DensityState& state, const AnalysisConfig& c) {
    if (d.kind() != "x-form") {
        return {"additivity", CheckStatus::NotApplicable,
                "no atomic measure over valuations is defined for the full lattice", 0.0, {}, {}};
    }
    const ToleranceContext& ctx = c.tolerances;
    const XFormSpec& spec = std::get<XFormSpec>(d.carrier());
    const StatisticsMeasure mu = build_measure(spec, state, ctx);
    Rng rng(stream_seed(c.seed, 4));
    std::size_t passed = 0;
    double worst = 0.0;
    for (std::size_t f = 0; f < c.samples.additivity; ++f) {
        const AdditivityReport r = check_countable_additivity(mu, disjoint_family(spec, rng, ctx), ctx);
        if (r.pass) ++passed;
        worst = std::max({worst, std::abs(r.measure_of_join - r.sum_of_measures), r.operator_residual});
    }
    std::ostringstream os;
    os << passed << "/" << c.samples.additivity << " disjoint families additive; max residual " << worst;
    CheckResult out{"additivity", status_of(passed == c.samples.additivity), os.str(), worst, {}, {}};
    out.metrics = {{"families", static_cast<double>(c.samples.additivity)}, {"passed", static_cast<double>(passed)}};
    return out;
}

CheckResult existence_check(const DensityState& state, const AnalysisConfig& c) {
    const BubRuleInput* bub = c.bub ? &*c.bub : nullptr;
    const ExistenceReport r = positive_existence_demo(state, c.rule, bub, std::min<std::size_t>(c.samples.families, 20),
                                                      stream_seed(c.seed, 5), c.tolerances);
    std::ostringstream os;
    os << r.rule << ": closure " << (r.closure.pass ? "ok" : "FAILED") << ", quasiBoolean "
       << (r.quasi_boolean && r.quasi_boolean_state_ideal ? "ok" : "FAILED") << ", statistics "
       << r.statistics_passed << "/" << r.statistics_checked << ", ";
    if (r.incompatible_pair) {
        os << "non-commuting members of d exhibited (||[A,B]|| = " << r.incompatible_commutator << ")";
    } else {
        os << "no incompatible pair (null block has dimension < 2)";
    }
    CheckResult out{"positive-existence", status_of(r.pass), os.str(), r.max_statistics_difference, {}, {}};
    out.metrics = {{"lattice_size", static_cast<double>(r.lattice_size)},
                   {"statistics_checked", static_cast<double>(r.statistics_checked)},
                   {"incompatible_commutator", r.incompatible_commutator}};
    return out;
}

}  // namespace

CheckResult run_demo(std::string_view name, std::uint64_t seed, const ToleranceContext& ctx) {
    if (name == "spin") {
        const SpinDemoResult r = von_neumann_spin_demo(ctx);
        const bool pass = std::abs(r.min_residual - (std::sqrt(2.0) - 1.0)) <= 1e-12 && r.spectrum_error <= ctx.atol &&
                          std::all_of(r.assignments.begin(), r.assignments.end(),
                                      [](const SpinAssignment& a) { return a.residual > 0.0; });
        std::ostringstream os;
        os << std::setprecision(17) << "8 dispersion-free assignments, minimum |c - (a+b)/sqrt2| = " << r.min_residual
           << "; spectrum of (sx+sy)/sqrt2 = {" << r.diagonal_spectrum.front() << ", " << r.diagonal_spectrum.back()
           << "}";
        CheckResult out{"spin", status_of(pass), os.str(), r.min_residual, {}, {}};
        out.metrics = {{"min_residual", r.min_residual}, {"spectrum_error", r.spectrum_error}};
        for (const auto& a : r.assignments) {
            std::ostringstream key;
            key << "residual[" << (a.a > 0 ? '+' : '-') << (a.b > 0 ? '+' : '-') << (a.c > 0 ? '+' : '-') << "]";
            out.metrics[key.str()] = a.residual;
        }
        return out;
    }
    if (name == "h2-obstruction") {
        const Projection p = Projection::trusted(diag({1.0, 0.0}));
        Vector v(2);
        v << 1.0, 1.0;
        const H2ObstructionReport r = h2_quasiboolean_obstruction(p, rank_one(v), ctx);
        CheckResult out{"h2-obstruction", status_of(r.obstruction_confirmed), r.detail, 0.0, {}, {}};
        out.metrics = {{"lattice_size", static_cast<double>(r.lattice_size)},
                       {"homomorphisms", static_cast<double>(r.homomorphism_count)},
                       {"quasiboolean_ideals", static_cast<double>(r.quasi_boolean_ideals)}};
        return out;
    }
    if (name == "h2-commutant") {
        const Projection p = Projection::trusted(diag({1.0, 0.0}));
        Vector v(2);
        v << 1.0, 1.0;
        const H2CommutantReport r = h2_commutant_counterexample(p, rank_one(v), seed, ctx);
        std::ostringstream os;
        os << r.lattice_size << "-element lattice, dim d'' = " << r.double_commutant_dim
           << "; witness in restriction(d'') " << (r.witness_in_restriction ? "yes" : "no") << ", in d "
           << (r.witness_in_d ? "yes" : "no") << "; " << r.closure.detail;
        CheckResult out{"h2-commutant", status_of(r.counterexample_confirmed), os.str(), 0.0, {}, r.witness.matrix()};
        out.metrics = {{"lattice_size", static_cast<double>(r.lattice_size)},
                       {"double_commutant_dim", static_cast<double>(r.double_commutant_dim)}};
        return out;
    }
    throw Error(ErrorCode::ValidationError, "unknown demo '" + std::string(name) + "'");
}

AnalysisReport run_analysis(const AnalysisConfig& c) {
    c.tolerances.validate();
    AnalysisReport report;
    report.config = config_to_json(c);
    const auto wants = [&](const char* name) {
        return std::find(c.checks.begin(), c.checks.end(), name) != c.checks.end();
    };

    std::optional<DensityState> state;
    std::optional<DefiniteSetPredicate> d;
    if (c.density) {
        state = DensityState::make(*c.density, c.tolerances);
        for (std::size_t i = 0; i < state->spectral().size(); ++i) {
            report.spectrum.push_back({state->spectral().eigenvalues[i], state->spectral().projectors[i].rank()});
        }
        d = definite_set(c.rule, *state, c.bub ? &*c.bub : nullptr, c.tolerances);
        if (const auto* spec = std::get_if<XFormSpec>(&d->carrier())) {
            for (const auto& x : spec->members()) report.x_list.push_back(x.matrix());
        }
    }

    if (d) {
        if (wants("closure")) report.checks.push_back(closure_check(*d, c));
        if (wants("quasiboolean")) report.checks.push_back(quasiboolean_check(*d, *state, c));
        if (wants("statistics")) {
            try {
                report.checks.push_back(statistics_check(*d, *state, c));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::IdealMismatch) throw;
                report.checks.push_back({"statistics", CheckStatus::Fail, e.what(), 0.0, {}, {}});
            }
        }
        if (wants("additivity")) {
            try {
                report.checks.push_back(additivity_check(*d, *state, c));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::IdealMismatch) throw;
                report.checks.push_back({"additivity", CheckStatus::Fail, e.what(), 0.0, {}, {}});
            }
        }
    }
    if (wants("demos")) {
        report.demos.push_back(run_demo("spin", stream_seed(c.seed, 6), c.tolerances));
        report.demos.push_back(run_demo("h2-obstruction", stream_seed(c.seed, 7), c.tolerances));
        report.demos.push_back(run_demo("h2-commutant", stream_seed(c.seed, 8), c.tolerances));
        if (state && c.rule != Rule::Naive) {
            try {
                report.demos.push_back(existence_check(*state, c));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::IdealMismatch) throw;
                report.demos.push_back({"positive-existence", CheckStatus::Fail, e.what(), 0.0, {}, {}});
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

json check_to_json(const CheckResult& c) {
    json j;
    j["name"] = c.name;
    j["status"] = std::string(to_string(c.status));
    j["detail"] = c.detail;
    j["residual"] = c.residual;
    j["metrics"] = c.metrics;
    if (c.witness) j["witness"] = matrix_to_json(*c.witness);
    return j;
}

CheckStatus status_from_string(const std::string& s) {
    for (CheckStatus st : {CheckStatus::Pass, CheckStatus::Fail, CheckStatus::NotApplicable}) {
        if (s == to_string(st)) return st;
    }
    throw Error(ErrorCode::ParseError, "unknown check status '" + s + "'");
}

CheckResult check_from_json(const json& j) {
    CheckResult c;
    c.name = j.at("name").get<std::string>();
    c.status = status_from_string(j.at("status").get<std::string>());
    c.detail = j.at("detail").get<std::string>();
    c.residual = j.at("residual").get<double>();
    c.metrics = j.at("metrics").get<std::map<std::string, double>>();
    if (j.contains("witness")) c.witness = matrix_from_json(j["witness"], "witness");
    return c;
}

std::string format_matrix(const Operator& m, const std::string& indent) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        os << indent << "[";
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            const Complex z = m(i, k);
            os << (k ? "  " : " ") << std::setw(9) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::setw(8)
               << std::abs(z.imag()) << "i";
        }
        os << " ]\n";
    }
    return os.str();
}

std::string status_tag(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "PASS";
        case CheckStatus::Fail: return "FAIL";
        case CheckStatus::NotApplicable: return "N/A ";
    }
    return "????";
}

std::string check_text(const CheckResult& c) {
    std::ostringstream os;
    os << status_tag(c.status) << "  " << c.name << ": " << c.detail << "\n";
    if (!c.metrics.empty()) {
        os << std::setprecision(10);
        for (const auto& [k, v] : c.metrics) os << "        " << std::left << std::setw(28) << k << v << "\n";
    }
    if (c.witness && c.status == CheckStatus::Fail) os << "      witness:\n" << format_matrix(*c.witness, "        ");
    return os.str();
}

}  // namespace

json report_to_json(const AnalysisReport& r) {
    json j;
    j["schema"] = r.schema;
    j["config"] = r.config;
    json spectrum = json::array();
    for (const auto& s : r.spectrum) spectrum.push_back({{"eigenvalue", s.eigenvalue}, {"multiplicity", s.multiplicity}});
    j["spectrum"] = spectrum;
    json xs = json::array();
    for (const auto& x : r.x_list) xs.push_back(matrix_to_json(x));
    j["x_list"] = xs;
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(check_to_json(c));
    j["checks"] = checks;
    json demos = json::array();
    for (const auto& c : r.demos) demos.push_back(check_to_json(c));
    j["demos"] = demos;
    j["all_passed"] = r.all_passed();
    return j;
}

AnalysisReport report_from_json(const json& j) {
    try {
        AnalysisReport r;
        r.schema = j.at("schema").get<std::string>();
        if (r.schema != kReportSchema) throw Error(ErrorCode::ParseError, "unsupported report schema '" + r.schema + "'");
        r.config = j.at("config");
        for (const auto& s : j.at("spectrum")) {
            r.spectrum.push_back({s.at("eigenvalue").get<double>(), s.at("multiplicity").get<std::size_t>()});
        }
        for (const auto& x : j.at("x_list")) r.x_list.push_back(matrix_from_json(x, "x_list"));
        for (const auto& c : j.at("checks")) r.checks.push_back(check_from_json(c));
        for (const auto& c : j.at("demos")) r.demos.push_back(check_from_json(c));
        return r;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

std::string render_check(const CheckResult& check, ReportFormat format) {
    if (format == ReportFormat::Json) return check_to_json(check).dump(2) + "\n";
    return check_text(check);
}

std::string render_report(const AnalysisReport& r, ReportFormat format) {
    if (format == ReportFormat::Json) return report_to_json(r).dump(2) + "\n";

    std::ostringstream os;
    os << "modalcheck report (" << r.schema << ")\n";
    os << "rule: " << r.config.value("rule", std::string("?")) << "   dimension: " << r.config.value("dimension", 0)
       << "   seed: " << r.config.value("seed", 0) << "\n";
    if (!r.spectrum.empty()) {
        os << "\nspectrum of W\n";
        os << "  " << std::left << std::setw(24) << "eigenvalue" << "multiplicity\n";
        os << std::setprecision(12);
        for (const auto& s : r.spectrum) os << "  " << std::left << std::setw(24) << s.eigenvalue << s.multiplicity << "\n";
    }
    if (!r.x_list.empty()) {
        os << "\nX family (" << r.x_list.size() << " members)\n";
        for (std::size_t k = 0; k < r.x_list.size(); ++k) {
            os << "  X" << k + 1 << ":\n" << format_matrix(r.x_list[k], "    ");
        }
    }
    if (!r.checks.empty()) {
        os << "\nchecks\n";
        for (const auto& c : r.checks) os << check_text(c);
    }
    if (!r.demos.empty()) {
        os << "\ndemos\n";
        for (const auto& c : r.demos) os << check_text(c);
    }
    os << "\noverall: " << (r.all_passed() ? "all checks passed" : "some checks did not pass") << "\n";
    return os.str();
}

}  // namespace modal
