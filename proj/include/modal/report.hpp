#pragma once

// Configuration ingestion, analysis orchestration and report rendering.
//
// Complex numbers are serialized as [re, im] pairs and matrices as row-major
// nested arrays of such pairs. Reports carry a schema tag so consumers can
// reject formats they do not understand.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "modal/interpretation_rules.hpp"
#include "modal/matrix_core.hpp"

namespace modal {

inline constexpr std::string_view kReportSchema = "modalcheck-report/1";
inline constexpr std::string_view kConfigSchema = "modalcheck-config/1";

struct SampleSizes {
    std::size_t closure = 200;
    std::size_t families = 50;
    std::size_t additivity = 20;
};

struct AnalysisConfig {
    std::size_t dimension = 0;
    std::optional<Operator> density;  // absent only for demos-only runs or when derived from psi
    Rule rule = Rule::Clifton;
    std::optional<BubRuleInput> bub;
    std::vector<std::string> checks;
    std::uint64_t seed = 0;
    ToleranceContext tolerances;
    SampleSizes samples;
};

/// Parses and validates configuration text. Throws ParseError for malformed
/// JSON and ValidationError (message starts with the field path) otherwise.
AnalysisConfig load_config_text(std::string_view text);
AnalysisConfig load_config_file(const std::string& path);
nlohmann::json config_to_json(const AnalysisConfig& config);

enum class CheckStatus { Pass, Fail, NotApplicable };
std::string_view to_string(CheckStatus s) noexcept;

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;
    double residual = 0.0;
    std::map<std::string, double> metrics;
    std::optional<Operator> witness;

    bool operator==(const CheckResult&) const = default;
};

struct SpectrumEntry {
    double eigenvalue = 0.0;
    std::size_t multiplicity = 0;
    bool operator==(const SpectrumEntry&) const = default;
};

struct AnalysisReport {
    std::string schema{kReportSchema};
    nlohmann::json config;
    std::vector<SpectrumEntry> spectrum;
    std::vector<Operator> x_list;
    std::vector<CheckResult> checks;
    std::vector<CheckResult> demos;

    bool all_passed() const;
    bool operator==(const AnalysisReport& other) const;
};

/// Runs the requested checks in the fixed order closure, quasiboolean,
/// statistics, additivity, demos. Each check draws from its own seeded stream.
/// Check failures are recorded in the report; only structural errors throw.
AnalysisReport run_analysis(const AnalysisConfig& config);

/// Standalone demos: "spin", "h2-obstruction", "h2-commutant".
CheckResult run_demo(std::string_view name, std::uint64_t seed, const ToleranceContext& ctx);

enum class ReportFormat { Json, Text };

nlohmann::json report_to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const nlohmann::json& j);
std::string render_report(const AnalysisReport& report, ReportFormat format);
std::string render_check(const CheckResult& check, ReportFormat format);

nlohmann::json matrix_to_json(const Operator& m);
Operator matrix_from_json(const nlohmann::json& j, const std::string& path);

/// Exit status contract: 0 all checks pass, 1 some check failed, 2 structural error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitStructuralError = 2;

}  // namespace modal
