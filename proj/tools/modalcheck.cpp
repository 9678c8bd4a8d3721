// modalcheck: command-line front end for the modal toolkit.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "modal/error.hpp"
#include "modal/report.hpp"

namespace {

struct Overrides {
    std::optional<double> atol;
    std::optional<double> eig;
    void apply(modal::ToleranceContext& ctx) const {
        if (atol) ctx.atol = *atol;
        if (eig) ctx.eig_cluster_tol = *eig;
        ctx.validate();
    }
};

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "modalcheck: cannot write '" << out_path << "'\n";
        return modal::kExitStructuralError;
    }
    out << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Definite-valued observable sets for modal interpretations: closure, quasiBoolean and statistics checks"};
    app.require_subcommand(1);

    Overrides overrides;
    app.add_option("--tolerance-atol", overrides.atol, "absolute tolerance override")->check(CLI::PositiveNumber);
    app.add_option("--tolerance-eig", overrides.eig, "eigenvalue clustering tolerance override")->check(CLI::PositiveNumber);

    const std::map<std::string, modal::ReportFormat> formats{{"json", modal::ReportFormat::Json},
                                                             {"text", modal::ReportFormat::Text}};

    std::string config_path, out_path;
    modal::ReportFormat format = modal::ReportFormat::Json;
    std::optional<std::uint64_t> seed;
    auto* analyze = app.add_subcommand("analyze", "run the checks listed in a configuration file");
    analyze->add_option("--config", config_path, "configuration file")->required();
    analyze->add_option("--format", format, "json or text")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    analyze->add_option("--seed", seed, "override the configuration seed");
    analyze->add_option("--out", out_path, "write the report to this file");

    std::string demo_name;
    std::uint64_t demo_seed = 0;
    modal::ReportFormat demo_format = modal::ReportFormat::Text;
    auto* demo = app.add_subcommand("demo", "run a standalone no-go demonstration");
    demo->add_option("name", demo_name, "spin, h2-obstruction or h2-commutant")
        ->required()
        ->check(CLI::IsMember({"spin", "h2-obstruction", "h2-commutant"}));
    demo->add_option("--seed", demo_seed, "sampling seed");
    demo->add_option("--format", demo_format, "json or text")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : modal::kExitStructuralError;
    }

    try {
        if (analyze->parsed()) {
            modal::AnalysisConfig config = modal::load_config_file(config_path);
            overrides.apply(config.tolerances);
            if (seed) config.seed = *seed;
            const modal::AnalysisReport report = modal::run_analysis(config);
            if (const int rc = emit(modal::render_report(report, format), out_path); rc != 0) return rc;
            return report.all_passed() ? modal::kExitPass : modal::kExitCheckFailure;
        }
        modal::ToleranceContext ctx;
        overrides.apply(ctx);
        const modal::CheckResult r = modal::run_demo(demo_name, demo_seed, ctx);
        std::cout << modal::render_check(r, demo_format);
        return r.status == modal::CheckStatus::Fail ? modal::kExitCheckFailure : modal::kExitPass;
    } catch (const modal::Error& e) {
        std::cerr << "modalcheck: " << e.what() << "\n";
        return modal::kExitStructuralError;
    } catch (const std::exception& e) {
        std::cerr << "modalcheck: " << e.what() << "\n";
        return modal::kExitStructuralError;
    }
}
