// tscheck: run scenario files, fuzz the inequality checks, replay fuzz trials.
//
// Exit status: 0 when every check holds, 1 when any check fails, 2 on bad
// input.

#include "tscalc/error.hpp"
#include "tscalc/harness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_input = 2;

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw tsc::error(tsc::errc::spec_error, "cannot open " + path + " for writing");
    out << text;
}

int run_check(const std::string& spec_path, const std::string& format, const std::string& out_path)
{
    std::ifstream in(spec_path);
    if (!in) {
        std::cerr << "tscheck: cannot read " << spec_path << "\n";
        return exit_input;
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "tscheck: " << spec_path << ": " << e.what() << "\n";
        return exit_input;
    }
    const tsc::scenario_spec spec = tsc::scenario_from_json(j);
    const auto reports = tsc::run_scenario(spec);
    write_output(out_path, tsc::emit_report(reports, format == "csv" ? tsc::report_format::csv
                                                                      : tsc::report_format::json));
    const bool all_hold =
        std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.holds; });
    return all_hold ? exit_ok : exit_violation;
}

int run_fuzz(const tsc::fuzz_config& cfg, const std::string& out_path)
{
    const tsc::fuzz_summary summary = tsc::fuzz(cfg);
    write_output(out_path, tsc::dump_json(tsc::summary_to_json(cfg, summary)) + "\n");
    return summary.violations == 0 && summary.errors == 0 ? exit_ok : exit_violation;
}

int run_replay(const tsc::fuzz_config& cfg, std::uint64_t trial, const std::string& format)
{
    const tsc::scenario_spec spec = tsc::generate_trial(cfg, trial);
    const auto reports = tsc::run_scenario(spec);
    if (format == "csv") {
        std::cout << tsc::emit_report(reports, tsc::report_format::csv);
    } else {
        nlohmann::ordered_json j;
        j["seed"] = cfg.seed;
        j["trial"] = trial;
        j["scenario"] = tsc::scenario_to_json(spec);
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : reports)
            arr.push_back(tsc::report_to_json(r));
        j["reports"] = arr;
        std::cout << tsc::dump_json(j) << "\n";
    }
    const bool all_hold =
        std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.holds; });
    return all_hold ? exit_ok : exit_violation;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Time-scale calculus inequality checker"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string format = "json";
    std::string out_path;
    auto* check = app.add_subcommand("check", "Run a scenario file");
    check->add_option("--spec", spec_path, "Scenario JSON file")->required();
    check->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    check->add_option("--out", out_path, "Write the report here instead of stdout");

    tsc::fuzz_config fuzz_cfg;
    std::string fuzz_out;
    auto* fuzz = app.add_subcommand("fuzz", "Randomized checks over generated scales");
    fuzz->add_option("--seed", fuzz_cfg.seed, "Base seed")->required();
    fuzz->add_option("--trials", fuzz_cfg.trials, "Number of trials")->required();
    fuzz->add_option("--max-segments", fuzz_cfg.max_segments, "Components per scale");
    fuzz->add_option("--max-degree", fuzz_cfg.max_poly_degree, "Polynomial degree limit");
    fuzz->add_option("--out", fuzz_out, "Write the summary here instead of stdout");

    tsc::fuzz_config replay_cfg;
    std::uint64_t trial = 0;
    std::string replay_format = "json";
    auto* replay = app.add_subcommand("replay", "Re-run one fuzz trial");
    replay->add_option("--seed", replay_cfg.seed, "Base seed")->required();
    replay->add_option("--trial", trial, "Trial index")->required();
    replay->add_option("--max-segments", replay_cfg.max_segments, "Components per scale");
    replay->add_option("--max-degree", replay_cfg.max_poly_degree, "Polynomial degree limit");
    replay->add_option("--format", replay_format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (*check)
            return run_check(spec_path, format, out_path);
        if (*fuzz)
            return run_fuzz(fuzz_cfg, fuzz_out);
        if (*replay)
            return run_replay(replay_cfg, trial, replay_format);
    } catch (const tsc::error& e) {
        std::cerr << "tscheck: " << e.what() << "\n";
        return exit_input;
    }
    return exit_input;
}
