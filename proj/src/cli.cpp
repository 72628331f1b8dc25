#include "pk/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pk/dsl.hpp"

namespace pk {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact verifier for para-Kenmotsu structures and eta-Ricci solitons", "pkverify"};
    app.require_subcommand(1);

    std::string file;
    std::string format = "text";
    std::vector<std::string> select;
    std::string kind;
    int n = 1;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json-like"}));
    };
    CLI::App* check = app.add_subcommand("check", "Run the full check suite on a .pk file");
    check->add_option("file", file, "Manifold definition")->required();
    check->add_option("--select", select, "Checks or groups to report")->delimiter(',');
    add_format(check);
    CLI::App* solve = app.add_subcommand("solve", "Solve the eta-Ricci soliton equation");
    solve->add_option("file", file, "Manifold definition")->required();
    add_format(solve);
    CLI::App* condition = app.add_subcommand("condition", "Evaluate one curvature condition");
    condition->add_option("file", file, "Manifold definition")->required();
    condition->add_option("--kind", kind, "R.S, S.R, W2.S or S.W2")
        ->required()
        ->check(CLI::IsMember({"R.S", "S.R", "W2.S", "S.W2"}));
    add_format(condition);
    CLI::App* factors = app.add_subcommand("factors", "Symbolic prefactors of the four conditions");
    factors->add_option("--n", n, "Half of dimension minus one")->required()->check(CLI::Range(1, 6));
    add_format(factors);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input_error;
    }

    const ReportFormat fmt = format == "json-like" ? ReportFormat::json : ReportFormat::text;
    try {
        SuiteResult result;
        if (*factors) {
            result = run_factor_suite(n);
        } else {
            ManifoldDocument doc = parse_manifold(read_file(file));
            std::set<std::string> selection(select.begin(), select.end());
            if (*solve) selection = {"soliton"};
            if (*condition) selection = {"condition." + kind};
            result = run_suite(doc, selection);
        }
        out << emit_report(result, fmt);
        return result.failed() ? exit_check_failed : exit_ok;
    } catch (const ParseError& e) {
        err << file << ":" << e.what() << "\n";
        return exit_input_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    }
}

}  // namespace pk
