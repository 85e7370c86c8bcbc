#include <folbound/blowup.hpp>
#include <folbound/cli.hpp>
#include <folbound/errors.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

namespace fs = std::filesystem;
using namespace folbound;

namespace
{

struct Result
{
    int code = 0; // 0 pass, 1 verdict failed, 2 input or precision error
    std::string text;
    Json json;
    std::string dot;
};

Result run_case(const std::string &path, const std::string &command, const std::string &format, bool want_dot)
{
    Result r;
    try {
        const CaseFile c = load_case(path);
        const Outcome o = run_command(c, command, want_dot ? &r.dot : nullptr);
        r.code = o.pass ? 0 : 1;
        r.json = o.report;
        const std::string f = format.empty() ? c.report_format : format;
        r.text = f == "json" ? o.report.dump(2) + "\n" : render_text(o.report);
    } catch (const Error &e) {
        r.code = 2;
        r.json = {{"case", path}, {"command", command}, {"error", error_kind_name(e.kind())}, {"message", e.what()}};
        r.text = std::string("error (") + error_kind_name(e.kind()) + "): " + e.what() + "\n";
    }
    return r;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact bounds for foliations with a singular invariant curve"};
    std::string command;
    std::string case_path;
    std::string format;
    std::string dot_path;
    std::string batch_dir;
    std::vector<std::string> commands = command_names();
    commands.push_back("all");
    app.add_option("command", command, "command to run")->required()->check(CLI::IsMember(commands));
    app.add_option("case", case_path, "case file (JSON)");
    app.add_option("--report", format, "report format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--dot", dot_path, "write the tree of the command as DOT");
    app.add_option("--batch", batch_dir, "run every *.json case of a directory")->check(CLI::ExistingDirectory);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        (void)max_order();
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (batch_dir.empty()) {
        if (case_path.empty()) {
            std::cerr << "error: a case file or --batch is required\n";
            return 2;
        }
        const Result r = run_case(case_path, command, format, !dot_path.empty());
        (r.code == 2 ? std::cerr : std::cout) << r.text;
        if (!dot_path.empty() && r.code != 2) {
            std::ofstream(dot_path) << r.dot;
        }
        return r.code;
    }

    std::vector<std::string> paths;
    for (const auto &e : fs::directory_iterator(batch_dir)) {
        if (e.is_regular_file() && e.path().extension() == ".json") {
            paths.push_back(e.path().string());
        }
    }
    std::sort(paths.begin(), paths.end());
    std::vector<std::future<Result>> jobs;
    for (const auto &p : paths) {
        jobs.push_back(std::async(std::launch::async, run_case, p, command, format, false));
    }
    int code = 0;
    Json all = Json::array();
    for (auto &j : jobs) {
        Result r = j.get();
        code = std::max(code, r.code);
        if (format == "json") {
            all.push_back(std::move(r.json));
        } else {
            std::cout << r.text << "\n";
        }
    }
    if (format == "json") {
        std::cout << all.dump(2) << "\n";
    }
    return code;
}
