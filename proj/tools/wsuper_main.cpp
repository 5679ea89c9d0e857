#include "wsuper/report.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

using nlohmann::json;

int main(int argc, char** argv) {
    CLI::App app{"finite W-superalgebra calculator"};
    app.require_subcommand(1);

    std::string spec_path, format = "json", out_path;
    std::vector<long> primes;
    auto* run = app.add_subcommand("run", "run a job specification");
    run->add_option("--spec", spec_path, "job specification (JSON)")->required();
    run->add_option("--format", format, "output format: json|text")
        ->check(CLI::IsMember({"json", "text"}));
    run->add_option("--out", out_path, "output path (default: stdout)");
    run->add_option("--p", primes, "prime(s) overriding the job specification");

    std::string diff_a, diff_b;
    auto* diff = app.add_subcommand("diff", "structural diff of two reports");
    diff->add_option("report", diff_a, "report JSON")->required();
    diff->add_option("fixture", diff_b, "fixture JSON")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        json spec;
        try {
            std::ifstream in(spec_path);
            if (!in) throw std::runtime_error("cannot open " + spec_path);
            in >> spec;
        } catch (const std::exception& ex) {
            std::cerr << "spec error: " << ex.what() << "\n";
            return 2;
        }
        if (!primes.empty()) spec["primes"] = primes;
        auto result = wsuper::run_job(spec);
        std::string payload = (format == "text") ? wsuper::render_text(result.report)
                                                 : result.report.dump(2) + "\n";
        if (out_path.empty()) {
            std::cout << payload;
        } else {
            std::ofstream out(out_path);
            if (!out) {
                std::cerr << "cannot write " << out_path << "\n";
                return 3;
            }
            out << payload;
        }
        if (result.exit_code() != 0)
            std::cerr << "completed with " << (result.spec_error ? "spec" : "task")
                      << " errors\n";
        return result.exit_code();
    }

    // diff
    json a, b;
    try {
        std::ifstream fa(diff_a), fb(diff_b);
        if (!fa) throw std::runtime_error("cannot open " + diff_a);
        if (!fb) throw std::runtime_error("cannot open " + diff_b);
        fa >> a;
        fb >> b;
    } catch (const std::exception& ex) {
        std::cerr << "diff error: " << ex.what() << "\n";
        return 2;
    }
    auto diffs = wsuper::golden_compare(a, b);
    for (auto& d : diffs) std::cout << d << "\n";
    return diffs.empty() ? 0 : 1;
}
