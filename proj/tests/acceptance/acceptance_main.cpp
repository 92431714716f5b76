// Prints one PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <sys/wait.h>

#include "ffk/verify.hpp"

namespace {

int run_cli(const std::string& cli, const std::string& args)
{
    const std::string cmd = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

void print(const ffk::verify::SuiteResult& r)
{
    std::printf("%s %s: %s (%.2f s", r.id.c_str(), r.pass() ? "PASS" : "FAIL", r.title.c_str(), r.seconds);
    if (r.time_limit > 0) std::printf(", limit %.0f s", r.time_limit);
    std::size_t failed = 0;
    for (const auto& c : r.checks) failed += c.pass ? 0 : 1;
    std::printf(", %zu/%zu checks pass)\n", r.checks.size() - failed, r.checks.size());
    if (!r.pass()) std::printf("    first failure: %s\n", r.first_failure().c_str());
}

}  // namespace

int main(int argc, char** argv)
{
    bool verbose = false;
    std::string cli;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--verbose") {
            verbose = true;
        } else if (arg == "--cli" && i + 1 < argc) {
            cli = argv[++i];
        }
    }

    auto suites = ffk::verify::run_suites("all");

    // AC7 is also exercised end to end: the CLI must exit 4 on each seeded defect.
    if (!cli.empty()) {
        for (auto& s : suites) {
            if (s.id != "AC7") continue;
            const int base = run_cli(cli, "fiber --p 5 --m 3");
            s.checks.push_back({"cli baseline exit 0", base == 0, "exit " + std::to_string(base)});
            for (const char* m : {"selfint", "adjacency", "multiplicity"}) {
                const int code = run_cli(cli, std::string("fiber --p 5 --m 3 --mutate ") + m);
                s.checks.push_back({std::string("cli --mutate ") + m + " exit 4", code == 4, "exit " + std::to_string(code)});
            }
        }
    }

    bool all = true;
    for (const auto& s : suites) {
        print(s);
        if (verbose) {
            for (const auto& c : s.checks) {
                std::printf("    [%s] %s: %s\n", c.pass ? "ok" : "FAIL", c.name.c_str(), c.detail.c_str());
            }
        }
        all = all && s.pass();
    }
    std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
    return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
