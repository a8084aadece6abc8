// SPDX-License-Identifier: Apache-2.0
//
// Spawns the built command line binary and checks exit codes, validation
// messages, and byte-level determinism of its outputs.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

int g_failures = 0;

void expect(bool ok, const std::string& what) {
    if (ok) {
        std::printf("ok: %s\n", what.c_str());
    } else {
        std::printf("FAILED: %s\n", what.c_str());
        ++g_failures;
    }
}

struct RunOutput {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunOutput run(const std::string& cmd) {
    RunOutput r;
    const std::string out_path = "cli_test_stdout.txt";
    const std::string err_path = "cli_test_stderr.txt";
    const int status =
        std::system((cmd + " > " + out_path + " 2> " + err_path).c_str());
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_tests <path-to-cli>\n");
        return 2;
    }
    const std::string cli = argv[1];
    namespace fs = std::filesystem;
    const fs::path work = fs::temp_directory_path() / "wptrelay_cli_tests";
    fs::remove_all(work);
    fs::create_directories(work);

    {
        const RunOutput r = run(cli + " --help");
        expect(r.exit_code == 0, "--help exits 0");
    }
    {
        const RunOutput r = run(cli);
        expect(r.exit_code == 2, "missing subcommand exits 2");
    }
    {
        const RunOutput r = run(cli + " single --rho 1.5");
        expect(r.exit_code == 2, "out-of-range rho exits 2");
        expect(r.err.find("rho must be in (0,1)") != std::string::npos,
               "rho error names the constraint");
    }
    {
        const RunOutput r = run(cli + " single --bogus-flag 1");
        expect(r.exit_code == 2, "unknown flag exits 2");
    }
    {
        const RunOutput a = run(cli + " single --seed 7");
        const RunOutput b = run(cli + " single --seed 7");
        expect(a.exit_code == 0, "single exits 0");
        expect(a.out == b.out, "single output is deterministic");
        expect(a.out.find("scheme=p3b") != std::string::npos, "single reports p3b");
        expect(a.out.find("scheme=noef") != std::string::npos, "single reports noef");
        expect(a.out.find("# seed=7") != std::string::npos,
               "effective config echoed");
    }
    {
        const std::string base = cli + " sweep-rho --trials 2 --seed 11 --threads 2 --out ";
        const RunOutput a = run(base + (work / "a").string());
        const RunOutput b = run(base + (work / "b").string());
        expect(a.exit_code == 0 && b.exit_code == 0, "sweep-rho exits 0");
        const std::string csv_a = slurp((work / "a" / "sweep_rho.csv").string());
        const std::string csv_b = slurp((work / "b" / "sweep_rho.csv").string());
        expect(!csv_a.empty(), "sweep-rho wrote a table");
        expect(csv_a == csv_b, "sweep-rho tables are byte-identical");
        expect(csv_a.find("# config_hash=") != std::string::npos,
               "table embeds its config hash");
        expect(!slurp((work / "a" / "sweep_rho.csv.gp").string()).empty(),
               "plot companion written");
    }
    {
        const std::string base =
            cli + " sweep-distance --trials 1 --seed 3 --scheme noef --out ";
        const RunOutput a = run(base + (work / "c").string());
        const RunOutput b = run(base + (work / "d").string());
        expect(a.exit_code == 0 && b.exit_code == 0, "sweep-distance exits 0");
        expect(slurp((work / "c" / "sweep_distance.csv").string()) ==
                   slurp((work / "d" / "sweep_distance.csv").string()),
               "sweep-distance tables are byte-identical");
    }
    {
        std::ofstream cfg(work / "run.ini");
        cfg << "[single]\nseed=5\nrho=0.55\n";
        cfg.close();
        const RunOutput a = run(cli + " --config " + (work / "run.ini").string() +
                                " single");
        expect(a.exit_code == 0, "config file accepted");
        expect(a.out.find("# seed=5") != std::string::npos, "config file sets seed");
        const RunOutput b = run(cli + " --config " + (work / "run.ini").string() +
                                " single --seed 9");
        expect(b.out.find("# seed=9") != std::string::npos,
               "flags override the config file");
    }
    {
        const RunOutput r = run("WPT_RELAY_SEED=31 " + cli + " single");
        expect(r.exit_code == 0, "env seed accepted");
        expect(r.out.find("# seed=31") != std::string::npos,
               "WPT_RELAY_SEED is the seed fallback");
        const RunOutput flagged = run("WPT_RELAY_SEED=31 " + cli + " single --seed 8");
        expect(flagged.out.find("# seed=8") != std::string::npos,
               "explicit --seed beats the env fallback");
    }
    {
        const RunOutput r = run(cli + " validate --seed 7");
        expect(r.exit_code == 0, "validate exits 0 on a correct build");
        expect(r.out.find("name,instances,max_violation") != std::string::npos,
               "validate prints the report table");
    }

    fs::remove_all(work);
    if (g_failures == 0) std::printf("all cli checks passed\n");
    return g_failures == 0 ? 0 : 1;
}
