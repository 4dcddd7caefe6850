#define DOCTEST_CONFIG_IMPLEMENT
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "mr/instance.hpp"
#include "mr/harness.hpp"

namespace {

std::string g_cli;
std::string g_dir;

int run_cmd(const std::string& args, const std::string& stdout_file = "/dev/null") {
    std::string cmd = g_cli + " " + args + " >" + stdout_file + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("generate writes a parseable instance") {
    std::string out = g_dir + "/inst.json";
    int rc = run_cmd("generate --model interview --migrants 6 --localities 2 --jobs 6 "
                     "--professions 2 --seed 1 --out " + out);
    CHECK(rc == 0);
    mr::Instance inst = mr::load_instance_file(out);
    CHECK(inst.num_migrants() == 6);
    CHECK(inst.num_localities() == 2);
    CHECK_NOTHROW(inst.validate());
}

TEST_CASE("run prints a feasible assignment deterministically") {
    std::string inst = g_dir + "/inst_run.json";
    REQUIRE(run_cmd("generate --model coordination --migrants 5 --localities 2 --jobs 5 "
                    "--professions 2 --seed 3 --out " + inst) == 0);
    std::string out1 = g_dir + "/run1.txt", out2 = g_dir + "/run2.txt";
    std::string flags = "run --instance " + inst + " --algorithm greedy --samples 100 --seed 1";
    CHECK(run_cmd(flags, out1) == 0);
    CHECK(run_cmd(flags, out2) == 0);
    std::string text = slurp(out1);
    CHECK(text == slurp(out2));
    CHECK(text.find("final_f") != std::string::npos);
    CHECK(text.find("assignment:") != std::string::npos);
}

TEST_CASE("omitted seed is chosen randomly and printed") {
    std::string inst = g_dir + "/inst_seed.json";
    REQUIRE(run_cmd("generate --migrants 4 --localities 2 --jobs 4 --seed 9 --out " + inst) ==
            0);
    std::string out = g_dir + "/seedless.txt";
    CHECK(run_cmd("run --instance " + inst + " --algorithm greedy --samples 10", out) == 0);
    CHECK(slurp(out).find("seed: ") != std::string::npos);
}

TEST_CASE("usage errors exit with 1") {
    CHECK(run_cmd("") == 1);
    CHECK(run_cmd("generate --bogus-flag 1") == 1);
    CHECK(run_cmd("run") == 1);  // missing required --instance
}

TEST_CASE("validation errors exit with 2") {
    std::string bad = g_dir + "/bad.json";
    std::ofstream(bad) << "{\"model\": \"interview\"}";
    CHECK(run_cmd("run --instance " + bad + " --algorithm greedy --seed 1") == 2);
    std::string inst = g_dir + "/inst_v.json";
    REQUIRE(run_cmd("generate --migrants 4 --localities 2 --jobs 4 --seed 9 --out " + inst) ==
            0);
    CHECK(run_cmd("run --instance " + inst + " --algorithm not-an-algorithm --seed 1") == 2);
}

TEST_CASE("runtime failures exit with 3") {
    CHECK(run_cmd("run --instance " + g_dir + "/does_not_exist.json --seed 1") == 3);
}

TEST_CASE("experiment emits byte-identical outputs across thread counts") {
    std::string base = "experiment --sweep migrants --values 4 6 --model interview "
                       "--algorithms greedy gsemo-sr --replicates 2 --seed 5 --localities 2 "
                       "--professions 1 --samples 10 --rescore-samples 20 --budget-factor 2";
    REQUIRE(run_cmd(base + " --threads 1 --out " + g_dir + "/t1") == 0);
    REQUIRE(run_cmd(base + " --threads 1 --out " + g_dir + "/t1b") == 0);
    REQUIRE(run_cmd(base + " --threads 4 --out " + g_dir + "/t4") == 0);
    for (const char* suffix : {".json", ".csv", ".md", "_plot.csv"}) {
        CHECK(slurp(g_dir + "/t1" + suffix) == slurp(g_dir + "/t1b" + suffix));
        CHECK(slurp(g_dir + "/t1" + suffix) == slurp(g_dir + "/t4" + suffix));
    }
}

TEST_CASE("report re-renders a stored experiment") {
    std::string md = g_dir + "/rerender.md";
    CHECK(run_cmd("report --in " + g_dir + "/t1.json --format markdown --out " + md) == 0);
    CHECK(slurp(md) == slurp(g_dir + "/t1.md"));
    CHECK(run_cmd("report --in " + g_dir + "/t1.csv --format markdown") == 2);  // not a report
}

TEST_CASE("generate does not mutate an existing instance used as input") {
    std::string inst = g_dir + "/inst_run.json";
    std::string before = slurp(inst);
    REQUIRE(run_cmd("run --instance " + inst + " --algorithm additive --samples 5 --seed 2") ==
            0);
    CHECK(slurp(inst) == before);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s [doctest flags] <path-to-mrcli>\n", argv[0]);
        return 1;
    }
    g_cli = argv[argc - 1];
    char tmpl[] = "/tmp/mrcli_test_XXXXXX";
    char* dir = mkdtemp(tmpl);
    if (dir == nullptr) return 1;
    g_dir = dir;
    doctest::Context ctx(argc - 1, argv);
    return ctx.run();
}
