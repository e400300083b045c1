// Drives the installed CLI binary end to end: JSON files written by one
// subcommand feed the next, and the exit-code contract is asserted
// (0 ok, 1 verification failed, 2 input error, 3 budget exceeded).
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "pfano/json_io.hpp"

namespace fs = std::filesystem;
using namespace pfano;

namespace {

std::string g_cli;
fs::path g_dir;
int g_failures = 0;

int run(const std::string& args) {
    std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    if (status < 0) return -1;
#ifdef WEXITSTATUS
    return WEXITSTATUS(status);
#else
    return status;
#endif
}

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++g_failures;
        std::cerr << "FAIL: " << what << "\n";
    }
}

void expect_exit(const std::string& args, int want) {
    int got = run(args);
    expect(got == want, args + " -> exit " + std::to_string(got) +
                            ", wanted " + std::to_string(want));
}

std::string path(const std::string& name) { return (g_dir / name).string(); }

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <path-to-pfano>\n";
        return 2;
    }
    g_cli = argv[1];
    g_dir = fs::temp_directory_path() / "pfano_cli_test";
    fs::create_directories(g_dir);

    // gen: valid family, then a composite p
    expect_exit("gen --family p-fano -p 2 -o " + path("if2.json"), 0);
    expect_exit("gen --family p-nonfano -p 3 -o " + path("inf3.json"), 0);
    expect_exit("gen --family p-fano -p 4 -o " + path("junk.json"), 2);
    expect_exit("gen --family nonsense -p 2 -o " + path("junk.json"), 2);

    {
        auto j = io::load_json_file(path("if2.json"));
        expect(j["m"] == 19, "generated instance has m=19");
        auto inst = io::instance_from_json(j);
        expect(inst.interfering == indexcoding::build_p_fano_instance(2)
                                       .interfering,
               "gen output round-trips to the builder instance");
        auto nf = io::load_json_file(path("inf3.json"));
        expect(nf["m"] == 33, "non-fano p=3 has m=33");
        expect(nf["interfering"][8].empty(), "B_9 is empty for p-nonfano");
    }

    // encoder files over the two characteristics
    expect_exit("encoder -p 2 -q 2 -o " + path("h2q2.json"), 0);
    expect_exit("encoder -p 2 -q 3 -o " + path("h2q3.json"), 0);
    expect_exit("encoder -p 2 -q 4 -o " + path("junk.json"), 2);
    {
        auto m = io::matrix_from_json(io::load_json_file(path("h2q2.json")));
        expect(m == indexcoding::canonical_encoder(2, gf::PrimeField(2))
                        .matrix,
               "encoder output equals the canonical matrix");
    }

    // verify: pass, fail, input errors
    expect_exit("verify " + path("if2.json") + " " + path("h2q2.json") +
                    " -o " + path("rep.json"),
                0);
    expect_exit("verify " + path("if2.json") + " " + path("h2q3.json"), 1);
    expect_exit("verify " + path("if2.json") + " " + path("missing.json"), 2);
    expect_exit("verify " + path("if2.json") + " " + path("h2q2.json") +
                    " -t 2",
                2);
    {
        std::ofstream bad(path("broken.json"));
        bad << "{ not json";
    }
    expect_exit("verify " + path("broken.json") + " " + path("h2q2.json"), 2);
    {
        auto rep = io::load_json_file(path("rep.json"));
        expect(rep["all_ok"] == true, "verify report says all_ok");
        expect(rep["rate"] == io::json::array({3, 1}),
               "verify report carries the rate");
    }
    expect_exit("verify --mais " + path("if2.json") + " " + path("h2q2.json") +
                    " -o " + path("rep_mais.json"),
                0);
    {
        auto rep = io::load_json_file(path("rep_mais.json"));
        expect(rep["mais"]["size"] == 3, "verify --mais reports the bound");
        expect(rep["optimal"] == true, "rate 3 is flagged optimal");
    }

    // mais
    expect_exit("mais " + path("if2.json") + " -o " + path("mais.json"), 0);
    {
        auto m = io::load_json_file(path("mais.json"));
        expect(m["size"] == 3, "mais of the 19-user instance is 3");
    }

    // search and decide
    expect_exit("search --family p-fano -p 2 -q 2 -o " + path("s22.json"), 0);
    expect_exit("search --family p-fano -p 2 -q 3 -o " + path("s23.json"), 0);
    expect_exit("search --family p-fano -p 3 -q 7 --budget 10", 3);
    {
        auto s22 = io::load_json_file(path("s22.json"));
        expect(s22["verdict"] == "witness", "fano over GF(2) yields a witness");
        auto s23 = io::load_json_file(path("s23.json"));
        expect(s23["verdict"] == "exhausted",
               "fano over GF(3) exhausts the space");
        expect(s23["matrix"].is_null(), "exhausted outcome carries no matrix");
    }
    {
        auto c = matroid::p_nonfano_constraints(2);
        io::write_json_file(path("cons.json"), io::constraints_to_json(c));
        expect_exit("search -q 3 --constraints " + path("cons.json") +
                        " -o " + path("sc.json"),
                    0);
        auto sc = io::load_json_file(path("sc.json"));
        expect(sc["verdict"] == "witness",
               "constraints file drives the same search");
    }
    expect_exit("decide --family p-fano -p 2 -q 2 -o " + path("d22.json"), 0);
    expect_exit("decide --family p-nonfano -p 2 -q 2 -o " + path("dn22.json"),
                0);
    {
        auto d22 = io::load_json_file(path("d22.json"));
        expect(d22["verdict"] == "achievable", "fano p=2 q=2 achievable");
        auto dn22 = io::load_json_file(path("dn22.json"));
        expect(dn22["verdict"] == "infeasible-t1",
               "nonfano p=2 q=2 infeasible at t=1");
        expect(dn22["search"]["verdict"] == "exhausted",
               "infeasible verdict carries the exhaustion certificate");
    }

    // simulate: clean run, determinism, corrupted encoder
    expect_exit("simulate " + path("if2.json") + " " + path("h2q2.json") +
                    " --seed 7 -o " + path("t1.json"),
                0);
    expect_exit("simulate " + path("if2.json") + " " + path("h2q2.json") +
                    " --seed 7 -o " + path("t2.json"),
                0);
    {
        auto t1 = io::load_json_file(path("t1.json"));
        auto t2 = io::load_json_file(path("t2.json"));
        expect(t1 == t2, "seeded simulation transcripts are identical");
        expect(t1["exact"] == true, "transcript reports exact recovery");
        expect(t1["decoded"] == t1["messages"],
               "decoded symbols equal the messages");
    }
    {
        auto j = io::load_json_file(path("h2q2.json"));
        for (int r = 0; r < 3; ++r) j["entries"][r][0] = 0;
        io::write_json_file(path("h2bad.json"), j);
    }
    expect_exit("simulate " + path("if2.json") + " " + path("h2bad.json"), 1);

    // no subcommand / unknown flags
    expect_exit("", 2);
    expect_exit("gen --family p-fano -p 2", 2);  // missing required -o

    if (g_failures == 0) {
        std::printf("all CLI checks passed\n");
        return 0;
    }
    std::printf("%d CLI checks failed\n", g_failures);
    return 1;
}
