#include <catch2/catch_amalgamated.hpp>

#include "golden_support.hpp"
#include "hsbrst/cli.hpp"

#include <cstdio>
#include <filesystem>

using namespace hsbrst;

namespace {
struct CaptureStdout {
    std::stringstream buffer;
    std::streambuf* old;
    CaptureStdout() : old(std::cout.rdbuf(buffer.rdbuf())) {}
    ~CaptureStdout() { std::cout.rdbuf(old); }
    std::string text() const { return buffer.str(); }
};

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}
} // namespace

TEST_CASE("eval subcommand", "[cli]") {
    SECTION("simple rule lookup") {
        CaptureStdout cap;
        REQUIRE(run_command({"eval", "s(cbar_L)"}) == 0);
        REQUIRE(cap.text() == "b_L\n");
    }
    SECTION("nilpotency prints zero") {
        CaptureStdout cap;
        REQUIRE(run_command({"eval", "s(s(c_L))", "--gauge", "linear", "--convention", "leibniz"}) == 0);
        REQUIRE(cap.text() == "0\n");
    }
    SECTION("bracket") {
        CaptureStdout cap;
        REQUIRE(run_command({"eval", "[c_L, c_L]"}) == 0);
        REQUIRE(cap.text() == "2*c_L*c_L\n");
    }
}

TEST_CASE("exit codes", "[cli]") {
    CaptureStdout cap;
    SECTION("all-pass is 0") {
        REQUIRE(run_command({"verify-brst", "--gauge", "landau", "--convention", "leibniz",
                             "--format", "json"}) == 0);
    }
    SECTION("failures are 1") {
        REQUIRE(run_command({"verify-brst", "--gauge", "cf", "--convention", "verbatim"}) == 1);
        REQUIRE(run_command({"verify-no-algebra", "--massive"}) == 1);
    }
    SECTION("inconclusive-only is 2") {
        std::string cfg = temp_path("hsbrst_inconclusive.cfg");
        {
            std::ofstream out(cfg);
            out << "exactness.candidate_bound = 1\n";
        }
        REQUIRE(run_command({"verify-gauge-fixing", "--gauge", "landau", "--convention", "leibniz",
                             "--config", cfg}) == 2);
        std::remove(cfg.c_str());
    }
    SECTION("usage errors are 3") {
        REQUIRE(run_command({"verify-brst", "--gauge", "bogus"}) == 3);
        REQUIRE(run_command({"no-such-subcommand"}) == 3);
        REQUIRE(run_command({"verify-brst", "--config", "/nonexistent/path.cfg"}) == 3);
        REQUIRE(run_command({"eval", "s(cbra_L)"}) == 3);
    }
}

TEST_CASE("reports are byte-identical across runs with one seed", "[cli]") {
    std::string out1 = temp_path("hsbrst_report_1.json");
    std::string out2 = temp_path("hsbrst_report_2.json");
    for (const char* path : {out1.c_str(), out2.c_str()}) {
        CaptureStdout cap;
        REQUIRE(run_command({"verify-superspace", "--seed", "42", "--samples", "15", "--format",
                             "json", "--out", path}) == 0);
    }
    std::string a = hsbrst::testing::read_file(out1);
    std::string b = hsbrst::testing::read_file(out2);
    REQUIRE_FALSE(a.empty());
    REQUIRE(a == b);
    REQUIRE(a.find("\"seed\": 42") != std::string::npos);
    std::remove(out1.c_str());
    std::remove(out2.c_str());
}

TEST_CASE("config file drives the star suite", "[cli]") {
    std::string cfg = temp_path("hsbrst_star.cfg");
    {
        std::ofstream out(cfg);
        out << "# zero one entry, keep the rest symbolic\n";
        out << "A10 = 0\n";
        out << "samples = 10\n";
        out << "seed = 7\n";
    }
    std::string out_path = temp_path("hsbrst_star.json");
    {
        CaptureStdout cap;
        REQUIRE(run_command({"verify-star", "--config", cfg, "--format", "json", "--out", out_path}) == 0);
    }
    std::string report = hsbrst::testing::read_file(out_path);
    REQUIRE(report.find("\"seed\": 7") != std::string::npos);
    REQUIRE(report.find("hsbrst_star.cfg") != std::string::npos); // config digested as an input
    std::remove(cfg.c_str());
    std::remove(out_path.c_str());
}

TEST_CASE("custom alphabets load from the config", "[cli]") {
    std::string cfg = temp_path("hsbrst_alphabet.cfg");
    {
        std::ofstream out(cfg);
        out << "generator.a = L 1 1 0 a\n";
        out << "generator.bb = R 0 0 2 bb\n";
    }
    SECTION("expressions evaluate over the custom alphabet") {
        CaptureStdout cap;
        REQUIRE(run_command({"eval", "[a, a] + 2*bb", "--config", cfg}) == 0);
        REQUIRE(cap.text() == "2*bb + 2*a*a\n");
    }
    SECTION("built-in names are gone") {
        CaptureStdout cap;
        REQUIRE(run_command({"eval", "c_L", "--config", cfg}) == 3);
    }
    std::remove(cfg.c_str());
}

TEST_CASE("division by parameters is rejected by the grammar", "[cli]") {
    CaptureStdout cap;
    REQUIRE(run_command({"eval", "alpha/2 * b_L"}) == 3);
}

TEST_CASE("spacelike star restriction", "[cli]") {
    // zeroing the mu=0 column is self-consistent: the whole property suite
    // still passes against the restricted tensor
    CaptureStdout cap;
    REQUIRE(run_command({"verify-star", "--spacelike", "--samples", "10"}) == 0);
    REQUIRE(cap.text().find("PASS (") != std::string::npos);
}

TEST_CASE("rule tables load from files", "[cli]") {
    std::string table = std::string(HSBRST_SOURCE_DIR) + "/data/rules/linear-verbatim-altbr.rules";
    std::string cfg = temp_path("hsbrst_table.cfg");
    {
        std::ofstream out(cfg);
        out << "table = " << table << "\n";
    }
    CaptureStdout cap;
    // the alternative reading still fails nilpotency elsewhere: exit 1
    REQUIRE(run_command({"verify-brst", "--config", cfg, "--format", "json"}) == 1);
    std::remove(cfg.c_str());
}
