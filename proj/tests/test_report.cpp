#include <catch2/catch_amalgamated.hpp>

#include "hsbrst/report.hpp"
#include "hsbrst/suites.hpp"

using namespace hsbrst;

namespace {
VerificationReport synthetic(RelationStatus s) {
    VerificationReport rep;
    rep.suite = "synthetic";
    RelationReport pass;
    pass.name = "always";
    rep.relations.push_back(pass);
    RelationReport r;
    r.name = "probe";
    r.status = s;
    if (s == RelationStatus::fail) r.failures.emplace_back("g", "1/2*g");
    rep.relations.push_back(r);
    return rep;
}
} // namespace

TEST_CASE("exit-code contract", "[report]") {
    REQUIRE(exit_code_for(synthetic(RelationStatus::pass).status()) == 0);
    REQUIRE(exit_code_for(synthetic(RelationStatus::fail).status()) == 1);
    REQUIRE(exit_code_for(synthetic(RelationStatus::inconclusive).status()) == 2);

    SECTION("fail dominates inconclusive") {
        VerificationReport rep = synthetic(RelationStatus::fail);
        RelationReport inc;
        inc.name = "maybe";
        inc.status = RelationStatus::inconclusive;
        rep.relations.push_back(inc);
        REQUIRE(exit_code_for(rep.status()) == 1);
    }
}

TEST_CASE("text format contract", "[report]") {
    SECTION("all-pass reports end with PASS (n/n)") {
        VerificationReport rep;
        rep.suite = "t";
        RelationReport a;
        a.name = "one";
        rep.relations.push_back(a);
        rep.relations.push_back(a);
        std::string text = emit_report(rep, ReportFormat::text);
        REQUIRE(text.rfind("PASS (2/2)\n") == text.size() - std::string("PASS (2/2)\n").size());
    }
    SECTION("failures print one residual line per generator") {
        std::string text = emit_report(synthetic(RelationStatus::fail), ReportFormat::text);
        REQUIRE(text.find("RELATION probe: FAIL") != std::string::npos);
        REQUIRE(text.find("  g: residual = 1/2*g") != std::string::npos);
        REQUIRE(text.find("FAIL (1/2)") != std::string::npos);
    }
}

TEST_CASE("json format contract", "[report]") {
    auto a = make_brst_alphabet();
    VerificationReport rep = verify_suite("linear", Convention::verbatim, a);
    nlohmann::json j = report_to_json(rep);

    SECTION("schema and versioning") {
        REQUIRE(j["schema"] == kReportSchema);
        REQUIRE(j["engine_version"] == kEngineVersion);
    }
    SECTION("residuals are exact strings, never floats") {
        bool found_fraction = false;
        for (const auto& rel : j["relations"])
            if (rel.contains("failures"))
                for (const auto& f : rel["failures"]) {
                    REQUIRE(f["residual"].is_string());
                    if (f["residual"].get<std::string>().find('/') != std::string::npos)
                        found_fraction = true;
                }
        (void)found_fraction;
    }
    SECTION("serialization is byte-stable") {
        std::string once = emit_report(rep, ReportFormat::json);
        std::string twice = emit_report(verify_suite("linear", Convention::verbatim, a), ReportFormat::json);
        REQUIRE(once == twice);
    }
    SECTION("keys are sorted") {
        std::string dump = j.dump();
        REQUIRE(dump.find("\"convention\"") < dump.find("\"engine_version\""));
        REQUIRE(dump.find("\"engine_version\"") < dump.find("\"gauge\""));
    }
    SECTION("no wall-clock data in the body") {
        rep.duration_ms = 12345.0;
        std::string body = emit_report(rep, ReportFormat::json);
        REQUIRE(body.find("duration") == std::string::npos);
        REQUIRE(body.find("12345") == std::string::npos);
    }
}

TEST_CASE("input digests", "[report]") {
    REQUIRE(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    REQUIRE(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
