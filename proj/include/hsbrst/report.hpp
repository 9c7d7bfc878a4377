#pragma once

#include "hsbrst/derivation.hpp"
#include "hsbrst/version.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <cstdint>
#include <string>
#include <vector>

namespace hsbrst {

inline std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

/// Structured evidence for a named set of relations. Serialization is
/// deterministic: sorted keys, exact scalars as strings, no timing data in
/// the report body (wall-clock duration goes to the diagnostics stream).
struct VerificationReport {
    std::string suite;
    std::string gauge;
    std::string convention;
    std::uint64_t seed = 0;
    int samples = 0;
    std::vector<RelationReport> relations;
    std::vector<std::string> table_warnings;
    std::vector<std::pair<std::string, std::string>> inputs; // (name, sha256)
    double duration_ms = 0.0; // informational only; never serialized

    RelationStatus status() const {
        RelationStatus worst = RelationStatus::pass;
        for (const auto& r : relations) {
            if (r.status == RelationStatus::fail) return RelationStatus::fail;
            if (r.status == RelationStatus::inconclusive) worst = RelationStatus::inconclusive;
        }
        return worst;
    }

    int passed_count() const {
        int n = 0;
        for (const auto& r : relations) n += r.status == RelationStatus::pass;
        return n;
    }
};

inline nlohmann::json report_to_json(const VerificationReport& rep) {
    nlohmann::json j; // object keys serialize sorted
    j["schema"] = kReportSchema;
    j["engine_version"] = kEngineVersion;
    j["suite"] = rep.suite;
    if (!rep.gauge.empty()) j["gauge"] = rep.gauge;
    if (!rep.convention.empty()) j["convention"] = rep.convention;
    j["seed"] = rep.seed;
    if (rep.samples > 0) j["samples"] = rep.samples;
    j["status"] = status_name(rep.status());
    auto rels = nlohmann::json::array();
    for (const auto& r : rep.relations) {
        nlohmann::json rj;
        rj["name"] = r.name;
        rj["status"] = status_name(r.status);
        if (!r.failures.empty()) {
            auto fj = nlohmann::json::array();
            for (const auto& [gen, residual] : r.failures)
                fj.push_back({{"generator", gen}, {"residual", residual}});
            rj["failures"] = fj;
        }
        if (!r.witness.empty()) rj["witness"] = r.witness;
        if (!r.note.empty()) rj["note"] = r.note;
        rels.push_back(rj);
    }
    j["relations"] = rels;
    if (!rep.table_warnings.empty()) j["table_warnings"] = rep.table_warnings;
    if (!rep.inputs.empty()) {
        auto ij = nlohmann::json::array();
        for (const auto& [name, digest] : rep.inputs) ij.push_back({{"name", name}, {"sha256", digest}});
        j["inputs"] = ij;
    }
    return j;
}

enum class ReportFormat { text, json };

inline std::string emit_report(const VerificationReport& rep, ReportFormat format) {
    if (format == ReportFormat::json) return report_to_json(rep).dump(2) + "\n";
    std::string out;
    out += "suite " + rep.suite;
    if (!rep.gauge.empty()) out += "  gauge " + rep.gauge;
    if (!rep.convention.empty()) out += "  convention " + rep.convention;
    if (rep.samples > 0) out += "  samples " + std::to_string(rep.samples) + "  seed " + std::to_string(rep.seed);
    out += "\n";
    for (const auto& w : rep.table_warnings) out += "warning: " + w + "\n";
    for (const auto& r : rep.relations) {
        std::string status = r.status == RelationStatus::pass ? "PASS"
                             : r.status == RelationStatus::fail ? "FAIL"
                                                                : "INCONCLUSIVE";
        out += "RELATION " + r.name + ": " + status + "\n";
        for (const auto& [gen, residual] : r.failures)
            out += "  " + gen + ": residual = " + residual + "\n";
        if (!r.witness.empty()) out += "  witness: " + r.witness + "\n";
        if (!r.note.empty()) out += "  note: " + r.note + "\n";
    }
    int p = rep.passed_count();
    int n = static_cast<int>(rep.relations.size());
    RelationStatus st = rep.status();
    std::string tail = st == RelationStatus::pass ? "PASS"
                       : st == RelationStatus::fail ? "FAIL"
                                                    : "INCONCLUSIVE";
    out += tail + " (" + std::to_string(p) + "/" + std::to_string(n) + ")\n";
    return out;
}

/// Exit-code contract: 0 all pass, 1 any fail, 2 inconclusive (no fails),
/// 3 usage or configuration errors (raised, not returned).
inline int exit_code_for(RelationStatus s) {
    switch (s) {
        case RelationStatus::pass: return 0;
        case RelationStatus::fail: return 1;
        case RelationStatus::inconclusive: return 2;
    }
    return 3;
}

} // namespace hsbrst
