#pragma once

#include "hsbrst/calibrate.hpp"
#include "hsbrst/gauge.hpp"
#include "hsbrst/star.hpp"
#include "hsbrst/superspace_suite.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace hsbrst {

/// Flat key-value configuration file: `key = value`, `#` comments.
/// Recognized keys: convention, gauge, seed, samples, table (rule-file path),
/// A10..A22 (scalar expressions), generator.<name> = <sector> <parity>
/// <ghost> <hcharge> <conj>, exactness.max_len, exactness.candidate_bound.
struct Config {
    std::optional<Convention> convention;
    std::optional<Gauge> gauge;
    std::optional<std::uint64_t> seed;
    std::optional<int> samples;
    std::optional<std::string> table_path;
    std::map<std::string, Scalar> a_entries;
    struct GenSpec {
        std::string name;
        Sector sector;
        Grading grading;
        std::string conj;
    };
    std::vector<GenSpec> generators;
    int exactness_max_len = 4;
    std::size_t exactness_candidate_bound = 60000;

    std::string source_name;
    std::string source_text;
};

inline Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    Config cfg;
    cfg.source_name = path;
    cfg.source_text = buffer.str();
    std::istringstream lines(cfg.source_text);
    std::string line;
    std::size_t lineno = 0;
    DslNames scalar_names; // no alphabet: scalar expressions only
    while (std::getline(lines, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + " is not 'key = value'");
        auto trim = [](std::string s) {
            std::size_t b = s.find_first_not_of(" \t\r");
            std::size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "convention") {
            cfg.convention = parse_convention(value);
        } else if (key == "gauge") {
            cfg.gauge = parse_gauge(value);
        } else if (key == "seed") {
            cfg.seed = std::stoull(value);
        } else if (key == "samples") {
            cfg.samples = std::stoi(value);
        } else if (key == "table") {
            cfg.table_path = value;
        } else if (key.size() == 3 && key[0] == 'A') {
            EvalContext ctx{nullptr, {}};
            ExprPtr ast = parse_expression(value, scalar_names);
            if (ast->kind != ExprNode::Kind::scalar)
                throw ConfigError("config key " + key + " must be a scalar expression");
            cfg.a_entries[key] = ast->scalar;
        } else if (key.rfind("generator.", 0) == 0) {
            std::istringstream vs(value);
            Config::GenSpec g;
            g.name = key.substr(10);
            std::string sector;
            int parity, ghost, hcharge;
            vs >> sector >> parity >> ghost >> hcharge >> g.conj;
            if (!vs && g.conj.empty()) throw ConfigError("bad generator spec for " + g.name);
            if (sector == "L") g.sector = Sector::L;
            else if (sector == "R") g.sector = Sector::R;
            else if (sector == "matter") g.sector = Sector::matter;
            else throw ConfigError("bad sector '" + sector + "' for generator " + g.name);
            g.grading = Grading{parity & 1, ghost, hcharge};
            if (g.conj.empty()) g.conj = g.name;
            cfg.generators.push_back(std::move(g));
        } else if (key == "exactness.max_len") {
            cfg.exactness_max_len = std::stoi(value);
        } else if (key == "exactness.candidate_bound") {
            cfg.exactness_candidate_bound = std::stoull(value);
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    return cfg;
}

inline AlphabetPtr alphabet_from_config(const Config& cfg) {
    if (cfg.generators.empty()) return make_brst_alphabet();
    auto a = std::make_shared<Alphabet>();
    for (const auto& g : cfg.generators) a->add(g.name, g.sector, g.grading, g.conj);
    a->finalize();
    return a;
}

inline DeformationTensor deformation_from_config(const Config& cfg, bool spacelike) {
    DeformationTensor t = DeformationTensor::symbolic();
    for (const auto& [key, value] : cfg.a_entries) {
        int a = key[1] - '0';
        int mu = key[2] - '0';
        t.at(a, mu) = value;
    }
    if (spacelike) t = t.spacelike();
    return t;
}

namespace cli_detail {

struct OutputOptions {
    std::string format = "text";
    std::string out_path;
};

inline int finish(VerificationReport& rep, const OutputOptions& opts,
                  std::chrono::steady_clock::time_point started, const Config* cfg) {
    if (cfg && !cfg->source_name.empty())
        rep.inputs.emplace_back(cfg->source_name, sha256_hex(cfg->source_text));
    auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
    rep.duration_ms = elapsed.count();
    std::string body = emit_report(rep, opts.format == "json" ? ReportFormat::json : ReportFormat::text);
    if (opts.out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(opts.out_path, std::ios::binary);
        if (!out) throw ConfigError("cannot write report to '" + opts.out_path + "'");
        out << body;
    }
    std::cerr << "completed in " << rep.duration_ms << " ms\n";
    return exit_code_for(rep.status());
}

} // namespace cli_detail

/// The command-line entry point; argv-style arguments without the program
/// name. Exit codes: 0 all pass, 1 any failure, 2 inconclusive only,
/// 3 usage or configuration error.
inline int run_command(const std::vector<std::string>& args) {
    CLI::App app{"graded-algebra verification engine for deformed ABJ gauge fixings"};
    app.require_subcommand(1);

    std::string gauge_str = "linear";
    std::string convention_str = "leibniz";
    std::uint64_t seed = 20240914;
    int samples = 100;
    bool massive = false;
    bool spacelike = false;
    std::string config_path;
    cli_detail::OutputOptions out_opts;
    std::string problem = "all";
    std::string expr_text;

    auto add_common = [&](CLI::App* sub, bool with_gauge) {
        sub->add_option("--format", out_opts.format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--out", out_opts.out_path, "write the report to a file");
        sub->add_option("--config", config_path, "flat key-value configuration file");
        sub->add_option("--seed", seed, "seed for randomized checks");
        sub->add_option("--samples", samples, "sample count for randomized checks");
        if (with_gauge) {
            sub->add_option("--gauge", gauge_str, "landau, linear, cf, or massive-cf")
                ->check(CLI::IsMember({"landau", "linear", "cf", "massive-cf"}));
            sub->add_option("--convention", convention_str, "verbatim or leibniz")
                ->check(CLI::IsMember({"verbatim", "leibniz"}));
        }
    };

    auto* sp = app.add_subcommand("verify-superspace", "derivative algebra on random superspace polynomials");
    add_common(sp, false);
    auto* st = app.add_subcommand("verify-star", "deformed star product property suite");
    add_common(st, false);
    st->add_flag("--spacelike", spacelike, "drop the mu=0 column of the deformation");
    auto* br = app.add_subcommand("verify-brst", "nilpotency and anticommutation of s, sbar");
    add_common(br, true);
    auto* no = app.add_subcommand("verify-no-algebra", "SL(2,R) ghost-flow algebra");
    add_common(no, true);
    no->add_flag("--massive", massive, "use the mass-deformed tables and closures");
    auto* gf = app.add_subcommand("verify-gauge-fixing", "exactness, double variation, covariance");
    add_common(gf, true);
    auto* cal = app.add_subcommand("calibrate", "grid search for unknown rule coefficients");
    add_common(cal, false);
    cal->add_option("--problem", problem, "kappa, lambda, lambda-tension, or all")
        ->check(CLI::IsMember({"kappa", "lambda", "lambda-tension", "all"}));
    auto* ev = app.add_subcommand("eval", "evaluate a DSL expression to canonical form");
    add_common(ev, true);
    ev->add_option("expr", expr_text, "expression, e.g. \"s(cbar_L)\"")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            std::cout << app.help();
            return 0;
        }
        std::cerr << "usage error: " << e.what() << "\n";
        return 3;
    }

    auto started = std::chrono::steady_clock::now();
    try {
        Config cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        if (cfg.convention && convention_str == "leibniz") convention_str = convention_name(*cfg.convention);
        if (cfg.gauge) gauge_str = gauge_name(*cfg.gauge);
        if (cfg.seed) seed = *cfg.seed;
        if (cfg.samples) samples = *cfg.samples;
        AlphabetPtr alphabet = alphabet_from_config(cfg);
        Convention conv = parse_convention(convention_str);
        Gauge gauge = parse_gauge(gauge_str);
        const Config* cfg_ptr = config_path.empty() ? nullptr : &cfg;

        if (*sp) {
            VerificationReport rep = verify_superspace(seed, samples);
            return cli_detail::finish(rep, out_opts, started, cfg_ptr);
        }
        if (*st) {
            DeformationTensor A = deformation_from_config(cfg, spacelike);
            VerificationReport rep = verify_star_properties(A, seed, samples);
            return cli_detail::finish(rep, out_opts, started, cfg_ptr);
        }
        if (*br) {
            VerificationReport rep;
            if (cfg.table_path) {
                std::ifstream in(*cfg.table_path);
                if (!in) throw ConfigError("cannot open rule table '" + *cfg.table_path + "'");
                std::stringstream buf;
                buf << in.rdbuf();
                DerivationSet set = load_derivation_set(buf.str(), alphabet, false);
                rep.suite = gauge_name(gauge);
                rep.gauge = gauge_name(gauge);
                rep.convention = convention_str;
                rep.relations = brst_relations(set, alphabet);
                rep.table_warnings = set.table_warnings;
                rep.inputs.emplace_back(*cfg.table_path, sha256_hex(buf.str()));
            } else {
                rep = verify_brst_suite(gauge, conv, alphabet);
            }
            return cli_detail::finish(rep, out_opts, started, cfg_ptr);
        }
        if (*no) {
            std::string suite = massive ? "no-algebra-massive" : "no-algebra";
            Gauge base = gauge_str == "landau" ? Gauge::landau : Gauge::curci_ferrari;
            VerificationReport rep = verify_suite(suite, conv, alphabet, base);
            return cli_detail::finish(rep, out_opts, started, cfg_ptr);
        }
        if (*gf) {
            GaugeConfig gcfg = GaugeConfig::make(gauge, conv);
            gcfg.exactness_max_len = cfg.exactness_max_len;
            gcfg.exactness_candidate_bound = cfg.exactness_candidate_bound;
            VerificationReport rep = verify_gauge_fixing(gcfg, alphabet);
            return cli_detail::finish(rep, out_opts, started, cfg_ptr);
        }
        if (*cal) {
            VerificationReport rep;
            rep.suite = "calibrate";
            auto render = [&](const std::string& name, const CalibrationResult& res,
                              const std::string& expect) {
                RelationReport r;
                r.name = name;
                if (res.solutions.empty()) {
                    r.status = RelationStatus::fail;
                    std::string core;
                    for (const auto& f : res.failing_core) core += (core.empty() ? "" : "; ") + f;
                    r.failures.emplace_back("minimal failing core", core);
                } else {
                    std::string sols;
                    for (const auto& s : res.solutions)
                        for (const auto& [slot, v] : s)
                            sols += (sols.empty() ? "" : ", ") + std::string(param_name(calibration_param(slot))) +
                                    "=" + v.str();
                    r.witness = sols;
                    if (!expect.empty() && sols != expect) {
                        r.status = RelationStatus::fail;
                        r.failures.emplace_back("expected " + expect, "got " + sols);
                    }
                }
                rep.relations.push_back(std::move(r));
            };
            if (problem == "kappa" || problem == "all")
                render("ghost self-coupling kappa from nilpotency on V_L", calibrate_ghost_self_coupling(alphabet),
                       "u0=-1");
            if (problem == "lambda" || problem == "all")
                render("FP strength lambda from the filtration relations", calibrate_fp_strength(alphabet, false),
                       "u0=2");
            if (problem == "lambda-tension" || problem == "all") {
                CalibrationResult res = calibrate_fp_strength(alphabet, true);
                RelationReport r;
                r.name = "lambda with the [d1,d2] closure added (expected unsatisfiable)";
                if (!res.solutions.empty()) {
                    r.status = RelationStatus::fail;
                    r.failures.emplace_back("unexpected solutions", std::to_string(res.solutions.size()));
                } else {
                    std::string core;
                    for (const auto& f : res.failing_core) core += (core.empty() ? "" : "; ") + f;
                    r.witness = "empty solution set; minimal failing core: " + core;
                }
                rep.relations.push_back(std::move(r));
            }
            return cli_detail::finish(rep, out_opts, started, cfg_ptr);
        }
        if (*ev) {
            DerivationSet set;
            try {
                set = load_builtin_set(gauge, conv, alphabet);
            } catch (const Error&) {
                // custom alphabets have no built-in tables; plain expressions
                // still evaluate
            }
            DslNames names;
            names.alphabet = alphabet;
            EvalContext ctx{alphabet, set.by_name};
            Element result = ctx.eval(parse_expression(expr_text, names));
            std::cout << result.str() << "\n";
            return 0;
        }
        throw UsageError("no subcommand selected");
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace hsbrst
