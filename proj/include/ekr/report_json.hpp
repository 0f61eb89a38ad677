#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "ekr/verify.hpp"

namespace ekr {

using ordered_json = nlohmann::ordered_json;

struct CliConfig {
    std::vector<int> qs{2};
    std::string suite = "all";
    std::string format = "text";
    std::string out;
    unsigned workers = default_workers();
    std::uint64_t seed = kDefaultSeed;
    double time_budget_secs = 300.0;
    std::string dump_n;
};

inline ordered_json check_to_json(const Check& c) {
    ordered_json j;
    j["id"] = c.id;
    j["q"] = c.q;
    j["status"] = status_name(c.status);
    j["expected"] = c.expected;
    j["computed"] = c.computed;
    j["citation"] = c.citation;
    j["elapsed_ms"] = c.elapsed_ms;
    j["note"] = c.note;
    return j;
}

// {version, config, checks:[{id, q, status, expected, computed, citation,
//  elapsed_ms, note}]}
inline ordered_json report_to_json(const std::vector<Report>& reports, const CliConfig& cfg) {
    ordered_json j;
    j["version"] = kVersion;
    ordered_json jc;
    jc["q"] = cfg.qs;
    jc["suite"] = cfg.suite;
    jc["format"] = cfg.format;
    jc["out"] = cfg.out.empty() ? "-" : cfg.out;
    jc["workers"] = cfg.workers;
    jc["seed"] = cfg.seed;
    jc["budget_secs"] = cfg.time_budget_secs;
    if (!cfg.dump_n.empty()) jc["dump_n"] = cfg.dump_n;
    j["config"] = jc;
    ordered_json checks = ordered_json::array();
    for (const auto& rep : reports)
        for (const auto& c : rep.checks) checks.push_back(check_to_json(c));
    j["checks"] = checks;
    return j;
}

// Round-trip helper: parse and re-serialize; idempotent on reports this tool
// emits.
inline std::string reserialize_report(const std::string& text) {
    return ordered_json::parse(text).dump(2);
}

} // namespace ekr
