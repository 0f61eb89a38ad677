#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ekr/report_json.hpp"
#include "ekr/verify.hpp"

using namespace ekr;

namespace {

const Check* find_check(const Report& r, const std::string& id) {
    for (const auto& c : r.checks)
        if (c.id == id) return &c;
    return nullptr;
}

} // namespace

TEST_CASE("q = 2 full suite: everything passes, two flagged discrepancies") {
    SuiteConfig cfg;
    cfg.workers = 2;
    Report rep = run_suite(2, "all", cfg);
    CHECK(rep.checks.size() >= 25);
    CHECK(rep.count(CheckStatus::Fail) == 0);
    CHECK(rep.count(CheckStatus::Flagged) == 2);
    const Check* quads = find_check(rep, "N.quads");
    REQUIRE(quads != nullptr);
    CHECK(quads->status == CheckStatus::Skipped); // stated for q > 2
    const Check* topeig = find_check(rep, "gram.topeig");
    REQUIRE(topeig != nullptr);
    CHECK(topeig->status == CheckStatus::Flagged);
    const Check* tau0 = find_check(rep, "spectral.tau0.quoted");
    REQUIRE(tau0 != nullptr);
    CHECK(tau0->status == CheckStatus::Flagged);
    const Check* thm = find_check(rep, "thm.q2.enumerate");
    REQUIRE(thm != nullptr);
    CHECK(thm->status == CheckStatus::Pass);
    CHECK(thm->computed.find("maximum_cocliques=98") != std::string::npos);
}

TEST_CASE("q = 3 N suite reports rank 120") {
    Report rep = run_suite(3, "N", {});
    CHECK(rep.count(CheckStatus::Fail) == 0);
    const Check* rank = find_check(rep, "N.rank");
    REQUIRE(rank != nullptr);
    CHECK(rank->status == CheckStatus::Pass);
    CHECK(rank->computed.find("rank=120") != std::string::npos);
    CHECK(rank->computed.find("nullity=49") != std::string::npos);
}

TEST_CASE("suite selection and input validation") {
    CHECK_THROWS_AS(run_suite(2, "nonsense", {}), UnknownSuite);
    CHECK_THROWS_AS(run_suite(6, "all", {}), NotPrimePower);
    CHECK_THROWS_AS(run_suite(7, "all", {}), TooLarge);     // full suites stop at q = 5
    CHECK_THROWS_AS(run_suite(17, "formulas", {}), TooLarge);
    Report f = run_suite(7, "formulas", {});
    CHECK(f.count(CheckStatus::Fail) == 0);
    CHECK(find_check(f, "spectral.ratio") != nullptr);
    CHECK(find_check(f, "group.order") == nullptr); // no group work in formulas
    Report f16 = run_suite(16, "formulas", {});
    CHECK(f16.count(CheckStatus::Fail) == 0);
}

TEST_CASE("reports are deterministic across worker counts and runs") {
    SuiteConfig w1;
    w1.workers = 1;
    SuiteConfig w3;
    w3.workers = 3;
    Report a = run_suite(2, "N", w1);
    Report b = run_suite(2, "N", w3);
    Report c = run_suite(2, "N", w1);
    CHECK(report_signature(a) == report_signature(b));
    CHECK(report_signature(a) == report_signature(c));
    SuiteConfig other_seed;
    other_seed.workers = 1;
    other_seed.seed = 12345;
    Report d = run_suite(4, "geom", other_seed);
    Report e = run_suite(4, "geom", other_seed);
    CHECK(report_signature(d) == report_signature(e)); // same seed, same samples
}

TEST_CASE("N dump through the suite config") {
    SuiteConfig cfg;
    cfg.dump_n_path = "verify_dump_q2.bin";
    Report rep = run_suite(2, "N", cfg);
    CHECK(rep.count(CheckStatus::Fail) == 0);
    NMatrix R = read_nmat(cfg.dump_n_path);
    CHECK(R.q == 2);
    CHECK(R.n == 7);
    Plane P{Field(2)};
    Group G(P);
    CHECK(R.m.e == build_N(G).m.e);
    std::remove(cfg.dump_n_path.c_str());
}

TEST_CASE("JSON report round-trips") {
    Report rep = run_suite(2, "gf", {});
    CliConfig cfg;
    cfg.qs = {2};
    cfg.suite = "gf";
    std::string once = report_to_json({rep}, cfg).dump(2);
    CHECK(reserialize_report(once) == once);
    auto parsed = ordered_json::parse(once);
    CHECK(parsed["version"] == kVersion);
    CHECK(parsed["checks"].size() == rep.checks.size());
    for (const auto& jc : parsed["checks"]) {
        CHECK(jc.contains("id"));
        CHECK(jc.contains("q"));
        CHECK(jc.contains("status"));
        CHECK(jc.contains("expected"));
        CHECK(jc.contains("computed"));
        CHECK(jc.contains("citation"));
        CHECK(jc.contains("elapsed_ms"));
        CHECK(jc.contains("note"));
    }
}

TEST_CASE("registry covers the required claims") {
    Report rep = run_suite(2, "meta", {});
    const Check* cov = find_check(rep, "meta.coverage");
    REQUIRE(cov != nullptr);
    CHECK(cov->status == CheckStatus::Pass);
}
