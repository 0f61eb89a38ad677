// ekrverify: builds PG(2,q) and PGL(3,q), then runs the registered
// verification checks (counting identities, the pair-space matrices N and
// A^T A, rank/kernel facts, spectral bounds and the exhaustive q=2 maximum
// coclique enumeration) and emits a text or JSON report.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ekr/report_json.hpp"
#include "ekr/verify.hpp"

namespace {

void render_text(std::ostream& os, const std::vector<ekr::Report>& reports,
                 const ekr::CliConfig& cfg) {
    os << "ekrverify " << ekr::kVersion << "  suite=" << cfg.suite << "  workers=" << cfg.workers
       << "  seed=0x" << std::hex << cfg.seed << std::dec << "\n";
    int pass = 0, fail = 0, skipped = 0, flagged = 0;
    for (const auto& rep : reports)
        for (const auto& c : rep.checks) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%9.1fms", c.elapsed_ms);
            std::string status = ekr::status_name(c.status);
            os << "  " << status << std::string(8 - status.size(), ' ') << " q=" << c.q << "  "
               << c.id << std::string(c.id.size() < 24 ? 24 - c.id.size() : 1, ' ') << buf;
            if (c.status == ekr::CheckStatus::Pass || c.status == ekr::CheckStatus::Fail)
                os << "  computed: " << c.computed;
            if (c.status == ekr::CheckStatus::Fail) os << "  expected: " << c.expected;
            if (!c.note.empty()) os << "  [" << c.note << "]";
            os << "\n";
            switch (c.status) {
                case ekr::CheckStatus::Pass: ++pass; break;
                case ekr::CheckStatus::Fail: ++fail; break;
                case ekr::CheckStatus::Skipped: ++skipped; break;
                case ekr::CheckStatus::Flagged: ++flagged; break;
            }
        }
    os << "summary: " << (pass + fail + skipped + flagged) << " checks -- " << pass << " pass, "
       << fail << " fail, " << skipped << " skipped, " << flagged << " flagged\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification harness for the derangement graph of PGL(3,q) on PG(2,q)"};
    ekr::CliConfig cfg;
    app.add_option("--q", cfg.qs, "field orders, comma separated (full suites: 2,3,4,5)")
        ->delimiter(',');
    app.add_option("--suite", cfg.suite,
                   "check suite: all, gf, geom, group, gram, B, N, spectral, thm, formulas");
    app.add_option("--format", cfg.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", cfg.out, "write the report to this path instead of stdout");
    app.add_option("--workers", cfg.workers, "worker threads for the parallel sweeps")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "seed for all sampled checks");
    app.add_option("--budget", cfg.time_budget_secs,
                   "time budget in seconds for search-type checks");
    app.add_option("--dump-n", cfg.dump_n,
                   "dump the N matrix (binary NMAT format); with several q values the "
                   "order is appended to the file name");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (cfg.qs.empty()) {
        std::cerr << "ekrverify: no field order given\n";
        return 2;
    }
    for (int q : cfg.qs) {
        if (!ekr::is_prime_power(q)) {
            std::cerr << "ekrverify: q = " << q << " is not a prime power\n";
            return 2;
        }
        int limit = cfg.suite == "formulas" ? 16 : 5;
        if (q > limit) {
            std::cerr << "ekrverify: q = " << q << " exceeds the suite limit (" << limit << ")\n";
            return 2;
        }
    }

    std::vector<ekr::Report> reports;
    try {
        for (int q : cfg.qs) {
            ekr::SuiteConfig sc;
            sc.workers = cfg.workers;
            sc.seed = cfg.seed;
            sc.time_budget_secs = cfg.time_budget_secs;
            if (!cfg.dump_n.empty())
                sc.dump_n_path =
                    cfg.qs.size() == 1 ? cfg.dump_n : cfg.dump_n + ".q" + std::to_string(q);
            reports.push_back(ekr::run_suite(q, cfg.suite, sc));
        }
    } catch (const ekr::UnknownSuite& e) {
        std::cerr << "ekrverify: " << e.what() << "\n";
        return 2;
    } catch (const ekr::NotPrimePower& e) {
        std::cerr << "ekrverify: " << e.what() << "\n";
        return 2;
    } catch (const ekr::TooLarge& e) {
        std::cerr << "ekrverify: " << e.what() << "\n";
        return 3;
    } catch (const ekr::ResourceExceeded& e) {
        std::cerr << "ekrverify: " << e.what() << "\n";
        return 3;
    }

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!cfg.out.empty()) {
        file.open(cfg.out);
        if (!file) {
            std::cerr << "ekrverify: cannot open " << cfg.out << "\n";
            return 2;
        }
        os = &file;
    }
    if (cfg.format == "json")
        *os << ekr::report_to_json(reports, cfg).dump(2) << "\n";
    else
        render_text(*os, reports, cfg);

    for (const auto& rep : reports)
        if (rep.failed()) return 1;
    return 0;
}
