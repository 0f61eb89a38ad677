#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ekr/errors.hpp"
#include "ekr/exactla.hpp"
#include "ekr/group.hpp"
#include "ekr/util.hpp"

namespace ekr {

// Closed-form spectral data of the derangement graph, exact in 64-bit
// integers for q <= 16.
struct GraphParams {
    int q = 0;
    long long group_order = 0;
    long long d = 0;     // valency |D| = (q^2-1)^2 q^4 / 3
    long long tau = 0;   // -(q-1)(q^2-1)q^3/3
    long long bound = 0; // |G|/(1 - d/tau) = q^3(q^2-1)(q-1)
    bool has_psl_split = false;
    long long psl_order = 0;
    long long psl_d0 = 0;              // (q-1)^2(q+2)(q^2-1)q^3/9
    long long psl_tau0_quoted = 0;      // -(q-1)^3(q+2)q^2/3 (fails the bound identity)
    long long psl_tau0_consistent = 0; // -(q-1)^3(q+2)q^2/9 (satisfies it)
    long long psl_bound = 0;           // q^3(q^2-1)(q-1)/3
};

inline GraphParams graph_params(int q) {
    if (!is_prime_power(q))
        throw NotPrimePower("graph_params: " + std::to_string(q) + " is not a prime power");
    if (q > 16) throw TooLarge("graph_params: q > 16 overflows the exact 64-bit forms");
    long long Q = q;
    GraphParams p;
    p.q = q;
    p.group_order = Q * Q * Q * (Q * Q * Q - 1) * (Q * Q - 1);
    p.d = (Q * Q - 1) * (Q * Q - 1) * Q * Q * Q * Q / 3;
    p.tau = -(Q - 1) * (Q * Q - 1) * Q * Q * Q / 3;
    p.bound = Q * Q * Q * (Q * Q - 1) * (Q - 1);
    p.has_psl_split = (q - 1) % 3 == 0;
    if (p.has_psl_split) {
        p.psl_order = p.group_order / 3;
        p.psl_d0 = (Q - 1) * (Q - 1) * (Q + 2) * (Q * Q - 1) * Q * Q * Q / 9;
        p.psl_tau0_quoted = -(Q - 1) * (Q - 1) * (Q - 1) * (Q + 2) * Q * Q / 3;
        p.psl_tau0_consistent = -(Q - 1) * (Q - 1) * (Q - 1) * (Q + 2) * Q * Q / 9;
        p.psl_bound = p.bound / 3;
    }
    return p;
}

struct Coclique {
    std::vector<int> members; // sorted gids

    bool operator==(const Coclique& o) const { return members == o.members; }
    bool operator<(const Coclique& o) const { return members < o.members; }
};

// True iff all pairwise quotients gh^{-1} fix a point.
inline bool is_coclique(std::span<const int> s, const Group& G) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        int inv = G.inverse(s[i]);
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (G.is_derangement(G.compose(s[j], inv))) return false;
    }
    return true;
}

// The 2n^2 candidate maximum cocliques: {g : a^g = b} for every ordered point
// pair and {g : l^g = m} for every ordered line pair. Point-type sets come
// first (index a*n+b), then line-type (n^2 + l*n+m).
inline std::vector<Coclique> canonical_cocliques(const Group& G) {
    const int n = G.n();
    std::vector<Coclique> out(2 * n * n);
    const std::size_t expect = static_cast<std::size_t>(G.order() / n);
    for (auto& c : out) c.members.reserve(expect);
    for (int g = 0; g < G.size(); ++g) {
        auto pp = G.point_perm(g);
        auto lp = G.line_perm(g);
        for (int a = 0; a < n; ++a) {
            out[a * n + pp[a]].members.push_back(g);
            out[n * n + a * n + lp[a]].members.push_back(g);
        }
    }
    return out;
}

// Ratio-bound equality certificate on a Cayley graph slice: checks that
// x = |V| chi_S - |S| chi_V satisfies (A x)_g = tau x_g exactly, where
// (A x)_g sums x over the connection-set translates d g.
inline bool certify_tau_on(const Group& G, const std::vector<int>& vertices,
                           const std::vector<int>& connection, std::span<const int> S,
                           long long tau, unsigned workers = 0) {
    if (!workers) workers = default_workers();
    const long long nv = static_cast<long long>(vertices.size());
    const long long ns = static_cast<long long>(S.size());
    std::vector<long long> x(G.size(), 0);
    std::vector<std::uint8_t> in_v(G.size(), 0);
    for (int g : vertices) {
        x[g] = -ns;
        in_v[g] = 1;
    }
    for (int g : S) {
        if (!in_v[g]) throw SizeMismatch("certify_tau: S not inside the vertex set");
        x[g] = nv - ns;
    }
    std::vector<std::uint8_t> bad(workers, 0);
    parallel_chunks(vertices.size(), workers, [&](unsigned w, std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) {
            int g = vertices[k];
            long long y = 0;
            for (int d : connection) y += x[G.compose(d, g)];
            if (y != tau * x[g]) {
                bad[w] = 1;
                return;
            }
        }
    });
    for (auto f : bad)
        if (f) return false;
    return true;
}

// Full-graph version; |S| must meet the ratio bound |G|/(q^2+q+1) exactly.
inline bool certify_tau_eigenvector(std::span<const int> S, const Group& G, long long tau,
                                    unsigned workers = 0) {
    if (static_cast<long long>(S.size()) * (G.n()) != G.order())
        throw SizeMismatch("certify_tau_eigenvector: |S| (q^2+q+1) != |G|");
    std::vector<int> all(G.size());
    for (int g = 0; g < G.size(); ++g) all[g] = g;
    std::vector<int> conn = G.derangements();
    return certify_tau_on(G, all, conn, S, tau, workers);
}

// PSL split of a gid set, plus the two linear-character sums written in the
// basis (1, omega) with omega a primitive cube root of unity:
// xi(S) = (c0 - c2) + (c1 - c2) omega, xi^2(S) = (c0 - c1) + (c2 - c1) omega.
struct CosetDistribution {
    long long counts[3] = {0, 0, 0};
    std::pair<long long, long long> xi{0, 0};
    std::pair<long long, long long> xi2{0, 0};

    bool equal_thirds() const { return counts[0] == counts[1] && counts[1] == counts[2]; }
};

inline CosetDistribution coset_distribution(std::span<const int> S, const Group& G) {
    CosetDistribution d;
    for (int g : S) ++d.counts[G.psl_coset_index(g)];
    d.xi = {d.counts[0] - d.counts[2], d.counts[1] - d.counts[2]};
    d.xi2 = {d.counts[0] - d.counts[1], d.counts[2] - d.counts[1]};
    return d;
}

// Full spectrum of the q=2 derangement graph via the dense Jacobi solver.
inline std::vector<double> spectrum_q2(const Group& G, double tol = 1e-10) {
    if (G.q() != 2) throw Error("spectrum_q2: only defined for q = 2");
    const int m = G.size();
    std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0);
    for (int g = 0; g < m; ++g)
        for (int d : G.derangements()) a[static_cast<std::size_t>(G.compose(d, g)) * m + g] = 1.0;
    return jacobi_spectrum(std::move(a), m, tol);
}

enum class SearchStatus { Exact, LowerBoundOnly };

struct SearchResult {
    SearchStatus status = SearchStatus::LowerBoundOnly;
    int best_size = 0;
    Coclique witness;                    // a best coclique found
    std::vector<Coclique> all_maximum;   // filled in enumeration mode
    long long nodes = 0;
};

namespace detail {

// Fixed-width bitset over the group elements for the q=2 search.
struct BitRows {
    int n = 0, words = 0;
    std::vector<std::uint64_t> bits;

    BitRows(int n_, int rows) : n(n_), words((n_ + 63) / 64) {
        bits.assign(static_cast<std::size_t>(rows) * words, 0);
    }
    std::uint64_t* row(int r) { return &bits[static_cast<std::size_t>(r) * words]; }
    const std::uint64_t* row(int r) const { return &bits[static_cast<std::size_t>(r) * words]; }
    static void set(std::uint64_t* w, int i) { w[i >> 6] |= 1ULL << (i & 63); }
    static bool get(const std::uint64_t* w, int i) { return (w[i >> 6] >> (i & 63)) & 1; }
};

struct CliqueSearch {
    int n, words;
    const BitRows& adj; // complement graph: cliques here are cocliques of Gamma
    long long nodes = 0;
    long long node_cap_check = 0;
    std::chrono::steady_clock::time_point deadline;
    bool timed_out = false;

    // phase 1 state
    int best = 0;
    std::vector<int> best_clique, current;

    // phase 2 state
    int target = 0;
    std::vector<Coclique>* sink = nullptr;

    CliqueSearch(const BitRows& a, double budget_secs)
        : n(a.n), words(a.words), adj(a),
          deadline(std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(budget_secs))) {}

    bool out_of_time() {
        if (timed_out) return true;
        if (++node_cap_check % 8192 == 0 && std::chrono::steady_clock::now() > deadline)
            timed_out = true;
        return timed_out;
    }

    static int popcount(const std::uint64_t* w, int words) {
        int c = 0;
        for (int i = 0; i < words; ++i) c += __builtin_popcountll(w[i]);
        return c;
    }

    // Greedy coloring: number of color classes of the candidate set, an upper
    // bound on the largest clique inside it.
    int color_bound(const std::uint64_t* p) {
        std::vector<std::uint64_t> q(p, p + words);
        std::vector<std::uint64_t> c(words);
        int classes = 0;
        while (true) {
            bool any = false;
            for (int i = 0; i < words; ++i)
                if (q[i]) { any = true; break; }
            if (!any) break;
            ++classes;
            for (int i = 0; i < words; ++i) c[i] = q[i];
            for (int i = 0; i < words; ++i) {
                while (c[i]) {
                    int v = i * 64 + __builtin_ctzll(c[i]);
                    c[i] &= c[i] - 1;
                    q[v >> 6] &= ~(1ULL << (v & 63));
                    const std::uint64_t* av = adj.row(v);
                    for (int k = 0; k < words; ++k) c[k] &= ~av[k];
                    // keep scanning word i: c[i] may have dropped bits
                }
            }
        }
        return classes;
    }

    void find_best(std::vector<std::uint64_t> p) {
        ++nodes;
        if (out_of_time()) return;
        int sz = static_cast<int>(current.size());
        int cnt = popcount(p.data(), words);
        if (cnt == 0) {
            if (sz > best) {
                best = sz;
                best_clique = current;
            }
            return;
        }
        if (sz + color_bound(p.data()) <= best) return;
        // iterate candidates ascending; restrict to later vertices to visit
        // each clique once
        for (int i = 0; i < words; ++i) {
            std::uint64_t w = p[i];
            while (w) {
                int v = i * 64 + __builtin_ctzll(w);
                w &= w - 1;
                std::vector<std::uint64_t> np(words);
                const std::uint64_t* av = adj.row(v);
                for (int k = 0; k < words; ++k) np[k] = p[k] & av[k];
                // clear v and everything before it
                for (int k = 0; k < i; ++k) np[k] = 0;
                np[i] &= ~((v % 64 == 63) ? ~0ULL : ((1ULL << ((v & 63) + 1)) - 1));
                current.push_back(v);
                find_best(std::move(np));
                current.pop_back();
                if (timed_out) return;
                if (static_cast<int>(current.size()) + color_bound(p.data()) <= best) return;
            }
        }
        if (sz > best) {
            best = sz;
            best_clique = current;
        }
    }

    void enumerate(std::vector<std::uint64_t> p) {
        ++nodes;
        if (out_of_time()) return;
        int sz = static_cast<int>(current.size());
        if (sz == target) {
            Coclique c;
            c.members = current;
            std::sort(c.members.begin(), c.members.end());
            sink->push_back(std::move(c));
            return; // target is the proven maximum: no proper extension exists
        }
        if (sz + color_bound(p.data()) < target) return;
        for (int i = 0; i < words; ++i) {
            std::uint64_t w = p[i];
            while (w) {
                int v = i * 64 + __builtin_ctzll(w);
                w &= w - 1;
                std::vector<std::uint64_t> np(words);
                const std::uint64_t* av = adj.row(v);
                for (int k = 0; k < words; ++k) np[k] = p[k] & av[k];
                for (int k = 0; k < i; ++k) np[k] = 0;
                np[i] &= ~((v % 64 == 63) ? ~0ULL : ((1ULL << ((v & 63) + 1)) - 1));
                current.push_back(v);
                enumerate(std::move(np));
                current.pop_back();
                if (timed_out) return;
            }
        }
    }
};

} // namespace detail

// Exhaustive branch-and-bound maximum-coclique search on the derangement
// graph, feasible in exhaustive mode at q = 2. For larger groups it honors
// the time budget and may return only the canonical lower bound. The search
// itself is sequential: the q = 2 instance completes in well under a second,
// and a completed run is what makes the enumeration deterministic.
inline SearchResult max_coclique_search(const Group& G, double budget_secs = 300.0,
                                        bool enumerate_all = false) {
    SearchResult res;
    // canonical seed: a point-stabilizer coset is always a coclique
    res.witness.members = G.stabilizer_point(0);
    res.best_size = static_cast<int>(res.witness.members.size());
    if (G.size() > 20000 || budget_secs <= 0) {
        res.status = SearchStatus::LowerBoundOnly;
        return res;
    }
    const int m = G.size();
    detail::BitRows gamma(m, m);
    for (int g = 0; g < m; ++g)
        for (int d : G.derangements()) detail::BitRows::set(gamma.row(G.compose(d, g)), g);
    detail::BitRows comp(m, m);
    for (int g = 0; g < m; ++g) {
        std::uint64_t* out = comp.row(g);
        const std::uint64_t* in = gamma.row(g);
        for (int k = 0; k < comp.words; ++k) out[k] = ~in[k];
        // mask tail bits and the diagonal
        int tail = m & 63;
        if (tail) out[comp.words - 1] &= (1ULL << tail) - 1;
        out[g >> 6] &= ~(1ULL << (g & 63));
    }
    detail::CliqueSearch search(comp, budget_secs);
    search.best = res.best_size;
    search.best_clique = res.witness.members;
    std::vector<std::uint64_t> full(comp.words, ~0ULL);
    int tail = m & 63;
    if (tail) full[comp.words - 1] = (1ULL << tail) - 1;
    search.find_best(full);
    res.nodes = search.nodes;
    if (search.timed_out) {
        res.status = SearchStatus::LowerBoundOnly;
        res.best_size = search.best;
        res.witness.members = search.best_clique;
        std::sort(res.witness.members.begin(), res.witness.members.end());
        return res;
    }
    res.status = SearchStatus::Exact;
    res.best_size = search.best;
    res.witness.members = search.best_clique;
    std::sort(res.witness.members.begin(), res.witness.members.end());
    if (enumerate_all) {
        search.target = search.best;
        search.current.clear();
        std::vector<Coclique> found;
        search.sink = &found;
        search.enumerate(full);
        res.nodes = search.nodes;
        if (search.timed_out) {
            res.status = SearchStatus::LowerBoundOnly;
            return res;
        }
        std::sort(found.begin(), found.end());
        found.erase(std::unique(found.begin(), found.end()), found.end());
        res.all_maximum = std::move(found);
    }
    return res;
}

} // namespace ekr
