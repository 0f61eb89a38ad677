#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ekr/errors.hpp"
#include "ekr/geometry.hpp"
#include "ekr/gf.hpp"
#include "ekr/util.hpp"

namespace ekr {

using Mat3 = std::array<int, 9>; // row-major

struct GroupConfig {
    int max_q = 5;       // full enumeration with action tables beyond this refuses
    unsigned workers = 0; // 0 = hardware default
};

// PGL(3,q) as normalized invertible matrices (first nonzero entry in row-major
// scan equal to 1), dense gids in lexicographic matrix order, with precomputed
// point and line permutation tables. Immutable after construction; all sweeps
// are read-only.
class Group {
public:
    explicit Group(const Plane& plane, GroupConfig cfg = {})
        : plane_(&plane), field_(&plane.field()), q_(plane.q()), n_(plane.n()) {
        if (q_ > cfg.max_q)
            throw TooLarge("group_enumerate: q = " + std::to_string(q_) + " exceeds bound " +
                           std::to_string(cfg.max_q));
        workers_ = cfg.workers ? cfg.workers : default_workers();
        enumerate();
        fill_action_tables();
        fill_psl_cosets();
    }

    const Plane& plane() const { return *plane_; }
    const Field& field() const { return *field_; }
    int q() const { return q_; }
    int n() const { return n_; }

    int size() const { return count_; }
    long long order() const { return count_; }
    static long long order_formula(long long q) {
        return q * q * q * (q * q * q - 1) * (q * q - 1);
    }

    Mat3 matrix(int gid) const {
        Mat3 m;
        for (int i = 0; i < 9; ++i) m[i] = mats_[static_cast<std::size_t>(gid) * 9 + i];
        return m;
    }

    std::span<const std::uint16_t> point_perm(int gid) const {
        return {pperm_.data() + static_cast<std::size_t>(gid) * n_, static_cast<std::size_t>(n_)};
    }
    std::span<const std::uint16_t> line_perm(int gid) const {
        return {lperm_.data() + static_cast<std::size_t>(gid) * n_, static_cast<std::size_t>(n_)};
    }

    int point_image(int gid, int point) const {
        return pperm_[static_cast<std::size_t>(gid) * n_ + point];
    }
    int line_image(int gid, int line) const {
        return lperm_[static_cast<std::size_t>(gid) * n_ + line];
    }

    int identity() const { return identity_; }

    // Group law on gids: alpha^(compose(g,h)) = (alpha^g)^h.
    int compose(int g, int h) const {
        const std::int8_t* a = &mats_[static_cast<std::size_t>(g) * 9];
        const std::int8_t* b = &mats_[static_cast<std::size_t>(h) * 9];
        const int* mul = field_->mul_table();
        const int* add = field_->add_table();
        int c[9];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                int s = mul[a[i * 3] * q_ + b[j]];
                s = add[s * q_ + mul[a[i * 3 + 1] * q_ + b[3 + j]]];
                s = add[s * q_ + mul[a[i * 3 + 2] * q_ + b[6 + j]]];
                c[i * 3 + j] = s;
            }
        return gid_of(c);
    }

    int inverse(int g) const { return inverse_[g]; }

    std::pair<int, int> fixed_counts(int gid) const {
        return {fixed_points_[gid], fixed_lines_[gid]};
    }

    bool is_derangement(int gid) const { return fixed_points_[gid] == 0; }
    const std::vector<int>& derangements() const { return derangement_ids_; }
    const std::vector<int>& non_derangements() const { return non_derangement_ids_; }

    // 0 unless 3 | q-1; otherwise the cube class of det under a fixed
    // primitive-element labeling (a homomorphism onto Z_3).
    int psl_coset_index(int gid) const { return psl_coset_[gid]; }
    bool has_psl_split() const { return (q_ - 1) % 3 == 0; }

    Poly char_poly(int gid) const {
        Mat3 m = matrix(gid);
        const Field& F = *field_;
        int tr = F.add(F.add(m[0], m[4]), m[8]);
        int m2 = F.add(
            F.add(F.sub(F.mul(m[0], m[4]), F.mul(m[1], m[3])),
                  F.sub(F.mul(m[0], m[8]), F.mul(m[2], m[6]))),
            F.sub(F.mul(m[4], m[8]), F.mul(m[5], m[7])));
        int det = det3(m.data());
        Poly f;
        f.coeffs = {F.neg(det), m2, F.neg(tr), 1};
        return f;
    }

    std::vector<int> stabilizer_point(int point) const {
        std::vector<int> out;
        for (int g = 0; g < count_; ++g)
            if (point_image(g, point) == point) out.push_back(g);
        return out;
    }

    std::vector<int> stabilizer_line(int line) const {
        std::vector<int> out;
        for (int g = 0; g < count_; ++g)
            if (line_image(g, line) == line) out.push_back(g);
        return out;
    }

    // {g : a^g = b} -- a right coset of the point stabilizer of a.
    std::vector<int> coset_point(int a, int b) const {
        std::vector<int> out;
        for (int g = 0; g < count_; ++g)
            if (point_image(g, a) == b) out.push_back(g);
        return out;
    }

    std::vector<int> coset_line(int l, int m) const {
        std::vector<int> out;
        for (int g = 0; g < count_; ++g)
            if (line_image(g, l) == m) out.push_back(g);
        return out;
    }

    // Element fixing exactly the point alpha and exactly the line ell, for any
    // flag or anti-flag (alpha, ell). Conjugates a canonical matrix (regular
    // unipotent for flags; identity-plus-companion block of an irreducible
    // quadratic for anti-flags) by a basis change onto (alpha, ell).
    int witness_fixing_only(int point, int line) const {
        const Field& F = *field_;
        const Triple& alpha = plane_->points()[point].coords;
        const Triple& dual = plane_->lines()[line].dual;
        std::array<Triple, 2> basis = line_basis(dual);
        Mat3 h;
        Mat3 canon;
        if (plane_->incident(point, line)) {
            canon = {1, 0, 0, 1, 1, 0, 0, 1, 1};
            Triple v2 = basis[0];
            if (plane_->normalize(v2) == alpha) v2 = basis[1];
            int t = 0;
            while (dual[t] == 0) ++t; // e_t is off the line since e_t . dual != 0
            Triple v3 = {0, 0, 0};
            v3[t] = 1;
            h = {alpha[0], alpha[1], alpha[2], v2[0], v2[1], v2[2], v3[0], v3[1], v3[2]};
        } else {
            canon = {1, 0, 0, 0, anti_block_[0], anti_block_[1], 0, anti_block_[2],
                     anti_block_[3]};
            h = {alpha[0],    alpha[1],    alpha[2],    basis[0][0], basis[0][1],
                 basis[0][2], basis[1][0], basis[1][1], basis[1][2]};
        }
        Mat3 hinv = adjugate(h.data(), F);
        Mat3 g = mat_mul(mat_mul(hinv, canon), h);
        return gid_of(g.data());
    }

    int gid_of(const int* m) const {
        int lead = 0;
        while (m[lead] == 0) ++lead;
        const int* mul = field_->mul_table();
        int s = field_->inv(m[lead]);
        long long code = 0;
        for (int i = 0; i < 9; ++i) code = code * q_ + mul[s * q_ + m[i]];
        return code_to_gid_[code];
    }

    static Mat3 adjugate(const int* m, const Field& F) {
        auto mm = [&](int a, int b) { return F.mul(a, b); };
        auto sb = [&](int a, int b) { return F.sub(a, b); };
        return {sb(mm(m[4], m[8]), mm(m[5], m[7])), sb(mm(m[2], m[7]), mm(m[1], m[8])),
                sb(mm(m[1], m[5]), mm(m[2], m[4])), sb(mm(m[5], m[6]), mm(m[3], m[8])),
                sb(mm(m[0], m[8]), mm(m[2], m[6])), sb(mm(m[2], m[3]), mm(m[0], m[5])),
                sb(mm(m[3], m[7]), mm(m[4], m[6])), sb(mm(m[1], m[6]), mm(m[0], m[7])),
                sb(mm(m[0], m[4]), mm(m[1], m[3]))};
    }

    Mat3 mat_mul(const Mat3& a, const Mat3& b) const {
        const Field& F = *field_;
        Mat3 c;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                int s = F.mul(a[i * 3], b[j]);
                s = F.add(s, F.mul(a[i * 3 + 1], b[3 + j]));
                s = F.add(s, F.mul(a[i * 3 + 2], b[6 + j]));
                c[i * 3 + j] = s;
            }
        return c;
    }

    int det3(const int* m) const {
        const Field& F = *field_;
        int d = F.mul(m[0], F.sub(F.mul(m[4], m[8]), F.mul(m[5], m[7])));
        d = F.sub(d, F.mul(m[1], F.sub(F.mul(m[3], m[8]), F.mul(m[5], m[6]))));
        d = F.add(d, F.mul(m[2], F.sub(F.mul(m[3], m[7]), F.mul(m[4], m[6]))));
        return d;
    }

private:
    const Plane* plane_;
    const Field* field_;
    int q_, n_;
    unsigned workers_;
    int count_ = 0;
    int identity_ = -1;
    std::array<int, 4> anti_block_ = {-1, -1, -1, -1};

    std::vector<std::int8_t> mats_;
    std::vector<int> code_to_gid_;
    std::vector<std::uint16_t> pperm_, lperm_;
    std::vector<std::uint8_t> fixed_points_, fixed_lines_;
    std::vector<std::uint8_t> psl_coset_;
    std::vector<int> inverse_;
    std::vector<int> derangement_ids_, non_derangement_ids_;

    // Spanning pair of the 2-space {x : x . dual = 0}: with the dual's leading
    // coordinate at index j (value 1), the rows e_i - d_i e_j for i != j form a
    // reduced basis.
    std::array<Triple, 2> line_basis(const Triple& dual) const {
        int j = 0;
        while (dual[j] == 0) ++j;
        std::array<Triple, 2> out;
        int written = 0;
        for (int i = 0; i < 3; ++i) {
            if (i == j) continue;
            Triple b = {0, 0, 0};
            b[i] = 1;
            b[j] = field_->neg(dual[i]);
            out[written++] = b;
        }
        return out;
    }

    void enumerate() {
        const long long q = q_;
        long long q8 = 1;
        for (int i = 0; i < 8; ++i) q8 *= q;
        const long long total = q8 * q;
        mats_.reserve(static_cast<std::size_t>(order_formula(q)) * 9);
        code_to_gid_.assign(static_cast<std::size_t>(total), -1);
        int digits[9];
        for (long long code = 0; code < total; ++code) {
            if (code / q8 > 1) break; // leading entry >= 2: nothing normalized remains
            long long c = code;
            for (int i = 8; i >= 0; --i) {
                digits[i] = static_cast<int>(c % q);
                c /= q;
            }
            int lead = 0;
            while (lead < 9 && digits[lead] == 0) ++lead;
            if (lead == 9 || digits[lead] != 1) continue;
            if (det3(digits) == 0) continue;
            for (int i = 0; i < 9; ++i) mats_.push_back(static_cast<std::int8_t>(digits[i]));
            code_to_gid_[code] = count_;
            ++count_;
        }
        if (count_ != order_formula(q))
            throw Error("group_enumerate: element count mismatch");
        Mat3 id = {1, 0, 0, 0, 1, 0, 0, 0, 1};
        identity_ = gid_of(id.data());
    }

    void fill_action_tables() {
        pperm_.assign(static_cast<std::size_t>(count_) * n_, 0);
        lperm_.assign(static_cast<std::size_t>(count_) * n_, 0);
        fixed_points_.assign(count_, 0);
        fixed_lines_.assign(count_, 0);
        inverse_.assign(count_, -1);
        const auto& pts = plane_->points();
        const auto& lns = plane_->lines();
        const auto& pcode = plane_->point_by_code();
        const auto& lcode = plane_->line_by_code();
        const Field& F = *field_;
        parallel_chunks(count_, workers_, [&](unsigned, std::size_t b, std::size_t e) {
            for (std::size_t g = b; g < e; ++g) {
                const std::int8_t* m = &mats_[g * 9];
                int mi[9];
                for (int i = 0; i < 9; ++i) mi[i] = m[i];
                Mat3 adj = adjugate(mi, F);
                int fp = 0, fl = 0;
                for (int a = 0; a < n_; ++a) {
                    const Triple& x = pts[a].coords;
                    Triple y = {
                        F.add(F.add(F.mul(x[0], mi[0]), F.mul(x[1], mi[3])), F.mul(x[2], mi[6])),
                        F.add(F.add(F.mul(x[0], mi[1]), F.mul(x[1], mi[4])), F.mul(x[2], mi[7])),
                        F.add(F.add(F.mul(x[0], mi[2]), F.mul(x[1], mi[5])), F.mul(x[2], mi[8]))};
                    int pid = pcode[plane_->code_of(plane_->normalize(y))];
                    pperm_[g * n_ + a] = static_cast<std::uint16_t>(pid);
                    if (pid == a) ++fp;
                    const Triple& d = lns[a].dual;
                    Triple w = {
                        F.add(F.add(F.mul(adj[0], d[0]), F.mul(adj[1], d[1])), F.mul(adj[2], d[2])),
                        F.add(F.add(F.mul(adj[3], d[0]), F.mul(adj[4], d[1])), F.mul(adj[5], d[2])),
                        F.add(F.add(F.mul(adj[6], d[0]), F.mul(adj[7], d[1])),
                              F.mul(adj[8], d[2]))};
                    int lid = lcode[plane_->code_of(plane_->normalize(w))];
                    lperm_[g * n_ + a] = static_cast<std::uint16_t>(lid);
                    if (lid == a) ++fl;
                }
                fixed_points_[g] = static_cast<std::uint8_t>(fp);
                fixed_lines_[g] = static_cast<std::uint8_t>(fl);
                inverse_[g] = gid_of(adj.data());
            }
        });
        for (int g = 0; g < count_; ++g)
            (is_derangement(g) ? derangement_ids_ : non_derangement_ids_).push_back(g);
        // companion block of the smallest monic irreducible quadratic
        const Poly f = enumerate_irreducible(q_, 2).front();
        anti_block_ = {0, 1, field_->neg(f.coeffs[0]), field_->neg(f.coeffs[1])};
    }

    void fill_psl_cosets() {
        psl_coset_.assign(count_, 0);
        if (!has_psl_split()) return;
        const Field& F = *field_;
        // smallest primitive element by exhaustive order check
        int omega = -1;
        for (int x = 2; x < q_; ++x) {
            int order = 1, v = x;
            while (v != 1) {
                v = F.mul(v, x);
                ++order;
            }
            if (order == q_ - 1) {
                omega = x;
                break;
            }
        }
        if (omega < 0) throw Error("psl labeling: no primitive element found");
        std::vector<int> dlog(q_, 0);
        int v = 1;
        for (int j = 0; j < q_ - 1; ++j) {
            dlog[v] = j;
            v = F.mul(v, omega);
        }
        parallel_chunks(count_, workers_, [&](unsigned, std::size_t b, std::size_t e) {
            for (std::size_t g = b; g < e; ++g) {
                int mi[9];
                for (int i = 0; i < 9; ++i) mi[i] = mats_[g * 9 + i];
                psl_coset_[g] = static_cast<std::uint8_t>(dlog[det3(mi)] % 3);
            }
        });
    }
};

inline Group group_enumerate(const Plane& plane, GroupConfig cfg = {}) {
    return Group(plane, cfg);
}

} // namespace ekr
