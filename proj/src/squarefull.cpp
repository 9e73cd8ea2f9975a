#include "rf/squarefull.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace rf {

namespace {

u64 floor_root(u64 n, u32 k) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::pow(static_cast<double>(n), 1.0 / k));
    auto pw = [&](u64 b) -> BigNatural {
        BigNatural x = static_cast<unsigned long>(b);
        BigNatural out = 1;
        for (u32 i = 0; i < k; ++i) out *= x;
        return out;
    };
    while (r > 0 && pw(r) > n) --r;
    while (pw(r + 1) <= static_cast<unsigned long>(n)) ++r;
    return r;
}

bool squarefree_small(u64 n) {
    for (u64 p = 2; p * p <= n; p == 2 ? p = 3 : p += 2) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return false;
    }
    return true;
}

constexpr u64 kStreamBudget = 400000000;  // ~2.17 sqrt(bound) values

}  // namespace

SquarefullStream enumerate_squarefull(u64 bound) {
    if (bound == 0) throw domain_error("enumerate_squarefull: bound must be >= 1");
    double est = 2.2 * std::sqrt(static_cast<double>(bound)) + 16;
    if (est > static_cast<double>(kStreamBudget))
        throw resource_error("enumerate_squarefull: bound " + std::to_string(bound) +
                             " exceeds the stream budget");

    SquarefullStream s;
    s.bound = bound;
    u64 bmax = floor_root(bound, 3);
    for (u64 b = 1; b <= bmax; ++b) {
        if (!squarefree_small(b)) continue;
        u64 b3 = b * b * b;
        u64 amax = floor_root(bound / b3, 2);
        for (u64 a = 1; a <= amax; ++a) {
            u64 v = a * a * b3;
            if (v <= bound) s.values.push_back(v);
        }
    }
    std::sort(s.values.begin(), s.values.end());
    return s;
}

std::vector<u64> enumerate_squarefull_r2s(u64 bound) {
    if (bound == 0) throw domain_error("enumerate_squarefull_r2s: bound must be >= 1");
    std::unordered_set<u64> seen;
    // r = s*t, so the products are s^3 t^2.
    u64 smax = floor_root(bound, 3);
    for (u64 s = 1; s <= smax; ++s) {
        u64 s3 = s * s * s;
        u64 tmax = floor_root(bound / s3, 2);
        for (u64 t = 1; t <= tmax; ++t) {
            u64 v = s3 * t * t;
            if (v <= bound) seen.insert(v);
        }
    }
    std::vector<u64> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<u64> least_squarefull_in_class(u64 a, u64 p, u64 cap, bool include_one) {
    if (!is_prime_u64(p)) throw domain_error("least_squarefull_in_class: p must be prime");
    if (a >= p) throw domain_error("least_squarefull_in_class: residue out of range");
    if (cap == 0) throw domain_error("least_squarefull_in_class: cap must be >= 1");
    SquarefullStream stream = enumerate_squarefull(cap);
    for (u64 v : stream.values) {
        if (v == 1 && !include_one) continue;
        if (v % p == a) return v;
    }
    return std::nullopt;
}

SquarefullClassTable squarefull_class_table(u64 p, bool include_one) {
    if (p == 2 || !is_prime_u64(p))
        throw domain_error("squarefull_class_table: p must be an odd prime");

    SquarefullClassTable t;
    t.p = p;
    t.n_p = 2;
    while (powmod(t.n_p, (p - 1) / 2, p) != p - 1) ++t.n_p;

    t.F.assign(p, 0);
    std::vector<char> filled(p, 0);
    u64 remaining = p;

    u64 cap = p * p * p;
    for (;;) {
        SquarefullStream stream = enumerate_squarefull(cap);
        for (u64 v : stream.values) {
            if (v == 1 && !include_one) continue;
            u64 cls = v % p;
            if (!filled[cls]) {
                filled[cls] = 1;
                t.F[cls] = v;
                if (--remaining == 0) break;
            }
        }
        if (remaining == 0) break;
        if (cap > (u64(1) << 60))
            throw resource_error("squarefull_class_table: cap growth exceeded 2^63");
        cap *= 8;
    }
    t.F_max = *std::max_element(t.F.begin(), t.F.end());
    t.ratio = static_cast<double>(t.F_max) /
              (static_cast<double>(p) * static_cast<double>(p) * static_cast<double>(t.n_p));
    return t;
}

BoundedClassCounts bounded_class_counts(u64 p, u64 M) {
    if (p == 2 || !is_prime_u64(p))
        throw domain_error("bounded_class_counts: p must be an odd prime");
    if (M == 0) throw domain_error("bounded_class_counts: M must be >= 1");

    auto is_qnr = [&](u64 x) { return x % p != 0 && powmod(x % p, (p - 1) / 2, p) == p - 1; };

    BoundedClassCounts out;

    std::vector<char> hit(p, 0);
    for (u64 v : enumerate_squarefull(M).values) {
        u64 cls = v % p;
        if (!hit[cls] && is_qnr(cls)) {
            hit[cls] = 1;
            ++out.qnr_classes_hit;
        }
    }

    u64 np = 2;
    while (powmod(np, (p - 1) / 2, p) != p - 1) ++np;

    std::unordered_set<u64> qnr_products, relaxed_products;
    u64 smax = floor_root(M, 3);
    for (u64 s = 1; s <= smax; ++s) {
        bool s_qnr = is_qnr(s);
        bool s_relaxed = s >= np;
        if (!s_qnr && !s_relaxed) continue;
        u64 s3 = s * s * s;
        u64 tmax = floor_root(M / s3, 2);
        for (u64 t = 1; t <= tmax; ++t) {
            u64 v = s3 * t * t;
            if (v > M) continue;
            if (s_qnr) qnr_products.insert(v);
            if (s_relaxed) relaxed_products.insert(v);
        }
    }
    out.products_qnr = qnr_products.size();
    out.products_relaxed = relaxed_products.size();
    return out;
}

u64 constructive_class_witness(u64 a, u64 p) {
    if (p == 2 || !is_prime_u64(p))
        throw domain_error("constructive_class_witness: p must be an odd prime");
    if (a == 0 || a >= p || powmod(a, (p - 1) / 2, p) != p - 1)
        throw domain_error("constructive_class_witness: a must be a quadratic non-residue");

    // min square root per residue class
    std::vector<u64> root(p, 0);
    for (u64 u = (p - 1) / 2; u >= 1; --u) root[mulmod(u, u, p)] = u;

    u64 best = 0;
    u64 n = 1;
    for (;;) {
        ++n;
        // candidates only improve while n^3 < best
        if (best && static_cast<unsigned __int128>(n) * n * n >= best) break;
        if (powmod(n % p, (p - 1) / 2, p) != p - 1) continue;
        u64 n3 = mulmod(n % p, mulmod(n % p, n % p, p), p);
        u64 target = mulmod(a, mod_inverse(n3, p), p);
        u64 u0 = root[target];
        if (u0 == 0) continue;  // a * n^-3 is a QR since a and n^3 are both QNR
        unsigned __int128 cand =
            static_cast<unsigned __int128>(n) * n * n * u0 * u0;
        if (cand > ~u64(0))
            throw resource_error("constructive_class_witness: witness exceeds 64 bits");
        u64 c = static_cast<u64>(cand);
        if (!best || c < best) best = c;
    }
    if (!best) throw resource_error("constructive_class_witness: search failed");
    return best;
}

}  // namespace rf
