#include "rf/arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace rf {

namespace {

u64 g_limit_cap = (1ull << 32);

constexpr u64 kSegment = 1ull << 22;

u64 fnv1a(const unsigned char* data, std::size_t len, u64 h = 1469598103934665603ull) {
    for (std::size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

u64 FactorSieve::limit_cap() { return g_limit_cap; }
void FactorSieve::set_limit_cap(u64 cap) { g_limit_cap = cap; }

FactorSieve::FactorSieve(u64 limit) : limit_(limit) {
    if (limit < 2) throw domain_error("FactorSieve: limit must be >= 2");
    if (limit > g_limit_cap)
        throw resource_error("FactorSieve: limit " + std::to_string(limit) +
                             " exceeds memory budget cap " + std::to_string(g_limit_cap));

    spf_.assign(limit - 1, 0);

    // Small primes up to sqrt(limit) first, then fill segments; ascending prime
    // order guarantees the first hit is the smallest factor.
    u64 root = static_cast<u64>(std::sqrt(static_cast<double>(limit)));
    while ((root + 1) * (root + 1) <= limit) ++root;
    while (root * root > limit) --root;

    std::vector<u64> small = primes_up_to(root);

    for (u64 seg_lo = 2; seg_lo <= limit; seg_lo += kSegment) {
        const u64 seg_hi = std::min(limit, seg_lo + kSegment - 1);
        for (u64 p : small) {
            u64 start = std::max(p * p, ((seg_lo + p - 1) / p) * p);
            for (u64 j = start; j <= seg_hi; j += p) {
                u32& slot = spf_[j - 2];
                if (slot == 0) slot = static_cast<u32>(p);
            }
        }
        for (u64 n = seg_lo; n <= seg_hi; ++n) {
            u32& slot = spf_[n - 2];
            if (slot == 0) slot = static_cast<u32>(n);  // untouched => prime
        }
    }
}

u32 FactorSieve::spf(u64 n) const {
    if (n < 2 || n > limit_)
        throw domain_error("FactorSieve::spf: n=" + std::to_string(n) + " outside [2, " +
                           std::to_string(limit_) + "]");
    return spf_[n - 2];
}

void FactorSieve::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw resource_error("cannot open sieve cache for writing: " + path);

    unsigned char header[13];
    std::memcpy(header, "RFSV1", 5);
    for (int i = 0; i < 8; ++i) header[5 + i] = static_cast<unsigned char>((limit_ >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(header), sizeof header);

    std::vector<unsigned char> buf(spf_.size() * 4);
    for (std::size_t i = 0; i < spf_.size(); ++i)
        for (int b = 0; b < 4; ++b) buf[4 * i + b] = static_cast<unsigned char>((spf_[i] >> (8 * b)) & 0xff);
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));

    u64 sum = fnv1a(header, sizeof header);
    sum = fnv1a(buf.data(), buf.size(), sum);
    unsigned char tail[8];
    for (int i = 0; i < 8; ++i) tail[i] = static_cast<unsigned char>((sum >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(tail), sizeof tail);
    if (!out) throw resource_error("short write on sieve cache: " + path);
}

FactorSieve FactorSieve::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw resource_error("cannot open sieve cache: " + path);

    unsigned char header[13];
    in.read(reinterpret_cast<char*>(header), sizeof header);
    if (!in || std::memcmp(header, "RFSV1", 5) != 0)
        throw domain_error("sieve cache " + path + ": bad magic");

    u64 limit = 0;
    for (int i = 0; i < 8; ++i) limit |= static_cast<u64>(header[5 + i]) << (8 * i);
    if (limit < 2 || limit > g_limit_cap)
        throw domain_error("sieve cache " + path + ": limit " + std::to_string(limit) +
                           " out of range");

    std::vector<unsigned char> buf((limit - 1) * 4);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!in) throw domain_error("sieve cache " + path + ": truncated payload");

    unsigned char tail[8];
    in.read(reinterpret_cast<char*>(tail), sizeof tail);
    if (!in) throw domain_error("sieve cache " + path + ": missing checksum");
    u64 stored = 0;
    for (int i = 0; i < 8; ++i) stored |= static_cast<u64>(tail[i]) << (8 * i);

    u64 sum = fnv1a(header, sizeof header);
    sum = fnv1a(buf.data(), buf.size(), sum);
    if (sum != stored) throw domain_error("sieve cache " + path + ": checksum mismatch");

    FactorSieve sieve;
    sieve.limit_ = limit;
    sieve.spf_.resize(limit - 1);
    for (std::size_t i = 0; i < sieve.spf_.size(); ++i) {
        u32 v = 0;
        for (int b = 0; b < 4; ++b) v |= static_cast<u32>(buf[4 * i + b]) << (8 * b);
        sieve.spf_[i] = v;
    }
    return sieve;
}

u64 Factorization::product() const {
    u64 r = 1;
    for (auto [p, e] : factors)
        for (u32 i = 0; i < e; ++i) r *= p;
    return r;
}

Factorization factorize(u64 n, const FactorSieve& sieve) {
    if (n == 0) throw domain_error("factorize: n must be positive");
    if (n > sieve.limit())
        throw domain_error("factorize: n=" + std::to_string(n) + " exceeds sieve limit " +
                           std::to_string(sieve.limit()));
    Factorization f;
    f.n = n;
    while (n > 1) {
        u64 p = sieve.spf(n);
        u32 e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.emplace_back(p, e);
    }
    return f;
}

u64 largest_prime_factor(u64 n, const FactorSieve& sieve) {
    if (n < 2) throw domain_error("largest_prime_factor: undefined for n < 2");
    if (n > sieve.limit())
        throw domain_error("largest_prime_factor: n exceeds sieve limit");
    u64 best = 1;
    while (n > 1) {
        u64 p = sieve.spf(n);
        best = p;  // spf divisions yield ascending primes
        while (n % p == 0) n /= p;
    }
    return best;
}

bool is_y_smooth(u64 n, double y, const FactorSieve& sieve) {
    if (n == 0) throw domain_error("is_y_smooth: n must be positive");
    if (n == 1) return true;
    return static_cast<double>(largest_prime_factor(n, sieve)) <= y;
}

bool is_squarefree(u64 n, const FactorSieve& sieve) {
    if (n == 0) throw domain_error("is_squarefree: n must be positive");
    while (n > 1) {
        u64 p = sieve.spf(n);
        n /= p;
        if (n % p == 0) return false;
    }
    return true;
}

int mobius(u64 n, const FactorSieve& sieve) {
    if (n == 0) throw domain_error("mobius: n must be positive");
    int sign = 1;
    while (n > 1) {
        u64 p = sieve.spf(n);
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    return sign;
}

bool is_k_full(u64 n, u32 k, const FactorSieve& sieve) {
    if (k < 2) throw domain_error("is_k_full: k must be >= 2");
    if (n == 0) throw domain_error("is_k_full: n must be positive");
    while (n > 1) {
        u64 p = sieve.spf(n);
        u32 e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e < k) return false;
    }
    return true;
}

bool is_k_full_direct(u64 n, u32 k) {
    if (k < 2) throw domain_error("is_k_full_direct: k must be >= 2");
    if (n == 0) throw domain_error("is_k_full_direct: n must be positive");
    for (u64 p = 2; p * p <= n; p == 2 ? p = 3 : p += 2) {
        if (n % p) continue;
        u32 e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e < k) return false;
    }
    return n == 1;  // leftover prime would have exponent 1
}

bool is_squarefull_direct(u64 n) {
    if (n == 0) throw domain_error("is_squarefull_direct: n must be positive");
    if (n == 1) return true;
    for (u64 p = 2; p * p * p <= n; p == 2 ? p = 3 : p += 2) {
        if (n % p) continue;
        u32 e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e < 2) return false;
    }
    if (n == 1) return true;
    // cofactor has no prime <= cbrt: squarefull iff it is a perfect square
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
    while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
    return r * r == n;
}

u64 mod_inverse(u64 k, u64 p) {
    if (p < 2) throw domain_error("mod_inverse: modulus must be >= 2");
    k %= p;
    if (k == 0) throw domain_error("mod_inverse: argument divisible by modulus");
    i64 t = 0, new_t = 1;
    i64 r = static_cast<i64>(p), new_r = static_cast<i64>(k);
    while (new_r != 0) {
        i64 q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw domain_error("mod_inverse: arguments not coprime");
    i64 res = t % static_cast<i64>(p);
    if (res < 0) res += static_cast<i64>(p);
    return static_cast<u64>(res);
}

int legendre(i64 a, u64 p) {
    if (p == 2 || !is_prime_u64(p)) throw domain_error("legendre: p must be an odd prime");
    i64 m = a % static_cast<i64>(p);
    if (m < 0) m += static_cast<i64>(p);
    if (m == 0) return 0;
    u64 e = powmod(static_cast<u64>(m), (p - 1) / 2, p);  // Euler criterion
    return e == 1 ? 1 : -1;
}

BigNatural integer_root(const BigNatural& n, u32 k) {
    if (k == 0) throw domain_error("integer_root: k must be >= 1");
    if (n < 0) throw domain_error("integer_root: n must be nonnegative");
    BigNatural r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

std::vector<u64> primes_up_to(u64 n) { return primes_in(2, n); }

std::vector<u64> primes_in(u64 lo, u64 hi) {
    std::vector<u64> out;
    if (hi < 2 || hi < lo) return out;
    lo = std::max<u64>(lo, 2);
    std::vector<bool> composite(hi + 1, false);
    for (u64 p = 2; p * p <= hi; ++p) {
        if (composite[p]) continue;
        for (u64 j = p * p; j <= hi; j += p) composite[j] = true;
    }
    for (u64 n = lo; n <= hi; ++n)
        if (!composite[n]) out.push_back(n);
    return out;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic witness set for 64-bit inputs
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

}  // namespace rf
