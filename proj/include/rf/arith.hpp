#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "rf/errors.hpp"
#include "rf/parallel.hpp"

namespace rf {

// Arbitrary-precision nonnegative integer. GMP underneath; all arithmetic is
// value-faithful.
using BigNatural = mpz_class;

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Smallest-prime-factor table for [2, limit]. Immutable after construction and
// safe to share across threads.
class FactorSieve {
  public:
    explicit FactorSieve(u64 limit);

    u64 limit() const { return limit_; }
    u32 spf(u64 n) const;
    bool is_prime(u64 n) const { return n >= 2 && spf(n) == n; }

    // Binary cache: magic "RFSV1", little-endian u64 limit, raw u32 spf entries
    // for n = 2..limit, trailing FNV-1a checksum.
    void save(const std::string& path) const;
    static FactorSieve load(const std::string& path);

    // Budget is expressed as the largest admissible limit.
    static u64 limit_cap();
    static void set_limit_cap(u64 cap);

  private:
    FactorSieve() = default;
    u64 limit_ = 0;
    std::vector<u32> spf_;  // spf_[n-2] for n in [2, limit]
};

struct Factorization {
    u64 n = 1;
    std::vector<std::pair<u64, u32>> factors;  // primes strictly increasing

    u64 product() const;
};

Factorization factorize(u64 n, const FactorSieve& sieve);
u64 largest_prime_factor(u64 n, const FactorSieve& sieve);
bool is_y_smooth(u64 n, double y, const FactorSieve& sieve);
bool is_squarefree(u64 n, const FactorSieve& sieve);
int mobius(u64 n, const FactorSieve& sieve);
bool is_k_full(u64 n, u32 k, const FactorSieve& sieve);

// Sieve-free variants (trial division); used where values outrun any sieve.
bool is_squarefull_direct(u64 n);
bool is_k_full_direct(u64 n, u32 k);

u64 mod_inverse(u64 k, u64 p);
int legendre(i64 a, u64 p);

// floor(n^(1/k)), exact.
BigNatural integer_root(const BigNatural& n, u32 k);

// All primes in [lo, hi] by a plain sieve (no FactorSieve required).
std::vector<u64> primes_in(u64 lo, u64 hi);
std::vector<u64> primes_up_to(u64 n);

bool is_prime_u64(u64 n);  // deterministic Miller-Rabin

}  // namespace rf
