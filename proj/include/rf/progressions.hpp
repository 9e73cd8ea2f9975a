#pragma once

#include <optional>
#include <vector>

#include "rf/arith.hpp"

namespace rf {

// psi(x,y;p,a): smooth integers in one residue class; the sharp variant adds a
// squarefree filter.
struct ProgressionQuery {
    u64 x = 1;
    double y = 2.0;
    u64 p = 2;
    u64 a = 0;
};

u64 psi(const ProgressionQuery& q, const FactorSieve& sieve);
u64 psi_sharp(const ProgressionQuery& q, const FactorSieve& sieve);

struct ClassCounts {
    u64 psi = 0;
    u64 psi_sharp = 0;
    bool operator==(const ClassCounts&) const = default;
};

// One enumeration pass serving every residue class mod p.
std::vector<ClassCounts> sweep_classes(u64 x, double y, u64 p, const FactorSieve& sieve);

// Least qualifying squarefree p-smooth integer per residue class, or nullopt for
// classes no subset product of primes <= p ever reaches.
struct ClassCoverage {
    u64 p = 2;
    std::vector<std::optional<BigNatural>> first_hit;
};

struct CoverageOptions {
    bool include_class_zero = true;
    u32 max_primes = 24;  // enumeration budget: 2^max_primes subset products
};

ClassCoverage squarefree_smooth_coverage(u64 p, CoverageOptions opts = {});

// Least x with a squarefree p-smooth integer <= x in every class; absent when
// some class is never covered.
std::optional<BigNatural> coverage_threshold(u64 p, CoverageOptions opts = {});

}  // namespace rf
