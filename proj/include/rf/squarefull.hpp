#pragma once

#include <optional>
#include <vector>

#include "rf/arith.hpp"

namespace rf {

// Sorted, complete enumeration of squarefull integers (every prime exponent
// >= 2) up to bound. Generated through the unique a^2 b^3 form, b squarefree.
struct SquarefullStream {
    u64 bound = 1;
    std::vector<u64> values;
};

SquarefullStream enumerate_squarefull(u64 bound);

// Alternative generator via r^2 s with s | r; non-unique form, deduplicated.
// Kept as an independent cross-check of the canonical enumeration.
std::vector<u64> enumerate_squarefull_r2s(u64 bound);

// Least squarefull integer = a (mod p) not exceeding cap.
std::optional<u64> least_squarefull_in_class(u64 a, u64 p, u64 cap, bool include_one = true);

// Per-class minima; n_p and the growth ratio F_max / (p^2 n_p) ride along.
struct SquarefullClassTable {
    u64 p = 2;
    std::vector<u64> F;  // indexed by residue
    u64 F_max = 0;
    u64 n_p = 0;
    double ratio = 0.0;  // F_max / (p^2 n_p)
};

SquarefullClassTable squarefull_class_table(u64 p, bool include_one = true);

// Counting step behind the lower-bound argument: QNR classes with a squarefull
// representative <= M, versus distinct products s^3 t^2 <= M with s a
// non-residue (and the relaxed s >= n_p variant the argument actually uses).
struct BoundedClassCounts {
    u64 qnr_classes_hit = 0;
    u64 products_qnr = 0;      // distinct s^3 t^2 <= M, legendre(s,p) = -1
    u64 products_relaxed = 0;  // distinct s^3 t^2 <= M, s >= n_p
};

BoundedClassCounts bounded_class_counts(u64 p, u64 M);

// Least n^3 u^2 = a (mod p) over non-residues n and u >= 1; a squarefull upper
// witness for the class minimum of a non-residue class.
u64 constructive_class_witness(u64 a, u64 p);

}  // namespace rf
