#pragma once

#include <complex>
#include <vector>

#include "rf/arith.hpp"

namespace rf {

// Full multiplicative character group mod p, realized through the least
// primitive root g and its discrete-log table: chi_j(n) = e(j*dlog[n]/(p-1)).
class CharacterTable {
  public:
    static CharacterTable build(u64 p);

    static u64 modulus_cap();
    static void set_modulus_cap(u64 cap);

    u64 p() const { return p_; }
    u64 generator() const { return g_; }
    u32 dlog(u64 n) const;

    std::complex<double> chi(u64 j, u64 n) const;
    std::complex<double> unit_root(u64 t) const { return unit_[t % (p_ - 1)]; }

  private:
    u64 p_ = 0;
    u64 g_ = 0;
    std::vector<u32> dlog_;                    // index n in [1, p-1]
    std::vector<std::complex<double>> unit_;   // e(t/(p-1))
};

u64 least_primitive_root(u64 p);

// Sum_{n<=K} chi_j(n), compensated summation.
std::complex<double> char_sum(const CharacterTable& table, u64 j, u64 K);

enum class MomentScope { nonprincipal, all };

double fourth_moment(const CharacterTable& table, u64 K, MomentScope scope);

// fourth_moment over K = 1..K_max in one pass; result[K-1] is the K value.
std::vector<double> fourth_moment_prefix(const CharacterTable& table, u64 K_max,
                                         MomentScope scope);

// (p-1) * #{(n1,n2,n3,n4) in [1,K]^4 : n1 n2 = n3 n4 (mod p)} via product
// buckets; equals the all-characters fourth moment exactly.
BigNatural fourth_moment_combinatorial(u64 p, u64 K);

u64 least_qnr(u64 p);
u64 qnr_count(u64 p, u64 K);

// 1/(4 sqrt(e)), the exponent threshold for short-interval non-residue counts.
double burgess_eta0();

struct BurgessRow {
    double eta = 0.0;
    u64 K = 0;
    u64 T = 0;
    double ratio = 0.0;
};

std::vector<BurgessRow> burgess_profile(u64 p, const std::vector<double>& etas);

// Exact evaluation of the four-fold character sum
//   sum_chi sum_{a in A} conj(chi(a)) (sum_{n in N} chi(n)^3)(sum_{u<=U} chi(u)^2)
// where N is the set of non-residues in [1,K]. Requires every a in A to be a
// non-residue with no representation a = n^3 u^2 (mod p), n in N, u <= U; the
// full sum then vanishes and the principal and quadratic contributions each
// equal #A * T_p(K) * U.
struct VanishingReport {
    std::complex<double> full_sum;
    u64 term_count = 0;      // (p-1) * #A * #N * U expanded summands
    i64 principal = 0;       // integer evaluation
    i64 quadratic = 0;       // integer evaluation via Legendre symbols
    u64 expected = 0;        // #A * T_p(K) * U
    double omega_sharp_sum = 0.0;  // real part of the sum over the remaining characters
    bool exact_ok = false;   // principal == quadratic == expected
};

VanishingReport character_vanishing_check(u64 p, const std::vector<u64>& A, u64 K, u64 U);

// Builder for the admissible set: non-residues not representable as n^3 u^2.
std::vector<u64> unrepresentable_qnr_set(u64 p, u64 K, u64 U);

}  // namespace rf
