#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rf/arith.hpp"

namespace rf {

// First 2*ell squarefree integers greater than 1.
std::vector<u64> squarefree_seeds(u32 ell);

struct IntervalScanResult {
    BigNatural N;
    u32 k = 2;
    std::vector<BigNatural> witnesses;  // k-full integers strictly inside (N^k, (N+1)^k)
};

// Complete enumeration of the k-full integers in the open interval
// (N^k, (N+1)^k). N is capped by an enumeration budget.
IntervalScanResult scan_interval(u64 N, u32 k, u64 N_budget = (u64(1) << 26));

// Least N <= N_max whose interval holds at least `target` k-full integers.
std::optional<u64> record_search(u32 k, u64 N_max, u64 target);

// alpha = d^{-(k+1)/k}, the irrational targets of the cluster construction.
struct AlgebraicTarget {
    u64 d = 2;
    u32 k = 2;
};

struct ApproximationResult {
    BigNatural q;
    std::vector<BigNatural> r;              // nearest integers to q*alpha_j
    std::vector<mpq_class> certified_errors;  // rational upper bounds on |alpha_j - r_j/q|
    mpq_class exponent;                      // the verified bound is q^(-exponent)
};

// Searches [q_min, q_cap] for q with |alpha_j - r_j/q| <= q^(-exponent) for all
// j, by LLL on the simultaneous-approximation lattice with the scale swept
// geometrically. Every candidate is verified in exact interval arithmetic;
// reduction output is never trusted. nullopt when the sweep exhausts q_cap.
std::optional<ApproximationResult> simultaneous_approx(
    const std::vector<AlgebraicTarget>& targets, const mpq_class& exponent,
    const BigNatural& q_min, const BigNatural& q_cap, u32 precision_cap_bits = 1u << 16);

struct KfullConstructionParams {
    u32 k = 2;
    u32 ell = 1;
    BigNatural q_cap;        // 0 = default 2^4096
    u32 precision_bits = 1u << 16;
};

// Search floor: ceil((k 2^{k-1} (4 ell)^{(k+1)/k})^{2 ell}).
BigNatural construction_search_floor(u32 k, u32 ell);

struct CandidateRecord {
    u64 seed = 0;           // d_j
    BigNatural r;
    BigNatural value;       // d_j^{k+1} r_j^k
    mpq_class error_bound;  // certified |alpha_j - r_j/q| upper bound
    BigNatural gap;         // |q^k - value|
    bool below = false;     // value < q^k
};

struct ClusterCertificate {
    u32 k = 2, ell = 1;
    BigNatural q;
    BigNatural q_floor;
    mpq_class exponent;
    std::vector<CandidateRecord> candidates;
    BigNatural N;            // chosen interval is (N^k, (N+1)^k)
    std::size_t below_count = 0, above_count = 0;
};

std::pair<IntervalScanResult, ClusterCertificate> construct_kfull_cluster(
    const KfullConstructionParams& params);

// Full independent re-check of a certificate: the approximation inequalities,
// the integer gap bounds, interval membership, k-fullness, and distinctness.
// Throws domain_error describing the first failure; returns true otherwise.
bool verify_cluster_certificate(const ClusterCertificate& cert);

// Reference curves for cluster-size records: sqrt((k/(2(k+1))) log N / log log N)
// and the earlier cube-root curve with constant 3/8.
double cluster_curve(u32 k, double N);
double cluster_curve_prior(double N);

}  // namespace rf
