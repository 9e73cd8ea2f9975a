#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "rf/errors.hpp"
#include "rf/parallel.hpp"

namespace rf {

using Rational = mpq_class;

Rational rational_from_string(const std::string& text);

// Piecewise smoothness-exponent threshold alpha0(beta) on (7/8, 1]: each piece
// is affine in beta.
struct ThresholdPiece {
    Rational lo, hi;      // beta interval (lo, hi]
    Rational c0, c1;      // value = c0 + c1 * beta
    u32 k = 0;            // parameter choice attaining the piece
};

const std::vector<ThresholdPiece>& threshold_table();

Rational alpha0(const Rational& beta);

// Fixed-prime admissible region: beta in (23/24, 1], alpha in (9/2 - 3 beta, 3 beta].
bool admissible_exponents(const Rational& alpha, const Rational& beta);

// max{ ((1-3k)b + 2 + 4k)/(k+1), (1-4k)b + 4k, 4/3, 2 - b }: the exponent alpha
// must exceed this for the k-parameter route to close.
Rational alpha_condition(const Rational& beta, u32 k);

// Minimizing k and the value; ties resolve to the least k.
std::pair<u32, Rational> optimal_k(const Rational& beta, u32 k_max = 12);

// Bilinear-sum bound: L^{3/2} p^{1/8} for L < p^{1/3}, else L^{15/8} (L < p).
double bilinear_bound(double p, double L);

// Exponent bookkeeping for the error aggregate at x = Q^alpha, y = Q^beta.
struct ProofParameters {
    Rational alpha, beta, epsilon;
    Rational L_exp, h_exp, D_exp, E_exp;
};

ProofParameters proof_parameters(const Rational& alpha, const Rational& beta,
                                 const Rational& epsilon);

struct ExponentReport {
    Rational main_exp;
    u32 k = 0;
    std::vector<std::pair<std::string, Rational>> error_exps;
    bool main_dominates = false;
};

ExponentReport main_error_report(const Rational& alpha, const Rational& beta,
                                 const Rational& epsilon, std::optional<u32> k = std::nullopt);

}  // namespace rf
