#include "rf/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace rf {

Rational rational_from_string(const std::string& text) {
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        mpz_class num;
        if (digits.empty() || num.set_str(digits, 10) != 0)
            throw domain_error("cannot parse rational: " + text);
        mpz_class den = 1;
        for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    Rational r;
    if (r.set_str(text, 10) != 0 || r.get_den() == 0)
        throw domain_error("cannot parse rational: " + text);
    r.canonicalize();
    return r;
}

const std::vector<ThresholdPiece>& threshold_table() {
    static const std::vector<ThresholdPiece> table = [] {
        auto q = [](long n, long d) { return Rational(n, d); };
        std::vector<ThresholdPiece> t;
        // value = c0 + c1 * beta on (lo, hi]
        t.push_back({q(7, 8), q(13, 14), q(10, 3), q(-5, 3), 2});    // 5(2-b)/3
        t.push_back({q(13, 14), q(17, 18), q(12, 1), q(-11, 1), 3}); // 12 - 11b
        t.push_back({q(17, 18), q(25, 26), q(7, 2), q(-2, 1), 3});   // (7-4b)/2
        t.push_back({q(25, 26), q(31, 32), q(16, 1), q(-15, 1), 4}); // 16 - 15b
        t.push_back({q(31, 32), q(41, 42), q(18, 5), q(-11, 5), 4}); // (18-11b)/5
        t.push_back({q(41, 42), q(49, 50), q(20, 1), q(-19, 1), 5}); // 20 - 19b
        t.push_back({q(49, 50), q(61, 62), q(11, 3), q(-7, 3), 5});  // (11-7b)/3
        t.push_back({q(61, 62), q(68, 69), q(24, 1), q(-23, 1), 6}); // 24 - 23b
        t.push_back({q(68, 69), q(1, 1), q(4, 3), q(0, 1), 6});      // 4/3
        return t;
    }();
    return table;
}

Rational alpha0(const Rational& beta) {
    for (const ThresholdPiece& piece : threshold_table())
        if (beta > piece.lo && beta <= piece.hi) return piece.c0 + piece.c1 * beta;
    throw domain_error("alpha0: beta outside (7/8, 1]");
}

bool admissible_exponents(const Rational& alpha, const Rational& beta) {
    Rational lo(23, 24), one(1);
    if (!(beta > lo && beta <= one)) return false;
    Rational lower = Rational(9, 2) - 3 * beta;
    return alpha > lower && alpha <= 3 * beta;
}

Rational alpha_condition(const Rational& beta, u32 k) {
    if (k < 1) throw domain_error("alpha_condition: k must be >= 1");
    long kk = static_cast<long>(k);
    Rational t1 = (Rational(1 - 3 * kk) * beta + 2 + 4 * kk) / Rational(kk + 1);
    Rational t2 = Rational(1 - 4 * kk) * beta + 4 * kk;
    Rational t3(4, 3);
    Rational t4 = Rational(2) - beta;
    return std::max(std::max(t1, t2), std::max(t3, t4));
}

std::pair<u32, Rational> optimal_k(const Rational& beta, u32 k_max) {
    if (!(beta > Rational(7, 8) && beta <= 1))
        throw domain_error("optimal_k: beta outside (7/8, 1]");
    if (k_max < 6) throw domain_error("optimal_k: k_max must be >= 6");
    u32 best_k = 1;
    Rational best = alpha_condition(beta, 1);
    for (u32 k = 2; k <= k_max; ++k) {
        Rational v = alpha_condition(beta, k);
        if (v < best) {
            best = v;
            best_k = k;
        }
    }
    return {best_k, best};
}

double bilinear_bound(double p, double L) {
    if (L < 2.0 || L >= p) throw domain_error("bilinear_bound: requires 2 <= L < p");
    bool first_branch;
    double li, pi_;
    if (std::modf(L, &li) == 0.0 && std::modf(p, &pi_) == 0.0) {
        // exact branch comparison for integer inputs
        mpz_class Lz(static_cast<unsigned long>(L)), pz(static_cast<unsigned long>(p));
        first_branch = Lz * Lz * Lz < pz;
    } else {
        first_branch = L * L * L < p;
    }
    return first_branch ? std::pow(L, 1.5) * std::pow(p, 0.125) : std::pow(L, 1.875);
}

ProofParameters proof_parameters(const Rational& alpha, const Rational& beta,
                                 const Rational& epsilon) {
    ProofParameters out;
    out.alpha = alpha;
    out.beta = beta;
    out.epsilon = epsilon;
    out.L_exp = (alpha - beta) / 2 - epsilon / 2;
    out.h_exp = beta;
    out.D_exp = epsilon / 2;
    out.E_exp = (alpha - 1) / 2;
    return out;
}

ExponentReport main_error_report(const Rational& alpha, const Rational& beta,
                                 const Rational& epsilon, std::optional<u32> k) {
    ProofParameters pp = proof_parameters(alpha, beta, epsilon);
    ExponentReport rep;
    rep.k = k ? *k : optimal_k(beta).first;
    rep.main_exp = alpha - 1 - epsilon;

    long kk = static_cast<long>(rep.k);
    const Rational& L = pp.L_exp;
    const Rational& D = pp.D_exp;
    // R = D(L^{(3k-1)/2k} p^{1/2k} + L^{(4k-1)/2k}) + L^2 h /(D p) + E + (L^2 h)^{1/4}
    rep.error_exps.emplace_back("D*L^((3k-1)/2k)*p^(1/2k)",
                                D + L * Rational(3 * kk - 1, 2 * kk) + Rational(1, 2 * kk));
    rep.error_exps.emplace_back("D*L^((4k-1)/2k)", D + L * Rational(4 * kk - 1, 2 * kk));
    rep.error_exps.emplace_back("L^2*h/(D*p)", 2 * L + pp.h_exp - D - 1);
    rep.error_exps.emplace_back("E", pp.E_exp);
    rep.error_exps.emplace_back("(L^2*h)^(1/4)", (2 * L + pp.h_exp) / 4);

    rep.main_dominates = true;
    for (const auto& [name, e] : rep.error_exps)
        if (!(e < rep.main_exp)) rep.main_dominates = false;
    return rep;
}

}  // namespace rf
