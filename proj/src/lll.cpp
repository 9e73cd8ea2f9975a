#include "rf/lll.hpp"

#include <algorithm>

namespace rf {

namespace {

using Row = std::vector<mpz_class>;

mpz_class dot(const Row& a, const Row& b) {
    mpz_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// round(a / b) for b > 0, exact halves toward +infinity
mpz_class round_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_class num = 2 * a + b;
    mpz_class den = 2 * b;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

}  // namespace

void lll_reduce(std::vector<std::vector<mpz_class>>& basis) {
    const std::size_t n = basis.size();
    if (n <= 1) return;
    for (const Row& r : basis)
        if (r.size() != basis[0].size()) throw domain_error("lll_reduce: ragged basis");

    // 1-indexed bookkeeping arrays; d[0] = 1.
    std::vector<mpz_class> d(n + 1);
    std::vector<std::vector<mpz_class>> lam(n + 1, std::vector<mpz_class>(n + 1));
    d[0] = 1;
    d[1] = dot(basis[0], basis[0]);
    if (d[1] == 0) throw domain_error("lll_reduce: zero vector in basis");

    std::size_t kmax = 1;

    auto redi = [&](std::size_t k, std::size_t l) {
        if (2 * abs(lam[k][l]) > d[l]) {
            mpz_class q = round_div(lam[k][l], d[l]);
            Row& bk = basis[k - 1];
            const Row& bl = basis[l - 1];
            for (std::size_t i = 0; i < bk.size(); ++i) bk[i] -= q * bl[i];
            lam[k][l] -= q * d[l];
            for (std::size_t i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
        }
    };

    auto swapi = [&](std::size_t k) {
        std::swap(basis[k - 1], basis[k - 2]);
        for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
        mpz_class lambda = lam[k][k - 1];
        mpz_class B = (d[k - 2] * d[k] + lambda * lambda) / d[k - 1];
        for (std::size_t i = k + 1; i <= kmax; ++i) {
            mpz_class t = lam[i][k];
            lam[i][k] = (d[k] * lam[i][k - 1] - lambda * t) / d[k - 1];
            lam[i][k - 1] = (B * t + lambda * lam[i][k]) / d[k];
        }
        d[k - 1] = B;
    };

    std::size_t k = 2;
    while (k <= n) {
        if (k > kmax) {
            kmax = k;
            for (std::size_t j = 1; j <= k; ++j) {
                mpz_class u = dot(basis[k - 1], basis[j - 1]);
                for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
                if (j < k)
                    lam[k][j] = u;
                else {
                    d[k] = u;
                    if (d[k] == 0) throw domain_error("lll_reduce: dependent basis rows");
                }
            }
        }
        for (;;) {
            redi(k, k - 1);
            // Lovasz (delta = 3/4): swap while d_k d_{k-2} < (3/4) d_{k-1}^2 - lambda^2
            if (4 * d[k] * d[k - 2] < 3 * d[k - 1] * d[k - 1] - 4 * lam[k][k - 1] * lam[k][k - 1]) {
                swapi(k);
                k = std::max<std::size_t>(2, k - 1);
            } else {
                break;
            }
        }
        for (std::size_t l = k - 2; l >= 1; --l) redi(k, l);
        ++k;
    }
}

}  // namespace rf
