#include "rf/kfull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "rf/lll.hpp"

namespace rf {

namespace {

bool squarefree_u64(u64 n) {
    for (u64 p = 2; p * p <= n; p == 2 ? p = 3 : p += 2) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return false;
    }
    return true;
}

mpz_class pow_u(const mpz_class& b, u64 e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

// floor(2^bits * d^{-(k+1)/k}): nested-floor identity keeps it exact.
mpz_class alpha_floor_scaled(u64 d, u32 k, u32 bits) {
    mpz_class num = 1;
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(bits) * k);
    mpz_class den = pow_u(mpz_class(static_cast<unsigned long>(d)), k + 1);
    mpz_class t = num / den;
    mpz_class r;
    mpz_root(r.get_mpz_t(), t.get_mpz_t(), k);
    return r;
}

struct Enclosure {
    // alpha in (m / 2^bits, (m+1) / 2^bits)
    mpz_class m;
    u32 bits = 0;
};

Enclosure enclose(const AlgebraicTarget& t, u32 bits) {
    return {alpha_floor_scaled(t.d, t.k, bits), bits};
}

mpq_class scaled(const mpz_class& num, u32 bits) {
    mpz_class den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

// round(q*alpha) decided from the enclosure; widens precision on demand.
std::optional<mpz_class> round_nearest(const mpz_class& q, const Enclosure& e) {
    // floor((2 q m + 2^bits) / 2^{bits+1}) at both ends
    mpz_class pow2 = 1;
    mpz_mul_2exp(pow2.get_mpz_t(), pow2.get_mpz_t(), e.bits);
    mpz_class lo_num = 2 * q * e.m + pow2;
    mpz_class hi_num = 2 * q * (e.m + 1) + pow2;
    mpz_class den = 2 * pow2;
    mpz_class rlo, rhi;
    mpz_fdiv_q(rlo.get_mpz_t(), lo_num.get_mpz_t(), den.get_mpz_t());
    mpz_fdiv_q(rhi.get_mpz_t(), hi_num.get_mpz_t(), den.get_mpz_t());
    if (rlo == rhi) return rlo;
    return std::nullopt;
}

enum class Cert { holds, fails, undecided };

// |alpha - r/q| <= q^(-a/b) decided exactly from the enclosure.
Cert check_inequality(const AlgebraicTarget& t, const Enclosure& e, const mpz_class& q,
                      const mpz_class& r, const mpq_class& exponent, mpq_class* err_upper) {
    mpq_class lo = scaled(e.m, e.bits) - mpq_class(r, q);
    mpq_class hi = scaled(e.m + 1, e.bits) - mpq_class(r, q);
    lo.canonicalize();
    hi.canonicalize();

    mpq_class abs_lo, abs_hi;
    if (lo >= 0) {
        abs_lo = lo;
        abs_hi = hi;
    } else if (hi <= 0) {
        abs_lo = -hi;
        abs_hi = -lo;
    } else {
        abs_lo = 0;
        abs_hi = std::max(mpq_class(-lo), hi);
    }
    if (err_upper) *err_upper = abs_hi;

    // err <= q^(-a/b)  <=>  err^b * q^a <= 1
    unsigned long a = mpz_get_ui(exponent.get_num().get_mpz_t());
    unsigned long b = mpz_get_ui(exponent.get_den().get_mpz_t());
    mpz_class qa = pow_u(q, a);

    auto side = [&](const mpq_class& v) {
        mpz_class num_pow, den_pow;
        mpz_pow_ui(num_pow.get_mpz_t(), v.get_num().get_mpz_t(), b);
        mpz_pow_ui(den_pow.get_mpz_t(), v.get_den().get_mpz_t(), b);
        mpz_class lhs = num_pow * qa;
        return cmp(lhs, den_pow);  // err^b * q^a vs 1 cleared of denominators
    };

    if (side(abs_hi) <= 0) return Cert::holds;
    if (side(abs_lo) > 0) return Cert::fails;
    return Cert::undecided;
}

struct Verifier {
    std::vector<AlgebraicTarget> targets;
    mpq_class exponent;
    u32 cap_bits;

    // nullopt = inequality certified false; throws precision_error when the cap
    // cannot separate.
    std::optional<ApproximationResult> verify(const mpz_class& q) const {
        ApproximationResult res;
        res.q = q;
        res.exponent = exponent;
        u32 bits = std::max<u32>(64, static_cast<u32>(mpz_sizeinbase(q.get_mpz_t(), 2)) * 2 + 32);
        for (const AlgebraicTarget& t : targets) {
            for (u32 b = bits;; b *= 2) {
                if (b > cap_bits)
                    throw precision_error(
                        "simultaneous_approx: cannot certify |alpha - r/q| vs q^-e for d=" +
                        std::to_string(t.d) + " at " + std::to_string(cap_bits) + " bits");
                Enclosure e = enclose(t, b);
                auto r = round_nearest(q, e);
                if (!r) continue;
                mpq_class err;
                Cert c = check_inequality(t, e, q, *r, exponent, &err);
                if (c == Cert::undecided) continue;
                if (c == Cert::fails) return std::nullopt;
                res.r.push_back(*r);
                res.certified_errors.push_back(err);
                break;
            }
        }
        return res;
    }
};

}  // namespace

std::vector<u64> squarefree_seeds(u32 ell) {
    if (ell < 1) throw domain_error("squarefree_seeds: ell must be >= 1");
    std::vector<u64> seeds;
    for (u64 n = 2; seeds.size() < 2ull * ell; ++n)
        if (squarefree_u64(n)) seeds.push_back(n);
    return seeds;
}

std::optional<ApproximationResult> simultaneous_approx(
    const std::vector<AlgebraicTarget>& targets, const mpq_class& exponent,
    const BigNatural& q_min, const BigNatural& q_cap, u32 precision_cap_bits) {
    if (targets.empty()) throw domain_error("simultaneous_approx: no targets");
    if (q_min < 1) throw domain_error("simultaneous_approx: q_min must be >= 1");
    if (exponent <= 0) throw domain_error("simultaneous_approx: exponent must be positive");
    for (const AlgebraicTarget& t : targets)
        if (t.d < 2 || t.k < 1) throw domain_error("simultaneous_approx: bad target");

    Verifier verifier{targets, exponent, precision_cap_bits};
    verifier.exponent.canonicalize();

    const std::size_t n = targets.size();

    std::set<mpz_class> tried;
    auto try_candidate = [&](const mpz_class& q) -> std::optional<ApproximationResult> {
        if (q < q_min || q > q_cap) return std::nullopt;
        if (!tried.insert(q).second) return std::nullopt;
        return verifier.verify(q);
    };

    if (auto hit = try_candidate(q_min)) return hit;

    const unsigned long exp_num = mpz_get_ui(verifier.exponent.get_num().get_mpz_t());
    const unsigned long exp_den = mpz_get_ui(verifier.exponent.get_den().get_mpz_t());

    // Geometric sweep of the target scale. At scale t we aim at q ~ t with
    // errors ~ t^(-1/n); the lattice below balances those via the first-column
    // weight T.
    for (mpz_class t = q_min; t <= q_cap; t *= 2) {
        const u64 tbits = mpz_sizeinbase(t.get_mpz_t(), 2);
        // 2^bits >= t^exponent * 2^64
        const u32 bits = static_cast<u32>((tbits * exp_num + exp_den - 1) / exp_den) + 66;
        mpz_class S = 1;
        mpz_mul_2exp(S.get_mpz_t(), S.get_mpz_t(), bits);

        // u = floor(t^exponent); T ~ S / t^exponent >= 2^64 by the choice of bits
        mpz_class ta = pow_u(t, exp_num);
        mpz_class u;
        mpz_root(u.get_mpz_t(), ta.get_mpz_t(), exp_den);
        mpz_class T = S / (u + 1);
        if (T < 1) T = 1;

        std::vector<std::vector<mpz_class>> basis(n + 1, std::vector<mpz_class>(n + 1));
        basis[0][0] = T;
        for (std::size_t j = 0; j < n; ++j) {
            mpz_class m2 = alpha_floor_scaled(targets[j].d, targets[j].k, bits + 1);
            basis[0][j + 1] = (m2 + 1) / 2;  // round(S * alpha_j)
        }
        for (std::size_t j = 1; j <= n; ++j) basis[j][j] = S;

        lll_reduce(basis);

        // Candidate q values: reduced rows plus pairwise sums/differences.
        std::vector<mpz_class> firsts;
        for (const auto& row : basis) firsts.push_back(row[0]);
        std::vector<mpz_class> cands;
        for (const mpz_class& f : firsts) cands.push_back(abs(f));
        for (std::size_t i = 0; i < firsts.size(); ++i)
            for (std::size_t j = i + 1; j < firsts.size(); ++j) {
                cands.push_back(abs(firsts[i] + firsts[j]));
                cands.push_back(abs(firsts[i] - firsts[j]));
            }
        std::sort(cands.begin(), cands.end());
        for (const mpz_class& c : cands) {
            if (c == 0) continue;
            if (c % T != 0) continue;
            if (auto hit = try_candidate(c / T)) return hit;
        }
    }
    return std::nullopt;
}

BigNatural construction_search_floor(u32 k, u32 ell) {
    if (k < 2 || ell < 1) throw domain_error("construction_search_floor: need k >= 2, ell >= 1");
    // R = (k 2^{k-1} (4 ell)^{(k+1)/k})^{2 ell}; R^k is integral.
    mpz_class base = mpz_class(static_cast<unsigned long>(k)) << (k - 1);
    mpz_class rk = pow_u(base, 2ull * ell * k) *
                   pow_u(mpz_class(static_cast<unsigned long>(4 * ell)), 2ull * ell * (k + 1));
    mpz_class r;
    mpz_root(r.get_mpz_t(), rk.get_mpz_t(), k);
    if (pow_u(r, k) != rk) r += 1;  // ceil
    return r;
}

std::pair<IntervalScanResult, ClusterCertificate> construct_kfull_cluster(
    const KfullConstructionParams& params) {
    if (params.k < 2) throw domain_error("construct_kfull_cluster: k must be >= 2");
    if (params.ell < 1) throw domain_error("construct_kfull_cluster: ell must be >= 1");

    const u32 k = params.k;
    const u32 ell = params.ell;

    BigNatural q_floor = construction_search_floor(k, ell);
    BigNatural q_cap = params.q_cap;
    if (q_cap == 0) {
        q_cap = 1;
        mpz_mul_2exp(q_cap.get_mpz_t(), q_cap.get_mpz_t(), 4096);
    }
    if (q_cap < q_floor)
        throw domain_error("construct_kfull_cluster: q_cap below the search floor " +
                           q_floor.get_str());

    std::vector<u64> seeds = squarefree_seeds(ell);
    std::vector<AlgebraicTarget> targets;
    for (u64 d : seeds) targets.push_back({d, k});
    mpq_class exponent(2ul * ell + 1, 2ul * ell);
    exponent.canonicalize();

    auto approx = simultaneous_approx(targets, exponent, q_floor, q_cap, params.precision_bits);
    if (!approx)
        throw resource_error("construct_kfull_cluster: approximation search exhausted [" +
                             q_floor.get_str() + ", " + q_cap.get_str() + "]");

    ClusterCertificate cert;
    cert.k = k;
    cert.ell = ell;
    cert.q = approx->q;
    cert.q_floor = q_floor;
    cert.exponent = exponent;

    const mpz_class qk = pow_u(cert.q, k);
    const mpz_class qk1 = pow_u(cert.q, k - 1);
    for (std::size_t j = 0; j < seeds.size(); ++j) {
        CandidateRecord rec;
        rec.seed = seeds[j];
        rec.r = approx->r[j];
        rec.error_bound = approx->certified_errors[j];
        rec.value = pow_u(mpz_class(static_cast<unsigned long>(seeds[j])), k + 1) *
                    pow_u(rec.r, k);
        rec.gap = abs(qk - rec.value);
        rec.below = rec.value < qk;
        if (rec.value == qk)
            throw std::logic_error("construct_kfull_cluster: candidate equals q^k");
        if (!(rec.gap < qk1))
            throw std::logic_error("construct_kfull_cluster: |q^k - c_j| < q^{k-1} failed");
        cert.candidates.push_back(std::move(rec));
    }
    for (const CandidateRecord& rec : cert.candidates) {
        if (rec.below)
            ++cert.below_count;
        else
            ++cert.above_count;
    }

    const bool use_below = cert.below_count >= cert.above_count;
    cert.N = use_below ? cert.q - 1 : cert.q;

    IntervalScanResult out;
    out.N = cert.N;
    out.k = k;
    for (const CandidateRecord& rec : cert.candidates)
        if (rec.below == use_below) out.witnesses.push_back(rec.value);
    std::sort(out.witnesses.begin(), out.witnesses.end());

    if (out.witnesses.size() < ell)
        throw std::logic_error("construct_kfull_cluster: pigeonhole failure");
    return {std::move(out), std::move(cert)};
}

bool verify_cluster_certificate(const ClusterCertificate& cert) {
    const u32 k = cert.k;
    if (k < 2 || cert.ell < 1) throw domain_error("certificate: bad parameters");
    if (cert.q < cert.q_floor) throw domain_error("certificate: q below search floor");
    if (cert.q_floor != construction_search_floor(k, cert.ell))
        throw domain_error("certificate: stated search floor is wrong");
    mpq_class expect_exp(2ul * cert.ell + 1, 2ul * cert.ell);
    expect_exp.canonicalize();
    if (cert.exponent != expect_exp) throw domain_error("certificate: wrong exponent");

    std::vector<u64> seeds = squarefree_seeds(cert.ell);
    if (cert.candidates.size() != seeds.size())
        throw domain_error("certificate: candidate count mismatch");

    const mpz_class qk = pow_u(cert.q, k);
    const mpz_class qk1 = pow_u(cert.q, k - 1);
    std::set<mpz_class> distinct;
    std::size_t below = 0, above = 0;

    for (std::size_t j = 0; j < seeds.size(); ++j) {
        const CandidateRecord& rec = cert.candidates[j];
        if (rec.seed != seeds[j]) throw domain_error("certificate: seed list mismatch");
        if (!squarefree_u64(rec.seed)) throw domain_error("certificate: seed not squarefree");

        AlgebraicTarget t{rec.seed, k};
        // r must be the nearest integer and satisfy the approximation bound.
        for (u32 b = 128;; b *= 2) {
            if (b > (1u << 20)) throw precision_error("certificate: cannot certify candidate");
            Enclosure e = enclose(t, b);
            auto r = round_nearest(cert.q, e);
            if (!r) continue;
            if (*r != rec.r) throw domain_error("certificate: r_j is not round(q alpha_j)");
            Cert c = check_inequality(t, e, cert.q, *r, cert.exponent, nullptr);
            if (c == Cert::undecided) continue;
            if (c == Cert::fails) throw domain_error("certificate: approximation bound fails");
            break;
        }

        mpz_class value = pow_u(mpz_class(static_cast<unsigned long>(rec.seed)), k + 1) *
                          pow_u(rec.r, k);
        if (value != rec.value) throw domain_error("certificate: candidate value mismatch");
        if (!distinct.insert(value).second) throw domain_error("certificate: duplicate candidate");

        mpz_class gap = abs(qk - value);
        if (gap != rec.gap) throw domain_error("certificate: gap mismatch");
        if (!(gap < qk1)) throw domain_error("certificate: gap bound fails");
        if ((value < qk) != rec.below) throw domain_error("certificate: side mismatch");
        rec.below ? ++below : ++above;

        // interval membership, exact
        if (rec.below) {
            if (!(pow_u(cert.q - 1, k) < value && value < qk))
                throw domain_error("certificate: witness outside ((q-1)^k, q^k)");
        } else {
            if (!(qk < value && value < pow_u(cert.q + 1, k)))
                throw domain_error("certificate: witness outside (q^k, (q+1)^k)");
        }

        // k-fullness: structural for the d-part is immediate (d squarefree, exponent
        // k+1; primes of r get multiples of k); cross-check directly when small.
        if (value < mpz_class(1000000000000UL)) {
            u64 v = mpz_get_ui(value.get_mpz_t());
            if (!is_k_full_direct(v, k)) throw domain_error("certificate: witness not k-full");
        }
    }

    if (below != cert.below_count || above != cert.above_count)
        throw domain_error("certificate: side counts mismatch");
    const bool use_below = cert.N == cert.q - 1;
    if (!use_below && cert.N != cert.q) throw domain_error("certificate: N matches neither side");
    if ((use_below ? below : above) < cert.ell)
        throw domain_error("certificate: chosen interval holds fewer than ell candidates");
    return true;
}

namespace {

u64 kth_root_floor(u64 v, u32 k) {
    auto pow_le = [&](u64 x, u64 bound) {
        // x^k <= bound, saturating
        unsigned __int128 t = 1;
        for (u32 e = 0; e < k; ++e) {
            t *= x;
            if (t > bound) return false;
        }
        return true;
    };
    u64 r = static_cast<u64>(std::pow(static_cast<double>(v), 1.0 / k));
    while (r > 0 && !pow_le(r, v)) --r;
    while (pow_le(r + 1, v)) ++r;
    return r;
}

void kfull_dfs(const std::vector<u64>& primes, std::size_t idx, u64 cur, u64 lo, u64 hi, u32 k,
               std::vector<u64>& out) {
    if (cur > lo) out.push_back(cur);
    for (std::size_t i = idx; i < primes.size(); ++i) {
        u64 p = primes[i];
        unsigned __int128 pk = 1;
        for (u32 e = 0; e < k; ++e) {
            pk *= p;
            if (pk >= hi) break;
        }
        if (pk >= hi || static_cast<unsigned __int128>(cur) * pk >= hi) break;
        u64 v = cur * static_cast<u64>(pk);
        for (;;) {
            kfull_dfs(primes, i + 1, v, lo, hi, k, out);
            if (static_cast<unsigned __int128>(v) * p >= hi) break;
            v *= p;
        }
    }
}

}  // namespace

IntervalScanResult scan_interval(u64 N, u32 k, u64 N_budget) {
    if (N < 1) throw domain_error("scan_interval: N must be >= 1");
    if (k < 2) throw domain_error("scan_interval: k must be >= 2");
    if (N > N_budget)
        throw resource_error("scan_interval: N exceeds the enumeration budget " +
                             std::to_string(N_budget));
    if (k * std::log2(static_cast<double>(N + 1)) >= 62.0)
        throw resource_error("scan_interval: (N+1)^k exceeds the 2^62 enumeration budget");

    u64 lo = 1, hi = 1;
    for (u32 e = 0; e < k; ++e) lo *= N;
    for (u32 e = 0; e < k; ++e) hi *= N + 1;

    std::vector<u64> primes = primes_up_to(N + 1);
    std::vector<u64> values;
    kfull_dfs(primes, 0, 1, lo, hi, k, values);
    std::sort(values.begin(), values.end());

    IntervalScanResult res;
    res.N = static_cast<unsigned long>(N);
    res.k = k;
    for (u64 v : values) res.witnesses.push_back(mpz_class(static_cast<unsigned long>(v)));
    return res;
}

std::optional<u64> record_search(u32 k, u64 N_max, u64 target) {
    if (k < 2) throw domain_error("record_search: k must be >= 2");
    if (target < 1) throw domain_error("record_search: target must be >= 1");
    if (k * std::log2(static_cast<double>(N_max + 1)) >= 62.0)
        throw resource_error("record_search: (N_max+1)^k exceeds the 2^62 budget");

    u64 hi = 1;
    for (u32 e = 0; e < k; ++e) hi *= N_max + 1;

    std::vector<u64> primes = primes_up_to(N_max + 1);
    std::vector<u64> values;
    kfull_dfs(primes, 0, 1, 1, hi, k, values);

    std::vector<u64> counts(N_max + 1, 0);
    for (u64 v : values) {
        u64 root = kth_root_floor(v, k);
        u64 rootk = 1;
        for (u32 e = 0; e < k; ++e) rootk *= root;
        if (rootk == v) continue;  // perfect power: belongs to no open interval
        if (root <= N_max) ++counts[root];
    }
    for (u64 N = 1; N <= N_max; ++N)
        if (counts[N] >= target) return N;
    return std::nullopt;
}

double cluster_curve(u32 k, double N) {
    if (k < 2) throw domain_error("cluster_curve: k must be >= 2");
    if (N < 16.0) throw domain_error("cluster_curve: N must be >= 16");
    double c = static_cast<double>(k) / (2.0 * (k + 1));
    return std::sqrt(c * std::log(N) / std::log(std::log(N)));
}

double cluster_curve_prior(double N) {
    if (N < 16.0) throw domain_error("cluster_curve_prior: N must be >= 16");
    return std::cbrt(0.375 * std::log(N) / std::log(std::log(N)));
}

}  // namespace rf
