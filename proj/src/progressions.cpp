#include "rf/progressions.hpp"

#include <algorithm>
#include <queue>

namespace rf {

namespace {

void validate(const ProgressionQuery& q, const FactorSieve& sieve) {
    if (q.x < 1) throw domain_error("psi: x must be >= 1");
    if (q.y < 2.0) throw domain_error("psi: y must be >= 2");
    if (!is_prime_u64(q.p)) throw domain_error("psi: p must be prime");
    if (q.a >= q.p) throw domain_error("psi: residue out of range");
    if (q.x > sieve.limit())
        throw resource_error("psi: x=" + std::to_string(q.x) + " exceeds sieve limit " +
                             std::to_string(sieve.limit()));
}

}  // namespace

std::vector<ClassCounts> sweep_classes(u64 x, double y, u64 p, const FactorSieve& sieve) {
    ProgressionQuery probe{x, y, p, 0};
    validate(probe, sieve);

    const u64 chunk = 1ull << 20;
    const std::size_t nchunks = static_cast<std::size_t>((x + chunk - 1) / chunk);
    std::vector<std::vector<ClassCounts>> partial(nchunks);

    for_chunks(1, x + 1, chunk, [&](std::size_t c, u64 lo, u64 hi) {
        std::vector<ClassCounts> acc(p);
        for (u64 n = lo; n < hi; ++n) {
            u64 m = n;
            bool smooth = true, squarefree = true;
            while (m > 1) {
                u64 q = sieve.spf(m);
                if (static_cast<double>(q) > y) {
                    smooth = false;
                    break;
                }
                m /= q;
                if (m % q == 0) {
                    squarefree = false;
                    while (m % q == 0) m /= q;
                }
            }
            if (!smooth) continue;
            ClassCounts& slot = acc[n % p];
            ++slot.psi;
            if (squarefree) ++slot.psi_sharp;
        }
        partial[c] = std::move(acc);
    });

    std::vector<ClassCounts> total(p);
    for (const auto& acc : partial)
        for (u64 a = 0; a < p; ++a) {
            total[a].psi += acc[a].psi;
            total[a].psi_sharp += acc[a].psi_sharp;
        }
    return total;
}

u64 psi(const ProgressionQuery& q, const FactorSieve& sieve) {
    validate(q, sieve);
    u64 count = 0;
    for (u64 n = q.a == 0 ? q.p : q.a; n <= q.x; n += q.p)
        if (is_y_smooth(n, q.y, sieve)) ++count;
    return count;
}

u64 psi_sharp(const ProgressionQuery& q, const FactorSieve& sieve) {
    validate(q, sieve);
    u64 count = 0;
    for (u64 n = q.a == 0 ? q.p : q.a; n <= q.x; n += q.p)
        if (is_y_smooth(n, q.y, sieve) && is_squarefree(n, sieve)) ++count;
    return count;
}

ClassCoverage squarefree_smooth_coverage(u64 p, CoverageOptions opts) {
    if (!is_prime_u64(p)) throw domain_error("coverage: p must be prime");

    std::vector<u64> ps = primes_up_to(p);
    if (ps.size() > opts.max_primes)
        throw resource_error("coverage: " + std::to_string(ps.size()) + " primes <= p exceed the " +
                             std::to_string(opts.max_primes) + "-prime enumeration budget");

    // Reachability first: classes no subset product can hit stay absent.
    std::vector<char> reachable(p, 0);
    reachable[1 % p] = 1;
    for (u64 q : ps) {
        std::vector<char> next = reachable;
        for (u64 r = 0; r < p; ++r)
            if (reachable[r]) next[mulmod(r, q % p, p)] = 1;
        reachable.swap(next);
    }

    ClassCoverage cov;
    cov.p = p;
    cov.first_hit.assign(p, std::nullopt);

    std::size_t wanted = 0;
    for (u64 a = 0; a < p; ++a)
        if (reachable[a]) ++wanted;

    // Increasing-order enumeration of subset products: each state (value, last
    // prime index) spawns extensions by strictly larger primes, so every subset
    // appears exactly once and values pop in nondecreasing order.
    struct Node {
        BigNatural value;
        int last;
    };
    auto cmp = [](const Node& a, const Node& b) { return a.value > b.value; };
    std::priority_queue<Node, std::vector<Node>, decltype(cmp)> heap(cmp);
    heap.push({BigNatural(1), -1});

    std::size_t hit = 0;
    while (!heap.empty() && hit < wanted) {
        Node top = heap.top();
        heap.pop();
        u64 cls = mpz_fdiv_ui(top.value.get_mpz_t(), p);
        if (!cov.first_hit[cls]) {
            cov.first_hit[cls] = top.value;
            ++hit;
        }
        for (int j = top.last + 1; j < static_cast<int>(ps.size()); ++j)
            heap.push({top.value * ps[static_cast<std::size_t>(j)], j});
    }
    return cov;
}

std::optional<BigNatural> coverage_threshold(u64 p, CoverageOptions opts) {
    ClassCoverage cov = squarefree_smooth_coverage(p, opts);
    BigNatural best = 0;
    for (u64 a = 0; a < p; ++a) {
        if (a == 0 && !opts.include_class_zero) continue;
        if (!cov.first_hit[a]) return std::nullopt;
        best = std::max(best, *cov.first_hit[a]);
    }
    return best;
}

}  // namespace rf
