#include "primrow/orbit_counts.hpp"

#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace primrow::orbits {

namespace {

using u64 = std::uint64_t;

u64 abs_nonzero(std::int64_t k, const char* who) {
    if (k == 0) throw std::invalid_argument(std::string(who) + ": k must be nonzero");
    return k < 0 ? static_cast<u64>(-(k + 1)) + 1 : static_cast<u64>(k);
}

void require_prime(u64 p, const char* who) {
    if (!is_prime(p)) throw std::invalid_argument(std::string(who) + ": p must be prime");
}

// Enumerates compositions (j_1,...,j_n) of m and accumulates prod_i w[i][j_i].
// A zero weight prunes the whole branch.
BigInt composition_sum(unsigned n, unsigned m, const std::vector<std::vector<BigInt>>& w) {
    BigInt total = 0;
    std::vector<unsigned> j(n);
    auto rec = [&](auto&& self, unsigned slot, unsigned rest, const BigInt& partial) -> void {
        if (slot == n - 1) {
            const BigInt& last = w[slot][rest];
            if (last != 0) total += partial * last;
            return;
        }
        for (unsigned e = 0; e <= rest; ++e) {
            const BigInt& f = w[slot][e];
            if (f == 0) continue;
            self(self, slot + 1, rest - e, partial * f);
        }
    };
    rec(rec, 0, m, BigInt(1));
    return total;
}

// Weight tables for a_n(p^m): w[i][j] = p^{j*i} (i = 0..n-1).
std::vector<std::vector<BigInt>> a_weights(unsigned n, u64 p, unsigned m) {
    std::vector<std::vector<BigInt>> w(n, std::vector<BigInt>(m + 1));
    BigInt bp(static_cast<unsigned long>(p));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j <= m; ++j) w[i][j] = pow_big(bp, static_cast<unsigned long>(j) * i);
    return w;
}

// Weight tables for a'_n(p^m): w[i][j] = v(i+1, p^j).
std::vector<std::vector<BigInt>> a_prime_weights(unsigned n, u64 p, unsigned m) {
    std::vector<std::vector<BigInt>> w(n, std::vector<BigInt>(m + 1));
    BigInt bp(static_cast<unsigned long>(p));
    for (unsigned i = 0; i < n; ++i) {
        w[i][0] = 1;
        for (unsigned j = 1; j <= m; ++j) {
            // v(i+1, p^j) = p^{j*i} - p^{(j-1)*i}; zero for i = 0.
            w[i][j] = pow_big(bp, static_cast<unsigned long>(j) * i) -
                      pow_big(bp, static_cast<unsigned long>(j - 1) * i);
        }
    }
    return w;
}

BigInt a_pp(unsigned n, u64 p, unsigned m) {
    return composition_sum(n, m, a_weights(n, p, m));
}

BigInt a_prime_pp(unsigned n, u64 p, unsigned m) {
    return composition_sum(n, m, a_prime_weights(n, p, m));
}

}  // namespace

BigInt v(unsigned i, u64 d) {
    if (i < 1 || d < 1) throw std::invalid_argument("v: i >= 1 and d >= 1 required");
    BigInt sum = 0;
    for (u64 g : divisors(d)) {
        int mu = mobius(g);
        if (mu == 0) continue;
        sum += mu * pow_big(BigInt(static_cast<unsigned long>(d / g)), i - 1);
    }
    return sum;
}

BigInt a(unsigned n, std::int64_t k) {
    if (n < 1) throw std::invalid_argument("a: n >= 1 required");
    u64 ak = abs_nonzero(k, "a");
    if (n == 1) return 1;
    BigInt r = 1;
    for (const auto& pp : factorize(ak).factors) r *= a_pp(n, pp.prime, pp.exponent);
    return r;
}

BigInt a_prime(unsigned n, std::int64_t k) {
    if (n < 2) throw std::invalid_argument("a_prime: n >= 2 required");
    u64 ak = abs_nonzero(k, "a_prime");
    BigInt r = 1;
    for (const auto& pp : factorize(ak).factors) r *= a_prime_pp(n, pp.prime, pp.exponent);
    return r;
}

BigInt a_enumerated(unsigned n, std::int64_t k) {
    u64 ak = abs_nonzero(k, "a_enumerated");
    BigInt total = 0;
    ordered_factorizations(ak, n, [&](std::span<const u64> tuple) {
        BigInt term = 1;
        for (unsigned i = 0; i < n; ++i)
            term *= pow_big(BigInt(static_cast<unsigned long>(tuple[i])), i);
        total += term;
    });
    return total;
}

BigInt a_prime_enumerated(unsigned n, std::int64_t k) {
    if (n < 2) throw std::invalid_argument("a_prime_enumerated: n >= 2 required");
    u64 ak = abs_nonzero(k, "a_prime_enumerated");
    BigInt total = 0;
    ordered_factorizations(ak, n, [&](std::span<const u64> tuple) {
        BigInt term = 1;
        for (unsigned i = 0; i < n && term != 0; ++i) term *= v(i + 1, tuple[i]);
        total += term;
    });
    return total;
}

BigInt a_local(unsigned n, u64 p, unsigned m) {
    if (n < 1) throw std::invalid_argument("a_local: n >= 1 required");
    require_prime(p, "a_local");
    // DP over the split recursion; row nn holds a_nn(p^0..p^m).
    std::vector<BigInt> prev(m + 1, BigInt(1));  // a_1(p^j) = 1
    BigInt pn1;
    for (unsigned nn = 2; nn <= n; ++nn) {
        std::vector<BigInt> cur(m + 1);
        cur[0] = 1;
        pn1 = pow_big(BigInt(static_cast<unsigned long>(p)), nn - 1);
        for (unsigned j = 1; j <= m; ++j) cur[j] = pn1 * cur[j - 1] + prev[j];
        prev = std::move(cur);
    }
    return prev[m];
}

BigInt a_prime_local(unsigned n, u64 p, unsigned m) {
    if (n < 2) throw std::invalid_argument("a_prime_local: n >= 2 required");
    require_prime(p, "a_prime_local");
    BigInt sum = 0;
    for (unsigned i = 0; i <= m; ++i) {
        BigInt term = binomial(n, i) * a_local(n, p, m - i);
        if (i % 2) sum -= term; else sum += term;
    }
    return sum;
}

BigInt a3_closed(u64 p, unsigned m) {
    require_prime(p, "a3_closed");
    if (m == 0) throw std::invalid_argument("a3_closed: m >= 1 required");
    BigInt bp(static_cast<unsigned long>(p));
    BigInt num = (pow_big(bp, m + 1) - 1) * (pow_big(bp, m + 2) - 1);
    BigInt den = (bp - 1) * (bp * bp - 1);
    BigInt q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

BigInt a3_prime_closed(u64 p, unsigned m) {
    require_prime(p, "a3_prime_closed");
    if (m == 0) throw std::invalid_argument("a3_prime_closed: m >= 1 required");
    BigInt bp(static_cast<unsigned long>(p));
    BigInt num = (pow_big(bp, 2 * m) * (bp + 1) * (bp + 1) - pow_big(bp, m + 1)) * (bp - 1);
    BigInt den = bp * bp * bp;
    BigInt q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

BigInt a4_prime_closed(u64 p, unsigned m) {
    require_prime(p, "a4_prime_closed");
    if (m == 0) throw std::invalid_argument("a4_prime_closed: m >= 1 required");
    BigInt bp(static_cast<unsigned long>(p));
    auto P = [&](unsigned long e) { return pow_big(bp, e); };
    BigInt bracket = P(2 * m) - P(m + 1) - 4 * P(m + 2) - 6 * P(m + 3) - 4 * P(m + 4) -
                     P(m + 5) + 3 * P(2 * m + 1) + 6 * P(2 * m + 2) + 7 * P(2 * m + 3) +
                     6 * P(2 * m + 4) + 3 * P(2 * m + 5) + P(2 * m + 6) + P(3);
    // (p-1) p^{m-6} / (p+1) * bracket, with the negative power folded in.
    BigInt num = (bp - 1) * P(m) * bracket;
    BigInt den = (bp + 1) * P(6);
    BigInt q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

BigInt a5_prime_closed(u64 p, unsigned m) {
    require_prime(p, "a5_prime_closed");
    if (m == 0) throw std::invalid_argument("a5_prime_closed: m >= 1 required");
    BigInt bp(static_cast<unsigned long>(p));
    auto P = [&](unsigned long e) { return pow_big(bp, e); };
    BigInt big = P(4 * m) - P(m + 6) + P(2 * m + 3) + 5 * P(2 * m + 4) + 11 * P(2 * m + 5) +
                 14 * P(2 * m + 6) + 11 * P(2 * m + 7) + 5 * P(2 * m + 8) + P(2 * m + 9) -
                 P(3 * m + 1) - 5 * P(3 * m + 2) - 15 * P(3 * m + 3) - 30 * P(3 * m + 4) -
                 45 * P(3 * m + 5) - 51 * P(3 * m + 6) - 45 * P(3 * m + 7) - 30 * P(3 * m + 8) -
                 15 * P(3 * m + 9) - 5 * P(3 * m + 10) - P(3 * m + 11) + 4 * P(4 * m + 1) +
                 10 * P(4 * m + 2) + 20 * P(4 * m + 3) + 31 * P(4 * m + 4) + 40 * P(4 * m + 5) +
                 44 * P(4 * m + 6) + 40 * P(4 * m + 7) + 31 * P(4 * m + 8) + 20 * P(4 * m + 9) +
                 10 * P(4 * m + 10) + 4 * P(4 * m + 11) + P(4 * m + 12);
    BigInt num = (bp - 1) * big;
    BigInt den = P(10) * (bp + 1) * (bp * bp + bp + 1);
    BigInt q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

BigInt a_prime_via_convolution(unsigned n, std::int64_t k) {
    if (n < 2) throw std::invalid_argument("a_prime_via_convolution: n >= 2 required");
    u64 ak = abs_nonzero(k, "a_prime_via_convolution");
    ArithmeticFunction mu_n = [n](u64 d) { return dirichlet_power(mobius_fn(), n, d); };
    ArithmeticFunction an = [n](u64 d) { return a(n, static_cast<std::int64_t>(d)); };
    return dirichlet_convolve(mu_n, an, ak);
}

}  // namespace primrow::orbits
