#include "primrow/exact_arith.hpp"

#include <algorithm>
#include <numeric>

namespace primrow {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin(u64 n, u64 a) {
    if (a % n == 0) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// Brent-cycle Pollard rho; n must be odd composite, not a prime power issue here.
u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    u64 c = 1;
    while (true) {
        u64 x = 2, y = 2, d = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            u64 diff = x > y ? x - y : y - x;
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
        ++c;
    }
}

void factor_rec(u64 n, std::vector<u64>& primes) {
    if (n == 1) return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_rec(d, primes);
    factor_rec(n / d, primes);
}

void of_rec(u64 rest, unsigned slots, std::vector<u64>& tuple,
            const std::function<void(std::span<const u64>)>& visit) {
    if (slots == 1) {
        tuple.push_back(rest);
        visit(tuple);
        tuple.pop_back();
        return;
    }
    for (u64 d : divisors(rest)) {
        tuple.push_back(d);
        of_rec(rest / d, slots - 1, tuple, visit);
        tuple.pop_back();
    }
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // Deterministic witness set for all n < 2^64.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (!miller_rabin(n, a)) return false;
    return true;
}

FactoredInteger factorize(u64 k) {
    if (k == 0) throw std::invalid_argument("factorize: k must be positive");
    FactoredInteger out;
    out.value = k;
    std::vector<u64> primes;
    u64 n = k;
    for (u64 p = 2; p <= 1'000'000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    if (n > 1) factor_rec(n, primes);
    std::sort(primes.begin(), primes.end());
    for (u64 p : primes) {
        if (!out.factors.empty() && out.factors.back().prime == p)
            ++out.factors.back().exponent;
        else
            out.factors.push_back({p, 1});
    }
    return out;
}

int mobius(u64 k) {
    if (k == 0) throw std::invalid_argument("mobius: k must be positive");
    FactoredInteger f = factorize(k);
    for (const auto& pp : f.factors)
        if (pp.exponent > 1) return 0;
    return f.factors.size() % 2 == 0 ? 1 : -1;
}

std::vector<u64> divisors(const FactoredInteger& f) {
    std::vector<u64> divs{1};
    for (const auto& pp : f.factors) {
        std::size_t base = divs.size();
        u64 q = 1;
        for (unsigned e = 1; e <= pp.exponent; ++e) {
            q *= pp.prime;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * q);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

std::vector<u64> divisors(u64 k) { return divisors(factorize(k)); }

void ordered_factorizations(u64 k, unsigned n,
                            const std::function<void(std::span<const u64>)>& visit) {
    if (k == 0 || n == 0)
        throw std::invalid_argument("ordered_factorizations: k >= 1 and n >= 1 required");
    std::vector<u64> tuple;
    tuple.reserve(n);
    of_rec(k, n, tuple, visit);
}

BigInt ordered_factorization_count(u64 k, unsigned n) {
    FactoredInteger f = factorize(k);
    BigInt count = 1;
    for (const auto& pp : f.factors) count *= binomial(pp.exponent + n - 1, n - 1);
    return count;
}

BigInt dirichlet_convolve(const ArithmeticFunction& f, const ArithmeticFunction& g, u64 k) {
    if (k == 0) throw std::invalid_argument("dirichlet_convolve: k must be positive");
    BigInt sum = 0;
    for (u64 d : divisors(k)) sum += f(d) * g(k / d);
    return sum;
}

BigInt dirichlet_power(const ArithmeticFunction& f, unsigned n, u64 k) {
    if (n == 0) throw std::invalid_argument("dirichlet_power: n must be positive");
    if (n == 1) return f(k);
    ArithmeticFunction rest = [&f, n](u64 m) { return dirichlet_power(f, n - 1, m); };
    return dirichlet_convolve(f, rest, k);
}

ArithmeticFunction mobius_fn() {
    return [](u64 k) { return BigInt(mobius(k)); };
}

ArithmeticFunction one_fn() {
    return [](u64) { return BigInt(1); };
}

ArithmeticFunction power_fn(unsigned i) {
    return [i](u64 k) { return pow_big(BigInt(static_cast<unsigned long>(k)), i); };
}

BigInt pow_big(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

BigInt binomial(unsigned n, unsigned k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace primrow
