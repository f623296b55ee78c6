#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

// Arbitrary-precision integer/rational substrate: factorization, Möbius,
// ordered factorizations and a generic Dirichlet-convolution engine.
// All functions here are pure and thread-safe.

namespace primrow {

using BigInt = mpz_class;
using Rational = mpq_class;

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;
    bool operator==(const PrimePower&) const = default;
};

// A positive integer together with its prime factorization.
// Primes are strictly increasing and all exponents >= 1; the value 1 has an
// empty factor list.
struct FactoredInteger {
    std::uint64_t value = 1;
    std::vector<PrimePower> factors;
};

// A pure, total function on the positive integers.
using ArithmeticFunction = std::function<BigInt(std::uint64_t)>;

// Deterministic factorization: trial division up to 10^6, then Pollard rho
// with deterministic Miller-Rabin on the remaining cofactors. Rejects k = 0.
FactoredInteger factorize(std::uint64_t k);

bool is_prime(std::uint64_t n);

// Möbius function: (-1)^(number of prime factors) for squarefree k, else 0.
int mobius(std::uint64_t k);

// Divisors of k in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t k);
std::vector<std::uint64_t> divisors(const FactoredInteger& f);

// Streams every tuple (d_1,...,d_n) of positive integers with
// d_1 * ... * d_n = k, exactly once, in lexicographic order.
void ordered_factorizations(std::uint64_t k, unsigned n,
                            const std::function<void(std::span<const std::uint64_t>)>& visit);

// Number of such tuples: prod_p binomial(m_p + n - 1, n - 1).
BigInt ordered_factorization_count(std::uint64_t k, unsigned n);

// (f * g)(k) = sum_{d | k} f(d) g(k/d).
BigInt dirichlet_convolve(const ArithmeticFunction& f, const ArithmeticFunction& g,
                          std::uint64_t k);

// f convolved with itself n times; dirichlet_power(f, 1, k) = f(k).
BigInt dirichlet_power(const ArithmeticFunction& f, unsigned n, std::uint64_t k);

// Common instances.
ArithmeticFunction mobius_fn();
ArithmeticFunction one_fn();
ArithmeticFunction power_fn(unsigned i);  // x -> x^i

BigInt pow_big(const BigInt& base, unsigned long exp);
BigInt binomial(unsigned n, unsigned k);

}  // namespace primrow
