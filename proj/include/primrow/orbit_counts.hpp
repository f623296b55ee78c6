#pragma once

#include <cstdint>

#include "primrow/exact_arith.hpp"

// Exact orbit counts a_n(k) = |M_{n,k}/SL_n(Z)| and the primitive-row variant
// a'_n(k), via multiplicative prime-power evaluators, recursions and the
// closed forms for small n. Everything is exact integer arithmetic.

namespace primrow::orbits {

// Number of primitive vectors (x_1,...,x_{i-1},d) with 0 <= x_j < d:
// sum_{g | d} mu(g) (d/g)^{i-1}.
BigInt v(unsigned i, std::uint64_t d);

// a_n(k): sum over ordered factorizations d_1...d_n = |k| of prod d_i^{i-1}.
// Evaluated prime power by prime power; a(1, k) = 1.
BigInt a(unsigned n, std::int64_t k);

// a'_n(k): same sum with each d_i weighted by v(i, d_i). Requires n >= 2.
BigInt a_prime(unsigned n, std::int64_t k);

// Independent slow path: global enumeration of ordered factorizations.
BigInt a_enumerated(unsigned n, std::int64_t k);
BigInt a_prime_enumerated(unsigned n, std::int64_t k);

// a_n(p^m) by the split recursion
// a_n(p^m) = p^{n-1} a_n(p^{m-1}) + a_{n-1}(p^m), a_n(p^0) = a_1(p^m) = 1.
BigInt a_local(unsigned n, std::uint64_t p, unsigned m);

// a'_n(p^m) = sum_{i=0}^{m} (-1)^i binom(n,i) a_n(p^{m-i}). Requires n >= 2.
BigInt a_prime_local(unsigned n, std::uint64_t p, unsigned m);

// Closed forms (valid for m >= 1; m = 0 is rejected).
BigInt a3_closed(std::uint64_t p, unsigned m);        // (p^{m+1}-1)(p^{m+2}-1)/((p-1)(p^2-1))
BigInt a3_prime_closed(std::uint64_t p, unsigned m);  // (p^{2m}(p+1)^2 - p^{m+1})(p-1)/p^3
BigInt a4_prime_closed(std::uint64_t p, unsigned m);
BigInt a5_prime_closed(std::uint64_t p, unsigned m);

// (mu^{*n} * a_n)(|k|), evaluated through the generic Dirichlet engine.
BigInt a_prime_via_convolution(unsigned n, std::int64_t k);

}  // namespace primrow::orbits
