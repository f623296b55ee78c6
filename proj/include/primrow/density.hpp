#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "primrow/exact_arith.hpp"

// Exact density D_n(k) = a'_n(k)/a_n(k), its prime-power limits and
// monotonicity, and the sequence machinery behind the log-concavity argument:
// discrete convolution, the M and P_i sequences, the Menon decomposition.

namespace primrow::density {

// Finite prefix of a sequence N_0 -> Z.
using IntSeq = std::vector<BigInt>;

// Exact rational a'_n(|k|)/a_n(|k|), reduced. n >= 2, k != 0.
Rational density(unsigned n, std::int64_t k);

// D_2(p^m): 1 for m = 0, else (1 - 1/p)^2 / (1 - 1/p^{m+1}).
Rational density_local_n2(std::uint64_t p, unsigned m);

// lim_m D_n(p^m) = (1 - p^{1-n})^n, for n >= 3.
Rational density_prime_limit(unsigned n, std::uint64_t p);

// The n = 2 branch of the limit: (1 - 1/p)^2.
Rational density_prime_limit_n2(std::uint64_t p);

// D_n(0) = 1/zeta(n-1)^n, n >= 3; absolute error < 1e-10.
double density_zero(unsigned n);

// Discrete convolution prefix: output length = min(len u, len v).
IntSeq seq_convolve(const IntSeq& u, const IntSeq& v);

IntSeq mobius_seq(std::size_t len);                                  // (1,-1,0,0,...)
IntSeq geometric_seq(std::uint64_t p, unsigned i, std::size_t len);  // (1,p^i,p^{2i},...)

// The three sums of the Menon decomposition of w_r^2 - w_{r-1} w_{r+1} for
// w = u * v with u_0 = v_0 = 1.
struct MenonParts {
    BigInt I, II, III;
    BigInt total() const { return I + II + III; }
};
MenonParts menon_decompose(const IntSeq& u, const IntSeq& v, std::size_t r);

// True iff u_r^2 - u_{r-1} u_{r+1} >= 0 for all interior r; otherwise reports
// the smallest violating index.
struct LogConcavity {
    bool ok;
    std::optional<std::size_t> first_violation;
};
LogConcavity is_log_concave(const IntSeq& u);

// Strict decrease of D_n(p^m) over m = 0..max_exponent, by exact comparison.
bool density_monotone_check(unsigned n, std::uint64_t p, unsigned max_exponent);

// The image-gap inequality of the density-image result, n >= 4:
// zeta(n-1)^{-n} (1 - 2^{1-n})^{-n} vs D_n(2) = 1 - n/(2^n - 1).
struct ImageGap {
    double odd_lower_bound;
    Rational d_at_2;
    bool gap_holds;
};
ImageGap density_image_gap(unsigned n);

// Greedy construction of a squarefree k with |-log D_2(k) - x| < eps from
// consecutive primes with term weights d_p = -log(1 - 2/(p+1)). Throws
// std::runtime_error if more than prime_cap primes would be needed.
struct DensityTarget {
    BigInt k;                     // product of the chosen primes
    std::size_t prime_count;
    double neg_log_density;       // -log D_2(k), from the exact rational
};
DensityTarget find_k_for_density(double x, double eps, std::size_t prime_cap = 1'000'000);

}  // namespace primrow::density
