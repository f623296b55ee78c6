#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "primrow/exact_arith.hpp"

// Ground-truth brute force: integer matrices in Euclidean balls, exact
// determinants, row primitivity, Hermite normal forms and the orbit
// decomposition used to validate the counting formulas.

namespace primrow::oracle {

class IntMatrix {
public:
    explicit IntMatrix(unsigned n) : n_(n), e_(std::size_t(n) * n) {
        if (n < 1) throw std::invalid_argument("IntMatrix: dimension >= 1 required");
    }
    static IntMatrix identity(unsigned n) {
        IntMatrix m(n);
        for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    unsigned dim() const { return n_; }
    BigInt& at(unsigned i, unsigned j) { return e_[std::size_t(i) * n_ + j]; }
    const BigInt& at(unsigned i, unsigned j) const { return e_[std::size_t(i) * n_ + j]; }
    std::span<const BigInt> row(unsigned i) const { return {&e_[std::size_t(i) * n_], n_}; }
    bool operator==(const IntMatrix&) const = default;

private:
    unsigned n_;
    std::vector<BigInt> e_;
};

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);

// Exact determinant by fraction-free (Bareiss) elimination.
BigInt det(const IntMatrix& a);
// Cofactor expansion, n <= 4; internal cross-check route.
BigInt det_cofactor(const IntMatrix& a);

BigInt norm_sq(const IntMatrix& a);

bool is_primitive(std::span<const BigInt> v);
bool is_primitive(std::span<const long long> v);
bool rows_primitive(const IntMatrix& a);

struct BallQuery {
    unsigned n = 2;
    std::int64_t k = 1;
    Rational T_sq = 0;  // exact squared radius; closed-ball convention
    bool primitive_only = false;
};

struct EnumLimits {
    unsigned long long budget = 2'000'000'000ULL;  // candidate visits
    unsigned threads = 1;
};

struct BudgetExceeded : std::runtime_error {
    BudgetExceeded() : std::runtime_error("enumeration budget exceeded") {}
};

// Exact |{A : norm_sq(A) <= T_sq, det A = k, rows primitive if requested}|,
// by direct enumeration with per-row radius pruning. n in {2, 3}.
// Deterministic for any thread count.
unsigned long long count_ball(const BallQuery& q, const EnumLimits& limits = {});

// n = 2 closed-form line counting per first row; k != 0. Equals count_ball.
unsigned long long count_ball_fast_n2(const BallQuery& q);

// Streams every lower-triangular Hermite normal form with determinant k
// (primitive rows only when flagged), each exactly once. The IntMatrix passed
// to the visitor is a buffer reused between calls; copy it to keep it.
void enumerate_hnf(unsigned n, std::uint64_t k, bool primitive_only,
                   const std::function<void(const IntMatrix&)>& visit,
                   unsigned long long budget = 2'000'000'000ULL);
unsigned long long count_hnf(unsigned n, std::uint64_t k, bool primitive_only,
                             unsigned long long budget = 2'000'000'000ULL);

bool is_hnf(const IntMatrix& a);

// Unique Hermite normal form C of the orbit A SL_n(Z), with the unimodular
// column transform X such that A X = C and det X = 1. Requires det A > 0.
struct HnfResult {
    IntMatrix C, X;
};
HnfResult hnf_reduce(const IntMatrix& a);

// Classifies every primitive-row matrix in the ball by its HNF representative
// and checks the class counts against count_ball and enumerate_hnf.
struct OrbitReport {
    bool ok = false;
    std::size_t orbit_classes = 0;
    unsigned long long total = 0;
};
OrbitReport orbit_decomposition_check(unsigned n, std::uint64_t k, const Rational& T_sq,
                                      const EnumLimits& limits = {});

}  // namespace primrow::oracle
