#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <numeric>

#include "primrow/density.hpp"
#include "primrow/orbit_counts.hpp"

using namespace primrow;
using namespace primrow::density;

namespace {
Rational q(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}
}  // namespace

TEST_CASE("density examples") {
    CHECK(primrow::density::density(4, 2) == q(11, 15));
    CHECK(primrow::density::density(2, 6) == q(1, 6));
    for (unsigned n = 2; n <= 6; ++n) CHECK(primrow::density::density(n, 1) == 1);
    CHECK(primrow::density::density(3, -4) == primrow::density::density(3, 4));
    CHECK_THROWS(primrow::density::density(3, 0));
}

TEST_CASE("density_local_n2") {
    CHECK(density_local_n2(2, 1) == q(1, 3));
    CHECK(density_local_n2(7, 0) == 1);
    CHECK(density_local_n2(2, 2) == q(2, 7));
    for (std::uint64_t p : {2, 3, 5})
        for (unsigned m = 0; m <= 6; ++m) {
            std::int64_t pm = 1;
            for (unsigned i = 0; i < m; ++i) pm *= std::int64_t(p);
            CHECK(density_local_n2(p, m) == primrow::density::density(2, pm));
        }
    CHECK_THROWS(density_local_n2(6, 1));
}

TEST_CASE("density_prime_limit") {
    CHECK(density_prime_limit(3, 2) == q(27, 64));
    Rational r433 = density_prime_limit(4, 3);
    Rational expect(BigInt(26) * 26 * 26 * 26, BigInt(27) * 27 * 27 * 27);
    expect.canonicalize();
    CHECK(r433 == expect);
    CHECK_THROWS(density_prime_limit(2, 3));
    CHECK(density_prime_limit_n2(3) == q(4, 9));

    // Convergence: |D_3(2^10)/limit - 1| < 1%.
    Rational d = primrow::density::density(3, 1024);
    Rational rel = d / q(27, 64) - 1;
    CHECK(abs(rel) < q(1, 100));
}

TEST_CASE("density_zero") {
    double pi = std::acos(-1.0);
    CHECK(density_zero(3) == doctest::Approx(std::pow(6 / (pi * pi), 3)).epsilon(1e-10));
    CHECK(density_zero(4) == doctest::Approx(0.47896071403).epsilon(1e-9));  // 1/zeta(3)^4
    double prev = 0;
    for (unsigned n = 3; n <= 20; ++n) {
        double cur = density_zero(n);
        CHECK(cur > prev);
        prev = cur;
    }
    CHECK(prev < 1.0);
    CHECK_THROWS(density_zero(2));
}

TEST_CASE("seq_convolve") {
    IntSeq ones{1, 1, 1, 1};
    CHECK(seq_convolve(ones, ones) == IntSeq{1, 2, 3, 4});

    IntSeq m = mobius_seq(6);
    CHECK(m == IntSeq{1, -1, 0, 0, 0, 0});
    CHECK(seq_convolve(m, geometric_seq(2, 0, 6)) == IntSeq{1, 0, 0, 0, 0, 0});
    CHECK(seq_convolve(m, geometric_seq(2, 1, 6)) == IntSeq{1, 1, 2, 4, 8, 16});
}

TEST_CASE("geometric_seq") {
    CHECK(geometric_seq(2, 3, 3) == IntSeq{1, 8, 64});
    CHECK(geometric_seq(7, 0, 4) == IntSeq{1, 1, 1, 1});
}

TEST_CASE("menon_decompose") {
    IntSeq ones{1, 1, 1, 1};
    auto parts = menon_decompose(ones, ones, 1);
    CHECK(parts.I == 0);
    CHECK(parts.II == 0);
    CHECK(parts.III == 1);
    CHECK(parts.total() == 1);  // w = (1,2,3,4): 2^2 - 1*3

    IntSeq bad{2, 1, 1, 1};
    CHECK_THROWS(menon_decompose(bad, ones, 1));
}

TEST_CASE("is_log_concave") {
    CHECK(is_log_concave(IntSeq{1, 2, 3, 2}).ok);

    IntSeq ap2;  // a'_2(2^m) = (1,1,2,4): fails at r = 1
    for (unsigned m = 0; m <= 3; ++m) ap2.push_back(orbits::a_prime_local(2, 2, m));
    auto r = is_log_concave(ap2);
    CHECK_FALSE(r.ok);
    CHECK(r.first_violation == 1);

    IntSeq ap4;
    for (unsigned m = 0; m <= 10; ++m) ap4.push_back(orbits::a_prime_local(4, 2, m));
    CHECK(is_log_concave(ap4).ok);
}

TEST_CASE("density_monotone_check") {
    CHECK(density_monotone_check(2, 2, 8));
    CHECK(density_monotone_check(3, 2, 8));
    CHECK(density_monotone_check(6, 3, 8));
}

TEST_CASE("density_image_gap") {
    auto g4 = density_image_gap(4);
    CHECK(g4.odd_lower_bound == doctest::Approx(0.8177).epsilon(1e-3));
    CHECK(g4.d_at_2 == q(11, 15));
    CHECK(g4.gap_holds);

    auto g5 = density_image_gap(5);
    CHECK(g5.odd_lower_bound == doctest::Approx(0.9298).epsilon(1e-3));
    CHECK(g5.d_at_2 == q(26, 31));
    CHECK(g5.gap_holds);

    CHECK(density_image_gap(40).gap_holds);
    CHECK_THROWS(density_image_gap(3));
}

TEST_CASE("find_k_for_density") {
    auto zero = find_k_for_density(0.0, 0.5);
    CHECK(zero.k == 1);
    CHECK(zero.prime_count == 0);

    auto t1 = find_k_for_density(std::log(3.0), 1e-3);
    CHECK(std::abs(t1.neg_log_density - std::log(3.0)) < 1e-3);
    CHECK(t1.k > 1);
    CHECK(mpz_sizeinbase(t1.k.get_mpz_t(), 2) >= t1.prime_count);  // squarefree product grows

    auto t2 = find_k_for_density(0.7, 0.05);
    CHECK(std::abs(t2.neg_log_density - 0.7) < 0.05);

    CHECK_THROWS(find_k_for_density(50.0, 1e-6, 10));  // cap exceeded
}

TEST_CASE("strict sandwich, multiplicativity and uniform limit") {
    for (std::int64_t k = 2; k <= 200; ++k) {
        Rational d = primrow::density::density(4, k);
        CHECK(d < 1);
        Rational local(1);
        for (const auto& pp : factorize(std::uint64_t(k)).factors)
            local *= density_prime_limit(4, pp.prime);
        local.canonicalize();
        CHECK(d > local);
    }
    for (std::int64_t x = 1; x <= 44; ++x)
        for (std::int64_t y = x + 1; y <= 44; ++y)
            if (std::gcd(x, y) == 1) CHECK(primrow::density::density(3, x * y) == primrow::density::density(3, x) * primrow::density::density(3, y));
    for (unsigned n = 10; n <= 16; ++n) {
        Rational bound = 1 - q(8L * n, 1L << n);  // 1 - n 2^{-n+3}
        for (std::int64_t k = 1; k <= 1000; ++k) CHECK(primrow::density::density(n, k) >= bound);
    }
}

TEST_CASE("totally divisible limit at n = 3") {
    Rational limit = density_prime_limit(3, 2) * density_prime_limit(3, 3) *
                     density_prime_limit(3, 5);
    limit.canonicalize();
    std::int64_t k = 1;
    Rational prev = primrow::density::density(3, 1);
    for (unsigned m = 1; m <= 12; ++m) {
        k *= 30;
        Rational cur = primrow::density::density(3, k);
        CHECK(cur < prev);
        CHECK(cur > limit);
        prev = cur;
    }
    CHECK(prev - limit < q(1, 1000));
}
