#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "primrow/orbit_counts.hpp"

using namespace primrow;
using namespace primrow::orbits;

TEST_CASE("a examples") {
    CHECK(a(4, 2) == 15);  // 2^4 - 1
    CHECK(a(3, 4) == 35);
    CHECK(a(2, 6) == 12);  // sigma(6)
    for (unsigned n = 1; n <= 8; ++n) CHECK(a(n, 1) == 1);
    CHECK(a(1, 60) == 1);
    CHECK_THROWS(a(2, 0));
}

TEST_CASE("a_prime examples") {
    CHECK(a_prime(4, 2) == 11);
    CHECK(a_prime(2, 4) == 2);  // p^m(1 - 1/p) at p=2, m=2
    CHECK(a_prime(3, 4) == 17);
    CHECK(a_prime(2, 6) == 2);  // Euler phi(6)
    CHECK_THROWS(a_prime(2, 0));
    CHECK_THROWS(a_prime(1, 4));
}

TEST_CASE("v primitive-vector counts") {
    CHECK(v(1, 1) == 1);
    for (std::uint64_t d = 2; d <= 20; ++d) CHECK(v(1, d) == 0);
    CHECK(v(2, 4) == 2);  // phi(4)
    CHECK(v(3, 2) == 3);
    CHECK(v(2, 12) == 4);
}

TEST_CASE("a_local split recursion") {
    CHECK(a_local(3, 2, 1) == 7);
    CHECK(a_local(3, 2, 2) == 35);
    for (unsigned n = 1; n <= 6; ++n) CHECK(a_local(n, 5, 0) == 1);
    CHECK_THROWS(a_local(3, 4, 2));  // non-prime p
}

TEST_CASE("a_prime_local inclusion/exclusion") {
    for (unsigned n = 2; n <= 6; ++n) CHECK(a_prime_local(n, 3, 0) == 1);
    CHECK(a_prime_local(2, 2, 3) == 4);  // 2^3 (1 - 1/2)
    CHECK(a_prime_local(3, 2, 2) == 17);
    CHECK_THROWS(a_prime_local(3, 6, 2));
}

TEST_CASE("local evaluators agree with the generic ones") {
    for (unsigned n = 1; n <= 6; ++n)
        for (std::uint64_t p : {2, 3, 5, 7, 11, 13})
            for (unsigned m = 0; m <= 8; ++m) {
                std::int64_t pm = 1;
                for (unsigned i = 0; i < m; ++i) pm *= std::int64_t(p);
                CHECK(a_local(n, p, m) == a(n, pm));
                if (n >= 2) CHECK(a_prime_local(n, p, m) == a_prime(n, pm));
            }
}

TEST_CASE("closed forms: spot values") {
    CHECK(a3_closed(2, 1) == 7);
    CHECK(a3_closed(2, 2) == 35);
    CHECK(a3_closed(3, 1) == 13);
    CHECK(a3_prime_closed(2, 1) == 4);
    CHECK(a3_prime_closed(2, 2) == 17);
    CHECK(a3_prime_closed(3, 1) == 10);
    CHECK(a4_prime_closed(2, 1) == 11);
    CHECK(a4_prime_closed(3, 1) == 36);
    CHECK(a5_prime_closed(2, 1) == 26);
    CHECK(a5_prime_closed(5, 1) == 776);

    CHECK_THROWS(a3_closed(2, 0));
    CHECK_THROWS(a3_prime_closed(2, 0));
    CHECK_THROWS(a4_prime_closed(2, 0));
    CHECK_THROWS(a5_prime_closed(2, 0));
}

TEST_CASE("closed forms agree with generic evaluators") {
    for (std::uint64_t p : {2, 3, 5, 7, 11})
        for (unsigned m = 1; m <= 6; ++m) {
            CHECK(a3_closed(p, m) == a_local(3, p, m));
            CHECK(a3_prime_closed(p, m) == a_prime_local(3, p, m));
            CHECK(a4_prime_closed(p, m) == a_prime_local(4, p, m));
            CHECK(a5_prime_closed(p, m) == a_prime_local(5, p, m));
        }
}

TEST_CASE("a_prime_via_convolution") {
    CHECK(a_prime_via_convolution(2, 4) == 2);
    for (unsigned n = 2; n <= 5; ++n) CHECK(a_prime_via_convolution(n, 1) == 1);
    CHECK(a_prime_via_convolution(4, 12) == a_prime(4, 12));
    for (std::int64_t k = 1; k <= 120; ++k)
        CHECK(a_prime_via_convolution(3, k) == a_prime(3, k));
}

TEST_CASE("enumerated slow paths agree") {
    for (unsigned n = 2; n <= 4; ++n)
        for (std::int64_t k = 1; k <= 120; ++k) {
            CHECK(a_enumerated(n, k) == a(n, k));
            CHECK(a_prime_enumerated(n, k) == a_prime(n, k));
        }
}

TEST_CASE("sign invariance and multiplicativity") {
    for (std::int64_t k = 1; k <= 60; ++k) {
        CHECK(a(3, k) == a(3, -k));
        CHECK(a_prime(3, k) == a_prime(3, -k));
    }
    for (std::int64_t x = 1; x <= 45; ++x)
        for (std::int64_t y = 1; y <= 45; ++y)
            if (std::gcd(x, y) == 1) {
                CHECK(a(4, x * y) == a(4, x) * a(4, y));
                CHECK(a_prime(4, x * y) == a_prime(4, x) * a_prime(4, y));
            }
}

TEST_CASE("lower bound a_n(p^m) >= p^{m(n-1)}") {
    for (unsigned n = 2; n <= 6; ++n)
        for (std::uint64_t p : {2, 3, 5})
            for (unsigned m = 1; m <= 8; ++m)
                CHECK(a_local(n, p, m) >= pow_big(BigInt(static_cast<unsigned long>(p)),
                                                  static_cast<unsigned long>(m) * (n - 1)));
}
