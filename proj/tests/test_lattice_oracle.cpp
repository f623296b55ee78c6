#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "primrow/lattice_oracle.hpp"
#include "primrow/orbit_counts.hpp"

using namespace primrow;
using namespace primrow::oracle;

namespace {

IntMatrix make(unsigned n, const std::vector<long>& e) {
    IntMatrix m(n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) m.at(i, j) = e[i * n + j];
    return m;
}

IntMatrix random_matrix(unsigned n, std::mt19937& rng, long lo = -9, long hi = 9) {
    std::uniform_int_distribution<long> dist(lo, hi);
    IntMatrix m(n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) m.at(i, j) = dist(rng);
    return m;
}

// Random determinant-1 matrix: identity times random column shears.
IntMatrix random_unimodular(unsigned n, std::mt19937& rng, unsigned ops = 12) {
    std::uniform_int_distribution<unsigned> col(0, n - 1);
    std::uniform_int_distribution<long> coef(-3, 3);
    IntMatrix x = IntMatrix::identity(n);
    for (unsigned t = 0; t < ops; ++t) {
        unsigned i = col(rng), j = col(rng);
        if (i == j) continue;
        long c = coef(rng);
        for (unsigned r = 0; r < n; ++r) x.at(r, j) += c * x.at(r, i);
    }
    return x;
}

std::string key(const IntMatrix& m) {
    std::string s;
    for (unsigned i = 0; i < m.dim(); ++i)
        for (unsigned j = 0; j < m.dim(); ++j) s += m.at(i, j).get_str() + ",";
    return s;
}

}  // namespace

TEST_CASE("det") {
    CHECK(det(IntMatrix::identity(5)) == 1);
    CHECK(det(make(2, {1, 0, 7, 3})) == 3);
    CHECK(det(make(2, {1, 0, -42, 3})) == 3);
    CHECK(det(make(3, {0, 1, 0, 1, 0, 0, 0, 0, 1})) == -1);

    std::mt19937 rng(20240817);
    for (int t = 0; t < 200; ++t) {
        IntMatrix a = random_matrix(4, rng);
        CHECK(det(a) == det_cofactor(a));
    }
}

TEST_CASE("det multiplicativity") {
    std::mt19937 rng(7);
    for (int t = 0; t < 100; ++t) {
        IntMatrix a = random_matrix(3, rng), b = random_matrix(3, rng);
        CHECK(det(mat_mul(a, b)) == det(a) * det(b));
    }
}

TEST_CASE("norm_sq") {
    CHECK(norm_sq(IntMatrix::identity(2)) == 2);
    CHECK(norm_sq(make(2, {1, 2, 3, 4})) == 30);
    std::mt19937 rng(11);
    for (int t = 0; t < 50; ++t) {
        IntMatrix a = random_matrix(3, rng);
        // trace of A^T A
        BigInt tr = 0;
        for (unsigned i = 0; i < 3; ++i)
            for (unsigned j = 0; j < 3; ++j) tr += a.at(j, i) * a.at(j, i);
        CHECK(norm_sq(a) == tr);
    }
}

TEST_CASE("is_primitive") {
    std::vector<BigInt> v1{3, 5}, v2{2, 4}, v3{0, 0}, v4{6, 10, 15};
    CHECK(is_primitive(std::span<const BigInt>(v1)));
    CHECK_FALSE(is_primitive(std::span<const BigInt>(v2)));
    CHECK_FALSE(is_primitive(std::span<const BigInt>(v3)));
    CHECK(is_primitive(std::span<const BigInt>(v4)));
}

TEST_CASE("right-multiplication by SL_n preserves row primitivity") {
    std::mt19937 rng(101);
    for (int t = 0; t < 500; ++t) {
        IntMatrix a = random_matrix(3, rng);
        IntMatrix x = random_unimodular(3, rng);
        CHECK(rows_primitive(a) == rows_primitive(mat_mul(a, x)));
    }
}

TEST_CASE("count_ball basics") {
    CHECK(count_ball({2, 1, Rational(2), false}) == 4);
    for (std::int64_t k = 1; k <= 4; ++k)
        CHECK(count_ball({2, k, Rational(2 * k - 1), false}) == 0);  // AM-GM bound
    CHECK(count_ball({2, 2, Rational(25), true}) == count_ball_fast_n2({2, 2, Rational(25), true}));
    CHECK(count_ball({2, 3, Rational(100), false}) == count_ball({2, -3, Rational(100), false}));
    CHECK_THROWS_AS((count_ball({2, 1, Rational(10000), false}, EnumLimits{10, 1})),
                    BudgetExceeded);
}

TEST_CASE("fast path equals slow path on a grid") {
    for (std::int64_t k = 1; k <= 6; ++k)
        for (long t2 : {2, 10, 50, 200, 1000})
            for (bool prim : {false, true}) {
                BallQuery q{2, k, Rational(t2), prim};
                CHECK(count_ball_fast_n2(q) == count_ball(q));
            }
    CHECK_THROWS(count_ball_fast_n2({2, 0, Rational(10), false}));
}

TEST_CASE("det +-1 rows are automatically primitive") {
    BallQuery raw{2, 1, Rational(1000000), false};
    BallQuery prim{2, 1, Rational(1000000), true};
    CHECK(count_ball_fast_n2(raw) == count_ball_fast_n2(prim));
}

TEST_CASE("count_ball determinism across thread counts") {
    for (unsigned threads : {1u, 4u, 8u}) {
        CHECK(count_ball({2, 2, Rational(400), false}, {.threads = threads}) ==
              count_ball({2, 2, Rational(400), false}));
        CHECK(count_ball({3, 1, Rational(6), true}, {.threads = threads}) ==
              count_ball({3, 1, Rational(6), true}));
    }
}

TEST_CASE("enumerate_hnf") {
    std::vector<std::string> seen;
    enumerate_hnf(2, 4, false, [&](const IntMatrix& m) {
        CHECK(is_hnf(m));
        CHECK(det(m) == 4);
        seen.push_back(key(m));
    });
    CHECK(seen.size() == 7);
    CHECK(std::set<std::string>(seen.begin(), seen.end()).size() == 7);

    unsigned long long ident = 0;
    enumerate_hnf(3, 1, false, [&](const IntMatrix& m) {
        CHECK(m == IntMatrix::identity(3));
        ++ident;
    });
    CHECK(ident == 1);

    std::set<std::string> prim;
    enumerate_hnf(2, 4, true, [&](const IntMatrix& m) { prim.insert(key(m)); });
    CHECK(prim == std::set<std::string>{key(make(2, {1, 0, 1, 4})), key(make(2, {1, 0, 3, 4}))});

    for (unsigned n = 2; n <= 4; ++n)
        for (std::uint64_t k = 1; k <= 30; ++k) {
            CHECK(BigInt(static_cast<unsigned long>(count_hnf(n, k, false))) ==
                  orbits::a(n, std::int64_t(k)));
            CHECK(BigInt(static_cast<unsigned long>(count_hnf(n, k, true))) ==
                  orbits::a_prime(n, std::int64_t(k)));
        }
}

TEST_CASE("hnf_reduce") {
    IntMatrix h = make(2, {1, 0, 3, 4});
    auto r = hnf_reduce(h);
    CHECK(r.C == h);
    CHECK(r.X == IntMatrix::identity(2));

    auto rot = hnf_reduce(make(2, {0, 1, -1, 0}));
    CHECK(rot.C == IntMatrix::identity(2));
    CHECK(det(rot.X) == 1);

    CHECK_THROWS(hnf_reduce(make(2, {1, 2, 2, 4})));  // singular

    std::mt19937 rng(42);
    int done = 0;
    while (done < 200) {
        IntMatrix a = random_matrix(3, rng, -6, 6);
        BigInt d = det(a);
        if (d < 1 || d > 20) continue;
        ++done;
        auto res = hnf_reduce(a);
        CHECK(is_hnf(res.C));
        CHECK(det(res.X) == 1);
        CHECK(mat_mul(a, res.X) == res.C);
        // Same orbit, same representative.
        IntMatrix y = random_unimodular(3, rng);
        CHECK(hnf_reduce(mat_mul(a, y)).C == res.C);
    }
}

TEST_CASE("orbit_decomposition_check") {
    auto r1 = orbit_decomposition_check(2, 4, Rational(100));
    CHECK(r1.ok);
    CHECK(r1.orbit_classes == 2);

    auto r2 = orbit_decomposition_check(2, 1, Rational(2));
    CHECK(r2.ok);
    CHECK(r2.orbit_classes == 1);
    CHECK(r2.total == 4);

    CHECK(orbit_decomposition_check(3, 2, Rational(9)).ok);
}
