#include "primrow/verify.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "primrow/asymptotics.hpp"
#include "primrow/density.hpp"
#include "primrow/exact_arith.hpp"
#include "primrow/lattice_oracle.hpp"
#include "primrow/orbit_counts.hpp"

namespace primrow::verify {

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;

const std::vector<u64> kSmallPrimes{2, 3, 5, 7, 11, 13};

i64 ipow(u64 p, unsigned m) {
    i64 r = 1;
    for (unsigned i = 0; i < m; ++i) r *= static_cast<i64>(p);
    return r;
}

struct Checker {
    bool ok = true;
    std::string first_failure;
    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            first_failure = what;
        }
    }
};

SuiteResult suite_hnf() {
    Checker c;
    for (unsigned n = 2; n <= 4; ++n)
        for (i64 k = 1; k <= 60; ++k) {
            c.expect(BigInt(static_cast<unsigned long>(oracle::count_hnf(n, k, false))) ==
                         orbits::a(n, k),
                     "hnf count != a(" + std::to_string(n) + "," + std::to_string(k) + ")");
            c.expect(BigInt(static_cast<unsigned long>(oracle::count_hnf(n, k, true))) ==
                         orbits::a_prime(n, k),
                     "primitive hnf count != a'(" + std::to_string(n) + "," + std::to_string(k) + ")");
        }
    return {"hnf", c.ok, c.ok ? "HNF stream lengths match a, a' for n<=4, k<=60" : c.first_failure};
}

SuiteResult suite_closedforms() {
    Checker c;
    for (u64 p : {2, 3, 5, 7, 11})
        for (unsigned m = 1; m <= 8; ++m) {
            i64 k = ipow(p, m);
            c.expect(orbits::a3_closed(p, m) == orbits::a(3, k), "a3_closed mismatch");
            c.expect(orbits::a3_prime_closed(p, m) == orbits::a_prime(3, k),
                     "a3_prime_closed mismatch");
            c.expect(orbits::a4_prime_closed(p, m) == orbits::a_prime(4, k),
                     "a4_prime_closed mismatch");
            c.expect(orbits::a5_prime_closed(p, m) == orbits::a_prime(5, k),
                     "a5_prime_closed mismatch");
        }
    c.expect(orbits::a(3, 2) == 7, "a_3(2) != 7");
    c.expect(orbits::a_prime(3, 2) == 4, "a'_3(2) != 4");
    c.expect(orbits::a_prime(4, 2) == 11, "a'_4(2) != 11");
    c.expect(orbits::a_prime(5, 2) == 26, "a'_5(2) != 26");
    return {"closedforms", c.ok,
            c.ok ? "n=3..5 closed forms agree with generic evaluators" : c.first_failure};
}

SuiteResult suite_identities() {
    Checker c;
    for (unsigned n = 1; n <= 6; ++n)
        for (u64 p : kSmallPrimes)
            for (unsigned m = 0; m <= 8; ++m) {
                c.expect(orbits::a_local(n, p, m) == orbits::a(n, ipow(p, m)),
                         "split recursion mismatch");
                if (n >= 2)
                    c.expect(orbits::a_prime_local(n, p, m) == orbits::a_prime(n, ipow(p, m)),
                             "inclusion/exclusion mismatch");
            }
    for (unsigned n = 2; n <= 6; ++n)
        for (i64 k = 1; k <= 2000; ++k)
            c.expect(orbits::a_prime_via_convolution(n, k) == orbits::a_prime(n, k),
                     "a' != mu^{*n} * a at n=" + std::to_string(n) + ", k=" + std::to_string(k));
    // Dual identity a_n = 1^{*n} * a'_n.
    for (unsigned n = 2; n <= 5; ++n)
        for (i64 k = 1; k <= 1000; ++k) {
            ArithmeticFunction ones_n = [n](u64 d) { return dirichlet_power(one_fn(), n, d); };
            ArithmeticFunction ap = [n](u64 d) { return orbits::a_prime(n, static_cast<i64>(d)); };
            c.expect(dirichlet_convolve(ones_n, ap, static_cast<u64>(k)) == orbits::a(n, k),
                     "a != 1^{*n} * a' at n=" + std::to_string(n) + ", k=" + std::to_string(k));
        }
    // Multiplicativity of a, a', D over coprime pairs.
    for (unsigned n = 2; n <= 6; ++n)
        for (i64 x = 2; x <= 60; ++x)
            for (i64 y = x + 1; x * y <= 2000; ++y) {
                if (std::gcd(x, y) != 1) continue;
                c.expect(orbits::a(n, x * y) == orbits::a(n, x) * orbits::a(n, y),
                         "a not multiplicative");
                c.expect(orbits::a_prime(n, x * y) == orbits::a_prime(n, x) * orbits::a_prime(n, y),
                         "a' not multiplicative");
                c.expect(density::density(n, x * y) ==
                             density::density(n, x) * density::density(n, y),
                         "D not multiplicative");
            }
    // Sign invariance and the lower bound a_n(p^m) >= p^{m(n-1)}.
    for (unsigned n = 2; n <= 5; ++n)
        for (i64 k = 1; k <= 50; ++k) {
            c.expect(orbits::a(n, k) == orbits::a(n, -k), "a sign invariance");
            c.expect(orbits::a_prime(n, k) == orbits::a_prime(n, -k), "a' sign invariance");
        }
    for (unsigned n = 2; n <= 6; ++n)
        for (u64 p : kSmallPrimes)
            for (unsigned m = 0; m <= 8; ++m)
                c.expect(orbits::a_local(n, p, m) >=
                             pow_big(BigInt(static_cast<unsigned long>(p)),
                                     static_cast<unsigned long>(m) * (n - 1)),
                         "a_n(p^m) < p^{m(n-1)}");
    return {"identities", c.ok,
            c.ok ? "recursion, inclusion/exclusion, Dirichlet and multiplicativity identities hold"
                 : c.first_failure};
}

SuiteResult suite_logconcavity() {
    Checker c;
    for (unsigned n = 4; n <= 8; ++n)
        for (u64 p : kSmallPrimes) {
            density::IntSeq u;
            for (unsigned m = 0; m <= 12; ++m) u.push_back(orbits::a_prime_local(n, p, m));
            c.expect(density::is_log_concave(u).ok,
                     "a'_n(p^m) not log-concave at n=" + std::to_string(n) +
                         ", p=" + std::to_string(p));
        }
    for (unsigned n = 2; n <= 8; ++n)
        for (u64 p : kSmallPrimes)
            c.expect(density::density_monotone_check(n, p, 8),
                     "D_n(p^m) not strictly decreasing at n=" + std::to_string(n) +
                         ", p=" + std::to_string(p));
    // Asserted negative: a'_2(2^m) fails log-concavity at r = 1.
    density::IntSeq bad;
    for (unsigned m = 0; m <= 3; ++m) bad.push_back(orbits::a_prime_local(2, 2, m));
    auto lc = density::is_log_concave(bad);
    c.expect(!lc.ok && lc.first_violation == 1, "a'_2(2^m) unexpectedly log-concave");
    return {"logconcavity", c.ok,
            c.ok ? "log-concavity for n in 4..8 and strict density decrease hold; n=2,p=2 fails at r=1"
                 : c.first_failure};
}

SuiteResult suite_menon() {
    Checker c;
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> entry(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t len = 8;
        density::IntSeq u(len), v(len);
        u[0] = v[0] = 1;
        for (std::size_t i = 1; i < len; ++i) {
            u[i] = entry(rng);
            v[i] = entry(rng);
        }
        density::IntSeq w = density::seq_convolve(u, v);
        for (std::size_t r = 1; r + 1 < len; ++r) {
            auto parts = density::menon_decompose(u, v, r);
            c.expect(parts.total() == w[r] * w[r] - w[r - 1] * w[r + 1],
                     "Menon identity failed at r=" + std::to_string(r));
        }
    }
    // (M*P_i)*(M*P_j) cases: the decomposition collapses to the product formula.
    const std::size_t len = 10;
    for (u64 p : kSmallPrimes)
        for (unsigned i = 0; i <= 6; ++i)
            for (unsigned j = i + 1; j <= 6; ++j) {
                density::IntSeq u =
                    density::seq_convolve(density::mobius_seq(len), density::geometric_seq(p, i, len));
                density::IntSeq v =
                    density::seq_convolve(density::mobius_seq(len), density::geometric_seq(p, j, len));
                // At r = 1 the term I is an empty sum, leaving the -u_0 v_0
                // correction; the plain product formula starts at r = 2.
                {
                    auto parts = density::menon_decompose(u, v, 1);
                    c.expect(parts.total() == (u[1] - u[0]) * (v[1] - v[0]) - 1,
                             "r=1 product formula failed");
                }
                for (std::size_t r = 2; r + 1 < len; ++r) {
                    auto parts = density::menon_decompose(u, v, r);
                    c.expect(parts.total() == (u[r] - u[r - 1]) * (v[r] - v[r - 1]),
                             "product formula failed");
                }
                auto lc = density::is_log_concave(density::seq_convolve(u, v));
                if (i == 0 || (p == 2 && i == 1))
                    // i = 0: u_1 < u_0. p = 2, i = 1: the r = 1 correction
                    // makes w_1^2 - w_0 w_2 = -1.
                    c.expect(!lc.ok && lc.first_violation == 1,
                             "(M*P_i)*(M*P_j) unexpectedly log-concave");
                else
                    c.expect(lc.ok, "(M*P_i)*(M*P_j) not log-concave for i>0");
            }
    // Positive log-concave inputs give non-negative parts (binomial rows).
    for (unsigned L : {8u, 10u}) {
        density::IntSeq u, v;
        for (unsigned r = 0; r < 8; ++r) {
            u.push_back(binomial(L, r));
            v.push_back(binomial(L + 2, r));
        }
        for (std::size_t r = 1; r + 1 < 8; ++r) {
            auto parts = density::menon_decompose(u, v, r);
            c.expect(parts.I >= 0 && parts.II >= 0 && parts.III >= 0,
                     "negative Menon part for log-concave inputs");
        }
    }
    return {"menon", c.ok, c.ok ? "Menon decomposition identities hold" : c.first_failure};
}

SuiteResult suite_limit() {
    Checker c;
    Rational limit = density::density_prime_limit(3, 2);  // 27/64
    c.expect(limit == Rational(27, 64), "limit value != 27/64");
    Rational prev_gap = -1;
    for (unsigned m = 1; m <= 10; ++m) {
        Rational d = density::density(3, ipow(2, m));
        Rational gap = d / limit - 1;
        if (gap < 0) gap = -gap;
        if (m > 1) c.expect(gap < prev_gap, "|D_3(2^m) 64/27 - 1| not decreasing");
        prev_gap = gap;
    }
    c.expect(prev_gap < Rational(1, 100), "|D_3(2^10) 64/27 - 1| >= 1e-2");
    return {"limit", c.ok, c.ok ? "D_3(2^m) converges monotonically to 27/64" : c.first_failure};
}

SuiteResult suite_bounds() {
    Checker c;
    for (unsigned n = 3; n <= 5; ++n)
        for (i64 k = 2; k <= 1000; ++k) {
            Rational d = density::density(n, k);
            c.expect(d < 1, "density >= 1");
            Rational lower = 1;
            for (const auto& pp : factorize(static_cast<u64>(k)).factors)
                lower *= density::density_prime_limit(n, pp.prime);
            c.expect(d > lower, "density below local-factor lower bound at n=" +
                                    std::to_string(n) + ", k=" + std::to_string(k));
        }
    return {"bounds", c.ok,
            c.ok ? "strict sandwich prod_p (1-p^{1-n})^n < D_n(k) < 1 holds" : c.first_failure};
}

SuiteResult suite_imagegap() {
    Checker c;
    for (unsigned n = 4; n <= 40; ++n) {
        auto gap = density::density_image_gap(n);
        c.expect(gap.gap_holds, "image gap fails at n=" + std::to_string(n));
    }
    auto g4 = density::density_image_gap(4);
    c.expect(std::abs(g4.odd_lower_bound - 0.817086) < 5e-4, "n=4 odd lower bound off");
    c.expect(g4.d_at_2 == Rational(11, 15), "D_4(2) != 11/15");
    for (double x : {0.1, 0.7, 2.0}) {
        auto t = density::find_k_for_density(x, 0.01);
        c.expect(std::abs(t.neg_log_density - x) < 0.01,
                 "find_k_for_density missed target x=" + std::to_string(x));
    }
    return {"imagegap", c.ok,
            c.ok ? "image-gap inequality holds for n in 4..40; n=2 density targets hit"
                 : c.first_failure};
}

SuiteResult suite_maintheorem() {
    Checker c;
    const Rational t_sq = 1000 * 1000;
    for (i64 k = 1; k <= 4; ++k) {
        oracle::BallQuery q{2, k, t_sq, true};
        double n_prime = static_cast<double>(oracle::count_ball_fast_n2(q));
        double c_prime = 6.0 * orbits::a_prime(2, k).get_d() / static_cast<double>(k);
        double ratio = n_prime / (c_prime * 1e6);
        c.expect(std::abs(ratio - 1.0) <= 0.05,
                 "N'_{2,k}(1000) off by more than 5% at k=" + std::to_string(k));
    }
    oracle::BallQuery tiny{2, 1, Rational(2), false};
    c.expect(oracle::count_ball_fast_n2(tiny) == 4, "N_{2,1}(sqrt 2) != 4");
    c.expect(oracle::count_ball(tiny) == 4, "generic N_{2,1}(sqrt 2) != 4");
    return {"maintheorem", c.ok,
            c.ok ? "N'_{2,k}(T)/(c'_{2,k} T^2) within 5% at T=1000 for k in 1..4" : c.first_failure};
}

SuiteResult suite_constants() {
    Checker c;
    c.expect(std::abs(asym::c1(2) - 6.0) < 1e-9, "c1(2) != 6");
    for (unsigned n = 2; n <= 12; ++n) {
        double gamma_form = asym::c0(n);  // throws if the dual forms disagree
        double product_form = asym::c0_product_form(n);
        c.expect(std::abs(gamma_form - product_form) <= 1e-10 * std::abs(gamma_form),
                 "C0 dual forms disagree at n=" + std::to_string(n));
    }
    for (unsigned n = 2; n <= 5; ++n)
        for (i64 k = -100; k <= 100; ++k) {
            if (k == 0) continue;
            double ratio = asym::c_nk_prime(n, k) / asym::c_nk(n, k);
            c.expect(std::abs(ratio - density::density(n, k).get_d()) < 1e-9,
                     "c'/c != D_n(k) at n=" + std::to_string(n) + ", k=" + std::to_string(k));
        }
    for (unsigned n = 3; n <= 8; ++n) {
        double ratio = asym::c_n0_prime(n) / asym::c_n0(n);
        c.expect(std::abs(ratio - density::density_zero(n)) < 1e-9,
                 "c'_{n,0}/c_{n,0} != D_n(0) at n=" + std::to_string(n));
    }
    for (unsigned s = 2; s < 20; ++s)
        c.expect(asym::zeta_int(s) > asym::zeta_int(s + 1), "zeta not decreasing");
    return {"constants", c.ok, c.ok ? "constant identities hold to stated precision" : c.first_failure};
}

SuiteResult suite_orbits() {
    Checker c;
    for (u64 k = 1; k <= 6; ++k) {
        auto rep = oracle::orbit_decomposition_check(2, k, Rational(400));
        c.expect(rep.ok, "orbit decomposition failed at n=2, k=" + std::to_string(k));
        if (k == 4) c.expect(rep.orbit_classes == 2, "n=2, k=4 should see 2 orbit classes");
    }
    for (u64 k = 1; k <= 3; ++k) {
        auto rep = oracle::orbit_decomposition_check(3, k, Rational(12));
        c.expect(rep.ok, "orbit decomposition failed at n=3, k=" + std::to_string(k));
    }
    auto unit = oracle::orbit_decomposition_check(2, 1, Rational(2));
    c.expect(unit.ok && unit.orbit_classes == 1 && unit.total == 4,
             "n=2, k=1, T^2=2 should be one class of size 4");
    return {"orbits", c.ok, c.ok ? "per-orbit class counts match the HNF decomposition" : c.first_failure};
}

SuiteResult suite_parallel() {
    Checker c;
    for (i64 k : {1, 2}) {
        for (i64 t_sq : {100, 400}) {
            for (bool prim : {false, true}) {
                oracle::BallQuery q{2, k, Rational(t_sq), prim};
                unsigned long long c1 = oracle::count_ball(q, {.threads = 1});
                unsigned long long c4 = oracle::count_ball(q, {.threads = 4});
                unsigned long long c8 = oracle::count_ball(q, {.threads = 8});
                c.expect(c1 == c4 && c4 == c8, "thread counts disagree");
                c.expect(oracle::count_ball_fast_n2(q) == c1, "fast path != slow path");
            }
        }
    }
    oracle::BallQuery q3{3, 1, Rational(9), false};
    c.expect(oracle::count_ball(q3, {.threads = 1}) == oracle::count_ball(q3, {.threads = 4}),
             "n=3 thread counts disagree");
    return {"parallel", c.ok, c.ok ? "counts identical across 1/4/8 threads" : c.first_failure};
}

using SuiteFn = SuiteResult (*)();

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> reg{
        {"hnf", suite_hnf},
        {"closedforms", suite_closedforms},
        {"identities", suite_identities},
        {"logconcavity", suite_logconcavity},
        {"menon", suite_menon},
        {"limit", suite_limit},
        {"bounds", suite_bounds},
        {"imagegap", suite_imagegap},
        {"maintheorem", suite_maintheorem},
        {"constants", suite_constants},
        {"orbits", suite_orbits},
        {"parallel", suite_parallel},
    };
    return reg;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry()) names.push_back(name);
    return names;
}

SuiteResult run_suite(const std::string& name) {
    for (const auto& [n, fn] : registry()) {
        if (n != name) continue;
        auto start = std::chrono::steady_clock::now();
        SuiteResult r = fn();
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return r;
    }
    std::ostringstream msg;
    msg << "unknown suite '" << name << "'";
    throw std::invalid_argument(msg.str());
}

std::vector<SuiteResult> run_all() {
    std::vector<SuiteResult> out;
    for (const auto& name : suite_names()) out.push_back(run_suite(name));
    return out;
}

}  // namespace primrow::verify
