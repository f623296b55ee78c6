#include "primrow/asymptotics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "primrow/orbit_counts.hpp"

namespace primrow::asym {

namespace {

// B_0..B_max as exact rationals, by the defining recurrence
// sum_{j=0}^{m} binom(m+1, j) B_j = 0.
const Rational& bernoulli(unsigned m) {
    static thread_local std::vector<Rational> cache{Rational(1)};
    while (cache.size() <= m) {
        unsigned mm = cache.size();
        Rational sum = 0;
        for (unsigned j = 0; j < mm; ++j)
            sum += Rational(binomial(mm + 1, j)) * cache[j];
        Rational b = -sum / Rational(binomial(mm + 1, mm));
        b.canonicalize();
        cache.push_back(b);
    }
    return cache[m];
}

const double kPi = 3.14159265358979323846264338327950288;

double factorial_d(unsigned n) {
    double r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

// zeta(2n) = (-1)^{n+1} B_{2n} (2 pi)^{2n} / (2 (2n)!).
double zeta_even(unsigned s) {
    Rational b = bernoulli(s);
    double coeff = std::abs(b.get_d());
    return coeff * std::pow(2 * kPi, s) / (2 * factorial_d(s));
}

// Direct series with Euler-Maclaurin correction through the B_2 term; the
// remainder is O(N^{-s-3}), far below 1e-13 for N = 10^4.
double zeta_series(unsigned s) {
    const unsigned N = 10000;
    double sum = 0;
    for (unsigned j = N; j >= 1; --j) sum += std::pow(static_cast<double>(j), -static_cast<double>(s));
    double Nd = N;
    sum += std::pow(Nd, 1.0 - s) / (s - 1.0);
    sum -= 0.5 * std::pow(Nd, -static_cast<double>(s));
    sum += s / 12.0 * std::pow(Nd, -static_cast<double>(s) - 1.0);
    return sum;
}

}  // namespace

double zeta_int(unsigned s) {
    if (s < 2) throw std::invalid_argument("zeta_int: s >= 2 required");
    static thread_local std::vector<double> cache;  // cache[s], 0 = unset
    if (s < cache.size() && cache[s] != 0) return cache[s];
    double z = s % 2 == 0 ? zeta_even(s) : zeta_series(s);
    if (s >= cache.size()) cache.resize(s + 1, 0);
    cache[s] = z;
    return z;
}

double gamma_half(unsigned half) {
    if (half == 0) throw std::invalid_argument("gamma_half: argument must be positive");
    if (half == 1) return std::sqrt(kPi);  // Gamma(1/2)
    if (half == 2) return 1.0;             // Gamma(1)
    return (half / 2.0 - 1.0) * gamma_half(half - 2);
}

double ball_volume(unsigned d) {
    if (d < 1) throw std::invalid_argument("ball_volume: d >= 1 required");
    return std::pow(kPi, d / 2.0) / gamma_half(d + 2);
}

double sphere_area(unsigned n) {
    if (n < 2) throw std::invalid_argument("sphere_area: n >= 2 required");
    return n * ball_volume(n);
}

double c0_product_form(unsigned n) {
    return ball_volume(n * (n - 1)) * sphere_area(n) / 2.0;
}

double c0(unsigned n) {
    if (n < 2) throw std::invalid_argument("c0: n >= 2 required");
    double gamma_form = std::pow(kPi, n * n / 2.0) /
                        (gamma_half(n) * gamma_half(n * (n - 1) + 2));
    double product_form = c0_product_form(n);
    if (std::abs(gamma_form - product_form) > 1e-10 * std::abs(gamma_form))
        throw std::logic_error("c0: dual formulas disagree beyond tolerance");
    return gamma_form;
}

double c1(unsigned n) {
    double z = 1;
    for (unsigned s = 2; s <= n; ++s) z *= zeta_int(s);
    return c0(n) / z;
}

double c_nk(unsigned n, std::int64_t k) {
    if (k == 0) throw std::invalid_argument("c_nk: k must be nonzero; use c_n0");
    double ak = orbits::a(n, k).get_d();
    return c1(n) * ak / std::pow(std::abs(static_cast<double>(k)), n - 1.0);
}

double c_nk_prime(unsigned n, std::int64_t k) {
    if (k == 0) throw std::invalid_argument("c_nk_prime: k must be nonzero; use c_n0_prime");
    double ap = orbits::a_prime(n, k).get_d();
    return c1(n) * ap / std::pow(std::abs(static_cast<double>(k)), n - 1.0);
}

double c_n0(unsigned n) {
    if (n < 2) throw std::invalid_argument("c_n0: n >= 2 required");
    return c0(n) * (n - 1.0) / zeta_int(n);
}

double c_n0_prime(unsigned n) {
    if (n < 3) throw std::invalid_argument("c_n0_prime: n >= 3 required");
    return c0(n) * (n - 1.0) / (std::pow(zeta_int(n - 1), static_cast<double>(n)) * zeta_int(n));
}

ConstantReport constants(unsigned n, std::optional<std::int64_t> k) {
    ConstantReport r;
    r.n = n;
    r.k = k;
    r.C0 = c0(n);
    r.C1 = c1(n);
    if (!k || *k == 0) {
        r.k = 0;
        r.c = c_n0(n);
        r.c_prime = n >= 3 ? c_n0_prime(n) : std::nan("");
    } else {
        r.c = c_nk(n, *k);
        r.c_prime = c_nk_prime(n, *k);
    }
    // Conservative: zeta factors each < 1e-12, Gamma/pi powers near machine
    // precision; scale by the magnitude of the reported values.
    r.abs_error = 1e-9 * std::max({std::abs(r.C0), std::abs(r.C1), std::abs(r.c), 1.0});
    return r;
}

}  // namespace primrow::asym
