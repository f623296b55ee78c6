#include "primrow/density.hpp"

#include <cmath>
#include <stdexcept>

#include "primrow/asymptotics.hpp"
#include "primrow/orbit_counts.hpp"

namespace primrow::density {

namespace {

using u64 = std::uint64_t;

Rational make_ratio(const BigInt& num, const BigInt& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Simple sieve; returns all primes <= bound.
std::vector<u64> primes_up_to(u64 bound) {
    std::vector<bool> composite(bound + 1, false);
    std::vector<u64> primes;
    for (u64 i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (u64 j = i * i; j <= bound; j += i) composite[j] = true;
    }
    return primes;
}

BigInt product_tree(const std::vector<BigInt>& xs, std::size_t lo, std::size_t hi) {
    if (hi - lo == 0) return 1;
    if (hi - lo == 1) return xs[lo];
    std::size_t mid = lo + (hi - lo) / 2;
    return product_tree(xs, lo, mid) * product_tree(xs, mid, hi);
}

double log_big(const BigInt& x) {
    long exp2 = 0;
    double d = mpz_get_d_2exp(&exp2, x.get_mpz_t());
    return std::log(d) + exp2 * std::log(2.0);
}

}  // namespace

Rational density(unsigned n, std::int64_t k) {
    if (n < 2) throw std::invalid_argument("density: n >= 2 required");
    if (k == 0) throw std::invalid_argument("density: k = 0 has no finite orbit count; use density_zero");
    return make_ratio(orbits::a_prime(n, k), orbits::a(n, k));
}

Rational density_local_n2(u64 p, unsigned m) {
    if (!is_prime(p)) throw std::invalid_argument("density_local_n2: p must be prime");
    if (m == 0) return 1;
    BigInt bp(static_cast<unsigned long>(p));
    // (1-1/p)^2 / (1-1/p^{m+1}) = (p-1)^2 p^{m-1} / (p^{m+1} - 1)
    return make_ratio((bp - 1) * (bp - 1) * pow_big(bp, m - 1), pow_big(bp, m + 1) - 1);
}

Rational density_prime_limit(unsigned n, u64 p) {
    if (n < 3)
        throw std::invalid_argument("density_prime_limit: n >= 3 required; use density_prime_limit_n2");
    if (!is_prime(p)) throw std::invalid_argument("density_prime_limit: p must be prime");
    BigInt q = pow_big(BigInt(static_cast<unsigned long>(p)), n - 1);
    Rational base = make_ratio(q - 1, q);
    Rational r = 1;
    for (unsigned i = 0; i < n; ++i) r *= base;
    return r;
}

Rational density_prime_limit_n2(u64 p) {
    if (!is_prime(p)) throw std::invalid_argument("density_prime_limit_n2: p must be prime");
    BigInt bp(static_cast<unsigned long>(p));
    return make_ratio((bp - 1) * (bp - 1), bp * bp);
}

double density_zero(unsigned n) {
    if (n < 3) throw std::invalid_argument("density_zero: n >= 3 required");
    return std::pow(asym::zeta_int(n - 1), -static_cast<double>(n));
}

IntSeq seq_convolve(const IntSeq& u, const IntSeq& v) {
    if (u.empty() || v.empty()) throw std::invalid_argument("seq_convolve: empty sequence");
    std::size_t len = std::min(u.size(), v.size());
    IntSeq w(len, BigInt(0));
    for (std::size_t r = 0; r < len; ++r)
        for (std::size_t j = 0; j <= r; ++j) w[r] += u[r - j] * v[j];
    return w;
}

IntSeq mobius_seq(std::size_t len) {
    if (len < 1) throw std::invalid_argument("mobius_seq: len >= 1 required");
    IntSeq m(len, BigInt(0));
    m[0] = 1;
    if (len > 1) m[1] = -1;
    return m;
}

IntSeq geometric_seq(u64 p, unsigned i, std::size_t len) {
    if (len < 1) throw std::invalid_argument("geometric_seq: len >= 1 required");
    IntSeq s(len);
    BigInt q = pow_big(BigInt(static_cast<unsigned long>(p)), i);
    s[0] = 1;
    for (std::size_t r = 1; r < len; ++r) s[r] = s[r - 1] * q;
    return s;
}

MenonParts menon_decompose(const IntSeq& u, const IntSeq& v, std::size_t r) {
    if (r < 1) throw std::invalid_argument("menon_decompose: r >= 1 required");
    if (u.size() < r + 2 || v.size() < r + 2)
        throw std::invalid_argument("menon_decompose: sequences too short for index r+1");
    if (u[0] != 1 || v[0] != 1)
        throw std::invalid_argument("menon_decompose: u_0 = v_0 = 1 required");
    MenonParts out{0, 0, 0};
    for (std::size_t i = 0; i + 1 < r; ++i)
        for (std::size_t j = i + 1; j <= r - 1; ++j)
            out.I += (v[j] * v[i + 1] - v[j + 1] * v[i]) *
                     (u[r - j] * u[r - i - 1] - u[r - 1 - j] * u[r - i]);
    for (std::size_t j = 0; j <= r - 1; ++j)
        out.II += v[j] * (u[r - j] * u[r] - u[r - 1 - j] * u[r + 1]);
    out.III = v[r] * u[r];
    for (std::size_t j = 0; j <= r - 1; ++j)
        out.III += u[j] * (v[r] * v[r - j] - v[r + 1] * v[r - 1 - j]);
    return out;
}

LogConcavity is_log_concave(const IntSeq& u) {
    if (u.size() < 3) throw std::invalid_argument("is_log_concave: length >= 3 required");
    for (std::size_t r = 1; r + 1 < u.size(); ++r)
        if (u[r] * u[r] - u[r - 1] * u[r + 1] < 0) return {false, r};
    return {true, std::nullopt};
}

bool density_monotone_check(unsigned n, u64 p, unsigned max_exponent) {
    if (max_exponent < 1) throw std::invalid_argument("density_monotone_check: M >= 1 required");
    Rational prev = 1;  // D_n(p^0)
    for (unsigned m = 1; m <= max_exponent; ++m) {
        Rational cur = make_ratio(orbits::a_prime_local(n, p, m), orbits::a_local(n, p, m));
        if (!(cur < prev)) return false;
        prev = cur;
    }
    return true;
}

ImageGap density_image_gap(unsigned n) {
    if (n < 4) throw std::invalid_argument("density_image_gap: n >= 4 required");
    double z = asym::zeta_int(n - 1);
    double olb = std::pow(z, -static_cast<double>(n)) *
                 std::pow(1.0 - std::pow(2.0, 1.0 - static_cast<double>(n)), -static_cast<double>(n));
    BigInt two_n = pow_big(BigInt(2), n) - 1;
    Rational d2 = Rational(1) - make_ratio(BigInt(n), two_n);
    return {olb, d2, olb > d2.get_d()};
}

DensityTarget find_k_for_density(double x, double eps, std::size_t prime_cap) {
    if (x < 0 || eps <= 0) throw std::invalid_argument("find_k_for_density: x >= 0 and eps > 0 required");
    if (x == 0) return {BigInt(1), 0, 0.0};

    auto term = [](u64 p) { return -std::log1p(-2.0 / (p + 1.0)); };

    u64 bound = 1 << 16;
    std::vector<u64> primes = primes_up_to(bound);
    std::size_t idx = 0;
    while (term(primes[idx]) >= eps) {
        ++idx;
        if (idx == primes.size()) {
            bound *= 2;
            primes = primes_up_to(bound);
        }
    }

    std::vector<BigInt> chosen;
    double sum = 0;
    while (sum < x) {
        if (idx == primes.size()) {
            bound *= 2;
            primes = primes_up_to(bound);
        }
        u64 p = primes[idx++];
        sum += term(p);
        chosen.emplace_back(static_cast<unsigned long>(p));
        if (chosen.size() > prime_cap)
            throw std::runtime_error("find_k_for_density: prime set exceeds configured cap");
    }

    // Exact D_2(k) = prod (p-1)/(p+1) over the chosen primes (k squarefree),
    // evaluated by product trees; the logarithm is the only float step.
    std::vector<BigInt> nums, dens;
    nums.reserve(chosen.size());
    dens.reserve(chosen.size());
    for (const BigInt& p : chosen) {
        nums.push_back(p - 1);
        dens.push_back(p + 1);
    }
    BigInt num = product_tree(nums, 0, nums.size());
    BigInt den = product_tree(dens, 0, dens.size());
    double neg_log = log_big(den) - log_big(num);
    return {product_tree(chosen, 0, chosen.size()), chosen.size(), neg_log};
}

}  // namespace primrow::density
