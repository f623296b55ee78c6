#pragma once

#include <cstdint>
#include <optional>

#include "primrow/exact_arith.hpp"

// Floating-point evaluation of the asymptotic counting constants: zeta at
// integer arguments, Gamma at half-integers, ball volumes, sphere areas,
// C0, C1 and the per-determinant constants c_{n,k}, c'_{n,k}.

namespace primrow::asym {

struct ConstantReport {
    unsigned n = 0;
    std::optional<std::int64_t> k;
    double C0 = 0;
    double C1 = 0;
    double c = 0;        // c_{n,k} or c_{n,0}
    double c_prime = 0;  // c'_{n,k} or c'_{n,0} (n >= 3 when k = 0)
    double abs_error = 0;
};

// zeta(s) for integer s >= 2, absolute error < 1e-12. Even arguments use the
// exact pi-power closed form via Bernoulli numbers; odd arguments use the
// direct series with an Euler-Maclaurin tail.
double zeta_int(unsigned s);

// Gamma(half/2) for positive half; exact recursion from Gamma(1) = 1 and
// Gamma(1/2) = sqrt(pi).
double gamma_half(unsigned half);

double ball_volume(unsigned d);   // V_d = pi^{d/2} / Gamma(d/2 + 1)
double sphere_area(unsigned n);   // S_{n-1} = n V_n, for the sphere in R^n

// C0 = V_{n(n-1)} S_{n-1} / 2 = pi^{n^2/2} / (Gamma(n/2) Gamma(n(n-1)/2 + 1)).
// Both forms are evaluated and must agree to 1e-10 relative; the Gamma form
// is returned.
double c0(unsigned n);
double c0_product_form(unsigned n);

// C1 = C0 / (zeta(2) ... zeta(n)).
double c1(unsigned n);

double c_nk(unsigned n, std::int64_t k);
double c_nk_prime(unsigned n, std::int64_t k);

double c_n0(unsigned n);        // C0 (n-1)/zeta(n), n >= 2
double c_n0_prime(unsigned n);  // C0 (n-1)/(zeta(n-1)^n zeta(n)), n >= 3

ConstantReport constants(unsigned n, std::optional<std::int64_t> k);

}  // namespace primrow::asym
