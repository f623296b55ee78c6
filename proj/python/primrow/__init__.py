"""Orbit counts, primitive-row densities and lattice oracles for integer
matrices of fixed determinant."""

from primrow._core import (  # noqa: F401
    a,
    a_local,
    a_prime,
    a_prime_local,
    ball_volume,
    c0,
    c1,
    c_n0,
    c_n0_prime,
    c_nk,
    c_nk_prime,
    count_ball,
    count_ball_fast_n2,
    count_hnf,
    density,
    density_prime_limit,
    density_zero,
    divisors,
    factorize,
    find_k_for_density,
    mobius,
    sphere_area,
    verify,
    verify_suites,
    zeta,
)

__all__ = [
    "a", "a_local", "a_prime", "a_prime_local", "ball_volume", "c0", "c1",
    "c_n0", "c_n0_prime", "c_nk", "c_nk_prime", "count_ball",
    "count_ball_fast_n2", "count_hnf", "density", "density_prime_limit",
    "density_zero", "divisors", "factorize", "find_k_for_density", "mobius",
    "sphere_area", "verify", "verify_suites", "zeta",
]
