#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "primrow/asymptotics.hpp"
#include "primrow/density.hpp"
#include "primrow/exact_arith.hpp"
#include "primrow/lattice_oracle.hpp"
#include "primrow/orbit_counts.hpp"
#include "primrow/verify.hpp"

namespace py = pybind11;

namespace {

py::int_ to_py(const primrow::BigInt& x) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

// Exact rationals cross as fractions.Fraction.
py::object to_py(const primrow::Rational& q) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(to_py(primrow::BigInt(q.get_num())), to_py(primrow::BigInt(q.get_den())));
}

primrow::Rational rational_from(py::object obj) {
    py::object num = obj.attr("numerator"), den = obj.attr("denominator");
    primrow::Rational q(primrow::BigInt(py::str(num).cast<std::string>()),
                        primrow::BigInt(py::str(den).cast<std::string>()));
    q.canonicalize();
    return q;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Orbit counts, primitive-row densities and lattice oracles for integer "
              "matrices of fixed determinant";

    m.def("factorize", [](std::uint64_t k) {
        std::vector<std::pair<std::uint64_t, unsigned>> out;
        for (const auto& pp : primrow::factorize(k).factors) out.push_back({pp.prime, pp.exponent});
        return out;
    });
    m.def("mobius", &primrow::mobius);
    m.def("divisors", [](std::uint64_t k) { return primrow::divisors(k); });

    m.def("a", [](unsigned n, std::int64_t k) { return to_py(primrow::orbits::a(n, k)); });
    m.def("a_prime",
          [](unsigned n, std::int64_t k) { return to_py(primrow::orbits::a_prime(n, k)); });
    m.def("a_local", [](unsigned n, std::uint64_t p, unsigned mm) {
        return to_py(primrow::orbits::a_local(n, p, mm));
    });
    m.def("a_prime_local", [](unsigned n, std::uint64_t p, unsigned mm) {
        return to_py(primrow::orbits::a_prime_local(n, p, mm));
    });

    m.def("density",
          [](unsigned n, std::int64_t k) { return to_py(primrow::density::density(n, k)); });
    m.def("density_zero", &primrow::density::density_zero);
    m.def("density_prime_limit", [](unsigned n, std::uint64_t p) {
        return to_py(primrow::density::density_prime_limit(n, p));
    });
    m.def("find_k_for_density", [](double x, double eps) {
        auto t = primrow::density::find_k_for_density(x, eps);
        return py::make_tuple(to_py(t.k), t.prime_count, t.neg_log_density);
    });

    m.def("zeta", &primrow::asym::zeta_int);
    m.def("ball_volume", &primrow::asym::ball_volume);
    m.def("sphere_area", &primrow::asym::sphere_area);
    m.def("c0", &primrow::asym::c0);
    m.def("c1", &primrow::asym::c1);
    m.def("c_nk", &primrow::asym::c_nk);
    m.def("c_nk_prime", &primrow::asym::c_nk_prime);
    m.def("c_n0", &primrow::asym::c_n0);
    m.def("c_n0_prime", &primrow::asym::c_n0_prime);

    m.def(
        "count_ball",
        [](unsigned n, std::int64_t k, py::object t_sq, bool primitive, unsigned threads,
           unsigned long long budget) {
            primrow::oracle::BallQuery q{n, k, rational_from(t_sq), primitive};
            return primrow::oracle::count_ball(q, {budget, threads});
        },
        py::arg("n"), py::arg("k"), py::arg("t_sq"), py::arg("primitive") = false,
        py::arg("threads") = 1, py::arg("budget") = 2'000'000'000ULL);
    m.def(
        "count_ball_fast_n2",
        [](std::int64_t k, py::object t_sq, bool primitive) {
            return primrow::oracle::count_ball_fast_n2({2, k, rational_from(t_sq), primitive});
        },
        py::arg("k"), py::arg("t_sq"), py::arg("primitive") = false);
    m.def(
        "count_hnf",
        [](unsigned n, std::uint64_t k, bool primitive) {
            return primrow::oracle::count_hnf(n, k, primitive);
        },
        py::arg("n"), py::arg("k"), py::arg("primitive") = false);

    m.def("verify_suites", [] { return primrow::verify::suite_names(); });
    m.def("verify", [](const std::string& name) {
        auto r = primrow::verify::run_suite(name);
        return py::make_tuple(r.pass, r.detail);
    });
}
