#include "primrow/lattice_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <thread>

namespace primrow::oracle {

namespace {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

i64 isqrt_i64(i64 x) {
    if (x < 0) return -1;
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(x)));
    while (r > 0 && r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

i128 isqrt_i128(i128 x) {
    if (x < 0) return -1;
    i128 r = static_cast<i128>(std::sqrt(static_cast<double>(x)));
    while (r > 0 && r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

// Largest integer B with norm_sq <= T_sq equivalent to norm_sq <= B.
i64 floor_tsq(const Rational& t_sq) {
    if (t_sq < 0) throw std::invalid_argument("T_sq must be non-negative");
    BigInt f;
    mpz_fdiv_q(f.get_mpz_t(), t_sq.get_num().get_mpz_t(), t_sq.get_den().get_mpz_t());
    if (!f.fits_slong_p()) throw std::invalid_argument("T_sq too large for the enumerator");
    return f.get_si();
}

i64 det2(const i64* e) { return e[0] * e[3] - e[1] * e[2]; }

i64 det3(const i64* e) {
    return e[0] * (e[4] * e[8] - e[5] * e[7]) - e[1] * (e[3] * e[8] - e[5] * e[6]) +
           e[2] * (e[3] * e[7] - e[4] * e[6]);
}

i64 gcd_row(const i64* e, unsigned len) {
    i64 g = 0;
    for (unsigned i = 0; i < len; ++i) g = std::gcd(g, e[i] < 0 ? -e[i] : e[i]);
    return g;
}

// Enumerates all n x n int64 matrices with norm_sq <= bound whose first entry
// lies in [first_lo, first_hi], depth-first with running norm budget.
// Each coordinate assignment is one budget unit.
template <class F>
void enumerate_range(unsigned n, i64 bound, i64 first_lo, i64 first_hi,
                     std::atomic<unsigned long long>& visits, unsigned long long budget,
                     F&& leaf) {
    const unsigned nn = n * n;
    std::vector<i64> e(nn, 0);
    std::vector<i64> rem(nn + 1, 0);  // rem[t] = budget left before coordinate t
    rem[0] = bound;
    auto rec = [&](auto&& self, unsigned t) -> void {
        if (t == nn) {
            leaf(e.data());
            return;
        }
        i64 lim = isqrt_i64(rem[t]);
        i64 lo = -lim, hi = lim;
        if (t == 0) {
            lo = std::max(lo, first_lo);
            hi = std::min(hi, first_hi);
        }
        for (i64 v = lo; v <= hi; ++v) {
            if (visits.fetch_add(1, std::memory_order_relaxed) >= budget) throw BudgetExceeded();
            e[t] = v;
            rem[t + 1] = rem[t] - v * v;
            self(self, t + 1);
        }
        e[t] = 0;
    };
    rec(rec, 0);
}

// Integer points t with alpha t^2 + beta t + gamma <= 0, alpha > 0; exact.
// The endpoints from the integer square root are within one unit of the true
// roots, so a single correction step on each side suffices.
unsigned long long quadratic_count(i128 alpha, i128 beta, i128 gamma) {
    i128 disc = beta * beta - 4 * alpha * gamma;
    if (disc < 0) return 0;
    i128 s = isqrt_i128(disc);
    auto eval = [&](i128 t) { return alpha * t * t + beta * t + gamma; };
    auto fdiv = [](i128 a, i128 b) {  // floor division, b > 0
        i128 q = a / b;
        if (a % b != 0 && a < 0) --q;
        return q;
    };
    auto cdiv = [&fdiv](i128 a, i128 b) { return -fdiv(-a, b); };
    i128 hi = fdiv(-beta + s, 2 * alpha);
    if (eval(hi + 1) <= 0) ++hi;
    i128 lo = cdiv(-beta - s, 2 * alpha);
    if (eval(lo - 1) <= 0) --lo;
    if (hi < lo || eval(lo) > 0) return 0;
    return static_cast<unsigned long long>(hi - lo + 1);
}

// x, y with a*x + b*y = gcd(a, b) >= 0.
void xgcd(i64 a, i64 b, i64& g, i64& x, i64& y) {
    i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        std::swap(old_r -= q * r, r);
        std::swap(old_s -= q * s, s);
        std::swap(old_t -= q * t, t);
    }
    g = old_r;
    x = old_s;
    y = old_t;
    if (g < 0) { g = -g; x = -x; y = -y; }
}

// Lattice points (c, d) with a*d - b*c = kk and c^2 + d^2 <= r2.
unsigned long long line_count(i64 a, i64 b, i64 kk, i64 r2) {
    if (r2 < 0) return 0;
    i64 g, x, y;
    xgcd(a, b, g, x, y);
    if (g == 0 || kk % g != 0) return 0;
    i64 a1 = a / g, b1 = b / g;
    // a*d - b*c = kk with d0 = x*kk/g, c0 = -y*kk/g; direction (a1, b1).
    i128 d0 = i128(x) * (kk / g);
    i128 c0 = -i128(y) * (kk / g);
    i128 alpha = i128(a1) * a1 + i128(b1) * b1;
    i128 beta = 2 * (c0 * a1 + d0 * b1);
    i128 gamma = c0 * c0 + d0 * d0 - r2;
    return quadratic_count(alpha, beta, gamma);
}

BigInt det_bareiss(IntMatrix a) {
    const unsigned n = a.dim();
    BigInt prev = 1;
    int sign = 1;
    for (unsigned col = 0; col + 1 < n; ++col) {
        unsigned piv = col;
        while (piv < n && a.at(piv, col) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            for (unsigned j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
            sign = -sign;
        }
        for (unsigned i = col + 1; i < n; ++i) {
            for (unsigned j = col + 1; j < n; ++j) {
                BigInt t = a.at(i, j) * a.at(col, col) - a.at(i, col) * a.at(col, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a.at(i, col) = 0;
        }
        prev = a.at(col, col);
    }
    return sign * a.at(n - 1, n - 1);
}

}  // namespace

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    const unsigned n = a.dim();
    if (b.dim() != n) throw std::invalid_argument("mat_mul: dimension mismatch");
    IntMatrix c(n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned k = 0; k < n; ++k)
            for (unsigned j = 0; j < n; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
    return c;
}

BigInt det(const IntMatrix& a) { return det_bareiss(a); }

BigInt det_cofactor(const IntMatrix& a) {
    const unsigned n = a.dim();
    if (n > 4) throw std::invalid_argument("det_cofactor: n <= 4 only");
    if (n == 1) return a.at(0, 0);
    BigInt sum = 0;
    for (unsigned j = 0; j < n; ++j) {
        if (a.at(0, j) == 0) continue;
        IntMatrix minor(n - 1);
        for (unsigned i = 1; i < n; ++i) {
            unsigned cj = 0;
            for (unsigned jj = 0; jj < n; ++jj) {
                if (jj == j) continue;
                minor.at(i - 1, cj++) = a.at(i, jj);
            }
        }
        BigInt term = a.at(0, j) * det_cofactor(minor);
        if (j % 2) sum -= term; else sum += term;
    }
    return sum;
}

BigInt norm_sq(const IntMatrix& a) {
    BigInt s = 0;
    for (unsigned i = 0; i < a.dim(); ++i)
        for (unsigned j = 0; j < a.dim(); ++j) s += a.at(i, j) * a.at(i, j);
    return s;
}

bool is_primitive(std::span<const BigInt> v) {
    BigInt g = 0;
    for (const BigInt& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g == 1;
}

bool is_primitive(std::span<const long long> v) {
    long long g = 0;
    for (long long x : v) g = std::gcd(g, x < 0 ? -x : x);
    return g == 1;
}

bool rows_primitive(const IntMatrix& a) {
    for (unsigned i = 0; i < a.dim(); ++i)
        if (!is_primitive(a.row(i))) return false;
    return true;
}

unsigned long long count_ball(const BallQuery& q, const EnumLimits& limits) {
    if (q.n != 2 && q.n != 3)
        throw std::invalid_argument("count_ball: generic enumerator supports n in {2, 3}");
    const i64 bound = floor_tsq(q.T_sq);
    const i64 lim = isqrt_i64(bound);
    const unsigned threads = std::max(1u, limits.threads);
    const unsigned nn = q.n * q.n;

    std::atomic<unsigned long long> visits{0};
    std::vector<unsigned long long> counts(threads, 0);
    std::vector<std::exception_ptr> errors(threads);

    // Static partition of the outermost coordinate keeps the per-chunk sums
    // independent of scheduling.
    i64 span_len = 2 * lim + 1;
    auto worker = [&](unsigned t) {
        try {
            i64 chunk = (span_len + threads - 1) / threads;
            i64 lo = -lim + i64(t) * chunk;
            i64 hi = std::min(lo + chunk - 1, lim);
            if (lo > hi) return;
            unsigned long long local = 0;
            enumerate_range(q.n, bound, lo, hi, visits, limits.budget, [&](const i64* e) {
                i64 d = q.n == 2 ? det2(e) : det3(e);
                if (d != q.k) return;
                if (q.primitive_only) {
                    for (unsigned r = 0; r < q.n; ++r)
                        if (gcd_row(e + r * q.n, q.n) != 1) return;
                }
                ++local;
            });
            counts[t] = local;
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
    return std::accumulate(counts.begin(), counts.end(), 0ULL);
}

unsigned long long count_ball_fast_n2(const BallQuery& q) {
    if (q.n != 2) throw std::invalid_argument("count_ball_fast_n2: n = 2 only");
    if (q.k == 0) throw std::invalid_argument("count_ball_fast_n2: k != 0 required");
    const i64 bound = floor_tsq(q.T_sq);
    const i64 lim = isqrt_i64(bound);
    const i64 k = q.k;
    const u64 ak = k < 0 ? u64(-k) : u64(k);

    std::vector<std::pair<u64, int>> mu_divs;  // (e, mu(e)) for e | |k|
    if (q.primitive_only)
        for (u64 e : divisors(ak)) {
            int mu = mobius(e);
            if (mu != 0) mu_divs.push_back({e, mu});
        }

    unsigned long long total = 0;
    for (i64 a = -lim; a <= lim; ++a) {
        i64 rb = isqrt_i64(bound - a * a);
        for (i64 b = -rb; b <= rb; ++b) {
            if (a == 0 && b == 0) continue;
            i64 g = std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
            i64 r2 = bound - a * a - b * b;
            if (q.primitive_only) {
                if (g != 1) continue;
                // Mobius over the gcd e of the second row; e | k is forced by
                // the determinant equation.
                long long signed_sum = 0;
                for (auto [e, mu] : mu_divs) {
                    i64 ee = static_cast<i64>(e);
                    if (k % ee != 0) continue;
                    i64 sub_r2 = r2 / (ee * ee);
                    signed_sum += mu * static_cast<long long>(line_count(a, b, k / ee, sub_r2));
                }
                total += static_cast<unsigned long long>(signed_sum);
            } else {
                if (k % g != 0) continue;
                total += line_count(a, b, k, r2);
            }
        }
    }
    return total;
}

void enumerate_hnf(unsigned n, u64 k, bool primitive_only,
                   const std::function<void(const IntMatrix&)>& visit,
                   unsigned long long budget) {
    if (n < 1 || k < 1) throw std::invalid_argument("enumerate_hnf: n >= 1 and k >= 1 required");
    unsigned long long visits = 0;
    IntMatrix buf(n);
    std::vector<u64> diag(n);
    std::vector<u64> sub(n, 0);

    auto rows = [&](auto&& self, unsigned i) -> void {
        if (i == n) {
            if (++visits > budget) throw BudgetExceeded();
            visit(buf);
            return;
        }
        buf.at(i, i) = static_cast<unsigned long>(diag[i]);
        for (unsigned j = i + 1; j < n; ++j) buf.at(i, j) = 0;
        // Odometer over the sub-diagonal entries of row i.
        std::vector<u64> c(i, 0);
        while (true) {
            bool admit = true;
            if (primitive_only) {
                u64 g = diag[i];
                for (unsigned j = 0; j < i; ++j) g = std::gcd(g, c[j]);
                admit = (g == 1);
            }
            if (admit) {
                for (unsigned j = 0; j < i; ++j) buf.at(i, j) = static_cast<unsigned long>(c[j]);
                self(self, i + 1);
            }
            unsigned t = 0;
            while (t < i && ++c[t] == diag[i]) c[t++] = 0;
            if (t == i) break;
        }
    };

    ordered_factorizations(k, n, [&](std::span<const u64> tuple) {
        std::copy(tuple.begin(), tuple.end(), diag.begin());
        rows(rows, 0);
    });
}

unsigned long long count_hnf(unsigned n, u64 k, bool primitive_only, unsigned long long budget) {
    unsigned long long count = 0;
    enumerate_hnf(n, k, primitive_only, [&](const IntMatrix&) { ++count; }, budget);
    return count;
}

bool is_hnf(const IntMatrix& a) {
    const unsigned n = a.dim();
    for (unsigned i = 0; i < n; ++i) {
        if (a.at(i, i) <= 0) return false;
        for (unsigned j = i + 1; j < n; ++j)
            if (a.at(i, j) != 0) return false;
        for (unsigned j = 0; j < i; ++j)
            if (a.at(i, j) < 0 || a.at(i, j) >= a.at(i, i)) return false;
    }
    return true;
}

HnfResult hnf_reduce(const IntMatrix& a) {
    const unsigned n = a.dim();
    BigInt d = det(a);
    if (d == 0) throw std::invalid_argument("hnf_reduce: matrix is singular");
    if (d < 0) throw std::invalid_argument("hnf_reduce: det > 0 required");

    IntMatrix C = a;
    IntMatrix X = IntMatrix::identity(n);

    auto combine_cols = [&](unsigned ci, unsigned cj, const BigInt& m11, const BigInt& m12,
                            const BigInt& m21, const BigInt& m22) {
        // (col_ci, col_cj) <- (m11 col_ci + m21 col_cj, m12 col_ci + m22 col_cj)
        for (IntMatrix* M : {&C, &X}) {
            for (unsigned r = 0; r < n; ++r) {
                BigInt u = M->at(r, ci), w = M->at(r, cj);
                M->at(r, ci) = m11 * u + m21 * w;
                M->at(r, cj) = m12 * u + m22 * w;
            }
        }
    };

    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = i + 1; j < n; ++j) {
            if (C.at(i, j) == 0) continue;
            BigInt g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(),
                       C.at(i, i).get_mpz_t(), C.at(i, j).get_mpz_t());
            BigInt u, w;  // u = C(i,i)/g, w = C(i,j)/g
            mpz_divexact(u.get_mpz_t(), C.at(i, i).get_mpz_t(), g.get_mpz_t());
            mpz_divexact(w.get_mpz_t(), C.at(i, j).get_mpz_t(), g.get_mpz_t());
            // Unimodular (det 1): x*u + y*w = 1.
            combine_cols(i, j, x, -w, y, u);
        }
        if (C.at(i, i) < 0) {
            for (unsigned r = 0; r < n; ++r) {
                C.at(r, i) = -C.at(r, i);
                X.at(r, i) = -X.at(r, i);
            }
        }
        for (unsigned j = 0; j < i; ++j) {
            BigInt q;
            mpz_fdiv_q(q.get_mpz_t(), C.at(i, j).get_mpz_t(), C.at(i, i).get_mpz_t());
            if (q == 0) continue;
            for (unsigned r = 0; r < n; ++r) {
                C.at(r, j) -= q * C.at(r, i);
                X.at(r, j) -= q * X.at(r, i);
            }
        }
    }
    return {std::move(C), std::move(X)};
}

OrbitReport orbit_decomposition_check(unsigned n, u64 k, const Rational& T_sq,
                                      const EnumLimits& limits) {
    if (k < 1) throw std::invalid_argument("orbit_decomposition_check: k >= 1 required");
    if (n != 2 && n != 3)
        throw std::invalid_argument("orbit_decomposition_check: n in {2, 3}");
    const i64 bound = floor_tsq(T_sq);

    std::map<std::vector<long long>, unsigned long long> classes;
    std::atomic<unsigned long long> visits{0};
    unsigned long long total = 0;
    const i64 lim = isqrt_i64(bound);
    enumerate_range(n, bound, -lim, lim, visits, limits.budget, [&](const i64* e) {
        i64 d = n == 2 ? det2(e) : det3(e);
        if (d != static_cast<i64>(k)) return;
        for (unsigned r = 0; r < n; ++r)
            if (gcd_row(e + r * n, n) != 1) return;
        IntMatrix A(n);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) A.at(i, j) = static_cast<long>(e[i * n + j]);
        HnfResult h = hnf_reduce(A);
        std::vector<long long> key(std::size_t(n) * n);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) key[i * n + j] = h.C.at(i, j).get_si();
        ++classes[key];
        ++total;
    });

    // The representative set must be a subset of the primitive HNF stream,
    // and the class counts must sum to N'_{n,k}(T).
    std::vector<std::vector<long long>> hnf_keys;
    enumerate_hnf(n, k, true, [&](const IntMatrix& m) {
        std::vector<long long> key(std::size_t(n) * n);
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) key[i * n + j] = m.at(i, j).get_si();
        hnf_keys.push_back(std::move(key));
    }, limits.budget);
    std::sort(hnf_keys.begin(), hnf_keys.end());

    bool subset = true;
    for (const auto& [key, cnt] : classes)
        if (!std::binary_search(hnf_keys.begin(), hnf_keys.end(), key)) subset = false;

    BallQuery q{n, static_cast<std::int64_t>(k), T_sq, true};
    unsigned long long direct = count_ball(q, limits);

    return {subset && direct == total, classes.size(), total};
}

}  // namespace primrow::oracle
