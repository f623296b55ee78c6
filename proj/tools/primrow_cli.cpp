#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "primrow/asymptotics.hpp"
#include "primrow/density.hpp"
#include "primrow/exact_arith.hpp"
#include "primrow/lattice_oracle.hpp"
#include "primrow/orbit_counts.hpp"
#include "primrow/verify.hpp"

namespace {

using json = nlohmann::json;
using primrow::BigInt;
using primrow::Rational;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

// 12 significant digits, always with a decimal point.
std::string decimal12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    std::string s(buf);
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

std::string decimal12(const Rational& q) { return decimal12(q.get_d()); }

std::string rational_str(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Parses a non-negative decimal literal ("12", "12.5") into an exact rational.
Rational parse_decimal(const std::string& s) {
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(BigInt(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac = s.size() - dot - 1;
    BigInt den = 1;
    for (std::size_t i = 0; i < frac; ++i) den *= 10;
    Rational q(BigInt(digits), den);
    q.canonicalize();
    return q;
}

std::ostream& output_stream(const std::string& out_path, std::ofstream& file) {
    if (out_path.empty()) return std::cout;
    file.open(out_path);
    if (!file) throw CLI::ValidationError("--out", "cannot open " + out_path);
    return file;
}

int cmd_count(unsigned n, std::int64_t k, const std::string& format) {
    BigInt a = primrow::orbits::a(n, k);
    BigInt ap = primrow::orbits::a_prime(n, k);
    Rational d = primrow::density::density(n, k);
    if (format == "json") {
        json j{{"config", {{"n", n}, {"k", k}}},
               {"results",
                {{"a", a.get_str()},
                 {"a_prime", ap.get_str()},
                 {"D", rational_str(d)},
                 {"D_decimal", decimal12(d)}}}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "a_" << n << "(" << k << ") = " << a << "\n"
                  << "a'_" << n << "(" << k << ") = " << ap << "\n"
                  << "D_" << n << "(" << k << ") = " << rational_str(d) << " = " << decimal12(d)
                  << "\n";
    }
    return kExitOk;
}

int cmd_density(unsigned n, std::int64_t k, std::optional<std::uint64_t> p, unsigned mmax,
                const std::string& format) {
    if (p) {
        // Prime-power table D_n(p^m), m = 0..mmax, via the local evaluators.
        json rows = json::array();
        std::ostream& os = std::cout;
        if (format != "json") os << "m,D,D_decimal\n";
        for (unsigned m = 0; m <= mmax; ++m) {
            Rational d(primrow::orbits::a_prime_local(n, *p, m),
                       primrow::orbits::a_local(n, *p, m));
            d.canonicalize();
            if (format == "json")
                rows.push_back({{"m", m}, {"D", rational_str(d)}, {"D_decimal", decimal12(d)}});
            else
                os << m << "," << rational_str(d) << "," << decimal12(d) << "\n";
        }
        if (format == "json")
            std::cout << json{{"config", {{"n", n}, {"p", *p}, {"mmax", mmax}}},
                              {"results", rows}}
                             .dump(2)
                      << "\n";
        return kExitOk;
    }
    Rational d = primrow::density::density(n, k);
    if (format == "json")
        std::cout << json{{"config", {{"n", n}, {"k", k}}},
                          {"results", {{"D", rational_str(d)}, {"D_decimal", decimal12(d)}}}}
                         .dump(2)
                  << "\n";
    else
        std::cout << "D_" << n << "(" << k << ") = " << rational_str(d) << " = " << decimal12(d)
                  << "\n";
    return kExitOk;
}

int cmd_constants(unsigned n, std::int64_t k, const std::string& format) {
    auto rep = primrow::asym::constants(n, k);
    json j{{"config", {{"n", n}, {"k", k}}},
           {"results",
            {{"C0", rep.C0},
             {"C1", rep.C1},
             {"abs_error", rep.abs_error}}}};
    if (k == 0) {
        j["results"]["c_n0"] = rep.c;
        if (n >= 3) {
            j["results"]["c_n0_prime"] = rep.c_prime;
            j["results"]["D_n0"] = primrow::density::density_zero(n);
        }
    } else {
        j["results"]["c_nk"] = rep.c;
        j["results"]["c_nk_prime"] = rep.c_prime;
    }
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "C0 = " << decimal12(rep.C0) << "\n"
                  << "C1 = " << decimal12(rep.C1) << "\n";
        if (k == 0) {
            std::cout << "c_{" << n << ",0} = " << decimal12(rep.c) << "\n";
            if (n >= 3) {
                std::cout << "c'_{" << n << ",0} = " << decimal12(rep.c_prime) << "\n"
                          << "D_" << n << "(0) = " << decimal12(primrow::density::density_zero(n))
                          << "\n";
            }
        } else {
            std::cout << "c_{" << n << "," << k << "} = " << decimal12(rep.c) << "\n"
                      << "c'_{" << n << "," << k << "} = " << decimal12(rep.c_prime) << "\n";
        }
        std::cout << "abs_error <= " << decimal12(rep.abs_error) << "\n";
    }
    return kExitOk;
}

int cmd_oracle(unsigned n, std::int64_t k, const std::string& T, bool primitive, bool fast,
               unsigned threads, unsigned long long budget, const std::string& format) {
    Rational t = parse_decimal(T);
    primrow::oracle::BallQuery q{n, k, t * t, primitive};
    unsigned long long count =
        fast ? primrow::oracle::count_ball_fast_n2(q)
             : primrow::oracle::count_ball(q, {.budget = budget, .threads = threads});
    if (format == "json")
        std::cout << json{{"config",
                           {{"n", n}, {"k", k}, {"T", T}, {"primitive", primitive}, {"fast", fast}}},
                          {"results", {{"count", count}}}}
                         .dump(2)
                  << "\n";
    else
        std::cout << count << "\n";
    return kExitOk;
}

int cmd_converge(std::int64_t k, const std::string& t_max, unsigned steps,
                 const std::string& out_path) {
    Rational tmax = parse_decimal(t_max);
    double c_prime = 6.0 * primrow::orbits::a_prime(2, k).get_d() / std::abs(double(k));
    std::ofstream file;
    std::ostream& os = output_stream(out_path, file);
    os << "T,N,Nprime,Nprime_over_T2,c_prime,ratio\n";
    for (unsigned i = 1; i <= steps; ++i) {
        Rational t = tmax * Rational(i, steps);
        t.canonicalize();
        Rational t_sq = t * t;
        unsigned long long n_count =
            primrow::oracle::count_ball_fast_n2({2, k, t_sq, false});
        unsigned long long np_count =
            primrow::oracle::count_ball_fast_n2({2, k, t_sq, true});
        double t2 = t_sq.get_d();
        os << decimal12(t.get_d()) << "," << n_count << "," << np_count << ","
           << decimal12(np_count / t2) << "," << decimal12(c_prime) << ","
           << decimal12(np_count / (c_prime * t2)) << "\n";
    }
    return kExitOk;
}

int cmd_scan(unsigned n, std::int64_t k_max, const std::string& out_path) {
    std::ofstream file;
    std::ostream& os = output_stream(out_path, file);
    os << "k,a,a_prime,D,D_decimal\n";
    for (std::int64_t k = 1; k <= k_max; ++k) {
        BigInt a = primrow::orbits::a(n, k);
        BigInt ap = primrow::orbits::a_prime(n, k);
        Rational d(ap, a);
        d.canonicalize();
        os << k << "," << a << "," << ap << "," << rational_str(d) << "," << decimal12(d) << "\n";
    }
    return kExitOk;
}

int cmd_verify(const std::string& suite, const std::string& format) {
    std::vector<primrow::verify::SuiteResult> results;
    if (suite == "all") {
        results = primrow::verify::run_all();
    } else {
        try {
            results.push_back(primrow::verify::run_suite(suite));
        } catch (const std::invalid_argument&) {
            std::cerr << "unknown suite '" << suite << "'; available:";
            for (const auto& name : primrow::verify::suite_names()) std::cerr << " " << name;
            std::cerr << "\n";
            return kExitUsage;
        }
    }
    bool all_pass = true;
    json arr = json::array();
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        arr.push_back({{"suite", r.name},
                       {"pass", r.pass},
                       {"detail", r.detail},
                       {"seconds", r.seconds}});
        if (format != "json")
            std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << decimal12(r.seconds)
                      << " s): " << r.detail << "\n";
    }
    std::cout << json{{"config", {{"suite", suite}}}, {"results", arr}}.dump(2) << "\n";
    return all_pass ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact orbit counts, primitive-row densities and asymptotic constants "
                 "for integer matrices of fixed determinant"};
    app.require_subcommand(1);

    unsigned n = 2;
    std::int64_t k = 1;
    std::string T = "10", t_max = "100", out_path, format = "plain", suite = "all";
    unsigned steps = 10, mmax = 8, threads = 1;
    std::optional<std::uint64_t> p;
    unsigned long long budget = 2'000'000'000ULL;
    bool primitive = false, fast = false;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format)->check(CLI::IsMember({"plain", "csv", "json"}));
        cmd->add_option("--out", out_path);
    };

    CLI::App* count = app.add_subcommand("count", "a_n(k), a'_n(k) and D_n(k)");
    count->add_option("--n", n)->required()->check(CLI::Range(2u, 64u));
    count->add_option("--k", k)->required();
    add_format(count);

    CLI::App* dens = app.add_subcommand("density", "exact density D_n(k) or a D_n(p^m) table");
    dens->add_option("--n", n)->required()->check(CLI::Range(2u, 64u));
    dens->add_option("--k", k);
    dens->add_option("--p", p);
    dens->add_option("--mmax", mmax);
    add_format(dens);

    CLI::App* consts = app.add_subcommand("constants", "C0, C1, c_{n,k}, c'_{n,k}");
    consts->add_option("--n", n)->required()->check(CLI::Range(2u, 40u));
    consts->add_option("--k", k)->default_val(0);
    add_format(consts);

    CLI::App* orc = app.add_subcommand("oracle", "brute-force ball count N_{n,k}(T)");
    orc->add_option("--n", n)->required()->check(CLI::Range(2u, 3u));
    orc->add_option("--k", k)->required();
    orc->add_option("--T", T)->required();
    orc->add_flag("--primitive", primitive);
    orc->add_flag("--fast", fast);
    orc->add_option("--threads", threads)->check(CLI::Range(1u, 256u));
    orc->add_option("--budget", budget);
    add_format(orc);

    CLI::App* conv = app.add_subcommand("converge", "CSV convergence table for n = 2");
    conv->add_option("--k", k)->required();
    conv->add_option("--Tmax", t_max)->required();
    conv->add_option("--steps", steps)->check(CLI::Range(1u, 100000u));
    conv->add_option("--out", out_path);

    CLI::App* scan = app.add_subcommand("scan", "CSV of (k, a, a', D) for k = 1..kmax");
    scan->add_option("--n", n)->required()->check(CLI::Range(2u, 64u));
    scan->add_option("--k", k, "k_max")->required();
    scan->add_option("--out", out_path);

    CLI::App* ver = app.add_subcommand("verify", "run verification suites");
    ver->add_option("--suite", suite);
    ver->add_option("--format", format)->check(CLI::IsMember({"plain", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (count->parsed()) return cmd_count(n, k, format);
        if (dens->parsed()) {
            if (!p && k == 0) throw CLI::ValidationError("--k", "k must be nonzero");
            return cmd_density(n, k, p, mmax, format);
        }
        if (consts->parsed()) return cmd_constants(n, k, format);
        if (orc->parsed()) return cmd_oracle(n, k, T, primitive, fast, threads, budget, format);
        if (conv->parsed()) {
            if (k == 0) throw CLI::ValidationError("--k", "k must be nonzero");
            return cmd_converge(k, t_max, steps, out_path);
        }
        if (scan->parsed()) {
            if (k < 1) throw CLI::ValidationError("--k", "k_max must be >= 1");
            return cmd_scan(n, k, out_path);
        }
        if (ver->parsed()) return cmd_verify(suite, format);
    } catch (const primrow::oracle::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.get_name() << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitUsage;
}
