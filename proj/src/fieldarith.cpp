#include "drl/fieldarith.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <shared_mutex>

#include <json.hpp>

namespace drl::fieldarith {

namespace {

constexpr long long kFactorCap = 100000000;  // 1e8

bool is_squarefree(long m) {
    long long n = std::llabs(m);
    for (long long p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

// chi * chi' must stay multiplicative on units and vanish off units.
void validate_character(const CharacterTable& chi) {
    long q = chi.modulus;
    if (q < 1 || static_cast<long>(chi.values.size()) != q)
        throw domain_error("character table size does not match modulus");
    if (q == 1) return;
    auto gcd = [](long a, long b) {
        while (b) { a %= b; std::swap(a, b); }
        return a;
    };
    for (long a = 0; a < q; ++a) {
        bool unit = gcd(a, q) == 1;
        double mag = std::abs(chi.values[a]);
        if (unit && std::fabs(mag - 1.0) > 1e-9)
            throw domain_error("character value off the unit circle at a coprime residue");
        if (!unit && mag > 1e-9)
            throw domain_error("character nonzero at a non-coprime residue");
    }
    for (long a = 1; a < q; ++a) {
        if (gcd(a, q) != 1) continue;
        for (long b = a; b < q; ++b) {
            if (gcd(b, q) != 1) continue;
            cplx lhs = chi.values[a] * chi.values[b];
            cplx rhs = chi.values[(a * b) % q];
            if (std::abs(lhs - rhs) > 1e-9)
                throw domain_error("character table is not multiplicative");
        }
    }
}

Knowns quadratic_knowns(long m) {
    Knowns k;
    auto set = [&k](double h, double R, double w) {
        k.present = true;
        k.h = h;
        k.R = R;
        k.w = w;
    };
    switch (m) {
        case 5: set(1, std::log((1 + std::sqrt(5.0)) / 2), 2); break;
        case 2: set(1, std::log(1 + std::sqrt(2.0)), 2); break;
        case 3: set(1, std::log(2 + std::sqrt(3.0)), 2); break;
        case -1: set(1, 1, 4); break;
        case -3: set(1, 1, 6); break;
        case -2: set(1, 1, 2); break;
        case -7: set(1, 1, 2); break;
        default: break;
    }
    return k;
}

Field make_quadratic(long m) {
    if (m == 0 || m == 1) throw domain_error("quadratic m must not be 0 or 1");
    if (!is_squarefree(m)) throw domain_error("quadratic m must be squarefree");
    Field f;
    f.spec = FieldSpec::quadratic(m);
    f.d = 2;
    if (m > 0) {
        f.r1 = 2;
        f.r2 = 0;
    } else {
        f.r1 = 0;
        f.r2 = 1;
    }
    long long mm = m;
    // D* = m if m = 1 mod 4, else 4m
    long rem = ((m % 4) + 4) % 4;
    f.signed_disc = (rem == 1) ? mm : 4 * mm;
    f.D = std::llabs(f.signed_disc);
    CharacterTable chi;
    chi.modulus = static_cast<long>(f.D);
    chi.values.resize(chi.modulus);
    for (long r = 0; r < chi.modulus; ++r)
        chi.values[r] = cplx(static_cast<double>(kronecker(f.signed_disc, r)), 0.0);
    validate_character(chi);
    f.factors.push_back(std::move(chi));
    f.knowns = quadratic_knowns(m);
    f.label = "quad:" + std::to_string(m);
    return f;
}

Field make_ldata(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open LData file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw domain_error(std::string("malformed LData JSON: ") + e.what());
    }
    Field f;
    f.spec = FieldSpec::ldata(path);
    try {
        f.r1 = j.at("r1").get<int>();
        f.r2 = j.at("r2").get<int>();
        f.D = j.at("abs_disc").get<long long>();
        for (const auto& jf : j.at("factors")) {
            CharacterTable chi;
            chi.modulus = jf.at("modulus").get<long>();
            for (const auto& v : jf.at("values"))
                chi.values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
            f.factors.push_back(std::move(chi));
        }
    } catch (const nlohmann::json::exception& e) {
        throw domain_error(std::string("LData schema error: ") + e.what());
    }
    if (f.r1 < 0 || f.r2 < 0 || f.r1 + 2 * f.r2 < 1)
        throw domain_error("LData signature invalid");
    if (f.D < 1) throw domain_error("LData abs_disc must be >= 1");
    f.d = f.r1 + 2 * f.r2;
    if (static_cast<int>(f.factors.size()) != f.d - 1)
        throw domain_error("LData must supply exactly d-1 L-factors");
    for (const auto& chi : f.factors) validate_character(chi);
    f.label = "file:" + path;
    return f;
}

}  // namespace

bool CharacterTable::is_principal() const {
    long q = modulus;
    auto gcd = [](long a, long b) {
        while (b) { a %= b; std::swap(a, b); }
        return a;
    };
    for (long a = 0; a < q; ++a)
        if (gcd(a, q) == 1 && std::abs(values[a] - cplx(1.0, 0.0)) > 1e-12) return false;
    return true;
}

FieldSpec FieldSpec::quadratic(long m) {
    FieldSpec s;
    s.kind = Kind::quadratic;
    s.quad_m = m;
    return s;
}

FieldSpec FieldSpec::ldata(std::string path) {
    FieldSpec s;
    s.kind = Kind::ldata;
    s.ldata_path = std::move(path);
    return s;
}

FieldSpec FieldSpec::parse(const std::string& text) {
    if (text == "Q" || text == "q") return rational();
    if (text.rfind("quad:", 0) == 0) {
        try {
            return quadratic(std::stol(text.substr(5)));
        } catch (const std::exception&) {
            throw domain_error("bad field spec: '" + text + "'");
        }
    }
    if (text.rfind("file:", 0) == 0) return ldata(text.substr(5));
    throw domain_error("bad field spec: '" + text + "' (expected Q | quad:<m> | file:<path>)");
}

Field make_field(const FieldSpec& spec) {
    switch (spec.kind) {
        case FieldSpec::Kind::rational: {
            Field f;
            f.spec = spec;
            f.label = "Q";
            return f;
        }
        case FieldSpec::Kind::quadratic:
            return make_quadratic(spec.quad_m);
        case FieldSpec::Kind::ldata:
            return make_ldata(spec.ldata_path);
    }
    throw domain_error("unreachable field kind");
}

int kronecker(long long a, long long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int s = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) s = -s;
    }
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0) return 0;
        long long r = ((a % 8) + 8) % 8;
        if (r == 3 || r == 5) s = -s;
    }
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long long r = n % 8;
            if (r == 3 || r == 5) s = -s;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) s = -s;
        a %= n;
    }
    return n == 1 ? s : 0;
}

int kronecker_chi(const Field& field, long long n) {
    if (!field.is_quadratic())
        throw domain_error("kronecker_chi requires a quadratic field");
    return kronecker(field.signed_disc, n);
}

std::vector<std::pair<long long, int>> factorize(long long n) {
    if (n < 1) throw domain_error("factorize requires n >= 1");
    if (n > kFactorCap) throw domain_error("factorization cap (1e8) exceeded");
    std::vector<std::pair<long long, int>> out;
    for (long long p = 2; p * p <= n; p += (p == 2) ? 1 : 2) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

long long ideal_count(const Field& field, long long n) {
    if (n < 1) throw domain_error("ideal_count requires n >= 1");
    if (field.is_rational()) {
        if (n > kFactorCap) throw domain_error("factorization cap (1e8) exceeded");
        return 1;
    }
    long long result = 1;
    for (auto [p, e] : factorize(n)) {
        // local coefficients of 1/((1-x) prod_i (1 - chi_i(p) x)) up to x^e
        std::vector<cplx> c(static_cast<size_t>(e) + 1, cplx(1.0, 0.0));  // zeta factor: all ones
        for (const auto& chi : field.factors) {
            cplx cp = chi(p);
            std::vector<cplx> next(static_cast<size_t>(e) + 1, cplx(0.0, 0.0));
            cplx power(1.0, 0.0);
            for (int j = 0; j <= e; ++j) {
                for (int i = 0; i + j <= e; ++i) next[i + j] += c[i] * power;
                power *= cp;
            }
            c = std::move(next);
        }
        cplx ap = c[static_cast<size_t>(e)];
        double re = ap.real();
        if (std::fabs(ap.imag()) > 1e-6 || std::fabs(re - std::nearbyint(re)) > 1e-6)
            throw domain_error("non-integral ideal coefficient (invalid L-data)");
        long long a = static_cast<long long>(std::llround(re));
        if (a < 0) throw domain_error("negative ideal coefficient (invalid L-data)");
        result *= a;
        if (result == 0) {
            // remaining primes cannot resurrect a zero product
            break;
        }
    }
    return result;
}

cplx divisor_sigma(const Field& field, cplx ell, long long n) {
    if (n < 1) throw domain_error("divisor_sigma requires n >= 1");
    auto fac = factorize(n);
    // enumerate divisors from the factorization
    std::vector<long long> divs{1};
    for (auto [p, e] : fac) {
        size_t old = divs.size();
        long long q = 1;
        for (int i = 1; i <= e; ++i) {
            q *= p;
            for (size_t j = 0; j < old; ++j) divs.push_back(divs[j] * q);
        }
    }
    cplx total(0.0, 0.0);
    for (long long d : divs) {
        double a = static_cast<double>(ideal_count(field, d));
        if (a == 0.0) continue;
        double b = static_cast<double>(ideal_count(field, n / d));
        if (b == 0.0) continue;
        cplx pw = (ell == cplx(0.0, 0.0))
                      ? cplx(1.0, 0.0)
                      : std::exp(ell * std::log(static_cast<double>(d)));
        total += a * b * pw;
    }
    return total;
}

Rational bernoulli(int n) {
    if (n < 0) throw domain_error("bernoulli: n must be >= 0");
    if (n > 200) throw domain_error("bernoulli cap (n <= 200) exceeded");
    if (n > 1 && n % 2 == 1) return Rational(0);

    static std::shared_mutex mtx;
    static std::vector<Rational> table{Rational(1), Rational(-1, 2)};
    {
        std::shared_lock lock(mtx);
        if (n < static_cast<int>(table.size())) return table[n];
    }
    std::unique_lock lock(mtx);
    while (static_cast<int>(table.size()) <= n) {
        int m = static_cast<int>(table.size());
        if (m % 2 == 1) {
            table.emplace_back(0);
            continue;
        }
        // sum_{j=0}^{m} C(m+1,j) B_j = 0
        Rational acc(0);
        BigInt binom(1);  // C(m+1, 0)
        for (int j = 0; j < m; ++j) {
            acc += Rational(binom) * table[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        table.push_back(-acc / Rational(binom));
    }
    return table[n];
}

double bernoulli_over_factorial(int j) {
    static std::once_flag once;
    static double tab[33];
    std::call_once(once, [] {
        Rational fact(1);
        for (int i = 0, n = 0; i <= 32; ++i) {
            while (n < 2 * i) {
                ++n;
                fact *= n;
            }
            tab[i] = to_double(bernoulli(2 * i) / fact);
        }
    });
    if (j < 0 || j > 32) throw domain_error("bernoulli_over_factorial: j out of range");
    return tab[j];
}

std::vector<Rational> ramanujan_poly_coeffs(int k) {
    if (k < 1) throw domain_error("ramanujan_poly requires k >= 1");
    std::vector<Rational> b;
    b.reserve(static_cast<size_t>(k) + 2);
    auto fact = [](int n) {
        BigInt f(1);
        for (int i = 2; i <= n; ++i) f *= i;
        return f;
    };
    for (int j = 0; j <= k + 1; ++j) {
        Rational c = bernoulli(2 * j) / Rational(fact(2 * j));
        c *= bernoulli(2 * k + 2 - 2 * j) / Rational(fact(2 * k + 2 - 2 * j));
        b.push_back(c);
    }
    return b;
}

cplx ramanujan_poly(int k, cplx z) {
    auto b = ramanujan_poly_coeffs(k);
    // R = sum_j b_j u^{k+1-j}, u = z^2
    cplx u = z * z;
    cplx acc(to_double(b[0]), 0.0);
    for (int j = 1; j <= k + 1; ++j) acc = acc * u + cplx(to_double(b[static_cast<size_t>(j)]), 0.0);
    return acc;
}

Rational ramanujan_poly_at_i(int k) {
    auto b = ramanujan_poly_coeffs(k);
    Rational acc(0);
    for (int j = 0; j <= k + 1; ++j) {
        // i^{2k+2-2j} = (-1)^{k+1-j}
        if ((k + 1 - j) % 2 == 0)
            acc += b[static_cast<size_t>(j)];
        else
            acc -= b[static_cast<size_t>(j)];
    }
    return acc;
}

double euler_zeta_even(int k) {
    if (k < 1) throw domain_error("euler_zeta_even requires k >= 1");
    if (2 * k > 200) throw domain_error("bernoulli cap (n <= 200) exceeded");
    if (2 * k <= 170) {
        double fact = 1.0;
        for (int i = 2; i <= 2 * k; ++i) fact *= i;
        double val = std::pow(kTwoPi, 2 * k) * to_double(bernoulli(2 * k)) / (2.0 * fact);
        return (k % 2 == 1) ? val : -val;
    }
    // beyond 170! the factorial overflows double; the direct series is exact here
    double s = 0.0;
    for (int n = 30; n >= 1; --n) s += std::pow(static_cast<double>(n), -2.0 * k);
    return s;
}

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

}  // namespace drl::fieldarith
