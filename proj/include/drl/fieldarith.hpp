#ifndef DRL_FIELDARITH_HPP
#define DRL_FIELDARITH_HPP

// Exact arithmetic layer: number-field descriptors, Kronecker characters,
// ideal-counting coefficients a_F(n), generalized divisor sums sigma_{F,l}(n),
// Bernoulli numbers and the Ramanujan polynomial.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "drl/common.hpp"

namespace drl::fieldarith {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// One Dirichlet character table: values[r] = chi(r) for r in [0, q).
struct CharacterTable {
    long modulus = 1;
    std::vector<cplx> values;

    cplx operator()(long long n) const {
        long long r = n % modulus;
        if (r < 0) r += modulus;
        return values[static_cast<size_t>(r)];
    }
    bool is_principal() const;
};

struct FieldSpec {
    enum class Kind { rational, quadratic, ldata };
    Kind kind = Kind::rational;
    long quad_m = 0;          // quadratic: nonzero squarefree, != 1
    std::string ldata_path;   // ldata: JSON file, see LData format

    static FieldSpec rational() { return {}; }
    static FieldSpec quadratic(long m);
    static FieldSpec ldata(std::string path);
    // grammar: "Q" | "quad:<m>" | "file:<path>"
    static FieldSpec parse(const std::string& text);
};

// Optional {h, R, w} (class number, regulator, roots of unity) for cross-checks.
struct Knowns {
    bool present = false;
    double h = 0, R = 0, w = 0;
};

struct Field {
    FieldSpec spec;
    int r1 = 1;
    int r2 = 0;
    int d = 1;
    long long D = 1;            // |discriminant|
    long long signed_disc = 1;  // quadratic fields only
    std::vector<CharacterTable> factors;  // zeta_F = zeta * prod L(., chi_i)
    Knowns knowns;
    std::string label;          // canonical spec text ("Q", "quad:5", ...)

    int unit_rank() const { return r1 + r2 - 1; }
    bool is_rational() const { return spec.kind == FieldSpec::Kind::rational; }
    bool is_quadratic() const { return spec.kind == FieldSpec::Kind::quadratic; }
};

Field make_field(const FieldSpec& spec);

// Kronecker symbol (a/n), standard extension to all integers.
int kronecker(long long a, long long n);

// chi_D(n) for a quadratic field; errors on other field kinds.
int kronecker_chi(const Field& field, long long n);

// Deterministic trial division; throws past the 1e8 cap.
std::vector<std::pair<long long, int>> factorize(long long n);

// Number of integral ideals of norm n (Dirichlet coefficient of zeta_F).
long long ideal_count(const Field& field, long long n);

// sigma_{F,l}(n) = sum_{d|n} a_F(d) a_F(n/d) d^l, l complex.
cplx divisor_sigma(const Field& field, cplx ell, long long n);

// Exact B_n via the convolution recurrence; memoized; cap n <= 200.
Rational bernoulli(int n);

// B_{2j}/(2j)! as double, j <= 32 (Euler-Maclaurin weights).
double bernoulli_over_factorial(int j);

// Coefficients b_j = B_{2j}/(2j)! * B_{2k+2-2j}/(2k+2-2j)!, j = 0..k+1.
std::vector<Rational> ramanujan_poly_coeffs(int k);

// R_{2k+1}(z) = sum_j b_j z^{2k+2-2j}; exact coefficients, complex Horner in z^2.
cplx ramanujan_poly(int k, cplx z);

// Exact value R_{2k+1}(i) = sum_j (-1)^{k+1-j} b_j.
Rational ramanujan_poly_at_i(int k);

// zeta(2k) = (-1)^{k+1} (2 pi)^{2k} B_{2k} / (2 (2k)!).
double euler_zeta_even(int k);

double to_double(const Rational& r);

}  // namespace drl::fieldarith

#endif
