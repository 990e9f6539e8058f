#ifndef DRL_COMMON_HPP
#define DRL_COMMON_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace drl {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;
// Euler-Mascheroni, 30 digits.
inline constexpr double kEulerGamma = 0.577215664901532860606512090082;

// Thrown when an argument leaves the numeric domain of an operation
// (pole hit, validated range exceeded, invalid field data).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A numerically summed value with a truncation/quadrature error estimate.
struct SeriesValue {
    cplx value{0.0, 0.0};
    double err_estimate = 0.0;
    long terms_used = 0;
};

// One verified identity instance: both sides, errors, verdict.
struct CheckReport {
    std::string id;
    cplx lhs{0.0, 0.0};
    cplx rhs{0.0, 0.0};
    double abs_err = 0.0;
    double rel_err = 0.0;
    bool pass = false;
    double tol = 0.0;
    bool diagnostic = false;
    std::string notes;
};

// pass <=> abs_err <= tol or rel_err <= tol; rel against max(|lhs|,|rhs|,1e-300)
CheckReport make_report(std::string id, cplx lhs, cplx rhs, double tol,
                        std::string notes = {}, bool diagnostic = false);

// sin(pi*u) with the real part of u reduced exactly modulo 2, so that the
// zeros at integer u are hit exactly even for |Re u| ~ 50.
cplx sin_pi(cplx u);

// Gauss-Legendre rule on [-1,1]; nodes/weights computed once per n and cached.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};
const GaussRule& gauss_legendre(int n);

// Complex literal grammar used by the CLI and identity ids: "a+bi", "i", "2i",
// "-0.7+0.9i", plain reals. Throws domain_error on malformed input.
cplx parse_complex(const std::string& text);
std::string format_complex(cplx z);

}  // namespace drl

#endif
