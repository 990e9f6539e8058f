#ifndef DRL_STEEN_HPP
#define DRL_STEEN_HPP

// The Steen function V(z | a_1..a_n) = (1/2pi i) int_(c) prod Gamma(s+a_j)
// z^{-s} ds, by closed forms (n = 1: z^a e^{-z}; n = 2, equal shifts:
// 2 z^a K_0(2 sqrt z)) and by direct vertical-line quadrature, plus a
// complex modified Bessel K_0.

#include <span>

#include "drl/common.hpp"
#include "drl/zetalab.hpp"

namespace drl::steen {

struct SteenParams {
    std::vector<double> params;  // shifts a_1..a_n, all >= 0 for the quadrature path
    SteenParams() = default;
    explicit SteenParams(std::vector<double> p) : params(std::move(p)) {}
    static SteenParams zeros(int d) { return SteenParams(std::vector<double>(d, 0.0)); }
};

// K_0(z) for Re z > 0, 1e-6 <= |z| <= 700. Ascending series for |z| <= 4.25,
// exponentially scaled Gauss integral beyond.
cplx bessel_k0(cplx z);

// Mellin-Barnes evaluation on the vertical line through
// c = max(1, Re z^{1/n}); exposed for the closed-vs-quadrature harness.
SeriesValue mellin_barnes_v(cplx z, std::span<const double> shifts, double tol);

SeriesValue steen_v(cplx z, const SteenParams& p,
                    const zetalab::EvalOptions& opts = {});

// Closed form against the generic quadrature path at the same z, d in {1,2}.
CheckReport steen_v_closed_vs_quadrature(cplx z, int d);

}  // namespace drl::steen

#endif
