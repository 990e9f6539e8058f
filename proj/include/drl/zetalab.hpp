#ifndef DRL_ZETALAB_HPP
#define DRL_ZETALAB_HPP

// Analytic engine: Gamma, Riemann/Hurwitz zeta with continuation, Dirichlet
// L-functions, Dedekind zeta as zeta * prod L, derivatives by circle
// quadrature, and the Laurent constants at s = 0 and s = 1.

#include "drl/common.hpp"
#include "drl/fieldarith.hpp"

namespace drl::zetalab {

using fieldarith::CharacterTable;
using fieldarith::Field;

struct EvalOptions {
    int em_terms = 20;        // Euler-Maclaurin N floor
    int em_corrections = 12;  // Euler-Maclaurin M
    double circle_radius = 0.5;
    int circle_nodes = 64;
    double target_tol = 1e-12;
};

// Laurent data of zeta_F: residue and constant term at s=1, leading and next
// coefficient at s=0, and A = sqrt(D) / (2^r1 (2 pi)^r2).
struct ZetaConstants {
    double H_F = 0;
    double gamma_F = 0;
    double C_F = 0;
    double a1 = 0;
    double A = 0;
};

cplx gamma_fn(cplx s);
// log Gamma for Re s > 0 (Lanczos form; branch not normalized — callers
// only exponentiate sums of these).
cplx log_gamma_right(cplx s);

cplx hurwitz_zeta(cplx s, double a, const EvalOptions& opts = {});
SeriesValue hurwitz_zeta_ex(cplx s, double a, const EvalOptions& opts = {});
// rational second argument a = p/q in (0,1]; the engine's native entry point
cplx hurwitz_zeta_pq(cplx s, long p, long q, const EvalOptions& opts = {});

cplx riemann_zeta(cplx s, const EvalOptions& opts = {});
cplx dirichlet_l(const CharacterTable& chi, cplx s, const EvalOptions& opts = {});
// L'(1, chi) for non-principal chi (used by the gamma_F cross-check).
cplx dirichlet_l_deriv1(const CharacterTable& chi, const EvalOptions& opts = {});

cplx dedekind_zeta(const Field& field, cplx s, const EvalOptions& opts = {});

// n-th derivative by trapezoid on |s - s0| = opts.circle_radius.
cplx dedekind_zeta_deriv(const Field& field, cplx s0, int order,
                         const EvalOptions& opts = {});

ZetaConstants zeta_constants(const Field& field, const EvalOptions& opts = {});

// Lambda_{F,k}(s) = Gamma(s)^d zeta_F(s) zeta_F(s+2k+1) ((2pi)^d / D)^{-s}.
cplx lambda_completed(const Field& field, int k, cplx s, const EvalOptions& opts = {});

// Omega_F(s) = (D/(pi^d 4^r2))^{s/2} Gamma(s/2)^r1 Gamma(s)^r2 zeta_F(s)
// compared against Omega_F(1-s).
CheckReport check_functional_equation(const Field& field, cplx s,
                                      const EvalOptions& opts = {});

// digamma at rational p/q in (0,1] (Gauss closed form).
double digamma_pq(long p, long q);

}  // namespace drl::zetalab

#endif
