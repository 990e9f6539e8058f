#ifndef DRL_SERIESKIT_HPP
#define DRL_SERIESKIT_HPP

// The transformation-formula building blocks: the Bessel/Steen divisor series
// F_{F,k}(z), the classical Lambert series F_k(z), contour residues of
// Lambda_{F,k}(s) (-iz)^{-s} around its integer poles, and the composite
// objects S, U, T and the weight-2k Eisenstein analogue for real quadratic
// fields.

#include "drl/common.hpp"
#include "drl/steen.hpp"
#include "drl/zetalab.hpp"

namespace drl::serieskit {

using fieldarith::Field;
using zetalab::EvalOptions;

struct PoleSpec {
    int location;  // pole of Lambda_{F,k}(s) (-iz)^{-s}, an integer <= 1
    int order;     // order upper bound from the signature
};

// Signature-based pole/order table for Lambda_{F,k}; entries with a zero
// order bound are omitted.
std::vector<PoleSpec> pole_plan(const Field& field, int k);

struct ResidueTerm {
    int pole = 0;
    cplx value{0.0, 0.0};
    int order_used = 1;
    double err_estimate = 0.0;
};

// F_{F,k}(z) = sum_n sigma_{F,-k}(n) V(-(2pi)^d n i z / D | 0_d), Im z >= 0.05.
SeriesValue f_series(const Field& field, int k, cplx z, const EvalOptions& opts = {});

// F_k(z) = sum_n sigma_{-k}(n) e^{2 pi i n z} (independent of the Steen path).
SeriesValue lambert_f(int k, cplx z);

// (1/2pi i) contour integral of Lambda_{F,k}(s) (-iz)^{-s} on |s - pole| = 1/4,
// 128-node trapezoid with a node-doubling self-test.
ResidueTerm residue_term(const Field& field, int k, int pole, cplx z,
                         const EvalOptions& opts = {});

// S_{F,2k+1}(z) = F_{F,2k+1}(z) - R_0(z) - R_1(z)          (k > 0)
SeriesValue s_function(const Field& field, int k, cplx z, const EvalOptions& opts = {});
// U_{F,2k+1}(z) = F_{F,2k+1}(z) - C_F zeta_F^{(r2)}(2k+1)/r2!   (k < 0)
SeriesValue u_function(const Field& field, int k, cplx z, const EvalOptions& opts = {});
// T_F(z) = F_{F,1}(z) - H_F zeta_F(2) iD/((2pi)^d z)            (k = 0)
SeriesValue t_function(const Field& field, cplx z, const EvalOptions& opts = {});

// closed-form residue at s = 1: H_F zeta_F(2k+2) iD / ((2pi)^d z)
cplx residue_one_closed(const Field& field, int k, cplx z, const EvalOptions& opts = {});

// G_{F,2k}(z) = 1 - F_{F,1-2k}(z) / (C_F zeta_F(1-2k)), F = Q(sqrt m).
cplx g_eisenstein_quad(long m, int k, cplx z, const EvalOptions& opts = {});

}  // namespace drl::serieskit

#endif
