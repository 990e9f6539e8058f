#include "drl/zetalab.hpp"

#include <algorithm>
#include <cmath>

namespace drl::zetalab {

namespace {

// Lanczos, g = 607/128, 15 terms (Godfrey's coefficients).
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczosC[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

constexpr double kLogSqrtTwoPi = 0.91893853320467274178032973640562;

cplx lanczos_sum(cplx z) {
    cplx s(kLanczosC[0], 0.0);
    for (int i = 1; i < 15; ++i) s += kLanczosC[i] / (z + static_cast<double>(i - 1));
    return s;
}

cplx gamma_right(cplx z) {
    // Re z >= 0.5
    cplx t = z + (kLanczosG - 0.5);
    return std::sqrt(kTwoPi) * std::pow(t, z - 0.5) * std::exp(-t) * lanczos_sum(z);
}

bool near_nonpositive_integer(cplx s, double eps = 1e-13) {
    if (s.real() > 0.5) return false;
    double r = std::nearbyint(s.real());
    return r <= 0.0 && std::abs(s - cplx(r, 0.0)) < eps;
}

// ---- Hurwitz zeta -----------------------------------------------------------

// Euler-Maclaurin; stable for Re s >= -0.5 (N is shrunk below Re s < 0 to
// limit the cancellation between the power sum and its integral term).
cplx hz_euler_maclaurin(cplx s, double a, int nfloor, int M) {
    double ims = std::fabs(s.imag());
    int N;
    if (s.real() >= -0.5) {
        N = std::max(nfloor, static_cast<int>(std::ceil(1.3 * ims)) + 4);
    } else {
        N = std::max(static_cast<int>(std::ceil((std::abs(s) + 2.0 * M + 6.0) / kTwoPi)) + 2,
                     static_cast<int>(std::ceil(1.3 * ims)) + 6);
    }
    cplx total(0.0, 0.0);
    for (int n = 0; n < N; ++n) total += std::exp(-s * std::log(n + a));
    double w = N + a;
    double lw = std::log(w);
    total += std::exp((1.0 - s) * lw) / (s - 1.0);
    cplx wms = std::exp(-s * lw);
    total += 0.5 * wms;
    cplx t = s * wms / w;
    total += fieldarith::bernoulli_over_factorial(1) * t;
    for (int j = 2; j <= M; ++j) {
        t *= (s + static_cast<double>(2 * j - 3)) * (s + static_cast<double>(2 * j - 2)) / (w * w);
        total += fieldarith::bernoulli_over_factorial(j) * t;
    }
    return total;
}

// Hurwitz reflection for rational a = p/q (valid as continuation for Re s < 0):
// zeta(s,p/q) = 2 Gamma(1-s) (2 pi q)^{s-1} sum_{r=1}^{q} sin(pi s/2 + 2 pi r p / q)
//               zeta(1-s, r/q).
cplx hz_reflect_pq(cplx s, long p, long q, const EvalOptions& opts) {
    cplx acc(0.0, 0.0);
    for (long r = 1; r <= q; ++r) {
        long num = (2 * r * p) % (2 * q);  // sin argument rational part, exact
        cplx u = s * 0.5 + cplx(static_cast<double>(num) / static_cast<double>(q), 0.0);
        cplx zr = hz_euler_maclaurin(1.0 - s, static_cast<double>(r) / static_cast<double>(q),
                                     opts.em_terms, opts.em_corrections);
        acc += sin_pi(u) * zr;
    }
    cplx pref = 2.0 * std::exp(log_gamma_right(1.0 - s) + (s - 1.0) * std::log(kTwoPi * q));
    return pref * acc;
}

// continued-fraction detection of a = p/q, q <= qmax
bool detect_rational(double a, long qmax, long& p, long& q) {
    long best_p = 0, best_q = 0;
    double x = a;
    long p0 = 1, q0 = 0, p1 = static_cast<long>(std::floor(x)), q1 = 1;
    double frac = x - std::floor(x);
    for (int it = 0; it < 40 && q1 <= qmax; ++it) {
        if (std::fabs(a - static_cast<double>(p1) / q1) < 1e-13) {
            best_p = p1;
            best_q = q1;
            break;
        }
        if (frac < 1e-15) break;
        x = 1.0 / frac;
        double fl = std::floor(x);
        frac = x - fl;
        long an = static_cast<long>(fl);
        long p2 = an * p1 + p0, q2 = an * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    if (best_q == 0) return false;
    p = best_p;
    q = best_q;
    return true;
}

}  // namespace

cplx gamma_fn(cplx s) {
    if (near_nonpositive_integer(s))
        throw domain_error("gamma_fn: pole at nonpositive integer " + format_complex(s));
    if (s.real() >= 0.5) return gamma_right(s);
    // reflection: Gamma(s) = pi / (sin(pi s) Gamma(1-s))
    return kPi / (sin_pi(s) * gamma_right(1.0 - s));
}

cplx log_gamma_right(cplx s) {
    cplx t = s + (kLanczosG - 0.5);
    return kLogSqrtTwoPi + (s - 0.5) * std::log(t) - t + std::log(lanczos_sum(s));
}

cplx hurwitz_zeta_pq(cplx s, long p, long q, const EvalOptions& opts) {
    if (q < 1 || p < 1 || p > q) throw domain_error("hurwitz_zeta_pq: need 0 < p/q <= 1");
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-14) throw domain_error("hurwitz_zeta: pole at s = 1");
    if (s.real() >= -0.5)
        return hz_euler_maclaurin(s, static_cast<double>(p) / q, opts.em_terms, opts.em_corrections);
    return hz_reflect_pq(s, p, q, opts);
}

cplx hurwitz_zeta(cplx s, double a, const EvalOptions& opts) {
    return hurwitz_zeta_ex(s, a, opts).value;
}

SeriesValue hurwitz_zeta_ex(cplx s, double a, const EvalOptions& opts) {
    if (!(a > 0.0 && a <= 1.0)) throw domain_error("hurwitz_zeta: a must be in (0,1]");
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-14) throw domain_error("hurwitz_zeta: pole at s = 1");
    SeriesValue out;
    bool inside = s.real() >= -25.0 && std::fabs(s.imag()) <= 60.0;
    out.err_estimate = inside ? 1e-11 : 1e-7;
    if (s.real() >= -0.5) {
        out.value = hz_euler_maclaurin(s, a, opts.em_terms, opts.em_corrections);
        out.terms_used = std::max(opts.em_terms, static_cast<int>(std::ceil(1.3 * std::fabs(s.imag()))) + 4);
        return out;
    }
    long p = 0, q = 0;
    if (detect_rational(a, 4096, p, q)) {
        out.value = hz_reflect_pq(s, p, q, opts);
        out.terms_used = q * opts.em_terms;
        return out;
    }
    // irrational a, Re s < -0.5: EM still converges but loses digits to
    // cancellation; report the degraded estimate.
    out.value = hz_euler_maclaurin(s, a, opts.em_terms, opts.em_corrections);
    out.err_estimate = std::max(out.err_estimate, 1e-16 * std::pow(opts.em_terms + a, 1.0 - s.real()));
    out.terms_used = opts.em_terms;
    return out;
}

cplx riemann_zeta(cplx s, const EvalOptions& opts) {
    return hurwitz_zeta_pq(s, 1, 1, opts);
}

double digamma_pq(long p, long q) {
    if (q < 1 || p < 1 || p > q) throw domain_error("digamma_pq: need 0 < p/q <= 1");
    if (p == q) return -kEulerGamma;
    double g = -kEulerGamma - std::log(2.0 * q) -
               0.5 * kPi / std::tan(kPi * static_cast<double>(p) / q);
    for (long n = 1; n <= (q - 1) / 2; ++n)
        g += 2.0 * std::cos(kTwoPi * static_cast<double>(n * p) / q) *
             std::log(std::sin(kPi * static_cast<double>(n) / q));
    return g;
}

cplx dirichlet_l(const CharacterTable& chi, cplx s, const EvalOptions& opts) {
    long q = chi.modulus;
    if (q == 1) return riemann_zeta(s, opts);
    bool at_one = std::abs(s - cplx(1.0, 0.0)) < 1e-14;
    if (at_one) {
        if (chi.is_principal()) throw domain_error("dirichlet_l: pole at s = 1");
        // L(1,chi) = -(1/q) sum_a chi(a) psi(a/q)
        cplx acc(0.0, 0.0);
        for (long a = 1; a <= q; ++a) {
            cplx c = chi(a);
            if (c == cplx(0.0, 0.0)) continue;
            acc += c * digamma_pq(a, q);
        }
        return -acc / static_cast<double>(q);
    }
    cplx acc(0.0, 0.0);
    for (long a = 1; a <= q; ++a) {
        cplx c = chi(a);
        if (c == cplx(0.0, 0.0)) continue;
        acc += c * hurwitz_zeta_pq(s, a, q, opts);
    }
    return std::exp(-s * std::log(static_cast<double>(q))) * acc;
}

cplx dirichlet_l_deriv1(const CharacterTable& chi, const EvalOptions& opts) {
    if (chi.is_principal()) throw domain_error("dirichlet_l_deriv1: principal character");
    // circle quadrature around s=1; L is analytic there for non-principal chi
    int N = opts.circle_nodes;
    double r = opts.circle_radius;
    cplx acc(0.0, 0.0);
    for (int j = 0; j < N; ++j) {
        double th = kTwoPi * j / N;
        cplx w = std::polar(1.0, th);
        acc += dirichlet_l(chi, cplx(1.0, 0.0) + r * w, opts) / w;
    }
    return acc / (static_cast<double>(N) * r);
}

cplx dedekind_zeta(const Field& field, cplx s, const EvalOptions& opts) {
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-14)
        throw domain_error("dedekind_zeta: pole at s = 1");
    cplx v = riemann_zeta(s, opts);
    for (const auto& chi : field.factors) v *= dirichlet_l(chi, s, opts);
    return v;
}

cplx dedekind_zeta_deriv(const Field& field, cplx s0, int order, const EvalOptions& opts) {
    if (order < 0) throw domain_error("dedekind_zeta_deriv: order must be >= 0");
    double r = opts.circle_radius;
    if (std::abs(s0 - cplx(1.0, 0.0)) <= r + 1e-12)
        throw domain_error("dedekind_zeta_deriv: circle touches the pole at s = 1");
    if (order == 0) return dedekind_zeta(field, s0, opts);
    int N = opts.circle_nodes;
    cplx acc(0.0, 0.0);
    for (int j = 0; j < N; ++j) {
        double th = kTwoPi * j / N;
        cplx w = std::polar(1.0, th);
        acc += dedekind_zeta(field, s0 + r * w, opts) * std::polar(1.0, -th * order);
    }
    double fact = 1.0;
    for (int i = 2; i <= order; ++i) fact *= i;
    return fact * acc / (static_cast<double>(N) * std::pow(r, order));
}

ZetaConstants zeta_constants(const Field& field, const EvalOptions& opts) {
    ZetaConstants zc;
    // residue at 1: prod_i L(1, chi_i) (residue of the zeta factor is 1)
    cplx h(1.0, 0.0);
    for (const auto& chi : field.factors) h *= dirichlet_l(chi, cplx(1.0, 0.0), opts);
    zc.H_F = h.real();

    // gamma_F = d/ds[(s-1) zeta_F(s)] at 1, by circle quadrature
    int N = opts.circle_nodes;
    double r = opts.circle_radius;
    cplx acc(0.0, 0.0);
    for (int j = 0; j < N; ++j) {
        double th = kTwoPi * j / N;
        cplx w = std::polar(1.0, th);
        cplx s = cplx(1.0, 0.0) + r * w;
        acc += (s - 1.0) * dedekind_zeta(field, s, opts) / w;
    }
    zc.gamma_F = (acc / (static_cast<double>(N) * r)).real();

    int rk = field.unit_rank();
    cplx c0 = dedekind_zeta_deriv(field, cplx(0.0, 0.0), rk, opts);
    cplx c1 = dedekind_zeta_deriv(field, cplx(0.0, 0.0), rk + 1, opts);
    double fact = 1.0;
    for (int i = 2; i <= rk; ++i) fact *= i;
    zc.C_F = (c0 / fact).real();
    zc.a1 = (c1 / (fact * (rk + 1))).real();
    zc.A = std::sqrt(static_cast<double>(field.D)) /
           (std::pow(2.0, field.r1) * std::pow(kTwoPi, field.r2));
    return zc;
}

cplx lambda_completed(const Field& field, int k, cplx s, const EvalOptions& opts) {
    if (near_nonpositive_integer(s))
        throw domain_error("lambda_completed: Gamma pole at " + format_complex(s));
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-13)
        throw domain_error("lambda_completed: zeta_F pole at s = 1");
    if (std::abs(s + cplx(2.0 * k, 0.0)) < 1e-13)
        throw domain_error("lambda_completed: zeta_F(s+2k+1) pole at s = -2k");
    cplx g = std::pow(gamma_fn(s), field.d);
    cplx z1 = dedekind_zeta(field, s, opts);
    cplx z2 = dedekind_zeta(field, s + static_cast<double>(2 * k + 1), opts);
    double base = std::pow(kTwoPi, field.d) / static_cast<double>(field.D);
    return g * z1 * z2 * std::exp(-s * std::log(base));
}

CheckReport check_functional_equation(const Field& field, cplx s, const EvalOptions& opts) {
    auto omega = [&](cplx u) {
        cplx val = std::exp(
            (u * 0.5) * std::log(static_cast<double>(field.D) /
                                 (std::pow(kPi, field.d) * std::pow(4.0, field.r2))));
        if (field.r1 > 0) val *= std::pow(gamma_fn(u * 0.5), field.r1);
        if (field.r2 > 0) val *= std::pow(gamma_fn(u), field.r2);
        return val * dedekind_zeta(field, u, opts);
    };
    cplx lhs = omega(s);
    cplx rhs = omega(1.0 - s);
    CheckReport rep;
    rep.id = "functional_equation:field=" + field.label + ",s=" + format_complex(s);
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.abs_err = std::abs(lhs - rhs);
    rep.rel_err = rep.abs_err / std::max(std::abs(lhs), 1.0);
    rep.tol = 1e-9;
    rep.pass = rep.rel_err <= rep.tol;
    return rep;
}

}  // namespace drl::zetalab
