#include "drl/steen.hpp"

#include <algorithm>
#include <cmath>

namespace drl::steen {

namespace {

constexpr double kK0Switch = 4.25;

cplx k0_series(cplx z) {
    // K0 = -(log(z/2) + gamma) I0(z) + sum_m (z^2/4)^m / (m!)^2 * H_m,
    // compensated accumulation for both sums.
    cplx q = z * z * 0.25;
    cplx term(1.0, 0.0);
    cplx i0(1.0, 0.0), i0c(0.0, 0.0);
    cplx sum(0.0, 0.0), sumc(0.0, 0.0);
    double h = 0.0;
    auto kahan_add = [](cplx& s, cplx& c, cplx x) {
        cplx y = x - c;
        cplx t = s + y;
        c = (t - s) - y;
        s = t;
    };
    for (int m = 1; m <= 80; ++m) {
        term *= q / static_cast<double>(m * m);
        h += 1.0 / m;
        kahan_add(i0, i0c, term);
        kahan_add(sum, sumc, term * h);
        if (std::abs(term) * (h + 1.0) < 1e-18 * (std::abs(sum) + std::abs(i0))) break;
    }
    return -(std::log(z * 0.5) + kEulerGamma) * i0 + sum;
}

cplx k0_integral(cplx z) {
    // K0(z) = e^{-z} sqrt(pi/2z) * (2/sqrt(pi)) int_0^inf e^{-v^2} (1 + v^2/2z)^{-1/2} dv
    // (contour-rotated from int e^{-z cosh t} dt; valid Re z > 0).
    const auto& gl = gauss_legendre(80);
    const double a = 0.0, b = 6.6;
    const double hw = 0.5 * (b - a), mid = 0.5 * (a + b);
    cplx acc(0.0, 0.0);
    for (size_t i = 0; i < gl.x.size(); ++i) {
        double v = mid + hw * gl.x[i];
        acc += gl.w[i] * std::exp(-v * v) / std::sqrt(1.0 + v * v / (2.0 * z));
    }
    acc *= hw;
    return std::exp(-z) * std::sqrt(kPi / (2.0 * z)) * acc * (2.0 / std::sqrt(kPi));
}

}  // namespace

cplx bessel_k0(cplx z) {
    if (z.real() <= 0.0) throw domain_error("bessel_k0: requires Re z > 0");
    double az = std::abs(z);
    if (az < 1e-6 || az > 700.0)
        throw domain_error("bessel_k0: |z| outside validated range [1e-6, 700]");
    return az <= kK0Switch ? k0_series(z) : k0_integral(z);
}

SeriesValue mellin_barnes_v(cplx z, std::span<const double> shifts, double tol) {
    const int n = static_cast<int>(shifts.size());
    if (n < 1) throw domain_error("mellin_barnes_v: need at least one shift");
    for (double a : shifts)
        if (a < 0.0) throw domain_error("mellin_barnes_v: shifts must be >= 0");
    const double margin = n * kPi / 2.0 - 0.1;
    const double argz = std::arg(z);
    if (!(std::fabs(argz) < margin))
        throw domain_error("mellin_barnes_v: |arg z| outside the convergence margin");
    const cplx lz = std::log(z);

    // vertical line through the Gamma^n z^{-s} saddle (c = 1 for small |z|)
    const double c = std::max(1.0, (std::pow(std::abs(z), 1.0 / n) *
                                    std::cos(argz / n)));

    auto log_abs_integrand = [&](double t) {
        cplx s(c, t);
        double v = 0.0;
        for (double a : shifts) v += zetalab::log_gamma_right(s + a).real();
        return v - c * lz.real() + t * lz.imag();
    };
    const double peak = std::max(log_abs_integrand(0.0), log_abs_integrand(c > 2 ? 1.0 : 0.0));
    const double target = peak + std::log(0.01 * tol);
    double T = 2.0;
    while ((log_abs_integrand(T) > target || log_abs_integrand(-T) > target) && T < 4000.0)
        T *= 1.25;

    const auto& gl = gauss_legendre(15);
    const int panels = static_cast<int>(std::ceil(T));
    const double width = T / panels;
    cplx total(0.0, 0.0);
    double abs_total = 0.0;
    for (int p = -panels; p < panels; ++p) {
        double a = p * width, b = (p + 1) * width;
        double hw = 0.5 * (b - a), mid = 0.5 * (a + b);
        cplx acc(0.0, 0.0);
        double abs_acc = 0.0;
        for (size_t i = 0; i < gl.x.size(); ++i) {
            double t = mid + hw * gl.x[i];
            cplx s(c, t);
            cplx lg(0.0, 0.0);
            for (double sh : shifts) lg += zetalab::log_gamma_right(s + sh);
            cplx val = std::exp(lg - s * lz);
            acc += gl.w[i] * val;
            abs_acc += gl.w[i] * std::abs(val);
        }
        total += hw * acc;
        abs_total += hw * abs_acc;
    }
    SeriesValue out;
    out.value = total / kTwoPi;
    out.err_estimate = 0.02 * tol * std::max(std::abs(out.value), std::exp(peak) / kTwoPi * 1e-3) +
                       2e-16 * abs_total / kTwoPi;
    out.terms_used = 2 * panels * static_cast<long>(gl.x.size());
    return out;
}

SeriesValue steen_v(cplx z, const SteenParams& p, const zetalab::EvalOptions& opts) {
    const auto& a = p.params;
    if (a.empty()) throw domain_error("steen_v: empty parameter list");
    SeriesValue out;
    if (a.size() == 1) {
        // (1/2pi i) int Gamma(s+a) z^{-s} ds = z^a e^{-z}
        out.value = std::exp(-z + a[0] * std::log(z));
        out.err_estimate = 4e-16 * std::abs(out.value);
        out.terms_used = 1;
        return out;
    }
    if (a.size() == 2 && a[0] == a[1]) {
        cplx pref = (a[0] == 0.0) ? cplx(1.0, 0.0) : std::exp(a[0] * std::log(z));
        out.value = 2.0 * pref * bessel_k0(2.0 * std::sqrt(z));
        out.err_estimate = 1e-12 * std::abs(out.value);
        out.terms_used = 1;
        return out;
    }
    return mellin_barnes_v(z, std::span<const double>(a.data(), a.size()), opts.target_tol);
}

CheckReport steen_v_closed_vs_quadrature(cplx z, int d) {
    if (d != 1 && d != 2) throw domain_error("steen_v_closed_vs_quadrature: d must be 1 or 2");
    SteenParams p = SteenParams::zeros(d);
    cplx closed = steen_v(z, p).value;
    std::vector<double> shifts(static_cast<size_t>(d), 0.0);
    SeriesValue quad = mellin_barnes_v(z, shifts, 1e-12);
    return make_report("steen_closed_vs_quadrature:d=" + std::to_string(d) +
                           ",z=" + format_complex(z),
                       closed, quad.value, 1e-8,
                       "closed form vs Mellin-Barnes line quadrature");
}

}  // namespace drl::steen
