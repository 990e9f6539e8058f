#include "drl/serieskit.hpp"

#include <algorithm>
#include <cmath>

namespace drl::serieskit {

namespace {

constexpr double kImFloor = 0.05;
constexpr long kTermCap = 1000000;
constexpr double kResidueRadius = 0.25;
constexpr int kResidueNodes = 128;

void require_upper_half(cplx z) {
    if (z.imag() < kImFloor)
        throw domain_error("series require Im z >= 0.05; got z = " + format_complex(z));
}

// term kernel V(-(2pi)^d n i z / D | 0_d)
cplx v_kernel(const Field& field, long long n, cplx z, const EvalOptions& opts) {
    cplx w = -std::pow(kTwoPi, field.d) * static_cast<double>(n) * cplx(0.0, 1.0) * z /
             static_cast<double>(field.D);
    switch (field.d) {
        case 1:
            return std::exp(-w);  // = e^{2 pi i n z}
        case 2:
            return 2.0 * steen::bessel_k0(2.0 * std::sqrt(w));
        default: {
            std::vector<double> shifts(static_cast<size_t>(field.d), 0.0);
            return steen::mellin_barnes_v(w, shifts, opts.target_tol).value;
        }
    }
}

}  // namespace

std::vector<PoleSpec> pole_plan(const Field& field, int k) {
    const int r1 = field.r1, r2 = field.r2;
    std::vector<PoleSpec> plan;
    auto push = [&plan](int loc, int order) {
        if (order > 0) plan.push_back({loc, order});
    };
    if (k > 0) {
        push(1, 1);
        push(0, r2 + 1);
        for (int j = 1; j <= k; ++j) push(-(2 * j - 1), r1 + r2);
        for (int j = 1; j <= k - 1; ++j) push(-2 * j, r2);
        push(-2 * k, r2 + 1);
        push(-2 * k - 1, 1);
    } else if (k < 0) {
        push(1, 1);
        push(0, 1);
        push(-2 * k, 1);
    } else {
        push(1, 1);
        push(0, r2 + 2);
        push(-1, 1);
    }
    std::sort(plan.begin(), plan.end(),
              [](const PoleSpec& a, const PoleSpec& b) { return a.location > b.location; });
    return plan;
}

SeriesValue f_series(const Field& field, int k, cplx z, const EvalOptions& opts) {
    require_upper_half(z);
    if (field.d > 4) throw domain_error("f_series: degree > 4 unsupported");
    SeriesValue out;
    cplx sum(0.0, 0.0);
    // |sigma_{F,-k}(n)| <= d_{2d}(n) n^{max(0,-k)}; the envelope below keeps
    // the stop rule alive across a_F(n) = 0 runs.
    const double growth = 1.0 + std::max(0, -k);
    int quiet = 0;
    long n = 1;
    double envelope = 0.0;
    for (; n <= kTermCap; ++n) {
        cplx v = v_kernel(field, n, z, opts);
        cplx sig = fieldarith::divisor_sigma(field, cplx(static_cast<double>(-k), 0.0), n);
        sum += sig * v;
        envelope = std::abs(v) * std::pow(static_cast<double>(n), growth) * 16.0;
        double scale = std::max(std::abs(sum), 1e-30);
        if (n >= 10 && envelope < opts.target_tol * scale) {
            if (++quiet >= 5) break;
        } else {
            quiet = 0;
        }
    }
    if (n > kTermCap) throw domain_error("f_series: term cap reached");
    out.value = sum;
    out.terms_used = n;
    out.err_estimate = 5.0 * envelope + 1e-15 * std::abs(sum);
    return out;
}

SeriesValue lambert_f(int k, cplx z) {
    if (z.imag() <= 0.0) throw domain_error("lambert_f: Im z must be > 0");
    SeriesValue out;
    cplx q = std::exp(kTwoPi * cplx(0.0, 1.0) * z);
    cplx qn(1.0, 0.0);
    cplx sum(0.0, 0.0);
    const double growth = 1.0 + std::max(0, -k);
    int quiet = 0;
    long n = 1;
    for (; n <= kTermCap; ++n) {
        qn *= q;
        double sig = 0.0;
        for (long d = 1; d * d <= n; ++d) {
            if (n % d) continue;
            sig += std::pow(static_cast<double>(d), -k);
            long e = n / d;
            if (e != d) sig += std::pow(static_cast<double>(e), -k);
        }
        sum += sig * qn;
        double envelope = std::abs(qn) * std::pow(static_cast<double>(n), growth) * 16.0;
        if (n >= 10 && envelope < 1e-16 * std::max(std::abs(sum), 1e-30)) {
            if (++quiet >= 5) break;
        } else {
            quiet = 0;
        }
    }
    out.value = sum;
    out.terms_used = n;
    out.err_estimate = std::abs(qn) * std::pow(static_cast<double>(n), growth) * 32.0;
    return out;
}

namespace {

cplx residue_contour(const Field& field, int k, int pole, cplx z, int nodes,
                     const EvalOptions& opts, double& max_mag) {
    const cplx y = -cplx(0.0, 1.0) * z;  // (-iz)^{-s}, principal log, Re y > 0
    const cplx ly = std::log(y);
    cplx acc(0.0, 0.0);
    max_mag = 0.0;
    for (int j = 0; j < nodes; ++j) {
        double th = kTwoPi * j / nodes;
        cplx w = std::polar(kResidueRadius, th);
        cplx s = static_cast<double>(pole) + w;
        cplx f = zetalab::lambda_completed(field, k, s, opts) * std::exp(-s * ly);
        max_mag = std::max(max_mag, std::abs(f));
        acc += f * w;
    }
    return acc / static_cast<double>(nodes);
}

}  // namespace

ResidueTerm residue_term(const Field& field, int k, int pole, cplx z, const EvalOptions& opts) {
    require_upper_half(z);
    auto plan = pole_plan(field, k);
    auto it = std::find_if(plan.begin(), plan.end(),
                           [pole](const PoleSpec& p) { return p.location == pole; });
    if (it == plan.end())
        throw domain_error("residue_term: pole " + std::to_string(pole) +
                           " not in the pole plan for k = " + std::to_string(k));
    double mag1 = 0, mag2 = 0;
    cplx coarse = residue_contour(field, k, pole, z, kResidueNodes, opts, mag1);
    cplx fine = residue_contour(field, k, pole, z, 2 * kResidueNodes, opts, mag2);
    double diff = std::abs(fine - coarse);
    // noise floor of the trapezoid sum (zeta-engine relative noise ~1e-13);
    // degenerate poles integrate to ~0 and sit entirely on this floor
    double floor = 1e-13 * kResidueRadius * std::max(mag1, mag2);
    if (diff > std::max(1e-6 * std::abs(fine), floor))
        throw domain_error("residue_term: node-doubling self-test failed at pole " +
                           std::to_string(pole));
    ResidueTerm out;
    out.pole = pole;
    out.value = fine;
    out.order_used = it->order;
    out.err_estimate = diff + 1e-16 * kResidueRadius * mag2;
    return out;
}

cplx residue_one_closed(const Field& field, int k, cplx z, const EvalOptions& opts) {
    double hf = zetalab::zeta_constants(field, opts).H_F;
    cplx zf = zetalab::dedekind_zeta(field, cplx(2.0 * k + 2.0, 0.0), opts);
    return hf * zf * cplx(0.0, 1.0) * static_cast<double>(field.D) /
           (std::pow(kTwoPi, field.d) * z);
}

SeriesValue s_function(const Field& field, int k, cplx z, const EvalOptions& opts) {
    if (k <= 0) throw domain_error("s_function requires k > 0");
    SeriesValue f = f_series(field, 2 * k + 1, z, opts);
    cplx r0 = residue_term(field, k, 0, z, opts).value;
    cplx r1 = residue_one_closed(field, k, z, opts);
    f.value -= r0 + r1;
    return f;
}

SeriesValue u_function(const Field& field, int k, cplx z, const EvalOptions& opts) {
    if (k >= 0) throw domain_error("u_function requires k < 0");
    SeriesValue f = f_series(field, 2 * k + 1, z, opts);
    auto zc = zetalab::zeta_constants(field, opts);
    cplx dz = zetalab::dedekind_zeta_deriv(field, cplx(2.0 * k + 1.0, 0.0), field.r2, opts);
    double fact = 1.0;
    for (int i = 2; i <= field.r2; ++i) fact *= i;
    f.value -= zc.C_F * dz / fact;
    return f;
}

SeriesValue t_function(const Field& field, cplx z, const EvalOptions& opts) {
    SeriesValue f = f_series(field, 1, z, opts);
    f.value -= residue_one_closed(field, 0, z, opts);
    return f;
}

cplx g_eisenstein_quad(long m, int k, cplx z, const EvalOptions& opts) {
    if (m <= 0) throw domain_error("g_eisenstein_quad: m must be a positive squarefree integer");
    if (k < 1) throw domain_error("g_eisenstein_quad: k must be >= 1");
    Field field = fieldarith::make_field(fieldarith::FieldSpec::quadratic(m));
    auto zc = zetalab::zeta_constants(field, opts);
    cplx zneg = zetalab::dedekind_zeta(field, cplx(1.0 - 2.0 * k, 0.0), opts);
    SeriesValue f = f_series(field, 1 - 2 * k, z, opts);
    return 1.0 - f.value / (zc.C_F * zneg);
}

}  // namespace drl::serieskit
