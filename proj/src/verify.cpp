#include "drl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <sstream>

namespace drl::verify {

using fieldarith::Field;
using fieldarith::FieldSpec;
using zetalab::EvalOptions;
using zetalab::ZetaConstants;

namespace {

const cplx kI(0.0, 1.0);

cplx ipow(cplx z, int n) {
    if (n < 0) return 1.0 / ipow(z, -n);
    cplx r(1.0, 0.0);
    while (n) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

double parity_sign(long e) {
    return (e % 2 + 2) % 2 == 0 ? 1.0 : -1.0;
}

// ---- row table -------------------------------------------------------------

struct Row {
    const char* name;
    double tol;
    bool diagnostic;
    std::vector<const char*> keys;  // canonical key order for ids
};

const std::vector<Row>& rows() {
    static const std::vector<Row> table = {
        {"ramanujan", 1e-10, false, {"k", "alpha"}},
        {"grosswald", 1e-10, false, {"k", "z"}},
        {"grosswald_neg", 1e-10, false, {"k", "z"}},
        {"main", 1e-8, false, {"field", "k", "z"}},
        {"reduction_Q", 1e-10, false, {"k", "z"}},
        {"totally_real_pos", 1e-8, false, {"field", "k", "z"}},
        {"quad_real_pos", 1e-8, false, {"m", "k", "z"}},
        {"totally_real_neg", 1e-8, false, {"field", "k", "z"}},
        {"exact_real_at_i", 1e-8, false, {"field", "k"}},
        {"glaisher", 1e-10, false, {"k"}},
        {"quad_real_eisenstein", 1e-8, false, {"m", "k", "z"}},
        {"imaginary_pos", 1e-8, false, {"field", "k", "z"}},
        {"imaginary_neg", 1e-8, false, {"field", "k", "z"}},
        {"quad_imag_pos", 1e-8, false, {"m", "k", "z"}},
        {"quad_imag_kminus1", 1e-8, false, {"m", "z"}},
        {"quad_imag_exact_i", 1e-8, false, {"m"}},
        {"imag_neg_modular", 1e-8, false, {"field", "k", "z"}},
        {"imag_exact_i", 1e-8, false, {"field", "k"}},
        {"k0", 1e-8, false, {"field", "z"}},
        {"k0_totally_real", 1e-8, false, {"field", "z"}},
        {"class_number_kronecker", 1e-6, true, {"field"}},
        {"eta", 1e-10, false, {"z"}},
        {"lambda_symmetry", 1e-8, false, {"field", "k", "s"}},
        {"dirichlet_series", 0.0, false, {"field", "ell", "s", "N"}},
        {"klingen_siegel", 1e-10, false, {"field", "m"}},
    };
    return table;
}

const Row& row_for(const std::string& name) {
    for (const auto& r : rows())
        if (name == r.name) return r;
    throw domain_error("unknown identity: '" + name + "'");
}

// default evaluation grid (spec run_suite defaults)
const std::vector<std::string>& grid_fields() {
    static const std::vector<std::string> f = {"Q", "quad:5", "quad:2", "quad:-1", "quad:-3"};
    return f;
}
const std::vector<std::string>& grid_z() {
    static const std::vector<std::string> z = {"i", "0.3+1.2i", "-0.7+0.9i"};
    return z;
}
const std::vector<int>& grid_k() {
    static const std::vector<int> k = {-3, -2, -1, 1, 2, 3};
    return k;
}

}  // namespace

// ---- Params / instances -----------------------------------------------------

std::string Params::get(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end()) throw domain_error("missing identity parameter '" + key + "'");
    return it->second;
}

int Params::get_int(const std::string& key) const {
    return static_cast<int>(get_long(key));
}

long Params::get_long(const std::string& key) const {
    try {
        return std::stol(get(key));
    } catch (const std::exception&) {
        throw domain_error("parameter '" + key + "' is not an integer");
    }
}

cplx Params::get_cplx(const std::string& key) const {
    return parse_complex(get(key));
}

double Params::get_double(const std::string& key) const {
    try {
        return std::stod(get(key));
    } catch (const std::exception&) {
        throw domain_error("parameter '" + key + "' is not a number");
    }
}

std::string IdentityInstance::id() const {
    std::string out = name;
    char sep = ':';
    for (const char* key : row_for(name).keys) {
        if (!params.has(key)) continue;
        out += sep;
        sep = ',';
        out += key;
        out += '=';
        out += params.get(key);
    }
    return out;
}

IdentityInstance parse_instance(const std::string& text) {
    IdentityInstance inst;
    auto colon = text.find(':');
    inst.name = text.substr(0, colon);
    if (!is_registered(inst.name)) throw domain_error("unknown identity: '" + inst.name + "'");
    if (colon == std::string::npos) return inst;
    std::string rest = text.substr(colon + 1);
    size_t pos = 0;
    while (pos < rest.size()) {
        size_t eq = rest.find('=', pos);
        if (eq == std::string::npos) throw domain_error("bad identity parameters: '" + text + "'");
        std::string key = rest.substr(pos, eq - pos);
        size_t comma = rest.find(',', eq + 1);
        // allow one ':' inside field values ("quad:5"); commas end a value
        std::string val = rest.substr(eq + 1, comma == std::string::npos ? std::string::npos
                                                                         : comma - eq - 1);
        inst.params.set(key, val);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return inst;
}

const std::vector<std::string>& registry_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& r : rows()) out.emplace_back(r.name);
        return out;
    }();
    return names;
}

bool is_registered(const std::string& name) {
    for (const auto& r : rows())
        if (name == r.name) return true;
    return false;
}

bool is_diagnostic(const std::string& name) { return row_for(name).diagnostic; }

double default_tolerance(const std::string& name) { return row_for(name).tol; }

// ---- caches ------------------------------------------------------------------

const Field& field_cache(const std::string& label) {
    static std::shared_mutex mtx;
    static std::map<std::string, Field> cache;
    {
        std::shared_lock lock(mtx);
        auto it = cache.find(label);
        if (it != cache.end()) return it->second;
    }
    Field f = fieldarith::make_field(FieldSpec::parse(label));
    std::unique_lock lock(mtx);
    return cache.emplace(label, std::move(f)).first->second;
}

const ZetaConstants& constants_cache(const Field& field) {
    static std::shared_mutex mtx;
    static std::map<std::string, ZetaConstants> cache;
    {
        std::shared_lock lock(mtx);
        auto it = cache.find(field.label);
        if (it != cache.end()) return it->second;
    }
    ZetaConstants zc = zetalab::zeta_constants(field);
    std::unique_lock lock(mtx);
    return cache.emplace(field.label, zc).first->second;
}

// ---- evaluators ---------------------------------------------------------------

namespace {

cplx minus_inv(cplx z) { return -1.0 / z; }

cplx zeta_f(const Field& f, cplx s) { return zetalab::dedekind_zeta(f, s); }

cplx zeta_f_deriv_over_fact(const Field& f, double s0, int order) {
    cplx d = zetalab::dedekind_zeta_deriv(f, cplx(s0, 0.0), order);
    double fact = 1.0;
    for (int i = 2; i <= order; ++i) fact *= i;
    return d / fact;
}

CheckReport eval_ramanujan(const IdentityInstance& inst, double tol) {
    int k = inst.params.get_int("k");
    double alpha = inst.params.get_double("alpha");
    if (k == 0) throw domain_error("ramanujan: k must be nonzero");
    if (alpha <= 0.0) throw domain_error("ramanujan: alpha must be positive");
    double beta = kPi * kPi / alpha;
    auto H = [k](double x) {
        cplx tail = serieskit::lambert_f(2 * k + 1, kI * x / kPi).value;
        cplx zeta = zetalab::riemann_zeta(cplx(2.0 * k + 1.0, 0.0));
        return std::pow(4.0 * x, -k) * (0.5 * zeta + tail);
    };
    cplx lhs = H(alpha) + parity_sign(k + 1) * H(beta);
    cplx rhs(0.0, 0.0);
    if (k >= 1) {
        auto b = fieldarith::ramanujan_poly_coeffs(k);
        for (int j = 0; j <= k + 1; ++j)
            rhs += parity_sign(j - 1) * fieldarith::to_double(b[static_cast<size_t>(j)]) *
                   std::pow(alpha, k + 1 - j) * std::pow(beta, j);
    } else if (k == -1) {
        rhs = -1.0;  // single j = 0 term, B_0^2
    }
    return make_report(inst.id(), lhs, rhs, tol);
}

CheckReport eval_grosswald(const IdentityInstance& inst, double tol, bool with_poly) {
    int k = inst.params.get_int("k");
    cplx z = inst.params.get_cplx("z");
    if (with_poly && k < 1) throw domain_error("grosswald: k must be >= 1");
    if (!with_poly && k > -2) throw domain_error("grosswald_neg: k must be <= -2");
    cplx lhs = serieskit::lambert_f(2 * k + 1, z).value -
               ipow(z, 2 * k) * serieskit::lambert_f(2 * k + 1, minus_inv(z)).value;
    cplx zeta = zetalab::riemann_zeta(cplx(2.0 * k + 1.0, 0.0));
    cplx rhs = 0.5 * zeta * (ipow(z, 2 * k) - 1.0);
    if (with_poly) {
        cplx i_pow = kI * parity_sign(k);  // i^{2k+1}
        cplx pref = std::pow(kTwoPi, 2 * k + 1) * i_pow / (2.0 * z);
        rhs += pref * fieldarith::ramanujan_poly(k, z);
    }
    return make_report(inst.id(), lhs, rhs, tol);
}

CheckReport eval_main(const IdentityInstance& inst, double tol) {
    const Field& f = field_cache(inst.params.get("field"));
    int k = inst.params.get_int("k");
    cplx z = inst.params.get_cplx("z");
    if (k == 0)
        throw domain_error("main: k = 0 is excluded (the zeta factor hits its pole); use k0");
    double sign = parity_sign(static_cast<long>(k) * (f.r1 + 1) + f.r2);
    if (k > 0) {
        cplx lhs = serieskit::s_function(f, k, z).value;
        cplx rhs = sign * ipow(z, 2 * k) * serieskit::s_function(f, k, minus_inv(z)).value;
        for (int j = 1; j <= k; ++j)
            rhs += serieskit::residue_term(f, k, -(2 * j - 1), z).value;
        if (f.r2 > 0)
            for (int j = 1; j <= k - 1; ++j)
                rhs += serieskit::residue_term(f, k, -2 * j, z).value;
        return make_report(inst.id(), lhs, rhs, tol, "series + contour residues");
    }
    cplx lhs = serieskit::u_function(f, k, z).value;
    cplx rhs = sign * ipow(z, 2 * k) * serieskit::u_function(f, k, minus_inv(z)).value;
    if (k == -1 && f.r1 == 1 && f.r2 == 0) {
        rhs += -kI / (4.0 * kPi * z);
    } else if (k == -1 && f.r1 == 0 && f.r2 == 1) {
        const auto& zc = constants_cache(f);
        rhs += zc.H_F * zeta_f(f, cplx(0.0, 0.0)) * static_cast<double>(f.D) * kI /
               (kTwoPi * kTwoPi * z);
    }
    return make_report(inst.id(), lhs, rhs, tol, "series + simple-pole residue");
}

CheckReport eval_reduction_q(const IdentityInstance& inst, double tol) {
    int k = inst.params.get_int("k");
    cplx z = inst.params.get_cplx("z");
    if (k < 1) throw domain_error("reduction_Q: k must be >= 1");
    const Field& f = field_cache("Q");
    cplx zi = minus_inv(z);
    cplx zk = ipow(z, 2 * k);
    // all-contour aggregate of the residues that survive in the rational case
    cplx lhs = serieskit::residue_term(f, k, 0, z).value -
               zk * serieskit::residue_term(f, k, 0, zi).value +
               serieskit::residue_term(f, k, 1, z).value -
               zk * serieskit::residue_term(f, k, 1, zi).value;
    for (int j = 1; j <= k; ++j) lhs += serieskit::residue_term(f, k, -(2 * j - 1), z).value;
    // closed polynomial side
    cplx zeta = zetalab::riemann_zeta(cplx(2.0 * k + 1.0, 0.0));
    cplx rhs = 0.5 * zeta * (zk - 1.0) +
               std::pow(kTwoPi, 2 * k + 1) * kI * parity_sign(k) / (2.0 * z) *
                   fieldarith::ramanujan_poly(k, z);
    return make_report(inst.id(), lhs, rhs, tol, "contour aggregate vs Bernoulli closed form");
}

CheckReport eval_totally_real_pos(const IdentityInstance& inst, double tol, bool quad_form) {
    std::string label = quad_form ? "quad:" + std::to_string(inst.params.get_long("m"))
                                  : inst.params.get("field");
    const Field& f = field_cache(label);
    int k = inst.params.get_int("k");
    cplx z = inst.params.get_cplx("z");
    if (f.r2 != 0) throw domain_error(std::string(quad_form ? "quad_real_pos" : "totally_real_pos") +
                                      ": field must be totally real");
    if (quad_form && f.d != 2) throw domain_error("quad_real_pos: field must be quadratic");
    if (k < 1) throw domain_error("k must be >= 1");
    const auto& zc = constants_cache(f);
    auto S = [&](cplx zz) {
        cplx v = serieskit::f_series(f, 2 * k + 1, zz).value;
        v -= zc.C_F * zeta_f(f, cplx(2.0 * k + 1.0, 0.0));
        v -= zc.H_F * zeta_f(f, cplx(2.0 * k + 2.0, 0.0)) * kI * static_cast<double>(f.D) /
             (std::pow(kTwoPi, f.r1) * zz);
        return v;
    };
    cplx lhs = S(z);
    cplx rhs = parity_sign(static_cast<long>(k) * (f.r1 + 1)) * ipow(z, 2 * k) * S(minus_inv(z));
    for (int j = 1; j <= k; ++j) rhs += serieskit::residue_term(f, k, -(2 * j - 1), z).value;
    return make_report(inst.id(), lhs, rhs, tol, "closed residues at 0,1 + contour odd residues");
}

CheckReport eval_totally_real_neg(const IdentityInstance& inst, double tol) {
    const Field& f = field_cache(inst.params.get("field"));
    int k = inst.params.get_int("k");
    cplx z = inst.params.get_cplx("z");
    if (f.r2 != 0) throw domain_error("totally_real_neg: field must be totally real");
    if (k < 1) throw domain_error("totally_real_neg: k must be >= 1");
    const auto& zc = constants_cache(f);
    cplx c = zc.C_F * zeta_f(f, cplx(1.0 - 2.0 * k, 0.0));
    cplx lhs = ipow(z, 2 * k) * (serieskit::f_series(f, 1 - 2 * k, z).value - c);
    cplx rhs = parity_sign(static_cast<long>(k) * (f.r1 + 1)) *
               (serieskit::f_series(f, 1 - 2 * k, minus_inv(z)).value - c);
    if (k == 1 && f.r1 == 1 && f.r2 == 0) rhs += ipow(z, 2 * k) / (4.0 * kPi * z * kI);
    return make_report(inst.id(), lhs, rhs, tol);
}

CheckReport eval_exact_real_at_i(const IdentityInstance& inst, double tol) {
    const Field& f = field_cache(inst.params.get("field"));
    int k = inst.params.get_int("k");
    if (f.r2 != 0 || f.r1 % 2 == 0)
        throw domain_error("exact_real_at_i: field must be totally real of odd degree");
    if (k < 3 || k % 2 == 0) throw domain_error("exact_real_at_i: k must be odd and >= 3");
    cplx lhs = serieskit::f_series(f, 1 - 2 * k, cplx(0.0, 1.0)).value;
    cplx rhs = constants_cache(f).C_F * zeta_f(f, cplx(1.0 - 2.0 * k, 0.0));
    return make_report(inst.id(), lhs, rhs, tol, "Steen series at z=i vs Laurent constants");
}

CheckReport eval_glaisher(const IdentityInstance& inst, double tol) {
    int k = inst.params.get_int("k");
    if (k < 3 || k % 2 == 0) throw domain_error("glaisher: k must be odd and >= 3");
    cplx lhs = serieskit::lambert_f(1 - 2 * k, cplx(0.0, 1.0)).value;
    // -zeta(1-2k)/2 = B_{2k}/(4k), exact
    double rhs = fieldarith::to_double(fieldarith::bernoulli(2 * k)) / (4.0 * k);
    return make_report(inst.id(), lhs, cplx(rhs, 0.0), tol, "Lambert sum vs exact Bernoulli value");
}

CheckReport eval_quad_real_eisenstein(const IdentityInstance& inst, double tol) {
    long m = inst.params.get_long("m");
    int k = inst.params.get_int("k");
    cplx z = inst.params.get_cplx("z");
    cplx lhs = ipow(kI * z, 2 * k) * serieskit::g_eisenstein_quad(m, k, z);
    cplx rhs = serieskit::g_eisenstein_quad(m, k, minus_inv(z));
    return make_report(inst.id(), lhs, rhs, tol, "(iz)^{2k} G(z) vs G(-1/z)");
}

CheckReport eval_imaginary(const IdentityInstance& inst, double tol, bool positive) {
    const Field& f = field_cache(inst.params.get("field"));
    int k = inst.params.get_int("k");
    if (f.r1 != 0) throw domain_error("imaginary rows require a purely imaginary field");
    if (positive && k < 1) throw domain_error("imaginary_pos: k must be >= 1");
    if (!positive && k > -1) throw domain_error("imaginary_neg: k must be <= -1");
    return eval_main(inst, tol);
}

CheckReport eval_quad_imag_pos(const IdentityInstance& inst, double tol) {
    long m = inst.params.get_long("m");
    int k = inst.params.get_int("k");
    cplx z = inst.params.get_cplx("z");
    if (m <= 0) throw domain_error("quad_imag_pos: m must be positive (field Q(sqrt(-m)))");
    if (k < 1) throw domain_error("quad_imag_pos: k must be >= 1");
    const Field& f = field_cache("quad:" + std::to_string(-m));
    cplx lhs = serieskit::s_function(f, k, z).value;
    cplx rhs = parity_sign(k + 1) * ipow(z, 2 * k) *
               serieskit::s_function(f, k, minus_inv(z)).value;
    // closed residues: the odd/even trivial zeros are simple for d = 2
    cplx base = kTwoPi * kTwoPi * (-kI * z) / static_cast<double>(f.D);
    double fact_odd = 1.0;  // (2j-1)!
    double fact_even = 1.0; // (2j)!
    for (int j = 1; j <= k; ++j) {
        fact_odd *= (2 * j - 2 > 0) ? (2 * j - 2) * (2 * j - 1) : 1;
        fact_even *= (2 * j - 1) * (2 * j);
        cplx zp = zetalab::dedekind_zeta_deriv(f, cplx(1.0 - 2.0 * j, 0.0), 1);
        rhs += zp / (fact_odd * fact_odd) * zeta_f(f, cplx(2.0 * k - 2.0 * j + 2.0, 0.0)) *
               ipow(base, 2 * j - 1);
        if (j <= k - 1) {
            cplx zpe = zetalab::dedekind_zeta_deriv(f, cplx(-2.0 * j, 0.0), 1);
            rhs += zpe / (fact_even * fact_even) * zeta_f(f, cplx(2.0 * k - 2.0 * j + 1.0, 0.0)) *
                   ipow(base, 2 * j);
        }
    }
    return make_report(inst.id(), lhs, rhs, tol, "contour residue at 0, closed derivative residues");
}

CheckReport eval_quad_imag_kminus1(const IdentityInstance& inst, double tol) {
    long m = inst.params.get_long("m");
    cplx z = inst.params.get_cplx("z");
    if (m <= 0) throw domain_error("quad_imag_kminus1: m must be positive");
    const Field& f = field_cache("quad:" + std::to_string(-m));
    cplx z0 = zeta_f(f, cplx(0.0, 0.0));
    cplx zp = zetalab::dedekind_zeta_deriv(f, cplx(-1.0, 0.0), 1);
    auto U = [&](cplx zz) { return serieskit::f_series(f, -1, zz).value - z0 * zp; };
    const auto& zc = constants_cache(f);
    cplx lhs = ipow(z, 2) * U(z);
    cplx rhs = U(minus_inv(z)) +
               zc.H_F * z0 * kI * z * static_cast<double>(f.D) / (kTwoPi * kTwoPi);
    return make_report(inst.id(), lhs, rhs, tol);
}

CheckReport eval_quad_imag_exact_i(const IdentityInstance& inst, double tol) {
    long m = inst.params.get_long("m");
    if (m <= 0) throw domain_error("quad_imag_exact_i: m must be positive");
    const Field& f = field_cache("quad:" + std::to_string(-m));
    // K0-kernel sum (half the Steen series at z = i)
    cplx lhs = 0.5 * serieskit::f_series(f, -1, cplx(0.0, 1.0)).value;
    cplx z0 = zeta_f(f, cplx(0.0, 0.0));
    cplx zp = zetalab::dedekind_zeta_deriv(f, cplx(-1.0, 0.0), 1);
    const auto& zc = constants_cache(f);
    cplx rhs = 0.5 * z0 * zp +
               zc.H_F * z0 * static_cast<double>(f.D) / (16.0 * kPi * kPi);
    return make_report(inst.id(), lhs, rhs, tol);
}

CheckReport eval_imag_neg_modular(const IdentityInstance& inst, double tol) {
    const Field& f = field_cache(inst.params.get("field"));
    int k = inst.params.get_int("k");
    cplx z = inst.params.get_cplx("z");
    if (f.r1 != 0) throw domain_error("imag_neg_modular: field must be purely imaginary");
    if (k < 1) throw domain_error("imag_neg_modular: k must be >= 1");
    if (k == 1 && f.r2 == 1)
        throw domain_error("imag_neg_modular: (k, r2) = (1, 1) excluded (extra residue)");
    cplx c = constants_cache(f).C_F * zeta_f_deriv_over_fact(f, 1.0 - 2.0 * k, f.r2);
    cplx lhs = ipow(z, 2 * k) * (serieskit::f_series(f, 1 - 2 * k, z).value - c);
    cplx rhs = parity_sign(static_cast<long>(k) + f.r2) *
               (serieskit::f_series(f, 1 - 2 * k, minus_inv(z)).value - c);
    return make_report(inst.id(), lhs, rhs, tol);
}

CheckReport eval_imag_exact_i(const IdentityInstance& inst, double tol) {
    const Field& f = field_cache(inst.params.get("field"));
    int k = inst.params.get_int("k");
    if (f.r1 != 0 || f.r2 % 2 == 0)
        throw domain_error("imag_exact_i: field must be purely imaginary with odd r2");
    if (k < 3) throw domain_error("imag_exact_i: k must be >= 3");
    cplx lhs = serieskit::f_series(f, 1 - 2 * k, cplx(0.0, 1.0)).value;
    cplx rhs = constants_cache(f).C_F * zeta_f_deriv_over_fact(f, 1.0 - 2.0 * k, f.r2);
    return make_report(inst.id(), lhs, rhs, tol);
}

CheckReport eval_k0(const IdentityInstance& inst, double tol) {
    const Field& f = field_cache(inst.params.get("field"));
    cplx z = inst.params.get_cplx("z");
    cplx lhs = serieskit::t_function(f, z).value;
    cplx rhs = parity_sign(f.r2) * serieskit::t_function(f, minus_inv(z)).value +
               serieskit::residue_term(f, 0, 0, z).value;
    return make_report(inst.id(), lhs, rhs, tol, "eta-type transformation, contour residue at 0");
}

CheckReport eval_k0_totally_real(const IdentityInstance& inst, double tol) {
    const Field& f = field_cache(inst.params.get("field"));
    cplx z = inst.params.get_cplx("z");
    if (f.r2 != 0) throw domain_error("k0_totally_real: field must be totally real");
    const auto& zc = constants_cache(f);
    auto R1 = [&](cplx zz) {
        return zc.H_F * zeta_f(f, cplx(2.0, 0.0)) * kI * static_cast<double>(f.D) /
               (std::pow(kTwoPi, f.r1) * zz);
    };
    cplx lhs = serieskit::f_series(f, 1, z).value - serieskit::f_series(f, 1, minus_inv(z)).value;
    cplx logterm = std::log(-std::pow(kTwoPi, f.r1) * kI * z / static_cast<double>(f.D));
    cplx rhs = zc.C_F * zc.gamma_F -
               zc.C_F * zc.H_F * (f.r1 * kEulerGamma + logterm) + zc.a1 * zc.H_F +
               R1(z) - R1(minus_inv(z));
    return make_report(inst.id(), lhs, rhs, tol, "explicit Laurent-constant form");
}

CheckReport eval_class_number_kronecker(const IdentityInstance& inst, double tol) {
    const Field& f = field_cache(inst.params.get("field"));
    if (f.r2 != 0) throw domain_error("class_number_kronecker: field must be totally real");
    const auto& zc = constants_cache(f);
    double denom = f.r1 * kEulerGamma + std::log(std::pow(kTwoPi, f.r1) / static_cast<double>(f.D));
    cplx lhs(zc.C_F, 0.0);
    cplx rhs((zc.a1 - zc.A * zc.gamma_F) / denom, 0.0);
    return make_report(inst.id(), lhs, rhs, tol,
                       "diagnostic: leading Laurent coefficient vs limit-formula quotient", true);
}

CheckReport eval_eta(const IdentityInstance& inst, double tol) {
    cplx z = inst.params.get_cplx("z");
    cplx lhs = serieskit::lambert_f(1, z).value - serieskit::lambert_f(1, minus_inv(z)).value;
    cplx rhs = kI * kPi * (z * z + 1.0) / (12.0 * z) + 0.5 * std::log(-kI * z);
    return make_report(inst.id(), lhs, rhs, tol);
}

CheckReport eval_lambda_symmetry(const IdentityInstance& inst, double tol) {
    const Field& f = field_cache(inst.params.get("field"));
    int k = inst.params.get_int("k");
    cplx s = inst.params.get_cplx("s");
    if (k == 0) throw domain_error("lambda_symmetry: k must be nonzero");
    cplx lhs = zetalab::lambda_completed(f, k, s);
    cplx rhs = parity_sign(static_cast<long>(k) * f.r1 + f.r2) *
               zetalab::lambda_completed(f, k, -s - 2.0 * k);
    return make_report(inst.id(), lhs, rhs, tol);
}

CheckReport eval_dirichlet_series(const IdentityInstance& inst, double tol_override) {
    const Field& f = field_cache(inst.params.get("field"));
    cplx ell = inst.params.get_cplx("ell");
    cplx s = inst.params.get_cplx("s");
    long N = inst.params.has("N") ? inst.params.get_long("N") : 4000;
    double sig = s.real();
    double growth = 1.0 + std::max(0.0, ell.real());
    if (sig <= growth + 1.0)
        throw domain_error("dirichlet_series: need Re s > max(1, 1+Re ell) + 1");
    cplx lhs(0.0, 0.0);
    for (long n = 1; n <= N; ++n)
        lhs += fieldarith::divisor_sigma(f, ell, n) * std::exp(-s * std::log(static_cast<double>(n)));
    cplx rhs = zeta_f(f, s) * zeta_f(f, s - ell);
    // dyadic tail bound: block n in (N, 2N] then the geometric ratio 2^{growth - sig}
    double tail = 0.0;
    for (long n = N + 1; n <= 2 * N; ++n)
        tail += std::abs(fieldarith::divisor_sigma(f, ell, n)) * std::pow(static_cast<double>(n), -sig);
    double ratio = std::pow(2.0, growth - sig);
    double tol = tol_override > 0 ? tol_override : 3.0 * tail / (1.0 - ratio) + 1e-12;
    return make_report(inst.id(), lhs, rhs, tol, "partial sum vs zeta_F(s) zeta_F(s-ell)");
}

CheckReport eval_klingen_siegel(const IdentityInstance& inst, double tol) {
    const Field& f = field_cache(inst.params.get("field"));
    long m = inst.params.get_long("m");
    if (f.r2 != 0) throw domain_error("klingen_siegel: field must be totally real");
    if (m < 1) throw domain_error("klingen_siegel: m must be >= 1");
    double x = std::sqrt(static_cast<double>(f.D)) *
               zeta_f(f, cplx(2.0 * m, 0.0)).real() / std::pow(kPi, 2.0 * m * f.d);
    auto rec = rational_reconstruct(x, 1000000);
    CheckReport rep;
    rep.id = inst.id();
    rep.lhs = cplx(x, 0.0);
    rep.tol = tol;
    if (!rec) {
        rep.rhs = cplx(0.0, 0.0);
        rep.abs_err = rep.rel_err = 1.0;
        rep.pass = false;
        rep.notes = "no rational reconstruction with denominator <= 1e6";
        return rep;
    }
    double rv = fieldarith::to_double(*rec);
    rep.rhs = cplx(rv, 0.0);
    rep.abs_err = std::fabs(x - rv);
    rep.rel_err = rep.abs_err / std::max(1.0, std::fabs(x));
    rep.pass = rep.rel_err <= tol || rep.abs_err <= tol;
    {
        std::ostringstream os;
        os << "sqrt(D) zeta_F(" << 2 * m << ") / pi^" << 2 * m * f.d << " = "
           << boost::multiprecision::numerator(*rec) << "/"
           << boost::multiprecision::denominator(*rec);
        rep.notes = os.str();
    }
    return rep;
}

}  // namespace

CheckReport verify_identity(const IdentityInstance& inst, double tol) {
    const Row& row = row_for(inst.name);
    if (tol <= 0.0) tol = row.tol;
    const std::string& n = inst.name;
    if (n == "ramanujan") return eval_ramanujan(inst, tol);
    if (n == "grosswald") return eval_grosswald(inst, tol, true);
    if (n == "grosswald_neg") return eval_grosswald(inst, tol, false);
    if (n == "main") return eval_main(inst, tol);
    if (n == "reduction_Q") return eval_reduction_q(inst, tol);
    if (n == "totally_real_pos") return eval_totally_real_pos(inst, tol, false);
    if (n == "quad_real_pos") return eval_totally_real_pos(inst, tol, true);
    if (n == "totally_real_neg") return eval_totally_real_neg(inst, tol);
    if (n == "exact_real_at_i") return eval_exact_real_at_i(inst, tol);
    if (n == "glaisher") return eval_glaisher(inst, tol);
    if (n == "quad_real_eisenstein") return eval_quad_real_eisenstein(inst, tol);
    if (n == "imaginary_pos") return eval_imaginary(inst, tol, true);
    if (n == "imaginary_neg") return eval_imaginary(inst, tol, false);
    if (n == "quad_imag_pos") return eval_quad_imag_pos(inst, tol);
    if (n == "quad_imag_kminus1") return eval_quad_imag_kminus1(inst, tol);
    if (n == "quad_imag_exact_i") return eval_quad_imag_exact_i(inst, tol);
    if (n == "imag_neg_modular") return eval_imag_neg_modular(inst, tol);
    if (n == "imag_exact_i") return eval_imag_exact_i(inst, tol);
    if (n == "k0") return eval_k0(inst, tol);
    if (n == "k0_totally_real") return eval_k0_totally_real(inst, tol);
    if (n == "class_number_kronecker") return eval_class_number_kronecker(inst, tol);
    if (n == "eta") return eval_eta(inst, tol);
    if (n == "lambda_symmetry") return eval_lambda_symmetry(inst, tol);
    if (n == "dirichlet_series") return eval_dirichlet_series(inst, tol == row.tol ? 0.0 : tol);
    if (n == "klingen_siegel") return eval_klingen_siegel(inst, tol);
    throw domain_error("unknown identity: '" + n + "'");
}

// ---- default grids -------------------------------------------------------------

namespace {

IdentityInstance make_inst(const std::string& name,
                           std::initializer_list<std::pair<const char*, std::string>> kv) {
    IdentityInstance inst;
    inst.name = name;
    for (const auto& [k, v] : kv) inst.params.set(k, v);
    return inst;
}

// deterministic strip samples for the completed-function symmetry sweep
std::vector<cplx> lambda_s_samples(const std::string& field_label, int k, int count) {
    std::seed_seq seq{static_cast<unsigned>(std::hash<std::string>{}(field_label) & 0xffffffu),
                      static_cast<unsigned>(k + 16), 0x5eedu};
    std::mt19937 rng(seq);
    double lo = std::min(1.0, -2.0 * k - 1.0) + 0.15;
    double hi = std::max(1.0, -2.0 * k - 1.0) - 0.15;
    std::uniform_real_distribution<double> ure(lo, hi), uim(0.3, 2.0);
    std::vector<cplx> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.emplace_back(ure(rng), uim(rng));
    return out;
}

}  // namespace

std::vector<IdentityInstance> default_instances(const std::string& name) {
    std::vector<IdentityInstance> out;
    auto add = [&out, &name](std::initializer_list<std::pair<const char*, std::string>> kv) {
        out.push_back(make_inst(name, kv));
    };
    const auto& zs = grid_z();
    if (name == "ramanujan") {
        for (int k : grid_k())
            for (const char* a : {"1.2", "3.141592653589793", "2.7"})
                add({{"k", std::to_string(k)}, {"alpha", a}});
    } else if (name == "grosswald") {
        for (int k : {1, 2, 3})
            for (const auto& z : zs) add({{"k", std::to_string(k)}, {"z", z}});
    } else if (name == "grosswald_neg") {
        for (int k : {-2, -3})
            for (const auto& z : zs) add({{"k", std::to_string(k)}, {"z", z}});
    } else if (name == "main") {
        for (const auto& f : grid_fields())
            for (int k : grid_k())
                for (const auto& z : zs)
                    add({{"field", f}, {"k", std::to_string(k)}, {"z", z}});
    } else if (name == "reduction_Q") {
        for (int k : {1, 2, 3})
            for (const auto& z : zs) add({{"k", std::to_string(k)}, {"z", z}});
    } else if (name == "totally_real_pos" || name == "totally_real_neg") {
        for (const char* f : {"Q", "quad:5", "quad:2"})
            for (int k : {1, 2, 3})
                for (const auto& z : zs)
                    add({{"field", f}, {"k", std::to_string(k)}, {"z", z}});
    } else if (name == "quad_real_pos") {
        for (const char* m : {"5", "2"})
            for (int k : {1, 2, 3})
                for (const auto& z : zs) add({{"m", m}, {"k", std::to_string(k)}, {"z", z}});
    } else if (name == "exact_real_at_i") {
        for (int k : {3, 5}) add({{"field", "Q"}, {"k", std::to_string(k)}});
    } else if (name == "glaisher") {
        add({{"k", "3"}});
    } else if (name == "quad_real_eisenstein") {
        for (const char* m : {"5", "2"})
            for (int k : {1, 2})
                for (const char* z : {"1+1i", "0.5+2i"})
                    add({{"m", m}, {"k", std::to_string(k)}, {"z", z}});
    } else if (name == "imaginary_pos") {
        for (const char* f : {"quad:-1", "quad:-3"})
            for (int k : {1, 2, 3})
                for (const auto& z : zs)
                    add({{"field", f}, {"k", std::to_string(k)}, {"z", z}});
    } else if (name == "imaginary_neg") {
        for (const char* f : {"quad:-1", "quad:-3"})
            for (int k : {-1, -2, -3})
                for (const auto& z : zs)
                    add({{"field", f}, {"k", std::to_string(k)}, {"z", z}});
    } else if (name == "quad_imag_pos") {
        for (const char* m : {"1", "3"})
            for (int k : {1, 2, 3})
                for (const auto& z : zs) add({{"m", m}, {"k", std::to_string(k)}, {"z", z}});
    } else if (name == "quad_imag_kminus1") {
        for (const char* m : {"1", "3"})
            for (const auto& z : zs) add({{"m", m}, {"z", z}});
    } else if (name == "quad_imag_exact_i") {
        for (const char* m : {"1", "3"}) add({{"m", m}});
    } else if (name == "imag_neg_modular") {
        for (const char* f : {"quad:-1", "quad:-3"})
            for (int k : {2, 3})
                for (const auto& z : zs)
                    add({{"field", f}, {"k", std::to_string(k)}, {"z", z}});
    } else if (name == "imag_exact_i") {
        for (const char* f : {"quad:-1", "quad:-3"}) add({{"field", f}, {"k", "3"}});
    } else if (name == "k0") {
        for (const auto& f : grid_fields())
            for (const auto& z : zs) add({{"field", f}, {"z", z}});
    } else if (name == "k0_totally_real") {
        for (const char* f : {"Q", "quad:5", "quad:2"})
            for (const auto& z : zs) add({{"field", f}, {"z", z}});
    } else if (name == "class_number_kronecker") {
        for (const char* f : {"Q", "quad:5", "quad:2"}) add({{"field", f}});
    } else if (name == "eta") {
        for (const auto& z : zs) add({{"z", z}});
    } else if (name == "lambda_symmetry") {
        // 4 fields x 6 k x 10 samples = 240 cases
        for (const char* f : {"Q", "quad:5", "quad:-1", "quad:-3"})
            for (int k : grid_k())
                for (cplx s : lambda_s_samples(f, k, 10))
                    add({{"field", f}, {"k", std::to_string(k)}, {"s", format_complex(s)}});
    } else if (name == "dirichlet_series") {
        for (const auto& f : grid_fields())
            for (const auto& [ell, s] :
                 std::vector<std::pair<const char*, const char*>>{
                     {"0", "2.6"}, {"1", "3.5+0.4i"}, {"2+1i", "4.6"}})
                add({{"field", f}, {"ell", ell}, {"s", s}, {"N", "3000"}});
    } else if (name == "klingen_siegel") {
        for (const char* f : {"quad:5", "quad:2"})
            for (const char* m : {"1", "2"}) add({{"field", f}, {"m", m}});
    } else {
        row_for(name);  // throws for unknown names
    }
    return out;
}

SuiteReport run_suite(const std::vector<std::string>& filters, double tol, int parallelism) {
    std::vector<IdentityInstance> work;
    for (const auto& name : registry_names()) {
        bool wanted = filters.empty();
        for (const auto& f : filters)
            if (name.find(f) != std::string::npos) {
                wanted = true;
                break;
            }
        if (!wanted) continue;
        auto insts = default_instances(name);
        work.insert(work.end(), insts.begin(), insts.end());
    }

    std::vector<CheckReport> reports(work.size());
    auto run_range = [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) {
            try {
                reports[i] = verify_identity(work[i], tol);
            } catch (const std::exception& e) {
                CheckReport rep;
                rep.id = work[i].id();
                rep.pass = false;
                rep.abs_err = rep.rel_err = std::numeric_limits<double>::infinity();
                rep.notes = std::string("error: ") + e.what();
                reports[i] = rep;
            }
        }
    };
    int nthreads = std::max(1, parallelism);
    if (nthreads == 1 || work.size() < 2) {
        run_range(0, work.size());
    } else {
        std::vector<std::future<void>> futs;
        size_t chunk = (work.size() + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            size_t lo = t * chunk, hi = std::min(work.size(), lo + chunk);
            if (lo >= hi) break;
            futs.push_back(std::async(std::launch::async, run_range, lo, hi));
        }
        for (auto& f : futs) f.get();
    }

    SuiteReport out;
    out.checks = std::move(reports);
    std::sort(out.checks.begin(), out.checks.end(),
              [](const CheckReport& a, const CheckReport& b) { return a.id < b.id; });
    for (const auto& rep : out.checks) {
        ++out.n_total;
        std::string name = rep.id.substr(0, rep.id.find(':'));
        if (rep.pass) {
            ++out.n_pass;
        } else if (is_registered(name) && is_diagnostic(name)) {
            ++out.n_flagged;
        } else {
            ++out.n_fail;
        }
        double& worst = out.worst_rel[name];
        if (std::isfinite(rep.rel_err)) worst = std::max(worst, rep.rel_err);
        else worst = std::numeric_limits<double>::infinity();
    }
    return out;
}

std::optional<fieldarith::Rational> rational_reconstruct(double x, long long max_den) {
    if (!(std::fabs(x) < 1e12)) return std::nullopt;
    using fieldarith::BigInt;
    using fieldarith::Rational;
    double gate = 1e-9 * std::max(1.0, std::fabs(x));
    // continued-fraction convergents
    double v = x;
    BigInt p0 = 1, q0 = 0;
    BigInt p1 = static_cast<long long>(std::floor(v)), q1 = 1;
    double frac = v - std::floor(v);
    for (int it = 0; it < 64; ++it) {
        if (q1 > 0 && q1 <= max_den) {
            Rational cand(p1, q1);
            if (std::fabs(x - fieldarith::to_double(cand)) < gate) return cand;
        }
        if (frac < 1e-15 || q1 > max_den) break;
        v = 1.0 / frac;
        double fl = std::floor(v);
        frac = v - fl;
        BigInt a = static_cast<long long>(fl);
        BigInt p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    return std::nullopt;
}

}  // namespace drl::verify
