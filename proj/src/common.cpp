#include "drl/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>

namespace drl {

CheckReport make_report(std::string id, cplx lhs, cplx rhs, double tol,
                        std::string notes, bool diagnostic) {
    CheckReport r;
    r.id = std::move(id);
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_err = std::abs(lhs - rhs);
    r.rel_err = r.abs_err / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    r.tol = tol;
    r.pass = (r.abs_err <= tol) || (r.rel_err <= tol);
    r.notes = std::move(notes);
    r.diagnostic = diagnostic;
    return r;
}

cplx sin_pi(cplx u) {
    double x = u.real();
    double m = std::nearbyint(x);
    double xr = x - m;  // exact for |x| < 2^52
    cplx v(xr, u.imag());
    cplx s = std::sin(kPi * v);
    // sin(pi(v+m)) = (-1)^m sin(pi v)
    if (std::fmod(std::fabs(m), 2.0) == 1.0) s = -s;
    return s;
}

const GaussRule& gauss_legendre(int n) {
    static std::mutex mtx;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    // Newton on P_n with the three-term recurrence; nodes symmetric about 0.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double p1 = 0, p2 = 0;
        for (int iter = 0; iter < 100; ++iter) {
            p1 = 1.0;
            p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * x * p2 - j * p3) / (j + 1.0);
            }
            double dp = n * (x * p1 - p2) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        p1 = 1.0;
        p2 = 0.0;
        for (int j = 0; j < n; ++j) {
            double p3 = p2;
            p2 = p1;
            p1 = ((2.0 * j + 1.0) * x * p2 - j * p3) / (j + 1.0);
        }
        double dp = n * (x * p1 - p2) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.x[i] = -x;
        rule.w[i] = w;
        rule.x[n - 1 - i] = x;
        rule.w[n - 1 - i] = w;
    }
    auto [pos, ok] = cache.emplace(n, std::move(rule));
    return pos->second;
}

cplx parse_complex(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw domain_error("empty complex literal");

    // pure imaginary shorthands
    if (s == "i" || s == "+i") return {0.0, 1.0};
    if (s == "-i") return {0.0, -1.0};

    bool has_i = s.back() == 'i' || s.back() == 'I';
    std::string body = has_i ? s.substr(0, s.size() - 1) : s;

    auto parse_num = [](const std::string& t, size_t& pos) -> double {
        size_t used = 0;
        double v;
        try {
            v = std::stod(t.substr(pos), &used);
        } catch (const std::exception&) {
            throw domain_error("malformed complex literal: '" + t + "'");
        }
        pos += used;
        return v;
    };

    size_t pos = 0;
    double first = parse_num(body, pos);
    if (pos == body.size()) {
        // single component: real unless the trailing i was present
        return has_i ? cplx(0.0, first) : cplx(first, 0.0);
    }
    if (!has_i) throw domain_error("malformed complex literal: '" + text + "'");
    // remainder is the imaginary part, possibly just "+" or "-"
    std::string rest = body.substr(pos);
    double im;
    if (rest == "+")
        im = 1.0;
    else if (rest == "-")
        im = -1.0;
    else {
        size_t p2 = 0;
        im = parse_num(rest, p2);
        if (p2 != rest.size())
            throw domain_error("malformed complex literal: '" + text + "'");
    }
    return {first, im};
}

std::string format_complex(cplx z) {
    char buf[72];
    if (z.imag() == 0.0) {
        std::snprintf(buf, sizeof(buf), "%.12g", z.real());
        return buf;
    }
    if (z.real() == 0.0) {
        std::snprintf(buf, sizeof(buf), "%.12gi", z.imag());
        return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", z.real(), z.imag());
    return buf;
}

}  // namespace drl
