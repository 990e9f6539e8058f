// drl — evaluate Dedekind-zeta / Steen-series primitives, check the
// transformation identities, run suites, dump tables.
//
// Exit codes: 0 ok, 2 usage/parse error, 3 numeric-domain error,
// 4 check failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "drl/verify.hpp"

using json = nlohmann::json;
using namespace drl;

namespace {

json report_to_json(const CheckReport& r) {
    auto colon = r.id.find(':');
    json j;
    j["id"] = r.id.substr(0, colon);
    j["params"] = colon == std::string::npos ? "" : r.id.substr(colon + 1);
    j["lhs"] = {r.lhs.real(), r.lhs.imag()};
    j["rhs"] = {r.rhs.real(), r.rhs.imag()};
    j["abs_err"] = r.abs_err;
    j["rel_err"] = r.rel_err;
    j["pass"] = r.pass;
    j["tol"] = r.tol;
    j["notes"] = r.notes;
    return j;
}

CheckReport report_from_json(const json& j) {
    CheckReport r;
    std::string params = j.at("params").get<std::string>();
    r.id = j.at("id").get<std::string>() + (params.empty() ? "" : ":" + params);
    r.lhs = cplx(j.at("lhs")[0].get<double>(), j.at("lhs")[1].get<double>());
    r.rhs = cplx(j.at("rhs")[0].get<double>(), j.at("rhs")[1].get<double>());
    r.abs_err = j.at("abs_err").get<double>();
    r.rel_err = j.at("rel_err").get<double>();
    r.pass = j.at("pass").get<bool>();
    r.tol = j.at("tol").get<double>();
    r.notes = j.at("notes").get<std::string>();
    return r;
}

void print_report(const CheckReport& r, const std::string& output) {
    if (output == "json") {
        std::cout << report_to_json(r).dump() << "\n";
        return;
    }
    std::cout << (r.pass ? "pass " : "FAIL ") << r.id << "\n"
              << "  lhs = " << format_complex(r.lhs) << "\n"
              << "  rhs = " << format_complex(r.rhs) << "\n"
              << "  abs_err = " << r.abs_err << "  rel_err = " << r.rel_err
              << "  tol = " << r.tol << "\n";
    if (!r.notes.empty()) std::cout << "  " << r.notes << "\n";
}

double default_tol_from_env() {
    if (const char* env = std::getenv("DRL_DEFAULT_TOL")) {
        try {
            double t = std::stod(env);
            if (t >= 1e-14 && t <= 1e-2) return t;
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring invalid DRL_DEFAULT_TOL\n";
    }
    return 0.0;  // row defaults
}

void print_series(const SeriesValue& v) {
    std::cout << "value = " << format_complex(v.value) << "\n"
              << "err_estimate = " << v.err_estimate << "\n"
              << "terms_used = " << v.terms_used << "\n";
}

std::vector<double> parse_param_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    if (out.empty()) throw domain_error("empty Steen parameter list");
    return out;
}

std::pair<long, long> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) throw domain_error("range must look like 1..20");
    return {std::stol(text.substr(0, dots)), std::stol(text.substr(dots + 2))};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for Dedekind-zeta transformation identities"};
    app.require_subcommand(1);

    std::string output = "human";
    app.add_option("--output", output, "output format: human|json|csv")->capture_default_str();

    // ---- eval -------------------------------------------------------------
    auto* eval = app.add_subcommand("eval", "evaluate a primitive");
    std::string ev_target, ev_field = "Q", ev_s, ev_z, ev_ell = "0", ev_params = "0";
    long ev_n = 1;
    int ev_k = 1, ev_pole = 0, ev_index = 0;
    eval->add_option("target", ev_target, "zeta|lfun|steen|sigma|fseries|residue")->required();
    eval->add_option("--field", ev_field, "Q | quad:<m> | file:<path>");
    eval->add_option("--s", ev_s, "complex point");
    eval->add_option("--z", ev_z, "complex point in the upper half plane");
    eval->add_option("--ell", ev_ell, "complex weight for sigma");
    eval->add_option("--n", ev_n, "index n >= 1");
    eval->add_option("--k", ev_k, "series index k");
    eval->add_option("--pole", ev_pole, "residue pole location");
    eval->add_option("--params", ev_params, "Steen shifts, comma separated");
    eval->add_option("--index", ev_index, "L-factor index within the field");

    // ---- verify -----------------------------------------------------------
    auto* ver = app.add_subcommand("verify", "check one identity instance");
    std::string v_id, v_field, v_z, v_s, v_alpha, v_ell, v_N;
    std::string v_k, v_m;
    double v_tol = 0.0;
    ver->add_option("id", v_id, "identity name or name:key=value,... form")->required();
    ver->add_option("--field", v_field, "field parameter");
    ver->add_option("--k", v_k, "integer parameter k");
    ver->add_option("--z", v_z, "complex parameter z");
    ver->add_option("--m", v_m, "integer parameter m");
    ver->add_option("--alpha", v_alpha, "positive real parameter alpha");
    ver->add_option("--s", v_s, "complex parameter s");
    ver->add_option("--ell", v_ell, "complex parameter ell");
    ver->add_option("--N", v_N, "partial-sum length");
    ver->add_option("--tol", v_tol, "tolerance override");

    // ---- suite ------------------------------------------------------------
    auto* suite = app.add_subcommand("suite", "run the default identity grid");
    std::vector<std::string> s_filters;
    double s_tol = 0.0;
    int s_par = 1;
    std::string s_out_file;
    suite->add_option("--filter", s_filters, "identity name patterns (substring match)");
    suite->add_option("--tol", s_tol, "tolerance override");
    suite->add_option("--parallelism", s_par, "worker threads")->check(CLI::PositiveNumber);
    suite->add_option("--out", s_out_file, "write the JSONL report to a file");

    // ---- table ------------------------------------------------------------
    auto* table = app.add_subcommand("table", "CSV tables of arithmetic data");
    std::string t_kind, t_field = "Q", t_range = "1..20", t_ell = "1";
    table->add_option("kind", t_kind, "ideal_counts|sigma|zeta_values")->required();
    table->add_option("--field", t_field, "Q | quad:<m> | file:<path>");
    table->add_option("--range", t_range, "index range lo..hi");
    table->add_option("--ell", t_ell, "sigma weight");

    // ---- list -------------------------------------------------------------
    auto* list = app.add_subcommand("list", "list registered identities");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    double env_tol = default_tol_from_env();

    try {
        if (*eval) {
            if (ev_target == "zeta") {
                const auto& f = verify::field_cache(ev_field);
                cplx val = zetalab::dedekind_zeta(f, parse_complex(ev_s));
                SeriesValue sv{val, 1e-12 * std::abs(val), 0};
                print_series(sv);
            } else if (ev_target == "lfun") {
                const auto& f = verify::field_cache(ev_field);
                if (ev_index < 0 || ev_index >= static_cast<int>(f.factors.size()))
                    throw domain_error("lfun: no such L-factor");
                cplx val = zetalab::dirichlet_l(f.factors[ev_index], parse_complex(ev_s));
                print_series({val, 1e-12 * std::abs(val), 0});
            } else if (ev_target == "steen") {
                auto params = parse_param_list(ev_params);
                print_series(steen::steen_v(parse_complex(ev_z), steen::SteenParams(params)));
            } else if (ev_target == "sigma") {
                const auto& f = verify::field_cache(ev_field);
                cplx val = fieldarith::divisor_sigma(f, parse_complex(ev_ell), ev_n);
                print_series({val, 0.0, 0});
            } else if (ev_target == "fseries") {
                const auto& f = verify::field_cache(ev_field);
                print_series(serieskit::f_series(f, ev_k, parse_complex(ev_z)));
            } else if (ev_target == "residue") {
                const auto& f = verify::field_cache(ev_field);
                auto r = serieskit::residue_term(f, ev_k, ev_pole, parse_complex(ev_z));
                print_series({r.value, r.err_estimate, r.order_used});
            } else {
                std::cerr << "unknown eval target '" << ev_target << "'\n";
                return 2;
            }
            return 0;
        }

        if (*ver) {
            auto inst = verify::parse_instance(v_id);
            auto maybe_set = [&inst](const char* key, const std::string& val) {
                if (!val.empty()) inst.params.set(key, val);
            };
            maybe_set("field", v_field);
            maybe_set("k", v_k);
            maybe_set("z", v_z);
            maybe_set("m", v_m);
            maybe_set("alpha", v_alpha);
            maybe_set("s", v_s);
            maybe_set("ell", v_ell);
            maybe_set("N", v_N);
            double tol = v_tol > 0 ? v_tol : env_tol;
            CheckReport rep = verify::verify_identity(inst, tol);
            print_report(rep, output);
            return rep.pass ? 0 : 4;
        }

        if (*suite) {
            double tol = s_tol > 0 ? s_tol : env_tol;
            auto rep = verify::run_suite(s_filters, tol, s_par);
            std::ostream* os = &std::cout;
            std::ofstream file;
            if (!s_out_file.empty()) {
                file.open(s_out_file);
                if (!file) throw domain_error("cannot open output file: " + s_out_file);
                os = &file;
            }
            if (output == "json" || !s_out_file.empty()) {
                for (const auto& c : rep.checks) (*os) << report_to_json(c).dump() << "\n";
                json summary;
                summary["summary"] = true;
                summary["total"] = rep.n_total;
                summary["pass"] = rep.n_pass;
                summary["fail"] = rep.n_fail;
                summary["flagged"] = rep.n_flagged;
                json worst = json::object();
                for (const auto& [name, w] : rep.worst_rel) worst[name] = w;
                summary["worst_rel_err"] = worst;
                (*os) << summary.dump() << "\n";
            } else {
                for (const auto& c : rep.checks)
                    if (!c.pass)
                        std::cout << (verify::is_registered(c.id.substr(0, c.id.find(':'))) &&
                                              verify::is_diagnostic(c.id.substr(0, c.id.find(':')))
                                          ? "flag "
                                          : "FAIL ")
                                  << c.id << "  rel_err=" << c.rel_err << "\n";
                std::cout << "suite: " << rep.n_pass << "/" << rep.n_total << " pass";
                if (rep.n_flagged) std::cout << ", " << rep.n_flagged << " flagged (diagnostic)";
                if (rep.n_fail) std::cout << ", " << rep.n_fail << " FAILED";
                std::cout << "\n";
            }
            return rep.n_fail == 0 ? 0 : 4;
        }

        if (*table) {
            auto [lo, hi] = parse_range(t_range);
            const auto& f = verify::field_cache(t_field);
            if (t_kind == "ideal_counts") {
                std::cout << "n,a_F\n";
                for (long n = lo; n <= hi; ++n)
                    std::cout << n << "," << fieldarith::ideal_count(f, n) << "\n";
            } else if (t_kind == "sigma") {
                cplx ell = parse_complex(t_ell);
                std::cout << "n,sigma_re,sigma_im\n";
                for (long n = lo; n <= hi; ++n) {
                    cplx v = fieldarith::divisor_sigma(f, ell, n);
                    std::cout << n << "," << v.real() << "," << v.imag() << "\n";
                }
            } else if (t_kind == "zeta_values") {
                std::cout << "s,zeta_re,zeta_im\n";
                for (long n = lo; n <= hi; ++n) {
                    if (n == 1) continue;  // pole
                    cplx v = zetalab::dedekind_zeta(f, cplx(static_cast<double>(n), 0.0));
                    std::cout << n << "," << v.real() << "," << v.imag() << "\n";
                }
            } else {
                std::cerr << "unknown table kind '" << t_kind << "'\n";
                return 2;
            }
            return 0;
        }

        if (*list) {
            for (const auto& name : verify::registry_names())
                std::cout << name << (verify::is_diagnostic(name) ? "  [diagnostic]" : "") << "\n";
            return 0;
        }
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
