#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drl/verify.hpp"

using namespace drl;
using namespace drl::verify;

TEST_CASE("instance parsing and canonical ids") {
    auto inst = parse_instance("main:field=quad:5,k=1,z=0.4+1.3i");
    CHECK(inst.name == "main");
    CHECK(inst.params.get("field") == "quad:5");
    CHECK(inst.params.get_int("k") == 1);
    CHECK(inst.params.get_cplx("z") == cplx(0.4, 1.3));
    CHECK(inst.id() == "main:field=quad:5,k=1,z=0.4+1.3i");
    CHECK_THROWS_AS(parse_instance("no_such_identity:k=1"), domain_error);
}

TEST_CASE("closed-form identities") {
    auto eta_i = verify_identity(parse_instance("eta:z=i"));
    CHECK(eta_i.pass);
    CHECK(std::abs(eta_i.lhs) < 1e-12);
    CHECK(std::abs(eta_i.rhs) < 1e-12);
    CHECK(verify_identity(parse_instance("eta:z=0.25+1.5i")).pass);

    auto gl = verify_identity(parse_instance("glaisher:k=3"));
    CHECK(gl.pass);
    CHECK(gl.rhs.real() == doctest::Approx(1.0 / 504).epsilon(1e-14));
    CHECK_THROWS_AS(verify_identity(parse_instance("glaisher:k=2")), domain_error);

    auto gw = verify_identity(parse_instance("grosswald:k=2,z=i"));
    CHECK(gw.pass);  // both sides vanish: R_5(i) = 0
    CHECK(std::abs(gw.lhs) < 1e-12);

    for (int k : {-3, -2, -1, 1, 2, 3}) {
        auto ram = verify_identity(
            parse_instance("ramanujan:k=" + std::to_string(k) + ",alpha=1.9"));
        CHECK(ram.pass);
    }
}

TEST_CASE("main theorem rows across field kinds") {
    for (const char* id :
         {"main:field=Q,k=1,z=0.4+1.3i", "main:field=quad:5,k=2,z=0.4+1.3i",
          "main:field=quad:-1,k=1,z=i", "main:field=quad:-3,k=-2,z=0.3+1.2i",
          "main:field=Q,k=-1,z=0.3+1.2i", "main:field=quad:-1,k=-1,z=i"}) {
        auto rep = verify_identity(parse_instance(id));
        INFO(rep.id, " rel_err=", rep.rel_err);
        CHECK(rep.pass);
    }
    CHECK_THROWS_AS(verify_identity(parse_instance("main:field=Q,k=0,z=i")), domain_error);
}

TEST_CASE("row parameter validation") {
    CHECK_THROWS_AS(verify_identity(parse_instance("exact_real_at_i:field=quad:-1,k=3")),
                    domain_error);
    CHECK_THROWS_AS(verify_identity(parse_instance("exact_real_at_i:field=Q,k=4")), domain_error);
    CHECK_THROWS_AS(verify_identity(parse_instance("imag_exact_i:field=quad:5,k=3")), domain_error);
    CHECK_THROWS_AS(verify_identity(parse_instance("imag_neg_modular:field=quad:-1,k=1,z=i")),
                    domain_error);
    CHECK_THROWS_AS(verify_identity(parse_instance("totally_real_pos:field=quad:-1,k=1,z=i")),
                    domain_error);
    CHECK_THROWS_AS(verify_identity(parse_instance("klingen_siegel:field=quad:-1,m=1")),
                    domain_error);
}

TEST_CASE("reduction to the rational case is exact") {
    for (int k : {1, 2, 3}) {
        for (const char* z : {"i", "0.3+1.2i", "-0.7+0.9i"}) {
            auto rep = verify_identity(
                parse_instance("reduction_Q:k=" + std::to_string(k) + ",z=" + z));
            INFO(rep.id, " rel_err=", rep.rel_err);
            CHECK(rep.pass);
            CHECK(std::min(rep.rel_err, rep.abs_err) < 1e-10);
        }
    }
}

TEST_CASE("monotone tolerance gate") {
    auto inst = parse_instance("main:field=quad:5,k=1,z=0.4+1.3i");
    auto tight = verify_identity(inst, 1e-8);
    auto loose = verify_identity(inst, 1e-7);
    CHECK(tight.pass);
    CHECK((loose.pass || !tight.pass));  // widening never flips pass -> fail
}

TEST_CASE("modular-symmetry coherence for swapped arguments") {
    // evaluating at z and -1/z swaps the roles of the two sides
    cplx z(1.0, 1.0);
    auto a = verify_identity(parse_instance("quad_real_eisenstein:m=5,k=2,z=1+1i"));
    auto b = verify_identity(parse_instance("quad_real_eisenstein:m=5,k=2,z=" +
                                            format_complex(-1.0 / z)));
    CHECK(a.pass);
    CHECK(b.pass);
    CHECK(a.rel_err < 10 * std::max(b.rel_err, 1e-12));
    CHECK(b.rel_err < 10 * std::max(a.rel_err, 1e-12));
}

TEST_CASE("exact evaluations at z=i") {
    auto r = verify_identity(parse_instance("quad_imag_exact_i:m=1"));
    INFO(r.id, " rel=", r.rel_err);
    CHECK(r.pass);
    auto r2 = verify_identity(parse_instance("imag_exact_i:field=quad:-1,k=3"));
    CHECK(r2.pass);
    auto r3 = verify_identity(parse_instance("exact_real_at_i:field=Q,k=3"));
    CHECK(r3.pass);
}

TEST_CASE("main with k=-1 on Q(i) carries the extra simple-pole residue") {
    auto rep = verify_identity(parse_instance("main:field=quad:-1,k=-1,z=0.3+1.2i"));
    CHECK(rep.pass);
    // and on Q the residue is -i/(4 pi z): remove it and the check must fail
    auto repq = verify_identity(parse_instance("main:field=Q,k=-1,z=0.3+1.2i"));
    CHECK(repq.pass);
    cplx z(0.3, 1.2);
    cplx residue = -cplx(0, 1) / (4.0 * kPi * z);
    CHECK(std::abs(residue) > 1e3 * repq.abs_err);  // the term genuinely matters
}

TEST_CASE("rational reconstruction") {
    auto r = rational_reconstruct(0.6666666667, 1000);
    REQUIRE(r.has_value());
    CHECK(*r == fieldarith::Rational(2, 3));
    CHECK(!rational_reconstruct(kEulerGamma, 1000).has_value());
    CHECK(!rational_reconstruct(2e12, 1000).has_value());
    auto half = rational_reconstruct(0.5, 10);
    REQUIRE(half.has_value());
    CHECK(*half == fieldarith::Rational(1, 2));
}

TEST_CASE("klingen-siegel rationality with frozen values") {
    auto r5 = verify_identity(parse_instance("klingen_siegel:field=quad:5,m=1"));
    CHECK(r5.pass);
    CHECK(r5.notes.find("2/75") != std::string::npos);
    auto r2 = verify_identity(parse_instance("klingen_siegel:field=quad:2,m=1"));
    CHECK(r2.pass);
    CHECK(r2.notes.find("1/24") != std::string::npos);
    auto r5b = verify_identity(parse_instance("klingen_siegel:field=quad:5,m=2"));
    CHECK(r5b.pass);
    CHECK(r5b.notes.find("4/16875") != std::string::npos);
}

TEST_CASE("dirichlet series row computes its own tail tolerance") {
    auto rep = verify_identity(parse_instance("dirichlet_series:field=quad:5,ell=1,s=3.5+0.4i,N=2000"));
    CHECK(rep.pass);
    CHECK(rep.tol < 1e-2);
    CHECK_THROWS_AS(
        verify_identity(parse_instance("dirichlet_series:field=Q,ell=1,s=2.2,N=100")),
        domain_error);
}

TEST_CASE("suite: composition, determinism, diagnostics") {
    auto quick = run_suite({"eta", "glaisher"}, 0.0, 1);
    CHECK(quick.n_total == 4);
    CHECK(quick.n_pass == 4);

    auto lam = run_suite({"lambda_symmetry"}, 0.0, 2);
    CHECK(lam.n_total == 240);
    CHECK(lam.n_pass == 240);

    // identical reports regardless of parallelism
    auto a = run_suite({"klingen_siegel", "eta"}, 0.0, 1);
    auto b = run_suite({"klingen_siegel", "eta"}, 0.0, 8);
    REQUIRE(a.checks.size() == b.checks.size());
    for (size_t i = 0; i < a.checks.size(); ++i) {
        CHECK(a.checks[i].id == b.checks[i].id);
        CHECK(a.checks[i].lhs == b.checks[i].lhs);
        CHECK(a.checks[i].rhs == b.checks[i].rhs);
        CHECK(a.checks[i].rel_err == b.checks[i].rel_err);
    }

    // diagnostics flag, never fail
    auto diag = run_suite({"class_number_kronecker"}, 0.0, 1);
    CHECK(diag.n_fail == 0);
}
