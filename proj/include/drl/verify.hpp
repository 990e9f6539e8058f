#ifndef DRL_VERIFY_HPP
#define DRL_VERIFY_HPP

// Identity registry and checker: every transformation/evaluation in scope
// becomes a (LHS, RHS, error) report, with both sides assembled from
// independent primitive paths wherever the structure allows it.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drl/common.hpp"
#include "drl/serieskit.hpp"

namespace drl::verify {

struct Params {
    std::map<std::string, std::string> kv;

    bool has(const std::string& key) const { return kv.count(key) != 0; }
    std::string get(const std::string& key) const;
    int get_int(const std::string& key) const;
    long get_long(const std::string& key) const;
    cplx get_cplx(const std::string& key) const;
    double get_double(const std::string& key) const;
    void set(const std::string& key, std::string value) { kv[key] = std::move(value); }
};

struct IdentityInstance {
    std::string name;
    Params params;
    // canonical form "name:k1=v1,k2=v2" with a fixed key order
    std::string id() const;
};

// parse "name" or "name:k=v,k=v"
IdentityInstance parse_instance(const std::string& text);

// registry introspection
const std::vector<std::string>& registry_names();
bool is_registered(const std::string& name);
bool is_diagnostic(const std::string& name);
double default_tolerance(const std::string& name);
std::vector<IdentityInstance> default_instances(const std::string& name);

// Evaluate one identity instance. tol <= 0 selects the row default.
CheckReport verify_identity(const IdentityInstance& inst, double tol = 0.0);

struct SuiteReport {
    std::vector<CheckReport> checks;  // sorted by id
    long n_total = 0;
    long n_pass = 0;
    long n_fail = 0;     // non-diagnostic failures
    long n_flagged = 0;  // diagnostic failures
    std::map<std::string, double> worst_rel;  // per identity name
};

// Run the default grid for every row whose name contains one of the filter
// patterns (empty filter set = all rows). Checks may run in parallel; the
// report is aggregated in sorted-id order regardless of parallelism.
SuiteReport run_suite(const std::vector<std::string>& filters, double tol = 0.0,
                      int parallelism = 1);

// Best continued-fraction convergent with denominator <= max_den; returned
// only if |x - p/q| < 1e-9 max(1,|x|).
std::optional<fieldarith::Rational> rational_reconstruct(double x, long long max_den);

// shared field/constants caches (idempotent fills, concurrent readers)
const fieldarith::Field& field_cache(const std::string& label);
const zetalab::ZetaConstants& constants_cache(const fieldarith::Field& field);

}  // namespace drl::verify

#endif
