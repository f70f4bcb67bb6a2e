#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "entprod/production.hpp"
#include "entprod/test_function.hpp"

namespace entprod {

/// Raised for malformed or inconsistent scenario configuration. The message
/// names the offending field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CheckRecord {
    std::string check_id;
    std::string anchor;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double tolerance = 0.0;  ///< absolute bound on abs_err
    bool pass = false;
    std::string note;

    /// abs_err, rel_err and pass from lhs, rhs and tolerance.
    void settle();
    bool operator==(const CheckRecord&) const = default;
};

struct RunReport {
    std::string scenario;
    std::string config_hash;
    nlohmann::json spec;
    double wall_time_s = 0.0;
    std::vector<CheckRecord> checks;

    bool all_pass() const;
};

/// Parsed scenario: the problem instance plus everything the checks need.
struct Scenario {
    std::string name;
    Problem problem;
    std::vector<TestFunction> test_functions;
    std::vector<Entropy1D> entropies;
    std::vector<double> k_grid;
    std::vector<cplx> xi_grid;
    QuadratureSpec spec;
    nlohmann::json config;

    /// Riemann data when the field is an exact Burgers Riemann solution.
    bool riemann = false;
    double ul = 0.0, ur = 0.0, shock_speed = 0.0;
    bool rarefaction = false;
    /// Expectations drawn from the field mode (overridable in "expect").
    bool solution = true;
    int admissible = 1;  ///< 1 entropy solution, 0 not admissible, -1 unknown
    double fv_dx = 0.0;
};

std::vector<std::string> builtin_scenarios();
/// Full JSON config of a builtin; `seed` drives random_piecewise.
nlohmann::json builtin_config(const std::string& name, std::uint64_t seed = 1);

/// Validates and builds; throws ConfigError.
Scenario build_scenario(const nlohmann::json& config);

/// 64-bit FNV-1a of the canonical JSON dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& config);

RunReport run_scenario(const nlohmann::json& config, int jobs = 1);

nlohmann::json to_json(const RunReport& r);
RunReport report_from_json(const nlohmann::json& j);
/// Columns check_id,anchor,lhs,rhs,abs_err,rel_err,pass.
void write_report_csv(std::ostream& os, const RunReport& r);

/// Entropy from config: "u^2/2", "u^4", "cos", "id", "kruzkov:<c>", or an
/// object {"kind": ...}.
Entropy1D parse_entropy(const nlohmann::json& j, Interval working);

/// Seeded piecewise-constant field with 3-6 states and 2-4 straight,
/// non-crossing interfaces, plus a random piecewise-constant datum. Not a
/// solution in general.
Problem random_piecewise_problem(std::uint64_t seed, double t_end = 1.5);

/// int phi(t, s t) dt over the weight's time support.
double line_integral(const Weight& phi, double s, const QuadratureSpec& spec);

}  // namespace entprod
