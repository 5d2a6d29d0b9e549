#pragma once

#include "ringelect/bounds.hpp"
#include "ringelect/config.hpp"
#include "ringelect/scenarios.hpp"
#include "ringelect/simulator.hpp"

#include "json.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ringelect {

/// Malformed scenario text. `line` is 1-based, 0 when not tied to a position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::string field = {});

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

struct Scenario {
    RingConfig config;
    std::optional<BigInt> declared_s;
};

/// Scenario JSON:
///   {"names": [...], "tick_len": [...], "link_delay": [...],
///    "wake": [{"pos": p, "time": t}, ...],
///    "policy": {"kind": "power2" | "relative"
///               | "scaled", "rho_num": a, "rho_den": b
///               | "table", "map": {"<name>": ticks, ...}},
///    "declared_s": s}                      // optional
/// Integers may be JSON numbers or decimal strings. Throws ParseError for
/// malformed input and ConfigError when the ring fails validation.
Scenario parse_scenario(const std::string& text);

nlohmann::json scenario_to_json(const Scenario& scenario);

/// FNV-1a 64 over the compact canonical scenario JSON, as "fnv1a64:<16 hex>".
std::string scenario_digest(const Scenario& scenario);

nlohmann::json bigint_to_json(const BigInt& v);
BigInt bigint_from_json(const nlohmann::json& j, const std::string& field);

/// {"exact": "num/den", "decimal": "x.xxxxxx"}
nlohmann::json rational_to_json(const Rational& r);

nlohmann::json outcome_to_json(const Outcome& outcome);
nlohmann::json bound_report_to_json(const BoundReport& report);

/// Bound-satisfaction flags for one outcome against its report.
nlohmann::json bound_checks(const RingConfig& config, const Outcome& outcome, const BoundReport& report);

/// One run: digest, seed, embedded scenario, outcome, bounds and checks.
nlohmann::json make_result_record(const Scenario& scenario, std::optional<std::uint64_t> seed, const Outcome& outcome);

/// Re-runs the scenario embedded in a record; true when every counter matches.
bool verify_record(const nlohmann::json& record, std::string& mismatch);

inline constexpr const char* kAverageCsvHeader =
    "trial,seed,n,winner,election_passes,total_passes,bits,eq5_bound,eq5_decimal,within_eq5";
inline constexpr const char* kCompareCsvHeader =
    "n,trials,mean_power2,mean_relative,mean_filter,mean_eq5,power2_per_n,relative_per_n,filter_per_n,"
    "mean_power2_exact,mean_relative_exact,mean_filter_exact,mean_eq5_exact";

std::string average_csv(const ExperimentStats& stats);
std::string compare_csv(const std::vector<CompareRow>& rows, std::size_t trials);

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitFault = 3;

/// Subcommands: simulate, adversary, average, compare, bounds, ringsize.
/// `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ringelect
