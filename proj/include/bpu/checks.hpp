#pragma once

// Named verification checks and their reports.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace bpu::checks {

inline constexpr int kSchemaVersion = 1;

// Invalid parameters or selection; maps to exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Caps {
    std::uint64_t steenrod_degree_p3 = 60;
    std::uint64_t steenrod_degree = 40;  // every other prime
    std::size_t group_order = 64;
    int chart_dim = 200;

    static constexpr std::uint64_t kSteenrodCeiling = 120;
    static constexpr std::size_t kGroupCeiling = 512;
    static constexpr int kChartCeiling = 400;

    std::uint64_t steenrod_cap(std::uint32_t p) const { return p == 3 ? steenrod_degree_p3 : steenrod_degree; }

    // "steenrod3=80,steenrod=50,group=128,chart=300"; throws UsageError on
    // unknown keys or values above the ceilings.
    void apply_overrides(const std::string& spec);
};

struct CheckParams {
    std::uint32_t p = 3;
    std::size_t n = 6;
    unsigned k = 0;
    std::optional<int> max_dim;
    std::uint64_t seed = 1;
    bool inject_adem_fault = false;
    Caps caps;
};

enum class Status { pass, fail, undetermined };

std::string status_name(Status s);

struct CheckResult {
    std::string check_id;
    nlohmann::ordered_json params;
    Status status = Status::fail;
    // A failing result always carries details["counterexample"].
    nlohmann::ordered_json details;
    double elapsed_ms = 0;
};

// All check ids in declaration order.
const std::vector<std::string>& check_ids();

// "all" expands to every check. Results follow declaration order whatever the
// selection order. Throws UsageError on unknown ids or out-of-cap parameters.
std::vector<CheckResult> run_checks(const std::vector<std::string>& selection, const CheckParams& params);

// 0 all pass, 1 any failure, 3 otherwise undetermined.
int exit_code(const std::vector<CheckResult>& results);

enum class Format { json, md };

// Throws UsageError on anything other than "json" or "md".
Format parse_format(const std::string& name);

// elapsed_ms appears only when timings is set, so reports are reproducible.
std::string emit_report(const std::vector<CheckResult>& results, Format format, bool timings = false);

inline constexpr int kChartSchemaVersion = 1;

// Per-dimension mod-p ranks, basis labels and integral groups of the chart
// through max_dim. Throws UsageError on a bad prime or a dimension outside
// [3, caps.chart_dim].
std::string emit_chart(std::uint32_t p, int max_dim, Format format, const Caps& caps = {});

}  // namespace bpu::checks
