#pragma once

// The finite checks behind the rank obstructions, grouped so that the CLI
// can run any subset and print one row per check.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace spaceform::paper_checks {

struct CheckRow {
    std::string group;
    std::string name;
    std::string anchor;
    bool pass = false;
    std::string detail;
};

struct CheckOptions {
    /// Upper end of the log-rank threshold sweep and the log-rank induction.
    std::int64_t n_max = 10'000;
    /// Upper end of the three-band quadratic sweep.
    std::int64_t ccs_n_max = 10'000;
    /// The large-n inequality is swept to max(n_max, scc5_floor).
    std::int64_t scc5_floor = 100'000;
    /// Groups of order up to this bound are audited element by element.
    std::uint64_t group_order_max = 10'000;
    /// Cap passed to every element enumeration.
    std::uint64_t max_group_order = 1'000'000;
    /// Empty runs everything.
    std::set<std::string> only;
};

/// steenrod, model, groups, rep, griesmer, codes, sweeps, engine.
const std::vector<std::string>& check_groups();

/// Rows in a fixed order. Throws std::invalid_argument on an unknown group
/// name or an out-of-range option.
std::vector<CheckRow> run_paper_checks(const CheckOptions& options);

}  // namespace spaceform::paper_checks
