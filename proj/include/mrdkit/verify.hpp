#ifndef MRDKIT_VERIFY_HPP
#define MRDKIT_VERIFY_HPP

// The machine-checked theorem suite behind `mrdkit verify-theorems`: one
// entry per verified statement, each carrying a self-contained claim string,
// a pass/fail/skipped status and an optional witness. Reports render to
// aligned text or JSON; canonical mode drops elapsed times so identical
// invocations are byte-identical.

#include <optional>
#include <string>
#include <vector>

#include "mrdkit/selfdual.hpp"

namespace mrdkit {

enum class CheckStatus { pass, fail, skipped };

struct CheckResult {
    std::string name;
    std::string claim;
    CheckStatus status = CheckStatus::skipped;
    std::string detail;  // witness on pass/fail, reason on skipped
    double elapsed_ms = 0.0;
};

struct Report {
    std::string command;
    std::string ctx_summary;
    std::vector<CheckResult> checks;

    bool all_ok() const;  // no fail entries (skips never mask failures)
    int fail_count() const;
    int skip_count() const;
};

// Runs every verifier applicable to (ctx, ell): basis/base-change identities,
// the cyclic-algebra structure, the symmetry/determinant laws for T, A, S,
// the automorphism generators and order, the dual-code sandwich form, the
// self-dual criteria and the 2x2 classification. Inapplicable checks are
// reported as skipped with the gating reason.
Report run_theorem_suite(std::shared_ptr<const FieldCtx> ctx, std::optional<unsigned> ell,
                         const WorkBudget& budget = {});

// Grows the zero code in k^{m x n} to a self-orthogonal code of the requested
// dimension by drawing seeded-random vectors from the current dual and keeping
// the isotropic ones. nullopt when scan_cap draws fail at some step.
std::optional<RankMetricCode> self_orthogonal_code(const FieldCtx& ctx, int m, int n, int target_dim,
                                                   u64 seed, u64 scan_cap);

std::string render_text(const Report& r, bool canonical);
std::string render_json(const Report& r, bool canonical);

}  // namespace mrdkit

#endif
