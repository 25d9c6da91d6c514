#pragma once

#include <vector>

#include "qep/types.hpp"

namespace qep {

enum class RowRelation { greater_equal, less_equal, equal };
enum class VariableDomain { nonnegative, free };
enum class PivotRule { bland, lexicographic };
enum class LpStatus { optimal, unbounded, infeasible };

struct LpRow {
    RVector coeffs;
    RowRelation relation;
    Rational rhs;
};

/// min objective . x over the rows, with a per-variable domain (nonnegative
/// or free). Everything exact rational.
class LpProblem {
public:
    LpProblem(RVector objective, std::vector<VariableDomain> domains);

    /// All variables share one domain.
    LpProblem(RVector objective, VariableDomain domain);

    void add_row(RVector coeffs, RowRelation relation, Rational rhs);

    Index variable_count() const { return objective_.size(); }
    Index row_count() const { return static_cast<Index>(rows_.size()); }
    const RVector& objective() const { return objective_; }
    const std::vector<LpRow>& rows() const { return rows_; }
    const std::vector<VariableDomain>& domains() const { return domains_; }

private:
    RVector objective_;
    std::vector<VariableDomain> domains_;
    std::vector<LpRow> rows_;
};

/// A certified outcome. Populated fields by status:
///
///  - optimal: `value`, `primal`, `duals`. The duals carry one multiplier
///    per row with >=-rows >= 0, <=-rows <= 0, =-rows free; every
///    nonnegative variable has reduced cost c_j - duals . column_j >= 0 and
///    every free variable has it exactly 0; objective . primal = value =
///    duals . rhs.
///  - unbounded: `primal` (a feasible point) and `ray` (>=-rows
///    nondecreasing, <=-rows nonincreasing, =-rows constant, nonnegative
///    variables nondecreasing, objective . ray < 0).
///  - infeasible: `farkas`, multipliers following the row sign pattern
///    above whose combined row has coefficients <= 0 on nonnegative
///    variables and = 0 on free variables while farkas . rhs > 0, so no
///    point in the domain can satisfy all rows.
///
/// solve() verifies the returned certificate exactly before returning.
struct LpOutcome {
    LpStatus status;
    Rational value;
    RVector primal;
    RVector duals;
    RVector ray;
    RVector farkas;
};

struct SolveOptions {
    PivotRule pivot = PivotRule::bland;
    long max_pivots = 1'000'000;
};

/// Default options with the pivot cap taken from QEP_MAX_PIVOTS when the
/// variable is set to a positive integer.
SolveOptions default_solve_options();

/// Two-phase primal simplex on a dense rational tableau. Deterministic for
/// a fixed pivot rule; both rules are anti-cycling. Throws LimitError when
/// the pivot cap is hit and InternalError if a computed certificate fails
/// its own verification.
LpOutcome solve(const LpProblem& problem,
                const SolveOptions& options = default_solve_options());

/// Re-verifies the outcome's certificate from scratch with exact
/// arithmetic only; returns false on any violation or dimension mismatch
/// instead of throwing.
bool check_certificate(const LpProblem& problem, const LpOutcome& outcome);

}  // namespace qep
