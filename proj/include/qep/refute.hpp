#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qep/lp.hpp"
#include "qep/parse.hpp"

namespace qep {

/// Raised when a refutation is requested for a provable query (the bounded
/// minimum is 0, so there is no violation to hint at).
struct NothingToRefute : Error {
    using Error::Error;
};

/// n x k single-party selector: row x picks out the coordinate S({x}), so
/// the box condition on candidate vectors reads W s <= 1.
RMatrix bound_matrix(const SystemContext& context);

/// Conditions every violating vector in the box must satisfy, extracted
/// from the duals of the bounded program: the generating rows with positive
/// multipliers hold with equality, all constraints hold, and single-party
/// entropies stay in the box with at least one strictly positive. Any
/// vector meeting all of them has b . s = -(lambda . W s) < 0.
struct HintReport {
    Rational optimal_value;
    std::vector<Index> tight_rows;
    std::vector<std::string> tight_equalities;
    std::vector<std::string> constraint_equalities;
    std::string bound_conditions;
    std::string predicted_violation;
    RVector lambda_star;
    std::optional<LinearForm> optimum;
};

/// Solves min b . s over {G s >= 0, Q s = 0, W s <= 1} (always finite) and
/// reads the hint system off the optimal duals. Throws NothingToRefute when
/// the minimum is 0, i.e. the query is provable.
HintReport hints(const Query& query,
                 const SolveOptions& options = default_solve_options());

/// Exact evaluation of one candidate vector against a hint report.
struct CheckResult {
    bool in_cone;
    bool equalities_hold;
    bool constraints_hold;
    bool bounds_hold;
    Rational value;
    bool confirmed;
};

/// Checks G s >= 0, the report's tight equalities, Q s = 0, and the box
/// condition; `confirmed` iff all hold and b . s < 0.
CheckResult check_vector(const Query& query, const LinearForm& s,
                         const HintReport& report);

/// Re-solves for the l1-smallest multipliers compatible with the given
/// lambda (min 1.y + 1.t with y . G - mu . Q = b + lambda . W and
/// -t <= mu <= t), yielding a hint report with a typically shorter
/// tight-equality list. Throws NothingToRefute for lambda = 0 and Error if
/// lambda is inconsistent (no multipliers exist).
HintReport shortest_hints(const Query& query, const RVector& lambda_star,
                          const SolveOptions& options = default_solve_options());

}  // namespace qep
