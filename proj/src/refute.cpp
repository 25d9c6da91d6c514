#include "qep/refute.hpp"

#include <utility>

#include "multiplier_lp.hpp"
#include "qep/elemental.hpp"

namespace qep {

namespace {

std::string bound_text(const SystemContext& ctx) {
    std::string names;
    for (int i = 0; i < ctx.party_count(); ++i) {
        if (!names.empty()) names += ", ";
        names += "S(" + ctx.party_name(i) + ")";
    }
    return names + " <= 1 with at least one strictly positive";
}

std::string violation_text(const SystemContext& ctx, const RMatrix& w,
                           const RVector& lambda) {
    const LinearForm weighted(ctx, w.transpose() * lambda);
    return "b . s = -(" + render_expression(weighted) + ")";
}

// Shared tail of hints() and shortest_hints(): render the report from the
// generating-row multipliers and lambda.
HintReport assemble_report(const Query& query, const ElementalSystem& system,
                           const RVector& y, const RVector& lambda,
                           std::optional<LinearForm> optimum) {
    const SystemContext& ctx = query.context;
    const RMatrix w = bound_matrix(ctx);
    HintReport report;
    report.optimal_value = -lambda.sum();
    for (Index r = 0; r < y.size(); ++r) {
        if (y(r) == 0) continue;
        report.tight_rows.push_back(r);
        report.tight_equalities.push_back(render_balanced_equality(
            system.rows()[static_cast<std::size_t>(r)].form));
    }
    for (const LinearForm& row : query.constraints)
        report.constraint_equalities.push_back(render_balanced_equality(row));
    report.bound_conditions = bound_text(ctx);
    report.predicted_violation = violation_text(ctx, w, lambda);
    report.lambda_star = lambda;
    report.optimum = std::move(optimum);
    return report;
}

}  // namespace

RMatrix bound_matrix(const SystemContext& ctx) {
    RMatrix w = RMatrix::Zero(ctx.party_count(), ctx.coordinate_count());
    for (int x = 0; x < ctx.party_count(); ++x)
        w(x, SubsetId(std::uint32_t{1} << x).coordinate()) = 1;
    return w;
}

HintReport hints(const Query& query, const SolveOptions& options) {
    const SystemContext& ctx = query.context;
    const ElementalSystem system = generate_elemental(ctx);
    const RMatrix& g = system.matrix();
    const RMatrix q = constraint_matrix(query);
    const RMatrix w = bound_matrix(ctx);
    const Index m = g.rows(), nq = q.rows(), n = w.rows();

    LpProblem lp(query.inequality.coeffs(), VariableDomain::free);
    for (Index r = 0; r < m; ++r)
        lp.add_row(g.row(r).transpose(), RowRelation::greater_equal, 0);
    for (Index t = 0; t < nq; ++t)
        lp.add_row(q.row(t).transpose(), RowRelation::equal, 0);
    for (Index x = 0; x < n; ++x)
        lp.add_row(w.row(x).transpose(), RowRelation::less_equal, 1);

    const LpOutcome outcome = solve(lp, options);
    if (outcome.status != LpStatus::optimal)
        throw InternalError("the boxed program is bounded and feasible");
    if (outcome.value == 0)
        throw NothingToRefute(
            "the inequality is provable; nothing to refute");
    if (outcome.value > 0)
        throw InternalError("boxed minimum cannot exceed the value at s = 0");

    const RVector y = outcome.duals.head(m);
    const RVector lambda = -outcome.duals.tail(n);
    if (outcome.value != -lambda.sum())
        throw InternalError("boxed optimum does not match its dual value");

    LinearForm optimum(ctx, outcome.primal);
    // Positive multipliers force their rows tight at the optimum; anything
    // else means the solver returned an invalid dual pair.
    for (Index r = 0; r < m; ++r)
        if (y(r) != 0 && g.row(r).dot(outcome.primal) != 0)
            throw InternalError("slack row carries a positive multiplier");

    return assemble_report(query, system, y, lambda, std::move(optimum));
}

CheckResult check_vector(const Query& query, const LinearForm& s,
                         const HintReport& report) {
    const SystemContext& ctx = query.context;
    if (s.context() != ctx)
        throw ContextError("candidate vector belongs to a different party system");
    const ElementalSystem system = generate_elemental(ctx);
    const RMatrix& g = system.matrix();
    const RVector& v = s.coeffs();

    CheckResult result;
    result.in_cone = true;
    for (Index r = 0; r < g.rows(); ++r)
        if (g.row(r).dot(v) < 0) result.in_cone = false;

    result.equalities_hold = true;
    for (Index r : report.tight_rows)
        if (g.row(r).dot(v) != 0) result.equalities_hold = false;

    result.constraints_hold = true;
    for (const LinearForm& row : query.constraints)
        if (eval(row, s) != 0) result.constraints_hold = false;

    bool some_positive = false;
    bool all_bounded = true;
    for (int x = 0; x < ctx.party_count(); ++x) {
        const Rational& sx = s.coeff(SubsetId(std::uint32_t{1} << x));
        if (sx > 0) some_positive = true;
        if (sx > 1) all_bounded = false;
    }
    result.bounds_hold = some_positive && all_bounded;

    result.value = eval(query.inequality, s);
    result.confirmed = result.in_cone && result.equalities_hold &&
                       result.constraints_hold && result.bounds_hold &&
                       result.value < 0;
    return result;
}

HintReport shortest_hints(const Query& query, const RVector& lambda_star,
                          const SolveOptions& options) {
    const SystemContext& ctx = query.context;
    const ElementalSystem system = generate_elemental(ctx);
    const RMatrix& g = system.matrix();
    const RMatrix q = constraint_matrix(query);
    const RMatrix w = bound_matrix(ctx);
    const Index m = g.rows();

    if (lambda_star.size() != w.rows())
        throw ContextError("lambda length does not match the party count");
    bool lambda_zero = true;
    for (Index x = 0; x < lambda_star.size(); ++x)
        if (lambda_star(x) != 0) lambda_zero = false;
    if (lambda_zero)
        throw NothingToRefute("lambda is zero; nothing to refute");

    const RVector rhs =
        query.inequality.coeffs() + w.transpose() * lambda_star;
    const LpOutcome outcome =
        solve(detail::l1_multiplier_program(g, q, rhs), options);
    if (outcome.status == LpStatus::infeasible)
        throw Error(
            "no multipliers fit this lambda; it does not come from a valid "
            "hint solve");
    if (outcome.status != LpStatus::optimal)
        throw InternalError("the l1 objective is bounded below by zero");

    return assemble_report(query, system, outcome.primal.head(m), lambda_star,
                           std::nullopt);
}

}  // namespace qep
