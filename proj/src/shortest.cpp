#include "qep/shortest.hpp"

#include <utility>

#include "multiplier_lp.hpp"

namespace qep {

ShortestProofResult shortest_proof(const Query& query,
                                   const SolveOptions& options) {
    const ElementalSystem system = generate_elemental(query.context);
    const RMatrix q = constraint_matrix(query);
    const Index m = system.row_count();
    const Index nq = q.rows();

    const LpOutcome outcome =
        solve(detail::l1_multiplier_program(system.matrix(), q,
                                            query.inequality.coeffs()),
              options);
    if (outcome.status == LpStatus::infeasible)
        throw NotProvableError(
            "the inequality is not provable; there is no proof to shorten");
    if (outcome.status != LpStatus::optimal)
        throw InternalError("the l1 objective is bounded below by zero");

    ShortestProofResult result{
        make_certificate(query, system, outcome.primal.head(m),
                         outcome.primal.segment(m, nq)),
        outcome.value, 0};
    if (!verify_certificate(query, result.certificate))
        throw InternalError("shortest certificate failed verification");

    Rational weight = result.certificate.y.sum();
    for (Index t = 0; t < nq; ++t) weight += abs(result.certificate.mu(t));
    if (weight != result.l1_weight)
        throw InternalError("auxiliary variables did not settle at |mu|");
    for (Index r = 0; r < m; ++r)
        if (result.certificate.y(r) != 0) ++result.term_count;
    return result;
}

}  // namespace qep
