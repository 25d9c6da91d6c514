#pragma once

#include <vector>

#include "qep/lp.hpp"

namespace qep::detail {

// min 1.y + 1.t over stacked variables (y, mu, t) subject to
// y . G - mu . Q = rhs and -t <= mu <= t; y and t nonnegative, mu free.
inline LpProblem l1_multiplier_program(const RMatrix& g, const RMatrix& q,
                                       const RVector& rhs) {
    const Index m = g.rows();
    const Index nq = q.rows();

    RVector objective = RVector::Zero(m + 2 * nq);
    objective.head(m).setOnes();
    objective.tail(nq).setOnes();
    std::vector<VariableDomain> domains(static_cast<std::size_t>(m + 2 * nq),
                                        VariableDomain::nonnegative);
    for (Index t = 0; t < nq; ++t)
        domains[static_cast<std::size_t>(m + t)] = VariableDomain::free;
    LpProblem lp(std::move(objective), std::move(domains));

    for (Index c = 0; c < rhs.size(); ++c) {
        RVector row = RVector::Zero(m + 2 * nq);
        row.head(m) = g.col(c);
        row.segment(m, nq) = -q.col(c);
        lp.add_row(std::move(row), RowRelation::equal, rhs(c));
    }
    for (Index t = 0; t < nq; ++t) {
        RVector upper = RVector::Zero(m + 2 * nq);
        upper(m + t) = 1;
        upper(m + nq + t) = -1;
        lp.add_row(std::move(upper), RowRelation::less_equal, 0);
        RVector lower = RVector::Zero(m + 2 * nq);
        lower(m + t) = 1;
        lower(m + nq + t) = 1;
        lp.add_row(std::move(lower), RowRelation::greater_equal, 0);
    }
    return lp;
}

}  // namespace qep::detail
