#include "qep/prover.hpp"

#include <utility>

namespace qep {

namespace {

// find y >= 0, mu free with y . G - mu . Q = b, as a zero-objective LP over
// the stacked variable vector (y, mu).
LpProblem multiplier_system(const RMatrix& g, const RMatrix& q,
                            const RVector& b) {
    const Index m = g.rows();
    const Index nq = q.rows();
    std::vector<VariableDomain> domains(static_cast<std::size_t>(m + nq),
                                        VariableDomain::nonnegative);
    for (Index t = 0; t < nq; ++t)
        domains[static_cast<std::size_t>(m + t)] = VariableDomain::free;
    LpProblem lp(RVector::Zero(m + nq), std::move(domains));
    for (Index c = 0; c < b.size(); ++c) {
        RVector row(m + nq);
        row.head(m) = g.col(c);
        row.tail(nq) = -q.col(c);
        lp.add_row(std::move(row), RowRelation::equal, b(c));
    }
    return lp;
}

}  // namespace

Verdict prove(const Query& query, const SolveOptions& options) {
    const ElementalSystem system = generate_elemental(query.context);
    const RMatrix q = constraint_matrix(query);
    const RVector& b = query.inequality.coeffs();
    const Index m = system.row_count();
    const Index nq = q.rows();

    const LpOutcome outcome = solve(multiplier_system(system.matrix(), q, b),
                                    options);
    if (outcome.status == LpStatus::optimal) {
        ProofCertificate cert = make_certificate(
            query, system, outcome.primal.head(m), outcome.primal.tail(nq));
        if (!verify_certificate(query, cert))
            throw InternalError("proof certificate failed verification");
        return {ProofStatus::provable, std::move(cert), std::nullopt};
    }
    if (outcome.status != LpStatus::infeasible)
        throw InternalError("zero-objective system cannot be unbounded");

    // The infeasibility multipliers f satisfy G f <= 0, Q f = 0 and
    // b . f > 0; their negation is the violating direction.
    LinearForm direction(query.context, -outcome.farkas);
    const RVector& s = direction.coeffs();
    for (Index r = 0; r < m; ++r)
        if (system.matrix().row(r).dot(s) < 0)
            throw InternalError("violating ray left the cone");
    for (Index t = 0; t < nq; ++t)
        if (q.row(t).dot(s) != 0)
            throw InternalError("violating ray violates a constraint");
    if (b.dot(s) >= 0)
        throw InternalError("violating ray does not violate the inequality");
    return {ProofStatus::not_provable, std::nullopt,
            ViolatingRay{std::move(direction)}};
}

ProofCertificate make_certificate(const Query& query,
                                  const ElementalSystem& system, RVector y,
                                  RVector mu) {
    ProofCertificate cert{std::move(y), std::move(mu), {}};
    for (Index r = 0; r < cert.y.size(); ++r)
        if (cert.y(r) != 0)
            cert.terms.push_back(
                {cert.y(r),
                 describe_row(system.rows()[static_cast<std::size_t>(r)]),
                 false});
    for (Index t = 0; t < cert.mu.size(); ++t)
        if (cert.mu(t) != 0)
            cert.terms.push_back(
                {cert.mu(t),
                 render_constraint(
                     query.constraints[static_cast<std::size_t>(t)]),
                 true});
    return cert;
}

bool verify_certificate(const Query& query, const ProofCertificate& cert) {
    const ElementalSystem system = generate_elemental(query.context);
    const RMatrix q = constraint_matrix(query);
    if (cert.y.size() != system.row_count()) return false;
    if (cert.mu.size() != q.rows()) return false;
    for (Index r = 0; r < cert.y.size(); ++r)
        if (cert.y(r) < 0) return false;
    RVector combined = system.matrix().transpose() * cert.y;
    if (cert.mu.size() > 0) combined -= q.transpose() * cert.mu;
    return combined == query.inequality.coeffs();
}

std::string render_proof(const ProofCertificate& cert) {
    std::string out;
    for (const CertificateTerm& term : cert.terms) {
        if (!out.empty()) out += '\n';
        out += to_string(term.coeff) + " · [" + term.description + "]";
        if (term.is_constraint) out += " using constraint";
    }
    return out;
}

}  // namespace qep
