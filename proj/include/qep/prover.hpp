#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qep/elemental.hpp"
#include "qep/lp.hpp"
#include "qep/parse.hpp"

namespace qep {

/// One rendered line of a proof: `coeff` copies of the generating
/// inequality (or constraint, for multiplier entries) named by
/// `description`.
struct CertificateTerm {
    Rational coeff;
    std::string description;
    bool is_constraint;
};

/// Conic proof b = y . G - mu . Q with y >= 0: adding up y_r copies of the
/// generating rows, shifted by mu_t copies of the constraint rows, yields
/// the queried inequality exactly.
struct ProofCertificate {
    RVector y;
    RVector mu;
    std::vector<CertificateTerm> terms;
};

/// A direction in the cone that the queried inequality fails on:
/// G s >= 0, Q s = 0 and b . s < 0, all exact.
struct ViolatingRay {
    LinearForm direction;
};

enum class ProofStatus { provable, not_provable };

/// Either a verified certificate or a verified violating ray, never both.
struct Verdict {
    ProofStatus status;
    std::optional<ProofCertificate> certificate;
    std::optional<ViolatingRay> ray;
};

/// Decides whether the query's inequality holds on the whole cone
/// {s : G s >= 0} intersected with the constraint subspace {Q s = 0}, by
/// solving the multiplier-existence system (find y >= 0, mu with
/// y . G - mu . Q = b). Feasible yields Provable with the multipliers;
/// infeasible yields NotProvable with the violating ray recovered from the
/// infeasibility certificate. Both payloads are re-verified before return.
/// Resource exhaustion propagates as LimitError, never as a verdict.
Verdict prove(const Query& query,
              const SolveOptions& options = default_solve_options());

/// Checks y >= 0 and y . G - mu . Q = b by direct multiplication against a
/// freshly generated system; independent of the LP engine.
bool verify_certificate(const Query& query, const ProofCertificate& cert);

/// Assembles the certificate with its rendered term list from raw
/// multipliers over an already generated system (zero entries omitted).
ProofCertificate make_certificate(const Query& query,
                                  const ElementalSystem& system, RVector y,
                                  RVector mu);

/// One line per nonzero entry, "coeff · [description]"; constraint lines
/// get a " using constraint" suffix. Empty string for the zero certificate.
std::string render_proof(const ProofCertificate& cert);

}  // namespace qep
