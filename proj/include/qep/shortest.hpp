#pragma once

#include "qep/prover.hpp"

namespace qep {

/// Raised by shortest_proof on an unprovable query: the multiplier system
/// is infeasible, so there is no proof to shorten.
struct NotProvableError : Error {
    using Error::Error;
};

/// A certificate that is l1-minimal: no valid certificate has smaller
/// 1.y + sum |mu|. The nonzero count is reported as a proxy for proof
/// length; l1 minimality does not guarantee the fewest possible terms.
struct ShortestProofResult {
    ProofCertificate certificate;
    Rational l1_weight;
    Index term_count;
};

/// Solves min 1.y + 1.t subject to y . G - mu . Q = b, -t <= mu <= t with
/// y, t >= 0 (t linearizes |mu|; without constraints this is plain
/// min 1.y over y . G = b, y >= 0). The certificate is re-verified before
/// return. Throws NotProvableError when the system is infeasible.
ShortestProofResult shortest_proof(
    const Query& query, const SolveOptions& options = default_solve_options());

}  // namespace qep
