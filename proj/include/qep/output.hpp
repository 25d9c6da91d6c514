#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "qep/elemental.hpp"
#include "qep/prover.hpp"
#include "qep/refute.hpp"
#include "qep/shortest.hpp"

namespace qep {

inline constexpr int output_schema_version = 1;

/// Candidate vector input: either k comma-separated rationals in canonical
/// coordinate order, or assignments "S(A)=1,S(A,B)=1/2" (any coordinate not
/// listed is 0; assigning one twice is an error).
LinearForm parse_vector(std::string_view text, const SystemContext& context);

/// Document root: schema_version plus the canonical query echo, which
/// re-parses to the same coefficient vectors.
nlohmann::json document_skeleton(const Query& query);

/// "provable" / "not_provable".
std::string status_name(ProofStatus status);

/// {"y": [{"row": description, "coeff": "p/q"}...], "mu": [...]}.
nlohmann::json certificate_json(const ProofCertificate& cert);

/// {"tight_equalities": [...], "bounds": text, "optimal_value": "p/q", ...}.
nlohmann::json hints_json(const HintReport& report);

/// The ray's coordinates as an array of rational strings.
nlohmann::json ray_json(const ViolatingRay& ray);

nlohmann::json check_json(const CheckResult& result);

/// One entry per row: kind, description, and the coefficient vector.
nlohmann::json elemental_json(const ElementalSystem& system);

}  // namespace qep
