#include "qep/output.hpp"

#include <cctype>

namespace qep {

namespace {

struct Piece {
    std::string text;
    std::size_t position;
};

// Splits on commas that sit outside parentheses, trimming whitespace and
// remembering source offsets for error messages.
std::vector<Piece> split_top_level(std::string_view text) {
    std::vector<Piece> out;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i < text.size()) {
            if (text[i] == '(') ++depth;
            if (text[i] == ')') --depth;
            if (text[i] != ',' || depth != 0) continue;
        }
        std::size_t a = start, b = i;
        while (a < b && std::isspace(static_cast<unsigned char>(text[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(text[b - 1])))
            --b;
        out.push_back({std::string(text.substr(a, b - a)), a});
        start = i + 1;
    }
    return out;
}

// "S(A,B)" -> subset mask over ctx.
std::uint32_t parse_subset(const Piece& piece, std::string_view text,
                           const SystemContext& ctx) {
    if (text.size() < 4 || text.substr(0, 2) != "S(" || text.back() != ')')
        throw ParseError("expected an assignment like S(A,B)=1", piece.position);
    std::uint32_t mask = 0;
    for (const Piece& name : split_top_level(text.substr(2, text.size() - 3))) {
        auto index = ctx.party_index(name.text);
        if (!index)
            throw ContextError("party \"" + name.text +
                               "\" is not in the context");
        mask |= std::uint32_t{1} << *index;
    }
    if (mask == 0)
        throw ParseError("empty subset in assignment", piece.position);
    return mask;
}

nlohmann::json terms_json(const std::vector<CertificateTerm>& terms,
                          bool constraints) {
    nlohmann::json out = nlohmann::json::array();
    for (const CertificateTerm& term : terms) {
        if (term.is_constraint != constraints) continue;
        out.push_back({{"row", term.description},
                       {"coeff", to_string(term.coeff)}});
    }
    return out;
}

}  // namespace

LinearForm parse_vector(std::string_view text, const SystemContext& ctx) {
    const std::vector<Piece> parts = split_top_level(text);
    LinearForm s(ctx);

    if (text.find('=') != std::string_view::npos) {
        std::vector<bool> assigned(
            static_cast<std::size_t>(ctx.coordinate_count()), false);
        for (const Piece& part : parts) {
            const std::size_t eq = part.text.find('=');
            if (eq == std::string::npos)
                throw ParseError("assignment is missing \"=\"", part.position);
            std::string lhs = part.text.substr(0, eq);
            while (!lhs.empty() &&
                   std::isspace(static_cast<unsigned char>(lhs.back())))
                lhs.pop_back();
            std::string rhs = part.text.substr(eq + 1);
            std::erase_if(rhs, [](unsigned char c) { return std::isspace(c); });

            const SubsetId subset(parse_subset(part, lhs, ctx));
            auto value = rational_from_string(rhs);
            if (!value)
                throw ParseError("malformed value \"" + rhs + "\"",
                                 part.position);
            const auto coord =
                static_cast<std::size_t>(coordinate_of(ctx, subset));
            if (assigned[coord])
                throw ParseError("coordinate S(" + ctx.subset_name(subset) +
                                     ") assigned twice",
                                 part.position);
            assigned[coord] = true;
            s.set_coeff(subset, std::move(*value));
        }
        return s;
    }

    if (static_cast<Index>(parts.size()) != ctx.coordinate_count())
        throw ContextError("expected " +
                           std::to_string(ctx.coordinate_count()) +
                           " coordinates, got " + std::to_string(parts.size()));
    RVector coeffs(ctx.coordinate_count());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        auto value = rational_from_string(parts[i].text);
        if (!value)
            throw ParseError("malformed coordinate \"" + parts[i].text + "\"",
                             parts[i].position);
        coeffs(static_cast<Index>(i)) = std::move(*value);
    }
    return LinearForm(ctx, std::move(coeffs));
}

nlohmann::json document_skeleton(const Query& query) {
    nlohmann::json constraints = nlohmann::json::array();
    for (const LinearForm& row : query.constraints)
        constraints.push_back(render_constraint(row));
    return {{"schema_version", output_schema_version},
            {"query",
             {{"parties", query.context.parties()},
              {"inequality", render(query.inequality)},
              {"constraints", std::move(constraints)}}}};
}

std::string status_name(ProofStatus status) {
    return status == ProofStatus::provable ? "provable" : "not_provable";
}

nlohmann::json certificate_json(const ProofCertificate& cert) {
    return {{"y", terms_json(cert.terms, false)},
            {"mu", terms_json(cert.terms, true)}};
}

nlohmann::json hints_json(const HintReport& report) {
    nlohmann::json lambda = nlohmann::json::array();
    for (Index x = 0; x < report.lambda_star.size(); ++x)
        lambda.push_back(to_string(report.lambda_star(x)));
    return {{"tight_equalities", report.tight_equalities},
            {"constraint_equalities", report.constraint_equalities},
            {"bounds", report.bound_conditions},
            {"optimal_value", to_string(report.optimal_value)},
            {"predicted_violation", report.predicted_violation},
            {"lambda", std::move(lambda)}};
}

nlohmann::json ray_json(const ViolatingRay& ray) {
    nlohmann::json out = nlohmann::json::array();
    for (Index c = 0; c < ray.direction.size(); ++c)
        out.push_back(to_string(ray.direction[c]));
    return out;
}

nlohmann::json check_json(const CheckResult& result) {
    return {{"in_cone", result.in_cone},
            {"equalities_hold", result.equalities_hold},
            {"constraints_hold", result.constraints_hold},
            {"bounds_hold", result.bounds_hold},
            {"value", to_string(result.value)},
            {"confirmed", result.confirmed}};
}

nlohmann::json elemental_json(const ElementalSystem& system) {
    nlohmann::json rows = nlohmann::json::array();
    for (const ElementalRow& row : system.rows()) {
        nlohmann::json coeffs = nlohmann::json::array();
        for (Index c = 0; c < row.form.size(); ++c)
            coeffs.push_back(to_string(row.form[c]));
        rows.push_back(
            {{"kind", row.kind == ElementalRow::Kind::ssa ? "ssa" : "wm"},
             {"description", describe_row(row)},
             {"coeffs", std::move(coeffs)}});
    }
    return {{"schema_version", output_schema_version},
            {"parties", system.context().parties()},
            {"rows", std::move(rows)}};
}

}  // namespace qep
