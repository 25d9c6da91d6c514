#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qep/linear_form.hpp"

namespace qep {

/// Relation accepted between the two sides of a query.
enum class Relation { greater_equal, less_equal, equal };

/// Grammar, whitespace-insensitive:
///
///   query  := expr rel expr
///   rel    := ">=" | "<=" | "="
///   expr   := ["-"] term { ("+"|"-") term }
///   term   := [ coeff [ "*" ] ] atom
///   coeff  := INT | INT "/" INT | DECIMAL
///   atom   := "S(" list [ "|" list ] ")" | "I(" list ";" list [ "|" list ] ")"
///   list   := NAME { "," NAME }
///
/// NAME matches [A-Za-z][A-Za-z0-9_]*. A bare coefficient with value zero is
/// additionally accepted as a vacuous term ("I(A;B) = 0", "0 >= 0"); any
/// other constant term is rejected as inhomogeneous. Entropy arguments are
/// sets: duplicate names collapse. Expansions:
///
///   S(X|Y)    = S(X u Y) - S(Y)
///   I(X;Y)    = S(X) + S(Y) - S(X u Y)
///   I(X;Y|Z)  = S(X u Z) + S(Y u Z) - S(X u Y u Z) - S(Z)
///
/// "L >= R" parses to coeffs(L) - coeffs(R), "L <= R" to coeffs(R) -
/// coeffs(L), "L = R" to coeffs(L) - coeffs(R).

/// The party names mentioned in a query, sorted and deduplicated.
/// Validates the grammar along the way.
std::vector<std::string> mentioned_parties(std::string_view text);

/// Parses ">="/"<=" text over an explicit context (every mentioned party
/// must belong to it).
LinearForm parse_inequality(std::string_view text, const SystemContext& context);

/// Same, inferring the context from the names in the text.
LinearForm parse_inequality(std::string_view text,
                            int max_parties = SystemContext::default_max_parties);

/// Parses "L = R" to the constraint row (L - R), meaning (L - R) . s = 0.
LinearForm parse_constraint(std::string_view text, const SystemContext& context);
LinearForm parse_constraint(std::string_view text,
                            int max_parties = SystemContext::default_max_parties);

/// "1/2 S(A,B) - S(C)" -- canonical marginal-entropy expression, terms in
/// coordinate order; "0" for the zero form. Parses back to the same
/// coefficients.
std::string render_expression(const LinearForm& form);

/// render_expression + " >= 0".
std::string render(const LinearForm& form);

/// render_expression + " = 0".
std::string render_constraint(const LinearForm& form);

/// Equality with positive terms on each side: the row S(A,C) - S(A) - S(C)
/// renders as "S(A,C) = S(A) + S(C)".
std::string render_balanced_equality(const LinearForm& form);

/// A full decision problem: one inequality b . s >= 0 and q constraint rows
/// Q s = 0, all over one context.
struct Query {
    SystemContext context;
    LinearForm inequality;
    std::vector<LinearForm> constraints;

    /// Parses the inequality and constraints over the union of all mentioned
    /// parties plus `extra_parties`.
    static Query parse(std::string_view inequality_text,
                       std::span<const std::string> constraint_texts = {},
                       std::span<const std::string> extra_parties = {},
                       int max_parties = SystemContext::default_max_parties);
};

/// q x k matrix of the constraint rows (0 x k when there are none).
RMatrix constraint_matrix(const Query& query);

}  // namespace qep
