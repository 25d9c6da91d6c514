#include "qep/parse.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

namespace qep {

namespace {

enum class TokenKind {
    name,
    number,       // INT or DECIMAL text; exact value attached
    punctuation,  // one of + - * / ( ) , ; | and the relations >= <= =
    end,
};

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t position;
};

class Lexer {
public:
    explicit Lexer(std::string_view input) : input_(input) {}

    Token next() {
        while (pos_ < input_.size() &&
               std::isspace(static_cast<unsigned char>(input_[pos_])))
            ++pos_;
        if (pos_ >= input_.size()) return {TokenKind::end, "", pos_};

        const std::size_t start = pos_;
        const char c = input_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (pos_ < input_.size() && is_name_char(input_[pos_])) ++pos_;
            return {TokenKind::name, std::string(input_.substr(start, pos_ - start)),
                    start};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < input_.size() &&
                   std::isdigit(static_cast<unsigned char>(input_[pos_])))
                ++pos_;
            if (pos_ + 1 < input_.size() && input_[pos_] == '.' &&
                std::isdigit(static_cast<unsigned char>(input_[pos_ + 1]))) {
                ++pos_;
                while (pos_ < input_.size() &&
                       std::isdigit(static_cast<unsigned char>(input_[pos_])))
                    ++pos_;
            }
            return {TokenKind::number,
                    std::string(input_.substr(start, pos_ - start)), start};
        }
        if (c == '>' || c == '<') {
            if (pos_ + 1 >= input_.size() || input_[pos_ + 1] != '=')
                throw ParseError("unknown relation; expected \">=\", \"<=\" or \"=\"",
                                 start);
            pos_ += 2;
            return {TokenKind::punctuation,
                    std::string(input_.substr(start, 2)), start};
        }
        if (std::string_view("=+-*/(),;|").find(c) != std::string_view::npos) {
            ++pos_;
            return {TokenKind::punctuation, std::string(1, c), start};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }

private:
    static bool is_name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    std::string_view input_;
    std::size_t pos_ = 0;
};

// One parsed entropy quantity, still over party names.
struct Atom {
    enum class Kind { entropy, mutual };
    Kind kind;
    std::vector<std::string> first;   // S: arguments, I: left arguments
    std::vector<std::string> second;  // I only: right arguments
    std::vector<std::string> cond;    // conditioning list; may be empty
};

struct Term {
    Rational coeff;
    Atom atom;
};

struct ParsedQuery {
    std::vector<Term> terms;  // left side minus right side
    Relation relation;
    std::set<std::string> names;
};

class Parser {
public:
    explicit Parser(std::string_view input) : lexer_(input) { advance(); }

    ParsedQuery parse_query() {
        ParsedQuery out;
        auto lhs = parse_expr();
        out.relation = parse_relation();
        auto rhs = parse_expr();
        expect_end();

        const bool flip = out.relation == Relation::less_equal;
        for (auto& term : lhs) {
            if (flip) term.coeff = -term.coeff;
            out.terms.push_back(std::move(term));
        }
        for (auto& term : rhs) {
            if (!flip) term.coeff = -term.coeff;
            out.terms.push_back(std::move(term));
        }
        for (const auto& term : out.terms) {
            out.names.insert(term.atom.first.begin(), term.atom.first.end());
            out.names.insert(term.atom.second.begin(), term.atom.second.end());
            out.names.insert(term.atom.cond.begin(), term.atom.cond.end());
        }
        return out;
    }

private:
    void advance() { token_ = lexer_.next(); }

    bool at_punct(std::string_view text) const {
        return token_.kind == TokenKind::punctuation && token_.text == text;
    }

    void expect_punct(std::string_view text) {
        if (!at_punct(text))
            throw ParseError("expected \"" + std::string(text) + "\"",
                             token_.position);
        advance();
    }

    void expect_end() {
        if (token_.kind != TokenKind::end)
            throw ParseError("unexpected trailing input", token_.position);
    }

    Relation parse_relation() {
        if (at_punct(">=")) { advance(); return Relation::greater_equal; }
        if (at_punct("<=")) { advance(); return Relation::less_equal; }
        if (at_punct("=")) { advance(); return Relation::equal; }
        throw ParseError("expected a relation (\">=\", \"<=\" or \"=\")",
                         token_.position);
    }

    std::vector<Term> parse_expr() {
        std::vector<Term> terms;
        Rational sign = 1;
        if (at_punct("-")) { sign = -1; advance(); }
        parse_term(terms, sign);
        while (at_punct("+") || at_punct("-")) {
            sign = at_punct("+") ? 1 : -1;
            advance();
            parse_term(terms, sign);
        }
        return terms;
    }

    void parse_term(std::vector<Term>& terms, const Rational& sign) {
        if (token_.kind == TokenKind::number) {
            const std::size_t coeff_pos = token_.position;
            Rational coeff = parse_coeff();
            if (at_punct("*")) advance();
            if (at_atom_start()) {
                terms.push_back({sign * coeff, parse_atom()});
                return;
            }
            // A bare constant contributes nothing when zero and is rejected
            // otherwise: the theory is homogeneous.
            if (coeff != 0)
                throw ParseError(
                    "constant term is not allowed in a homogeneous inequality",
                    coeff_pos);
            return;
        }
        terms.push_back({sign, parse_atom()});
    }

    Rational parse_coeff() {
        auto value = rational_from_string(token_.text);
        if (!value)
            throw ParseError("malformed number", token_.position);
        advance();
        if (at_punct("/")) {
            advance();
            if (token_.kind != TokenKind::number ||
                token_.text.find('.') != std::string::npos)
                throw ParseError("expected an integer denominator", token_.position);
            Rational den{token_.text};
            if (den == 0)
                throw ParseError("zero denominator", token_.position);
            advance();
            return *value / den;
        }
        return *value;
    }

    bool at_atom_start() const {
        return token_.kind == TokenKind::name &&
               (token_.text == "S" || token_.text == "I");
    }

    Atom parse_atom() {
        if (token_.kind != TokenKind::name)
            throw ParseError("expected an entropy term S(...) or I(...)",
                             token_.position);
        if (token_.text != "S" && token_.text != "I")
            throw ParseError("unknown quantity \"" + token_.text +
                             "\"; expected S(...) or I(...)",
                             token_.position);
        Atom atom;
        atom.kind = token_.text == "S" ? Atom::Kind::entropy : Atom::Kind::mutual;
        advance();
        expect_punct("(");
        atom.first = parse_list();
        if (atom.kind == Atom::Kind::mutual) {
            expect_punct(";");
            atom.second = parse_list();
        }
        if (at_punct("|")) {
            advance();
            atom.cond = parse_list();
        }
        expect_punct(")");
        return atom;
    }

    std::vector<std::string> parse_list() {
        std::vector<std::string> names;
        while (true) {
            if (token_.kind != TokenKind::name)
                throw ParseError("expected a party name", token_.position);
            names.push_back(token_.text);
            advance();
            if (!at_punct(",")) break;
            advance();
        }
        return names;
    }

    Lexer lexer_;
    Token token_;
};

std::uint32_t mask_of(const SystemContext& ctx,
                      const std::vector<std::string>& names) {
    std::uint32_t mask = 0;
    for (const auto& name : names) {
        auto index = ctx.party_index(name);
        if (!index)
            throw ContextError("party \"" + name + "\" is not in the context");
        mask |= std::uint32_t{1} << *index;
    }
    return mask;
}

LinearForm resolve(const ParsedQuery& query, const SystemContext& ctx) {
    LinearForm form(ctx);
    for (const auto& term : query.terms) {
        const Atom& atom = term.atom;
        const std::uint32_t cond = mask_of(ctx, atom.cond);
        if (atom.kind == Atom::Kind::entropy) {
            const std::uint32_t args = mask_of(ctx, atom.first);
            form.add_term(SubsetId(args | cond), term.coeff);
            if (cond) form.add_term(SubsetId(cond), -term.coeff);
        } else {
            const std::uint32_t x = mask_of(ctx, atom.first) | cond;
            const std::uint32_t y = mask_of(ctx, atom.second) | cond;
            form.add_term(SubsetId(x), term.coeff);
            form.add_term(SubsetId(y), term.coeff);
            form.add_term(SubsetId(x | y), -term.coeff);
            if (cond) form.add_term(SubsetId(cond), -term.coeff);
        }
    }
    return form;
}

ParsedQuery parse_checked(std::string_view text, bool as_constraint) {
    ParsedQuery query = Parser(text).parse_query();
    if (as_constraint && query.relation != Relation::equal)
        throw ParseError("a constraint must use \"=\"", 0);
    if (!as_constraint && query.relation == Relation::equal)
        throw ParseError("an inequality must use \">=\" or \"<=\"", 0);
    return query;
}

SystemContext inferred_context(const std::set<std::string>& names,
                               int max_parties) {
    return SystemContext(std::vector<std::string>(names.begin(), names.end()),
                         max_parties);
}

std::string format_term(const Rational& magnitude, const std::string& name) {
    if (magnitude == 1) return name;
    return to_string(magnitude) + " " + name;
}

}  // namespace

std::vector<std::string> mentioned_parties(std::string_view text) {
    ParsedQuery query = Parser(text).parse_query();
    return {query.names.begin(), query.names.end()};
}

LinearForm parse_inequality(std::string_view text, const SystemContext& ctx) {
    return resolve(parse_checked(text, false), ctx);
}

LinearForm parse_inequality(std::string_view text, int max_parties) {
    ParsedQuery query = parse_checked(text, false);
    return resolve(query, inferred_context(query.names, max_parties));
}

LinearForm parse_constraint(std::string_view text, const SystemContext& ctx) {
    return resolve(parse_checked(text, true), ctx);
}

LinearForm parse_constraint(std::string_view text, int max_parties) {
    ParsedQuery query = parse_checked(text, true);
    return resolve(query, inferred_context(query.names, max_parties));
}

std::string render_expression(const LinearForm& form) {
    const SystemContext& ctx = form.context();
    std::string out;
    for (Index c = 0; c < form.size(); ++c) {
        const Rational& coeff = form[c];
        if (coeff == 0) continue;
        const std::string atom =
            "S(" + ctx.subset_name(SubsetId(static_cast<std::uint32_t>(c) + 1)) +
            ")";
        if (out.empty())
            out = (coeff < 0 ? "-" : "") + format_term(abs(coeff), atom);
        else
            out += (coeff < 0 ? " - " : " + ") + format_term(abs(coeff), atom);
    }
    return out.empty() ? "0" : out;
}

std::string render(const LinearForm& form) {
    return render_expression(form) + " >= 0";
}

std::string render_constraint(const LinearForm& form) {
    return render_expression(form) + " = 0";
}

std::string render_balanced_equality(const LinearForm& form) {
    const SystemContext& ctx = form.context();
    std::string lhs, rhs;
    for (Index c = 0; c < form.size(); ++c) {
        const Rational& coeff = form[c];
        if (coeff == 0) continue;
        const std::string atom =
            "S(" + ctx.subset_name(SubsetId(static_cast<std::uint32_t>(c) + 1)) +
            ")";
        std::string& side = coeff > 0 ? lhs : rhs;
        if (!side.empty()) side += " + ";
        side += format_term(abs(coeff), atom);
    }
    if (lhs.empty()) lhs = "0";
    if (rhs.empty()) rhs = "0";
    return lhs + " = " + rhs;
}

Query Query::parse(std::string_view inequality_text,
                   std::span<const std::string> constraint_texts,
                   std::span<const std::string> extra_parties, int max_parties) {
    ParsedQuery inequality = parse_checked(inequality_text, false);
    std::vector<ParsedQuery> constraints;
    constraints.reserve(constraint_texts.size());
    for (const auto& text : constraint_texts)
        constraints.push_back(parse_checked(text, true));

    std::set<std::string> names = inequality.names;
    for (const auto& constraint : constraints)
        names.insert(constraint.names.begin(), constraint.names.end());
    names.insert(extra_parties.begin(), extra_parties.end());

    SystemContext ctx = inferred_context(names, max_parties);
    Query query{ctx, resolve(inequality, ctx), {}};
    query.constraints.reserve(constraints.size());
    for (const auto& constraint : constraints)
        query.constraints.push_back(resolve(constraint, ctx));
    return query;
}

RMatrix constraint_matrix(const Query& query) {
    RMatrix out(static_cast<Index>(query.constraints.size()),
                query.context.coordinate_count());
    for (Index r = 0; r < out.rows(); ++r)
        out.row(r) =
            query.constraints[static_cast<std::size_t>(r)].coeffs().transpose();
    return out;
}

}  // namespace qep
