#include <chrono>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qep/output.hpp"

namespace {

struct Options {
    std::string inequality;
    std::string vector_text;
    std::vector<std::string> constraints;
    std::string parties;
    int max_parties = qep::SystemContext::default_max_parties;
    std::string pivot = "bland";
    bool json = false;
    bool hints = false;
    bool short_hints = false;
    int n = 0;
};

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        if (comma == std::string::npos) comma = csv.size();
        const std::string name = csv.substr(start, comma - start);
        if (!name.empty()) out.push_back(name);
        start = comma + 1;
    }
    return out;
}

qep::Query parse_query(const Options& opt) {
    return qep::Query::parse(opt.inequality, opt.constraints,
                             split_names(opt.parties), opt.max_parties);
}

qep::SolveOptions solve_options(const Options& opt) {
    qep::SolveOptions options = qep::default_solve_options();
    options.pivot = opt.pivot == "lex" ? qep::PivotRule::lexicographic
                                       : qep::PivotRule::bland;
    return options;
}

class Timer {
public:
    long long elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ =
        std::chrono::steady_clock::now();
};

std::string assignments_text(const qep::LinearForm& s) {
    std::string out;
    for (qep::Index c = 0; c < s.size(); ++c) {
        if (s[c] == 0) continue;
        if (!out.empty()) out += ", ";
        out += "S(" +
               s.context().subset_name(
                   qep::SubsetId(static_cast<std::uint32_t>(c) + 1)) +
               ") = " + qep::to_string(s[c]);
    }
    return out.empty() ? "0" : out;
}

void print_hint_block(const qep::HintReport& report, const char* title) {
    std::cout << title << " (boxed optimum " << qep::to_string(report.optimal_value)
              << "):\n";
    for (const std::string& eq : report.tight_equalities)
        std::cout << "  " << eq << "\n";
    for (const std::string& eq : report.constraint_equalities)
        std::cout << "  " << eq << " (constraint)\n";
    std::cout << "  " << report.bound_conditions << "\n";
    std::cout << "  violation: " << report.predicted_violation << "\n";
}

int run_prove(const Options& opt) {
    const Timer timer;
    const qep::Query query = parse_query(opt);
    const qep::SolveOptions options = solve_options(opt);
    const qep::Verdict verdict = qep::prove(query, options);

    std::optional<qep::HintReport> hint_report, short_report;
    if (verdict.status == qep::ProofStatus::not_provable &&
        (opt.hints || opt.short_hints)) {
        hint_report = qep::hints(query, options);
        if (opt.short_hints)
            short_report =
                qep::shortest_hints(query, hint_report->lambda_star, options);
    }

    if (opt.json) {
        nlohmann::json doc = qep::document_skeleton(query);
        doc["status"] = qep::status_name(verdict.status);
        if (verdict.certificate)
            doc["certificate"] = qep::certificate_json(*verdict.certificate);
        if (verdict.ray) doc["ray"] = qep::ray_json(*verdict.ray);
        if (hint_report) doc["hints"] = qep::hints_json(*hint_report);
        if (short_report) doc["short_hints"] = qep::hints_json(*short_report);
        doc["timing"] = {{"total_ms", timer.elapsed_ms()}};
        std::cout << doc.dump(2) << "\n";
    } else if (verdict.status == qep::ProofStatus::provable) {
        std::cout << "Provable: " << qep::render(query.inequality) << "\n";
        const std::string proof = qep::render_proof(*verdict.certificate);
        if (proof.empty())
            std::cout << "The zero combination suffices: the left side is "
                         "identically 0.\n";
        else
            std::cout << proof << "\n";
    } else {
        std::cout << "Not provable by qep.\n";
        std::cout << "Violating direction: "
                  << assignments_text(verdict.ray->direction) << "\n";
        if (hint_report)
            print_hint_block(*hint_report, "Any counterexample satisfies");
        if (short_report)
            print_hint_block(*short_report, "Shortened hint system");
    }
    return verdict.status == qep::ProofStatus::provable ? 0 : 1;
}

int run_shortest(const Options& opt) {
    const Timer timer;
    const qep::Query query = parse_query(opt);
    try {
        const qep::ShortestProofResult result =
            qep::shortest_proof(query, solve_options(opt));
        if (opt.json) {
            nlohmann::json doc = qep::document_skeleton(query);
            doc["status"] = "provable";
            doc["certificate"] = qep::certificate_json(result.certificate);
            doc["l1_weight"] = qep::to_string(result.l1_weight);
            doc["term_count"] = result.term_count;
            doc["timing"] = {{"total_ms", timer.elapsed_ms()}};
            std::cout << doc.dump(2) << "\n";
        } else {
            std::cout << "Shortest proof (l1 weight "
                      << qep::to_string(result.l1_weight) << ", "
                      << result.term_count
                      << (result.term_count == 1 ? " term):\n" : " terms):\n");
            const std::string proof = qep::render_proof(result.certificate);
            if (proof.empty())
                std::cout << "The zero combination suffices: the left side "
                             "is identically 0.\n";
            else
                std::cout << proof << "\n";
        }
        return 0;
    } catch (const qep::NotProvableError&) {
        if (opt.json) {
            nlohmann::json doc = qep::document_skeleton(query);
            doc["status"] = "not_provable";
            doc["timing"] = {{"total_ms", timer.elapsed_ms()}};
            std::cout << doc.dump(2) << "\n";
        } else {
            std::cout << "Not provable by qep; there is no proof to shorten.\n";
        }
        return 1;
    }
}

int run_check(const Options& opt) {
    const Timer timer;
    const qep::Query query = parse_query(opt);
    const qep::LinearForm candidate =
        qep::parse_vector(opt.vector_text, query.context);
    const qep::SolveOptions options = solve_options(opt);

    const qep::Verdict verdict = qep::prove(query, options);
    qep::HintReport report;
    if (verdict.status == qep::ProofStatus::not_provable)
        report = qep::hints(query, options);
    const qep::CheckResult result = qep::check_vector(query, candidate, report);

    if (opt.json) {
        nlohmann::json doc = qep::document_skeleton(query);
        doc["status"] = result.confirmed ? "confirmed" : "not_confirmed";
        doc["check"] = qep::check_json(result);
        if (verdict.status == qep::ProofStatus::not_provable)
            doc["hints"] = qep::hints_json(report);
        doc["timing"] = {{"total_ms", timer.elapsed_ms()}};
        std::cout << doc.dump(2) << "\n";
    } else {
        if (verdict.status == qep::ProofStatus::provable)
            std::cout << "The inequality is provable; no violating vector "
                         "exists.\n";
        auto yesno = [](bool v) { return v ? "yes" : "no"; };
        std::cout << "in cone: " << yesno(result.in_cone) << "\n"
                  << "hint equalities hold: " << yesno(result.equalities_hold)
                  << "\n"
                  << "constraints hold: " << yesno(result.constraints_hold)
                  << "\n"
                  << "bounds hold: " << yesno(result.bounds_hold) << "\n"
                  << "value b . s = " << qep::to_string(result.value) << "\n"
                  << (result.confirmed
                          ? "Counterexample direction confirmed."
                          : "Not confirmed as a counterexample direction.")
                  << "\n";
    }
    return result.confirmed ? 0 : 1;
}

int run_elemental(const Options& opt) {
    std::vector<std::string> names;
    for (int i = 0; i < opt.n; ++i) {
        std::string name(1, static_cast<char>('A' + i % 26));
        if (i >= 26) name += std::to_string(i / 26);
        names.push_back(std::move(name));
    }
    const qep::SystemContext ctx(std::move(names), opt.max_parties);
    const qep::ElementalSystem system = qep::generate_elemental(ctx);

    if (opt.json) {
        std::cout << qep::elemental_json(system).dump(2) << "\n";
    } else {
        std::cout << system.row_count() << " elemental rows for n = " << opt.n
                  << ":\n";
        for (std::size_t i = 0; i < system.rows().size(); ++i) {
            const qep::ElementalRow& row = system.rows()[i];
            std::cout << i << ". " << qep::describe_row(row) << "  ["
                      << qep::render_expression(row.form) << "]\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prover and disprover for quantum information inequalities"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&opt](CLI::App* cmd, bool with_constraints = true) {
        if (with_constraints)
            cmd->add_option("-c,--constraint", opt.constraints,
                            "Equality constraint, e.g. \"I(A;C|B) = 0\"");
        cmd->add_option("--parties", opt.parties,
                        "Force the party roster (comma-separated names)");
        cmd->add_option("--max-parties", opt.max_parties,
                        "Party-count limit for context inference");
        cmd->add_option("--pivot", opt.pivot, "Simplex pivot rule")
            ->check(CLI::IsMember({"bland", "lex"}));
        cmd->add_flag("--json", opt.json, "Emit a JSON document");
    };

    CLI::App* prove = app.add_subcommand(
        "prove", "Decide whether an inequality holds for all quantum states");
    prove->add_option("inequality", opt.inequality, "e.g. \"I(A;C|B) >= 0\"")
        ->required();
    add_common(prove);
    prove->add_flag("--hints", opt.hints,
                    "On a negative verdict, derive counterexample hints");
    prove->add_flag("--short-hints", opt.short_hints,
                    "Also derive the l1-shortened hint system");

    CLI::App* shortest = app.add_subcommand(
        "shortest", "Compute the l1-minimal proof certificate");
    shortest->add_option("inequality", opt.inequality, "e.g. \"I(A;B) >= 0\"")
        ->required();
    add_common(shortest);

    CLI::App* check = app.add_subcommand(
        "check", "Evaluate a candidate counterexample vector");
    check->add_option("inequality", opt.inequality, "e.g. \"S(A|B) >= 0\"")
        ->required();
    check
        ->add_option("vector", opt.vector_text,
                     "k rationals in coordinate order, or \"S(A)=1,...\"")
        ->required();
    add_common(check);

    CLI::App* elemental = app.add_subcommand(
        "elemental", "List the generating inequalities for n parties");
    elemental->add_option("-n,--parties-count", opt.n, "Number of parties")
        ->required();
    elemental->add_option("--max-parties", opt.max_parties,
                          "Raise the party-count limit");
    elemental->add_flag("--json", opt.json, "Emit a JSON document");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(prove)) return run_prove(opt);
        if (app.got_subcommand(shortest)) return run_shortest(opt);
        if (app.got_subcommand(check)) return run_check(opt);
        return run_elemental(opt);
    } catch (const qep::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const qep::ContextError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const qep::LimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
