#include "qep/lp.hpp"

#include <cstdlib>
#include <utility>

namespace qep {

namespace {

bool row_satisfied(const LpRow& row, const Rational& lhs) {
    switch (row.relation) {
        case RowRelation::greater_equal: return lhs >= row.rhs;
        case RowRelation::less_equal: return lhs <= row.rhs;
        case RowRelation::equal: return lhs == row.rhs;
    }
    return false;
}

bool point_feasible(const LpProblem& p, const RVector& x) {
    if (x.size() != p.variable_count()) return false;
    for (Index j = 0; j < x.size(); ++j)
        if (p.domains()[static_cast<std::size_t>(j)] ==
                VariableDomain::nonnegative &&
            x(j) < 0)
            return false;
    for (const LpRow& row : p.rows())
        if (!row_satisfied(row, row.coeffs.dot(x))) return false;
    return true;
}

// Multiplier sign pattern shared by duals and Farkas vectors: >=-rows carry
// nonnegative multipliers, <=-rows nonpositive, =-rows anything.
bool multiplier_signs_ok(const LpProblem& p, const RVector& mult) {
    for (Index i = 0; i < p.row_count(); ++i) {
        const RowRelation rel = p.rows()[static_cast<std::size_t>(i)].relation;
        if (rel == RowRelation::greater_equal && mult(i) < 0) return false;
        if (rel == RowRelation::less_equal && mult(i) > 0) return false;
    }
    return true;
}

// Standard form: each free variable becomes a (plus, minus) column pair,
// each inequality row gains a slack column, every row gains an artificial
// column. Rows are scaled to a nonnegative right-hand side. The artificial
// block doubles as a running copy of B^-1, which is where dual values and
// Farkas multipliers are read off.
class Simplex {
public:
    Simplex(const LpProblem& problem, const SolveOptions& options)
        : p_(problem), opts_(options) {
        build();
    }

    LpOutcome run() {
        Phase first = run_phase();
        if (!first.optimal)
            throw InternalError("phase-1 objective cannot be unbounded");
        if (objval_ > 0) return extract_infeasible();

        drive_out_artificials();
        load_phase2_costs();
        lex_block_ = basis_;

        Phase second = run_phase();
        if (second.optimal) return extract_optimal();
        return extract_unbounded(second.entering);
    }

private:
    struct Phase {
        bool optimal;
        Index entering;
    };

    void build() {
        const Index nvars = p_.variable_count();
        const Index m = p_.row_count();

        plus_.resize(static_cast<std::size_t>(nvars));
        minus_.assign(static_cast<std::size_t>(nvars), -1);
        Index col = 0;
        for (Index j = 0; j < nvars; ++j) {
            plus_[static_cast<std::size_t>(j)] = col++;
            if (p_.domains()[static_cast<std::size_t>(j)] == VariableDomain::free)
                minus_[static_cast<std::size_t>(j)] = col++;
        }
        slack_.assign(static_cast<std::size_t>(m), -1);
        for (Index i = 0; i < m; ++i)
            if (p_.rows()[static_cast<std::size_t>(i)].relation !=
                RowRelation::equal)
                slack_[static_cast<std::size_t>(i)] = col++;
        art_start_ = col;
        ncols_ = col + m;

        T_ = RMatrix::Zero(m, ncols_);
        rhs_.resize(m);
        sigma_.resize(static_cast<std::size_t>(m));
        basis_.resize(static_cast<std::size_t>(m));
        for (Index i = 0; i < m; ++i) {
            const LpRow& row = p_.rows()[static_cast<std::size_t>(i)];
            const int s = row.rhs < 0 ? -1 : 1;
            sigma_[static_cast<std::size_t>(i)] = s;
            for (Index j = 0; j < nvars; ++j) {
                if (row.coeffs(j) == 0) continue;
                const Rational v = s * row.coeffs(j);
                T_(i, plus_[static_cast<std::size_t>(j)]) = v;
                if (minus_[static_cast<std::size_t>(j)] >= 0)
                    T_(i, minus_[static_cast<std::size_t>(j)]) = -v;
            }
            if (slack_[static_cast<std::size_t>(i)] >= 0)
                T_(i, slack_[static_cast<std::size_t>(i)]) =
                    row.relation == RowRelation::greater_equal ? -s : s;
            T_(i, art_start_ + i) = 1;
            rhs_(i) = s * row.rhs;
            basis_[static_cast<std::size_t>(i)] = art_start_ + i;
        }

        // Phase-1 reduced costs: every basic artificial has cost 1.
        cost_ = RVector::Zero(ncols_);
        for (Index i = 0; i < m; ++i) cost_(art_start_ + i) = 1;
        for (Index i = 0; i < m; ++i) cost_ -= T_.row(i).transpose();
        objval_ = rhs_.sum();
        lex_block_ = basis_;
    }

    void pivot(Index r, Index e) {
        if (++pivots_ > opts_.max_pivots)
            throw LimitError("simplex pivot limit of " +
                             std::to_string(opts_.max_pivots) + " exceeded");
        const Rational piv = T_(r, e);
        const Rational ce = cost_(e);
        objval_ += ce * rhs_(r) / piv;
        T_.row(r) /= piv;
        rhs_(r) /= piv;
        for (Index i = 0; i < T_.rows(); ++i) {
            if (i == r || T_(i, e) == 0) continue;
            const Rational f = T_(i, e);
            T_.row(i) -= f * T_.row(r);
            rhs_(i) -= f * rhs_(r);
        }
        if (ce != 0) cost_ -= ce * T_.row(r).transpose();
        basis_[static_cast<std::size_t>(r)] = e;
    }

    // Artificial columns never enter; they only start basic and leave.
    Index entering() const {
        if (opts_.pivot == PivotRule::bland) {
            for (Index e = 0; e < art_start_; ++e)
                if (cost_(e) < 0) return e;
            return -1;
        }
        Index best = -1;
        for (Index e = 0; e < art_start_; ++e)
            if (cost_(e) < 0 && (best < 0 || cost_(e) < cost_(best))) best = e;
        return best;
    }

    // True when row a beats row b lexicographically over (rhs, lex_block e
    // columns), each scaled by its pivot element.
    bool lex_smaller(Index a, Index b, Index e) const {
        const Rational& da = T_(a, e);
        const Rational& db = T_(b, e);
        if (rhs_(a) * db != rhs_(b) * da) return rhs_(a) * db < rhs_(b) * da;
        for (Index c : lex_block_) {
            const Rational lhs = T_(a, c) * db;
            const Rational rhs = T_(b, c) * da;
            if (lhs != rhs) return lhs < rhs;
        }
        return a < b;
    }

    Index leaving(Index e) const {
        Index best = -1;
        for (Index r = 0; r < T_.rows(); ++r) {
            if (T_(r, e) <= 0) continue;
            if (best < 0) {
                best = r;
                continue;
            }
            if (opts_.pivot == PivotRule::bland) {
                const Rational lhs = rhs_(r) * T_(best, e);
                const Rational rhs = rhs_(best) * T_(r, e);
                if (lhs < rhs ||
                    (lhs == rhs && basis_[static_cast<std::size_t>(r)] <
                                       basis_[static_cast<std::size_t>(best)]))
                    best = r;
            } else if (lex_smaller(r, best, e)) {
                best = r;
            }
        }
        return best;
    }

    Phase run_phase() {
        while (true) {
            const Index e = entering();
            if (e < 0) return {true, -1};
            const Index r = leaving(e);
            if (r < 0) return {false, e};
            pivot(r, e);
        }
    }

    // A basic artificial after a feasible phase 1 sits at value zero. Pivot
    // it out on any structural or slack column; when the whole row has been
    // eliminated the row is redundant and the artificial stays pinned at
    // zero (its row can never change again).
    void drive_out_artificials() {
        for (Index r = 0; r < T_.rows(); ++r) {
            if (basis_[static_cast<std::size_t>(r)] < art_start_) continue;
            for (Index j = 0; j < art_start_; ++j) {
                if (T_(r, j) != 0) {
                    pivot(r, j);
                    break;
                }
            }
        }
    }

    void load_phase2_costs() {
        phase2_cost_ = RVector::Zero(ncols_);
        for (Index j = 0; j < p_.variable_count(); ++j) {
            const Rational& c = p_.objective()(j);
            phase2_cost_(plus_[static_cast<std::size_t>(j)]) = c;
            if (minus_[static_cast<std::size_t>(j)] >= 0)
                phase2_cost_(minus_[static_cast<std::size_t>(j)]) = -c;
        }
        cost_ = phase2_cost_;
        objval_ = 0;
        for (Index r = 0; r < T_.rows(); ++r) {
            const Rational& cb = phase2_cost_(basis_[static_cast<std::size_t>(r)]);
            if (cb == 0) continue;
            cost_ -= cb * T_.row(r).transpose();
            objval_ += cb * rhs_(r);
        }
    }

    RVector standard_point() const {
        RVector x = RVector::Zero(ncols_);
        for (Index r = 0; r < T_.rows(); ++r)
            x(basis_[static_cast<std::size_t>(r)]) = rhs_(r);
        return x;
    }

    RVector to_original(const RVector& xstd) const {
        RVector x(p_.variable_count());
        for (Index j = 0; j < x.size(); ++j) {
            x(j) = xstd(plus_[static_cast<std::size_t>(j)]);
            if (minus_[static_cast<std::size_t>(j)] >= 0)
                x(j) -= xstd(minus_[static_cast<std::size_t>(j)]);
        }
        return x;
    }

    LpOutcome checked(LpOutcome out, const char* kind) const {
        if (!check_certificate(p_, out))
            throw InternalError(std::string("computed ") + kind +
                                " certificate failed its own verification");
        return out;
    }

    LpOutcome extract_optimal() const {
        LpOutcome out;
        out.status = LpStatus::optimal;
        out.value = objval_;
        out.primal = to_original(standard_point());
        out.duals.resize(T_.rows());
        for (Index i = 0; i < T_.rows(); ++i)
            out.duals(i) = -sigma_[static_cast<std::size_t>(i)] *
                           cost_(art_start_ + i);
        return checked(std::move(out), "optimal");
    }

    LpOutcome extract_unbounded(Index e) const {
        LpOutcome out;
        out.status = LpStatus::unbounded;
        out.primal = to_original(standard_point());
        RVector ray = RVector::Zero(ncols_);
        ray(e) = 1;
        for (Index r = 0; r < T_.rows(); ++r)
            ray(basis_[static_cast<std::size_t>(r)]) = -T_(r, e);
        out.ray = to_original(ray);
        return checked(std::move(out), "unbounded");
    }

    LpOutcome extract_infeasible() const {
        LpOutcome out;
        out.status = LpStatus::infeasible;
        out.farkas.resize(T_.rows());
        // Phase-1 artificial costs are 1, so the reduced cost of artificial
        // i is 1 - yhat_i.
        for (Index i = 0; i < T_.rows(); ++i)
            out.farkas(i) = sigma_[static_cast<std::size_t>(i)] *
                            (1 - cost_(art_start_ + i));
        return checked(std::move(out), "infeasibility");
    }

    const LpProblem& p_;
    const SolveOptions& opts_;

    std::vector<Index> plus_, minus_, slack_;
    Index art_start_ = 0;
    Index ncols_ = 0;
    RMatrix T_;
    RVector rhs_;
    RVector cost_;
    RVector phase2_cost_;
    Rational objval_;
    std::vector<Index> basis_;
    std::vector<Index> lex_block_;
    std::vector<int> sigma_;
    long pivots_ = 0;
};

}  // namespace

LpProblem::LpProblem(RVector objective, std::vector<VariableDomain> domains)
    : objective_(std::move(objective)), domains_(std::move(domains)) {
    if (static_cast<Index>(domains_.size()) != objective_.size())
        throw InternalError("one variable domain per objective entry required");
}

LpProblem::LpProblem(RVector objective, VariableDomain domain)
    : LpProblem(std::move(objective),
                std::vector<VariableDomain>(
                    static_cast<std::size_t>(objective.size()), domain)) {}

void LpProblem::add_row(RVector coeffs, RowRelation relation, Rational rhs) {
    if (coeffs.size() != objective_.size())
        throw InternalError("LP row length does not match the variable count");
    rows_.push_back({std::move(coeffs), relation, std::move(rhs)});
}

SolveOptions default_solve_options() {
    SolveOptions options;
    if (const char* env = std::getenv("QEP_MAX_PIVOTS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) options.max_pivots = cap;
    }
    return options;
}

LpOutcome solve(const LpProblem& problem, const SolveOptions& options) {
    return Simplex(problem, options).run();
}

bool check_certificate(const LpProblem& p, const LpOutcome& o) {
    const Index m = p.row_count();
    switch (o.status) {
        case LpStatus::optimal: {
            if (o.duals.size() != m) return false;
            if (!point_feasible(p, o.primal)) return false;
            if (!multiplier_signs_ok(p, o.duals)) return false;
            RVector reduced = p.objective();
            Rational dual_value = 0;
            for (Index i = 0; i < m; ++i) {
                const LpRow& row = p.rows()[static_cast<std::size_t>(i)];
                if (o.duals(i) != 0) reduced -= o.duals(i) * row.coeffs;
                dual_value += o.duals(i) * row.rhs;
            }
            for (Index j = 0; j < p.variable_count(); ++j) {
                if (p.domains()[static_cast<std::size_t>(j)] ==
                    VariableDomain::free) {
                    if (reduced(j) != 0) return false;
                } else if (reduced(j) < 0) {
                    return false;
                }
            }
            return p.objective().dot(o.primal) == o.value &&
                   dual_value == o.value;
        }
        case LpStatus::unbounded: {
            if (o.ray.size() != p.variable_count()) return false;
            if (!point_feasible(p, o.primal)) return false;
            for (Index j = 0; j < p.variable_count(); ++j)
                if (p.domains()[static_cast<std::size_t>(j)] ==
                        VariableDomain::nonnegative &&
                    o.ray(j) < 0)
                    return false;
            for (const LpRow& row : p.rows()) {
                const Rational d = row.coeffs.dot(o.ray);
                if (row.relation == RowRelation::greater_equal && d < 0)
                    return false;
                if (row.relation == RowRelation::less_equal && d > 0)
                    return false;
                if (row.relation == RowRelation::equal && d != 0) return false;
            }
            return p.objective().dot(o.ray) < 0;
        }
        case LpStatus::infeasible: {
            if (o.farkas.size() != m) return false;
            if (!multiplier_signs_ok(p, o.farkas)) return false;
            RVector combined = RVector::Zero(p.variable_count());
            Rational bound = 0;
            for (Index i = 0; i < m; ++i) {
                const LpRow& row = p.rows()[static_cast<std::size_t>(i)];
                if (o.farkas(i) != 0) combined += o.farkas(i) * row.coeffs;
                bound += o.farkas(i) * row.rhs;
            }
            for (Index j = 0; j < p.variable_count(); ++j) {
                if (p.domains()[static_cast<std::size_t>(j)] ==
                    VariableDomain::free) {
                    if (combined(j) != 0) return false;
                } else if (combined(j) > 0) {
                    return false;
                }
            }
            return bound > 0;
        }
    }
    return false;
}

}  // namespace qep
