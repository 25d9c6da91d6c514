#include "qep/elemental.hpp"

#include <algorithm>
#include <set>

namespace qep {

namespace {

constexpr Index size_budget = Index{1} << 24;

void check_budget(Index rows, Index cols) {
    if (rows * cols > size_budget)
        throw LimitError("party system too large: inequality matrix of " +
                         std::to_string(rows) + " x " + std::to_string(cols) +
                         " entries exceeds the size budget");
}

// S(I) + S(J) - S(I u J) - S(I n J), empty-set terms dropped.
LinearForm ssa_form(const SystemContext& ctx, std::uint32_t i_mask,
                    std::uint32_t j_mask) {
    LinearForm form(ctx);
    form.add_term(SubsetId(i_mask), 1);
    form.add_term(SubsetId(j_mask), 1);
    form.add_term(SubsetId(i_mask | j_mask), -1);
    if (std::uint32_t both = i_mask & j_mask)
        form.add_term(SubsetId(both), -1);
    return form;
}

// S(I) + S(J) - S(I\J) - S(J\I), empty-set terms dropped.
LinearForm wm_form(const SystemContext& ctx, std::uint32_t i_mask,
                   std::uint32_t j_mask) {
    LinearForm form(ctx);
    form.add_term(SubsetId(i_mask), 1);
    form.add_term(SubsetId(j_mask), 1);
    if (std::uint32_t only_i = i_mask & ~j_mask)
        form.add_term(SubsetId(only_i), -1);
    if (std::uint32_t only_j = j_mask & ~i_mask)
        form.add_term(SubsetId(only_j), -1);
    return form;
}

// Enumerates the subsets of free_mask in increasing mask order.
std::vector<std::uint32_t> subsets_of(std::uint32_t free_mask) {
    std::vector<std::uint32_t> out;
    std::uint32_t sub = 0;
    do {
        out.push_back(sub);
        sub = (sub - free_mask) & free_mask;
    } while (sub != 0);
    std::sort(out.begin(), out.end());
    return out;
}

struct RowLess {
    bool operator()(const RVector& lhs, const RVector& rhs) const {
        for (Index i = 0; i < lhs.size(); ++i) {
            if (lhs(i) < rhs(i)) return true;
            if (lhs(i) > rhs(i)) return false;
        }
        return false;
    }
};

}  // namespace

ElementalSystem::ElementalSystem(SystemContext context,
                                 std::vector<ElementalRow> rows)
    : context_(std::move(context)), rows_(std::move(rows)) {
    matrix_.resize(static_cast<Index>(rows_.size()), context_.coordinate_count());
    for (Index r = 0; r < matrix_.rows(); ++r)
        matrix_.row(r) = rows_[static_cast<std::size_t>(r)].form.coeffs().transpose();
}

Index elemental_row_count(int party_count) {
    const Index n = party_count;
    return (Index{1} << (n - 2)) * n * (n + 1) / 2;
}

ElementalSystem generate_elemental(const SystemContext& ctx) {
    const int n = ctx.party_count();
    check_budget(elemental_row_count(n), ctx.coordinate_count());

    std::vector<ElementalRow> rows;
    rows.reserve(static_cast<std::size_t>(elemental_row_count(n)));

    // Type (i): I(i;j|K) >= 0 for every pair j > i and every K disjoint
    // from {i,j}, K = {} included.
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const std::uint32_t pair_mask =
                (std::uint32_t{1} << i) | (std::uint32_t{1} << j);
            const std::uint32_t free_mask = ctx.full_set().mask() & ~pair_mask;
            for (std::uint32_t cond : subsets_of(free_mask)) {
                const std::uint32_t left = (std::uint32_t{1} << i) | cond;
                const std::uint32_t right = (std::uint32_t{1} << j) | cond;
                rows.push_back({ElementalRow::Kind::ssa, i, j, left, right,
                                ssa_form(ctx, left, right)});
            }
        }
    }

    // Type (ii): I n J = {pivot}, I u J = N_n. The printed side condition
    // "k + 1 in I" wraps around at the last party, pinning party 1 into I;
    // the pin selects one of each symmetric (I, J) pair.
    for (int pivot = 0; pivot < n; ++pivot) {
        const int pinned = (pivot + 1) % n;
        const std::uint32_t pivot_mask = std::uint32_t{1} << pivot;
        const std::uint32_t pinned_mask = std::uint32_t{1} << pinned;
        const std::uint32_t free_mask =
            ctx.full_set().mask() & ~pivot_mask & ~pinned_mask;
        std::vector<std::uint32_t> lefts;
        for (std::uint32_t part : subsets_of(free_mask))
            lefts.push_back(pivot_mask | pinned_mask | part);
        std::sort(lefts.begin(), lefts.end());
        for (std::uint32_t left : lefts) {
            const std::uint32_t right =
                (ctx.full_set().mask() & ~left) | pivot_mask;
            rows.push_back({ElementalRow::Kind::wm, pivot, -1, left, right,
                            wm_form(ctx, left, right)});
        }
    }

    return ElementalSystem(ctx, std::move(rows));
}

RMatrix generate_basic(const SystemContext& ctx) {
    const Index k = ctx.coordinate_count();
    check_budget(k * k, k);

    std::vector<RVector> rows;
    std::set<RVector, RowLess> seen;
    auto push = [&](LinearForm form) {
        if (form.is_zero()) return;
        if (seen.insert(form.coeffs()).second) rows.push_back(form.coeffs());
    };

    const std::uint32_t full = ctx.full_set().mask();
    // Both families are symmetric in (I, J), so ordered pairs with
    // left <= right cover every instance.
    for (std::uint32_t left = 1; left <= full; ++left)
        for (std::uint32_t right = left; right <= full; ++right)
            push(ssa_form(ctx, left, right));
    for (std::uint32_t left = 1; left <= full; ++left)
        for (std::uint32_t right = left; right <= full; ++right)
            push(wm_form(ctx, left, right));

    RMatrix out(static_cast<Index>(rows.size()), k);
    for (Index r = 0; r < out.rows(); ++r)
        out.row(r) = rows[static_cast<std::size_t>(r)].transpose();
    return out;
}

std::string describe_row(const ElementalRow& row) {
    const SystemContext& ctx = row.form.context();
    if (row.kind == ElementalRow::Kind::ssa) {
        std::string out = "I(" + ctx.party_name(row.party_a) + ";" +
                          ctx.party_name(row.party_b);
        if (std::uint32_t cond = row.left & row.right)
            out += "|" + ctx.subset_name(SubsetId(cond));
        return out + ") >= 0";
    }
    std::string out = "S(" + ctx.subset_name(SubsetId(row.left)) + ") + S(" +
                      ctx.subset_name(SubsetId(row.right)) + ")";
    if (std::uint32_t only_left = row.left & ~row.right)
        out += " - S(" + ctx.subset_name(SubsetId(only_left)) + ")";
    if (std::uint32_t only_right = row.right & ~row.left)
        out += " - S(" + ctx.subset_name(SubsetId(only_right)) + ")";
    return out + " >= 0";
}

}  // namespace qep
