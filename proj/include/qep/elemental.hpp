#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qep/linear_form.hpp"

namespace qep {

/// One generating inequality of the von-Neumann cone, with the instance data
/// it was built from.
///
/// ssa rows are strong-sub-additivity instances I(i;j|K) >= 0 with
/// I = {i} u K, J = {j} u K and j > i as party indices. wm rows are weak
/// monotonicity instances S(I) + S(J) - S(I\J) - S(J\I) >= 0 with
/// I n J = {pivot} and I u J = N_n. Terms on the empty set are dropped, so
/// every row has 3 or 4 nonzero coefficients, all +1 or -1.
struct ElementalRow {
    enum class Kind { ssa, wm };

    Kind kind;
    int party_a = -1;        // ssa: i,  wm: the pivot party k
    int party_b = -1;        // ssa: j,  wm: unused
    std::uint32_t left = 0;  // mask of I
    std::uint32_t right = 0; // mask of J
    LinearForm form;
};

/// The minimal generating matrix G for one party system: every SSA instance
/// of type (i) and every WM instance of type (ii), in a fixed order (SSA rows
/// sorted by (i, j, K mask), then WM rows sorted by (pivot, I mask)).
class ElementalSystem {
public:
    ElementalSystem(SystemContext context, std::vector<ElementalRow> rows);

    const SystemContext& context() const { return context_; }
    const std::vector<ElementalRow>& rows() const { return rows_; }
    Index row_count() const { return static_cast<Index>(rows_.size()); }

    /// m x k coefficient matrix; row order matches rows().
    const RMatrix& matrix() const { return matrix_; }

private:
    SystemContext context_;
    std::vector<ElementalRow> rows_;
    RMatrix matrix_;
};

/// Expected row count 2^(n-2) * n(n+1)/2.
Index elemental_row_count(int party_count);

ElementalSystem generate_elemental(const SystemContext& context);

/// All distinct SSA and WM instances over nonempty subsets (the matrix of
/// basic inequalities), SSA block first. Identically-zero rows are omitted
/// and duplicate rows are kept once.
RMatrix generate_basic(const SystemContext& context);

/// "I(A;C|B) >= 0" for SSA rows, "S(A,B) + S(B,C) - S(A) - S(C) >= 0" for WM
/// rows.
std::string describe_row(const ElementalRow& row);

}  // namespace qep
