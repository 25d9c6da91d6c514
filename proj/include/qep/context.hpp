#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qep/types.hpp"

namespace qep {

/// A nonempty subset of parties, encoded as a bit pattern (bit i set means
/// party i belongs to the subset). The empty set is not representable: the
/// vacuous entropy coordinate is eliminated at construction everywhere.
class SubsetId {
public:
    explicit SubsetId(std::uint32_t mask) : mask_(mask) {
        if (mask == 0)
            throw ContextError("empty subset has no entropy coordinate");
    }

    std::uint32_t mask() const { return mask_; }

    /// Canonical coordinate of S(subset) in the entropic space: mask - 1.
    Index coordinate() const { return static_cast<Index>(mask_) - 1; }

    friend bool operator==(SubsetId, SubsetId) = default;
    friend auto operator<=>(SubsetId, SubsetId) = default;

private:
    std::uint32_t mask_;
};

inline SubsetId subset_union(SubsetId a, SubsetId b) {
    return SubsetId(a.mask() | b.mask());
}

/// Party roster of an n-party system and the induced coordinate bookkeeping.
/// Parties are stored sorted lexicographically; immutable after construction.
class SystemContext {
public:
    static constexpr int default_max_parties = 8;

    /// Sorts the names; rejects duplicates, empty names, n < 2 and
    /// n > max_parties.
    explicit SystemContext(std::vector<std::string> parties,
                           int max_parties = default_max_parties);

    int party_count() const { return static_cast<int>(parties_.size()); }

    /// k = 2^n - 1 marginal-entropy coordinates.
    Index coordinate_count() const {
        return (Index{1} << party_count()) - 1;
    }

    const std::vector<std::string>& parties() const { return parties_; }
    const std::string& party_name(int index) const { return parties_.at(index); }
    std::optional<int> party_index(std::string_view name) const;

    bool contains(SubsetId subset) const {
        return subset.coordinate() < coordinate_count();
    }

    /// Full party set N_n as a subset mask.
    SubsetId full_set() const {
        return SubsetId((std::uint32_t{1} << party_count()) - 1);
    }

    /// "A,B,C" for the given subset, parties in canonical order.
    std::string subset_name(SubsetId subset) const;

    friend bool operator==(const SystemContext&, const SystemContext&) = default;

private:
    std::vector<std::string> parties_;
};

/// mask - 1, after checking the subset belongs to the context.
inline Index coordinate_of(const SystemContext& ctx, SubsetId subset) {
    if (!ctx.contains(subset))
        throw ContextError("subset outside of this party system");
    return subset.coordinate();
}

}  // namespace qep
