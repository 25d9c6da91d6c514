#include "qep/context.hpp"

#include <algorithm>

namespace qep {

SystemContext::SystemContext(std::vector<std::string> parties, int max_parties)
    : parties_(std::move(parties)) {
    std::sort(parties_.begin(), parties_.end());
    if (std::adjacent_find(parties_.begin(), parties_.end()) != parties_.end())
        throw ContextError("duplicate party name");
    for (const auto& name : parties_)
        if (name.empty()) throw ContextError("empty party name");
    const int n = static_cast<int>(parties_.size());
    if (n < 2)
        throw ContextError(
            "at least two parties are required (single-party systems have no "
            "nontrivial inequalities)");
    if (max_parties > 30) max_parties = 30;  // subset masks are 32-bit
    if (n > max_parties)
        throw ContextError("too many parties: " + std::to_string(n) +
                           " > limit " + std::to_string(max_parties));
}

std::optional<int> SystemContext::party_index(std::string_view name) const {
    auto it = std::lower_bound(parties_.begin(), parties_.end(), name);
    if (it == parties_.end() || *it != name) return std::nullopt;
    return static_cast<int>(it - parties_.begin());
}

std::string SystemContext::subset_name(SubsetId subset) const {
    if (!contains(subset))
        throw ContextError("subset outside of this party system");
    std::string out;
    for (int i = 0; i < party_count(); ++i) {
        if (subset.mask() & (std::uint32_t{1} << i)) {
            if (!out.empty()) out += ',';
            out += parties_[i];
        }
    }
    return out;
}

}  // namespace qep
