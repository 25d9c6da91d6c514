#include "qep/types.hpp"

#include <cctype>
#include <cstdlib>

namespace qep {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rational pow10(std::size_t exponent) {
    Rational r = 1;
    for (std::size_t i = 0; i < exponent; ++i) r *= 10;
    return r;
}

}  // namespace

std::optional<Rational> rational_from_string(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (text.empty()) return std::nullopt;

    Rational value;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        Rational denominator{std::string(den)};
        if (denominator == 0) return std::nullopt;
        value = Rational{std::string(num)} / denominator;
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto whole = text.substr(0, dot);
        auto frac = text.substr(dot + 1);
        if (!all_digits(whole) && whole.empty() == false) return std::nullopt;
        if (whole.empty() && frac.empty()) return std::nullopt;
        if (!whole.empty() && !all_digits(whole)) return std::nullopt;
        if (!frac.empty() && !all_digits(frac)) return std::nullopt;
        value = whole.empty() ? Rational(0) : Rational{std::string(whole)};
        if (!frac.empty())
            value += Rational{std::string(frac)} / pow10(frac.size());
    } else {
        if (!all_digits(text)) return std::nullopt;
        value = Rational{std::string(text)};
    }
    return negative ? -value : value;
}

}  // namespace qep
