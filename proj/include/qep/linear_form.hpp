#pragma once

#include <utility>

#include "qep/context.hpp"
#include "qep/types.hpp"

namespace qep {

/// A linear form over the k marginal entropies of a party system: one exact
/// rational coefficient per nonempty subset, in canonical coordinate order.
/// Houses inequality left-hand sides, constraint rows, entropic vectors and
/// the rows of the generated inequality matrices alike.
class LinearForm {
public:
    explicit LinearForm(SystemContext context)
        : context_(std::move(context)),
          coeffs_(RVector::Zero(context_.coordinate_count())) {}

    LinearForm(SystemContext context, RVector coeffs)
        : context_(std::move(context)), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != context_.coordinate_count())
            throw ContextError("coefficient vector length does not match 2^n - 1");
    }

    const SystemContext& context() const { return context_; }
    const RVector& coeffs() const { return coeffs_; }
    Index size() const { return coeffs_.size(); }

    const Rational& operator[](Index coordinate) const { return coeffs_(coordinate); }
    const Rational& coeff(SubsetId subset) const {
        return coeffs_(coordinate_of(context_, subset));
    }

    void set_coeff(SubsetId subset, Rational value) {
        coeffs_(coordinate_of(context_, subset)) = std::move(value);
    }

    /// Adds `value` to the coefficient of S(subset).
    void add_term(SubsetId subset, const Rational& value) {
        coeffs_(coordinate_of(context_, subset)) += value;
    }

    bool is_zero() const {
        for (Index i = 0; i < coeffs_.size(); ++i)
            if (coeffs_(i) != 0) return false;
        return true;
    }

    LinearForm& operator+=(const LinearForm& other) {
        require_same_context(other);
        coeffs_ += other.coeffs_;
        return *this;
    }
    LinearForm& operator-=(const LinearForm& other) {
        require_same_context(other);
        coeffs_ -= other.coeffs_;
        return *this;
    }
    LinearForm& operator*=(const Rational& scale) {
        coeffs_ *= scale;
        return *this;
    }

    friend LinearForm operator+(LinearForm lhs, const LinearForm& rhs) {
        lhs += rhs;
        return lhs;
    }
    friend LinearForm operator-(LinearForm lhs, const LinearForm& rhs) {
        lhs -= rhs;
        return lhs;
    }
    friend LinearForm operator-(LinearForm form) {
        form.coeffs_ = -form.coeffs_;
        return form;
    }
    friend LinearForm operator*(const Rational& scale, LinearForm form) {
        form *= scale;
        return form;
    }

    friend bool operator==(const LinearForm& lhs, const LinearForm& rhs) {
        return lhs.context_ == rhs.context_ && lhs.coeffs_ == rhs.coeffs_;
    }

private:
    void require_same_context(const LinearForm& other) const {
        if (context_ != other.context_)
            throw ContextError("linear forms belong to different party systems");
    }

    SystemContext context_;
    RVector coeffs_;
};

/// Exact inner product b . s of two forms over the same context.
inline Rational eval(const LinearForm& form, const LinearForm& point) {
    if (form.context() != point.context())
        throw ContextError("cannot evaluate across different party systems");
    return form.coeffs().dot(point.coeffs());
}

}  // namespace qep
