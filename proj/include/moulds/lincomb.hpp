#pragma once

#include "moulds/rational.hpp"

#include <map>
#include <utility>

namespace moulds {

/// Finite formal linear combination over an ordered basis B with exact
/// coefficients. Zero coefficients are never stored, so structural
/// equality is equality of combinations.
template <class B>
class LinComb {
public:
    using Terms = std::map<B, Rational>;

    LinComb() = default;

    static LinComb single(const B& b, Rational c = Rational(1)) {
        LinComb out;
        out.add(b, c);
        return out;
    }

    void add(const B& b, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(b, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void add(const LinComb& other, const Rational& scale = Rational(1)) {
        if (scale.is_zero()) return;
        for (const auto& [b, c] : other.terms_) add(b, c * scale);
    }

    LinComb& operator+=(const LinComb& o) { add(o); return *this; }
    LinComb& operator-=(const LinComb& o) { add(o, Rational(-1)); return *this; }
    LinComb& operator*=(const Rational& s) {
        if (s.is_zero()) { terms_.clear(); return *this; }
        for (auto& [b, c] : terms_) c *= s;
        return *this;
    }

    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
    friend LinComb operator*(const Rational& s, LinComb a) { return a *= s; }

    Rational coefficient(const B& b) const {
        auto it = terms_.find(b);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }

    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const LinComb& a, const LinComb& b) { return !(a == b); }

    /// Pushes a basis-level map through the combination:
    /// f : B -> LinComb<B2>.
    template <class F>
    auto map_basis(F&& f) const {
        using Out = decltype(f(std::declval<const B&>()));
        Out out;
        for (const auto& [b, c] : terms_) out.add(f(b), c);
        return out;
    }

    /// Evaluates a linear form given by its basis values.
    template <class F>
    Rational evaluate(F&& form) const {
        Rational sum(0);
        for (const auto& [b, c] : terms_) sum += c * form(b);
        return sum;
    }

private:
    Terms terms_;
};

/// Basis of a two-fold tensor product; ordered lexicographically.
template <class B>
using TensorPair = std::pair<B, B>;

template <class B>
LinComb<TensorPair<B>> tensor(const LinComb<B>& a, const LinComb<B>& b) {
    LinComb<TensorPair<B>> out;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b) out.add({x, y}, cx * cy);
    return out;
}

} // namespace moulds
