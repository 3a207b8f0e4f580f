#pragma once

#include "moulds/lincomb.hpp"
#include "moulds/rational.hpp"

#include <functional>
#include <map>
#include <memory>
#include <utility>

namespace moulds {

enum class CharKind { PlainLinear, Character, Infinitesimal };

/// A linear form on the span of a basis B, given by its basis values,
/// together with a tag recording what it claims to be. The tag is
/// advisory; character_check below actually verifies the claim on
/// sample pairs.
template <class B>
struct Character {
    std::function<Rational(const B&)> eval;
    CharKind kind = CharKind::PlainLinear;

    Rational operator()(const B& b) const { return eval(b); }
    Rational operator()(const LinComb<B>& v) const {
        return v.evaluate([&](const B& b) { return eval(b); });
    }
};

template <class B>
using Coproduct = std::function<LinComb<TensorPair<B>>(const B&)>;

template <class B>
using Product = std::function<LinComb<B>(const B&, const B&)>;

/// Convolution of two linear forms against a coproduct:
/// (u * v)(x) = sum u(x') v(x'') over Delta(x).
template <class B, class U, class V>
Rational convolve(U&& u, V&& v, const B& x, const Coproduct<B>& coproduct) {
    Rational sum(0);
    for (const auto& [pair, c] : coproduct(x)) sum += c * u(pair.first) * v(pair.second);
    return sum;
}

/// True iff chi(a*b) = chi(a) chi(b) for every sample pair.
template <class B>
bool character_check(const Character<B>& chi, const Product<B>& product,
                     const std::vector<std::pair<B, B>>& samples) {
    for (const auto& [a, b] : samples) {
        Rational lhs = chi(product(a, b));
        if (lhs != chi(a) * chi(b)) return false;
    }
    return true;
}

/// Graded convolution exponential of an infinitesimal character. Since u
/// vanishes in grade 0, u^{*s}(x) = 0 for s > gr(x) and the series is a
/// finite sum on every basis element.
template <class B>
Character<B> conv_exp(Character<B> u, Coproduct<B> coproduct,
                      std::function<int(const B&)> grade) {
    auto powers = std::make_shared<std::map<std::pair<int, B>, Rational>>();
    auto self = std::make_shared<std::function<Rational(int, const B&)>>();
    *self = [=](int s, const B& x) -> Rational {
        if (s == 1) return u(x);
        auto key = std::make_pair(s, x);
        auto it = powers->find(key);
        if (it != powers->end()) return it->second;
        Rational sum(0);
        for (const auto& [pair, c] : coproduct(x)) {
            Rational left = u(pair.first);
            if (left.is_zero()) continue;
            sum += c * left * (*self)(s - 1, pair.second);
        }
        powers->emplace(key, sum);
        return sum;
    };
    Character<B> out;
    out.kind = CharKind::Character;
    out.eval = [=](const B& x) -> Rational {
        int g = grade(x);
        if (g == 0) return Rational(1);
        Rational sum(0);
        Rational inv_fact(1);
        for (int s = 1; s <= g; ++s) {
            inv_fact /= Rational(s);
            sum += inv_fact * (*self)(s, x);
        }
        return sum;
    };
    return out;
}

/// Graded convolution logarithm of a character; inverse of conv_exp.
template <class B>
Character<B> conv_log(Character<B> chi, Coproduct<B> coproduct,
                      std::function<int(const B&)> grade) {
    // w = chi - counit vanishes in grade 0 exactly when chi(unit) = 1.
    auto powers = std::make_shared<std::map<std::pair<int, B>, Rational>>();
    auto w = [chi, grade](const B& x) -> Rational {
        return grade(x) == 0 ? chi(x) - Rational(1) : chi(x);
    };
    auto self = std::make_shared<std::function<Rational(int, const B&)>>();
    *self = [=](int s, const B& x) -> Rational {
        if (s == 1) return w(x);
        auto key = std::make_pair(s, x);
        auto it = powers->find(key);
        if (it != powers->end()) return it->second;
        Rational sum(0);
        for (const auto& [pair, c] : coproduct(x)) {
            Rational left = w(pair.first);
            if (left.is_zero()) continue;
            sum += c * left * (*self)(s - 1, pair.second);
        }
        powers->emplace(key, sum);
        return sum;
    };
    Character<B> out;
    out.kind = CharKind::Infinitesimal;
    out.eval = [=](const B& x) -> Rational {
        int g = grade(x);
        if (g == 0) return Rational(0);
        Rational sum(0);
        for (int s = 1; s <= g; ++s) {
            Rational coeff = Rational((s % 2 == 1) ? 1 : -1) / Rational(s);
            sum += coeff * (*self)(s, x);
        }
        return sum;
    };
    return out;
}

/// Memoizing wrapper; recursions over characters reuse values heavily.
template <class B>
Character<B> memoized(Character<B> inner) {
    auto cache = std::make_shared<std::map<B, Rational>>();
    Character<B> out;
    out.kind = inner.kind;
    out.eval = [inner, cache](const B& b) -> Rational {
        auto it = cache->find(b);
        if (it != cache->end()) return it->second;
        Rational v = inner(b);
        cache->emplace(b, v);
        return v;
    };
    return out;
}

} // namespace moulds
