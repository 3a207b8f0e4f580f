#pragma once

#include "moulds/character.hpp"
#include "moulds/trees.hpp"
#include "moulds/words.hpp"

#include <functional>

namespace moulds {

/// Which word product the tree algebra is mapped into: Plain uses the
/// shuffle, Contracting the quasishuffle (letters of distinct branches
/// may merge into their sum).
enum class ArborMode { Plain, Contracting };

/// Image of a forest under the arborification morphism: the morphism
/// turns grafting into letter-prepending and forest products into the
/// chosen word product. Equivalently, in plain mode, the sum over the
/// linear extensions of the forest poset read root-first.
LinComb<Word> arborify(const Forest& f, ArborMode mode);
LinComb<Word> arborify(const Tree& t, ArborMode mode);

/// Arborified value of a word-level linear form: chi(arborify(f)).
/// Propagates resonance errors raised by chi.
Rational pullback(const std::function<Rational(const Word&)>& chi, const Forest& f,
                  ArborMode mode);

/// Closed form of the arborified linearization mould for fields:
/// product of 1/<lambda, ||t_v||> over all vertex-rooted subtrees t_v.
Rational xi_arbo_field(const Forest& f, const Spectrum& lambda);

/// Diffeomorphism analogue: product of 1/(l^{||t_v||} - 1).
Rational chi_arbo_diffeo(const Forest& f, const Spectrum& l);

/// A scalar-valued rule on forests together with its separativity tag;
/// separative means it is a character of the tree algebra (multiplicative
/// over forest products with value 1 on the empty forest).
struct ArborifiedMould {
    std::function<Rational(const Forest&)> eval;
    bool separative = false;

    Rational operator()(const Forest& f) const { return eval(f); }
};

ArborifiedMould make_xi_arbo_field(Spectrum lambda);
ArborifiedMould make_chi_arbo_diffeo(Spectrum l);

} // namespace moulds
