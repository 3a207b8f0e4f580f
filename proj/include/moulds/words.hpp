#pragma once

#include "moulds/alphabet.hpp"
#include "moulds/lincomb.hpp"

#include <compare>
#include <string>
#include <vector>

namespace moulds {

/// A finite sequence of decorations; basis element of the shuffle and
/// quasishuffle Hopf algebras. The empty word is the unit.
struct Word {
    std::vector<Decoration> letters;

    Word() = default;
    explicit Word(std::vector<Decoration> l) : letters(std::move(l)) {}
    Word(std::initializer_list<Decoration> l) : letters(l) {}

    int length() const { return static_cast<int>(letters.size()); }
    bool empty() const { return letters.empty(); }

    Decoration weight() const {
        if (letters.empty()) return Decoration{};
        Decoration w = letters.front();
        for (std::size_t i = 1; i < letters.size(); ++i) w = w + letters[i];
        return w;
    }

    int grade() const {
        int g = 0;
        for (const auto& d : letters) g += d.grade();
        return g;
    }

    auto operator<=>(const Word&) const = default;
};

std::string to_string(const Word& w);

Word concat(const Word& a, const Word& b);

/// Prepends a letter: the Hochschild cocycle operator of the words side.
Word prepend(const Decoration& eta, const Word& w);

/// Sum over all interleavings of a and b preserving both internal
/// orders, with multiplicity.
LinComb<Word> shuffle(const Word& a, const Word& b);

/// Interleavings plus all contractions that merge one letter of a with
/// one letter of b into the sum decoration.
LinComb<Word> quasishuffle(const Word& a, const Word& b);

LinComb<Word> shuffle(const LinComb<Word>& a, const LinComb<Word>& b);
LinComb<Word> quasishuffle(const LinComb<Word>& a, const LinComb<Word>& b);

/// Deconcatenation coproduct: all s+1 splittings of w.
LinComb<TensorPair<Word>> deconcat(const Word& w);

/// Shuffle antipode: signed reversal.
LinComb<Word> antipode_sh(const Word& w);

/// Quasishuffle antipode: (-1)^s sum over block decompositions of the
/// word of reversed block weights.
LinComb<Word> antipode_qsh(const Word& w);

/// All words over the given letters whose cost-sum is <= bound; cost
/// must be >= 1 per letter. Returned sorted by (cost, word order).
std::vector<Word> enumerate_words(const std::vector<Decoration>& letters, int bound,
                                  int (*cost)(const Decoration&));

/// Convenience: enumeration bounded by total grade.
std::vector<Word> enumerate_words_by_grade(const std::vector<Decoration>& letters, int max_grade);

/// Enumeration bounded by total weight; this is the bound that makes a
/// truncated automorphism evaluation complete to a given series degree.
std::vector<Word> enumerate_words_by_weight(const std::vector<Decoration>& letters, int max_weight);

} // namespace moulds
