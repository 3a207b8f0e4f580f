#include "moulds/arborification.hpp"

#include <map>

namespace moulds {

namespace {

using Memo = std::map<Forest, LinComb<Word>>;

LinComb<Word> arborify_rec(const Forest& f, ArborMode mode, Memo& memo) {
    if (f.empty()) return LinComb<Word>::single(Word{});
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;

    LinComb<Word> out;
    if (f.root_count() == 1) {
        const Tree& t = f.trees.front();
        LinComb<Word> below =
            arborify_rec(Forest{std::vector<Tree>(t.children)}, mode, memo);
        out = below.map_basis(
            [&](const Word& w) { return LinComb<Word>::single(prepend(t.dec, w)); });
    } else {
        // Product of trees maps to the (quasi)shuffle of their images.
        out = LinComb<Word>::single(Word{});
        for (const auto& t : f.trees) {
            LinComb<Word> img = arborify_rec(Forest{{t}}, mode, memo);
            out = mode == ArborMode::Plain ? shuffle(out, img) : quasishuffle(out, img);
        }
    }
    memo.emplace(f, out);
    return out;
}

} // namespace

LinComb<Word> arborify(const Forest& f, ArborMode mode) {
    Memo memo;
    return arborify_rec(f, mode, memo);
}

LinComb<Word> arborify(const Tree& t, ArborMode mode) { return arborify(Forest{{t}}, mode); }

Rational pullback(const std::function<Rational(const Word&)>& chi, const Forest& f,
                  ArborMode mode) {
    return arborify(f, mode).evaluate(chi);
}

Rational xi_arbo_field(const Forest& f, const Spectrum& lambda) {
    Rational prod(1);
    for (const auto& t : vertex_subtrees(f)) {
        Rational denom = pair_field(lambda, t.weight());
        if (denom.is_zero()) throw resonance_error(t.weight(), "subtree pairing vanishes");
        prod /= denom;
    }
    return prod;
}

Rational chi_arbo_diffeo(const Forest& f, const Spectrum& l) {
    Rational prod(1);
    for (const auto& t : vertex_subtrees(f)) {
        Rational denom = pair_diffeo(l, t.weight()) - Rational(1);
        if (denom.is_zero()) throw resonance_error(t.weight(), "subtree multiplier equals 1");
        prod /= denom;
    }
    return prod;
}

ArborifiedMould make_xi_arbo_field(Spectrum lambda) {
    ArborifiedMould m;
    m.separative = true;
    m.eval = [lambda = std::move(lambda)](const Forest& f) { return xi_arbo_field(f, lambda); };
    return m;
}

ArborifiedMould make_chi_arbo_diffeo(Spectrum l) {
    ArborifiedMould m;
    m.separative = true;
    m.eval = [l = std::move(l)](const Forest& f) { return chi_arbo_diffeo(f, l); };
    return m;
}

} // namespace moulds
