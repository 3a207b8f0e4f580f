#include "moulds/arborification.hpp"
#include "moulds/linearizer.hpp"

#include <doctest.h>

#include <functional>
#include <numeric>

using namespace moulds;

namespace {

const Decoration a{1};
const Decoration b{2};

Tree leaf(const Decoration& d) { return single_vertex(d); }

// The worked 4-vertex example: root e1 over the leaf e2 and the chain
// e3 -> e4.
Tree example_tree(const Decoration& e1, const Decoration& e2, const Decoration& e3,
                  const Decoration& e4) {
    Tree chain = b_plus(e3, Forest{{leaf(e4)}});
    return b_plus(e1, Forest{{leaf(e2), chain}});
}

Spectrum field_spectrum(std::vector<Rational> v) {
    Spectrum s;
    s.mode = SpectrumMode::Field;
    s.values = std::move(v);
    return s;
}

Spectrum diffeo_spectrum(std::vector<Rational> v) {
    Spectrum s;
    s.mode = SpectrumMode::Diffeo;
    s.values = std::move(v);
    return s;
}

// Independent oracle for the plain mode: enumerate the linear extensions
// of the forest poset (every vertex after its parent) and read the
// decorations off root-first.
void linear_extensions_rec(std::vector<std::vector<int>>& children, std::vector<int>& parent,
                           std::vector<Decoration>& dec, std::vector<bool>& used,
                           std::vector<Decoration>& acc, LinComb<Word>& out) {
    bool complete = true;
    for (std::size_t v = 0; v < used.size(); ++v) {
        if (used[v]) continue;
        complete = false;
        if (parent[v] >= 0 && !used[static_cast<std::size_t>(parent[v])]) continue;
        used[v] = true;
        acc.push_back(dec[v]);
        linear_extensions_rec(children, parent, dec, used, acc, out);
        acc.pop_back();
        used[v] = false;
    }
    if (complete) out.add(Word(acc), Rational(1));
}

LinComb<Word> linear_extension_words(const Forest& f) {
    std::vector<std::vector<int>> children;
    std::vector<int> parent;
    std::vector<Decoration> dec;
    std::function<int(const Tree&, int)> build = [&](const Tree& t, int par) {
        int id = static_cast<int>(dec.size());
        dec.push_back(t.dec);
        parent.push_back(par);
        children.emplace_back();
        for (const auto& c : t.children) {
            int cid = build(c, id); // may reallocate `children`
            children[static_cast<std::size_t>(id)].push_back(cid);
        }
        return id;
    };
    for (const auto& t : f.trees) build(t, -1);
    std::vector<bool> used(dec.size(), false);
    std::vector<Decoration> acc;
    LinComb<Word> out;
    linear_extensions_rec(children, parent, dec, used, acc, out);
    return out;
}

} // namespace

TEST_CASE("plain arborification") {
    CHECK(arborify(leaf(a), ArborMode::Plain) == LinComb<Word>::single(Word{a}));

    Decoration e1{1}, e2{2}, e3{3}, e4{4};
    Tree t = example_tree(e1, e2, e3, e4);
    LinComb<Word> img = arborify(t, ArborMode::Plain);
    CHECK(img.size() == 3);
    CHECK(img.coefficient(Word{e1, e2, e3, e4}) == Rational(1));
    CHECK(img.coefficient(Word{e1, e3, e2, e4}) == Rational(1));
    CHECK(img.coefficient(Word{e1, e3, e4, e2}) == Rational(1));

    CHECK(arborify(Forest{{leaf(a), leaf(b)}}, ArborMode::Plain) ==
          LinComb<Word>::single(Word{a, b}) + LinComb<Word>::single(Word{b, a}));
}

TEST_CASE("contracting arborification") {
    CHECK(arborify(leaf(a), ArborMode::Contracting) == LinComb<Word>::single(Word{a}));

    Decoration e1{1}, e2{2}, e3{3}, e4{4};
    Tree t = example_tree(e1, e2, e3, e4);
    LinComb<Word> img = arborify(t, ArborMode::Contracting);
    CHECK(img.size() == 5);
    CHECK(img.coefficient(Word{e1, e2, e3, e4}) == Rational(1));
    CHECK(img.coefficient(Word{e1, e3, e2, e4}) == Rational(1));
    CHECK(img.coefficient(Word{e1, e3, e4, e2}) == Rational(1));
    CHECK(img.coefficient(Word{e1, e2 + e3, e4}) == Rational(1));
    CHECK(img.coefficient(Word{e1, e3, e2 + e4}) == Rational(1));

    LinComb<Word> ab = arborify(Forest{{leaf(a), leaf(b)}}, ArborMode::Contracting);
    CHECK(ab == LinComb<Word>::single(Word{a, b}) + LinComb<Word>::single(Word{b, a}) +
                    LinComb<Word>::single(Word{a + b}));
}

TEST_CASE("plain arborification equals the linear-extension oracle") {
    for (const auto& f : enumerate_forests_by_grade({a, b}, 5))
        CHECK(arborify(f, ArborMode::Plain) == linear_extension_words(f));
}

TEST_CASE("arborification is multiplicative into the word products") {
    auto forests = enumerate_forests_by_grade({a, b}, 3);
    for (const auto& f : forests)
        for (const auto& g : forests) {
            if (f.grade() + g.grade() > 5) continue;
            CHECK(arborify(forest_product(f, g), ArborMode::Plain) ==
                  shuffle(arborify(f, ArborMode::Plain), arborify(g, ArborMode::Plain)));
            CHECK(arborify(forest_product(f, g), ArborMode::Contracting) ==
                  quasishuffle(arborify(f, ArborMode::Contracting),
                               arborify(g, ArborMode::Contracting)));
        }
}

TEST_CASE("coproduct side: deconcatenation against the reversed cut coproduct") {
    for (const auto& f : enumerate_forests_by_grade({a, b}, 4)) {
        for (ArborMode mode : {ArborMode::Plain, ArborMode::Contracting}) {
            LinComb<TensorPair<Word>> lhs;
            for (const auto& [w, c] : arborify(f, mode)) lhs.add(deconcat(w), c);
            LinComb<TensorPair<Word>> rhs;
            for (const auto& [pair, c] : ck_coproduct(f)) {
                // Reversed: the remaining (root) part arborifies into the
                // left deconcatenation leg.
                for (const auto& [wl, cl] : arborify(pair.second, mode))
                    for (const auto& [wr, cr] : arborify(pair.first, mode))
                        rhs.add({wl, wr}, c * cl * cr);
            }
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("grade, weight and length statistics of arborified words") {
    for (const auto& f : enumerate_forests_by_grade({a, b}, 5)) {
        for (const auto& [w, c] : arborify(f, ArborMode::Plain)) {
            CHECK(w.grade() == f.grade());
            CHECK(w.length() == f.vertex_count());
        }
        for (const auto& [w, c] : arborify(f, ArborMode::Contracting)) {
            CHECK(w.weight() == f.weight());
            CHECK(w.grade() == f.grade()); // no sign cancellation here
            CHECK(w.length() <= f.vertex_count());
        }
    }
}

TEST_CASE("closed-form arborified mould for fields") {
    Spectrum lam = field_spectrum({Rational(2)});
    CHECK(xi_arbo_field(Forest{{leaf(a)}}, lam) == Rational(1, 2));
    CHECK(xi_arbo_field(Forest{{leaf(a), leaf(a)}}, lam) == Rational(1, 4));

    // The 4-vertex example with concrete decorations in two variables.
    Spectrum lam2 = field_spectrum({Rational(1), Rational(3)});
    Decoration e1{1, 0}, e2{0, 1}, e3{1, 1}, e4{2, 0};
    Tree t = example_tree(e1, e2, e3, e4);
    Rational expect = Rational(1) / (pair_field(lam2, e1 + e2 + e3 + e4) *
                                     pair_field(lam2, e2) * pair_field(lam2, e3 + e4) *
                                     pair_field(lam2, e4));
    CHECK(xi_arbo_field(Forest{{t}}, lam2) == expect);
    CHECK(pullback([&](const Word& w) { return mould_xi_field(w, lam2); }, Forest{{t}},
                   ArborMode::Plain) == expect);
}

TEST_CASE("closed-form arborified mould for diffeomorphisms") {
    Spectrum l = diffeo_spectrum({Rational(2)});
    CHECK(chi_arbo_diffeo(Forest{{leaf(a)}}, l) == Rational(1));
    // Ladder a -> b with a = b = (1): 1/((2^2-1)(2-1)).
    Tree lad = b_plus(a, Forest{{leaf(a)}});
    CHECK(chi_arbo_diffeo(Forest{{lad}}, l) == Rational(1, 3));

    Spectrum l2 = diffeo_spectrum({Rational(2), Rational(3)});
    Decoration e1{1, 0}, e2{0, 1}, e3{1, 1}, e4{2, 0};
    Tree t = example_tree(e1, e2, e3, e4);
    Rational expect = Rational(1) / ((pair_diffeo(l2, e1 + e2 + e3 + e4) - Rational(1)) *
                                     (pair_diffeo(l2, e2) - Rational(1)) *
                                     (pair_diffeo(l2, e3 + e4) - Rational(1)) *
                                     (pair_diffeo(l2, e4) - Rational(1)));
    CHECK(chi_arbo_diffeo(Forest{{t}}, l2) == expect);
    CHECK(pullback([&](const Word& w) { return mould_chi_diffeo(w, l2); }, Forest{{t}},
                   ArborMode::Contracting) == expect);
}

TEST_CASE("character factorization holds tree by tree") {
    Spectrum lam = field_spectrum({Rational(1), Rational(3)});
    Spectrum l = diffeo_spectrum({Rational(2), Rational(3)});
    std::vector<Decoration> decs = {Decoration{1, 0}, Decoration{0, 1}};
    for (const auto& f : enumerate_forests_by_grade(decs, 5)) {
        CHECK(xi_arbo_field(f, lam) ==
              pullback([&](const Word& w) { return mould_xi_field(w, lam); }, f,
                       ArborMode::Plain));
        CHECK(chi_arbo_diffeo(f, l) ==
              pullback([&](const Word& w) { return mould_chi_diffeo(w, l); }, f,
                       ArborMode::Contracting));
    }
    CHECK(pullback([](const Word&) { return Rational(7); }, Forest{}, ArborMode::Plain) ==
          Rational(7)); // empty forest evaluates the form on the empty word
}

TEST_CASE("separative mould wrappers") {
    Spectrum lam = field_spectrum({Rational(2)});
    ArborifiedMould m = make_xi_arbo_field(lam);
    CHECK(m.separative);
    CHECK(m(Forest{}) == Rational(1));
    auto forests = enumerate_forests_by_grade({a}, 3);
    for (const auto& f : forests)
        for (const auto& g : forests) CHECK(m(forest_product(f, g)) == m(f) * m(g));
}

TEST_CASE("resonance carries the offending weight") {
    Spectrum lam = field_spectrum({Rational(1), Rational(-1)});
    Tree bad = leaf(Decoration{1, 1});
    try {
        xi_arbo_field(Forest{{bad}}, lam);
        FAIL("expected a resonance");
    } catch (const resonance_error& e) {
        CHECK(e.weight() == Decoration{1, 1});
    }
}
