#include "moulds/linearizer.hpp"
#include "moulds/operators.hpp"

#include <doctest.h>

using namespace moulds;

namespace {

const Decoration one{1};

SystemSpec field_1d(Rational lambda, std::map<int, Rational> coeffs_by_eta, int order) {
    SystemSpec s;
    s.mode = SpectrumMode::Field;
    s.nu = 1;
    s.spectrum.mode = SpectrumMode::Field;
    s.spectrum.values = {lambda};
    for (const auto& [eta, c] : coeffs_by_eta) s.coeffs[{0, Decoration{eta}}] = c;
    s.order = order;
    return s;
}

SystemSpec diffeo_1d(Rational l, std::map<int, Rational> coeffs_by_eta, int order) {
    SystemSpec s = field_1d(l, std::move(coeffs_by_eta), order);
    s.mode = SpectrumMode::Diffeo;
    s.spectrum.mode = SpectrumMode::Diffeo;
    return s;
}

DiffOperator x2d() { // x^2 d/dx in one variable
    DiffOperator op(1);
    op.add_term({2}, {1}, Rational(1));
    return op;
}

Tree leaf(const Decoration& d) { return single_vertex(d); }

} // namespace

TEST_CASE("field components") {
    SystemSpec s = field_1d(Rational(2), {{1, Rational(1)}}, 4);
    CHECK(field_component(s, one) == x2d());

    SystemSpec s2;
    s2.mode = SpectrumMode::Field;
    s2.nu = 2;
    s2.spectrum.mode = SpectrumMode::Field;
    s2.spectrum.values = {Rational(1), Rational(3)};
    s2.coeffs[{0, Decoration{-1, 2}}] = Rational(1);
    s2.order = 4;
    DiffOperator expected(2);
    expected.add_term({0, 2}, {1, 0}, Rational(1)); // x2^2 d1
    CHECK(field_component(s2, Decoration{-1, 2}) == expected);

    CHECK(field_component(s, Decoration{2}).is_zero()); // no data at eta = 2
}

TEST_CASE("diffeo components from the Taylor expansion") {
    SystemSpec s = diffeo_1d(Rational(2), {{1, Rational(1)}}, 6);
    auto comps = diffeo_components(s, 5, 6);
    REQUIRE(comps.count(Decoration{1}) == 1);
    REQUIRE(comps.count(Decoration{2}) == 1);
    CHECK(comps.at(Decoration{1}) == x2d());
    DiffOperator d2(1);
    d2.add_term({4}, {2}, Rational(1, 2));
    CHECK(comps.at(Decoration{2}) == d2);
    DiffOperator d3(1);
    d3.add_term({6}, {3}, Rational(1, 6));
    CHECK(comps.at(Decoration{3}) == d3);

    // Identity diffeomorphism: no components at all.
    SystemSpec id = diffeo_1d(Rational(2), {}, 6);
    CHECK(diffeo_components(id, 5, 6).empty());

    // Homogeneity: each component shifts monomial degree by its weight.
    for (const auto& [eta, op] : comps) {
        auto h = op.homogeneity();
        REQUIRE(h.has_value());
        CHECK(*h == eta);
        TruncSeries image = op.apply(TruncSeries::monomial(1, 10, {3}));
        for (const auto& [m, c] : image.coefficients()) CHECK(m[0] == 3 + eta.entries[0]);
    }
}

TEST_CASE("normal ordering") {
    // d o x = x d + 1.
    DiffOperator d(1), x(1);
    d.add_term({0}, {1}, Rational(1));
    x.add_term({1}, {0}, Rational(1));
    DiffOperator composed = d.compose(x);
    DiffOperator expected(1);
    expected.add_term({1}, {1}, Rational(1));
    expected.add_term({0}, {0}, Rational(1));
    CHECK(composed == expected);

    // x^2 d applied to x gives x^2.
    CHECK(x2d().apply_to_variable(0, 1, 5) == TruncSeries::monomial(1, 5, {2}));

    // Homogeneity of a composition adds.
    DiffOperator c = x2d().compose(x2d());
    auto h = c.homogeneity();
    REQUIRE(h.has_value());
    CHECK(*h == Decoration{2});
    CHECK(c.op_order() <= 2);
}

TEST_CASE("comould composes in reversed order") {
    SystemSpec s = field_1d(Rational(2), {{1, Rational(1)}}, 10);
    auto comps = single_vertex_components(s);

    CHECK(rho(Word{}, comps, 1).is_identity());

    // (x^2 d)^r applied to x is r! x^{r+1}; the factorial growth that the
    // tree expansion later compensates.
    Rational factorial(1);
    for (int r = 1; r <= 6; ++r) {
        factorial *= Rational(r);
        Word w(std::vector<Decoration>(static_cast<std::size_t>(r), one));
        TruncSeries image = rho(w, comps, 1).apply_to_variable(0, 1, 10);
        CHECK(image == TruncSeries::monomial(1, 10, {r + 1}, factorial));
    }

    // Anti-multiplicativity over concatenation.
    SystemSpec s2;
    s2.mode = SpectrumMode::Field;
    s2.nu = 2;
    s2.spectrum.mode = SpectrumMode::Field;
    s2.spectrum.values = {Rational(1), Rational(3)};
    s2.coeffs[{0, Decoration{1, 0}}] = Rational(1);
    s2.coeffs[{1, Decoration{0, 1}}] = Rational(1, 2);
    s2.coeffs[{0, Decoration{0, 1}}] = Rational(1, 3);
    s2.order = 8;
    auto comps2 = single_vertex_components(s2);
    std::vector<Word> words = enumerate_words_by_weight(s2.decorations(), 3);
    for (const auto& w1 : words)
        for (const auto& w2 : words) {
            DiffOperator lhs = rho(concat(w1, w2), comps2, 2);
            DiffOperator rhs = rho(w2, comps2, 2).compose(rho(w1, comps2, 2));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("derivation-type coproduct of the comould (field case)") {
    // rho(w).(uv) expands over all splits of the letters of w between the
    // two factors, preserving relative order.
    SystemSpec s2;
    s2.mode = SpectrumMode::Field;
    s2.nu = 2;
    s2.spectrum.mode = SpectrumMode::Field;
    s2.spectrum.values = {Rational(1), Rational(3)};
    s2.coeffs[{0, Decoration{1, 0}}] = Rational(1);
    s2.coeffs[{1, Decoration{0, 1}}] = Rational(1, 2);
    s2.order = 8;
    auto comps = single_vertex_components(s2);

    TruncSeries u = TruncSeries::monomial(2, 8, {1, 1}) + TruncSeries::monomial(2, 8, {2, 0});
    TruncSeries v = TruncSeries::monomial(2, 8, {0, 1}, Rational(1, 3)) +
                    TruncSeries::monomial(2, 8, {1, 0});

    for (const auto& w : enumerate_words_by_weight(s2.decorations(), 3)) {
        TruncSeries lhs = rho(w, comps, 2).apply(u * v);
        TruncSeries rhs(2, 8);
        int n = w.length();
        for (int mask = 0; mask < (1 << n); ++mask) {
            Word left, right;
            for (int i = 0; i < n; ++i)
                ((mask >> i) & 1 ? left : right).letters.push_back(w.letters[static_cast<std::size_t>(i)]);
            rhs += rho(left, comps, 2).apply(u) * rho(right, comps, 2).apply(v);
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("automorphism-type coproduct of the comould (diffeo case)") {
    // For substitution-automorphism components the expansion also lets a
    // letter split into two sub-weights, one for each factor.
    SystemSpec s = diffeo_1d(Rational(2), {{1, Rational(1)}, {2, Rational(1, 2)}}, 8);
    auto comps = diffeo_components(s, 7, 8);
    std::vector<Decoration> letters;
    for (const auto& [eta, op] : comps) letters.push_back(eta);

    TruncSeries u = TruncSeries::monomial(1, 8, {1}) + TruncSeries::monomial(1, 8, {2});
    TruncSeries v = TruncSeries::monomial(1, 8, {1}, Rational(1, 2));

    // Single letters: the three-way expansion (all left, all right, split).
    for (const auto& eta : letters) {
        TruncSeries lhs = comps.at(eta).apply(u * v);
        TruncSeries rhs = comps.at(eta).apply(u) * v + u * comps.at(eta).apply(v);
        for (int k = 1; k < eta.entries[0]; ++k) {
            Decoration left{k}, right{eta.entries[0] - k};
            if (comps.count(left) && comps.count(right))
                rhs += comps.at(left).apply(u) * comps.at(right).apply(v);
        }
        CHECK(lhs == rhs);
    }

    // Two-letter words: per-letter choices (left / right / split) with the
    // relative order preserved on both legs.
    auto side_op = [&](const std::vector<int>& word) {
        DiffOperator acc = DiffOperator::identity(1);
        for (int letter : word) {
            auto it = comps.find(Decoration{letter});
            if (it == comps.end()) return DiffOperator(1);
            acc = it->second.compose(acc);
        }
        return acc;
    };
    for (int e1 = 1; e1 <= 3; ++e1)
        for (int e2 = 1; e2 <= 3; ++e2) {
            Word w{Decoration{e1}, Decoration{e2}};
            TruncSeries lhs = rho(w, comps, 1).apply(u * v);
            TruncSeries rhs(1, 8);
            // choice per letter: (left_part, right_part), 0 meaning absent
            std::vector<std::pair<int, int>> choices1, choices2;
            auto choices_for = [](int e) {
                std::vector<std::pair<int, int>> out = {{e, 0}, {0, e}};
                for (int k = 1; k < e; ++k) out.push_back({k, e - k});
                return out;
            };
            for (const auto& [l1, r1] : choices_for(e1))
                for (const auto& [l2, r2] : choices_for(e2)) {
                    std::vector<int> left, right;
                    if (l1) left.push_back(l1);
                    if (l2) left.push_back(l2);
                    if (r1) right.push_back(r1);
                    if (r2) right.push_back(r2);
                    rhs += side_op(left).apply(u) * side_op(right).apply(v);
                }
            CHECK(lhs == rhs);
        }
}

TEST_CASE("diffeo components decompose over forests of single vertices") {
    // D_eta equals the sum of the coarborified operators of all
    // singleton-vertex forests with total weight eta.
    SystemSpec s = diffeo_1d(Rational(2), {{1, Rational(1)}, {2, Rational(1, 3)}}, 8);
    auto comps = diffeo_components(s, 6, 8);
    CoarborEvaluator ev(single_vertex_components(s), 1, 8);
    for (int eta = 1; eta <= 6; ++eta) {
        DiffOperator sum(1);
        // Multisets of data decorations {1, 2} with the given total.
        for (int twos = 0; 2 * twos <= eta; ++twos) {
            int ones = eta - 2 * twos;
            std::vector<Tree> vertices;
            for (int k = 0; k < ones; ++k) vertices.push_back(leaf(Decoration{1}));
            for (int k = 0; k < twos; ++k) vertices.push_back(leaf(Decoration{2}));
            sum += ev(Forest(std::move(vertices)));
        }
        auto it = comps.find(Decoration{eta});
        if (it == comps.end())
            CHECK(sum.is_zero());
        else
            CHECK(sum == it->second);
    }
}

TEST_CASE("coarborified operators: base cases and vanishing") {
    SystemSpec s = field_1d(Rational(2), {{1, Rational(1)}}, 10);
    CoarborEvaluator ev(single_vertex_components(s), 1, 12);

    CHECK(ev(Forest{}).is_identity());
    CHECK(ev(leaf(one)) == x2d());

    // Two equal singletons: (1/2!) x^4 d^2.
    DiffOperator expected(1);
    expected.add_term({4}, {2}, Rational(1, 2));
    CHECK(ev(Forest{{leaf(one), leaf(one)}}) == expected);

    // A ladder whose inner derivative kills the coefficient monomial.
    SystemSpec s2;
    s2.mode = SpectrumMode::Field;
    s2.nu = 2;
    s2.spectrum.mode = SpectrumMode::Field;
    s2.spectrum.values = {Rational(1), Rational(3)};
    s2.coeffs[{0, Decoration{-1, 2}}] = Rational(1);
    s2.coeffs[{1, Decoration{2, -1}}] = Rational(1);
    s2.order = 8;
    CoarborEvaluator ev2(single_vertex_components(s2), 2, 12);
    Tree bad = b_plus(Decoration{-1, 2}, Forest{{leaf(Decoration{-1, 2})}});
    CHECK(ev2(bad).is_zero());

    // Order and homogeneity across enumerated forests.
    for (const auto& f : enumerate_forests_by_weight(s2.decorations(), 4)) {
        const DiffOperator& op = ev2(f);
        if (op.is_zero()) continue;
        CHECK(op.op_order() == f.root_count());
        if (!f.empty()) {
            auto h = op.homogeneity();
            REQUIRE(h.has_value());
            CHECK(*h == f.weight());
        }
    }
}

TEST_CASE("coarborification vanishes outside the cut-stable family") {
    SystemSpec s2;
    s2.mode = SpectrumMode::Field;
    s2.nu = 2;
    s2.spectrum.mode = SpectrumMode::Field;
    s2.spectrum.values = {Rational(1), Rational(3)};
    s2.coeffs[{0, Decoration{-1, 2}}] = Rational(1);
    s2.coeffs[{1, Decoration{2, -1}}] = Rational(1);
    s2.order = 8;
    CoarborEvaluator ev(single_vertex_components(s2), 2, 20);
    auto vertex_cost = [](const Decoration&) { return 1; };
    for (const auto& f : enumerate_forests(s2.decorations(), 4, vertex_cost)) {
        if (!in_ck_plus(f)) CHECK(ev(f).is_zero());
    }
}

TEST_CASE("transported dual product matches operator composition") {
    // s(F) s(G) rho_arbo(F) o rho_arbo(G) = sum of s(K) rho_arbo(K) over
    // the attachment product terms.
    SystemSpec s2;
    s2.mode = SpectrumMode::Field;
    s2.nu = 2;
    s2.spectrum.mode = SpectrumMode::Field;
    s2.spectrum.values = {Rational(1), Rational(3)};
    s2.coeffs[{0, Decoration{1, 0}}] = Rational(1);
    s2.coeffs[{1, Decoration{0, 1}}] = Rational(1, 2);
    s2.coeffs[{0, Decoration{0, 1}}] = Rational(1, 3);
    s2.order = 8;
    CoarborEvaluator ev(single_vertex_components(s2), 2, 24);

    std::vector<Forest> small = enumerate_forests_by_weight(s2.decorations(), 2);
    for (const auto& f : small)
        for (const auto& g : small) {
            DiffOperator lhs = ev(f).compose(ev(g));
            lhs = (symmetry_factor(f) * symmetry_factor(g)) * lhs;
            DiffOperator rhs(2);
            for (const auto& [k, c] : gl_product(f, g))
                rhs += (c * symmetry_factor(k)) * ev(k);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("word and forest contractions produce the same automorphism") {
    // Field case, two variables, truncation by weight.
    SystemSpec s2;
    s2.mode = SpectrumMode::Field;
    s2.nu = 2;
    s2.spectrum.mode = SpectrumMode::Field;
    s2.spectrum.values = {Rational(1), Rational(3)};
    s2.coeffs[{0, Decoration{1, 0}}] = Rational(1);
    s2.coeffs[{1, Decoration{0, 1}}] = Rational(1, 2);
    s2.order = 5;
    auto comps = single_vertex_components(s2);
    auto chi_w = [&](const Word& w) { return mould_xi_field(w, s2.spectrum); };
    SeriesMap via_words = eval_automorphism_words(
        chi_w, enumerate_words_by_weight(s2.decorations(), 4), comps, 2, 5);

    CoarborEvaluator ev(comps, 2, 5);
    auto chi_f = [&](const Forest& f) { return xi_arbo_field(f, s2.spectrum); };
    SeriesMap via_forests = eval_automorphism_forests(
        chi_f, enumerate_forests_by_weight(s2.decorations(), 4), ev, 2, 5);

    CHECK(map_equal(via_words, via_forests));

    // Counit contracts to the identity map.
    auto counit = [](const Word& w) { return Rational(w.empty() ? 1 : 0); };
    SeriesMap id = eval_automorphism_words(
        counit, enumerate_words_by_weight(s2.decorations(), 4), comps, 2, 5);
    CHECK(map_equal(id, identity_map(2, 5)));
}

TEST_CASE("the golden evaluation example") {
    SystemSpec s = field_1d(Rational(2), {{1, Rational(1)}}, 3);
    auto comps = single_vertex_components(s);
    auto chi = [&](const Word& w) { return mould_xi_field(w, s.spectrum); };
    SeriesMap psi =
        eval_automorphism_words(chi, enumerate_words_by_weight(s.decorations(), 2), comps, 1, 3);
    TruncSeries expected = TruncSeries::monomial(1, 3, {1}) +
                           TruncSeries::monomial(1, 3, {2}, Rational(1, 2)) +
                           TruncSeries::monomial(1, 3, {3}, Rational(1, 4));
    CHECK(psi[0] == expected);
}

TEST_CASE("composition, inversion, flow and logarithm of maps") {
    SeriesMap id3 = identity_map(1, 3);
    TruncSeries x = TruncSeries::variable(1, 3, 0);

    SeriesMap phi = {x + TruncSeries::monomial(1, 3, {2})};
    CHECK(map_equal(compose_maps(phi, id3), phi));

    SeriesMap psi = {x + TruncSeries::monomial(1, 3, {3})};
    SeriesMap comp = compose_maps(phi, psi);
    TruncSeries expected = x + TruncSeries::monomial(1, 3, {2}) + TruncSeries::monomial(1, 3, {3});
    CHECK(comp[0] == expected);

    // Inverse of x + x^2 is x - x^2 + 2x^3 + O(x^4).
    SeriesMap inv = invert_map(phi);
    TruncSeries expected_inv = x - TruncSeries::monomial(1, 3, {2}) +
                               TruncSeries::monomial(1, 3, {3}, Rational(2));
    CHECK(inv[0] == expected_inv);
    CHECK(map_equal(compose_maps(phi, inv), id3));
    CHECK(map_equal(invert_map(inv), phi));
    CHECK(map_equal(invert_map(identity_map(2, 4)), identity_map(2, 4)));

    // Flow of x^2 d at time one: x + x^2 + x^3 + O(x^4).
    SeriesMap field = {TruncSeries::monomial(1, 3, {2})};
    SeriesMap flow = exp_field(field, 3);
    TruncSeries expected_flow =
        x + TruncSeries::monomial(1, 3, {2}) + TruncSeries::monomial(1, 3, {3});
    CHECK(flow[0] == expected_flow);

    // Logarithm inverts the flow; exp(0) is the identity.
    SeriesMap back = log_diffeo(flow, 3);
    CHECK(map_equal(back, field));
    CHECK(map_equal(exp_field({TruncSeries(1, 3)}, 3), id3));

    SeriesMap field2 = {TruncSeries::monomial(1, 6, {2}) +
                        TruncSeries::monomial(1, 6, {3}, Rational(1, 3))};
    CHECK(map_equal(log_diffeo(exp_field(field2, 6), 6), field2));
}
