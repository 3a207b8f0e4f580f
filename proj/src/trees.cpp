#include "moulds/trees.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace moulds {

int Tree::vertex_count() const {
    int n = 1;
    for (const auto& c : children) n += c.vertex_count();
    return n;
}

Decoration Tree::weight() const {
    Decoration w = dec;
    for (const auto& c : children) w = w + c.weight();
    return w;
}

int Tree::grade() const {
    int g = dec.grade();
    for (const auto& c : children) g += c.grade();
    return g;
}

bool tree_less(const Tree& a, const Tree& b) {
    int ga = a.grade(), gb = b.grade();
    if (ga != gb) return ga < gb;
    int la = a.vertex_count(), lb = b.vertex_count();
    if (la != lb) return la < lb;
    if (a.dec != b.dec) return a.dec < b.dec;
    return std::lexicographical_compare(a.children.begin(), a.children.end(),
                                        b.children.begin(), b.children.end(), tree_less);
}

bool tree_equal(const Tree& a, const Tree& b) {
    if (a.dec != b.dec || a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!tree_equal(a.children[i], b.children[i])) return false;
    return true;
}

Forest::Forest(std::vector<Tree> t) : trees(std::move(t)) {
    std::sort(trees.begin(), trees.end(), tree_less);
}

Forest::Forest(std::initializer_list<Tree> t) : Forest(std::vector<Tree>(t)) {}

int Forest::vertex_count() const {
    int n = 0;
    for (const auto& t : trees) n += t.vertex_count();
    return n;
}

Decoration Forest::weight() const {
    if (trees.empty()) return Decoration{};
    Decoration w = trees.front().weight();
    for (std::size_t i = 1; i < trees.size(); ++i) w = w + trees[i].weight();
    return w;
}

int Forest::grade() const {
    int g = 0;
    for (const auto& t : trees) g += t.grade();
    return g;
}

bool operator<(const Forest& a, const Forest& b) {
    return std::lexicographical_compare(a.trees.begin(), a.trees.end(), b.trees.begin(),
                                        b.trees.end(), tree_less);
}

bool operator==(const Forest& a, const Forest& b) {
    if (a.trees.size() != b.trees.size()) return false;
    for (std::size_t i = 0; i < a.trees.size(); ++i)
        if (!tree_equal(a.trees[i], b.trees[i])) return false;
    return true;
}

std::string to_string(const Tree& t) {
    std::string out = to_string(t.dec);
    if (!t.children.empty()) {
        out += "[";
        for (std::size_t i = 0; i < t.children.size(); ++i) {
            if (i) out += " ";
            out += to_string(t.children[i]);
        }
        out += "]";
    }
    return out;
}

std::string to_string(const Forest& f) {
    if (f.empty()) return "{}";
    std::string out = "{";
    for (std::size_t i = 0; i < f.trees.size(); ++i) {
        if (i) out += " ";
        out += to_string(f.trees[i]);
    }
    out += "}";
    return out;
}

Tree canonical(Tree t) {
    for (auto& c : t.children) c = canonical(std::move(c));
    std::sort(t.children.begin(), t.children.end(), tree_less);
    return t;
}

Tree b_plus(const Decoration& eta, const Forest& f) {
    Tree t;
    t.dec = eta;
    t.children = f.trees; // already canonical and sorted
    return t;
}

Tree single_vertex(const Decoration& eta) { return b_plus(eta, Forest{}); }

Forest forest_product(const Forest& a, const Forest& b) {
    std::vector<Tree> all = a.trees;
    all.insert(all.end(), b.trees.begin(), b.trees.end());
    return Forest(std::move(all));
}

Rational symmetry_factor(const Tree& t) { return symmetry_factor(Forest{{t}}); }

Rational symmetry_factor(const Forest& f) {
    Rational s(1);
    std::size_t i = 0;
    while (i < f.trees.size()) {
        std::size_t j = i;
        while (j < f.trees.size() && tree_equal(f.trees[i], f.trees[j])) ++j;
        unsigned mult = static_cast<unsigned>(j - i);
        s *= symmetry_factor(Forest{std::vector<Tree>(f.trees[i].children)}).pow(mult);
        s *= Rational::factorial(mult);
        i = j;
    }
    return s;
}

std::vector<Cut> admissible_cuts(const Forest& f) {
    std::vector<Cut> acc{Cut{Forest{}, Forest{}}};
    for (const auto& t : f.trees) {
        std::vector<Cut> tree_cuts = admissible_cuts(t);
        std::vector<Cut> next;
        next.reserve(acc.size() * tree_cuts.size());
        for (const auto& base : acc)
            for (const auto& tc : tree_cuts)
                next.push_back(Cut{forest_product(base.pruned, tc.pruned),
                                   forest_product(base.remaining, tc.remaining)});
        acc = std::move(next);
    }
    return acc;
}

std::vector<Cut> admissible_cuts(const Tree& t) {
    std::vector<Cut> out;
    out.push_back(Cut{Forest{{t}}, Forest{}}); // cut at the root
    for (const auto& sub : admissible_cuts(Forest{std::vector<Tree>(t.children)}))
        out.push_back(Cut{sub.pruned, Forest{{b_plus(t.dec, sub.remaining)}}});
    return out;
}

LinComb<TensorPair<Forest>> ck_coproduct(const Tree& t) {
    LinComb<TensorPair<Forest>> out;
    for (const auto& cut : admissible_cuts(t)) out.add({cut.pruned, cut.remaining}, Rational(1));
    return out;
}

LinComb<TensorPair<Forest>> ck_coproduct(const Forest& f) {
    LinComb<TensorPair<Forest>> out;
    out.add({Forest{}, Forest{}}, Rational(1));
    for (const auto& t : f.trees) {
        LinComb<TensorPair<Forest>> factor = ck_coproduct(t);
        LinComb<TensorPair<Forest>> next;
        for (const auto& [acc_pair, acc_coeff] : out)
            for (const auto& [tp, tc] : factor)
                next.add({forest_product(acc_pair.first, tp.first),
                          forest_product(acc_pair.second, tp.second)},
                         acc_coeff * tc);
        out = std::move(next);
    }
    return out;
}

namespace {

LinComb<Forest> ck_antipode_tree(const Tree& t, std::map<Tree, LinComb<Forest>>& memo);

LinComb<Forest> ck_antipode_forest(const Forest& f, std::map<Tree, LinComb<Forest>>& memo) {
    LinComb<Forest> acc = LinComb<Forest>::single(Forest{});
    for (const auto& t : f.trees) {
        LinComb<Forest> st = ck_antipode_tree(t, memo);
        LinComb<Forest> next;
        for (const auto& [fa, ca] : acc)
            for (const auto& [fb, cb] : st) next.add(forest_product(fa, fb), ca * cb);
        acc = std::move(next);
    }
    return acc;
}

// S(T) = -T - sum S(P) R over proper cuts, from pi(S x id)Delta = unit counit.
LinComb<Forest> ck_antipode_tree(const Tree& t, std::map<Tree, LinComb<Forest>>& memo) {
    auto it = memo.find(t);
    if (it != memo.end()) return it->second;
    LinComb<Forest> out;
    out.add(Forest{{t}}, Rational(-1));
    for (const auto& cut : admissible_cuts(t)) {
        if (cut.remaining.empty()) continue;                    // the S(T)*1 term itself
        if (cut.pruned.empty()) continue;                       // handled by the -T above
        out.add(ck_antipode_forest(cut.pruned, memo)
                    .map_basis([&](const Forest& p) {
                        return LinComb<Forest>::single(forest_product(p, cut.remaining));
                    }),
                Rational(-1));
    }
    memo.emplace(t, out);
    return out;
}

} // namespace

LinComb<Forest> ck_antipode(const Forest& f) {
    std::map<Tree, LinComb<Forest>> memo;
    return ck_antipode_forest(f, memo);
}

namespace {

// Scratch representation with stable vertex ids for grafting.
struct ScratchTree {
    // node 0 is a phantom root; real nodes carry decorations.
    std::vector<Decoration> dec;    // dec[0] unused
    std::vector<std::vector<int>> kids;

    int add_node(const Decoration& d, int parent) {
        dec.push_back(d);
        kids.emplace_back();
        int id = static_cast<int>(dec.size()) - 1;
        kids[parent].push_back(id);
        return id;
    }

    int graft_tree(const Tree& t, int parent) {
        int id = add_node(t.dec, parent);
        for (const auto& c : t.children) graft_tree(c, id);
        return id;
    }

    Tree to_tree(int id) const {
        Tree t;
        t.dec = dec[id];
        for (int k : kids[id]) t.children.push_back(to_tree(k));
        return canonical(std::move(t));
    }

    Forest to_forest() const {
        std::vector<Tree> roots;
        for (int k : kids[0]) roots.push_back(to_tree(k));
        return Forest(std::move(roots));
    }
};

} // namespace

LinComb<Forest> gl_product(const Forest& f, const Forest& g) {
    ScratchTree base;
    base.dec.emplace_back();
    base.kids.emplace_back();
    for (const auto& t : g.trees) base.graft_tree(t, 0);
    int sites = static_cast<int>(base.dec.size()); // phantom root included

    LinComb<Forest> out;
    int k = f.root_count();
    std::vector<int> choice(static_cast<std::size_t>(k), 0);
    while (true) {
        ScratchTree scratch = base;
        for (int j = 0; j < k; ++j) scratch.graft_tree(f.trees[j], choice[j]);
        out.add(scratch.to_forest(), Rational(1));
        int j = 0;
        while (j < k && choice[j] == sites - 1) choice[j++] = 0;
        if (j == k) break;
        ++choice[j];
    }
    return out;
}

LinComb<Forest> dual_scaling(const Forest& f) {
    return LinComb<Forest>::single(f, symmetry_factor(f));
}

bool in_ck_plus(const Tree& t) {
    for (const auto& cut : admissible_cuts(t)) {
        for (const auto& part : {cut.pruned, cut.remaining})
            for (const auto& component : part.trees)
                if (!in_H(component.weight())) return false;
    }
    return true;
}

bool in_ck_plus(const Forest& f) {
    for (const auto& t : f.trees)
        if (!in_ck_plus(t)) return false;
    return true;
}

std::vector<Tree> vertex_subtrees(const Forest& f) {
    std::vector<Tree> out;
    std::function<void(const Tree&)> walk = [&](const Tree& t) {
        out.push_back(t);
        for (const auto& c : t.children) walk(c);
    };
    for (const auto& t : f.trees) walk(t);
    return out;
}

namespace {

struct Enumerator {
    const std::vector<Decoration>& decorations;
    int (*cost)(const Decoration&);
    // trees_by_cost[c] : all canonical trees of cost c, sorted.
    std::vector<std::vector<Tree>> trees_by_cost;

    Enumerator(const std::vector<Decoration>& d, int bound, int (*c)(const Decoration&))
        : decorations(d), cost(c) {
        trees_by_cost.resize(static_cast<std::size_t>(bound) + 1);
        for (int g = 1; g <= bound; ++g) {
            for (const auto& dec : decorations) {
                int dc = cost(dec);
                if (dc < 1) throw std::invalid_argument("enumerate_forests: cost below 1");
                if (dc > g) continue;
                for (const auto& f : forests_up_to(g - dc, g - dc))
                    if (forest_cost(f) == g - dc)
                        trees_by_cost[static_cast<std::size_t>(g)].push_back(b_plus(dec, f));
            }
            auto& v = trees_by_cost[static_cast<std::size_t>(g)];
            std::sort(v.begin(), v.end(), tree_less);
            v.erase(std::unique(v.begin(), v.end(), tree_equal), v.end());
        }
    }

    int forest_cost(const Forest& f) const {
        int c = 0;
        for (const auto& t : f.trees) c += tree_cost(t);
        return c;
    }

    int tree_cost(const Tree& t) const {
        int c = cost(t.dec);
        for (const auto& k : t.children) c += tree_cost(k);
        return c;
    }

    // All forests of cost <= bound built from trees of cost <= tree_bound,
    // as multisets with non-decreasing (cost, order) index to avoid
    // duplicates.
    std::vector<Forest> forests_up_to(int bound, int tree_bound) const {
        std::vector<std::pair<int, const Tree*>> pool;
        for (int c = 1; c <= tree_bound && c < static_cast<int>(trees_by_cost.size()); ++c)
            for (const auto& t : trees_by_cost[static_cast<std::size_t>(c)]) pool.emplace_back(c, &t);
        std::vector<Forest> out;
        std::vector<Tree> acc;
        std::function<void(int, std::size_t)> rec = [&](int budget, std::size_t min_idx) {
            out.push_back(Forest(std::vector<Tree>(acc)));
            for (std::size_t i = min_idx; i < pool.size(); ++i) {
                if (pool[i].first > budget) continue;
                acc.push_back(*pool[i].second);
                rec(budget - pool[i].first, i);
                acc.pop_back();
            }
        };
        rec(bound, 0);
        return out;
    }
};

} // namespace

std::vector<Forest> enumerate_forests(const std::vector<Decoration>& decorations, int bound,
                                      int (*cost)(const Decoration&)) {
    Enumerator e(decorations, bound, cost);
    std::vector<Forest> out = e.forests_up_to(bound, bound);
    std::sort(out.begin(), out.end(), [&](const Forest& a, const Forest& b) {
        int ca = e.forest_cost(a), cb = e.forest_cost(b);
        if (ca != cb) return ca < cb;
        return a < b;
    });
    return out;
}

std::vector<Forest> enumerate_forests_by_grade(const std::vector<Decoration>& decorations,
                                               int max_grade) {
    return enumerate_forests(decorations, max_grade, [](const Decoration& d) { return d.grade(); });
}

std::vector<Forest> enumerate_forests_by_weight(const std::vector<Decoration>& decorations,
                                                int max_weight) {
    return enumerate_forests(decorations, max_weight,
                             [](const Decoration& d) { return d.weight(); });
}

std::vector<Tree> enumerate_trees_by_grade(const std::vector<Decoration>& decorations,
                                           int max_grade) {
    std::vector<Tree> out;
    for (const auto& f : enumerate_forests_by_grade(decorations, max_grade))
        if (f.root_count() == 1) out.push_back(f.trees.front());
    return out;
}

} // namespace moulds
