#pragma once

#include "moulds/alphabet.hpp"
#include "moulds/lincomb.hpp"

#include <string>
#include <vector>

namespace moulds {

/// Decorated non-planar rooted tree in canonical form: children are kept
/// sorted by the canonical tree order, so structural equality coincides
/// with isomorphism of decorated posets.
struct Tree {
    Decoration dec;
    std::vector<Tree> children; // sorted, each canonical

    int vertex_count() const;
    Decoration weight() const;
    int grade() const;
};

/// Canonical total order: (grade, vertex count, root decoration,
/// children lexicographically), recursively. Grade-monotone, which keeps
/// enumeration output sorted by grade.
bool tree_less(const Tree& a, const Tree& b);
bool tree_equal(const Tree& a, const Tree& b);

inline bool operator<(const Tree& a, const Tree& b) { return tree_less(a, b); }
inline bool operator==(const Tree& a, const Tree& b) { return tree_equal(a, b); }
inline bool operator!=(const Tree& a, const Tree& b) { return !(a == b); }

/// Commutative monomial in trees: multiset kept in canonical sorted
/// order. The empty forest is the unit of the tree algebra.
struct Forest {
    std::vector<Tree> trees; // sorted, each canonical

    Forest() = default;
    explicit Forest(std::vector<Tree> t);
    Forest(std::initializer_list<Tree> t);

    bool empty() const { return trees.empty(); }
    int root_count() const { return static_cast<int>(trees.size()); }
    int vertex_count() const;
    Decoration weight() const;
    int grade() const;

    friend bool operator<(const Forest& a, const Forest& b);
    friend bool operator==(const Forest& a, const Forest& b);
    friend bool operator!=(const Forest& a, const Forest& b) { return !(a == b); }
};

std::string to_string(const Tree& t);
std::string to_string(const Forest& f);

/// Canonicalizes an arbitrarily-ordered tree (sorts children recursively).
Tree canonical(Tree t);

/// Grafting operator: a new root decorated by eta over the roots of F.
Tree b_plus(const Decoration& eta, const Forest& f);

Tree single_vertex(const Decoration& eta);

Forest forest_product(const Forest& a, const Forest& b);

/// Order of the automorphism group of the decorated forest.
Rational symmetry_factor(const Forest& f);
Rational symmetry_factor(const Tree& t);

/// One admissible cut: the pruned part (subtrees rooted at the cut) and
/// the remaining part containing the root. Includes the empty cut
/// (pruned empty) and the total cut (remaining empty).
struct Cut {
    Forest pruned;
    Forest remaining;
};

std::vector<Cut> admissible_cuts(const Tree& t);
std::vector<Cut> admissible_cuts(const Forest& f);

/// Admissible-cut coproduct, multiplicatively extended to forests;
/// terms are (pruned, remaining) pairs.
LinComb<TensorPair<Forest>> ck_coproduct(const Forest& f);
LinComb<TensorPair<Forest>> ck_coproduct(const Tree& t);

/// Antipode from the grading recursion, extended multiplicatively.
LinComb<Forest> ck_antipode(const Forest& f);

/// Product of the graded dual, stated at forest level: every tree of F
/// is attached either beside G or onto one of G's vertices, summed over
/// all such attachment maps with multiplicity.
LinComb<Forest> gl_product(const Forest& f, const Forest& g);

/// Scaling of the dual-basis isomorphism: F paired with its symmetry
/// factor. See gl_product for the transported product.
LinComb<Forest> dual_scaling(const Forest& f);

/// True iff every tree of every admissible cut of every tree of F
/// (both the pruned components and the remaining part) has weight in H.
bool in_ck_plus(const Forest& f);
bool in_ck_plus(const Tree& t);

/// All full subtrees rooted at the vertices of f, one per vertex.
std::vector<Tree> vertex_subtrees(const Forest& f);

/// Every canonical forest with cost-sum <= bound over the decoration
/// set, each exactly once, sorted by (cost, canonical order). Cost must
/// be >= 1 per decoration.
std::vector<Forest> enumerate_forests(const std::vector<Decoration>& decorations, int bound,
                                      int (*cost)(const Decoration&));

std::vector<Forest> enumerate_forests_by_grade(const std::vector<Decoration>& decorations,
                                               int max_grade);
std::vector<Forest> enumerate_forests_by_weight(const std::vector<Decoration>& decorations,
                                                int max_weight);

std::vector<Tree> enumerate_trees_by_grade(const std::vector<Decoration>& decorations,
                                           int max_grade);

} // namespace moulds
