#pragma once

#include "moulds/alphabet.hpp"
#include "moulds/series.hpp"
#include "moulds/trees.hpp"
#include "moulds/words.hpp"

#include <climits>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace moulds {

/// Element of the polynomial differential-operator algebra, kept in
/// normal order: a sum of terms c * x^m d^k with all derivatives on the
/// right. Composition performs the Leibniz expansion eagerly.
class DiffOperator {
public:
    using TermKey = std::pair<MultiIndex, MultiIndex>; // (monomial, derivative)

    DiffOperator() = default;
    explicit DiffOperator(int nu) : nu_(nu) {}

    static DiffOperator identity(int nu);

    int nu() const { return nu_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_identity() const;

    void add_term(const MultiIndex& monomial, const MultiIndex& derivative, const Rational& c);

    DiffOperator& operator+=(const DiffOperator& o);
    friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
    friend DiffOperator operator*(const Rational& s, DiffOperator a);
    friend bool operator==(const DiffOperator& a, const DiffOperator& b) {
        return a.nu_ == b.nu_ && a.terms_ == b.terms_;
    }

    /// Normal-ordered product: (*this) applied after `rhs`. Terms whose
    /// monomial degree exceeds degree_cap are dropped; they cannot touch
    /// coefficients below that degree.
    DiffOperator compose(const DiffOperator& rhs, int degree_cap = INT_MAX / 2) const;

    TruncSeries apply(const TruncSeries& f) const;
    TruncSeries apply_to_variable(int i, int nu, int order) const;

    /// Common value of m - k over all terms, when it exists.
    std::optional<Decoration> homogeneity() const;
    /// Maximal derivative order among the terms (0 for the zero operator).
    int op_order() const;

    const std::map<TermKey, Rational>& terms() const { return terms_; }

    std::string str() const;

private:
    int nu_ = 0;
    std::map<TermKey, Rational> terms_;
};

/// Input data of a linearization problem: the spectrum of the linear
/// part and the homogeneous coefficients of the perturbation, truncated
/// at a total-degree order.
struct SystemSpec {
    SpectrumMode mode = SpectrumMode::Field;
    int nu = 0;
    Spectrum spectrum;
    std::map<std::pair<int, Decoration>, Rational> coeffs; // (i, eta) -> coefficient
    int order = 1;

    /// Distinct decorations carrying a nonzero coefficient.
    std::vector<Decoration> decorations() const;

    /// Perturbation coordinate series: P_i = sum_eta c^i_eta x^{eta+e_i}.
    SeriesMap perturbation() const;

    /// Throws std::invalid_argument on malformed data (eta outside H_i,
    /// dimension mismatches, zero diffeo multipliers, order < 1).
    void validate() const;
};

/// Homogeneous field component: B_eta = sum_i a^i_eta x^eta x_i d_i.
DiffOperator field_component(const SystemSpec& spec, const Decoration& eta);

/// First-order operators sum_i c^i_eta x^eta x_i d_i for every data
/// decoration; the building blocks of the coarborification in both modes.
std::map<Decoration, DiffOperator> single_vertex_components(const SystemSpec& spec);

/// Homogeneous components of the substitution automorphism of a
/// diffeomorphism, from the Taylor expansion; every component of weight
/// <= weight_cap, with monomials kept up to degree_cap.
std::map<Decoration, DiffOperator> diffeo_components(const SystemSpec& spec, int weight_cap,
                                                     int degree_cap);

/// Comould: the letterwise components composed in reversed order,
/// rho(eta_1..eta_s) = C_{eta_s} ... C_{eta_1}; letters without a
/// component are read as zero.
DiffOperator rho(const Word& w, const std::map<Decoration, DiffOperator>& components, int nu,
                 int degree_cap = INT_MAX / 2);

/// Homogeneous coarborification: assigns to each decorated forest a
/// differential operator of order r(F) and homogeneity ||F||, built
/// recursively from the single-vertex components. Results are cached by
/// canonical forest.
class CoarborEvaluator {
public:
    CoarborEvaluator(std::map<Decoration, DiffOperator> single_vertex, int nu,
                     int degree_cap = INT_MAX / 2);

    const DiffOperator& operator()(const Forest& f);
    const DiffOperator& operator()(const Tree& t);

private:
    // Coefficient series rho_arbo(T).x_i, one per coordinate.
    const std::vector<TruncSeries>& tree_coefficients(const Tree& t);

    std::map<Decoration, DiffOperator> single_vertex_;
    int nu_;
    int degree_cap_;
    std::map<Forest, DiffOperator> cache_;
    std::map<Tree, std::vector<TruncSeries>> tree_coeff_cache_;
};

/// ev of a mould-comould contraction: x_i plus the sum of chi(b) rho(b).x_i
/// over the given basis elements (the empty element contributes the
/// identity, so the basis should include it).
SeriesMap eval_automorphism_words(const std::function<Rational(const Word&)>& chi,
                                  const std::vector<Word>& basis,
                                  const std::map<Decoration, DiffOperator>& components, int nu,
                                  int order);

SeriesMap eval_automorphism_forests(const std::function<Rational(const Forest&)>& chi,
                                    const std::vector<Forest>& basis, CoarborEvaluator& rho_arbo,
                                    int nu, int order);

/// Flow at time one of a linear-part-free vector field, and its inverse.
SeriesMap exp_field(const SeriesMap& field_components, int order);
SeriesMap log_diffeo(const SeriesMap& phi, int order);

TruncSeries series_derivative(const TruncSeries& f, int i);

} // namespace moulds
