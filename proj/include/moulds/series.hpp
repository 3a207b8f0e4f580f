#pragma once

#include "moulds/alphabet.hpp"
#include "moulds/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace moulds {

/// Exponent multi-index of a monomial x^m, all entries >= 0.
using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& m);
MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b);
MultiIndex unit_index(int nu, int i);

/// Multivariate formal series truncated at a total degree; monomials of
/// higher degree are discarded by every operation, so arithmetic is
/// exact modulo the truncation ideal.
class TruncSeries {
public:
    TruncSeries() = default;
    TruncSeries(int nu, int order) : nu_(nu), order_(order) {}

    static TruncSeries monomial(int nu, int order, const MultiIndex& m,
                                const Rational& c = Rational(1));
    static TruncSeries variable(int nu, int order, int i);

    int nu() const { return nu_; }
    int order() const { return order_; }

    void set(const MultiIndex& m, const Rational& c);
    void add(const MultiIndex& m, const Rational& c);
    Rational coefficient(const MultiIndex& m) const;

    bool is_zero() const { return coeffs_.empty(); }
    /// Lowest total degree with a nonzero coefficient; -1 for the zero series.
    int valuation() const;

    TruncSeries& operator+=(const TruncSeries& o);
    TruncSeries& operator-=(const TruncSeries& o);
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    friend TruncSeries operator*(const Rational& s, TruncSeries a);
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        return a.nu_ == b.nu_ && a.coeffs_ == b.coeffs_;
    }

    /// Substitutes the argument series for the variables; truncation
    /// orders must match.
    TruncSeries compose(const std::vector<TruncSeries>& args) const;

    /// Rescales variables x_i -> factors_i * x_i.
    TruncSeries scale_variables(const std::vector<Rational>& factors) const;

    TruncSeries truncated(int new_order) const;

    const std::map<MultiIndex, Rational>& coefficients() const { return coeffs_; }

    std::string str() const;

private:
    int nu_ = 0;
    int order_ = 0;
    std::map<MultiIndex, Rational> coeffs_;
};

/// A formal map C^nu -> C^nu as a vector of truncated coordinate series.
using SeriesMap = std::vector<TruncSeries>;

SeriesMap identity_map(int nu, int order);
bool tangent_to_identity(const SeriesMap& phi);
bool map_equal(const SeriesMap& a, const SeriesMap& b);
bool map_is_zero(const SeriesMap& a);

/// phi o psi truncated at the common order; both tangent to identity.
SeriesMap compose_maps(const SeriesMap& phi, const SeriesMap& psi);

/// Compositional inverse, solved order by order.
SeriesMap invert_map(const SeriesMap& phi);

} // namespace moulds
