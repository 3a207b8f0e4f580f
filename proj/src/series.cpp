#include "moulds/series.hpp"

#include <stdexcept>

namespace moulds {

int total_degree(const MultiIndex& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

MultiIndex unit_index(int nu, int i) {
    MultiIndex m(static_cast<std::size_t>(nu), 0);
    m[static_cast<std::size_t>(i)] = 1;
    return m;
}

TruncSeries TruncSeries::monomial(int nu, int order, const MultiIndex& m, const Rational& c) {
    TruncSeries s(nu, order);
    s.add(m, c);
    return s;
}

TruncSeries TruncSeries::variable(int nu, int order, int i) {
    return monomial(nu, order, unit_index(nu, i));
}

void TruncSeries::set(const MultiIndex& m, const Rational& c) {
    if (total_degree(m) > order_) return;
    if (c.is_zero())
        coeffs_.erase(m);
    else
        coeffs_[m] = c;
}

void TruncSeries::add(const MultiIndex& m, const Rational& c) {
    if (c.is_zero() || total_degree(m) > order_) return;
    auto [it, inserted] = coeffs_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

Rational TruncSeries::coefficient(const MultiIndex& m) const {
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

int TruncSeries::valuation() const {
    int v = -1;
    for (const auto& [m, c] : coeffs_) {
        int d = total_degree(m);
        if (v < 0 || d < v) v = d;
    }
    return v;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
    for (const auto& [m, c] : o.coeffs_) add(m, c);
    return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
    for (const auto& [m, c] : o.coeffs_) add(m, -c);
    return *this;
}

TruncSeries operator*(const Rational& s, TruncSeries a) {
    if (s.is_zero()) return TruncSeries(a.nu_, a.order_);
    for (auto& [m, c] : a.coeffs_) c *= s;
    return a;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    TruncSeries out(a.nu_, a.order_);
    for (const auto& [ma, ca] : a.coeffs_) {
        int da = total_degree(ma);
        for (const auto& [mb, cb] : b.coeffs_) {
            if (da + total_degree(mb) > out.order_) continue;
            out.add(mi_add(ma, mb), ca * cb);
        }
    }
    return out;
}

TruncSeries TruncSeries::compose(const std::vector<TruncSeries>& args) const {
    if (static_cast<int>(args.size()) != nu_)
        throw std::invalid_argument("TruncSeries::compose: argument count mismatch");
    // Memoized powers of each argument.
    std::vector<std::vector<TruncSeries>> powers(args.size());
    for (std::size_t i = 0; i < args.size(); ++i)
        powers[i].push_back(TruncSeries::monomial(nu_, order_, MultiIndex(nu_, 0)));
    auto power = [&](std::size_t i, int e) -> const TruncSeries& {
        while (static_cast<int>(powers[i].size()) <= e)
            powers[i].push_back(powers[i].back() * args[i]);
        return powers[i][static_cast<std::size_t>(e)];
    };
    TruncSeries out(nu_, order_);
    for (const auto& [m, c] : coeffs_) {
        TruncSeries term = TruncSeries::monomial(nu_, order_, MultiIndex(nu_, 0), c);
        for (std::size_t i = 0; i < args.size(); ++i)
            if (m[i] != 0) term = term * power(i, m[i]);
        out += term;
    }
    return out;
}

TruncSeries TruncSeries::scale_variables(const std::vector<Rational>& factors) const {
    TruncSeries out(nu_, order_);
    for (const auto& [m, c] : coeffs_) {
        Rational f = c;
        for (std::size_t i = 0; i < factors.size(); ++i)
            if (m[i] != 0) f *= factors[i].pow(m[i]);
        out.add(m, f);
    }
    return out;
}

TruncSeries TruncSeries::truncated(int new_order) const {
    TruncSeries out(nu_, new_order);
    for (const auto& [m, c] : coeffs_) out.add(m, c);
    return out;
}

std::string TruncSeries::str() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : coeffs_) {
        if (!out.empty()) out += " + ";
        out += c.str();
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            out += "*x" + std::to_string(i + 1);
            if (m[i] != 1) out += "^" + std::to_string(m[i]);
        }
    }
    return out;
}

SeriesMap identity_map(int nu, int order) {
    SeriesMap out;
    for (int i = 0; i < nu; ++i) out.push_back(TruncSeries::variable(nu, order, i));
    return out;
}

bool tangent_to_identity(const SeriesMap& phi) {
    int nu = static_cast<int>(phi.size());
    for (int i = 0; i < nu; ++i) {
        TruncSeries diff = phi[static_cast<std::size_t>(i)];
        diff -= TruncSeries::variable(nu, diff.order(), i);
        if (!diff.is_zero() && diff.valuation() < 2) return false;
    }
    return true;
}

bool map_equal(const SeriesMap& a, const SeriesMap& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

bool map_is_zero(const SeriesMap& a) {
    for (const auto& s : a)
        if (!s.is_zero()) return false;
    return true;
}

SeriesMap compose_maps(const SeriesMap& phi, const SeriesMap& psi) {
    SeriesMap out;
    out.reserve(phi.size());
    for (const auto& component : phi) out.push_back(component.compose(psi));
    return out;
}

SeriesMap invert_map(const SeriesMap& phi) {
    if (!tangent_to_identity(phi))
        throw std::invalid_argument("invert_map: map is not tangent to the identity");
    int nu = static_cast<int>(phi.size());
    int order = phi.empty() ? 0 : phi.front().order();
    // psi = id - h o psi where phi = id + h; the fixed-point iteration
    // gains one order of accuracy per step.
    SeriesMap h;
    for (int i = 0; i < nu; ++i) {
        TruncSeries hi = phi[static_cast<std::size_t>(i)];
        hi -= TruncSeries::variable(nu, order, i);
        h.push_back(hi);
    }
    SeriesMap psi = identity_map(nu, order);
    for (int step = 0; step < order; ++step) {
        SeriesMap next;
        for (int i = 0; i < nu; ++i) {
            TruncSeries s = TruncSeries::variable(nu, order, i);
            s -= h[static_cast<std::size_t>(i)].compose(psi);
            next.push_back(s);
        }
        if (map_equal(next, psi)) break;
        psi = std::move(next);
    }
    return psi;
}

} // namespace moulds
