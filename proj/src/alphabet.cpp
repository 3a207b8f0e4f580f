#include "moulds/alphabet.hpp"

#include <cmath>
#include <cstdlib>

namespace moulds {

std::string to_string(const Decoration& d) {
    std::string out = "(";
    for (int i = 0; i < d.dim(); ++i) {
        if (i) out += ",";
        out += std::to_string(d.entries[i]);
    }
    out += ")";
    return out;
}

bool in_H(const Decoration& eta) {
    int minus_ones = 0;
    for (int e : eta.entries) {
        if (e < -1) return false;
        if (e == -1) ++minus_ones;
    }
    return minus_ones <= 1 && eta.weight() >= 1;
}

bool in_H_i(const Decoration& eta, int i) {
    if (i < 0 || i >= eta.dim()) return false;
    for (int j = 0; j < eta.dim(); ++j) {
        int shifted = eta.entries[j] + (j == i ? 1 : 0);
        if (shifted < 0) return false;
    }
    return eta.weight() >= 1;
}

Rational pair_field(const Spectrum& lambda, const Decoration& eta) {
    if (lambda.mode != SpectrumMode::Field)
        throw std::invalid_argument("pair_field: spectrum is not in field mode");
    if (lambda.dim() != eta.dim())
        throw std::invalid_argument("pair_field: dimension mismatch");
    Rational sum(0);
    for (int i = 0; i < eta.dim(); ++i) sum += lambda.values[i] * Rational(eta.entries[i]);
    return sum;
}

Rational pair_diffeo(const Spectrum& l, const Decoration& eta) {
    if (l.mode != SpectrumMode::Diffeo)
        throw std::invalid_argument("pair_diffeo: spectrum is not in diffeo mode");
    if (l.dim() != eta.dim())
        throw std::invalid_argument("pair_diffeo: dimension mismatch");
    Rational prod(1);
    for (int i = 0; i < eta.dim(); ++i) {
        if (eta.entries[i] == 0) continue;
        if (l.values[i].is_zero())
            throw std::domain_error("pair_diffeo: zero multiplier l_" + std::to_string(i + 1));
        prod *= l.values[i].pow(eta.entries[i]);
    }
    return prod;
}

namespace {

// Walks the finite grid |n_i| <= h, sum n_i <= h and takes the minimum
// of |value(n)| over indices with nonzero value.
template <class ValueFn>
double omega_over_grid(int dim, int h, ValueFn&& value) {
    std::vector<int> n(dim, -h);
    double best = -1.0;
    while (true) {
        int sum = 0;
        for (int e : n) sum += e;
        if (sum <= h) {
            double v = std::fabs(value(n));
            if (v > 0.0 && (best < 0.0 || v < best)) best = v;
        }
        int i = 0;
        while (i < dim && n[i] == h) n[i++] = -h;
        if (i == dim) break;
        ++n[i];
    }
    return best < 0.0 ? 0.0 : best;
}

} // namespace

double omega(const Spectrum& lambda, int h) {
    if (lambda.mode != SpectrumMode::Field)
        throw std::invalid_argument("omega: spectrum is not in field mode");
    std::vector<double> lam;
    lam.reserve(lambda.values.size());
    for (const auto& v : lambda.values) lam.push_back(v.to_double());
    return omega_over_grid(lambda.dim(), h, [&](const std::vector<int>& n) {
        double s = 0.0;
        for (std::size_t i = 0; i < n.size(); ++i) s += n[i] * lam[i];
        return s;
    });
}

double omega_diffeo(const Spectrum& l, int h) {
    if (l.mode != SpectrumMode::Diffeo)
        throw std::invalid_argument("omega_diffeo: spectrum is not in diffeo mode");
    std::vector<double> mult;
    mult.reserve(l.values.size());
    for (const auto& v : l.values) {
        double d = v.to_double();
        if (d == 0.0) throw std::domain_error("omega_diffeo: zero multiplier");
        mult.push_back(d);
    }
    return omega_over_grid(l.dim(), h, [&](const std::vector<int>& n) {
        double p = 1.0;
        for (std::size_t i = 0; i < n.size(); ++i) p *= std::pow(mult[i], n[i]);
        return p - 1.0;
    });
}

} // namespace moulds
