#pragma once

#include "moulds/rational.hpp"

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace moulds {

/// Integer exponent vector decorating letters and tree vertices. The
/// alphabet H consists of those vectors with every entry >= -1, at most
/// one entry equal to -1, and positive weight; sums of such vectors
/// (which may leave H) are still valid decorations.
struct Decoration {
    std::vector<int> entries;

    Decoration() = default;
    explicit Decoration(std::vector<int> e) : entries(std::move(e)) {}
    Decoration(std::initializer_list<int> e) : entries(e) {}

    int dim() const { return static_cast<int>(entries.size()); }

    /// Signed sum of entries; additive under decoration sums.
    int weight() const {
        int w = 0;
        for (int e : entries) w += e;
        return w;
    }

    /// Sum of absolute entries; the Hopf-algebra grading.
    int grade() const {
        int g = 0;
        for (int e : entries) g += e < 0 ? -e : e;
        return g;
    }

    friend Decoration operator+(const Decoration& a, const Decoration& b) {
        // The dimension-0 decoration is the weight of an empty word or
        // forest and acts as a neutral zero.
        if (a.entries.empty()) return b;
        if (b.entries.empty()) return a;
        if (a.entries.size() != b.entries.size())
            throw std::invalid_argument("Decoration: dimension mismatch");
        Decoration out = a;
        for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i] += b.entries[i];
        return out;
    }

    auto operator<=>(const Decoration&) const = default;
};

std::string to_string(const Decoration& d);

/// True iff eta lies in H.
bool in_H(const Decoration& eta);

/// True iff eta lies in H_i (0-based coordinate index): eta + e_i has
/// nonnegative entries and eta has positive weight.
bool in_H_i(const Decoration& eta, int i);

enum class SpectrumMode { Field, Diffeo };

/// Linear-part data: eigenvalues lambda for a vector field, or
/// multipliers l for a diffeomorphism (all nonzero in that mode).
struct Spectrum {
    SpectrumMode mode = SpectrumMode::Field;
    std::vector<Rational> values;

    int dim() const { return static_cast<int>(values.size()); }
};

/// <lambda, eta> = sum lambda_i eta_i.
Rational pair_field(const Spectrum& lambda, const Decoration& eta);

/// l^eta = prod l_i^{eta_i}, with negative exponents as reciprocals.
Rational pair_diffeo(const Spectrum& l, const Decoration& eta);

/// Small-denominator function in diagnostic (double) arithmetic:
/// min |<n,lambda>| over nonzero-pairing integer vectors n with
/// sum n_i <= h; the enumeration is additionally bounded by |n_i| <= h
/// per coordinate to make it finite.
double omega(const Spectrum& lambda, int h);

/// Diffeomorphism analogue: min |l^n - 1| over the same index set.
double omega_diffeo(const Spectrum& l, int h);

/// Raised whenever a small denominator actually vanishes: a weight eta
/// with <lambda,eta> = 0 (field) or l^eta = 1 (diffeo) was hit.
class resonance_error : public std::runtime_error {
public:
    resonance_error(Decoration weight, const std::string& context)
        : std::runtime_error("resonance at weight " + to_string(weight) +
                             (context.empty() ? "" : " (" + context + ")")),
          weight_(std::move(weight)) {}

    const Decoration& weight() const { return weight_; }

private:
    Decoration weight_;
};

} // namespace moulds
