#pragma once

#include "moulds/arborification.hpp"
#include "moulds/character.hpp"
#include "moulds/operators.hpp"
#include "moulds/series.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace moulds {

/// Closed-form linearization mould for fields: the inverse tail-sum
/// product 1 / prod <lambda, eta_j + ... + eta_s>.
Rational mould_xi_field(const Word& w, const Spectrum& lambda);

/// Its convolution inverse: (-1)^s / prod over head sums.
Rational mould_chi_field(const Word& w, const Spectrum& lambda);

/// Closed-form linearization mould for diffeomorphisms:
/// 1 / prod (l^{eta_j + ... + eta_s} - 1).
Rational mould_chi_diffeo(const Word& w, const Spectrum& l);

/// Its convolution inverse: (-1)^s / prod over head sums.
Rational mould_chi_diffeo_inverse(const Word& w, const Spectrum& l);

/// Grade-recursive solutions of the conjugacy character equations,
/// driven by the deconcatenation (words) or admissible-cut (forests)
/// coproduct. They agree with the closed forms above and with the
/// arborified closed forms; u gives the values of the data infinitesimal
/// character on single letters.
Character<Word> solve_character_field_words(std::function<Rational(const Decoration&)> u,
                                            Spectrum lambda);
Character<Word> solve_character_diffeo_words(Spectrum l);
Character<Forest> solve_character_field_forests(std::function<Rational(const Decoration&)> u,
                                                Spectrum lambda);
Character<Forest> solve_character_diffeo_forests(Spectrum l);

enum class BasisMode { Word, Forest };

struct GradeStat {
    int grade = 0;
    long count = 0;
    Rational max_abs;
};

/// Output of a linearization run. The transform conjugates the linear
/// model to the data: for fields psi with X^lin . psi_i = lambda_i psi_i
/// + P_i o psi, for diffeomorphisms phi with flin o f o phi = phi o flin.
/// The residual is that identity's defect, identically zero on success.
struct LinearizationResult {
    SpectrumMode mode = SpectrumMode::Field;
    BasisMode basis = BasisMode::Word;
    std::string direction = "linear_to_data";
    int nu = 0;
    int order = 0;
    SeriesMap transform;
    SeriesMap residual;
    std::vector<GradeStat> stats;

    bool residual_zero() const { return map_is_zero(residual); }
    /// Lowest total degree with a nonzero residual coefficient; -1 if none.
    int residual_first_degree() const;
};

LinearizationResult linearize(const SystemSpec& spec, BasisMode basis);

/// Order-by-order solution of the conjugacy identity using only series
/// arithmetic; the independent oracle the mould pipeline is checked
/// against.
SeriesMap oracle_linearize(const SystemSpec& spec);

/// Conjugacy residual of a candidate transform (same identity as in
/// LinearizationResult), for verification.
SeriesMap conjugacy_residual(const SystemSpec& spec, const SeriesMap& transform);

struct SliceViolation {
    Forest forest;
    int k = 0;
    long count = 0;
    double bound = 0.0;
};

/// Diagnostic report on the growth of arborified mould values over the
/// enumerated CK+ forests, in double arithmetic.
struct GrowthReport {
    std::vector<int> grades;
    std::vector<long> forest_counts;
    std::vector<double> max_abs;
    std::vector<double> fitted; // per-grade max_abs^(1/grade)
    double fitted_constant = 0.0;
    std::vector<SliceViolation> violations;
    std::vector<std::pair<int, double>> omega_samples;
    bool counting_check_done = false;
    std::string enumeration_note;
};

/// Enumerates CK+ forests up to max_grade, evaluates the arborified
/// mould magnitudes, fits per-grade geometric constants, and (when
/// counting_check is set) verifies the subtree slice-count bound
/// N_k(F) <= max(0, 2 nu gr(F) / 2^k - 1) against the small-denominator
/// slices [Omega(2^{k+1})/2, Omega(2^k)/2).
GrowthReport growth_report(const SystemSpec& spec, int max_grade, bool counting_check = true);

/// Smallest A with |coefficient| <= B(eta) A^{|eta|} over all computed
/// homogeneous coefficients of the transform; 0 when there are none.
double majorant_fit(const SeriesMap& transform,
                    const std::function<double(const Decoration&)>& profile = nullptr);

inline double majorant_fit(const LinearizationResult& result,
                           const std::function<double(const Decoration&)>& profile = nullptr) {
    return majorant_fit(result.transform, profile);
}

/// Per-grade coefficient statistics of a tangent-to-identity map.
std::vector<GradeStat> coefficient_stats(const SeriesMap& transform);

/// The data map f = id + u of a diffeo spec.
SeriesMap diffeo_data_map(const SystemSpec& spec);

/// Action of the linear field: sum <lambda, m> f_m x^m.
TruncSeries xlin_apply(const Spectrum& lambda, const TruncSeries& f);

} // namespace moulds
