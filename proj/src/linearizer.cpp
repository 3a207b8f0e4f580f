#include "moulds/linearizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

namespace moulds {

Rational mould_xi_field(const Word& w, const Spectrum& lambda) {
    Rational prod(1);
    Decoration tail;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        tail = tail.entries.empty() ? *it : tail + *it;
        Rational denom = pair_field(lambda, tail);
        if (denom.is_zero()) throw resonance_error(tail, "tail-sum pairing vanishes");
        prod /= denom;
    }
    return prod;
}

Rational mould_chi_field(const Word& w, const Spectrum& lambda) {
    Rational prod(w.length() % 2 == 0 ? 1 : -1);
    Decoration head;
    for (const auto& letter : w.letters) {
        head = head.entries.empty() ? letter : head + letter;
        Rational denom = pair_field(lambda, head);
        if (denom.is_zero()) throw resonance_error(head, "head-sum pairing vanishes");
        prod /= denom;
    }
    return prod;
}

Rational mould_chi_diffeo(const Word& w, const Spectrum& l) {
    Rational prod(1);
    Decoration tail;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        tail = tail.entries.empty() ? *it : tail + *it;
        Rational denom = pair_diffeo(l, tail) - Rational(1);
        if (denom.is_zero()) throw resonance_error(tail, "tail-sum multiplier equals 1");
        prod /= denom;
    }
    return prod;
}

Rational mould_chi_diffeo_inverse(const Word& w, const Spectrum& l) {
    // Alternating head-sum product; each head sum except the last also
    // contributes its multiplier as a numerator, which is what makes this
    // the convolution inverse (equivalently chi o S in the quasishuffle
    // algebra, where the antipode carries contraction terms).
    Rational prod(w.length() % 2 == 0 ? 1 : -1);
    Decoration head;
    for (int j = 0; j < w.length(); ++j) {
        head = head.entries.empty() ? w.letters[static_cast<std::size_t>(j)]
                                    : head + w.letters[static_cast<std::size_t>(j)];
        Rational multiplier = pair_diffeo(l, head);
        Rational denom = multiplier - Rational(1);
        if (denom.is_zero()) throw resonance_error(head, "head-sum multiplier equals 1");
        prod /= denom;
        if (j + 1 < w.length()) prod *= multiplier;
    }
    return prod;
}

Character<Word> solve_character_field_words(std::function<Rational(const Decoration&)> u,
                                            Spectrum lambda) {
    auto self = std::make_shared<std::function<Rational(const Word&)>>();
    *self = [u = std::move(u), lambda = std::move(lambda), self](const Word& w) -> Rational {
        if (w.empty()) return Rational(1);
        // <lambda,||w||> xi(w) = (u * xi)(w) with u supported on letters.
        Rational rhs(0);
        for (const auto& [pair, c] : deconcat(w)) {
            if (pair.first.length() != 1) continue;
            Rational uv = u(pair.first.letters.front());
            if (uv.is_zero()) continue;
            rhs += c * uv * (*self)(pair.second);
        }
        Rational denom = pair_field(lambda, w.weight());
        if (denom.is_zero()) throw resonance_error(w.weight(), "word weight pairing vanishes");
        return rhs / denom;
    };
    Character<Word> out;
    out.kind = CharKind::Character;
    out.eval = [self](const Word& w) { return (*self)(w); };
    return memoized(out);
}

Character<Word> solve_character_diffeo_words(Spectrum l) {
    auto self = std::make_shared<std::function<Rational(const Word&)>>();
    *self = [l = std::move(l), self](const Word& w) -> Rational {
        if (w.empty()) return Rational(1);
        // (l^{||w||} - 1) chi(w) = sum over proper prefixes of the data
        // character (supported on single letters) times chi of the rest.
        Rational rhs(0);
        for (const auto& [pair, c] : deconcat(w)) {
            if (pair.first.length() != 1) continue;
            rhs += c * (*self)(pair.second);
        }
        Rational denom = pair_diffeo(l, w.weight()) - Rational(1);
        if (denom.is_zero()) throw resonance_error(w.weight(), "word weight multiplier equals 1");
        return rhs / denom;
    };
    Character<Word> out;
    out.kind = CharKind::Character;
    out.eval = [self](const Word& w) { return (*self)(w); };
    return memoized(out);
}

Character<Forest> solve_character_field_forests(std::function<Rational(const Decoration&)> u,
                                                Spectrum lambda) {
    auto self = std::make_shared<std::function<Rational(const Forest&)>>();
    *self = [u = std::move(u), lambda = std::move(lambda), self](const Forest& f) -> Rational {
        if (f.empty()) return Rational(1);
        if (f.root_count() > 1) {
            Rational prod(1);
            for (const auto& t : f.trees) prod *= (*self)(Forest{{t}});
            return prod;
        }
        const Tree& t = f.trees.front();
        // <lambda,||T||> xi(T) = (xi * u)(T); u is supported on single
        // vertices, so only the cut pruning all root branches survives.
        Rational rhs(0);
        for (const auto& cut : admissible_cuts(t)) {
            if (cut.remaining.root_count() != 1) continue;
            const Tree& r = cut.remaining.trees.front();
            if (!r.children.empty()) continue;
            Rational uv = u(r.dec);
            if (uv.is_zero()) continue;
            rhs += (*self)(cut.pruned) * uv;
        }
        Rational denom = pair_field(lambda, t.weight());
        if (denom.is_zero()) throw resonance_error(t.weight(), "tree weight pairing vanishes");
        return rhs / denom;
    };
    Character<Forest> out;
    out.kind = CharKind::Character;
    out.eval = [self](const Forest& f) { return (*self)(f); };
    return memoized(out);
}

Character<Forest> solve_character_diffeo_forests(Spectrum l) {
    auto self = std::make_shared<std::function<Rational(const Forest&)>>();
    *self = [l = std::move(l), self](const Forest& f) -> Rational {
        if (f.empty()) return Rational(1);
        if (f.root_count() > 1) {
            Rational prod(1);
            for (const auto& t : f.trees) prod *= (*self)(Forest{{t}});
            return prod;
        }
        const Tree& t = f.trees.front();
        // (l^{||T||} - 1) chi(T) = sum over cuts with the remaining part a
        // forest of single vertices, excluding the total-cut self term.
        Rational rhs(0);
        for (const auto& cut : admissible_cuts(t)) {
            if (cut.remaining.empty()) continue; // self term, moved to the left
            bool singletons = true;
            for (const auto& r : cut.remaining.trees)
                if (!r.children.empty()) {
                    singletons = false;
                    break;
                }
            if (!singletons) continue;
            rhs += (*self)(cut.pruned);
        }
        Rational denom = pair_diffeo(l, t.weight()) - Rational(1);
        if (denom.is_zero()) throw resonance_error(t.weight(), "tree weight multiplier equals 1");
        return rhs / denom;
    };
    Character<Forest> out;
    out.kind = CharKind::Character;
    out.eval = [self](const Forest& f) { return (*self)(f); };
    return memoized(out);
}

int LinearizationResult::residual_first_degree() const {
    int best = -1;
    for (const auto& s : residual) {
        if (s.is_zero()) continue;
        int v = s.valuation();
        if (best < 0 || v < best) best = v;
    }
    return best;
}

TruncSeries xlin_apply(const Spectrum& lambda, const TruncSeries& f) {
    TruncSeries out(f.nu(), f.order());
    for (const auto& [m, c] : f.coefficients()) {
        Rational factor(0);
        for (int i = 0; i < f.nu(); ++i)
            factor += lambda.values[static_cast<std::size_t>(i)] * Rational(m[static_cast<std::size_t>(i)]);
        out.add(m, factor * c);
    }
    return out;
}

SeriesMap diffeo_data_map(const SystemSpec& spec) {
    SeriesMap f = identity_map(spec.nu, spec.order);
    SeriesMap u = spec.perturbation();
    for (int i = 0; i < spec.nu; ++i) f[static_cast<std::size_t>(i)] += u[static_cast<std::size_t>(i)];
    return f;
}

SeriesMap conjugacy_residual(const SystemSpec& spec, const SeriesMap& transform) {
    const int nu = spec.nu;
    SeriesMap residual;
    if (spec.mode == SpectrumMode::Field) {
        SeriesMap p = spec.perturbation();
        for (int i = 0; i < nu; ++i) {
            const TruncSeries& psi_i = transform[static_cast<std::size_t>(i)];
            TruncSeries r = xlin_apply(spec.spectrum, psi_i);
            r -= spec.spectrum.values[static_cast<std::size_t>(i)] * psi_i;
            r -= p[static_cast<std::size_t>(i)].compose(transform);
            residual.push_back(r);
        }
    } else {
        SeriesMap f = diffeo_data_map(spec);
        SeriesMap f_after = compose_maps(f, transform); // f o phi
        for (int i = 0; i < nu; ++i) {
            TruncSeries lhs = spec.spectrum.values[static_cast<std::size_t>(i)] * f_after[static_cast<std::size_t>(i)];
            TruncSeries rhs = transform[static_cast<std::size_t>(i)].scale_variables(spec.spectrum.values);
            residual.push_back(lhs - rhs);
        }
    }
    return residual;
}

LinearizationResult linearize(const SystemSpec& spec, BasisMode basis) {
    spec.validate();
    LinearizationResult out;
    out.mode = spec.mode;
    out.basis = basis;
    out.nu = spec.nu;
    out.order = spec.order;
    const int weight_bound = spec.order - 1;

    if (basis == BasisMode::Word) {
        if (spec.mode == SpectrumMode::Field) {
            auto components = single_vertex_components(spec);
            auto basis_words = enumerate_words_by_weight(spec.decorations(), weight_bound);
            auto chi = [&](const Word& w) { return mould_xi_field(w, spec.spectrum); };
            out.transform =
                eval_automorphism_words(chi, basis_words, components, spec.nu, spec.order);
        } else {
            auto components = diffeo_components(spec, weight_bound, spec.order);
            std::vector<Decoration> letters;
            letters.reserve(components.size());
            for (const auto& [eta, op] : components) letters.push_back(eta);
            auto basis_words = enumerate_words_by_weight(letters, weight_bound);
            auto chi = [&](const Word& w) { return mould_chi_diffeo(w, spec.spectrum); };
            out.transform =
                eval_automorphism_words(chi, basis_words, components, spec.nu, spec.order);
        }
    } else {
        auto evaluator = CoarborEvaluator(single_vertex_components(spec), spec.nu, spec.order);
        std::vector<Forest> basis_forests;
        for (const auto& f : enumerate_forests_by_weight(spec.decorations(), weight_bound))
            if (in_ck_plus(f)) basis_forests.push_back(f);
        if (spec.mode == SpectrumMode::Field) {
            auto chi = [&](const Forest& f) { return xi_arbo_field(f, spec.spectrum); };
            out.transform =
                eval_automorphism_forests(chi, basis_forests, evaluator, spec.nu, spec.order);
        } else {
            auto chi = [&](const Forest& f) { return chi_arbo_diffeo(f, spec.spectrum); };
            out.transform =
                eval_automorphism_forests(chi, basis_forests, evaluator, spec.nu, spec.order);
        }
    }

    out.residual = conjugacy_residual(spec, out.transform);
    out.stats = coefficient_stats(out.transform);
    return out;
}

SeriesMap oracle_linearize(const SystemSpec& spec) {
    spec.validate();
    const int nu = spec.nu;
    const int order = spec.order;
    SeriesMap transform = identity_map(nu, order);
    SeriesMap u = spec.perturbation();

    for (int degree = 2; degree <= order; ++degree) {
        for (int i = 0; i < nu; ++i) {
            TruncSeries rhs = u[static_cast<std::size_t>(i)].compose(transform);
            for (const auto& [m, c] : rhs.coefficients()) {
                if (total_degree(m) != degree || c.is_zero()) continue;
                Decoration eta;
                eta.entries.assign(m.begin(), m.end());
                eta.entries[static_cast<std::size_t>(i)] -= 1;
                Rational denom = spec.mode == SpectrumMode::Field
                                     ? pair_field(spec.spectrum, eta)
                                     : pair_diffeo(spec.spectrum, eta) - Rational(1);
                if (denom.is_zero()) throw resonance_error(eta, "oracle denominator vanishes");
                transform[static_cast<std::size_t>(i)].add(m, c / denom);
            }
        }
    }
    return transform;
}

std::vector<GradeStat> coefficient_stats(const SeriesMap& transform) {
    std::map<int, GradeStat> by_grade;
    int nu = static_cast<int>(transform.size());
    for (int i = 0; i < nu; ++i) {
        for (const auto& [m, c] : transform[static_cast<std::size_t>(i)].coefficients()) {
            if (total_degree(m) == 1) continue; // identity part
            Decoration eta;
            eta.entries.assign(m.begin(), m.end());
            eta.entries[static_cast<std::size_t>(i)] -= 1;
            int g = eta.grade();
            auto& stat = by_grade[g];
            stat.grade = g;
            stat.count += 1;
            Rational a = c.abs();
            if (a > stat.max_abs) stat.max_abs = a;
        }
    }
    std::vector<GradeStat> out;
    out.reserve(by_grade.size());
    for (auto& [g, stat] : by_grade) out.push_back(stat);
    return out;
}

GrowthReport growth_report(const SystemSpec& spec, int max_grade, bool counting_check) {
    spec.validate();
    GrowthReport report;
    report.enumeration_note =
        "omega minimized over integer vectors with |n_i| <= h and sum n_i <= h";
    report.counting_check_done = counting_check;
    const int nu = spec.nu;
    const bool field = spec.mode == SpectrumMode::Field;

    auto mould_value = [&](const Forest& f) -> double {
        double prod = 1.0;
        for (const auto& t : vertex_subtrees(f)) {
            double denom = field
                               ? pair_field(spec.spectrum, t.weight()).to_double()
                               : pair_diffeo(spec.spectrum, t.weight()).to_double() - 1.0;
            if (denom == 0.0) throw resonance_error(t.weight(), "diagnostic denominator vanishes");
            prod /= denom;
        }
        return std::fabs(prod);
    };

    // Omega(2^k) cache, large enough for the zero branch of the bound.
    int kmax = 0;
    while ((1 << kmax) <= 2 * std::max(1, max_grade)) ++kmax;
    std::vector<double> omega_at;
    for (int k = 0; k <= kmax + 1; ++k) {
        int h = 1 << k;
        double om = field ? omega(spec.spectrum, h) : omega_diffeo(spec.spectrum, h);
        omega_at.push_back(om);
        report.omega_samples.emplace_back(h, om);
    }

    std::map<int, long> counts;
    std::map<int, double> maxima;
    constexpr double slice_tol = 1e-9;

    for (const auto& f : enumerate_forests_by_grade(spec.decorations(), max_grade)) {
        if (f.empty() || !in_ck_plus(f)) continue;
        int g = f.grade();
        double value = mould_value(f);
        counts[g] += 1;
        maxima[g] = std::max(maxima[g], value);

        if (!counting_check) continue;
        int s = g;
        for (int k = 0; k <= kmax; ++k) {
            double lower = 0.5 * omega_at[static_cast<std::size_t>(k) + 1];
            double upper = 0.5 * omega_at[static_cast<std::size_t>(k)];
            long n_k = 0;
            for (const auto& t : vertex_subtrees(f)) {
                double v = field
                               ? std::fabs(pair_field(spec.spectrum, t.weight()).to_double())
                               : std::fabs(pair_diffeo(spec.spectrum, t.weight()).to_double() - 1.0);
                if (v >= lower - slice_tol && v < upper - slice_tol) ++n_k;
            }
            double bound = (s < (1 << k)) ? 0.0 : 2.0 * nu * static_cast<double>(s) / (1 << k) - 1.0;
            if (static_cast<double>(n_k) > bound + slice_tol)
                report.violations.push_back(SliceViolation{f, k, n_k, bound});
        }
    }

    for (const auto& [g, count] : counts) {
        report.grades.push_back(g);
        report.forest_counts.push_back(count);
        double mx = maxima[g];
        report.max_abs.push_back(mx);
        double fitted = mx > 0.0 ? std::pow(mx, 1.0 / g) : 0.0;
        report.fitted.push_back(fitted);
        report.fitted_constant = std::max(report.fitted_constant, fitted);
    }
    return report;
}

double majorant_fit(const SeriesMap& transform,
                    const std::function<double(const Decoration&)>& profile) {
    double best = 0.0;
    int nu = static_cast<int>(transform.size());
    for (int i = 0; i < nu; ++i) {
        for (const auto& [m, c] : transform[static_cast<std::size_t>(i)].coefficients()) {
            if (total_degree(m) == 1) continue;
            Decoration eta;
            eta.entries.assign(m.begin(), m.end());
            eta.entries[static_cast<std::size_t>(i)] -= 1;
            double b = profile ? profile(eta) : 1.0;
            double ratio = std::fabs(c.to_double()) / b;
            best = std::max(best, std::pow(ratio, 1.0 / eta.weight()));
        }
    }
    return best;
}

} // namespace moulds
