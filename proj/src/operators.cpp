#include "moulds/operators.hpp"

#include <algorithm>
#include <stdexcept>

namespace moulds {

DiffOperator DiffOperator::identity(int nu) {
    DiffOperator op(nu);
    op.add_term(MultiIndex(static_cast<std::size_t>(nu), 0),
                MultiIndex(static_cast<std::size_t>(nu), 0), Rational(1));
    return op;
}

bool DiffOperator::is_identity() const {
    if (terms_.size() != 1) return false;
    const auto& [key, c] = *terms_.begin();
    return c.is_one() && total_degree(key.first) == 0 && total_degree(key.second) == 0;
}

void DiffOperator::add_term(const MultiIndex& monomial, const MultiIndex& derivative,
                            const Rational& c) {
    if (c.is_zero()) return;
    for (int e : monomial)
        if (e < 0) throw std::invalid_argument("DiffOperator: negative monomial exponent");
    TermKey key{monomial, derivative};
    auto [it, inserted] = terms_.emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
    for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
    return *this;
}

DiffOperator operator*(const Rational& s, DiffOperator a) {
    if (s.is_zero()) return DiffOperator(a.nu_);
    for (auto& [key, c] : a.terms_) c *= s;
    return a;
}

namespace {

// Falling factorial n (n-1) ... (n-k+1).
Rational falling(int n, int k) {
    Rational f(1);
    for (int j = 0; j < k; ++j) f *= Rational(n - j);
    return f;
}

} // namespace

DiffOperator DiffOperator::compose(const DiffOperator& rhs, int degree_cap) const {
    DiffOperator out(nu_);
    for (const auto& [ka, ca] : terms_) {
        const MultiIndex& ma = ka.first;
        const MultiIndex& da = ka.second;
        for (const auto& [kb, cb] : rhs.terms_) {
            const MultiIndex& mb = kb.first;
            const MultiIndex& db = kb.second;
            // d^da (x^mb .) expands over all j <= min(da, mb) componentwise.
            MultiIndex jmax(static_cast<std::size_t>(nu_), 0);
            for (int i = 0; i < nu_; ++i)
                jmax[static_cast<std::size_t>(i)] =
                    std::min(da[static_cast<std::size_t>(i)], mb[static_cast<std::size_t>(i)]);
            MultiIndex j(static_cast<std::size_t>(nu_), 0);
            while (true) {
                Rational factor = ca * cb;
                MultiIndex m(static_cast<std::size_t>(nu_), 0);
                MultiIndex d(static_cast<std::size_t>(nu_), 0);
                for (int i = 0; i < nu_; ++i) {
                    auto u = static_cast<std::size_t>(i);
                    factor *= Rational::binomial(static_cast<unsigned>(da[u]),
                                                 static_cast<unsigned>(j[u]));
                    factor *= falling(mb[u], j[u]);
                    m[u] = ma[u] + mb[u] - j[u];
                    d[u] = da[u] + db[u] - j[u];
                }
                if (!factor.is_zero() && total_degree(m) <= degree_cap) out.add_term(m, d, factor);
                int i = 0;
                while (i < nu_ && j[static_cast<std::size_t>(i)] == jmax[static_cast<std::size_t>(i)])
                    j[static_cast<std::size_t>(i++)] = 0;
                if (i == nu_) break;
                ++j[static_cast<std::size_t>(i)];
            }
        }
    }
    return out;
}

TruncSeries DiffOperator::apply(const TruncSeries& f) const {
    TruncSeries out(f.nu(), f.order());
    for (const auto& [key, c] : terms_) {
        const MultiIndex& m = key.first;
        const MultiIndex& d = key.second;
        for (const auto& [n, fn] : f.coefficients()) {
            Rational factor = c * fn;
            bool alive = true;
            MultiIndex target = m;
            for (std::size_t i = 0; i < n.size() && alive; ++i) {
                if (n[i] < d[i]) {
                    alive = false;
                    break;
                }
                factor *= falling(n[i], d[i]);
                target[i] += n[i] - d[i];
            }
            if (alive) out.add(target, factor);
        }
    }
    return out;
}

TruncSeries DiffOperator::apply_to_variable(int i, int nu, int order) const {
    return apply(TruncSeries::variable(nu, order, i));
}

std::optional<Decoration> DiffOperator::homogeneity() const {
    std::optional<Decoration> h;
    for (const auto& [key, c] : terms_) {
        Decoration diff;
        diff.entries.resize(key.first.size());
        for (std::size_t i = 0; i < key.first.size(); ++i)
            diff.entries[i] = key.first[i] - key.second[i];
        if (!h)
            h = diff;
        else if (*h != diff)
            return std::nullopt;
    }
    return h;
}

int DiffOperator::op_order() const {
    int o = 0;
    for (const auto& [key, c] : terms_) o = std::max(o, total_degree(key.second));
    return o;
}

std::string DiffOperator::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [key, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += c.str();
        for (std::size_t i = 0; i < key.first.size(); ++i) {
            if (key.first[i] == 0) continue;
            out += "*x" + std::to_string(i + 1);
            if (key.first[i] != 1) out += "^" + std::to_string(key.first[i]);
        }
        for (std::size_t i = 0; i < key.second.size(); ++i) {
            if (key.second[i] == 0) continue;
            out += "*d" + std::to_string(i + 1);
            if (key.second[i] != 1) out += "^" + std::to_string(key.second[i]);
        }
    }
    return out;
}

std::vector<Decoration> SystemSpec::decorations() const {
    std::vector<Decoration> out;
    for (const auto& [key, c] : coeffs) {
        if (c.is_zero()) continue;
        if (std::find(out.begin(), out.end(), key.second) == out.end()) out.push_back(key.second);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SeriesMap SystemSpec::perturbation() const {
    SeriesMap p;
    for (int i = 0; i < nu; ++i) p.emplace_back(nu, order);
    for (const auto& [key, c] : coeffs) {
        MultiIndex m(static_cast<std::size_t>(nu), 0);
        for (int j = 0; j < nu; ++j) m[static_cast<std::size_t>(j)] = key.second.entries[static_cast<std::size_t>(j)];
        m[static_cast<std::size_t>(key.first)] += 1;
        p[static_cast<std::size_t>(key.first)].add(m, c);
    }
    return p;
}

void SystemSpec::validate() const {
    if (order < 1) throw std::invalid_argument("spec: order must be >= 1");
    if (nu < 1) throw std::invalid_argument("spec: nu must be >= 1");
    if (spectrum.dim() != nu) throw std::invalid_argument("spec: spectrum dimension mismatch");
    if (spectrum.mode != mode) throw std::invalid_argument("spec: spectrum/spec mode mismatch");
    if (mode == SpectrumMode::Diffeo)
        for (const auto& v : spectrum.values)
            if (v.is_zero()) throw std::domain_error("spec: zero diffeo multiplier");
    for (const auto& [key, c] : coeffs) {
        const auto& [i, eta] = key;
        if (i < 0 || i >= nu) throw std::invalid_argument("spec: coordinate index out of range");
        if (eta.dim() != nu) throw std::invalid_argument("spec: decoration dimension mismatch");
        if (!in_H_i(eta, i))
            throw std::invalid_argument("spec: decoration " + to_string(eta) +
                                        " not admissible for coordinate " + std::to_string(i + 1));
    }
}

DiffOperator field_component(const SystemSpec& spec, const Decoration& eta) {
    DiffOperator op(spec.nu);
    for (int i = 0; i < spec.nu; ++i) {
        auto it = spec.coeffs.find({i, eta});
        if (it == spec.coeffs.end() || it->second.is_zero()) continue;
        MultiIndex m(static_cast<std::size_t>(spec.nu), 0);
        for (int j = 0; j < spec.nu; ++j) m[static_cast<std::size_t>(j)] = eta.entries[static_cast<std::size_t>(j)];
        m[static_cast<std::size_t>(i)] += 1;
        op.add_term(m, unit_index(spec.nu, i), it->second);
    }
    return op;
}

std::map<Decoration, DiffOperator> single_vertex_components(const SystemSpec& spec) {
    std::map<Decoration, DiffOperator> out;
    for (const auto& eta : spec.decorations()) out.emplace(eta, field_component(spec, eta));
    return out;
}

std::map<Decoration, DiffOperator> diffeo_components(const SystemSpec& spec, int weight_cap,
                                                     int degree_cap) {
    if (spec.mode != SpectrumMode::Diffeo)
        throw std::invalid_argument("diffeo_components: spec is not in diffeo mode");
    // u_i = phi_i - x_i as polynomials; the Taylor expansion of the
    // substitution automorphism collects (1/n!) u^n d^n.
    SeriesMap u = spec.perturbation();
    for (auto& ui : u) ui = ui.truncated(degree_cap);

    std::map<Decoration, DiffOperator> out;
    // Walk all derivative multi-indices n with u^n nonzero below the cap;
    // each u_i has valuation >= 2, so sum n_i <= degree_cap / 2.
    std::vector<int> n(static_cast<std::size_t>(spec.nu), 0);
    std::function<void(int, const TruncSeries&, int)> rec = [&](int coord,
                                                                const TruncSeries& partial,
                                                                int derivative_total) {
        if (coord == spec.nu) {
            if (derivative_total == 0) return;
            Rational inv_fact(1);
            for (int e : n)
                for (int j = 2; j <= e; ++j) inv_fact /= Rational(j);
            MultiIndex d(n.begin(), n.end());
            for (const auto& [m, c] : partial.coefficients()) {
                Decoration eta;
                eta.entries.resize(m.size());
                for (std::size_t i = 0; i < m.size(); ++i) eta.entries[i] = m[i] - d[i];
                if (eta.weight() > weight_cap) continue;
                auto [it, inserted] = out.emplace(eta, DiffOperator(spec.nu));
                it->second.add_term(m, d, inv_fact * c);
            }
            return;
        }
        TruncSeries acc = partial;
        for (int e = 0;; ++e) {
            n[static_cast<std::size_t>(coord)] = e;
            if (acc.is_zero() && e > 0) break;
            rec(coord + 1, acc, derivative_total + e);
            if (2 * (derivative_total + e + 1) > degree_cap) break;
            acc = acc * u[static_cast<std::size_t>(coord)];
        }
        n[static_cast<std::size_t>(coord)] = 0;
    };
    TruncSeries one = TruncSeries::monomial(spec.nu, degree_cap, MultiIndex(static_cast<std::size_t>(spec.nu), 0));
    rec(0, one, 0);
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

DiffOperator rho(const Word& w, const std::map<Decoration, DiffOperator>& components, int nu,
                 int degree_cap) {
    DiffOperator acc = DiffOperator::identity(nu);
    for (const auto& eta : w.letters) {
        auto it = components.find(eta);
        if (it == components.end()) return DiffOperator(nu);
        acc = it->second.compose(acc, degree_cap);
        if (acc.is_zero()) return acc;
    }
    return acc;
}

CoarborEvaluator::CoarborEvaluator(std::map<Decoration, DiffOperator> single_vertex, int nu,
                                   int degree_cap)
    : single_vertex_(std::move(single_vertex)), nu_(nu), degree_cap_(degree_cap) {}

const std::vector<TruncSeries>& CoarborEvaluator::tree_coefficients(const Tree& t) {
    auto it = tree_coeff_cache_.find(t);
    if (it != tree_coeff_cache_.end()) return it->second;

    std::vector<TruncSeries> coeffs;
    coeffs.reserve(static_cast<std::size_t>(nu_));
    DiffOperator base(nu_);
    if (auto sv = single_vertex_.find(t.dec); sv != single_vertex_.end()) base = sv->second;
    const Forest below{std::vector<Tree>(t.children)};
    const DiffOperator& below_op = (*this)(below);
    for (int i = 0; i < nu_; ++i) {
        TruncSeries seed = base.apply_to_variable(i, nu_, degree_cap_);
        coeffs.push_back(below_op.apply(seed));
    }
    return tree_coeff_cache_.emplace(t, std::move(coeffs)).first->second;
}

const DiffOperator& CoarborEvaluator::operator()(const Tree& t) { return (*this)(Forest{{t}}); }

const DiffOperator& CoarborEvaluator::operator()(const Forest& f) {
    auto it = cache_.find(f);
    if (it != cache_.end()) return it->second;

    DiffOperator result(nu_);
    if (f.empty()) {
        result = DiffOperator::identity(nu_);
    } else if (f.root_count() == 1) {
        const auto& coeffs = tree_coefficients(f.trees.front());
        for (int i = 0; i < nu_; ++i)
            for (const auto& [m, c] : coeffs[static_cast<std::size_t>(i)].coefficients())
                result.add_term(m, unit_index(nu_, i), c);
    } else {
        // Symmetrized higher-order term with the inverse multiplicity
        // factorials of the distinct trees.
        Rational prefactor(1);
        std::size_t i = 0;
        while (i < f.trees.size()) {
            std::size_t j = i;
            while (j < f.trees.size() && tree_equal(f.trees[i], f.trees[j])) ++j;
            prefactor /= Rational::factorial(static_cast<unsigned>(j - i));
            i = j;
        }
        int s = f.root_count();
        std::vector<int> idx(static_cast<std::size_t>(s), 0);
        while (true) {
            TruncSeries prod = TruncSeries::monomial(
                nu_, degree_cap_, MultiIndex(static_cast<std::size_t>(nu_), 0), prefactor);
            MultiIndex d(static_cast<std::size_t>(nu_), 0);
            for (int t = 0; t < s; ++t) {
                int coord = idx[static_cast<std::size_t>(t)];
                const auto& coeffs = tree_coefficients(f.trees[static_cast<std::size_t>(t)]);
                prod = prod * coeffs[static_cast<std::size_t>(coord)];
                if (prod.is_zero()) break;
                d[static_cast<std::size_t>(coord)] += 1;
            }
            if (!prod.is_zero())
                for (const auto& [m, c] : prod.coefficients()) result.add_term(m, d, c);
            int t = 0;
            while (t < s && idx[static_cast<std::size_t>(t)] == nu_ - 1)
                idx[static_cast<std::size_t>(t++)] = 0;
            if (t == s) break;
            ++idx[static_cast<std::size_t>(t)];
        }
    }
    return cache_.emplace(f, std::move(result)).first->second;
}

SeriesMap eval_automorphism_words(const std::function<Rational(const Word&)>& chi,
                                  const std::vector<Word>& basis,
                                  const std::map<Decoration, DiffOperator>& components, int nu,
                                  int order) {
    SeriesMap out;
    for (int i = 0; i < nu; ++i) out.emplace_back(nu, order);
    for (const auto& w : basis) {
        Rational c = chi(w);
        if (c.is_zero()) continue;
        DiffOperator op = rho(w, components, nu, order);
        if (op.is_zero()) continue;
        for (int i = 0; i < nu; ++i) {
            TruncSeries term = op.apply_to_variable(i, nu, order);
            out[static_cast<std::size_t>(i)] += c * term;
        }
    }
    return out;
}

SeriesMap eval_automorphism_forests(const std::function<Rational(const Forest&)>& chi,
                                    const std::vector<Forest>& basis, CoarborEvaluator& rho_arbo,
                                    int nu, int order) {
    SeriesMap out;
    for (int i = 0; i < nu; ++i) out.emplace_back(nu, order);
    for (const auto& f : basis) {
        const DiffOperator& op = rho_arbo(f);
        if (op.is_zero()) continue;
        Rational c = chi(f);
        if (c.is_zero()) continue;
        for (int i = 0; i < nu; ++i) {
            TruncSeries term = op.apply_to_variable(i, nu, order);
            out[static_cast<std::size_t>(i)] += c * term;
        }
    }
    return out;
}

TruncSeries series_derivative(const TruncSeries& f, int i) {
    TruncSeries out(f.nu(), f.order());
    for (const auto& [m, c] : f.coefficients()) {
        if (m[static_cast<std::size_t>(i)] == 0) continue;
        MultiIndex d = m;
        d[static_cast<std::size_t>(i)] -= 1;
        out.add(d, Rational(m[static_cast<std::size_t>(i)]) * c);
    }
    return out;
}

SeriesMap exp_field(const SeriesMap& field_components, int order) {
    int nu = static_cast<int>(field_components.size());
    for (const auto& xi : field_components)
        if (!xi.is_zero() && xi.valuation() < 2)
            throw std::invalid_argument("exp_field: field has a linear or constant part");
    auto derivation = [&](const TruncSeries& f) {
        TruncSeries out(nu, order);
        for (int j = 0; j < nu; ++j)
            out += field_components[static_cast<std::size_t>(j)] * series_derivative(f, j);
        return out;
    };
    SeriesMap phi;
    for (int i = 0; i < nu; ++i) {
        TruncSeries term = TruncSeries::variable(nu, order, i);
        TruncSeries sum = term;
        Rational inv_fact(1);
        for (int s = 1; s <= order && !term.is_zero(); ++s) {
            term = derivation(term);
            inv_fact /= Rational(s);
            sum += inv_fact * term;
        }
        phi.push_back(sum);
    }
    return phi;
}

SeriesMap log_diffeo(const SeriesMap& phi, int order) {
    int nu = static_cast<int>(phi.size());
    if (!tangent_to_identity(phi))
        throw std::invalid_argument("log_diffeo: map is not tangent to the identity");
    auto theta_minus_id = [&](const TruncSeries& f) { return f.compose(phi) - f; };
    SeriesMap field;
    for (int i = 0; i < nu; ++i) {
        TruncSeries term = TruncSeries::variable(nu, order, i);
        TruncSeries sum(nu, order);
        for (int s = 1; s <= order; ++s) {
            term = theta_minus_id(term);
            if (term.is_zero()) break;
            Rational c = Rational(s % 2 == 1 ? 1 : -1) / Rational(s);
            sum += c * term;
        }
        field.push_back(sum);
    }
    return field;
}

} // namespace moulds
