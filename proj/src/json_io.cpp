#include "moulds/json_io.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace moulds {

Json decoration_to_json(const Decoration& d) {
    Json j = Json::array();
    for (int e : d.entries) j.push_back(e);
    return j;
}

Decoration decoration_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("decoration: expected an array of integers");
    Decoration d;
    for (const auto& e : j) d.entries.push_back(e.get<int>());
    return d;
}

Json word_to_json(const Word& w) {
    Json j = Json::array();
    for (const auto& d : w.letters) j.push_back(decoration_to_json(d));
    return j;
}

Word word_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("word: expected an array of decorations");
    Word w;
    for (const auto& e : j) w.letters.push_back(decoration_from_json(e));
    return w;
}

Json tree_to_json(const Tree& t) {
    Json j;
    j["d"] = decoration_to_json(t.dec);
    Json kids = Json::array();
    for (const auto& c : t.children) kids.push_back(tree_to_json(c));
    j["c"] = kids;
    return j;
}

Tree tree_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("d"))
        throw std::invalid_argument("tree: expected an object with \"d\"");
    Tree t;
    t.dec = decoration_from_json(j.at("d"));
    if (j.contains("c"))
        for (const auto& c : j.at("c")) t.children.push_back(tree_from_json(c));
    return canonical(std::move(t));
}

Json forest_to_json(const Forest& f) {
    Json j = Json::array();
    for (const auto& t : f.trees) j.push_back(tree_to_json(t));
    return j;
}

Forest forest_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("forest: expected an array of trees");
    std::vector<Tree> trees;
    for (const auto& t : j) trees.push_back(tree_from_json(t));
    return Forest(std::move(trees));
}

namespace {

// Terms are emitted sorted by grade first, then by the basis order, so
// command output is byte-stable and grade-monotone.
template <class B, class GradeFn, class EmitFn>
Json sorted_terms(const LinComb<B>& v, GradeFn&& grade, EmitFn&& emit) {
    std::vector<const typename LinComb<B>::Terms::value_type*> terms;
    terms.reserve(v.size());
    for (const auto& term : v.terms()) terms.push_back(&term);
    std::stable_sort(terms.begin(), terms.end(),
                     [&](const auto* a, const auto* b) { return grade(a->first) < grade(b->first); });
    Json j = Json::array();
    for (const auto* term : terms) j.push_back(emit(term->first, term->second));
    return j;
}

} // namespace

Json word_comb_to_json(const LinComb<Word>& v) {
    return sorted_terms(
        v, [](const Word& w) { return w.grade(); },
        [](const Word& w, const Rational& c) {
            return Json{{"coeff", c.str()}, {"word", word_to_json(w)}};
        });
}

Json forest_comb_to_json(const LinComb<Forest>& v) {
    return sorted_terms(
        v, [](const Forest& f) { return f.grade(); },
        [](const Forest& f, const Rational& c) {
            return Json{{"coeff", c.str()}, {"forest", forest_to_json(f)}};
        });
}

Json forest_pair_comb_to_json(const LinComb<TensorPair<Forest>>& v) {
    return sorted_terms(
        v, [](const TensorPair<Forest>& p) { return p.first.grade() + p.second.grade(); },
        [](const TensorPair<Forest>& p, const Rational& c) {
            return Json{{"coeff", c.str()},
                        {"left", forest_to_json(p.first)},
                        {"right", forest_to_json(p.second)}};
        });
}

Json word_pair_comb_to_json(const LinComb<TensorPair<Word>>& v) {
    return sorted_terms(
        v, [](const TensorPair<Word>& p) { return p.first.grade() + p.second.grade(); },
        [](const TensorPair<Word>& p, const Rational& c) {
            return Json{{"coeff", c.str()},
                        {"left", word_to_json(p.first)},
                        {"right", word_to_json(p.second)}};
        });
}

Json spec_to_json(const SystemSpec& spec) {
    Json j;
    j["mode"] = spec.mode == SpectrumMode::Field ? "field" : "diffeo";
    j["nu"] = spec.nu;
    Json spectrum = Json::array();
    for (const auto& v : spec.spectrum.values) spectrum.push_back(v.str());
    j["spectrum"] = spectrum;
    Json coeffs = Json::array();
    for (const auto& [key, value] : spec.coeffs)
        coeffs.push_back({{"i", key.first + 1},
                          {"eta", decoration_to_json(key.second)},
                          {"value", value.str()}});
    j["coeffs"] = coeffs;
    j["order"] = spec.order;
    return j;
}

SystemSpec spec_from_json(const Json& j) {
    SystemSpec spec;
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "field")
        spec.mode = SpectrumMode::Field;
    else if (mode == "diffeo")
        spec.mode = SpectrumMode::Diffeo;
    else
        throw std::invalid_argument("spec: mode must be \"field\" or \"diffeo\"");
    spec.nu = j.at("nu").get<int>();
    spec.spectrum.mode = spec.mode;
    for (const auto& v : j.at("spectrum"))
        spec.spectrum.values.push_back(Rational::parse(v.get<std::string>()));
    for (const auto& c : j.at("coeffs")) {
        int i = c.at("i").get<int>() - 1;
        Decoration eta = decoration_from_json(c.at("eta"));
        Rational value = Rational::parse(c.at("value").get<std::string>());
        if (!value.is_zero()) spec.coeffs[{i, eta}] = value;
    }
    spec.order = j.at("order").get<int>();
    spec.validate();
    return spec;
}

Json result_to_json(const LinearizationResult& result) {
    Json j;
    j["mode"] = result.mode == SpectrumMode::Field ? "field" : "diffeo";
    j["basis"] = result.basis == BasisMode::Word ? "word" : "forest";
    j["direction"] = result.direction;
    j["nu"] = result.nu;
    j["order"] = result.order;
    struct Entry {
        int grade;
        int i;
        Decoration eta;
        Rational value;
    };
    std::vector<Entry> entries;
    for (int i = 0; i < result.nu; ++i) {
        for (const auto& [m, c] : result.transform[static_cast<std::size_t>(i)].coefficients()) {
            if (total_degree(m) == 1) continue;
            Decoration eta;
            eta.entries.assign(m.begin(), m.end());
            eta.entries[static_cast<std::size_t>(i)] -= 1;
            entries.push_back({eta.grade(), i, eta, c});
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.grade, a.i, a.eta) < std::tie(b.grade, b.i, b.eta);
    });
    Json coeffs = Json::array();
    for (const auto& e : entries)
        coeffs.push_back({{"i", e.i + 1}, {"eta", decoration_to_json(e.eta)}, {"value", e.value.str()}});
    j["coefficients"] = coeffs;
    j["residual_zero"] = result.residual_zero();
    int first = result.residual_first_degree();
    if (first < 0)
        j["residual_first_nonzero_degree"] = nullptr;
    else
        j["residual_first_nonzero_degree"] = first;
    Json stats = Json::array();
    for (const auto& s : result.stats)
        stats.push_back({{"grade", s.grade}, {"count", s.count}, {"max_abs", s.max_abs.str()}});
    j["per_grade"] = stats;
    return j;
}

Json growth_to_json(const GrowthReport& report) {
    Json j;
    Json per_grade = Json::array();
    for (std::size_t i = 0; i < report.grades.size(); ++i)
        per_grade.push_back({{"grade", report.grades[i]},
                             {"forest_count", report.forest_counts[i]},
                             {"max_abs", report.max_abs[i]},
                             {"fitted", report.fitted[i]}});
    j["per_grade"] = per_grade;
    j["fitted_constant"] = report.fitted_constant;
    Json violations = Json::array();
    for (const auto& v : report.violations)
        violations.push_back({{"forest", forest_to_json(v.forest)},
                              {"k", v.k},
                              {"count", v.count},
                              {"bound", v.bound}});
    j["violations"] = violations;
    Json samples = Json::array();
    for (const auto& [h, om] : report.omega_samples)
        samples.push_back({{"h", h}, {"omega", om}});
    j["omega_samples"] = samples;
    j["counting_check_done"] = report.counting_check_done;
    j["enumeration_note"] = report.enumeration_note;
    return j;
}

} // namespace moulds
