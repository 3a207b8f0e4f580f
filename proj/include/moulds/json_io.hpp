#pragma once

#include "moulds/linearizer.hpp"
#include "moulds/operators.hpp"
#include "moulds/trees.hpp"
#include "moulds/words.hpp"

#include <json.hpp>

namespace moulds {

using Json = nlohmann::ordered_json;

// Wire formats. Decorations are integer arrays, words arrays of those,
// trees {"d": [...], "c": [children]}, forests arrays of trees, exact
// rationals "p/q" strings. Coordinate indices are 1-based on the wire.

Json decoration_to_json(const Decoration& d);
Decoration decoration_from_json(const Json& j);

Json word_to_json(const Word& w);
Word word_from_json(const Json& j);

Json tree_to_json(const Tree& t);
Tree tree_from_json(const Json& j);

Json forest_to_json(const Forest& f);
Forest forest_from_json(const Json& j);

Json word_comb_to_json(const LinComb<Word>& v);
Json forest_comb_to_json(const LinComb<Forest>& v);
Json forest_pair_comb_to_json(const LinComb<TensorPair<Forest>>& v);
Json word_pair_comb_to_json(const LinComb<TensorPair<Word>>& v);

Json spec_to_json(const SystemSpec& spec);
SystemSpec spec_from_json(const Json& j);

Json result_to_json(const LinearizationResult& result);
Json growth_to_json(const GrowthReport& report);

} // namespace moulds
