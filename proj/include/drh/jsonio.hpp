#pragma once

#include <json.hpp>

#include "drh/diffpoly.hpp"
#include "drh/drcycle.hpp"
#include "drh/trees.hpp"

namespace drh {

using json = nlohmann::ordered_json;

json to_json(const ParamRational& c);
json to_json(const DiffPoly& p);
DiffPoly diffpoly_from_json(const json& j);

json to_json(const MultiPoly& p);

json to_json(const StableTree& t);
json to_json(const DecoratedTree& t, const std::vector<LinearForm>& subtree_sums);

/// Query format: {"genus":g,"nvars":n,"points":[{"psi":k,"mult":["p/q",...]},..]}
VertexIntegralQuery query_from_json(const json& j);

}  // namespace drh
