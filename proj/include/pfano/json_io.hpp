#pragma once

#include <string>

#include <json.hpp>

#include "pfano/index_coding.hpp"
#include "pfano/matroid.hpp"
#include "pfano/search.hpp"

namespace pfano::io {

using nlohmann::json;

// matrix: {"q", "t", "rows", "blocks", "entries": [[row-major ints]]}
json matrix_to_json(const matrix::BlockMatrix& m);
matrix::BlockMatrix matrix_from_json(const json& j);

// instance: {"family", "p", "m", "interfering": [[...], ...]} (1-indexed)
json instance_to_json(const indexcoding::IndexCodingInstance& inst);
indexcoding::IndexCodingInstance instance_from_json(const json& j);

// constraints: {"n", "rank", "bases": [[...]], "circuits": [[...]]}
json constraints_to_json(const matroid::MatroidConstraints& c);
matroid::MatroidConstraints constraints_from_json(const json& j);

json decoding_report_to_json(const indexcoding::DecodingReport& rep);
json mais_to_json(const indexcoding::MaisResult& r);
json search_outcome_to_json(const search::SearchOutcome& o);
json decision_to_json(const search::OptimalityDecision& d,
                      const std::string& family, int p, unsigned q);

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace pfano::io
