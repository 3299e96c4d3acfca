#pragma once

#include <string>

#include "json.hpp"

#include "hoq/channel_sets.hpp"
#include "hoq/classical.hpp"
#include "hoq/supermap.hpp"

namespace hoq {

using nlohmann::json;

// Interchange format: a matrix is {rows, cols, entries} with entries a flat
// row-major list of [re, im] pairs (bare numbers are accepted on input), plus
// an optional legs list of {label, dim, polarity}.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json real_matrix_to_json(const RealMatrix& m);
RealMatrix real_matrix_from_json(const json& j);

json tensor_to_json(const CTensor& t);
CTensor tensor_from_json(const json& j);

json system_to_json(const SystemType& t);
SystemType system_from_json(const json& j);

json channel_to_json(const Channel& c);
Channel channel_from_json(const json& j);

json relation_to_json(const SignalingRelation& r);
SignalingRelation relation_from_json(const json& j);

json set_spec_to_json(const ChannelSetSpec& k);
ChannelSetSpec set_spec_from_json(const json& j);

json supermap_to_json(const Supermap& s);
Supermap supermap_from_json(const json& j);

json comb_to_json(const Comb& c);
Comb comb_from_json(const json& j);

json stoch_channel_to_json(const classical::StochChannel& c);
classical::StochChannel stoch_channel_from_json(const json& j);

json cl_comb_to_json(const classical::ClComb& c);
classical::ClComb cl_comb_from_json(const json& j);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace hoq
