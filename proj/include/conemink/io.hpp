#pragma once

#include <string>

#include <json.hpp>

#include "conemink/ma.hpp"
#include "conemink/mink2d.hpp"

namespace conemink {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

Json cone_to_json(const Cone& c);
ConePtr cone_from_json(const Json& j);

Json pseudocone_to_json(const PseudoCone& k);
PseudoCone pseudocone_from_json(const Json& j);

Json measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const Json& j);

Json angular_to_json(const AngularMeasure& am);
AngularMeasure angular_from_json(const Json& j);

Json family_to_json(const TailFamily& fam);
TailFamily family_from_json(const Json& j);

/// CSV rows (delta, weight), one atom per line, header included.
std::string measure_csv(const DiscreteMeasure& mu);

Json slice_geometry_json(const Slice& s);
std::string slice_obj(const Slice& s);

/// Hash of the canonical dump of a config object, embedded in reports.
std::string config_hash(const Json& j);

/// Parse a file; throws std::runtime_error naming the byte offset on
/// malformed input.
Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace conemink
