#pragma once

#include <string>

#include <json.hpp>

#include "smk/duality.hpp"
#include "smk/measures.hpp"
#include "smk/sliced.hpp"
#include "smk/sphere.hpp"

namespace smk {

using json = nlohmann::json;

/// q as JSON: the literal "inf" for the max-sliced case, a number otherwise.
json q_to_json(double q);
double q_from_json(const json& j);

json measure_to_json(const DiscreteMeasure& m);
DiscreteMeasure measure_from_json(const json& j);

json direction_set_to_json(const DirectionSet& d);
DirectionSet direction_set_from_json(const json& j);

json report_to_json(const SlicedDistanceReport& r);
SlicedDistanceReport report_from_json(const json& j);

json certificate_to_json(const DualCertificate& c);
DualCertificate certificate_from_json(const json& j);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

/// FNV-1a 64-bit content hash, hex-encoded; used in run manifests.
std::string fnv1a64_file(const std::string& path);

}  // namespace smk
