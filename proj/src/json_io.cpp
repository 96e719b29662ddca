#include "smk/json_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace smk {

json q_to_json(double q) {
  if (std::isinf(q)) return json("inf");
  return json(q);
}

double q_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInf;
    throw IoError("q must be a number or the literal \"inf\"");
  }
  return j.get<double>();
}

json measure_to_json(const DiscreteMeasure& m) {
  return json{{"dim", m.dim()}, {"points", m.points()}, {"weights", m.weights()}};
}

DiscreteMeasure measure_from_json(const json& j) {
  return DiscreteMeasure(j.at("dim").get<int>(),
                         j.at("points").get<std::vector<std::vector<double>>>(),
                         j.at("weights").get<std::vector<double>>());
}

namespace {

std::string kind_to_string(DirectionSet::Kind k) {
  switch (k) {
    case DirectionSet::Kind::MonteCarlo: return "montecarlo";
    case DirectionSet::Kind::CircleGrid: return "circle";
    case DirectionSet::Kind::Explicit: return "explicit";
  }
  return "explicit";
}

DirectionSet::Kind kind_from_string(const std::string& s) {
  if (s == "montecarlo") return DirectionSet::Kind::MonteCarlo;
  if (s == "circle") return DirectionSet::Kind::CircleGrid;
  if (s == "explicit") return DirectionSet::Kind::Explicit;
  throw IoError("unknown direction set kind: " + s);
}

json grid_function_to_json(const GridFunction& f) {
  return json{{"grid", f.grid}, {"values", f.values}};
}

GridFunction grid_function_from_json(const json& j) {
  return GridFunction{j.at("grid").get<std::vector<double>>(),
                      j.at("values").get<std::vector<double>>()};
}

}  // namespace

json direction_set_to_json(const DirectionSet& d) {
  return json{{"dim", d.dim()},
              {"kind", kind_to_string(d.kind())},
              {"directions", d.directions()},
              {"weights", d.weights()},
              {"id", d.id()}};
}

DirectionSet direction_set_from_json(const json& j) {
  return DirectionSet(j.at("dim").get<int>(),
                      j.at("directions").get<std::vector<std::vector<double>>>(),
                      j.at("weights").get<std::vector<double>>(),
                      kind_from_string(j.at("kind").get<std::string>()),
                      j.at("id").get<std::string>());
}

json report_to_json(const SlicedDistanceReport& r) {
  return json{{"p", r.p},
              {"q", q_to_json(r.q)},
              {"aggregate", r.aggregate},
              {"per_direction", r.per_direction},
              {"dirset_id", r.dirset_id}};
}

SlicedDistanceReport report_from_json(const json& j) {
  SlicedDistanceReport r;
  r.p = j.at("p").get<double>();
  r.q = q_from_json(j.at("q"));
  r.aggregate = j.at("aggregate").get<double>();
  r.per_direction = j.at("per_direction").get<std::vector<double>>();
  r.dirset_id = j.at("dirset_id").get<std::string>();
  return r;
}

json certificate_to_json(const DualCertificate& c) {
  json phis = json::array(), psis = json::array();
  for (const auto& f : c.phi) phis.push_back(grid_function_to_json(f));
  for (const auto& f : c.psi) psis.push_back(grid_function_to_json(f));
  return json{{"p", c.p},
              {"q", q_to_json(c.q)},
              {"r", q_to_json(c.r)},
              {"r_prime", q_to_json(c.r_prime)},
              {"phi", std::move(phis)},
              {"psi", std::move(psis)},
              {"zeta", c.zeta},
              {"dual_value", c.dual_value},
              {"dirset_id", c.dirset_id}};
}

DualCertificate certificate_from_json(const json& j) {
  DualCertificate c;
  c.p = j.at("p").get<double>();
  c.q = q_from_json(j.at("q"));
  c.r = q_from_json(j.at("r"));
  c.r_prime = q_from_json(j.at("r_prime"));
  for (const auto& f : j.at("phi")) c.phi.push_back(grid_function_from_json(f));
  for (const auto& f : j.at("psi")) c.psi.push_back(grid_function_from_json(f));
  c.zeta = j.at("zeta").get<std::vector<double>>();
  c.dual_value = j.at("dual_value").get<double>();
  c.dirset_id = j.at("dirset_id").get<std::string>();
  return c;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw IoError("failed to parse " + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::uint64_t h = 0xCBF29CE484222325ULL;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace smk
