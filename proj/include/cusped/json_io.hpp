#pragma once

// JSON (de)serialization for the exact types, with all reals emitted at 17
// significant digits so doubles round-trip exactly.

#include "cusped/approx.hpp"
#include "cusped/hurwitz.hpp"

#include <json.hpp>

#include <cstdio>
#include <string>

namespace cusped {

using json = nlohmann::json;

inline std::string real17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Reals are serialized as JSON numbers parsed back from the 17-digit form,
// which keeps artifacts byte-stable across platforms with IEEE doubles.
inline json jreal(double v) { return json::parse(real17(v)); }

inline json to_json(const MoebiusMap& g) {
  return json{{"a", g.a().str()},
              {"b", g.b().str()},
              {"c", g.c().str()},
              {"d", g.d().str()},
              {"ring", g.ring().d}};
}

inline MoebiusMap moebius_from_json(const json& j) {
  Ring r(j.at("ring").get<int>());
  return MoebiusMap(QuadInt::parse(r, j.at("a").get<std::string>()),
                    QuadInt::parse(r, j.at("b").get<std::string>()),
                    QuadInt::parse(r, j.at("c").get<std::string>()),
                    QuadInt::parse(r, j.at("d").get<std::string>()));
}

inline json to_json(const ApproxStep& s) {
  return json{{"n", s.n},
              {"gamma", to_json(s.gamma)},
              {"z", s.z.str()},
              {"depth", jreal(s.depth)},
              {"dist", jreal((double)s.dist)},
              {"a", s.a.str()},
              {"delta", jreal(std::sqrt((double)(long double)s.delta_sq))},
              {"crossing_t", jreal((double)s.crossing_t)}};
}

inline json to_json(const ClassRecord& r) {
  return json{{"tr", r.trace.str()},
              {"c", r.best_witness.c().str()},
              {"min_c", jreal(r.min_c)},
              {"max_height", jreal(r.max_height)},
              {"witness", to_json(r.best_witness)},
              {"certified", r.certified}};
}

}  // namespace cusped
