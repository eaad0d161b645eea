// Copyright 2026 The Stackel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON instance and solution formats. Requires nlohmann/json (json.hpp).
//
// Every malformed document surfaces as InputError, never as a json exception.

#ifndef STACKEL_IO_HPP_
#define STACKEL_IO_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>
#include "stackel/discretize.hpp"
#include "stackel/errors.hpp"
#include "stackel/game.hpp"
#include "stackel/incentive.hpp"
#include "stackel/perm_matching.hpp"
#include "stackel/reduction.hpp"

namespace stackel::io {

using Json = nlohmann::ordered_json;

// Rounds to 12 significant digits so printed values are stable across
// platforms; -0 becomes 0.
inline double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

inline Json number(double v) { return Json(round12(v)); }

inline Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

inline Json parse_document(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

namespace detail {

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

inline const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object()) throw InputError("expected a JSON object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

inline std::size_t count(const Json& v, const char* what) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw InputError(std::string(what) + " must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

inline double real(const Json& v, const char* what) {
  if (!v.is_number()) throw InputError(std::string(what) + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw InputError(std::string(what) + " must be finite");
  return d;
}

inline Matrix matrix(const Json& v, std::size_t n, std::size_t m, const char* what) {
  if (!v.is_array() || v.size() != n) throw InputError(std::string(what) + " must have n rows");
  Matrix out(n, std::vector<double>(m));
  for (std::size_t i = 0; i < n; ++i) {
    if (!v[i].is_array() || v[i].size() != m) throw InputError(std::string(what) + " rows must have m entries");
    for (std::size_t j = 0; j < m; ++j) out[i][j] = real(v[i][j], what);
  }
  return out;
}

}  // namespace detail

// ---- bimatrix -------------------------------------------------------------

inline BimatrixGame bimatrix_from_json(const Json& j) {
  return detail::guarded("bimatrix", [&] {
    const std::size_t n = detail::count(detail::field(j, "n"), "n");
    const std::size_t m = detail::count(detail::field(j, "m"), "m");
    if (n == 0 || m == 0) throw InputError("bimatrix: n and m must be >= 1");
    return BimatrixGame(detail::matrix(detail::field(j, "uL"), n, m, "uL"),
                        detail::matrix(detail::field(j, "uF"), n, m, "uF"));
  });
}

inline Json to_json(const BimatrixGame& g) {
  Json ul = Json::array();
  Json uf = Json::array();
  for (std::size_t i = 0; i < g.n; ++i) {
    ul.push_back(numbers(g.uL[i]));
    uf.push_back(numbers(g.uF[i]));
  }
  return Json{{"n", g.n}, {"m", g.m}, {"uL", std::move(ul)}, {"uF", std::move(uf)}};
}

inline Json to_json(const StackelbergSolution& s) {
  return Json{{"leader", numbers(s.leader.probs)},
              {"followerResponse", s.followerResponse},
              {"leaderPayoff", number(s.leaderPayoff)},
              {"followerPayoff", number(s.followerPayoff)}};
}

inline Json to_json(const discretize::ApproxSolution& s) {
  return Json{{"k", s.params.k},
              {"eps", number(s.params.eps())},
              {"leaderNumerators", s.numerators},
              {"leader", numbers(s.leader.probs)},
              {"followerResponse", s.followerResponse},
              {"leaderPayoff", number(s.leaderPayoff)},
              {"followerPayoff", number(s.followerPayoff)},
              {"slack", number(s.slack)},
              {"M", number(s.M)},
              {"gridSize", s.gridSize},
              {"candidatesExamined", s.candidatesExamined}};
}

// ---- incentive ------------------------------------------------------------

inline incentive::IncentiveInstance incentive_from_json(const Json& j) {
  return detail::guarded("incentive", [&] {
    incentive::IncentiveInstance inst;
    const Json& els = detail::field(j, "elements");
    if (!els.is_array()) throw InputError("incentive: 'elements' must be an array");
    for (const Json& e : els) {
      const Json& id = detail::field(e, "id");
      if (!id.is_string()) throw InputError("incentive: element id must be a string");
      inst.elements.push_back(
          {id.get<std::string>(), detail::real(detail::field(e, "c"), "c"), detail::real(detail::field(e, "C"), "C")});
    }
    const Json& fam = detail::field(j, "family");
    const Json& type = detail::field(fam, "type");
    if (type == "explicit") {
      incentive::ExplicitFamily ef;
      const Json& sets = detail::field(fam, "sets");
      if (!sets.is_array()) throw InputError("incentive: 'sets' must be an array");
      for (const Json& s : sets) {
        if (!s.is_array()) throw InputError("incentive: each set must be an array of ids");
        incentive::SetKey key;
        for (const Json& id : s) {
          if (!id.is_string()) throw InputError("incentive: set members must be element ids");
          key.push_back(inst.index_of(id.get<std::string>()));
        }
        std::sort(key.begin(), key.end());
        if (std::adjacent_find(key.begin(), key.end()) != key.end()) {
          throw InputError("incentive: repeated element in a set");
        }
        ef.sets.push_back(std::move(key));
      }
      inst.family = std::move(ef);
    } else if (type == "path") {
      incentive::PathFamily pf;
      pf.numVertices = detail::count(detail::field(fam, "vertices"), "vertices");
      pf.source = detail::count(detail::field(fam, "source"), "source");
      pf.sink = detail::count(detail::field(fam, "sink"), "sink");
      const Json& edges = detail::field(fam, "edges");
      if (!edges.is_array()) throw InputError("incentive: 'edges' must be an array");
      for (const Json& e : edges) {
        const Json& id = detail::field(e, "id");
        if (!id.is_string()) throw InputError("incentive: edge id must be a string");
        pf.edges.push_back({inst.index_of(id.get<std::string>()), detail::count(detail::field(e, "u"), "u"),
                            detail::count(detail::field(e, "v"), "v")});
      }
      inst.family = std::move(pf);
    } else {
      throw InputError("incentive: family type must be 'explicit' or 'path'");
    }
    inst.validate();
    return inst;
  });
}

inline Json to_json(const incentive::IncentiveInstance& inst) {
  Json els = Json::array();
  for (const auto& e : inst.elements) els.push_back({{"id", e.id}, {"c", number(e.followerReward)}, {"C", number(e.leaderReward)}});
  Json fam;
  if (inst.is_path()) {
    const auto& pf = inst.path_family();
    Json edges = Json::array();
    for (const auto& e : pf.edges) edges.push_back({{"id", inst.elements[e.element].id}, {"u", e.u}, {"v", e.v}});
    fam = Json{{"type", "path"}, {"vertices", pf.numVertices}, {"edges", std::move(edges)},
               {"source", pf.source}, {"sink", pf.sink}};
  } else {
    Json sets = Json::array();
    for (const auto& s : inst.explicit_family().sets) {
      Json ids = Json::array();
      for (std::size_t e : s) ids.push_back(inst.elements[e].id);
      sets.push_back(std::move(ids));
    }
    fam = Json{{"type", "explicit"}, {"sets", std::move(sets)}};
  }
  return Json{{"elements", std::move(els)}, {"family", std::move(fam)}};
}

inline Json set_ids(const incentive::IncentiveInstance& inst, const incentive::SetKey& s) {
  Json ids = Json::array();
  for (std::size_t e : s) ids.push_back(inst.elements[e].id);
  return ids;
}

inline Json element_map(const incentive::IncentiveInstance& inst, const std::vector<double>& x) {
  Json out = Json::object();
  for (std::size_t e = 0; e < inst.size(); ++e) out[inst.elements[e].id] = number(x[e]);
  return out;
}

inline Json to_json(const incentive::IncentiveInstance& inst, const incentive::IncentiveSolution& s) {
  Json inc = Json::array();
  for (const auto& [key, v] : s.strategy.incentives) inc.push_back({{"set", set_ids(inst, key)}, {"V", number(v)}});
  return Json{{"x", element_map(inst, s.strategy.x)},
              {"W", number(s.W)},
              {"lpObjective", number(s.lpObjective)},
              {"targetSet", set_ids(inst, s.targetSet)},
              {"V", number(s.incentive)},
              {"incentives", std::move(inc)},
              {"leaderPayoff", number(s.leaderPayoff)},
              {"followerPayoff", number(s.followerPayoff)},
              {"incentiveBoxExceeded", s.incentiveBoxExceeded},
              {"lpRounds", s.lpRounds}};
}

// ---- permuted matching ----------------------------------------------------

inline pm::PermMatchInstance pm_from_json(const Json& j) {
  return detail::guarded("permuted matching", [&] {
    pm::PermMatchInstance inst;
    inst.graph.numVertices = detail::count(detail::field(j, "vertices"), "vertices");
    const Json& edges = detail::field(j, "edges");
    if (!edges.is_array()) throw InputError("pm: 'edges' must be an array");
    inst.graph.edges.resize(edges.size());
    std::vector<char> seen(edges.size(), 0);
    for (const Json& e : edges) {
      const std::size_t id = detail::count(detail::field(e, "id"), "edge id");
      if (id >= edges.size() || seen[id]) throw InputError("pm: edge ids must be 0..|E|-1, each once");
      seen[id] = 1;
      inst.graph.edges[id] = {detail::count(detail::field(e, "u"), "u"), detail::count(detail::field(e, "v"), "v")};
    }
    const Json& pi = detail::field(j, "pi");
    if (!pi.is_array()) throw InputError("pm: 'pi' must be an array");
    for (const Json& p : pi) inst.pi.image.push_back(detail::count(p, "pi entry"));
    inst.validate();
    return inst;
  });
}

inline Json to_json(const pm::PermMatchInstance& inst) {
  Json edges = Json::array();
  for (std::size_t k = 0; k < inst.graph.edges.size(); ++k) {
    edges.push_back({{"id", k}, {"u", inst.graph.edges[k].u}, {"v", inst.graph.edges[k].v}});
  }
  return Json{{"vertices", inst.graph.numVertices}, {"edges", std::move(edges)}, {"pi", inst.pi.image}};
}

inline Json to_json(const pm::Matching& m) { return Json(m.edges); }

inline pm::Matching matching_from_json(const Json& j) {
  return detail::guarded("matching", [&] {
    if (!j.is_array()) throw InputError("matching must be an array of edge ids");
    std::vector<pm::EdgeId> ids;
    for (const Json& e : j) ids.push_back(detail::count(e, "edge id"));
    return pm::Matching(std::move(ids));
  });
}

inline Json to_json(const pm::MatchingMix& mix) {
  Json out = Json::array();
  for (const auto& [m, p] : mix.support) out.push_back({{"matching", to_json(m)}, {"probability", number(p)}});
  return out;
}

inline pm::MatchingMix mix_from_json(const Json& j) {
  return detail::guarded("matching mix", [&] {
    if (!j.is_array()) throw InputError("leader strategy must be an array of {matching, probability}");
    pm::MatchingMix mix;
    for (const Json& w : j) {
      mix.support.push_back({matching_from_json(detail::field(w, "matching")),
                             detail::real(detail::field(w, "probability"), "probability")});
    }
    return mix;
  });
}

// ---- 3DM and the reduction map --------------------------------------------

inline pm::ThreeDMInstance tdm_from_json(const Json& j) {
  return detail::guarded("3dm", [&] {
    pm::ThreeDMInstance tdm;
    tdm.nA = detail::count(detail::field(j, "nA"), "nA");
    tdm.nB = detail::count(detail::field(j, "nB"), "nB");
    tdm.nC = detail::count(detail::field(j, "nC"), "nC");
    const Json& ts = detail::field(j, "triples");
    if (!ts.is_array()) throw InputError("3dm: 'triples' must be an array");
    for (const Json& t : ts) {
      if (!t.is_array() || t.size() != 3) throw InputError("3dm: each triple must have 3 entries");
      tdm.triples.push_back({detail::count(t[0], "a"), detail::count(t[1], "b"), detail::count(t[2], "c")});
    }
    tdm.validate();
    return tdm;
  });
}

inline Json to_json(const pm::ThreeDMInstance& tdm) {
  Json ts = Json::array();
  for (const auto& t : tdm.triples) ts.push_back(Json::array({t[0], t[1], t[2]}));
  return Json{{"nA", tdm.nA}, {"nB", tdm.nB}, {"nC", tdm.nC}, {"triples", std::move(ts)}};
}

inline Json to_json(const pm::ReductionMap& map) {
  Json per = Json::array();
  for (const auto& [ab, ac] : map.perTriple) per.push_back(Json::array({ab, ac}));
  const std::size_t nA = map.source.nA;
  const std::size_t nB = map.source.nB;
  const std::size_t nC = map.source.nC;
  return Json{{"source", to_json(map.source)},
              {"perTriple", std::move(per)},
              {"vertexRanges",
               {{"aPrime", Json::array({0, nA})},
                {"aDoublePrime", Json::array({nA, 2 * nA})},
                {"bPrime", Json::array({2 * nA, 2 * nA + nB})},
                {"cPrime", Json::array({2 * nA + nB, 2 * nA + nB + nC})}}}};
}

}  // namespace stackel::io

#endif  // STACKEL_IO_HPP_
