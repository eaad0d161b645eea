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

// stackel: batch front end for the solver library.
//
// Every command prints one JSON run report on stdout:
//   {"toolkit", "command", "inputDigest"?, "result", "wallTimeMs"?}
// and, with -o, writes the bare result (or generated instance) to a file.
// Exit codes: 0 ok, 1 internal failure, 2 bad input, 3 size limit.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stackel/io.hpp"
#include "stackel/stackel.hpp"

namespace {

using stackel::InputError;
using stackel::LimitError;
using stackel::SolverError;
using stackel::io::Json;
using stackel::io::number;
using stackel::io::numbers;

constexpr std::size_t kPathFamilyLimit = 4096;
constexpr std::size_t kPmMatchingLimit = 512;

struct Context {
  std::vector<std::string> argv;
  int indent = 2;
  bool noTiming = false;
  std::string input;
  std::string output;
  std::string eps;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> digest;
};

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open output file '" + path + "'");
  out << text;
  if (!out) throw SolverError("failed writing '" + path + "'");
}

std::string dump(const Json& j, int indent) { return j.dump(indent < 0 ? -1 : indent) + "\n"; }

Json load_input(Context& ctx) {
  if (ctx.input.empty()) throw InputError("an input file is required (-i)");
  const std::string text = read_file(ctx.input);
  ctx.digest = fnv1a64(text);
  return stackel::io::parse_document(text);
}

struct Ratio {
  std::uint64_t p = 0;
  std::uint64_t q = 1;
  bool exact = false;  // written as p/q
  double value = 0.0;
};

// "p/q" or a decimal.
Ratio parse_eps(const std::string& text) {
  Ratio r;
  try {
    const auto slash = text.find('/');
    std::size_t used = 0;
    if (slash != std::string::npos) {
      const std::string num = text.substr(0, slash);
      const std::string den = text.substr(slash + 1);
      if (num.empty() || den.empty() || num[0] == '-' || den[0] == '-') throw InputError("bad ratio");
      r.p = std::stoull(num, &used);
      if (used != num.size()) throw InputError("bad ratio");
      r.q = std::stoull(den, &used);
      if (used != den.size()) throw InputError("bad ratio");
      if (r.q == 0) throw InputError("bad ratio");
      r.exact = true;
      r.value = static_cast<double>(r.p) / static_cast<double>(r.q);
    } else {
      r.value = std::stod(text, &used);
      if (used != text.size()) throw InputError("bad number");
    }
  } catch (const std::logic_error&) {
    throw InputError("--eps must be p/q or a decimal, got '" + text + "'");
  }
  if (!(r.value > 0.0)) throw InputError("--eps must be positive");
  return r;
}

stackel::discretize::GridParams grid_params(const std::string& eps) {
  if (eps.empty()) throw InputError("--eps is required for the discretize method");
  const Ratio r = parse_eps(eps);
  return r.exact ? stackel::discretize::GridParams::from_ratio(r.p, r.q)
                 : stackel::discretize::GridParams::from_eps(r.value);
}

// ---- solve-bimatrix -------------------------------------------------------

void check_best_response(const stackel::BimatrixGame& g, const stackel::MixedStrategy& x, std::size_t j,
                         double slack) {
  const auto uf = stackel::column_values(g.uF, x);
  for (double v : uf) {
    if (v > uf[j] + slack + 1e-9) throw SolverError("self-check: follower response is not a best response");
  }
}

Json cmd_solve_bimatrix(Context& ctx, const std::string& method) {
  const stackel::BimatrixGame game = stackel::io::bimatrix_from_json(load_input(ctx));
  if (method != "discretize" && !ctx.eps.empty()) throw InputError("--eps applies only to --method discretize");
  Json out{{"method", method}};
  if (method == "se") {
    const auto sol = stackel::solve_stackelberg(game);
    check_best_response(game, sol.leader, sol.followerResponse, 0.0);
    out["solution"] = stackel::io::to_json(sol);
  } else if (method == "nash") {
    Json eqs = Json::array();
    for (const auto& eq : stackel::solve_nash_support_enumeration(game)) {
      const auto p = stackel::expected_utilities(game, eq.leader, eq.follower);
      eqs.push_back({{"leader", numbers(eq.leader.probs)},
                     {"follower", numbers(eq.follower.probs)},
                     {"leaderPayoff", number(p.leader)},
                     {"followerPayoff", number(p.follower)}});
    }
    out["equilibria"] = std::move(eqs);
  } else if (method == "maximin") {
    const auto leader = stackel::solve_maximin(game, stackel::Player::kLeader);
    const auto follower = stackel::solve_maximin(game, stackel::Player::kFollower);
    const auto prof = stackel::realized_maximin_profile(game);
    out["leader"] = {{"strategy", numbers(leader.strategy.probs)}, {"guaranteed", number(leader.value)}};
    out["follower"] = {{"strategy", numbers(follower.strategy.probs)}, {"guaranteed", number(follower.value)}};
    out["leaderPayoff"] = number(prof.leaderPayoff);
    out["followerPayoff"] = number(prof.followerPayoff);
  } else {
    const auto sol = stackel::discretize::discretized_se(game, grid_params(ctx.eps));
    check_best_response(game, sol.leader, sol.followerResponse, sol.slack);
    std::uint64_t total = 0;
    for (auto a : sol.numerators) total += a;
    if (total != sol.params.k) throw SolverError("self-check: leader strategy is off the grid");
    out["solution"] = stackel::io::to_json(sol);
  }
  return out;
}

// ---- solve-incentive ------------------------------------------------------

Json cmd_solve_incentive(Context& ctx, bool noIncentives, std::size_t familyLimit) {
  namespace inc = stackel::incentive;
  const inc::IncentiveInstance inst = stackel::io::incentive_from_json(load_input(ctx));
  if (noIncentives) {
    const inc::IncentiveInstance flat = inc::materialize(inst, familyLimit);
    const stackel::BimatrixGame game = inc::to_bimatrix(flat);
    const auto sol = stackel::solve_stackelberg(game);
    check_best_response(game, sol.leader, sol.followerResponse, 0.0);
    const auto& chosen = flat.explicit_family().sets[sol.followerResponse];
    return Json{{"mode", "no-incentives"},
                {"familySize", flat.explicit_family().sets.size()},
                {"x", stackel::io::element_map(inst, sol.leader.probs)},
                {"followerSet", stackel::io::set_ids(inst, chosen)},
                {"leaderPayoff", number(sol.leaderPayoff)},
                {"followerPayoff", number(sol.followerPayoff)}};
  }
  const inc::IncentiveSolution sol = inc::solve_stackelberg_incentive(inst);
  const auto best = inc::base_best_set(inst, sol.strategy.x);
  if (sol.incentive < -1e-7 || sol.followerPayoff < best.value - 1e-7) {
    throw SolverError("self-check: target set is not a follower best response");
  }
  if (sol.strategy.incentives.size() > 1) throw SolverError("self-check: more than one incentivized set");
  Json out = stackel::io::to_json(inst, sol);
  out["mode"] = "incentives";
  return out;
}

// ---- pm -------------------------------------------------------------------

Json cmd_pm(Context& ctx, const std::string& mode, const std::string& leaderPath) {
  namespace pm = stackel::pm;
  const pm::PermMatchInstance inst = stackel::io::pm_from_json(load_input(ctx));
  Json out{{"mode", mode}};
  if (mode == "approx") {
    const double eps = ctx.eps.empty() ? 0.01 : parse_eps(ctx.eps).value;
    const pm::ApproxSolution sol = pm::approx_solve(inst, eps);
    sol.leader.validate(inst.graph, 1e-12);
    pm::require_matching(inst.graph, sol.followerResponse, "self-check");
    bool containsXPrime = true;
    for (auto e : sol.pair.xPrime.edges) containsXPrime = containsXPrime && sol.followerResponse.contains(e);
    out["eps"] = number(eps);
    out["leader"] = stackel::io::to_json(sol.leader);
    out["followerResponse"] = stackel::io::to_json(sol.followerResponse);
    out["leaderFavoring"] = sol.leaderFavoring;
    out["leaderPayoff"] = number(sol.leaderPayoff);
    out["followerPayoff"] = number(sol.followerPayoff);
    out["certificate"] = {{"x", stackel::io::to_json(sol.pair.x)},
                          {"xPrime", stackel::io::to_json(sol.pair.xPrime)},
                          {"greedyShared", sol.greedyShared},
                          {"purePairUpperBound", 4 * sol.greedyShared},
                          {"guaranteeFactor", number(sol.guaranteeFactor())},
                          {"responseContainsXPrime", containsXPrime}};
  } else if (mode == "bruteforce") {
    pm::require_brute_force_size(inst, "pm bruteforce");
    const pm::PitimResult tim = pm::bruteforce_pitim(inst);
    const pm::ExplicitPmGame ex = pm::explicit_bimatrix(inst, kPmMatchingLimit);
    const auto se = stackel::solve_stackelberg(ex.game);
    check_best_response(ex.game, se.leader, se.followerResponse, 0.0);
    out["pitim"] = {{"matching", stackel::io::to_json(tim.matching)}, {"value", tim.value}};
    out["se"] = {{"leader", stackel::io::to_json(pm::to_matching_mix(ex, se.leader))},
                 {"followerResponse", stackel::io::to_json(ex.matchings[se.followerResponse])},
                 {"leaderPayoff", number(se.leaderPayoff)},
                 {"followerPayoff", number(se.followerPayoff)},
                 {"matchings", ex.matchings.size()}};
  } else {
    if (leaderPath.empty()) throw InputError("pm bestresponse needs --leader <strategy.json>");
    const pm::MatchingMix mix = stackel::io::mix_from_json(stackel::io::parse_document(read_file(leaderPath)));
    mix.validate(inst.graph);
    const pm::PmBestResponse br = pm::follower_best_response_pm(inst, mix);
    const auto [ul, uf] = pm::pm_expected(inst, mix, br.matching);
    out["followerResponse"] = stackel::io::to_json(br.matching);
    out["leaderFavoring"] = br.leaderFavoring;
    out["leaderPayoff"] = number(ul);
    out["followerPayoff"] = number(uf);
  }
  return out;
}

// ---- reduce ---------------------------------------------------------------

std::string sidecar_path(const std::string& out) {
  const std::string ext = ".json";
  if (out.size() > ext.size() && out.compare(out.size() - ext.size(), ext.size(), ext) == 0) {
    return out.substr(0, out.size() - ext.size()) + ".map.json";
  }
  return out + ".map.json";
}

Json cmd_reduce(Context& ctx) {
  namespace pm = stackel::pm;
  if (ctx.output.empty()) throw InputError("reduce needs an output file (-o)");
  const pm::ThreeDMInstance tdm = stackel::io::tdm_from_json(load_input(ctx));
  const auto [inst, map] = pm::reduce_3dm(tdm);

  // Round trip on a greedy maximal 3D matching before anything is written.
  std::vector<std::size_t> greedy;
  for (std::size_t t = 0; t < tdm.triples.size(); ++t) {
    greedy.push_back(t);
    if (!pm::is_3d_matching(tdm, greedy)) greedy.pop_back();
  }
  const pm::Matching lifted = pm::lift_3dm(map, greedy);
  const auto rebuilt = pm::reduced_graph(map);
  bool sameGraph = rebuilt.numVertices == inst.graph.numVertices && rebuilt.edges.size() == inst.graph.edges.size();
  for (std::size_t e = 0; sameGraph && e < rebuilt.edges.size(); ++e) {
    sameGraph = rebuilt.edges[e].u == inst.graph.edges[e].u && rebuilt.edges[e].v == inst.graph.edges[e].v;
  }
  if (!sameGraph || pm::extract_3dm(map, lifted) != greedy || pm::pitim_value(inst, lifted) != 2 * greedy.size()) {
    throw SolverError("self-check: reduction round trip failed");
  }
  const std::string mapPath = sidecar_path(ctx.output);
  write_file(ctx.output, dump(stackel::io::to_json(inst), ctx.indent));
  write_file(mapPath, dump(stackel::io::to_json(map), ctx.indent));
  return Json{{"output", ctx.output},
              {"map", mapPath},
              {"vertices", inst.graph.numVertices},
              {"edges", inst.graph.edges.size()},
              {"roundTrip", {{"triples", greedy}, {"pitimValue", pm::pitim_value(inst, lifted)}}}};
}

// ---- gen ------------------------------------------------------------------

struct GenParams {
  std::size_t n = 3, m = 3;
  double lo = 0.0, hi = 1.0;
  std::size_t vertices = 6, edges = 6;
  std::size_t nA = 3, nB = 3, nC = 3;
  std::optional<std::size_t> triples;
  std::optional<double> density;
  std::size_t elements = 4, sets = 5;
  bool verifiable = false;
};

Json cmd_gen(Context& ctx, const std::string& kind, const GenParams& gp) {
  stackel::Rng rng(ctx.seed);
  if (kind == "random-bimatrix") {
    if (gp.verifiable && (gp.n > stackel::kNashEnumerationLimit || gp.m > stackel::kNashEnumerationLimit)) {
      throw InputError("--verifiable: n and m must be <= 8");
    }
    return stackel::io::to_json(stackel::random_bimatrix(rng, gp.n, gp.m, gp.lo, gp.hi));
  }
  if (kind == "random-pm") {
    if (gp.verifiable && gp.edges > stackel::pm::kBruteForceEdgeLimit) {
      throw InputError("--verifiable: at most 12 edges");
    }
    return stackel::io::to_json(stackel::random_pm(rng, gp.vertices, gp.edges));
  }
  if (kind == "random-3dm") {
    if (gp.triples && gp.density) throw InputError("give either --triples or --density");
    const auto tdm = gp.density ? stackel::random_3dm_density(rng, gp.nA, gp.nB, gp.nC, *gp.density)
                                : stackel::random_3dm(rng, gp.nA, gp.nB, gp.nC, gp.triples.value_or(3));
    if (gp.verifiable && tdm.triples.size() > stackel::pm::kBruteForceTripleLimit) {
      throw InputError("--verifiable: at most 20 triples");
    }
    return stackel::io::to_json(tdm);
  }
  return stackel::io::to_json(stackel::random_explicit_incentive(rng, gp.elements, gp.sets));
}

int run(int argc, char** argv) {
  Context ctx;
  for (int i = 0; i < argc; ++i) ctx.argv.emplace_back(argv[i]);

  CLI::App app{"Stackelberg equilibrium solvers"};
  app.set_version_flag("--version", std::string("stackel ") + STACKEL_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--json-indent", ctx.indent, "Indentation of JSON output (-1 for compact)");
  app.add_flag("--no-timing", ctx.noTiming, "Omit wall time from the report");

  auto common = [&](CLI::App* sub, bool needsInput) {
    auto* in = sub->add_option("-i,--input", ctx.input, "Input JSON file");
    if (needsInput) in->required();
    sub->add_option("-o,--output", ctx.output, "Write the result JSON to this file");
  };

  std::string method = "se";
  auto* bim = app.add_subcommand("solve-bimatrix", "Solve an explicit bimatrix game");
  common(bim, true);
  bim->add_option("--method", method, "se | nash | maximin | discretize")
      ->check(CLI::IsMember({"se", "nash", "maximin", "discretize"}));
  bim->add_option("--eps", ctx.eps, "Grid width p/q (discretize)");

  auto* disc = app.add_subcommand("discretize", "Same as solve-bimatrix --method discretize");
  common(disc, true);
  disc->add_option("--eps", ctx.eps, "Grid width p/q")->required();

  bool noIncentives = false;
  std::size_t familyLimit = kPathFamilyLimit;
  auto* inc = app.add_subcommand("solve-incentive", "Optimal commitment with incentives");
  common(inc, true);
  inc->add_flag("--no-incentives", noIncentives, "Solve the plain game over the enumerated family instead");
  inc->add_option("--family-limit", familyLimit, "Maximum number of enumerated paths");

  std::string pmMode;
  std::string leaderPath;
  auto* pmc = app.add_subcommand("pm", "Permuted matching games");
  common(pmc, true);
  pmc->add_option("mode", pmMode, "approx | bruteforce | bestresponse")
      ->required()
      ->check(CLI::IsMember({"approx", "bruteforce", "bestresponse"}));
  pmc->add_option("--eps", ctx.eps, "Approximation parameter in (0, 1/3)");
  pmc->add_option("--leader", leaderPath, "Leader strategy JSON (bestresponse)");

  std::string reduceKind;
  auto* red = app.add_subcommand("reduce", "Instance reductions");
  common(red, true);
  red->add_option("kind", reduceKind, "3dm-to-pm")->required()->check(CLI::IsMember({"3dm-to-pm"}));

  std::string genKind;
  GenParams gp;
  double density = -1.0;
  std::size_t triples = 0;
  auto* gen = app.add_subcommand("gen", "Seeded random instances");
  common(gen, false);
  gen->add_option("kind", genKind, "random-bimatrix | random-pm | random-3dm | random-incentive")
      ->required()
      ->check(CLI::IsMember({"random-bimatrix", "random-pm", "random-3dm", "random-incentive"}));
  gen->add_option("--seed", ctx.seed, "Generator seed");
  gen->add_option("--n", gp.n, "Leader strategies");
  gen->add_option("--m", gp.m, "Follower strategies");
  gen->add_option("--lo", gp.lo, "Smallest payoff");
  gen->add_option("--hi", gp.hi, "Largest payoff");
  gen->add_option("--vertices", gp.vertices, "Vertices");
  gen->add_option("--edges", gp.edges, "Edges");
  gen->add_option("--nA", gp.nA, "Size of part A");
  gen->add_option("--nB", gp.nB, "Size of part B");
  gen->add_option("--nC", gp.nC, "Size of part C");
  auto* triplesOpt = gen->add_option("--triples", triples, "Number of triples");
  auto* densityOpt = gen->add_option("--density", density, "Probability of each triple");
  gen->add_option("--elements", gp.elements, "Ground set size (random-incentive)");
  gen->add_option("--sets", gp.sets, "Family size (random-incentive)");
  gen->add_flag("--verifiable", gp.verifiable, "Reject sizes beyond the brute-force limits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (triplesOpt->count() > 0) gp.triples = triples;
  if (densityOpt->count() > 0) gp.density = density;

  const auto start = std::chrono::steady_clock::now();
  Json result;
  if (bim->parsed()) {
    result = cmd_solve_bimatrix(ctx, method);
  } else if (disc->parsed()) {
    result = cmd_solve_bimatrix(ctx, "discretize");
  } else if (inc->parsed()) {
    result = cmd_solve_incentive(ctx, noIncentives, familyLimit);
  } else if (pmc->parsed()) {
    result = cmd_pm(ctx, pmMode, leaderPath);
  } else if (red->parsed()) {
    result = cmd_reduce(ctx);
  } else {
    result = cmd_gen(ctx, genKind, gp);
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (!ctx.output.empty() && !red->parsed()) write_file(ctx.output, dump(result, ctx.indent));

  Json report{{"toolkit", std::string("stackel ") + STACKEL_VERSION}, {"command", ctx.argv}};
  if (ctx.digest) {
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(*ctx.digest));
    report["inputDigest"] = std::string("fnv1a64:") + hex;
  }
  report["result"] = std::move(result);
  if (!ctx.noTiming) report["wallTimeMs"] = number(ms);
  std::cout << dump(report, ctx.indent);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InputError& e) {
    std::cerr << "stackel: input error: " << e.what() << "\n";
    return 2;
  } catch (const LimitError& e) {
    std::cerr << "stackel: size limit: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "stackel: internal error: " << e.what() << "\n";
    return 1;
  }
}
