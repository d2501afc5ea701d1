// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "slb/instance_io.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "slb/errors.h"

namespace slb {
namespace {

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw InvalidArgumentError((where.empty() ? "/" : where) + ": " + what);
}

const Json& Field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) Fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) Fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

double Number(const Json& j, const std::string& where) {
  if (!j.is_number()) Fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) Fail(where, "expected a finite number");
  return v;
}

std::int64_t Integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) Fail(where, "expected an integer");
  return j.get<std::int64_t>();
}

const Json& Array(const Json& j, const std::string& where) {
  if (!j.is_array()) Fail(where, "expected an array");
  return j;
}

std::string At(const std::string& where, std::size_t k) {
  return where + "/" + std::to_string(k);
}

Json FiniteOrString(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgumentError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgumentError(path + ": malformed JSON: " + e.what());
  }
}

void WriteJsonFile(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw InvalidArgumentError("cannot write " + path);
  out << doc.dump(2) << "\n";
}

DiscreteDist ParseDist(const Json& j, const std::string& where) {
  Array(j, where);
  if (j.empty()) Fail(where, "distribution has no atoms");
  std::vector<Atom> atoms;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string at = At(where, k);
    const Json& pair = Array(j[k], at);
    if (pair.size() != 2) Fail(at, "expected [value, prob]");
    const double value = Number(pair[0], At(at, 0));
    const double prob = Number(pair[1], At(at, 1));
    if (value < 0.0) Fail(At(at, 0), "value must be non-negative");
    if (prob < 0.0 || prob > 1.0) Fail(At(at, 1), "prob must lie in [0, 1]");
    atoms.push_back({value, prob});
  }
  try {
    return DiscreteDist(std::move(atoms), 1e-9);
  } catch (const InvalidArgumentError& e) {
    Fail(where, e.what());
  }
}

Json DistToJson(const DiscreteDist& d) {
  Json out = Json::array();
  for (const Atom& a : d.atoms()) out.push_back({a.value, a.prob});
  return out;
}

PNorm ParsePNorm(const Json& j, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return PNorm::Infinity();
    Fail(where, "p must be a number >= 1 or \"inf\"");
  }
  const double p = Number(j, where);
  if (p < 1.0) Fail(where, "p must be >= 1");
  return PNorm(p);
}

Json PNormToJson(PNorm p) {
  if (p.is_infinite()) return "inf";
  return p.value();
}

InstanceFile ParseInstance(const Json& j) {
  InstanceFile file;
  const std::int64_t m = Integer(Field(j, "m", ""), "/m");
  const std::int64_t n = Integer(Field(j, "n", ""), "/n");
  if (m < 1) Fail("/m", "must be >= 1");
  if (n < 1) Fail("/n", "must be >= 1");
  file.p = ParsePNorm(Field(j, "p", ""), "/p");
  const Json& jobs = Array(Field(j, "jobs", ""), "/jobs");
  if (static_cast<std::int64_t>(jobs.size()) != n) {
    Fail("/jobs", "expected n = " + std::to_string(n) + " rows");
  }
  LbInstance& inst = file.instance;
  inst.m = static_cast<int>(m);
  inst.n = static_cast<int>(n);
  inst.jobs.assign(inst.m, std::vector<DiscreteDist>(inst.n));
  for (int jj = 0; jj < inst.n; ++jj) {
    const std::string row_at = At("/jobs", jj);
    const Json& row = Array(jobs[jj], row_at);
    if (static_cast<std::int64_t>(row.size()) != m) {
      Fail(row_at, "expected m = " + std::to_string(m) + " distributions");
    }
    for (int i = 0; i < inst.m; ++i) {
      inst.jobs[i][jj] = ParseDist(row[i], At(row_at, i));
    }
  }
  return file;
}

Json InstanceToJson(const LbInstance& inst, PNorm p) {
  Json jobs = Json::array();
  for (int j = 0; j < inst.n; ++j) {
    Json row = Json::array();
    for (int i = 0; i < inst.m; ++i) row.push_back(DistToJson(inst.jobs[i][j]));
    jobs.push_back(std::move(row));
  }
  return Json{{"m", inst.m}, {"n", inst.n}, {"p", PNormToJson(p)},
              {"jobs", std::move(jobs)}};
}

IntegralAssignment ParseAssignment(const Json& j, const LbInstance& inst) {
  const bool wrapped = j.is_object();
  const Json& list = wrapped ? Field(j, "assignment", "") : j;
  const std::string where = wrapped ? "/assignment" : "";
  Array(list, where);
  if (static_cast<int>(list.size()) != inst.n) {
    Fail(where, "expected " + std::to_string(inst.n) + " entries");
  }
  IntegralAssignment a;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::int64_t i = Integer(list[k], At(where, k));
    if (i < 0 || i >= inst.m) Fail(At(where, k), "machine out of range");
    a.machine_of.push_back(static_cast<int>(i));
  }
  return a;
}

Json AssignmentToJson(const IntegralAssignment& a) {
  return Json{{"assignment", a.machine_of}};
}

SolverConfig ParseConfig(const Json& j, SolverConfig cfg) {
  if (!j.is_object()) Fail("", "config must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const std::string at = "/" + key;
    const Json& v = it.value();
    if (key == "alpha") {
      cfg.alpha = Number(v, at);
    } else if (key == "C") {
      cfg.C = Number(v, at);
    } else if (key == "v_grid_ratio") {
      cfg.v_grid_ratio = Number(v, at);
    } else if (key == "bisection_rel_tol") {
      cfg.bisection_rel_tol = Number(v, at);
    } else if (key == "max_bisection_iters") {
      cfg.max_bisection_iters = static_cast<int>(Integer(v, at));
    } else if (key == "max_rounds") {
      cfg.max_rounds = static_cast<int>(Integer(v, at));
    } else if (key == "max_bracket_expansions") {
      cfg.max_bracket_expansions = static_cast<int>(Integer(v, at));
    } else if (key == "mc_samples") {
      cfg.mc_samples = Integer(v, at);
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) Fail(at, "expected a non-negative integer");
      cfg.seed = v.get<std::uint64_t>();
    } else if (key == "ratio_guard") {
      cfg.ratio_guard = Number(v, at);
    } else if (key == "outcome_cap") {
      const std::int64_t cap = Integer(v, at);
      if (cap < 1) Fail(at, "must be >= 1");
      cfg.outcome_cap = static_cast<std::size_t>(cap);
    } else if (key == "beta_rhs_uses_c") {
      if (!v.is_boolean()) Fail(at, "expected a boolean");
      cfg.beta_rhs_uses_c = v.get<bool>();
    } else {
      Fail(at, "unknown config field");
    }
  }
  try {
    ValidateConfig(cfg);
  } catch (const InvalidArgumentError& e) {
    Fail("", e.what());
  }
  return cfg;
}

Json ConfigToJson(const SolverConfig& cfg) {
  return Json{{"alpha", cfg.alpha},
              {"C", cfg.C},
              {"v_grid_ratio", cfg.v_grid_ratio},
              {"bisection_rel_tol", cfg.bisection_rel_tol},
              {"max_bisection_iters", cfg.max_bisection_iters},
              {"max_rounds", cfg.max_rounds},
              {"max_bracket_expansions", cfg.max_bracket_expansions},
              {"mc_samples", cfg.mc_samples},
              {"seed", cfg.seed},
              {"ratio_guard", cfg.ratio_guard},
              {"outcome_cap", cfg.outcome_cap},
              {"beta_rhs_uses_c", cfg.beta_rhs_uses_c}};
}

ItemsFile ParseItems(const Json& j) {
  ItemsFile file;
  file.p = ParsePNorm(Field(j, "p", ""), "/p");
  const Json& items = Array(Field(j, "items", ""), "/items");
  if (items.empty()) Fail("/items", "need at least one item");
  for (std::size_t k = 0; k < items.size(); ++k) {
    file.items.push_back(ParseDist(items[k], At("/items", k)));
  }
  return file;
}

LinOptOracle ParseRegion(const Json& j, int n) {
  const Json& type = Field(j, "type", "");
  if (!type.is_string()) Fail("/type", "expected a string");
  const std::string kind = type.get<std::string>();
  try {
    if (kind == "explicit") {
      const Json& sets = Array(Field(j, "sets", ""), "/sets");
      std::vector<Selection> region;
      for (std::size_t k = 0; k < sets.size(); ++k) {
        const Json& row = Array(sets[k], At("/sets", k));
        if (static_cast<int>(row.size()) != n) {
          Fail(At("/sets", k), "expected " + std::to_string(n) + " entries");
        }
        Selection s;
        for (std::size_t q = 0; q < row.size(); ++q) {
          s.push_back(static_cast<int>(Integer(row[q], At(At("/sets", k), q))));
        }
        region.push_back(std::move(s));
      }
      return ExplicitRegionOracle(std::move(region));
    }
    if (kind == "cardinality") {
      return CardinalityOracle(
          n, static_cast<int>(Integer(Field(j, "k", ""), "/k")));
    }
    if (kind == "partition") {
      const Json& parts = Array(Field(j, "part_of", ""), "/part_of");
      const Json& caps = Array(Field(j, "capacity", ""), "/capacity");
      if (static_cast<int>(parts.size()) != n) {
        Fail("/part_of", "expected " + std::to_string(n) + " entries");
      }
      std::vector<int> part_of;
      std::vector<int> capacity;
      for (std::size_t k = 0; k < parts.size(); ++k) {
        part_of.push_back(static_cast<int>(Integer(parts[k], At("/part_of", k))));
      }
      for (std::size_t k = 0; k < caps.size(); ++k) {
        capacity.push_back(static_cast<int>(Integer(caps[k], At("/capacity", k))));
      }
      return MatroidOracle(n, PartitionMatroidRank(part_of, capacity));
    }
  } catch (const InvalidArgumentError& e) {
    const std::string msg = e.what();
    if (!msg.empty() && msg[0] == '/') throw;
    Fail("", msg);
  }
  Fail("/type", "unknown region type \"" + kind + "\"");
}

Json EvaluationToJson(const NormEvaluation& e) {
  Json out{{"method", e.method}, {"value", e.value}};
  if (e.method == "mc") {
    out["stderr"] = e.std_error;
    out["samples"] = e.samples;
    out["seed"] = e.seed;
  }
  return out;
}

Json SolveReportToJson(const SolveReport& r, const SolverConfig& cfg, PNorm p) {
  Json probes = Json::array();
  for (const BisectionProbe& b : r.probes) {
    probes.push_back(
        {{"T", b.T}, {"feasible", b.feasible}, {"separation_rounds", b.rounds}});
  }
  std::vector<bool> in_i(r.params.in_I.begin(), r.params.in_I.end());
  Json rows = Json::object();
  for (std::size_t k = 0; k < r.audit.row_names.size(); ++k) {
    rows[r.audit.row_names[k]] = FiniteOrString(r.audit.row_factors[k]);
  }
  Json machine_factors = Json::array();
  for (double f : r.audit.machine_factor) {
    machine_factors.push_back(FiniteOrString(f));
  }
  Json out;
  out["path"] = r.path;
  out["p"] = PNormToJson(p);
  out["assignment"] = r.assignment.machine_of;
  out["norm"] = EvaluationToJson(r.norm);
  out["final_T"] = r.final_T;
  out["lower_bracket"] = r.lower_bracket;
  out["bracket_expansions"] = r.bracket_expansions;
  out["probes"] = std::move(probes);
  out["non_monotone"] = r.non_monotone;
  out["v_grid"] = r.v_grid;
  out["v_bar"] = r.params.v_bar;
  out["l_bar"] = r.params.l_bar;
  out["in_I"] = in_i;
  out["sum_inverse_v_bar"] = r.sum_inverse_v_bar;
  out["l_bar_counts_ok"] = r.l_bar_counts_ok;
  out["xbar_reduced_violation"] = r.xbar_reduced_violation;
  out["separation"] = {{"rounds", r.lp_rounds}, {"cuts", r.lp_cuts}};
  out["audit"] = {{"fractional_cost", r.audit.fractional_cost},
                  {"integral_cost", r.audit.integral_cost},
                  {"cost_ok", r.audit.cost_ok},
                  {"loads_ok", r.audit.loads_ok},
                  {"cost_factor", FiniteOrString(r.audit.cost_factor)},
                  {"machine_factors", std::move(machine_factors)},
                  {"max_merged_factor", FiniteOrString(r.audit.max_merged_factor)},
                  {"row_factors", std::move(rows)},
                  {"max_row_factor", FiniteOrString(r.audit.max_row_factor)}};
  out["config"] = ConfigToJson(cfg);
  return out;
}

}  // namespace slb
