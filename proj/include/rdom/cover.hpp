#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "rdom/balls.hpp"
#include "rdom/graph.hpp"
#include "rdom/io.hpp"
#include "rdom/rng.hpp"

namespace rdom {

class CoverError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public CoverError {
 public:
  using CoverError::CoverError;
};

/// Weighted covering instance: cover `universe` with sets of minimum total
/// weight. Sets and elements are addressed by position; members list
/// universe positions.
class CoverInstance {
 public:
  CoverInstance() = default;

  // Set members outside the universe are ignored. Throws when an element is
  // covered by no set or a weight is not positive.
  CoverInstance(std::vector<VertexId> universe, const std::map<BallId, std::vector<VertexId>>& sets,
                const std::map<BallId, Weight>& weights)
      : universe_(std::move(universe)) {
    std::sort(universe_.begin(), universe_.end());
    universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
    sets_of_.resize(universe_.size());
    for (const auto& [id, elems] : sets) {
      auto w = weights.find(id);
      if (w == weights.end()) throw CoverError("set " + std::to_string(id) + " has no weight");
      if (w->second <= 0) throw CoverError("set " + std::to_string(id) + " has a nonpositive weight");
      std::vector<std::size_t> members;
      for (auto v : elems) {
        auto it = std::lower_bound(universe_.begin(), universe_.end(), v);
        if (it != universe_.end() && *it == v) members.push_back(static_cast<std::size_t>(it - universe_.begin()));
      }
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      for (auto e : members) sets_of_[e].push_back(ids_.size());
      ids_.push_back(id);
      members_.push_back(std::move(members));
      weights_.push_back(w->second);
    }
    for (std::size_t e = 0; e < universe_.size(); ++e) {
      if (sets_of_[e].empty()) throw CoverError("element " + std::to_string(universe_[e]) + " is covered by no set");
    }
  }

  std::size_t element_count() const { return universe_.size(); }
  std::size_t set_count() const { return ids_.size(); }
  const std::vector<VertexId>& universe() const { return universe_; }
  BallId set_id(std::size_t s) const { return ids_[s]; }
  const std::vector<std::size_t>& members(std::size_t s) const { return members_[s]; }
  const Weight& weight(std::size_t s) const { return weights_[s]; }
  const std::vector<std::size_t>& sets_of(std::size_t e) const { return sets_of_[e]; }

  std::optional<std::size_t> set_index(BallId id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - ids_.begin());
  }

  // Sets ordered cheapest first, ties by id.
  bool cheaper(std::size_t a, std::size_t b) const {
    return weights_[a] != weights_[b] ? weights_[a] < weights_[b] : ids_[a] < ids_[b];
  }

 private:
  std::vector<VertexId> universe_;
  std::vector<BallId> ids_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<Weight> weights_;
  std::vector<std::vector<std::size_t>> sets_of_;
};

struct FractionalCover {
  std::vector<double> x;  // aligned with set positions
  double cost = 0;
  double lower_bound = 0;
  std::size_t augmentations = 0;
};

struct Cover {
  std::vector<BallId> chosen;  // ascending
  Weight weight = 0;
  std::string method;
  std::uint64_t seed = 0;
  std::optional<double> lower_bound;
};

inline Cover make_cover(const CoverInstance& inst, const std::vector<std::size_t>& sets, std::string method,
                        std::uint64_t seed = 0) {
  Cover c;
  c.method = std::move(method);
  c.seed = seed;
  for (auto s : sets) {
    c.chosen.push_back(inst.set_id(s));
    c.weight += inst.weight(s);
  }
  std::sort(c.chosen.begin(), c.chosen.end());
  return c;
}

/// True iff every element is covered by a chosen set and the weight is the
/// exact sum of the chosen weights.
inline bool verify_cover(const CoverInstance& inst, const Cover& c) {
  std::vector<char> covered(inst.element_count(), 0);
  Weight total = 0;
  auto chosen = c.chosen;
  std::sort(chosen.begin(), chosen.end());
  if (std::adjacent_find(chosen.begin(), chosen.end()) != chosen.end()) return false;
  for (auto id : chosen) {
    auto s = inst.set_index(id);
    if (!s) return false;
    total += inst.weight(*s);
    for (auto e : inst.members(*s)) covered[e] = 1;
  }
  return total == c.weight && std::all_of(covered.begin(), covered.end(), [](char x) { return x != 0; });
}

// ---------------------------------------------------------------------------
// Covering LP  min w.x  s.t.  sum_{S ∋ e} x_S >= 1,  x >= 0.
//
// Multiplicative length updates on the dual packing LP (max 1.y s.t.
// sum_{e in S} y_e <= w_S). Lengths l_S start at 1/w_S; the element with a
// short length sum receives y += min_{S ∋ e} w_S and every S ∋ e grows by
// (1 + step * increment / w_S). At any moment l / min_e L_e is a feasible
// cover and y / max_S(load_S / w_S) a feasible packing, so the loop stops on
// the first pair of certificates within a factor (1 + eps).

inline FractionalCover lp_fractional_cover(const CoverInstance& inst, double eps = 0.1) {
  if (!(eps > 0.0 && eps <= 1.0)) throw CoverError("eps must lie in (0, 1]");
  const std::size_t n = inst.element_count();
  const std::size_t m = inst.set_count();
  FractionalCover out;
  out.x.assign(m, 0.0);
  if (n == 0) return out;

  const double step = eps / 3.0;
  std::vector<double> w(m), len(m), load(m, 0.0), y(n, 0.0);
  for (std::size_t s = 0; s < m; ++s) {
    w[s] = inst.weight(s).convert_to<double>();
    len[s] = 1.0 / w[s];
  }
  auto length_sum = [&](std::size_t e) {
    double sum = 0;
    for (auto s : inst.sets_of(e)) sum += len[s];
    return sum;
  };
  const double logn = std::max(1.0, std::log(static_cast<double>(n)));
  const auto cap = static_cast<std::size_t>(10.0 * static_cast<double>(n) * static_cast<double>(m) * logn / (eps * eps));

  double best_cost = std::numeric_limits<double>::infinity();
  double best_lb = 0;
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < n; ++e) alpha = std::min(alpha, length_sum(e));
  double threshold = alpha * (1.0 + step);

  while (true) {
    for (std::size_t e = 0; e < n; ++e) {
      while (length_sum(e) < threshold) {
        double inc = std::numeric_limits<double>::infinity();
        for (auto s : inst.sets_of(e)) inc = std::min(inc, w[s]);
        y[e] += inc;
        for (auto s : inst.sets_of(e)) {
          load[s] += inc;
          len[s] *= 1.0 + step * inc / w[s];
        }
        if (++out.augmentations > cap) throw CoverError("covering LP: iteration cap exceeded without certificate");
      }
    }
    // Rescale lengths; certificates are invariant under scaling.
    double top = *std::max_element(len.begin(), len.end());
    if (top > 1e200) {
      for (auto& l : len) l /= top;
    }
    alpha = std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < n; ++e) alpha = std::min(alpha, length_sum(e));
    double cost = 0;
    for (std::size_t s = 0; s < m; ++s) cost += w[s] * len[s] / alpha;
    if (cost < best_cost) {
      best_cost = cost;
      for (std::size_t s = 0; s < m; ++s) out.x[s] = len[s] / alpha;
    }
    double worst = 0;
    for (std::size_t s = 0; s < m; ++s) worst = std::max(worst, load[s] / w[s]);
    double lb = std::accumulate(y.begin(), y.end(), 0.0) / worst * (1.0 - 1e-12);
    best_lb = std::max(best_lb, lb);
    if (best_cost <= (1.0 + eps) * best_lb) break;
    threshold = alpha * (1.0 + step);
  }

  // Capping at 1 keeps every constraint satisfied and only lowers the cost.
  out.cost = 0;
  for (std::size_t s = 0; s < m; ++s) {
    out.x[s] = std::min(out.x[s], 1.0);
    out.cost += w[s] * out.x[s];
  }
  out.lower_bound = best_lb;
  return out;
}

// ---------------------------------------------------------------------------
// Quasi-uniform rounding.

struct RoundingParams {
  int copies = 16;  // k0: every element starts with depth >= k0
  double prune_mass = 0.5;  // theta in [0, 1)
};

/// Zeroes the small entries of a fractional cover and rescales the rest by
/// 1 / (1 - theta), capped at 1. A set is zeroed only when, at every element
/// it covers, it lies in the prefix (ascending x) of total mass <= theta, so
/// the result stays feasible and costs at most 1 / (1 - theta) times more.
inline std::vector<double> sparsify(const CoverInstance& inst, const std::vector<double>& x, double theta) {
  if (!(theta >= 0.0 && theta < 1.0)) throw CoverError("prune mass must lie in [0, 1)");
  const std::size_t m = inst.set_count();
  std::vector<char> keep(m, 0);
  for (std::size_t e = 0; e < inst.element_count(); ++e) {
    auto sets = inst.sets_of(e);
    std::sort(sets.begin(), sets.end(), [&](auto a, auto b) { return x[a] != x[b] ? x[a] < x[b] : a < b; });
    double mass = 0;
    for (auto s : sets) {
      mass += x[s];
      if (mass > theta) keep[s] = 1;
    }
  }
  std::vector<double> out(m, 0.0);
  for (std::size_t s = 0; s < m; ++s) {
    if (keep[s]) out[s] = std::min(1.0, x[s] / (1.0 - theta));
  }
  return out;
}

/// Rounds a fractional cover: sparsify it, take ceil(k0 x_S) copies of each set, halve the
/// multiset log2(k0) times (each non-immortal copy survives with probability
/// 1/2), and after round i repair every element below depth
/// max(1, ceil(k0 / 2^i)) by reviving dropped copies of its cheapest sets,
/// which then become immortal. Sets with a surviving copy form the cover; a
/// final sweep adds the cheapest set for anything still uncovered.
inline Cover quasi_uniform_round(const CoverInstance& inst, const FractionalCover& frac, std::uint64_t seed,
                                 RoundingParams params = {}) {
  const std::size_t n = inst.element_count();
  const std::size_t m = inst.set_count();
  const int k0 = params.copies;
  if (frac.x.size() != m) throw CoverError("fractional cover does not match the instance");
  auto x = sparsify(inst, frac.x, params.prune_mass);
  std::vector<int> alive(m, 0), immortal(m, 0), dropped(m, 0);
  for (std::size_t s = 0; s < m; ++s) alive[s] = std::max(0, static_cast<int>(std::ceil(x[s] * k0 - 1e-9)));
  auto depth = [&](std::size_t e) {
    int d = 0;
    for (auto s : inst.sets_of(e)) d += alive[s];
    return d;
  };
  std::vector<std::vector<std::size_t>> by_price(n);
  for (std::size_t e = 0; e < n; ++e) {
    by_price[e] = inst.sets_of(e);
    std::sort(by_price[e].begin(), by_price[e].end(), [&](auto a, auto b) { return inst.cheaper(a, b); });
  }

  int rounds = 0;
  while ((1 << rounds) < k0) ++rounds;
  for (int i = 1; i <= rounds; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    for (std::size_t s = 0; s < m; ++s) {
      int mortal = alive[s] - immortal[s];
      int kept = 0;
      for (int c = 0; c < mortal; ++c) kept += rng.coin() ? 1 : 0;
      dropped[s] += mortal - kept;
      alive[s] = immortal[s] + kept;
    }
    const int need = std::max(1, (k0 + (1 << i) - 1) >> i);
    for (std::size_t e = 0; e < n; ++e) {
      int d = depth(e);
      for (auto s : by_price[e]) {
        while (d < need && dropped[s] > 0) {
          --dropped[s];
          ++alive[s];
          ++immortal[s];
          ++d;
        }
        if (d >= need) break;
      }
    }
  }

  std::vector<char> chosen(m, 0);
  for (std::size_t s = 0; s < m; ++s) chosen[s] = alive[s] > 0;
  for (std::size_t e = 0; e < n; ++e) {
    bool covered = std::any_of(inst.sets_of(e).begin(), inst.sets_of(e).end(), [&](auto s) { return chosen[s] != 0; });
    if (!covered) chosen[by_price[e].front()] = 1;
  }
  std::vector<std::size_t> picked;
  for (std::size_t s = 0; s < m; ++s) {
    if (chosen[s]) picked.push_back(s);
  }
  auto cover = make_cover(inst, picked, "quasi", seed);
  cover.lower_bound = frac.lower_bound;
  return cover;
}

/// Greedy: repeatedly take the set with the smallest weight per newly
/// covered element (ties to the smaller id).
inline Cover greedy_cover(const CoverInstance& inst) {
  const std::size_t m = inst.set_count();
  std::vector<std::size_t> fresh(m);
  for (std::size_t s = 0; s < m; ++s) fresh[s] = inst.members(s).size();
  std::vector<char> covered(inst.element_count(), 0);
  std::size_t remaining = inst.element_count();
  std::vector<std::size_t> picked;
  while (remaining > 0) {
    std::optional<std::size_t> best;
    for (std::size_t s = 0; s < m; ++s) {
      if (fresh[s] == 0) continue;
      if (!best) {
        best = s;
        continue;
      }
      // w_s / fresh_s < w_b / fresh_b
      Weight lhs = inst.weight(s) * static_cast<long long>(fresh[*best]);
      Weight rhs = inst.weight(*best) * static_cast<long long>(fresh[s]);
      if (lhs < rhs) best = s;
    }
    picked.push_back(*best);
    for (auto e : inst.members(*best)) {
      if (covered[e]) continue;
      covered[e] = 1;
      --remaining;
      for (auto s : inst.sets_of(e)) --fresh[s];
    }
  }
  return make_cover(inst, picked, "greedy");
}

struct ExactBudget {
  std::size_t max_sets = 24;
  std::size_t max_nodes = 20'000'000;
};

/// Optimal cover by branch and bound. Branches on the uncovered element with
/// the fewest remaining candidate sets (a sole candidate is forced); prunes
/// with the bound sum_e min_{S ∋ e} w_S / |S ∩ uncovered|.
inline Cover exact_cover(const CoverInstance& inst, ExactBudget budget = {}) {
  const std::size_t n = inst.element_count();
  const std::size_t m = inst.set_count();
  if (m > budget.max_sets) {
    throw BudgetExceeded("exact cover: " + std::to_string(m) + " sets exceed the cap of " +
                         std::to_string(budget.max_sets));
  }
  std::vector<char> covered(n, 0), excluded(m, 0), taken(m, 0);
  std::vector<std::size_t> best_sets;
  std::optional<Weight> best;
  std::size_t nodes = 0;

  auto bound = [&]() -> std::optional<Weight> {
    Weight total = 0;
    for (std::size_t e = 0; e < n; ++e) {
      if (covered[e]) continue;
      std::optional<Weight> cheapest;
      for (auto s : inst.sets_of(e)) {
        if (excluded[s]) continue;
        long long fresh = 0;
        for (auto f : inst.members(s)) fresh += covered[f] ? 0 : 1;
        Weight price = inst.weight(s) / fresh;
        if (!cheapest || price < *cheapest) cheapest = price;
      }
      if (!cheapest) return std::nullopt;
      total += *cheapest;
    }
    return total;
  };

  auto search = [&](auto&& self, const Weight& cost) -> void {
    if (++nodes > budget.max_nodes) throw BudgetExceeded("exact cover: node budget exhausted");
    auto lb = bound();
    if (!lb || (best && cost + *lb >= *best)) return;
    std::optional<std::size_t> branch;
    std::size_t fewest = 0;
    for (std::size_t e = 0; e < n; ++e) {
      if (covered[e]) continue;
      std::size_t candidates = 0;
      for (auto s : inst.sets_of(e)) candidates += excluded[s] ? 0 : 1;
      if (!branch || candidates < fewest) {
        branch = e;
        fewest = candidates;
      }
    }
    if (!branch) {
      best = cost;
      best_sets.clear();
      for (std::size_t s = 0; s < m; ++s) {
        if (taken[s]) best_sets.push_back(s);
      }
      return;
    }
    std::vector<std::size_t> options;
    for (auto s : inst.sets_of(*branch)) {
      if (!excluded[s]) options.push_back(s);
    }
    std::sort(options.begin(), options.end(), [&](auto a, auto b) { return inst.cheaper(a, b); });
    std::vector<std::size_t> newly_excluded;
    for (auto s : options) {
      std::vector<std::size_t> newly_covered;
      for (auto e : inst.members(s)) {
        if (!covered[e]) {
          covered[e] = 1;
          newly_covered.push_back(e);
        }
      }
      taken[s] = 1;
      excluded[s] = 1;
      self(self, cost + inst.weight(s));
      taken[s] = 0;
      for (auto e : newly_covered) covered[e] = 0;
      newly_excluded.push_back(s);
    }
    for (auto s : newly_excluded) excluded[s] = 0;
  };
  search(search, Weight(0));
  if (!best) throw CoverError("exact cover: instance is infeasible");
  auto cover = make_cover(inst, best_sets, "exact");
  cover.lower_bound = best->convert_to<double>();
  return cover;
}

// ---------------------------------------------------------------------------

enum class Method { quasi, greedy, exact };

inline std::string method_name(Method m) {
  switch (m) {
    case Method::quasi: return "quasi";
    case Method::greedy: return "greedy";
    case Method::exact: return "exact";
  }
  return "quasi";
}

inline Method parse_method(const std::string& name) {
  if (name == "quasi") return Method::quasi;
  if (name == "greedy") return Method::greedy;
  if (name == "exact") return Method::exact;
  throw Error("unknown method \"" + name + "\"");
}

/// The covering instance of r-domination: one ball B(v, r) per vertex,
/// weighted by w(v), covering all vertices.
inline CoverInstance rdom_instance(const Graph& g, Length r) {
  if (r < 0) throw Error("radius must be nonnegative");
  std::vector<VertexId> universe;
  std::map<BallId, std::vector<VertexId>> sets;
  std::map<BallId, Weight> weights;
  for (const auto& v : g.vertices()) {
    universe.push_back(v.id);
    sets[v.id] = ball_members(g, {v.id, v.id, r});
    weights[v.id] = v.weight;
  }
  return CoverInstance(std::move(universe), sets, weights);
}

struct SolveOptions {
  double eps = 0.1;
  ExactBudget budget{};
};

inline Cover solve_cover(const CoverInstance& inst, Method method, std::uint64_t seed, SolveOptions opts = {}) {
  switch (method) {
    case Method::quasi: return quasi_uniform_round(inst, lp_fractional_cover(inst, opts.eps), seed);
    case Method::greedy: return greedy_cover(inst);
    case Method::exact: return exact_cover(inst, opts.budget);
  }
  throw Error("unknown method");
}

/// r-dominating set of g: the chosen ball ids are the center vertices.
inline Cover solve_rdomset(const Graph& g, Length r, std::uint64_t seed, Method method, SolveOptions opts = {}) {
  auto cover = solve_cover(rdom_instance(g, r), method, seed, opts);
  cover.seed = seed;
  return cover;
}

inline Json cover_to_json(const Cover& c, bool feasible) {
  Json doc;
  doc["method"] = c.method;
  doc["seed"] = c.seed;
  doc["centers"] = c.chosen;
  doc["weight"] = weight_to_json(c.weight);
  doc["lowerBound"] = c.lower_bound ? Json(*c.lower_bound) : Json(nullptr);
  doc["feasible"] = feasible;
  return doc;
}

inline Cover parse_cover(const Json& doc) {
  Cover c;
  const std::string root = "solution";
  const auto& method = detail::field(doc, "method", root);
  if (!method.is_string()) throw ParseError(root + ".method", "expected a string");
  c.method = method.get<std::string>();
  const auto& seed = detail::field(doc, "seed", root);
  if (!seed.is_number_integer()) throw ParseError(root + ".seed", "expected an integer");
  c.seed = seed.get<std::uint64_t>();
  const auto& centers = detail::field(doc, "centers", root);
  if (!centers.is_array()) throw ParseError(root + ".centers", "expected an array");
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (!centers[i].is_number_integer()) throw ParseError(root + ".centers[" + std::to_string(i) + "]", "expected an integer");
    c.chosen.push_back(centers[i].get<BallId>());
  }
  c.weight = weight_from_json(detail::field(doc, "weight", root), root + ".weight");
  const auto& lb = detail::field(doc, "lowerBound", root);
  if (lb.is_number()) c.lower_bound = lb.get<double>();
  return c;
}

}  // namespace rdom
