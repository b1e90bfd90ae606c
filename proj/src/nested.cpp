#include "lbs/building.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace lbs {

namespace {

std::vector<char> induced_flags(const Lattice& L, const BuildingSet& B,
                                Elem lo, Elem hi) {
  std::vector<char> flag(L.size(), 0);
  for (Elem m : induced_members(L, B, lo, hi)) flag[m] = 1;
  return flag;
}

}  // namespace

NestedCheck is_nested(const Lattice& L, const BuildingSet& B, Elem lo, Elem hi,
                      const std::vector<Elem>& S) {
  std::vector<char> ind = induced_flags(L, B, lo, hi);
  for (Elem s : S)
    check_arg(ind[s], "not_induced_member",
              "element " + std::to_string(s) +
                  " is not a member of the induced building set");
  std::vector<Elem> els(S.begin(), S.end());
  std::sort(els.begin(), els.end());
  NestedCheck out;
  // DFS over antichains (pairwise incomparable subsets) of S.
  std::vector<Elem> chosen;
  Elem join_acc = lo;
  std::function<bool(std::size_t, Elem)> rec = [&](std::size_t i,
                                                   Elem j) -> bool {
    if (chosen.size() >= 2 && ind[j]) {
      out.ok = false;
      out.antichain = chosen;
      return true;
    }
    for (std::size_t k = i; k < els.size(); ++k) {
      bool comparable = false;
      for (Elem c : chosen)
        if (L.leq(c, els[k]) || L.leq(els[k], c)) {
          comparable = true;
          break;
        }
      if (comparable) continue;
      chosen.push_back(els[k]);
      if (rec(k + 1, L.join(j, els[k]))) return true;
      chosen.pop_back();
    }
    return false;
  };
  rec(0, lo);
  (void)join_acc;
  return out;
}

std::vector<std::vector<Elem>> enumerate_nested_sets(
    const Lattice& L, const BuildingSet& B, Elem lo, Elem hi,
    bool irreducible_only, int max_size) {
  std::vector<Elem> cand = induced_members(L, B, lo, hi);
  if (irreducible_only)
    check_arg(std::find(cand.begin(), cand.end(), hi) != cand.end(),
              "not_irreducible",
              "the interval top is not an induced member");
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    bool emit = !irreducible_only ||
                std::find(cur.begin(), cur.end(), hi) != cur.end();
    if (emit && !(irreducible_only && cur.empty())) out.push_back(cur);
    if (max_size >= 0 && static_cast<int>(cur.size()) >= max_size) return;
    for (std::size_t k = i; k < cand.size(); ++k) {
      cur.push_back(cand[k]);
      // Nestedness is inherited by subsets, so pruning here is sound.
      if (is_nested(L, B, lo, hi, cur).ok) rec(k + 1);
      cur.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Elem tau(const Lattice& L, const std::vector<Elem>& S, Elem lo, Elem g) {
  Elem t = lo;
  for (Elem s : S)
    if (L.lt(s, g)) t = L.join(t, s);
  return t;
}

Elem comp(const Lattice& L, const std::vector<Elem>& candidates, Elem g0,
          Elem K) {
  std::vector<Elem> hits;
  for (Elem f : candidates)
    if (L.join(f, g0) == K) hits.push_back(f);
  check_arg(!hits.empty(), "not_induced_member",
            "no member joins with the base to the given element");
  std::vector<Elem> maxima;
  for (Elem a : hits) {
    bool maximal = true;
    for (Elem b : hits)
      if (a != b && L.leq(a, b)) maximal = false;
    if (maximal) maxima.push_back(a);
  }
  check_internal(maxima.size() == 1,
                 "Comp is not single-valued; building set data is corrupt");
  return maxima[0];
}

std::vector<Elem> compose_nested(
    const Lattice& L, const BuildingSet& B, Elem lo, Elem hi,
    const std::vector<Elem>& S,
    const std::map<Elem, std::vector<Elem>>& locals) {
  check_arg(std::find(S.begin(), S.end(), hi) != S.end(), "not_irreducible",
            "outer nested set must contain the interval top");
  check_arg(is_nested(L, B, lo, hi, S).ok, "not_nested",
            "outer set is not nested");
  std::vector<Elem> cand = induced_members(L, B, lo, hi);
  std::set<Elem> result(S.begin(), S.end());
  std::size_t expected = S.size();
  for (Elem g : S) {
    auto it = locals.find(g);
    check_arg(it != locals.end(), "argument",
              "missing local nested set for an element of S");
    const std::vector<Elem>& Sg = it->second;
    Elem t = tau(L, S, lo, g);
    check_arg(std::find(Sg.begin(), Sg.end(), g) != Sg.end(),
              "not_irreducible", "local nested set must contain its top");
    check_arg(is_nested(L, B, t, g, Sg).ok, "not_nested",
              "a local set is not nested");
    expected += Sg.size() - 1;
    for (Elem k : Sg) result.insert(comp(L, cand, t, k));
  }
  check_internal(result.size() == expected,
                 "composition cardinality mismatch");
  std::vector<Elem> out(result.begin(), result.end());
  check_internal(is_nested(L, B, lo, hi, out).ok,
                 "composition produced a non-nested set");
  return out;
}

std::map<Elem, std::vector<Elem>> decompose_nested(
    const Lattice& L, const BuildingSet& B, Elem lo, Elem hi,
    const std::vector<Elem>& S, const std::vector<Elem>& Sprime) {
  check_arg(std::find(Sprime.begin(), Sprime.end(), hi) != Sprime.end(),
            "argument", "frame must contain the interval top");
  for (Elem g : Sprime)
    check_arg(std::find(S.begin(), S.end(), g) != S.end(), "argument",
              "frame is not a subset of the nested set");
  std::map<Elem, std::vector<Elem>> out;
  for (Elem gp : Sprime) {
    Elem t = tau(L, Sprime, lo, gp);
    std::set<Elem> local;
    for (Elem s : S) {
      Elem j = L.join(s, t);
      if (j != t && L.leq(j, gp)) local.insert(j);
    }
    out[gp] = std::vector<Elem>(local.begin(), local.end());
  }
  return out;
}

std::vector<LocalInterval> local_intervals(const Lattice& L,
                                           const std::vector<Elem>& S,
                                           Elem lo) {
  std::vector<Elem> sorted(S.begin(), S.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<LocalInterval> out;
  for (Elem g : sorted) out.push_back({g, tau(L, sorted, lo, g)});
  return out;
}

}  // namespace lbs
