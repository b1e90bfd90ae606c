#include "lbs/building.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace lbs {

namespace {

std::vector<Elem> maximal_of(const Lattice& L, std::vector<Elem> xs) {
  std::vector<Elem> out;
  for (Elem a : xs) {
    bool maximal = true;
    for (Elem b : xs)
      if (a != b && L.leq(a, b)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(a);
  }
  return out;
}

}  // namespace

BuildingSetCheck is_building_set(const Lattice& L,
                                 const std::vector<Elem>& members) {
  for (Elem m : members)
    check_arg(m != L.bottom(), "argument",
              "a building set never contains the bottom element");
  std::vector<char> in(L.size(), 0);
  for (Elem m : members) in[m] = 1;
  for (Elem X = 1; X < L.size(); ++X) {
    std::vector<Elem> below;
    for (Elem m : members)
      if (L.leq(m, X)) below.push_back(m);
    std::vector<Elem> F = maximal_of(L, below);
    // Rank additivity and join condition.
    int rksum = 0;
    Elem j = L.bottom();
    for (Elem g : F) {
      rksum += L.rk[g];
      j = L.join(j, g);
    }
    if (j != X || rksum != L.rk[X]) return {false, X};
    // The join map from the product of the lower intervals to [bottom, X]
    // must be a bijection: enumerate all tuples and compare cardinalities.
    std::vector<std::vector<Elem>> lowers;
    std::size_t tuples = 1;
    for (Elem g : F) {
      std::vector<Elem> lo;
      for (Elem e = 0; e < L.size(); ++e)
        if (L.leq(e, g)) lo.push_back(e);
      tuples *= lo.size();
      lowers.push_back(std::move(lo));
    }
    std::size_t target = 0;
    for (Elem e = 0; e < L.size(); ++e)
      if (L.leq(e, X)) ++target;
    if (tuples != target) return {false, X};
    std::set<Elem> joins;
    std::vector<std::size_t> idx(F.size(), 0);
    while (true) {
      Elem e = L.bottom();
      for (std::size_t k = 0; k < F.size(); ++k) e = L.join(e, lowers[k][idx[k]]);
      joins.insert(e);
      std::size_t k = 0;
      for (; k < F.size(); ++k) {
        if (++idx[k] < lowers[k].size()) break;
        idx[k] = 0;
      }
      if (k == F.size()) break;
    }
    if (joins.size() != target) return {false, X};
  }
  return {true, -1};
}

BuildingSet make_building_set(const Lattice& L, std::vector<Elem> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  BuildingSetCheck chk = is_building_set(L, members);
  check_arg(chk.ok, "not_building_set",
            "factorization condition fails at element " +
                std::to_string(chk.witness));
  BuildingSet B;
  B.members = std::move(members);
  B.is_member.assign(L.size(), 0);
  for (Elem m : B.members) B.is_member[m] = 1;
  B.irreducible = B.contains(L.top());
  return B;
}

bool is_irreducible_element(const Lattice& L, Elem g) {
  if (g == L.bottom()) return false;
  std::vector<int> atoms = mask_bits(L.supp[g]);
  int k = static_cast<int>(atoms.size());
  if (k == 1) return true;
  // Reducible iff some bipartition of the atoms is rank-additive.  Only
  // subsets containing the first atom are tried (complement symmetry).
  for (Mask a = 1; a < bit(k - 1); ++a) {
    Mask ma = 0, mb = 0;
    for (int i = 0; i < k; ++i) ((a & bit(i)) ? ma : mb) |= bit(atoms[i]);
    if (mb == 0) continue;
    if (L.rk[L.join_of_mask(ma)] + L.rk[L.join_of_mask(mb)] == L.rk[g])
      return false;
  }
  return true;
}

BuildingSet minimal_building_set(const Lattice& L) {
  std::vector<Elem> members;
  for (Elem e = 1; e < L.size(); ++e)
    if (is_irreducible_element(L, e)) members.push_back(e);
  return make_building_set(L, members);
}

BuildingSet maximal_building_set(const Lattice& L) {
  std::vector<Elem> members;
  for (Elem e = 1; e < L.size(); ++e) members.push_back(e);
  return make_building_set(L, members);
}

Built tubes_building_set(const GraphInput& g) {
  int n = static_cast<int>(g.vertices.size());
  Built out;
  out.lat = build_boolean(n);
  std::vector<Elem> members;
  for (Mask s = 1; s < bit(n); ++s) {
    // Connectivity of the induced subgraph on s.
    std::vector<int> verts = mask_bits(s);
    Mask reached = bit(verts[0]);
    bool grew = true;
    while (grew) {
      grew = false;
      for (auto [u, v] : g.edges) {
        if (!(s & bit(u)) || !(s & bit(v))) continue;
        Mask r2 = reached;
        if (reached & bit(u)) r2 |= bit(v);
        if (reached & bit(v)) r2 |= bit(u);
        if (r2 != reached) {
          reached = r2;
          grew = true;
        }
      }
    }
    if (reached == s) members.push_back(out.lat.by_supp.at(s));
  }
  out.bs = make_building_set(out.lat, members);
  return out;
}

std::vector<Elem> factors(const Lattice& L, const BuildingSet& B, Elem X) {
  check_arg(X != L.bottom(), "argument", "factors of the bottom element");
  std::vector<Elem> below;
  for (Elem m : B.members)
    if (L.leq(m, X)) below.push_back(m);
  std::vector<Elem> out = maximal_of(L, below);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Elem> induced_members(const Lattice& L, const BuildingSet& B,
                                  Elem lo, Elem hi) {
  check_arg(L.leq(lo, hi), "argument", "not an interval");
  std::set<Elem> out;
  for (Elem m : B.members) {
    Elem j = L.join(lo, m);
    if (j != lo && L.leq(j, hi)) out.insert(j);
  }
  return std::vector<Elem>(out.begin(), out.end());
}

InducedBuildingSet induced_building_set(const Lattice& L, const BuildingSet& B,
                                        Elem lo, Elem hi) {
  check_arg(L.lt(lo, hi), "argument", "interval is trivial");
  InducedBuildingSet out;
  out.iv = interval(L, lo, hi);
  std::vector<Elem> amb = induced_members(L, B, lo, hi);
  std::unordered_map<Elem, Elem> back;  // ambient -> interval id
  for (Elem e = 0; e < out.iv.lat.size(); ++e) back[out.iv.embed[e]] = e;
  std::vector<Elem> mem;
  for (Elem a : amb) mem.push_back(back.at(a));
  std::sort(mem.begin(), mem.end());
  out.bs = make_building_set(out.iv.lat, mem);
  out.ambient.clear();
  for (Elem m : out.bs.members) out.ambient.push_back(out.iv.embed[m]);
  return out;
}

}  // namespace lbs
