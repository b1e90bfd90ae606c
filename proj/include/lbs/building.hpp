#pragma once

// Building sets and nested sets on a geometric lattice, together with the
// operadic composition/decomposition of nested sets.  All sets are lists of
// element ids of the ambient lattice, also when they live inside an interval
// [lo, hi]: working in ambient coordinates makes the interval
// identifications canonical (inducing twice is literally the same set as
// inducing once).

#include <map>
#include <optional>
#include <vector>

#include "lbs/lattice.hpp"

namespace lbs {

struct BuildingSet {
  std::vector<Elem> members;   // sorted, never contains bottom
  std::vector<char> is_member; // indexed by element id
  bool irreducible = false;    // top is a member

  bool contains(Elem e) const { return is_member[e] != 0; }
};

// A lattice with a chosen building set; the unit most functions consume.
struct Built {
  Lattice lat;
  BuildingSet bs;
};

struct BuildingSetCheck {
  bool ok = true;
  Elem witness = -1;  // element where the factorization condition fails
};

// Exhaustive check of the defining condition: for every X the factors
// (maximal members below X) have ranks summing to rank(X) and the join map
// from the product of their lower intervals to [bottom, X] is a bijection.
BuildingSetCheck is_building_set(const Lattice& L,
                                 const std::vector<Elem>& members);

// Validating constructor; throws validation_error("not_building_set").
BuildingSet make_building_set(const Lattice& L, std::vector<Elem> members);

BuildingSet minimal_building_set(const Lattice& L);
BuildingSet maximal_building_set(const Lattice& L);
// Connected induced subgraphs of g, as a building set on the boolean lattice
// of vertex subsets.
Built tubes_building_set(const GraphInput& g);

// True when [bottom, g] admits no nontrivial product decomposition, i.e. no
// bipartition of the atoms below g is rank-additive.
bool is_irreducible_element(const Lattice& L, Elem g);

// Maximal members of the building set below X (X != bottom).
std::vector<Elem> factors(const Lattice& L, const BuildingSet& B, Elem X);

// Members of the building set induced on [lo, hi], in ambient ids:
// (lo v members) intersected with (lo, hi].
std::vector<Elem> induced_members(const Lattice& L, const BuildingSet& B,
                                  Elem lo, Elem hi);

// The same set materialized as a standalone built lattice on interval ids.
struct InducedBuildingSet {
  IntervalLattice iv;
  BuildingSet bs;             // on iv.lat ids
  std::vector<Elem> ambient;  // the members as ambient ids, matching order
};
InducedBuildingSet induced_building_set(const Lattice& L, const BuildingSet& B,
                                        Elem lo, Elem hi);

// --- Nested sets (ambient ids, sorted) -----------------------------------

struct NestedCheck {
  bool ok = true;
  std::vector<Elem> antichain;  // failing antichain when !ok
};

// Antichain condition for S inside the interval [lo, hi] with the induced
// building set: no antichain of >= 2 elements of S joins into a member.
NestedCheck is_nested(const Lattice& L, const BuildingSet& B, Elem lo, Elem hi,
                      const std::vector<Elem>& S);
inline NestedCheck is_nested(const Lattice& L, const BuildingSet& B,
                             const std::vector<Elem>& S) {
  return is_nested(L, B, L.bottom(), L.top(), S);
}

// All nested sets in [lo, hi], each sorted, streamed in (size, lex id)
// order.  With irreducible_only the interval top hi must belong to the set
// (and hi must be an induced member).  max_size < 0 means unbounded.
std::vector<std::vector<Elem>> enumerate_nested_sets(
    const Lattice& L, const BuildingSet& B, Elem lo, Elem hi,
    bool irreducible_only, int max_size = -1);
inline std::vector<std::vector<Elem>> enumerate_nested_sets(
    const Lattice& L, const BuildingSet& B, bool irreducible_only,
    int max_size = -1) {
  return enumerate_nested_sets(L, B, L.bottom(), L.top(), irreducible_only,
                               max_size);
}

// tau_S(g) relative to the interval bottom lo: join of lo with all elements
// of S strictly below g.
Elem tau(const Lattice& L, const std::vector<Elem>& S, Elem lo, Elem g);

// The unique maximal member F (among the given candidates) with F v g0 = K;
// throws validation_error("not_induced_member") when there is none.
Elem comp(const Lattice& L, const std::vector<Elem>& candidates, Elem g0,
          Elem K);
inline Elem comp(const Lattice& L, const BuildingSet& B, Elem g0, Elem K) {
  return comp(L, B.members, g0, K);
}

// Operadic composition: plug the local nested sets (ambient ids, living in
// [tau_S(g), g] for each g in S) into S.  Requires S irreducible in [lo, hi]
// and each local irreducible in its interval.
std::vector<Elem> compose_nested(const Lattice& L, const BuildingSet& B,
                                 Elem lo, Elem hi, const std::vector<Elem>& S,
                                 const std::map<Elem, std::vector<Elem>>& locals);

// Inverse: given nested S and a sub-nested-set Sprime containing hi, recover
// the local nested sets with compose_nested(Sprime, result) == S.
std::map<Elem, std::vector<Elem>> decompose_nested(const Lattice& L,
                                                   const BuildingSet& B,
                                                   Elem lo, Elem hi,
                                                   const std::vector<Elem>& S,
                                                   const std::vector<Elem>& Sprime);

// The local data of an irreducible nested set: for each g in S the interval
// [tau_S(g), g].  Local ranks sum to rank(hi) - rank(lo).
struct LocalInterval {
  Elem g = -1;
  Elem lo = -1;  // tau_S(g)
};
std::vector<LocalInterval> local_intervals(const Lattice& L,
                                           const std::vector<Elem>& S, Elem lo);

}  // namespace lbs
