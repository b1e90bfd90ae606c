#pragma once

// Geometric lattices in the canonical flat-based representation: every
// element is identified with its atom support, element ids are assigned by
// (rank, lexicographic support), and the join table is precomputed eagerly.

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lbs/common.hpp"

namespace lbs {

struct Lattice {
  int natoms = 0;
  std::vector<std::string> atom_names;    // size natoms
  std::vector<Mask> supp;                 // per element; element 0 = bottom
  std::vector<int> rk;                    // rank per element
  std::vector<std::vector<Elem>> jn;      // join table
  std::unordered_map<Mask, Elem> by_supp; // support -> element id

  Elem bottom() const { return 0; }
  Elem top() const { return static_cast<Elem>(supp.size()) - 1; }
  int size() const { return static_cast<int>(supp.size()); }
  int rank() const { return rk[top()]; }

  // Atom i (construction order) is the rank-1 element with support {i}.
  Elem atom(int i) const { return by_supp.at(bit(i)); }

  bool leq(Elem a, Elem b) const { return (supp[a] & ~supp[b]) == 0; }
  bool lt(Elem a, Elem b) const { return a != b && leq(a, b); }
  Elem join(Elem a, Elem b) const { return jn[a][b]; }
  // Meet = join of the common lower atoms (derived on demand).
  Elem meet(Elem a, Elem b) const { return join_of_mask(supp[a] & supp[b]); }
  // Join of a set of atoms: smallest flat containing them.
  Elem join_of_mask(Mask m) const;

  std::vector<Elem> atoms_below(Elem x) const;
  bool covers(Elem lo, Elem hi) const;  // hi covers lo
};

struct AxiomReport {
  bool ok = true;
  std::string violation;  // empty | not_a_lattice | jordan_holder |
                          // submodularity | atomicity
  std::string detail;
};

struct GraphInput {
  std::vector<std::string> vertices;
  std::vector<std::pair<int, int>> edges;  // indices into vertices
};

// Builders.  All of them return fully validated lattices.
Lattice build_boolean(int n, int bound = 8);
Lattice build_partition(int n);
Lattice build_graphic(const GraphInput& g);
// Generic ingestion; flats are atom index sets.  Throws a validation_error
// whose kind() names the violated axiom.
Lattice build_from_flats(int natoms, const std::vector<Mask>& flats,
                         std::vector<std::string> atom_names = {});

// The exhaustive axiom check used by tests and by build_from_flats.
AxiomReport check_geometric_axioms(const Lattice& L);

// Interval [x, y] as a standalone lattice plus the embedding back into L.
struct IntervalLattice {
  Lattice lat;
  std::vector<Elem> embed;  // interval element -> L element
};
IntervalLattice interval(const Lattice& L, Elem x, Elem y);

// Product lattice with the two summand embeddings on elements.
struct ProductLattice {
  Lattice lat;
  std::vector<std::pair<Elem, Elem>> factors;  // element -> (in L1, in L2)
};
ProductLattice product(const Lattice& a, const Lattice& b);

// Brute-force poset isomorphism search via atom bijections.  When the member
// sets are given the isomorphism must also map members(a) onto members(b).
std::optional<std::vector<Elem>> find_isomorphism(
    const Lattice& a, const Lattice& b,
    const std::vector<Elem>* members_a = nullptr,
    const std::vector<Elem>* members_b = nullptr);
std::vector<std::vector<Elem>> find_automorphisms(
    const Lattice& L, const std::vector<Elem>* members = nullptr);

}  // namespace lbs
