#pragma once

// Orlik-Solomon algebras of a geometric lattice restricted to an interval
// [lo, hi]: circuits, the no-broken-circuit basis, exact reduction, the
// degree -1 derivation delta, and the projective subalgebra ker(delta).
// Atoms of the interval are kept as ambient element ids; monomials use
// positions in the chosen atom order.

#include <map>
#include <vector>

#include "lbs/lattice.hpp"
#include "lbs/linalg.hpp"

namespace lbs {

// Strictly increasing positions into the atom order.
using OSMon = std::vector<int>;
using OSPoly = std::map<OSMon, Rat>;

OSPoly os_scale(const OSPoly& p, const Rat& c);
OSPoly os_add(const OSPoly& a, const OSPoly& b);
// Normalize a product written with atoms in arbitrary order: sorts with the
// Koszul sign, kills repeated atoms.
OSPoly os_term(const std::vector<int>& atoms, const Rat& c);
// Exterior product on normalized polynomials.
OSPoly os_wedge(const OSPoly& a, const OSPoly& b);

class OSAlgebra {
 public:
  // atom_order: permutation of the interval atoms (ambient ids); defaults to
  // increasing ambient id.
  OSAlgebra(const Lattice& L, Elem lo, Elem hi,
            std::vector<Elem> atom_order = {});

  const Lattice& lattice() const { return *L_; }
  Elem lo() const { return lo_; }
  Elem hi() const { return hi_; }
  int rank() const { return rank_; }
  const std::vector<Elem>& atoms() const { return atoms_; }  // in order
  int atom_position(Elem ambient) const;  // position in the atom order

  // Minimal dependent sets, as sorted position tuples.
  const std::vector<OSMon>& circuits() const { return circuits_; }

  // No-broken-circuit basis per degree; dimensions give the Hilbert series.
  const std::vector<std::vector<OSMon>>& basis() const { return basis_; }
  std::vector<int> hilbert() const;
  const std::vector<int>& oracle_dims() const { return oracle_dims_; }

  // Image in the nbc basis.
  OSPoly reduce(const OSPoly& p) const;

  // The derivation with delta(e_H) = 1, alternating left to right.
  static OSPoly delta(const OSPoly& p);

  // Kernel of delta on the quotient, one coordinate basis (over the nbc
  // monomials of that degree) per degree; equals the image of delta.
  const std::vector<std::vector<std::vector<Rat>>>& projective_basis() const {
    return projective_;
  }
  std::vector<int> projective_hilbert() const;

 private:
  const Lattice* L_;
  Elem lo_, hi_;
  int rank_;
  std::vector<Elem> atoms_;
  std::map<Elem, int> pos_;
  std::vector<OSMon> circuits_;
  std::vector<std::vector<OSMon>> basis_;
  std::vector<int> oracle_dims_;
  struct Degree {
    std::vector<OSMon> cols;  // non-nbc first, then nbc
    std::map<OSMon, int> col_of;
    RowReducer rows;
  };
  std::vector<Degree> deg_;
  std::vector<std::vector<std::vector<Rat>>> projective_;

  int interval_rank(const OSMon& m) const;
};

}  // namespace lbs
