#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <initializer_list>
#include <vector>

#include "lbs/leray.hpp"

using namespace lbs;

namespace {

Elem by_atoms(const Lattice& L, std::initializer_list<int> atoms) {
  Mask m = 0;
  for (int a : atoms) m |= bit(a);
  return L.join_of_mask(m);
}

GraphInput cycle_graph(int n) {
  GraphInput g;
  for (int i = 0; i < n; ++i) {
    g.vertices.push_back(std::string(1, static_cast<char>('a' + i)));
    g.edges.emplace_back(i, (i + 1) % n);
  }
  return g;
}

int total_dimension(const LerayModel& Lm) {
  int t = 0;
  for (const auto& [bd, d] : Lm.dimensions()) t += d;
  return t;
}

// Every basis element of the decomposition indexing: an irreducible nested
// set with one normal monomial per slot.
std::vector<DecompElem> decomposition_basis(const Lattice& L,
                                            const BuildingSet& B) {
  std::vector<DecompElem> out;
  for (const std::vector<Elem>& T : enumerate_nested_sets(L, B, true)) {
    std::vector<std::vector<FYMon>> locs;
    for (Elem g : T) {
      FYAlgebra A(L, B, tau(L, T, L.bottom(), g), g);
      std::vector<FYMon> flat;
      for (const auto& degree : A.basis())
        for (const FYMon& m : degree) flat.push_back(m);
      locs.push_back(std::move(flat));
    }
    std::vector<size_t> idx(T.size(), 0);
    while (true) {
      DecompElem e;
      e.S = T;
      for (size_t k = 0; k < T.size(); ++k)
        if (!locs[k][idx[k]].empty()) e.local[T[k]] = locs[k][idx[k]];
      out.push_back(std::move(e));
      size_t k = 0;
      while (k < idx.size() && ++idx[k] == locs[k].size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("monomial normalization") {
  const Elem a = 1, b = 2;
  CHECK(leray_term({a, a}, {}, Rat(1)).empty());
  const LerayPoly ab = leray_term({a, b}, {}, Rat(1));
  const LerayPoly ba = leray_term({b, a}, {}, Rat(1));
  CHECK(leray_add(ab, ba).empty());  // e_b e_a = -e_a e_b
  CHECK(leray_bidegree(LerayMon{{a, b}, {{a, 2}}}) ==
        std::pair<int, int>(4, 2));
}

TEST_CASE("rank-1 lattice") {
  const Lattice L = build_boolean(1);
  const BuildingSet B = minimal_building_set(L);

  const LerayModel P(L, B, LerayVariant::projective);
  CHECK(P.dimensions() ==
        std::map<std::pair<int, int>, int>{{{0, 0}, 1}});
  CHECK(homology(P).diagonal == std::vector<int>{1});
  CHECK(os_comparison(P).ok);

  // The affine variant keeps e_top (and x_top is still the atom relation).
  const LerayModel A(L, B, LerayVariant::affine);
  CHECK(A.dimensions() ==
        std::map<std::pair<int, int>, int>{{{0, 0}, 1}, {{0, 1}, 1}});
  CHECK(A.reduce(leray_term({L.top()}, {}, Rat(1))).size() == 1);
  CHECK(P.reduce(leray_term({L.top()}, {}, Rat(1))).empty());
  CHECK(homology(A).diagonal == std::vector<int>{1, 1});
  CHECK(os_comparison(A).ok);
}

TEST_CASE("defining relations hold in the quotient") {
  const Lattice L = build_partition(3);
  const BuildingSet B = minimal_building_set(L);
  for (LerayVariant v : {LerayVariant::projective, LerayVariant::affine}) {
    const LerayModel Lm(L, B, v);
    // One linear relation per atom.
    for (int i = 0; i < L.natoms; ++i) {
      LerayPoly rel;
      for (Elem G : B.members)
        if (L.leq(L.atom(i), G))
          rel = leray_add(rel, leray_term({}, {{G, 1}}, Rat(1)));
      CHECK(Lm.reduce(rel).empty());
    }
    // Non-nested supports vanish: e_a e_b with a v b = top, a member.
    const Elem a = L.atom(0), b = L.atom(1);
    CHECK(Lm.multiply(leray_term({a}, {}, Rat(1)),
                      leray_term({b}, {}, Rat(1)))
              .empty());
    CHECK(Lm.reduce(leray_term({a}, {{b, 1}}, Rat(1))).empty());
  }
}

TEST_CASE("triangle block dimensions") {
  const Lattice L = build_partition(3);
  const BuildingSet B = minimal_building_set(L);
  const LerayModel P(L, B, LerayVariant::projective);
  const auto dims = P.dimensions();
  CHECK(dims == std::map<std::pair<int, int>, int>{
                    {{0, 0}, 1}, {{2, 0}, 1}, {{0, 1}, 3}});
  // The affine model strictly contains the projective one.
  const LerayModel A(L, B, LerayVariant::affine);
  CHECK(total_dimension(A) > total_dimension(P));
}

TEST_CASE("quotient dimensions equal the decomposition count per bidegree") {
  struct Entry {
    Lattice L;
    BuildingSet B;
  };
  std::vector<Entry> entries;
  {
    Lattice L = build_partition(3);
    entries.push_back({L, minimal_building_set(L)});
  }
  {
    Lattice L = build_boolean(3);
    entries.push_back({L, maximal_building_set(L)});
  }
  {
    Lattice L = build_partition(4);
    entries.push_back({L, minimal_building_set(L)});
  }
  for (const Entry& e : entries)
    for (LerayVariant v : {LerayVariant::projective, LerayVariant::affine}) {
      const LerayModel Lm(e.L, e.B, v);
      CHECK(Lm.dimensions() == decomposition_dimensions(e.L, e.B, v));
    }
}

TEST_CASE("differential") {
  const Lattice L = build_partition(3);
  const BuildingSet B = minimal_building_set(L);
  const Elem a = L.atom(0);

  SUBCASE("on a single e-generator") {
    const LerayModel P(L, B, LerayVariant::projective);
    CHECK(P.d(leray_term({a}, {}, Rat(1))) ==
          P.reduce(leray_term({}, {{a, 1}}, Rat(1))));
    CHECK(P.d(leray_term({}, {{a, 1}}, Rat(1))).empty());  // d(x) = 0
  }

  SUBCASE("signed Leibniz rule on an e-pair") {
    // e_a e_top is admissible in the affine model.
    const LerayModel A(L, B, LerayVariant::affine);
    const Elem t = L.top();
    const LerayPoly lhs = A.d(leray_term({a, t}, {}, Rat(1)));
    const LerayPoly rhs = A.reduce(
        leray_add(leray_term({t}, {{a, 1}}, Rat(1)),
                  leray_scale(leray_term({a}, {{t, 1}}, Rat(1)), Rat(-1))));
    CHECK(lhs == rhs);
  }

  SUBCASE("d squares to zero on every block") {
    std::vector<std::pair<Lattice, BuildingSet>> entries;
    {
      Lattice L4 = build_partition(4);
      entries.emplace_back(L4, minimal_building_set(L4));
    }
    {
      Lattice B3 = build_boolean(3);
      entries.emplace_back(B3, maximal_building_set(B3));
    }
    for (const auto& [Le, Be] : entries)
      for (LerayVariant v :
           {LerayVariant::projective, LerayVariant::affine}) {
        const LerayModel Lm(Le, Be, v);
        for (const auto& [bd, dim] : Lm.dimensions()) {
          const Mat dd = mat_mul(Lm.differential(bd.first + 2, bd.second - 1),
                                 Lm.differential(bd.first, bd.second));
          for (const auto& row : dd)
            for (const Rat& c : row) CHECK(c == 0);
        }
      }
  }
}

TEST_CASE("homology matches the Orlik-Solomon algebra") {
  const Lattice L = build_partition(3);
  const BuildingSet B = minimal_building_set(L);

  const LerayModel P(L, B, LerayVariant::projective);
  const LerayHomology hp = homology(P);
  CHECK(hp.diagonal == std::vector<int>{1, 2});
  CHECK(hp.concentrated);

  const LerayModel A(L, B, LerayVariant::affine);
  const LerayHomology ha = homology(A);
  CHECK(ha.diagonal == std::vector<int>{1, 3, 2});
  CHECK(ha.concentrated);
}

TEST_CASE("comparison map verdict on the catalog") {
  std::vector<std::pair<Lattice, BuildingSet>> entries;
  {
    Lattice L = build_partition(3);
    entries.emplace_back(L, minimal_building_set(L));
  }
  {
    Lattice L = build_partition(4);
    entries.emplace_back(L, minimal_building_set(L));
  }
  {
    Lattice L = build_boolean(3);
    entries.emplace_back(L, maximal_building_set(L));
  }
  {
    Lattice L = build_graphic(cycle_graph(4));
    entries.emplace_back(L, minimal_building_set(L));
  }
  for (const auto& [L, B] : entries)
    for (LerayVariant v : {LerayVariant::projective, LerayVariant::affine}) {
      const OSComparisonReport rep = os_comparison(LerayModel(L, B, v));
      CHECK(rep.chain_map);
      CHECK(rep.concentrated);
      CHECK(rep.iso);
      CHECK(rep.ok);
      CHECK(rep.homology_dims == rep.os_dims);
    }
}

TEST_CASE("bar product case splits") {
  const Lattice L = build_partition(3);
  const BuildingSet B = minimal_building_set(L);
  const LerayModel P(L, B, LerayVariant::projective);
  const Elem a = L.atom(0), b = L.atom(1), t = L.top();

  // {a, top} and {b, top} join outside: {a, b} is an antichain with join
  // top, a member, so the union is not nested.
  CHECK(bar_product(P, DecompElem{{a, t}, {}}, DecompElem{{b, t}, {}}).empty());
  // Overlap beyond the top.
  CHECK(bar_product(P, DecompElem{{a, t}, {}}, DecompElem{{a, t}, {}}).empty());
  // Unit: multiplying by the empty monomial at {top} is the identity.
  const DecompElem unit{{t}, {}};
  const DecompElem ea{{a, t}, {}};
  CHECK(bar_product(P, unit, ea) == P.reduce(decomp_monomial(P, ea)));
  CHECK(bar_product(P, ea, unit) == P.reduce(decomp_monomial(P, ea)));
}

TEST_CASE("bar product agrees with quotient multiplication") {
  SUBCASE("all decomposition basis pairs of the triangle") {
    const Lattice L = build_partition(3);
    const BuildingSet B = minimal_building_set(L);
    const LerayModel P(L, B, LerayVariant::projective);
    const std::vector<DecompElem> basis = decomposition_basis(L, B);
    CHECK(static_cast<int>(basis.size()) == total_dimension(P));
    int nonzero = 0;
    for (const DecompElem& x : basis)
      for (const DecompElem& y : basis) {
        const LerayPoly lhs = bar_product(P, x, y);
        const LerayPoly rhs =
            P.multiply(decomp_monomial(P, x), decomp_monomial(P, y));
        CHECK(lhs == rhs);
        if (!lhs.empty()) ++nonzero;
      }
    CHECK(nonzero > 0);
  }

  SUBCASE("nested chain pairs with nontrivial pushes") {
    const Lattice L = build_partition(4);
    const BuildingSet B = minimal_building_set(L);
    const LerayModel P(L, B, LerayVariant::projective);
    const Elem t = L.top();
    const Elem g12 = by_atoms(L, {0});          // the atom 12
    const Elem g123 = by_atoms(L, {0, 1});      // the triple 123
    // All local monomial choices on the chains {12, top} and {123, top}.
    std::vector<DecompElem> xs, ys;
    for (const FYMon& m :
         {FYMon{}, FYMon{{t, 1}}})  // [12, top] has rank 2
      xs.push_back(DecompElem{{g12, t}, {{t, m}}});
    for (const FYMon& m : {FYMon{}, FYMon{{g123, 1}}})  // [bot, 123]
      ys.push_back(DecompElem{{g123, t}, {{g123, m}}});
    int nonzero = 0;
    for (const DecompElem& x : xs)
      for (const DecompElem& y : ys) {
        const LerayPoly lhs = bar_product(P, x, y);
        const LerayPoly rhs =
            P.multiply(decomp_monomial(P, x), decomp_monomial(P, y));
        CHECK(lhs == rhs);
        if (!lhs.empty()) ++nonzero;
      }
    CHECK(nonzero > 0);
  }
}
