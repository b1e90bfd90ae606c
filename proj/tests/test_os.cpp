#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lbs/os.hpp"
#include "lbs/building.hpp"

using namespace lbs;

TEST_CASE("circuits") {
  Lattice B4 = build_boolean(4);
  OSAlgebra ob(B4, B4.bottom(), B4.top());
  CHECK(ob.circuits().empty());

  Lattice P3 = build_partition(3);
  OSAlgebra op(P3, P3.bottom(), P3.top());
  REQUIRE(op.circuits().size() == 1);
  CHECK(op.circuits()[0] == OSMon{0, 1, 2});

  GraphInput c4;
  c4.vertices = {"a", "b", "c", "d"};
  c4.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  Lattice L = build_graphic(c4);
  OSAlgebra oc(L, L.bottom(), L.top());
  REQUIRE(oc.circuits().size() == 1);
  CHECK(oc.circuits()[0].size() == 4);
}

TEST_CASE("Hilbert series") {
  Lattice B2 = build_boolean(2);
  OSAlgebra ob(B2, B2.bottom(), B2.top());
  CHECK(ob.hilbert() == std::vector<int>{1, 2, 1});

  Lattice P3 = build_partition(3);
  OSAlgebra op(P3, P3.bottom(), P3.top());
  CHECK(op.hilbert() == std::vector<int>{1, 3, 2});
  CHECK(op.projective_hilbert() == std::vector<int>{1, 2, 0});

  // (1+t) * Hilb(projective) = Hilb(OS) on several instances.
  Lattice P4 = build_partition(4);
  for (const Lattice* L : {&P3, &P4, &B2}) {
    OSAlgebra A(*L, L->bottom(), L->top());
    auto h = A.hilbert();
    auto p = A.projective_hilbert();
    p.resize(h.size() + 1, 0);
    for (std::size_t d = 0; d < h.size(); ++d)
      CHECK(h[d] == p[d] + (d ? p[d - 1] : 0));
  }
}

TEST_CASE("reduction and the circuit relation") {
  Lattice P3 = build_partition(3);
  OSAlgebra A(P3, P3.bottom(), P3.top());
  // Full dependent product reduces to zero.
  CHECK(A.reduce({{OSMon{0, 1, 2}, Rat(1)}}).empty());
  // The circuit relation e_bc - e_ac + e_ab = 0 (positions 0<1<2):
  // reduce(e_1 e_2) = e_0 e_2 - e_0 e_1.
  OSPoly r = A.reduce({{OSMon{1, 2}, Rat(1)}});
  OSPoly expect = os_add(OSPoly{{OSMon{0, 2}, Rat(1)}},
                         OSPoly{{OSMon{0, 1}, Rat(-1)}});
  CHECK(r == expect);
  // Reduction is idempotent and multiplicative through os_wedge.
  CHECK(A.reduce(r) == r);
  CHECK_THROWS_AS(A.reduce({{OSMon{7}, Rat(1)}}), validation_error);
}

TEST_CASE("normalization and wedge") {
  CHECK(os_term({2, 1}, Rat(1)) == OSPoly{{OSMon{1, 2}, Rat(-1)}});
  CHECK(os_term({1, 1}, Rat(1)).empty());
  OSPoly a{{OSMon{1}, Rat(1)}};
  OSPoly b{{OSMon{0}, Rat(1)}};
  CHECK(os_wedge(a, b) == OSPoly{{OSMon{0, 1}, Rat(-1)}});
  CHECK(os_wedge(a, a).empty());
}

TEST_CASE("delta") {
  CHECK(OSAlgebra::delta({{OSMon{0}, Rat(1)}}) == OSPoly{{OSMon{}, Rat(1)}});
  CHECK(OSAlgebra::delta({{OSMon{}, Rat(1)}}).empty());
  OSPoly d2 = OSAlgebra::delta({{OSMon{0, 1}, Rat(1)}});
  CHECK(d2 == os_add(OSPoly{{OSMon{1}, Rat(1)}}, OSPoly{{OSMon{0}, Rat(-1)}}));
  // delta^2 = 0 on the full basis of Pi_4.
  Lattice P4 = build_partition(4);
  OSAlgebra A(P4, P4.bottom(), P4.top());
  for (auto& by_deg : A.basis())
    for (auto& m : by_deg)
      CHECK(OSAlgebra::delta(OSAlgebra::delta({{m, Rat(1)}})).empty());
  // delta is a derivation: delta(a^b) = delta(a)^b +- a^delta(b).
  OSPoly a{{OSMon{0, 2}, Rat(1)}};
  OSPoly b{{OSMon{1, 3}, Rat(1)}};
  OSPoly lhs = OSAlgebra::delta(os_wedge(a, b));
  OSPoly rhs = os_add(os_wedge(OSAlgebra::delta(a), b),
                      os_wedge(a, OSAlgebra::delta(b)));  // |a| even part
  CHECK(lhs == rhs);
}

TEST_CASE("projective subalgebra is generated by atom differences") {
  Lattice P3 = build_partition(3);
  OSAlgebra A(P3, P3.bottom(), P3.top());
  // Spans of products of (e_H - e_{H0}) per degree match the kernel dims.
  int n = static_cast<int>(A.atoms().size());
  std::vector<OSPoly> gens;
  for (int i = 1; i < n; ++i)
    gens.push_back(os_add(OSPoly{{OSMon{i}, Rat(1)}},
                          OSPoly{{OSMon{0}, Rat(-1)}}));
  auto ph = A.projective_hilbert();
  for (std::size_t d = 1; d < ph.size(); ++d) {
    // All products of d generators.
    std::vector<OSPoly> prods{OSPoly{{OSMon{}, Rat(1)}}};
    for (std::size_t t = 0; t < d; ++t) {
      std::vector<OSPoly> next;
      for (auto& p : prods)
        for (auto& g : gens) next.push_back(os_wedge(p, g));
      prods = next;
    }
    RowReducer rr;
    std::map<OSMon, int> col;
    for (auto& m : A.basis()[d]) {
      int id = static_cast<int>(col.size());
      col[m] = id;
    }
    for (auto& p : prods) {
      SVec v;
      for (auto& [m, c] : A.reduce(p)) v[col.at(m)] = c;
      if (!v.empty()) rr.add_row(std::move(v));
    }
    CHECK(rr.rank() == ph[d]);
    // Each kernel basis vector's delta vanishes.
    for (auto& vec : A.projective_basis()[d]) {
      OSPoly x;
      for (std::size_t j = 0; j < vec.size(); ++j)
        if (vec[j] != 0) x = os_add(x, os_scale({{A.basis()[d][j], Rat(1)}}, vec[j]));
      CHECK(A.reduce(OSAlgebra::delta(x)).empty());
    }
  }
}

TEST_CASE("custom atom order changes the basis but not dimensions") {
  Lattice P4 = build_partition(4);
  OSAlgebra a(P4, P4.bottom(), P4.top());
  std::vector<Elem> rev(a.atoms().rbegin(), a.atoms().rend());
  OSAlgebra b(P4, P4.bottom(), P4.top(), rev);
  CHECK(a.hilbert() == b.hilbert());
  CHECK(a.projective_hilbert() == b.projective_hilbert());
  CHECK(b.atom_position(rev[0]) == 0);
  std::vector<Elem> badorder = {P4.atom(0)};
  CHECK_THROWS_AS(OSAlgebra(P4, P4.bottom(), P4.top(), badorder),
                  validation_error);
}

TEST_CASE("OS on an interval") {
  Lattice P4 = build_partition(4);
  OSAlgebra A(P4, P4.atom(0), P4.top());
  CHECK(A.hilbert() == std::vector<int>{1, 3, 2});  // interval is a Pi_3
}
