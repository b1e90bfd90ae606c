#include "lbs/lattice.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace lbs {

Elem Lattice::join_of_mask(Mask m) const {
  auto it = by_supp.find(m);
  if (it != by_supp.end()) return it->second;
  // Smallest flat containing m: intersect all flats above m.  The element
  // list is sorted by rank, so the first superset already has minimal rank,
  // but we intersect to stay honest even for malformed inputs.
  Mask closure = supp[top()];
  for (Elem e = 0; e < size(); ++e)
    if ((m & ~supp[e]) == 0) closure &= supp[e];
  return by_supp.at(closure);
}

std::vector<Elem> Lattice::atoms_below(Elem x) const {
  std::vector<Elem> out;
  for (int i : mask_bits(supp[x])) out.push_back(atom(i));
  return out;
}

bool Lattice::covers(Elem lo, Elem hi) const {
  if (!lt(lo, hi)) return false;
  for (Elem e = 0; e < size(); ++e)
    if (lt(lo, e) && lt(e, hi)) return false;
  return true;
}

namespace {

// Assemble the Lattice value from a deduplicated, closure-checked flat list.
// Ranks are chain heights; the geometric axioms are checked afterwards.
Lattice assemble(int natoms, std::vector<Mask> flats,
                 std::vector<std::string> atom_names) {
  check_arg(natoms >= 0 && natoms <= kMaxAtoms, "size_bound",
            "atom count out of range");
  std::sort(flats.begin(), flats.end());
  flats.erase(std::unique(flats.begin(), flats.end()), flats.end());
  check_arg(flats.size() <= kMaxElements, "size_bound",
            "lattice exceeds the element bound");
  check_arg(!flats.empty() && flats.front() == 0, "not_a_lattice",
            "the empty flat (bottom) is missing");
  Mask full = natoms == 0 ? 0 : bit(natoms) - 1;
  check_arg(std::find(flats.begin(), flats.end(), full) != flats.end(),
            "not_a_lattice", "the full atom set (top) is missing");

  // Heights by dynamic programming over inclusion (popcount is monotone
  // along inclusion, so sorting by popcount orders every chain correctly).
  std::vector<Mask> by_size = flats;
  std::sort(by_size.begin(), by_size.end(), [](Mask a, Mask b) {
    return std::pair(popcount(a), a) < std::pair(popcount(b), b);
  });
  std::unordered_map<Mask, int> height;
  for (const Mask m : by_size) {
    int h = 0;
    for (const Mask f : by_size) {
      if (popcount(f) >= popcount(m)) break;
      if ((f & ~m) == 0 && height[f] + 1 > h) h = height[f] + 1;
    }
    height[m] = h;
  }

  std::sort(flats.begin(), flats.end(), [&](Mask a, Mask b) {
    if (height[a] != height[b]) return height[a] < height[b];
    return mask_lex_less(a, b);
  });

  Lattice L;
  L.natoms = natoms;
  if (atom_names.empty())
    for (int i = 0; i < natoms; ++i) atom_names.push_back(std::to_string(i));
  check_arg(static_cast<int>(atom_names.size()) == natoms, "argument",
            "atom name count mismatch");
  L.atom_names = std::move(atom_names);
  L.supp = flats;
  for (Elem e = 0; e < L.size(); ++e) {
    L.rk.push_back(height[L.supp[e]]);
    L.by_supp[L.supp[e]] = e;
  }

  // Eager join table via closures; failure to close is "not a lattice".
  int n = L.size();
  L.jn.assign(n, std::vector<Elem>(n, 0));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a; b < n; ++b) {
      Mask u = L.supp[a] | L.supp[b];
      Mask closure = L.supp[L.top()];
      for (Elem e = 0; e < n; ++e)
        if ((u & ~L.supp[e]) == 0) closure &= L.supp[e];
      auto it = L.by_supp.find(closure);
      check_arg(it != L.by_supp.end() && (u & ~closure) == 0, "not_a_lattice",
                "flat family is not closed under joins");
      L.jn[a][b] = L.jn[b][a] = it->second;
    }
  return L;
}

}  // namespace

AxiomReport check_geometric_axioms(const Lattice& L) {
  AxiomReport rep;
  auto fail = [&](const std::string& kind, const std::string& detail) {
    rep.ok = false;
    rep.violation = kind;
    rep.detail = detail;
    return rep;
  };
  int n = L.size();
  // Unique minimal upper bounds (lattice property).  The join table was
  // computed by closure; verify it actually gives least upper bounds.
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      Elem j = L.join(a, b);
      if (!L.leq(a, j) || !L.leq(b, j))
        return fail("not_a_lattice", "join is not an upper bound");
      for (Elem c = 0; c < n; ++c)
        if (L.leq(a, c) && L.leq(b, c) && !L.leq(j, c))
          return fail("not_a_lattice", "join is not the least upper bound");
    }
  // Atomicity: every element is the join of the atoms below it.
  for (Elem e = 0; e < n; ++e) {
    for (int i : mask_bits(L.supp[e]))
      if (L.by_supp.find(bit(i)) == L.by_supp.end())
        return fail("atomicity", "atom " + L.atom_names[i] +
                                     " does not appear as a rank-1 flat");
    if (L.join_of_mask(L.supp[e]) != e)
      return fail("atomicity", "element " + std::to_string(e) +
                                   " is not the join of its atoms");
  }
  // Jordan–Hölder: rank jumps by exactly 1 along covers.
  for (Elem lo = 0; lo < n; ++lo)
    for (Elem hi = 0; hi < n; ++hi)
      if (L.covers(lo, hi) && L.rk[hi] != L.rk[lo] + 1)
        return fail("jordan_holder",
                    "cover " + std::to_string(lo) + " < " +
                        std::to_string(hi) + " jumps rank by more than 1");
  // Sub-modularity.
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (L.rk[L.join(a, b)] + L.rk[L.meet(a, b)] > L.rk[a] + L.rk[b])
        return fail("submodularity", "pair " + std::to_string(a) + ", " +
                                         std::to_string(b));
  return rep;
}

Lattice build_from_flats(int natoms, const std::vector<Mask>& flats,
                         std::vector<std::string> atom_names) {
  Lattice L = assemble(natoms, flats, std::move(atom_names));
  AxiomReport rep = check_geometric_axioms(L);
  if (!rep.ok) throw validation_error(rep.violation, rep.detail);
  return L;
}

Lattice build_boolean(int n, int bound) {
  check_arg(n >= 1 && n <= bound, "size_bound",
            "boolean lattice size out of range");
  std::vector<Mask> flats;
  for (Mask m = 0; m < bit(n); ++m) flats.push_back(m);
  return build_from_flats(n, flats);
}

Lattice build_partition(int n) {
  check_arg(n >= 2 && n <= 6, "size_bound",
            "partition lattice size out of range");
  // Atoms are the pair merges {i,j}, i<j, in lexicographic pair order.
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      pairs.emplace_back(i, j);
      names.push_back(std::to_string(i + 1) + std::to_string(j + 1));
    }
  // Enumerate set partitions via restricted growth strings.
  std::vector<Mask> flats;
  std::vector<int> rgs(n, 0);
  std::function<void(int, int)> rec = [&](int pos, int maxb) {
    if (pos == n) {
      Mask m = 0;
      for (std::size_t p = 0; p < pairs.size(); ++p)
        if (rgs[pairs[p].first] == rgs[pairs[p].second]) m |= bit((int)p);
      flats.push_back(m);
      return;
    }
    for (int b = 0; b <= maxb + 1; ++b) {
      rgs[pos] = b;
      rec(pos + 1, std::max(maxb, b));
    }
  };
  rec(1, 0);
  return build_from_flats(static_cast<int>(pairs.size()), flats, names);
}

Lattice build_graphic(const GraphInput& g) {
  int nv = static_cast<int>(g.vertices.size());
  int ne = static_cast<int>(g.edges.size());
  check_arg(ne <= kMaxAtoms, "size_bound", "too many edges");
  std::set<std::pair<int, int>> seen;
  std::vector<std::string> names;
  for (auto [u, v] : g.edges) {
    check_arg(u >= 0 && u < nv && v >= 0 && v < nv, "argument",
              "edge endpoint out of range");
    check_arg(u != v, "graph_invalid", "self-loop");
    auto key = std::minmax(u, v);
    check_arg(seen.insert(key).second, "graph_invalid", "parallel edge");
    names.push_back(g.vertices[u] + "-" + g.vertices[v]);
  }
  // Closure of an edge set: all edges with both endpoints in one connected
  // component of the subgraph it spans.
  auto closure = [&](Mask m) {
    std::vector<int> comp(nv);
    for (int i = 0; i < nv; ++i) comp[i] = i;
    std::function<int(int)> find = [&](int x) {
      return comp[x] == x ? x : comp[x] = find(comp[x]);
    };
    for (int e = 0; e < ne; ++e)
      if (m & bit(e)) comp[find(g.edges[e].first)] = find(g.edges[e].second);
    Mask out = 0;
    for (int e = 0; e < ne; ++e)
      if (find(g.edges[e].first) == find(g.edges[e].second)) out |= bit(e);
    return out;
  };
  // Flats = closed edge sets, enumerated by growing closures one edge at a
  // time (every flat is reachable this way).
  std::set<Mask> flats{closure(0)};
  std::vector<Mask> queue{closure(0)};
  while (!queue.empty()) {
    Mask f = queue.back();
    queue.pop_back();
    for (int e = 0; e < ne; ++e) {
      if (f & bit(e)) continue;
      Mask g2 = closure(f | bit(e));
      if (flats.insert(g2).second) queue.push_back(g2);
    }
  }
  return build_from_flats(ne, std::vector<Mask>(flats.begin(), flats.end()),
                          names);
}

IntervalLattice interval(const Lattice& L, Elem x, Elem y) {
  check_arg(L.leq(x, y), "argument", "interval endpoints are not comparable");
  // Interval atoms = covers of x below y, in id order.
  std::vector<Elem> iatoms;
  for (Elem e = 0; e < L.size(); ++e)
    if (L.leq(x, e) && L.leq(e, y) && L.rk[e] == L.rk[x] + 1)
      iatoms.push_back(e);
  std::vector<Mask> flats;
  std::vector<Elem> members;
  for (Elem e = 0; e < L.size(); ++e) {
    if (!L.leq(x, e) || !L.leq(e, y)) continue;
    Mask m = 0;
    for (std::size_t i = 0; i < iatoms.size(); ++i)
      if (L.leq(iatoms[i], e)) m |= bit(static_cast<int>(i));
    flats.push_back(m);
    members.push_back(e);
  }
  std::vector<std::string> names;
  for (Elem a : iatoms) names.push_back("e" + std::to_string(a));
  IntervalLattice out{build_from_flats(static_cast<int>(iatoms.size()), flats,
                                       names),
                      {}};
  // Recover the embedding: interval element -> its L-element.
  out.embed.resize(out.lat.size());
  for (std::size_t k = 0; k < members.size(); ++k) {
    Mask m = 0;
    for (std::size_t i = 0; i < iatoms.size(); ++i)
      if (L.leq(iatoms[i], members[k])) m |= bit(static_cast<int>(i));
    out.embed[out.lat.by_supp.at(m)] = members[k];
  }
  return out;
}

ProductLattice product(const Lattice& a, const Lattice& b) {
  check_arg(static_cast<std::size_t>(a.size()) * b.size() <= kMaxElements,
            "size_bound", "product lattice exceeds the element bound");
  check_arg(a.natoms + b.natoms <= kMaxAtoms, "size_bound",
            "product lattice has too many atoms");
  std::vector<Mask> flats;
  for (Elem x = 0; x < a.size(); ++x)
    for (Elem y = 0; y < b.size(); ++y)
      flats.push_back(a.supp[x] | (b.supp[y] << a.natoms));
  std::vector<std::string> names = a.atom_names;
  for (const auto& nm : b.atom_names) names.push_back(nm + "'");
  ProductLattice out{build_from_flats(a.natoms + b.natoms, flats, names), {}};
  for (Elem e = 0; e < out.lat.size(); ++e) {
    Mask m = out.lat.supp[e];
    Mask ma = m & (bit(a.natoms) - 1);
    Mask mb = m >> a.natoms;
    out.factors.emplace_back(a.by_supp.at(ma), b.by_supp.at(mb));
  }
  return out;
}

namespace {

// Extend an atom bijection to elements by transporting supports; returns the
// element map when it is a rank-preserving flat bijection (and maps the
// optional member sets onto each other).
std::optional<std::vector<Elem>> lift_atom_map(
    const Lattice& a, const Lattice& b, const std::vector<int>& atom_map,
    const std::vector<Elem>* members_a, const std::vector<Elem>* members_b) {
  std::vector<Elem> out(a.size());
  for (Elem e = 0; e < a.size(); ++e) {
    Mask m = 0;
    for (int i : mask_bits(a.supp[e])) m |= bit(atom_map[i]);
    auto it = b.by_supp.find(m);
    if (it == b.by_supp.end() || b.rk[it->second] != a.rk[e])
      return std::nullopt;
    out[e] = it->second;
  }
  if (members_a != nullptr) {
    std::set<Elem> mb(members_b->begin(), members_b->end());
    std::set<Elem> image;
    for (Elem e : *members_a) image.insert(out[e]);
    if (image != mb) return std::nullopt;
  }
  return out;
}

}  // namespace

std::optional<std::vector<Elem>> find_isomorphism(
    const Lattice& a, const Lattice& b, const std::vector<Elem>* members_a,
    const std::vector<Elem>* members_b) {
  if (a.natoms != b.natoms || a.size() != b.size() || a.rank() != b.rank())
    return std::nullopt;
  std::vector<int> atom_map(a.natoms, -1);
  std::vector<bool> used(b.natoms, false);
  std::optional<std::vector<Elem>> found;
  // Backtracking over atom bijections, pruning on pairwise join ranks.
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == a.natoms) {
      found = lift_atom_map(a, b, atom_map, members_a, members_b);
      return found.has_value();
    }
    for (int j = 0; j < b.natoms; ++j) {
      if (used[j]) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k)
        if (a.rk[a.join(a.atom(k), a.atom(i))] !=
            b.rk[b.join(b.atom(atom_map[k]), b.atom(j))])
          ok = false;
      if (!ok) continue;
      atom_map[i] = j;
      used[j] = true;
      if (rec(i + 1)) return true;
      used[j] = false;
      atom_map[i] = -1;
    }
    return false;
  };
  rec(0);
  return found;
}

std::vector<std::vector<Elem>> find_automorphisms(
    const Lattice& L, const std::vector<Elem>* members) {
  std::vector<std::vector<Elem>> out;
  std::vector<int> atom_map(L.natoms, -1);
  std::vector<bool> used(L.natoms, false);
  std::function<void(int)> rec = [&](int i) {
    if (i == L.natoms) {
      if (auto lifted = lift_atom_map(L, L, atom_map, members, members))
        out.push_back(*lifted);
      return;
    }
    for (int j = 0; j < L.natoms; ++j) {
      if (used[j]) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k)
        if (L.rk[L.join(L.atom(k), L.atom(i))] !=
            L.rk[L.join(L.atom(atom_map[k]), L.atom(j))])
          ok = false;
      if (!ok) continue;
      atom_map[i] = j;
      used[j] = true;
      rec(i + 1);
      used[j] = false;
      atom_map[i] = -1;
    }
  };
  rec(0);
  return out;
}

}  // namespace lbs
