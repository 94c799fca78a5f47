#pragma once

// Indexing systems in orbit normal form: a system over G is the set of pairs
// (H, K <= H) whose orbit H/K is admissible, closed under the five axioms
//   reflexivity, conjugation, restriction, composition, product.
// Admissibility of an arbitrary finite H-set is equivalent to admissibility
// of all of its orbit pairs, which is what makes the pair encoding complete.
// The closure operator below is the least-fixed-point of the axioms; the full
// poset of systems is enumerated NextClosure-style in lectic order.

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ninfty/gset.hpp"

namespace ninfty {

struct PairSet {
  LatticePtr lat;
  std::vector<Bits> rows;  // rows[h].test(k) means the pair (H,K) is present

  bool has(int h, int k) const { return rows[h].test(k); }
  int pair_count() const {
    int c = 0;
    for (const auto& r : rows) c += r.count();
    return c;
  }
  bool operator==(const PairSet& o) const {
    return lat == o.lat && rows == o.rows;
  }
  bool subset_of(const PairSet& o) const {
    for (size_t h = 0; h < rows.size(); ++h)
      if (!rows[h].subset_of(o.rows[h])) return false;
    return true;
  }
};

inline PairSet empty_pairset(LatticePtr lat) {
  PairSet p;
  p.rows.assign(lat->count(), Bits(lat->count()));
  p.lat = std::move(lat);
  return p;
}

inline PairSet diagonal_pairset(LatticePtr lat) {
  auto p = empty_pairset(std::move(lat));
  for (int h = 0; h < p.lat->count(); ++h) p.rows[h].set(h);
  return p;
}

struct IndexingSystem {
  PairSet pairs;

  const LatticePtr& lattice() const { return pairs.lat; }
  bool admissible(int h, int k) const { return pairs.has(h, k); }
  bool operator==(const IndexingSystem& o) const { return pairs == o.pairs; }
  bool leq(const IndexingSystem& o) const { return pairs.subset_of(o.pairs); }
};

// canonical serialization: one (h,k) per present pair class, sorted
inline std::vector<std::pair<int, int>> canonical_pairs(const PairSet& p) {
  std::vector<std::pair<int, int>> out;
  for (size_t c = 0; c < p.lat->pair_reps.size(); ++c) {
    auto [h, k] = p.lat->pair_reps[c];
    if (p.has(h, k)) out.push_back({h, k});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Validation

enum class Axiom { Reflexivity, Conjugation, Restriction, Composition, Product };

inline const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::Reflexivity: return "reflexivity";
    case Axiom::Conjugation: return "conjugation";
    case Axiom::Restriction: return "restriction";
    case Axiom::Composition: return "composition";
    case Axiom::Product: return "product";
  }
  return "?";
}

struct Violation {
  Axiom axiom;
  std::pair<int, int> premise1{-1, -1};
  std::pair<int, int> premise2{-1, -1};
  int element = -1;                 // conjugator / restricting witness
  std::pair<int, int> missing{-1, -1};
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> witnesses;  // one per violated axiom
  std::vector<int> counts = std::vector<int>(5, 0);

  void record(const Violation& v) {
    ok = false;
    if (counts[int(v.axiom)]++ == 0) witnesses.push_back(v);
  }
};

// early-exit form of the axiom check, for bulk filtering
inline bool satisfies_axioms(const PairSet& p) {
  const auto& lat = *p.lat;
  const auto& g = *lat.group;
  const int n = lat.count();
  for (int h = 0; h < n; ++h)
    if (!p.has(h, h)) return false;
  for (int h = 0; h < n; ++h)
    for (int k = p.rows[h].first(); k >= 0; k = p.rows[h].next(k)) {
      for (int x = 0; x < g.order(); ++x)
        if (!p.has(lat.conj_sub[x][h], lat.conj_sub[x][k])) return false;
      for (int m = lat.geq[h].first(); m >= 0; m = lat.geq[h].next(m))
        for (int x : lat.subgroups[h].members)
          if (!p.has(m, lat.meet(m, lat.conj_sub[x][k]))) return false;
      for (int l = p.rows[k].first(); l >= 0; l = p.rows[k].next(l))
        if (!p.has(h, l)) return false;
      for (int l = p.rows[h].first(); l >= 0; l = p.rows[h].next(l))
        for (int x : lat.subgroups[h].members)
          if (!p.has(h, lat.meet(k, lat.conj_sub[x][l]))) return false;
    }
  return true;
}

inline ValidationReport validate(const PairSet& p) {
  const auto& lat = *p.lat;
  const auto& g = *lat.group;
  const int n = lat.count();
  ValidationReport rep;

  for (int h = 0; h < n; ++h)
    for (int k = p.rows[h].first(); k >= 0; k = p.rows[h].next(k))
      if (!lat.below(k, h))
        throw domain_error("pair set contains a non-inclusion pair");

  for (int h = 0; h < n; ++h)
    if (!p.has(h, h))
      rep.record({Axiom::Reflexivity, {h, h}, {-1, -1}, -1, {h, h}});

  for (int h = 0; h < n; ++h)
    for (int k = p.rows[h].first(); k >= 0; k = p.rows[h].next(k)) {
      // conjugation
      for (int x = 0; x < g.order(); ++x) {
        int h2 = lat.conj_sub[x][h], k2 = lat.conj_sub[x][k];
        if (!p.has(h2, k2)) {
          rep.record({Axiom::Conjugation, {h, k}, {-1, -1}, x, {h2, k2}});
          break;
        }
      }
      // restriction
      for (int m = lat.geq[h].first(); m >= 0; m = lat.geq[h].next(m)) {
        bool bad = false;
        for (int x : lat.subgroups[h].members) {
          int t = lat.meet(m, lat.conj_sub[x][k]);
          if (!p.has(m, t)) {
            rep.record({Axiom::Restriction, {h, k}, {-1, -1}, x, {m, t}});
            bad = true;
            break;
          }
        }
        if (bad) break;
      }
      // composition
      for (int l = p.rows[k].first(); l >= 0; l = p.rows[k].next(l))
        if (!p.has(h, l)) {
          rep.record({Axiom::Composition, {h, k}, {k, l}, -1, {h, l}});
          break;
        }
      // product
      for (int l = p.rows[h].first(); l >= 0; l = p.rows[h].next(l)) {
        bool bad = false;
        for (int x : lat.subgroups[h].members) {
          int t = lat.meet(k, lat.conj_sub[x][l]);
          if (!p.has(h, t)) {
            rep.record({Axiom::Product, {h, k}, {h, l}, x, {h, t}});
            bad = true;
            break;
          }
        }
        if (bad) break;
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Closure operator: least indexing system containing the seed.

inline IndexingSystem closure(const PairSet& seed) {
  const auto& lat = *seed.lat;
  const auto& g = *lat.group;
  const int n = lat.count();
  PairSet p = diagonal_pairset(seed.lat);
  std::vector<std::pair<int, int>> work;

  auto add = [&](int h, int k) {
    if (!lat.below(k, h))
      throw domain_error("closure: seed pair is not an inclusion");
    if (p.rows[h].test(k)) return;
    p.rows[h].set(k);
    work.push_back({h, k});
  };

  for (int h = 0; h < n; ++h) {
    work.push_back({h, h});
    for (int k = seed.rows[h].first(); k >= 0; k = seed.rows[h].next(k))
      add(h, k);
  }

  while (!work.empty()) {
    auto [h, k] = work.back();
    work.pop_back();
    for (int x = 0; x < g.order(); ++x)
      add(lat.conj_sub[x][h], lat.conj_sub[x][k]);
    for (int m = lat.geq[h].first(); m >= 0; m = lat.geq[h].next(m))
      for (int x : lat.subgroups[h].members)
        add(m, lat.meet(m, lat.conj_sub[x][k]));
    for (int l = p.rows[k].first(); l >= 0; l = p.rows[k].next(l)) add(h, l);
    for (int h2 = 0; h2 < n; ++h2)
      if (p.rows[h2].test(h)) add(h2, k);
    for (int l = p.rows[h].first(); l >= 0; l = p.rows[h].next(l))
      for (int x : lat.subgroups[h].members) {
        add(h, lat.meet(k, lat.conj_sub[x][l]));
        add(h, lat.meet(l, lat.conj_sub[x][k]));
      }
  }
  return IndexingSystem{std::move(p)};
}

inline IndexingSystem trivial_system(const GroupPtr& g) {
  return IndexingSystem{diagonal_pairset(subgroup_lattice(g))};
}

inline IndexingSystem complete_system(const GroupPtr& g) {
  auto lat = subgroup_lattice(g);
  auto p = empty_pairset(lat);
  for (int h = 0; h < lat->count(); ++h) p.rows[h] = lat->geq[h];
  return IndexingSystem{std::move(p)};
}

inline IndexingSystem meet(const IndexingSystem& a, const IndexingSystem& b) {
  if (a.pairs.lat != b.pairs.lat) throw domain_error("meet: different lattices");
  PairSet p = a.pairs;
  for (size_t h = 0; h < p.rows.size(); ++h) p.rows[h] &= b.pairs.rows[h];
  return IndexingSystem{std::move(p)};
}

inline IndexingSystem join(const IndexingSystem& a, const IndexingSystem& b) {
  if (a.pairs.lat != b.pairs.lat) throw domain_error("join: different lattices");
  PairSet p = a.pairs;
  for (size_t h = 0; h < p.rows.size(); ++h) p.rows[h] |= b.pairs.rows[h];
  return closure(p);
}

// pairs of the child lattice present iff they are present in the parent
inline IndexingSystem restrict_system(const IndexingSystem& a, const Subgroup& h) {
  const auto& parent_lat = *a.pairs.lat;
  if (h.parent != parent_lat.group)
    throw domain_error("restrict_system: subgroup of another group");
  const auto& sg = subgroup_group(h);
  auto child_lat = subgroup_lattice(sg.group);
  auto p = empty_pairset(child_lat);
  std::vector<int> to_parent_idx(child_lat->count());
  for (int i = 0; i < child_lat->count(); ++i) {
    auto lifted = lift_subgroup(sg, child_lat->subgroups[i], parent_lat.group);
    to_parent_idx[i] = parent_lat.index_of_members(lifted.members);
  }
  for (int hh = 0; hh < child_lat->count(); ++hh)
    for (int kk = child_lat->geq[hh].first(); kk >= 0;
         kk = child_lat->geq[hh].next(kk))
      if (a.pairs.has(to_parent_idx[hh], to_parent_idx[kk])) p.rows[hh].set(kk);
  return IndexingSystem{std::move(p)};
}

// ---------------------------------------------------------------------------
// Full enumeration (lectic / NextClosure over the strict pairs)

struct IndexingLattice {
  GroupPtr group;
  std::vector<IndexingSystem> systems;         // canonical order
  std::vector<std::pair<int, int>> hasse_edges;  // (lower, upper) covers

  int count() const { return int(systems.size()); }
  int index_of(const IndexingSystem& s) const {
    for (int i = 0; i < count(); ++i)
      if (systems[i] == s) return i;
    throw domain_error("system not in enumeration");
  }
};

namespace detail {

struct PairItems {
  std::vector<std::pair<int, int>> items;  // strict pairs (h,k), k < h
  std::vector<std::vector<int>> id;        // [h][k] -> item id or -1

  explicit PairItems(const SubgroupLattice& lat) {
    id.assign(lat.count(), std::vector<int>(lat.count(), -1));
    for (int h = 0; h < lat.count(); ++h)
      for (int k = lat.geq[h].first(); k >= 0; k = lat.geq[h].next(k))
        if (k != h) {
          id[h][k] = int(items.size());
          items.push_back({h, k});
        }
  }
};

}  // namespace detail

inline IndexingLattice enumerate_all(const GroupPtr& g) {
  auto lat = subgroup_lattice(g);
  detail::PairItems items(*lat);
  const int ni = int(items.items.size());

  auto to_items = [&](const IndexingSystem& s) {
    Bits b(ni);
    for (int i = 0; i < ni; ++i)
      if (s.pairs.has(items.items[i].first, items.items[i].second)) b.set(i);
    return b;
  };
  auto close_items = [&](const Bits& b) {
    auto p = empty_pairset(lat);
    for (int i = b.first(); i >= 0; i = b.next(i))
      p.rows[items.items[i].first].set(items.items[i].second);
    return closure(p);
  };

  std::vector<IndexingSystem> found;
  IndexingSystem cur = closure(empty_pairset(lat));
  Bits cur_items = to_items(cur);
  found.push_back(cur);
  while (true) {
    bool advanced = false;
    for (int i = ni - 1; i >= 0; --i) {
      if (cur_items.test(i)) continue;
      Bits seed(ni);
      for (int j = 0; j < i; ++j)
        if (cur_items.test(j)) seed.set(j);
      seed.set(i);
      IndexingSystem next = close_items(seed);
      Bits next_items = to_items(next);
      bool lectic = true;
      for (int j = 0; j < i && lectic; ++j)
        if (next_items.test(j) && !cur_items.test(j)) lectic = false;
      if (!lectic) continue;
      cur = std::move(next);
      cur_items = std::move(next_items);
      found.push_back(cur);
      advanced = true;
      break;
    }
    if (!advanced) break;
  }

  // canonical order: by pair count, then canonical pair list
  std::sort(found.begin(), found.end(),
            [](const IndexingSystem& a, const IndexingSystem& b) {
              int ca = a.pairs.pair_count(), cb = b.pairs.pair_count();
              if (ca != cb) return ca < cb;
              return canonical_pairs(a.pairs) < canonical_pairs(b.pairs);
            });

  IndexingLattice out;
  out.group = g;
  out.systems = std::move(found);
  const int m = out.count();
  std::vector<Bits> below(m, Bits(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && out.systems[i].leq(out.systems[j])) below[i].set(j);
  for (int i = 0; i < m; ++i)
    for (int j = below[i].first(); j >= 0; j = below[i].next(j)) {
      bool covers = true;
      for (int k = below[i].first(); k >= 0 && covers; k = below[i].next(k))
        if (k != j && below[k].test(j)) covers = false;
      if (covers) out.hasse_edges.push_back({i, j});
    }
  return out;
}

// ---------------------------------------------------------------------------
// Family sequences F_n: admissible H-sets of size n, encoded by orbit classes

struct FamilyEntry {
  int h_class;  // subgroup class in the parent lattice
  std::vector<std::pair<int, int>> orbit_classes;  // (child class id, count)
};

// admissible orbit classes of the subgroup H, in its own lattice
inline std::vector<int> admissible_child_classes(const IndexingSystem& a,
                                                 const Subgroup& h) {
  const auto& sg = subgroup_group(h);
  auto child_lat = subgroup_lattice(sg.group);
  const auto& parent_lat = *a.pairs.lat;
  int h_idx = parent_lat.index_of_members(h.members);
  std::vector<int> out;
  for (size_t c = 0; c < child_lat->classes.size(); ++c) {
    auto lifted = lift_subgroup(sg, child_lat->subgroups[child_lat->class_rep(int(c))],
                                parent_lat.group);
    if (a.pairs.has(h_idx, parent_lat.index_of_members(lifted.members)))
      out.push_back(int(c));
  }
  return out;
}

inline std::vector<FamilyEntry> family_sequence(const IndexingSystem& a, int n) {
  if (n < 0) throw domain_error("family_sequence: negative arity");
  const auto& lat = *a.pairs.lat;
  std::vector<FamilyEntry> out;
  for (size_t hc = 0; hc < lat.classes.size(); ++hc) {
    const auto& h = lat.subgroups[lat.class_rep(int(hc))];
    const auto& sg = subgroup_group(h);
    auto child_lat = subgroup_lattice(sg.group);
    auto adm = admissible_child_classes(a, h);
    // multisets of admissible orbits of total size exactly n
    std::vector<std::pair<int, int>> current;
    auto orbit_size = [&](int cls) {
      return h.order() / child_lat->subgroups[child_lat->class_rep(cls)].order();
    };
    std::function<void(size_t, int)> rec = [&](size_t at, int left) {
      if (left == 0) {
        out.push_back({int(hc), current});
        return;
      }
      if (at >= adm.size()) return;
      rec(at + 1, left);
      int sz = orbit_size(adm[at]);
      if (sz <= left) {
        if (!current.empty() && current.back().first == adm[at])
          current.back().second++;
        else
          current.push_back({adm[at], 1});
        rec(at, left - sz);
        if (current.back().second == 1)
          current.pop_back();
        else
          current.back().second--;
      }
    };
    rec(0, n);
  }
  std::sort(out.begin(), out.end(), [](const FamilyEntry& a, const FamilyEntry& b) {
    if (a.h_class != b.h_class) return a.h_class < b.h_class;
    return a.orbit_classes < b.orbit_classes;
  });
  return out;
}

// realize an entry as an explicit H-set over the subgroup's own group
inline GSet realize_family_entry(const IndexingSystem& a, const FamilyEntry& e) {
  const auto& lat = *a.pairs.lat;
  const auto& h = lat.subgroups[lat.class_rep(e.h_class)];
  const auto& sg = subgroup_group(h);
  auto child_lat = subgroup_lattice(sg.group);
  GSet t = empty_gset(sg.group);
  for (auto [cls, count] : e.orbit_classes)
    for (int i = 0; i < count; ++i)
      t = disjoint_union(t, orbit_gset(child_lat->subgroups[child_lat->class_rep(cls)]));
  return t;
}

// ---------------------------------------------------------------------------
// Operadic composition closure at desk scale: indexed disjoint unions of
// admissible sets over admissible sets stay admissible. Verified on explicit
// sets through the induction machinery, not through the pair algebra.

struct CompositionReport {
  bool ok = true;
  long long checked = 0;
  std::string first_failure;  // empty when ok
};

inline CompositionReport check_composition_closure(const IndexingSystem& a,
                                                   int n_max) {
  const auto& lat = *a.pairs.lat;
  CompositionReport rep;

  for (size_t hc = 0; hc < lat.classes.size() && rep.ok; ++hc) {
    int h_idx = lat.class_rep(int(hc));
    const auto& h = lat.subgroups[h_idx];
    const auto& sg = subgroup_group(h);
    auto child_lat = subgroup_lattice(sg.group);
    auto adm = admissible_child_classes(a, h);

    // per admissible orbit class of H: the induced pieces H x_K S for every
    // admissible K-set S small enough to respect the arity budget
    struct Choice {
      int t_size;                 // |H/K|, contribution to |T| per use
      std::vector<GSet> pieces;   // induced H-sets
      std::vector<int> piece_pts; // their sizes
    };
    std::vector<Choice> choices;
    for (int cls : adm) {
      Choice c;
      const auto& k_child = child_lat->subgroups[child_lat->class_rep(cls)];
      c.t_size = h.order() / k_child.order();
      Subgroup k_parent = lift_subgroup(sg, k_child, lat.group);
      const auto& ksg = subgroup_group(k_parent);
      auto k_lat = subgroup_lattice(ksg.group);
      auto k_adm = admissible_child_classes(a, k_parent);
      int budget = n_max / c.t_size;  // |S| at most this
      std::vector<GSet> payloads;
      std::function<void(size_t, const GSet&)> grow = [&](size_t at, const GSet& cur) {
        if (at >= k_adm.size()) {
          if (cur.n > 0) payloads.push_back(cur);
          return;
        }
        auto orb = orbit_gset(k_lat->subgroups[k_lat->class_rep(k_adm[at])]);
        GSet next = cur;
        grow(at + 1, next);
        while (next.n + orb.n <= budget) {
          next = disjoint_union(next, orb);
          grow(at + 1, next);
        }
      };
      grow(0, empty_gset(ksg.group));
      for (auto& s : payloads) {
        c.pieces.push_back(induce_gset(k_parent, h, s));
        c.piece_pts.push_back(c.t_size * s.n);
      }
      choices.push_back(std::move(c));
    }

    // assemble the indexed union orbit-by-orbit; |T| <= n_max, |union| <= n_max
    std::function<void(size_t, size_t, int, int, const GSet&)> rec =
        [&](size_t at, size_t pi0, int t_left, int u_left, const GSet& got) {
          if (!rep.ok) return;
          if (got.n > 0) {
            ++rep.checked;
            for (const auto& orb : orbits_of(got)) {
              auto lifted = lift_subgroup(sg, orb.stabilizer, lat.group);
              if (!a.pairs.has(h_idx, lat.index_of_members(lifted.members))) {
                rep.ok = false;
                rep.first_failure = "indexed union over subgroup class " +
                                    std::to_string(hc) + " left the system";
                return;
              }
            }
          }
          if (at >= choices.size()) return;
          rec(at + 1, 0, t_left, u_left, got);
          const auto& c = choices[at];
          for (size_t pi = pi0; pi < c.pieces.size() && rep.ok; ++pi) {
            if (c.t_size > t_left || c.piece_pts[pi] > u_left) continue;
            rec(at, pi, t_left - c.t_size, u_left - c.piece_pts[pi],
                disjoint_union(got, c.pieces[pi]));
          }
        };
    rec(0, 0, n_max, n_max, empty_gset(sg.group));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Pair spec parsing: "H2/H1,H3/e" etc.

inline PairSet parse_pairs(const GroupPtr& g, const std::string& text) {
  auto lat = subgroup_lattice(g);
  auto p = empty_pairset(lat);
  size_t start = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] != ',') continue;
    std::string tok = text.substr(start, i - start);
    start = i + 1;
    while (!tok.empty() && std::isspace((unsigned char)tok.front())) tok.erase(tok.begin());
    while (!tok.empty() && std::isspace((unsigned char)tok.back())) tok.pop_back();
    if (tok.empty()) continue;
    size_t slash = tok.find('/');
    if (slash == std::string::npos)
      throw usage_error("pair must look like H/K: " + tok);
    int h = parse_subgroup_label(lat, tok.substr(0, slash));
    int k = parse_subgroup_label(lat, tok.substr(slash + 1));
    if (!lat->below(k, h))
      throw usage_error("pair " + tok + " is not an inclusion");
    p.rows[h].set(k);
  }
  return p;
}

}  // namespace ninfty
