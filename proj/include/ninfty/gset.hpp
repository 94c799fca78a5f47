#pragma once

// Finite G-sets with explicit point-level action tables, and the operations
// performed on them: orbits and stabilizers, restriction, induction,
// coinduction, Cartesian products, graph subgroups, and factorization of
// equivariant surjections.

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "ninfty/subgroups.hpp"

namespace ninfty {

struct GSet {
  GroupPtr group;
  int n = 0;
  std::vector<std::vector<int>> act;  // act[element][point]

  int apply(int e, int p) const { return act[e][p]; }
};

inline GSet empty_gset(GroupPtr g) {
  GSet t;
  t.group = std::move(g);
  t.n = 0;
  t.act.assign(t.group->order(), {});
  return t;
}

inline GSet trivial_gset(GroupPtr g, int n) {
  GSet t;
  t.group = std::move(g);
  t.n = n;
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  t.act.assign(t.group->order(), id);
  return t;
}

// Build from per-element images, validating the homomorphism property.
inline GSet make_gset(GroupPtr g, std::vector<std::vector<int>> act) {
  GSet t;
  t.group = std::move(g);
  t.act = std::move(act);
  if ((int)t.act.size() != t.group->order())
    throw domain_error("gset: need one row per group element");
  t.n = t.act.empty() ? 0 : int(t.act[0].size());
  for (const auto& row : t.act) {
    if ((int)row.size() != t.n || !perm_valid(row))
      throw domain_error("gset: action rows must be permutations");
  }
  for (int a = 0; a < t.group->order(); ++a)
    for (int b = 0; b < t.group->order(); ++b) {
      int ab = t.group->mul(a, b);
      for (int p = 0; p < t.n; ++p)
        if (t.act[ab][p] != t.act[a][t.act[b][p]])
          throw domain_error("gset: action is not a homomorphism");
    }
  return t;
}

// Build from images of the generators only; remaining rows are derived, so
// the homomorphism property holds by construction.
inline GSet gset_from_generator_images(GroupPtr g,
                                       const std::vector<Perm>& images) {
  const auto& gens = g->generator_indices();
  if (images.size() != gens.size())
    throw domain_error("gset: one image per generator required");
  int n = images.empty() ? 0 : int(images[0].size());
  for (auto& p : images)
    if ((int)p.size() != n || !perm_valid(p))
      throw domain_error("gset: generator images must be permutations of the points");
  GSet t;
  t.group = g;
  t.n = n;
  t.act.assign(g->order(), {});
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  t.act[0] = id;
  // BFS over the group, writing rows as products of generator rows
  std::vector<char> done(g->order(), 0);
  done[0] = 1;
  std::vector<int> queue{0};
  for (size_t head = 0; head < queue.size(); ++head) {
    int a = queue[head];
    for (size_t k = 0; k < gens.size(); ++k) {
      int b = g->mul(gens[k], a);  // row(gen*a) = row(gen) ∘ row(a)
      if (done[b]) continue;
      done[b] = 1;
      std::vector<int> row(n);
      for (int p = 0; p < n; ++p) row[p] = images[k][t.act[a][p]];
      t.act[b] = std::move(row);
      queue.push_back(b);
    }
  }
  for (int a = 0; a < g->order(); ++a)
    if (!done[a]) throw domain_error("gset: generators do not generate the group");
  return t;
}

// G/K with points the left cosets, ordered by least coset element.
inline GSet orbit_gset(const Subgroup& k) {
  const auto& g = *k.parent;
  auto reps = left_coset_reps(k);
  const int m = int(reps.size());
  std::vector<int> coset_of(g.order());
  for (int c = 0; c < m; ++c)
    for (int x : k.members) coset_of[g.mul(reps[c], x)] = c;
  GSet t;
  t.group = k.parent;
  t.n = m;
  t.act.assign(g.order(), std::vector<int>(m));
  for (int e = 0; e < g.order(); ++e)
    for (int c = 0; c < m; ++c) t.act[e][c] = coset_of[g.mul(e, reps[c])];
  return t;
}

inline GSet disjoint_union(const GSet& a, const GSet& b) {
  if (a.group != b.group) throw domain_error("disjoint_union: different groups");
  GSet t;
  t.group = a.group;
  t.n = a.n + b.n;
  t.act.assign(a.group->order(), std::vector<int>(t.n));
  for (int e = 0; e < a.group->order(); ++e) {
    for (int p = 0; p < a.n; ++p) t.act[e][p] = a.act[e][p];
    for (int p = 0; p < b.n; ++p) t.act[e][a.n + p] = a.n + b.act[e][p];
  }
  return t;
}

inline GSet product_gset(const GSet& a, const GSet& b) {
  if (a.group != b.group) throw domain_error("product: different groups");
  GSet t;
  t.group = a.group;
  t.n = a.n * b.n;
  t.act.assign(a.group->order(), std::vector<int>(t.n));
  for (int e = 0; e < a.group->order(); ++e)
    for (int p = 0; p < a.n; ++p)
      for (int q = 0; q < b.n; ++q)
        t.act[e][p * b.n + q] = a.act[e][p] * b.n + b.act[e][q];
  return t;
}

// ---------------------------------------------------------------------------
// Orbits and stabilizers

struct Orbit {
  std::vector<int> points;
  Subgroup stabilizer;  // of points.front()
};

inline std::vector<Orbit> orbits_of(const GSet& t) {
  std::vector<char> seen(t.n, 0);
  std::vector<Orbit> out;
  for (int p = 0; p < t.n; ++p) {
    if (seen[p]) continue;
    Orbit orb;
    std::vector<int> stab;
    for (int e = 0; e < t.group->order(); ++e) {
      int q = t.act[e][p];
      if (!seen[q]) {
        seen[q] = 1;
        orb.points.push_back(q);
      }
      if (q == p) stab.push_back(e);
    }
    std::sort(orb.points.begin(), orb.points.end());
    orb.stabilizer = Subgroup{t.group, std::move(stab)};
    out.push_back(std::move(orb));
  }
  return out;
}

// multiset of stabilizer conjugacy classes: sorted (class id, multiplicity)
inline std::vector<std::pair<int, int>> orbit_type_multiset(const GSet& t) {
  auto lat = subgroup_lattice(t.group);
  std::map<int, int> counts;
  for (const auto& orb : orbits_of(t))
    counts[lat->class_of[lat->index_of_members(orb.stabilizer.members)]]++;
  return {counts.begin(), counts.end()};
}

// the same data with class-canonical stabilizer representatives attached;
// two GSets are isomorphic iff these multisets agree
inline std::vector<std::pair<Subgroup, int>> orbit_decompose(const GSet& t) {
  auto lat = subgroup_lattice(t.group);
  std::vector<std::pair<Subgroup, int>> out;
  for (auto [cls, count] : orbit_type_multiset(t))
    out.push_back({lat->subgroups[lat->class_rep(cls)], count});
  return out;
}

inline bool gsets_isomorphic(const GSet& a, const GSet& b) {
  if (a.group != b.group) return false;
  return orbit_type_multiset(a) == orbit_type_multiset(b);
}

// ---------------------------------------------------------------------------
// Restriction, induction, coinduction

inline GSet restrict_gset(const GSet& t, const Subgroup& h) {
  if (h.parent != t.group) throw domain_error("restrict: subgroup of another group");
  const auto& sg = subgroup_group(h);
  GSet r;
  r.group = sg.group;
  r.n = t.n;
  r.act.resize(sg.group->order());
  for (int c = 0; c < sg.group->order(); ++c) r.act[c] = t.act[sg.to_parent[c]];
  return r;
}

// up_to ×_from T for from <= up_to (both subgroups of one parent);
// T is a GSet over subgroup_group(from).
inline GSet induce_gset(const Subgroup& from, const Subgroup& up_to,
                        const GSet& t) {
  if (from.parent != up_to.parent)
    throw domain_error("induce: subgroups of different groups");
  for (int m : from.members)
    if (!up_to.contains(m)) throw domain_error("induce: containment violated");
  const auto& host = subgroup_group(up_to);
  const auto& sub = subgroup_group(from);
  if (t.group != sub.group) throw domain_error("induce: gset over wrong group");
  const auto& hg = *host.group;

  Subgroup from_in_host = lower_subgroup(host, from);
  auto reps = left_coset_reps(from_in_host);  // host-element indices
  const int m = int(reps.size());
  std::vector<int> coset_of(hg.order());
  for (int c = 0; c < m; ++c)
    for (int x : from_in_host.members) coset_of[hg.mul(reps[c], x)] = c;

  GSet r;
  r.group = host.group;
  r.n = m * t.n;
  r.act.assign(hg.order(), std::vector<int>(r.n));
  for (int e = 0; e < hg.order(); ++e) {
    for (int c = 0; c < m; ++c) {
      int y = hg.mul(e, reps[c]);
      int c2 = coset_of[y];
      // cocycle: e * rep_c = rep_{c2} * k  with k in the inducing subgroup
      int k_host = hg.mul(hg.inv(reps[c2]), y);
      int k_sub = sub.from_parent[host.to_parent[k_host]];
      for (int p = 0; p < t.n; ++p)
        r.act[e][c * t.n + p] = c2 * t.n + t.act[k_sub][p];
    }
  }
  return r;
}

// Map_from(up_to, X): `from`-equivariant maps up_to -> X, a left up_to-set by
// right translation; X is a GSet over subgroup_group(from).
inline GSet coinduce_gset(const Subgroup& from, const Subgroup& up_to,
                          const GSet& x) {
  if (from.parent != up_to.parent)
    throw domain_error("coinduce: subgroups of different groups");
  for (int m : from.members)
    if (!up_to.contains(m)) throw domain_error("coinduce: containment violated");
  const auto& host = subgroup_group(up_to);
  const auto& sub = subgroup_group(from);
  if (x.group != sub.group) throw domain_error("coinduce: gset over wrong group");
  const auto& hg = *host.group;

  Subgroup from_in_host = lower_subgroup(host, from);
  auto reps = right_coset_reps(from_in_host);  // cosets K\H
  const int m = int(reps.size());
  std::vector<int> coset_of(hg.order());
  std::vector<int> k_part(hg.order());
  for (int c = 0; c < m; ++c)
    for (int k : from_in_host.members) {
      int y = hg.mul(k, reps[c]);
      coset_of[y] = c;
      k_part[y] = k;
    }

  int64_t total = 1;
  for (int c = 0; c < m; ++c) {
    total *= x.n;
    if (total > 2'000'000) throw resource_error("coinduce: point set too large");
  }
  const int npts = int(total);

  // point index = mixed-radix tuple (f(rep_0), ..., f(rep_{m-1})) base x.n
  auto decode = [&](int idx, std::vector<int>& f) {
    for (int c = m - 1; c >= 0; --c) {
      f[c] = idx % x.n;
      idx /= x.n;
    }
  };
  auto encode = [&](const std::vector<int>& f) {
    int idx = 0;
    for (int c = 0; c < m; ++c) idx = idx * x.n + f[c];
    return idx;
  };

  GSet r;
  r.group = host.group;
  r.n = x.n == 0 ? (m == 0 ? 1 : 0) : npts;
  r.act.assign(hg.order(), std::vector<int>(r.n));
  std::vector<int> f(m), nf(m);
  for (int e = 0; e < hg.order(); ++e) {
    // (e·f)(rep_c) = f(rep_c * e) = k·f(rep_{c'}) where rep_c*e = k*rep_{c'}
    std::vector<int> tgt(m), kk(m);
    for (int c = 0; c < m; ++c) {
      int y = hg.mul(reps[c], e);
      tgt[c] = coset_of[y];
      kk[c] = sub.from_parent[host.to_parent[k_part[y]]];
    }
    for (int idx = 0; idx < r.n; ++idx) {
      decode(idx, f);
      for (int c = 0; c < m; ++c) nf[c] = x.act[kk[c]][f[tgt[c]]];
      r.act[e][idx] = encode(nf);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Graph subgroups of G × Σ_n

struct GraphSubgroup {
  Subgroup h;              // subgroup of the ambient group
  std::vector<Perm> hom;   // hom[i] = image of h.members[i] in Σ_n
  int n = 0;
};

// T is a GSet over subgroup_group(h); the graph is Γ_T <= G × Σ_n.
inline GraphSubgroup graph_subgroup(const Subgroup& h, const GSet& t) {
  const auto& sg = subgroup_group(h);
  if (t.group != sg.group) throw domain_error("graph_subgroup: gset over wrong group");
  GraphSubgroup out;
  out.h = h;
  out.n = t.n;
  out.hom.resize(h.order());
  for (int i = 0; i < h.order(); ++i)
    out.hom[i] = t.act[sg.from_parent[h.members[i]]];
  return out;
}

inline GSet from_graph(const GraphSubgroup& gamma) {
  const auto& sg = subgroup_group(gamma.h);
  // verify hom is a homomorphism
  std::vector<std::vector<int>> rows(sg.group->order());
  for (int i = 0; i < gamma.h.order(); ++i)
    rows[sg.from_parent[gamma.h.members[i]]] = gamma.hom[i];
  GSet t;
  t.group = sg.group;
  t.n = gamma.n;
  t.act = std::move(rows);
  for (const auto& row : t.act)
    if ((int)row.size() != t.n || !perm_valid(row))
      throw domain_error("from_graph: images must be permutations");
  for (int a = 0; a < t.group->order(); ++a)
    for (int b = 0; b < t.group->order(); ++b) {
      int ab = t.group->mul(a, b);
      for (int p = 0; p < t.n; ++p)
        if (t.act[ab][p] != t.act[a][t.act[b][p]])
          throw domain_error("from_graph: not a homomorphism");
    }
  return t;
}

// Extract a graph presentation from an explicit subgroup of G × Σ_n given by
// (group element, permutation) pairs; errors if it meets 1 × Σ_n nontrivially.
inline GraphSubgroup graph_from_product_subgroup(
    const GroupPtr& g, int n, const std::vector<std::pair<int, Perm>>& elements) {
  std::map<int, Perm> images;
  for (const auto& [e, s] : elements) {
    if ((int)s.size() != n || !perm_valid(s))
      throw domain_error("graph: bad sigma component");
    if (e == 0 && s != perm_identity(n))
      throw domain_error("graph: subgroup meets the symmetric factor nontrivially");
    auto it = images.find(e);
    if (it != images.end() && it->second != s)
      throw domain_error("graph: subgroup meets the symmetric factor nontrivially");
    images.emplace(e, s);
  }
  std::vector<int> members;
  for (auto& [e, s] : images) members.push_back(e);
  Subgroup h = make_subgroup(g, members);
  if (h.order() != (int)images.size())
    throw domain_error("graph: projection to the group is not onto a subgroup");
  GraphSubgroup out;
  out.h = h;
  out.n = n;
  for (int m : h.members) out.hom.push_back(images.at(m));
  return out;
}

// ---------------------------------------------------------------------------
// Maps of G-sets and the factorization of a surjection into folds and orbit
// projections.

struct GSetMap {
  GSet from, to;
  std::vector<int> map;  // point of from -> point of to
};

inline void check_equivariant(const GSetMap& f) {
  if (f.from.group != f.to.group)
    throw domain_error("gset map: different groups");
  if ((int)f.map.size() != f.from.n) throw domain_error("gset map: wrong size");
  for (int e = 0; e < f.from.group->order(); ++e)
    for (int p = 0; p < f.from.n; ++p)
      if (f.map[f.from.act[e][p]] != f.to.act[e][f.map[p]])
        throw domain_error("gset map: not equivariant");
}

struct OrbitProjectionStep {
  int source_orbit;       // index into orbits_of(from)
  Subgroup stab_source;   // stabilizer of chosen source point
  Subgroup stab_target;   // stabilizer of its image; contains stab_source
  // witnesses conjugating the class-canonical representatives onto the two
  // stabilizers, so the step normalizes to a projection G/H -> G/K with
  // H <= K after conjugation
  int source_witness = 0;
  int target_witness = 0;
};

struct TargetOrbitFactor {
  int target_orbit;
  int fold_width;  // number of source orbits mapping onto this orbit
  std::vector<OrbitProjectionStep> projections;
};

struct FactorizationData {
  std::vector<int> missed_target_orbits;  // complement of the image
  std::vector<TargetOrbitFactor> factors;

  // identity-like maps factor through nothing but width-1 trivial projections
  bool trivial() const {
    if (!missed_target_orbits.empty()) return false;
    for (const auto& f : factors) {
      if (f.fold_width != 1) return false;
      for (const auto& p : f.projections)
        if (p.stab_source.members != p.stab_target.members) return false;
    }
    return true;
  }
};

inline FactorizationData factor_surjection(const GSetMap& f) {
  check_equivariant(f);
  auto src_orbits = orbits_of(f.from);
  auto tgt_orbits = orbits_of(f.to);
  std::vector<int> tgt_orbit_of(f.to.n, -1);
  for (size_t i = 0; i < tgt_orbits.size(); ++i)
    for (int p : tgt_orbits[i].points) tgt_orbit_of[p] = int(i);

  FactorizationData out;
  std::vector<std::vector<int>> sources(tgt_orbits.size());
  for (size_t s = 0; s < src_orbits.size(); ++s)
    sources[tgt_orbit_of[f.map[src_orbits[s].points.front()]]].push_back(int(s));

  for (size_t t = 0; t < tgt_orbits.size(); ++t) {
    if (sources[t].empty()) {
      out.missed_target_orbits.push_back(int(t));
      continue;
    }
    TargetOrbitFactor fac;
    fac.target_orbit = int(t);
    fac.fold_width = int(sources[t].size());
    for (int s : sources[t]) {
      OrbitProjectionStep step;
      step.source_orbit = s;
      int p = src_orbits[s].points.front();
      step.stab_source = src_orbits[s].stabilizer;
      // stabilizer of the image point (contains the source stabilizer)
      std::vector<int> stab;
      int q = f.map[p];
      for (int e = 0; e < f.to.group->order(); ++e)
        if (f.to.act[e][q] == q) stab.push_back(e);
      step.stab_target = Subgroup{f.to.group, std::move(stab)};
      for (int m : step.stab_source.members)
        if (!step.stab_target.contains(m))
          throw domain_error("factor_surjection: stabilizer containment failed");
      auto lat = subgroup_lattice(f.from.group);
      step.source_witness =
          lat->conj_witness[lat->index_of_members(step.stab_source.members)];
      step.target_witness =
          lat->conj_witness[lat->index_of_members(step.stab_target.members)];
      fac.projections.push_back(std::move(step));
    }
    out.factors.push_back(std::move(fac));
  }
  return out;
}

// ---------------------------------------------------------------------------
// GSet literal grammar: orbits:[H1*2, H3] with subgroup labels H<i> from the
// canonical lattice order; also accepts e and G.

inline int parse_subgroup_label(const LatticePtr& lat, const std::string& label) {
  if (label == "e" || label == "triv") return lat->trivial();
  if (label == "G" || label == "full") return lat->full();
  if (label.size() >= 2 && label[0] == 'H') {
    int idx = std::atoi(label.c_str() + 1);
    if (idx >= 0 && idx < lat->count()) return idx;
  }
  if (label.rfind("gen:", 0) == 0) {
    auto sub = subgroup_from_perms(lat->group, {parse_cycles(label.substr(4))});
    return lat->index_of_members(sub.members);
  }
  // structural names like C2 or C2xC2 resolve when unique up to conjugacy
  std::vector<int> hits;
  for (int i = 0; i < lat->count(); ++i)
    if (iso_hint(lat->subgroups[i]) == label) hits.push_back(i);
  if (!hits.empty()) {
    int cls = lat->class_of[hits[0]];
    for (int i : hits)
      if (lat->class_of[i] != cls)
        throw usage_error("subgroup name " + label +
                          " is ambiguous here; use an H<i> label");
    return lat->class_rep(cls);
  }
  throw usage_error("unknown subgroup label: " + label);
}

inline GSet parse_gset(const GroupPtr& g, const std::string& text) {
  auto lat = subgroup_lattice(g);
  std::string s = text;
  if (s.rfind("orbits:", 0) == 0) s = s.substr(7);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']')
    s = s.substr(1, s.size() - 2);
  GSet out = empty_gset(g);
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] != ',') continue;
    std::string tok = s.substr(start, i - start);
    start = i + 1;
    // trim
    while (!tok.empty() && std::isspace((unsigned char)tok.front())) tok.erase(tok.begin());
    while (!tok.empty() && std::isspace((unsigned char)tok.back())) tok.pop_back();
    if (tok.empty()) continue;
    int mult = 1;
    size_t star = tok.find('*');
    if (star != std::string::npos) {
      mult = std::atoi(tok.c_str() + star + 1);
      if (mult < 1) throw usage_error("bad multiplicity in gset literal");
      tok = tok.substr(0, star);
    }
    GSet orb = orbit_gset(lat->subgroups[parse_subgroup_label(lat, tok)]);
    for (int c = 0; c < mult; ++c) out = disjoint_union(out, orb);
  }
  return out;
}

}  // namespace ninfty
