#pragma once

// Subgroups, the full subgroup lattice with conjugacy data, double cosets,
// quotient groups, and materialization of a subgroup as its own FiniteGroup.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <utility>
#include <vector>

#include "ninfty/group.hpp"

namespace ninfty {

struct Subgroup {
  GroupPtr parent;
  std::vector<int> members;  // sorted element indices, always containing 0

  int order() const { return int(members.size()); }
  bool contains(int e) const {
    return std::binary_search(members.begin(), members.end(), e);
  }
  bool operator==(const Subgroup& o) const {
    return parent == o.parent && members == o.members;
  }
};

inline Subgroup trivial_subgroup(GroupPtr g) { return {std::move(g), {0}}; }

inline Subgroup full_subgroup(GroupPtr g) {
  std::vector<int> all(g->order());
  for (int i = 0; i < (int)all.size(); ++i) all[i] = i;
  return {std::move(g), std::move(all)};
}

inline bool is_closed_subgroup(const GroupPtr& g, const std::vector<int>& members) {
  if (members.empty() || members[0] != 0) return false;
  for (int a : members)
    for (int b : members)
      if (!std::binary_search(members.begin(), members.end(), g->mul(a, b)))
        return false;
  return true;
}

inline Subgroup make_subgroup(GroupPtr g, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (!is_closed_subgroup(g, members))
    throw domain_error("member set is not a subgroup");
  return {std::move(g), std::move(members)};
}

// closure of a generating set of element indices
inline std::vector<int> generated_members(const GroupPtr& g,
                                          const std::vector<int>& gens) {
  std::set<int> got{0};
  std::vector<int> queue{0};
  for (size_t head = 0; head < queue.size(); ++head)
    for (int s : gens) {
      int y = g->mul(queue[head], s);
      if (got.insert(y).second) queue.push_back(y);
    }
  return {got.begin(), got.end()};
}

inline Subgroup generated_subgroup(GroupPtr g, const std::vector<int>& gens) {
  auto members = generated_members(g, gens);
  return {std::move(g), std::move(members)};
}

inline Subgroup subgroup_from_perms(GroupPtr g, const std::vector<Perm>& gens) {
  std::vector<int> idx;
  for (auto p : gens) idx.push_back(g->index_of(perm_pad(p, g->degree())));
  return generated_subgroup(std::move(g), idx);
}

inline Subgroup conjugate_subgroup(const Subgroup& h, int g) {
  std::vector<int> members;
  members.reserve(h.members.size());
  for (int m : h.members) members.push_back(h.parent->conj(g, m));
  std::sort(members.begin(), members.end());
  return {h.parent, std::move(members)};
}

inline bool is_normal(const Subgroup& h) {
  const auto& g = *h.parent;
  for (int x = 0; x < g.order(); ++x) {
    for (int m : h.members)
      if (!h.contains(g.conj(x, m))) return false;
  }
  return true;
}

inline std::vector<int> intersect_members(const std::vector<int>& a,
                                          const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

// ---------------------------------------------------------------------------
// Subgroup lattice

struct SubgroupLattice;
using LatticePtr = std::shared_ptr<const SubgroupLattice>;

struct SubgroupLattice {
  GroupPtr group;
  std::vector<Subgroup> subgroups;    // sorted by (order, members)
  std::vector<Bits> leq;              // leq[i].test(j) <=> subgroups[i] <= subgroups[j]
  std::vector<Bits> geq;              // geq[i].test(j) <=> subgroups[j] <= subgroups[i]
  std::vector<int> class_of;          // subgroup -> conjugacy class
  std::vector<std::vector<int>> classes;  // class -> sorted subgroup ids
  std::vector<int> conj_witness;      // g with g*rep*g^-1 = this subgroup
  std::vector<std::vector<int>> conj_sub;  // [g][i] -> index of g*S_i*g^-1
  std::vector<std::vector<int>> meet_tbl;  // [i][j] -> index of intersection

  // classes of pairs (H,K), K <= H, under simultaneous conjugation
  std::vector<std::pair<int, int>> pair_reps;   // canonical (h,k) per class
  std::vector<std::vector<int>> pair_class_of;  // [h][k] -> class id (-1 if !<=)

  int count() const { return int(subgroups.size()); }
  int trivial() const { return 0; }
  int full() const { return count() - 1; }
  int class_rep(int c) const { return classes[c].front(); }

  int index_of_members(const std::vector<int>& members) const {
    auto cmp = [](const Subgroup& s, const std::vector<int>& m) {
      if (s.members.size() != m.size()) return s.members.size() < m.size();
      return s.members < m;
    };
    auto it = std::lower_bound(subgroups.begin(), subgroups.end(), members, cmp);
    if (it == subgroups.end() || it->members != members)
      throw domain_error("not a subgroup of the lattice");
    return int(it - subgroups.begin());
  }

  int meet(int i, int j) const { return meet_tbl[i][j]; }
  bool below(int i, int j) const { return leq[i].test(j); }
};

inline LatticePtr compute_subgroup_lattice(const GroupPtr& g) {
  auto lat = std::make_shared<SubgroupLattice>();
  lat->group = g;
  const int n = g->order();

  // seed with cyclic subgroups, then close under pairwise join
  std::set<std::vector<int>> found;
  found.insert({0});
  for (int a = 1; a < n; ++a) found.insert(generated_members(g, {a}));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> snapshot(found.begin(), found.end());
    for (size_t i = 0; i < snapshot.size(); ++i) {
      for (size_t j = i + 1; j < snapshot.size(); ++j) {
        std::vector<int> gens;
        gens.insert(gens.end(), snapshot[i].begin(), snapshot[i].end());
        gens.insert(gens.end(), snapshot[j].begin(), snapshot[j].end());
        auto join = generated_members(g, gens);
        if (found.insert(join).second) grew = true;
      }
    }
  }

  std::vector<std::vector<int>> all(found.begin(), found.end());
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  for (auto& m : all) lat->subgroups.push_back({g, m});
  const int ns = lat->count();

  lat->leq.assign(ns, Bits(ns));
  lat->geq.assign(ns, Bits(ns));
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < ns; ++j)
      if (std::includes(all[j].begin(), all[j].end(), all[i].begin(),
                        all[i].end())) {
        lat->leq[i].set(j);
        lat->geq[j].set(i);
      }

  lat->conj_sub.assign(n, std::vector<int>(ns));
  for (int x = 0; x < n; ++x)
    for (int i = 0; i < ns; ++i) {
      std::vector<int> c;
      c.reserve(all[i].size());
      for (int m : all[i]) c.push_back(g->conj(x, m));
      std::sort(c.begin(), c.end());
      lat->conj_sub[x][i] = lat->index_of_members(c);
    }

  lat->class_of.assign(ns, -1);
  lat->conj_witness.assign(ns, 0);
  for (int i = 0; i < ns; ++i) {
    if (lat->class_of[i] >= 0) continue;
    int c = int(lat->classes.size());
    std::vector<int> members;
    for (int x = 0; x < n; ++x) {
      int j = lat->conj_sub[x][i];
      if (lat->class_of[j] < 0) {
        lat->class_of[j] = c;
        lat->conj_witness[j] = x;
        members.push_back(j);
      }
    }
    std::sort(members.begin(), members.end());
    lat->classes.push_back(std::move(members));
  }

  lat->meet_tbl.assign(ns, std::vector<int>(ns));
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j <= i; ++j) {
      int m = lat->index_of_members(intersect_members(all[i], all[j]));
      lat->meet_tbl[i][j] = lat->meet_tbl[j][i] = m;
    }

  // pair classes under simultaneous conjugation
  lat->pair_class_of.assign(ns, std::vector<int>(ns, -1));
  for (int h = 0; h < ns; ++h)
    for (int k = 0; k < ns; ++k) {
      if (!lat->below(k, h) || lat->pair_class_of[h][k] >= 0) continue;
      int c = int(lat->pair_reps.size());
      std::vector<std::pair<int, int>> orbit;
      for (int x = 0; x < n; ++x)
        orbit.emplace_back(lat->conj_sub[x][h], lat->conj_sub[x][k]);
      // canonical rep: smallest (h,k) in the orbit
      std::sort(orbit.begin(), orbit.end());
      orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
      lat->pair_reps.push_back(orbit.front());
      for (auto& q : orbit) lat->pair_class_of[q.first][q.second] = c;
    }

  return lat;
}

inline LatticePtr subgroup_lattice(const GroupPtr& g) {
  static std::mutex mu;
  static std::map<const FiniteGroup*, LatticePtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(g.get());
  if (it != cache.end()) return it->second;
  auto lat = compute_subgroup_lattice(g);
  cache.emplace(g.get(), lat);
  return lat;
}

// ---------------------------------------------------------------------------
// Double cosets H \ G / K

struct DoubleCoset {
  int rep;               // least element of the coset
  Subgroup intersection; // H ∩ rep*K*rep^-1
};

inline std::vector<DoubleCoset> double_cosets(const Subgroup& h,
                                              const Subgroup& k) {
  if (h.parent != k.parent)
    throw domain_error("double_cosets: subgroups of different groups");
  const auto& g = *h.parent;
  std::vector<char> seen(g.order(), 0);
  std::vector<DoubleCoset> out;
  for (int x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    for (int a : h.members)
      for (int b : k.members) seen[g.mul(g.mul(a, x), b)] = 1;
    std::vector<int> inter;
    for (int m : h.members) {
      int y = g.conj(g.inv(x), m);  // x^-1 m x ∈ K  <=>  m ∈ xKx^-1
      if (k.contains(y)) inter.push_back(m);
    }
    out.push_back({x, Subgroup{h.parent, std::move(inter)}});
  }
  return out;
}

// left cosets gH, represented by least elements, in increasing order
inline std::vector<int> left_coset_reps(const Subgroup& h) {
  const auto& g = *h.parent;
  std::vector<char> seen(g.order(), 0);
  std::vector<int> reps;
  for (int x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    reps.push_back(x);
    for (int m : h.members) seen[g.mul(x, m)] = 1;
  }
  return reps;
}

// right cosets Hg
inline std::vector<int> right_coset_reps(const Subgroup& h) {
  const auto& g = *h.parent;
  std::vector<char> seen(g.order(), 0);
  std::vector<int> reps;
  for (int x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    reps.push_back(x);
    for (int m : h.members) seen[g.mul(m, x)] = 1;
  }
  return reps;
}

// ---------------------------------------------------------------------------
// Quotient group with element-level projection

struct QuotientGroup {
  GroupPtr group;            // G/N as permutations of the cosets
  std::vector<int> proj;     // element of G -> element index of G/N
  std::vector<int> coset_rep;  // coset point -> least element of G in it
};

inline QuotientGroup quotient_group(const GroupPtr& g, const Subgroup& n) {
  if (n.parent != g) throw domain_error("quotient: subgroup of another group");
  if (!is_normal(n)) throw domain_error("quotient: subgroup is not normal");
  auto reps = left_coset_reps(n);
  const int m = int(reps.size());
  std::vector<int> coset_of(g->order());
  for (int c = 0; c < m; ++c)
    for (int x : n.members) coset_of[g->mul(reps[c], x)] = c;
  // left translation permutations on cosets
  std::vector<Perm> gens;
  for (int gi : g->generator_indices()) {
    Perm p(m);
    for (int c = 0; c < m; ++c) p[c] = coset_of[g->mul(gi, reps[c])];
    gens.push_back(p);
  }
  if (gens.empty()) gens.push_back(perm_identity(std::max(1, m)));
  auto q = make_group(std::move(gens), g->name() + "/N", g->char_modulus());
  if (q->order() != m) throw domain_error("quotient construction failed");
  QuotientGroup out;
  out.group = q;
  out.coset_rep = reps;
  out.proj.resize(g->order());
  for (int x = 0; x < g->order(); ++x) {
    Perm p(m);
    for (int c = 0; c < m; ++c) p[c] = coset_of[g->mul(x, reps[c])];
    out.proj[x] = q->index_of(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// A subgroup as its own FiniteGroup. The child keeps the parent's degree, so
// its canonical element order is just the sorted member permutations, and
// groups reached along different subgroup chains coincide as objects.

struct SubgroupGroup {
  GroupPtr group;
  std::vector<int> to_parent;    // child element -> parent element
  std::vector<int> from_parent;  // parent element -> child element or -1
};

namespace detail {

inline GroupPtr canonical_child(const Subgroup& h) {
  if (h.order() == h.parent->order()) return h.parent;
  std::vector<Perm> perms;
  perms.reserve(h.members.size());
  for (int m : h.members) perms.push_back(h.parent->element(m));
  // members are index-sorted and index order is lexicographic, so perms is
  // already the canonical element list; intern with the inherited prime
  return intern_group(perms, h.parent->degree(), perms,
                      h.parent->name() + "|sub", h.parent->char_modulus());
}

}  // namespace detail

inline const SubgroupGroup& subgroup_group(const Subgroup& h) {
  static std::mutex mu;
  static std::map<std::pair<const FiniteGroup*, std::vector<int>>,
                  std::unique_ptr<SubgroupGroup>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(h.parent.get(), h.members);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;

  auto entry = std::make_unique<SubgroupGroup>();
  entry->group = detail::canonical_child(h);
  entry->to_parent.resize(h.order());
  entry->from_parent.assign(h.parent->order(), -1);
  for (int c = 0; c < entry->group->order(); ++c) {
    int p = h.parent->index_of(entry->group->element(c));
    entry->to_parent[c] = p;
    entry->from_parent[p] = c;
  }
  auto& ref = *entry;
  cache.emplace(std::move(key), std::move(entry));
  return ref;
}

// Translate a subgroup of the child group to a subgroup of the parent.
inline Subgroup lift_subgroup(const SubgroupGroup& sg, const Subgroup& child_sub,
                              const GroupPtr& parent) {
  std::vector<int> members;
  members.reserve(child_sub.members.size());
  for (int m : child_sub.members) members.push_back(sg.to_parent[m]);
  std::sort(members.begin(), members.end());
  return {parent, std::move(members)};
}

// coarse structural name: enough to orient a reader, not an isomorphism test
inline std::string iso_hint(const Subgroup& s) {
  const auto& sg = subgroup_group(s);
  int n = s.order();
  if (n == 1) return "1";
  bool cyclic = false;
  for (int e = 0; e < sg.group->order() && !cyclic; ++e)
    if (sg.group->element_order(e) == n) cyclic = true;
  if (cyclic) return "C" + std::to_string(n);
  if (n == 4) return "C2xC2";
  if (sg.group->exponent() == 2) return "elementary-abelian";
  return "order" + std::to_string(n);
}

// Translate a subgroup of the parent (contained in the child) to the child.
inline Subgroup lower_subgroup(const SubgroupGroup& sg, const Subgroup& parent_sub) {
  std::vector<int> members;
  members.reserve(parent_sub.members.size());
  for (int m : parent_sub.members) {
    int c = sg.from_parent[m];
    if (c < 0) throw domain_error("subgroup not contained in child group");
    members.push_back(c);
  }
  std::sort(members.begin(), members.end());
  return {sg.group, std::move(members)};
}

}  // namespace ninfty
