#pragma once

// Operad models as symbolic descriptors and the functor sending each model to
// its indexing system. Little disks / Steiner admissibility is the strict
// fixed-dimension drop criterion (an orbit embeds iff its stabilizer's fixed
// subspace properly exceeds every proper overgroup's); linear isometries
// admissibility is constituent containment of the induced universe. Steiner
// and disks share one code path.

#include <optional>
#include <string>
#include <vector>

#include "ninfty/indexing.hpp"
#include "ninfty/universe.hpp"

namespace ninfty {

enum class OperadKind { Trivial, Complete, Disks, Steiner, Isometries, Explicit };

inline const char* operad_kind_name(OperadKind k) {
  switch (k) {
    case OperadKind::Trivial: return "trivial";
    case OperadKind::Complete: return "complete";
    case OperadKind::Disks: return "disks";
    case OperadKind::Steiner: return "steiner";
    case OperadKind::Isometries: return "isometries";
    case OperadKind::Explicit: return "explicit";
  }
  return "?";
}

struct OperadModel {
  GroupPtr group;
  OperadKind kind;
  std::optional<Universe> universe;      // Disks / Steiner / Isometries
  std::optional<IndexingSystem> system;  // Explicit
};

inline OperadModel trivial_operad(GroupPtr g) {
  return {std::move(g), OperadKind::Trivial, {}, {}};
}
inline OperadModel complete_operad(GroupPtr g) {
  return {std::move(g), OperadKind::Complete, {}, {}};
}
inline OperadModel disks_operad(Universe u) {
  auto g = u.group;
  return {std::move(g), OperadKind::Disks, std::move(u), {}};
}
inline OperadModel steiner_operad(Universe u) {
  auto g = u.group;
  return {std::move(g), OperadKind::Steiner, std::move(u), {}};
}
inline OperadModel isometries_operad(Universe u) {
  auto g = u.group;
  return {std::move(g), OperadKind::Isometries, std::move(u), {}};
}
inline OperadModel explicit_operad(IndexingSystem s) {
  auto g = s.lattice()->group;
  return {std::move(g), OperadKind::Explicit, {}, std::move(s)};
}

// ---------------------------------------------------------------------------
// Cached representation data per subgroup: restriction supports and fixed
// dimensions, the two ingredients of both admissibility criteria.

struct RestrictionData {
  GroupPtr child;
  std::vector<Bits> irr_supp;  // [parent irr] -> constituent support over child
};

inline const RestrictionData& restriction_data(const GroupPtr& parent,
                                               const Subgroup& h) {
  static std::mutex mu;
  static std::map<std::pair<const FiniteGroup*, std::vector<int>>,
                  std::unique_ptr<RestrictionData>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(parent.get(), h.members);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  auto data = std::make_unique<RestrictionData>();
  auto table = character_table(parent);
  data->child = subgroup_group(h).group;
  for (const auto& chi : table->irr)
    data->irr_supp.push_back(constituents(restrict_cf(chi, h)));
  auto& ref = *data;
  cache.emplace(std::move(key), std::move(data));
  return ref;
}

// fixed dimension of every irreducible at every subgroup, per group
inline const std::vector<std::vector<int64_t>>& fixed_dim_table(const GroupPtr& g) {
  static std::mutex mu;
  static std::map<const FiniteGroup*, std::unique_ptr<std::vector<std::vector<int64_t>>>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(g.get());
  if (it != cache.end()) return *it->second;
  auto table = character_table(g);
  auto lat = subgroup_lattice(g);
  auto data = std::make_unique<std::vector<std::vector<int64_t>>>();
  data->assign(lat->count(), std::vector<int64_t>(table->count()));
  for (int s = 0; s < lat->count(); ++s)
    for (int i = 0; i < table->count(); ++i)
      (*data)[s][i] = fixed_dim(table->irr[i], lat->subgroups[s]);
  auto& ref = *data;
  cache.emplace(g.get(), std::move(data));
  return ref;
}

namespace detail {

// static per-pair-class data for the admissibility criteria
struct PairClassData {
  int h, k;  // canonical pair rep in the parent lattice
  GroupPtr hstar;
  int k_in_h;                      // child lattice index of K inside H
  std::vector<int> over_all;       // proper overgroups of K in H (child idx)
  std::vector<int> over_min;       // minimal ones
  const RestrictionData* rd_h;     // parent -> H supports
  const RestrictionData* rd_k;     // parent -> K supports
  const RestrictionData* rd_hk;    // H -> K supports
  const std::vector<std::vector<int64_t>>* fdim_h;
};

struct OperadGroupData {
  LatticePtr lat;
  std::vector<PairClassData> pair_classes;
};

inline const OperadGroupData& operad_group_data(const GroupPtr& g) {
  static std::mutex mu;
  static std::map<const FiniteGroup*, std::unique_ptr<OperadGroupData>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(g.get());
    if (it != cache.end()) return *it->second;
  }
  auto data = std::make_unique<OperadGroupData>();
  data->lat = subgroup_lattice(g);
  const auto& lat = *data->lat;
  for (auto [h, k] : lat.pair_reps) {
    PairClassData pcd;
    pcd.h = h;
    pcd.k = k;
    const auto& hs = lat.subgroups[h];
    const auto& hsg = subgroup_group(hs);
    pcd.hstar = hsg.group;
    auto child_lat = subgroup_lattice(pcd.hstar);
    pcd.k_in_h =
        child_lat->index_of_members(lower_subgroup(hsg, lat.subgroups[k]).members);
    for (int s = child_lat->leq[pcd.k_in_h].first(); s >= 0;
         s = child_lat->leq[pcd.k_in_h].next(s))
      if (s != pcd.k_in_h) pcd.over_all.push_back(s);
    for (int s : pcd.over_all) {
      bool minimal = true;
      for (int t : pcd.over_all)
        if (t != s && child_lat->below(t, s)) minimal = false;
      if (minimal) pcd.over_min.push_back(s);
    }
    pcd.rd_h = &restriction_data(g, hs);
    pcd.rd_k = &restriction_data(g, lat.subgroups[k]);
    pcd.rd_hk = &restriction_data(pcd.hstar,
                                  lower_subgroup(hsg, lat.subgroups[k]));
    pcd.fdim_h = &fixed_dim_table(pcd.hstar);
    data->pair_classes.push_back(std::move(pcd));
  }
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(g.get(), std::move(data));
  return *it->second;
}

inline Bits restrict_support(const RestrictionData& rd, const Bits& constituents) {
  Bits out(rd.irr_supp.empty() ? 0 : rd.irr_supp[0].size());
  for (int i = constituents.first(); i >= 0; i = constituents.next(i))
    out |= rd.irr_supp[i];
  return out;
}

inline bool disks_admissible(const PairClassData& pcd, const Bits& u,
                             bool prune_minimal = true) {
  Bits s_h = restrict_support(*pcd.rd_h, u);
  auto dim_at = [&](int s) {
    int64_t d = 0;
    for (int j = s_h.first(); j >= 0; j = s_h.next(j)) d += (*pcd.fdim_h)[s][j];
    return d;
  };
  int64_t base = dim_at(pcd.k_in_h);
  for (int s : prune_minimal ? pcd.over_min : pcd.over_all)
    if (dim_at(s) >= base) return false;
  return true;
}

inline bool isometries_admissible(const PairClassData& pcd, const Bits& u) {
  Bits s_h = restrict_support(*pcd.rd_h, u);
  Bits s_k = restrict_support(*pcd.rd_k, u);
  // induced constituents of every j in s_k must land inside s_h:
  // fail iff some H-irr outside s_h restricts to meet s_k
  for (int i = 0; i < (int)pcd.rd_hk->irr_supp.size(); ++i) {
    if (s_h.test(i)) continue;
    if ((pcd.rd_hk->irr_supp[i] & s_k).any()) return false;
  }
  return true;
}

// expand class-level admissibility decisions to an instance-level system
inline IndexingSystem expand_class_decisions(const LatticePtr& lat,
                                             const std::vector<bool>& adm) {
  auto p = empty_pairset(lat);
  for (int h = 0; h < lat->count(); ++h)
    for (int k = lat->geq[h].first(); k >= 0; k = lat->geq[h].next(k))
      if (adm[lat->pair_class_of[h][k]]) p.rows[h].set(k);
  IndexingSystem sys{std::move(p)};
  auto rep = validate(sys.pairs);
  if (!rep.ok)
    throw domain_error("operad admissibles did not form an indexing system");
  return sys;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline IndexingSystem admissibles(const OperadModel& m, bool prune_minimal = true) {
  switch (m.kind) {
    case OperadKind::Trivial: return trivial_system(m.group);
    case OperadKind::Complete: return complete_system(m.group);
    case OperadKind::Explicit: return *m.system;
    default: break;
  }
  const auto& data = detail::operad_group_data(m.group);
  const Bits& u = m.universe->constituents;
  std::vector<bool> adm(data.pair_classes.size());
  for (size_t c = 0; c < data.pair_classes.size(); ++c) {
    const auto& pcd = data.pair_classes[c];
    adm[c] = (m.kind == OperadKind::Isometries)
                 ? detail::isometries_admissible(pcd, u)
                 : detail::disks_admissible(pcd, u, prune_minimal);
  }
  return detail::expand_class_decisions(data.lat, adm);
}

inline OperadModel operad_product(const OperadModel& a, const OperadModel& b) {
  if (a.group != b.group) throw domain_error("operad product: different groups");
  return explicit_operad(meet(admissibles(a), admissibles(b)));
}

// Coinduction F_H(G, O) of an operad over the subgroup H up to the parent:
// a K-orbit of G is admissible iff for every g, the restriction of the
// translated orbit to H ∩ gKg⁻¹ is admissible for O.
inline OperadModel operad_coinduce(const OperadModel& m, const Subgroup& h) {
  const auto& g = h.parent;
  const auto& hsg = subgroup_group(h);
  if (m.group != hsg.group)
    throw domain_error("operad coinduce: model not over the subgroup");
  auto msys = admissibles(m);
  auto child_lat = msys.lattice();
  auto lat = subgroup_lattice(g);
  auto p = empty_pairset(lat);
  int h_idx = lat->index_of_members(h.members);

  for (int k = 0; k < lat->count(); ++k)
    for (int l = lat->geq[k].first(); l >= 0; l = lat->geq[k].next(l)) {
      bool ok = true;
      for (int x = 0; x < g->order() && ok; ++x) {
        int kx = lat->conj_sub[x][k], lx = lat->conj_sub[x][l];
        int j = lat->meet(h_idx, kx);  // H ∩ gKg⁻¹
        int j_child = child_lat->index_of_members(
            lower_subgroup(hsg, lat->subgroups[j]).members);
        // orbits of the restriction of gKg⁻¹/gLg⁻¹ to J
        for (int y : lat->subgroups[kx].members) {
          int stab = lat->meet(j, lat->conj_sub[y][lx]);
          int stab_child = child_lat->index_of_members(
              lower_subgroup(hsg, lat->subgroups[stab]).members);
          if (!msys.pairs.has(j_child, stab_child)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) p.rows[k].set(l);
    }
  IndexingSystem sys{std::move(p)};
  auto rep = validate(sys.pairs);
  if (!rep.ok) throw domain_error("operad coinduce: result failed validation");
  return explicit_operad(std::move(sys));
}

// Cotensor F(E F_X, O) for a family F_X of subgroups (lattice indices):
// an H-orbit H/K is admissible iff for every A in the family, the restriction
// of H/K to H ∩ A is admissible for O.
inline OperadModel operad_cotensor(const OperadModel& m,
                                   const std::vector<int>& family) {
  auto lat = subgroup_lattice(m.group);
  std::vector<char> in_family(lat->count(), 0);
  for (int a : family) {
    if (a < 0 || a >= lat->count()) throw domain_error("cotensor: bad subgroup index");
    in_family[a] = 1;
  }
  // family discipline: closed under subgroups and conjugation
  for (int a = 0; a < lat->count(); ++a) {
    if (!in_family[a]) continue;
    for (int s = lat->geq[a].first(); s >= 0; s = lat->geq[a].next(s))
      if (!in_family[s]) throw domain_error("cotensor: not closed under subgroups");
    for (int x = 0; x < m.group->order(); ++x)
      if (!in_family[lat->conj_sub[x][a]])
        throw domain_error("cotensor: not closed under conjugation");
  }
  auto msys = admissibles(m);
  auto p = empty_pairset(lat);
  for (int h = 0; h < lat->count(); ++h)
    for (int k = lat->geq[h].first(); k >= 0; k = lat->geq[h].next(k)) {
      bool ok = true;
      for (int a = 0; a < lat->count() && ok; ++a) {
        if (!in_family[a]) continue;
        int j = lat->meet(h, a);
        for (int x : lat->subgroups[h].members) {
          int stab = lat->meet(j, lat->conj_sub[x][k]);
          if (!msys.pairs.has(j, stab)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) p.rows[h].set(k);
    }
  IndexingSystem sys{std::move(p)};
  auto rep = validate(sys.pairs);
  if (!rep.ok) throw domain_error("operad cotensor: result failed validation");
  return explicit_operad(std::move(sys));
}

// Fixed points O^N for a normal subgroup: the G/N-system of N-fixed admissibles.
struct FixedPointsResult {
  OperadModel model;  // over the quotient
  QuotientGroup quotient;
};

inline FixedPointsResult operad_fixed_points(const OperadModel& m,
                                             const Subgroup& n) {
  if (n.parent != m.group)
    throw domain_error("fixed points: subgroup of another group");
  auto q = quotient_group(m.group, n);
  auto msys = admissibles(m);
  auto lat = subgroup_lattice(m.group);
  auto qlat = subgroup_lattice(q.group);

  auto preimage_idx = [&](const Subgroup& qsub) {
    std::vector<int> members;
    for (int x = 0; x < m.group->order(); ++x)
      if (qsub.contains(q.proj[x])) members.push_back(x);
    return lat->index_of_members(members);
  };

  auto p = empty_pairset(qlat);
  for (int h = 0; h < qlat->count(); ++h) {
    int ph = preimage_idx(qlat->subgroups[h]);
    for (int k = qlat->geq[h].first(); k >= 0; k = qlat->geq[h].next(k))
      if (msys.pairs.has(ph, preimage_idx(qlat->subgroups[k]))) p.rows[h].set(k);
  }
  IndexingSystem sys{std::move(p)};
  auto rep = validate(sys.pairs);
  if (!rep.ok) throw domain_error("operad fixed points: result failed validation");
  return {explicit_operad(std::move(sys)), std::move(q)};
}

// ---------------------------------------------------------------------------
// Separation searches (disks vs isometries) and the realization census.

// conjugation-closed units of the character table, trivial unit excluded
inline std::vector<Bits> universe_units(const GroupPtr& g) {
  auto table = character_table(g);
  std::vector<Bits> units;
  std::vector<char> seen(table->count(), 0);
  seen[0] = 1;
  for (int i = 1; i < table->count(); ++i) {
    if (seen[i]) continue;
    Bits u(table->count());
    u.set(i);
    seen[i] = 1;
    int j = table->conj_pair[i];
    u.set(j);
    seen[j] = 1;
    units.push_back(std::move(u));
  }
  return units;
}

// every universe over G (conjugation-closed constituent sets containing triv)
inline std::vector<Universe> all_universes(const GroupPtr& g) {
  auto units = universe_units(g);
  if (units.size() > 24) throw resource_error("too many universes to sweep");
  auto table = character_table(g);
  std::vector<Universe> out;
  for (uint32_t mask = 0; mask < (1u << units.size()); ++mask) {
    Bits b(table->count());
    b.set(0);
    for (size_t i = 0; i < units.size(); ++i)
      if (mask & (1u << i)) b |= units[i];
    out.push_back({g, std::move(b)});
  }
  return out;
}

enum class SeparationMode { Pairwise, AllIsometries };

struct Separation {
  Universe universe;
  std::string universe_spec;
  std::pair<int, int> witness;  // pair admissible for disks, not isometries
  IndexingSystem disks_sys;
  IndexingSystem isom_sys;
  int swept = 0;  // universes checked in all-isometries mode
};

inline std::optional<std::pair<Universe, std::string>> separating_candidate(
    const GroupPtr& g) {
  if (g->order() <= 3) return std::nullopt;
  auto lat = subgroup_lattice(g);
  for (int i = 1; i + 1 < lat->count(); ++i) {
    if (!is_normal(lat->subgroups[i])) continue;
    auto v = reduced_regular_induced(g, lat->subgroups[i]);
    auto u = universe_generated_by(g, {trivial_character(g), v});
    return std::make_pair(u, "gen:triv,regbar:H" + std::to_string(i));
  }
  // simple group: try nontrivial irreducibles directly
  auto table = character_table(g);
  for (int i = 1; i < table->count(); ++i) {
    auto u = universe_generated_by(g, {trivial_character(g), table->irr[i]});
    if (u.constituents.count() < table->count())
      return std::make_pair(u, "gen:triv,irr:" + std::to_string(i));
  }
  return std::nullopt;
}

inline std::optional<Separation> find_separating_universe(const GroupPtr& g,
                                                          SeparationMode mode) {
  auto cand = separating_candidate(g);
  if (!cand) return std::nullopt;
  auto [u, spec] = *cand;
  auto lat = subgroup_lattice(g);

  auto disks_sys = admissibles(disks_operad(u));
  auto isom_sys = admissibles(isometries_operad(u));
  if (disks_sys == isom_sys) return std::nullopt;

  std::pair<int, int> witness{-1, -1};
  // prefer the free orbit G/e as the witness when it separates
  if (disks_sys.admissible(lat->full(), lat->trivial()) &&
      !isom_sys.admissible(lat->full(), lat->trivial())) {
    witness = {lat->full(), lat->trivial()};
  } else {
    for (auto [h, k] : lat->pair_reps)
      if (disks_sys.admissible(h, k) != isom_sys.admissible(h, k)) {
        witness = {h, k};
        break;
      }
  }

  Separation out{u, spec, witness, disks_sys, isom_sys, 0};

  if (mode == SeparationMode::AllIsometries) {
    // the construction needs a proper nontrivial normal subgroup
    bool has_normal = false;
    for (int i = 1; i + 1 < lat->count(); ++i)
      if (is_normal(lat->subgroups[i])) has_normal = true;
    if (!has_normal) return std::nullopt;
    for (const auto& w : all_universes(g)) {
      ++out.swept;
      if (admissibles(isometries_operad(w)) == disks_sys) return std::nullopt;
    }
  }
  return out;
}

struct CensusRow {
  bool disks = false;
  bool isometries = false;
  std::optional<Bits> disks_universe;
  std::optional<Bits> isometries_universe;
};

struct Census {
  IndexingLattice lattice;
  std::vector<CensusRow> rows;
  int universes_swept = 0;
};

inline Census realization_census(const GroupPtr& g) {
  Census out;
  out.lattice = enumerate_all(g);
  out.rows.assign(out.lattice.count(), {});
  for (const auto& u : all_universes(g)) {
    ++out.universes_swept;
    int di = out.lattice.index_of(admissibles(disks_operad(u)));
    if (!out.rows[di].disks) {
      out.rows[di].disks = true;
      out.rows[di].disks_universe = u.constituents;
    }
    int li = out.lattice.index_of(admissibles(isometries_operad(u)));
    if (!out.rows[li].isometries) {
      out.rows[li].isometries = true;
      out.rows[li].isometries_universe = u.constituents;
    }
  }
  return out;
}

}  // namespace ninfty
