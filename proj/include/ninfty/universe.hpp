#pragma once

// Universes: countably infinite real inner-product G-spaces encoded by their
// set of irreducible constituents (infinite multiplicity makes the set the
// whole datum). Constituent sets always contain the trivial character and are
// closed under complex conjugation, so they are complexifications of real
// universes.

#include <string>
#include <vector>

#include "ninfty/character.hpp"
#include "ninfty/gset.hpp"

namespace ninfty {

struct Universe {
  GroupPtr group;
  Bits constituents;  // irreducible indices in the group's character table

  bool operator==(const Universe& o) const {
    return group == o.group && constituents == o.constituents;
  }
};

// normalize: add the trivial constituent and close under conjugation
inline Universe close_universe(GroupPtr g, Bits set) {
  auto table = character_table(g);
  set.set(table->trivial_index());
  for (int i = set.first(); i >= 0; i = set.next(i)) set.set(table->conj_pair[i]);
  return {std::move(g), std::move(set)};
}

inline Universe trivial_universe(GroupPtr g) {
  auto table = character_table(g);
  Bits b(table->count());
  return close_universe(std::move(g), std::move(b));
}

inline Universe complete_universe(GroupPtr g) {
  auto table = character_table(g);
  Bits b(table->count());
  b.set_all();
  return {std::move(g), std::move(b)};
}

inline Universe universe_generated_by(GroupPtr g,
                                      const std::vector<ClassFunction>& gens) {
  auto table = character_table(g);
  Bits b(table->count());
  for (const auto& chi : gens) {
    if (chi.group != g) throw domain_error("universe generator over wrong group");
    if (chi.kind == CfKind::Virtual)
      throw domain_error("universe generator must be a genuine character");
    b |= constituents(chi);
  }
  return close_universe(std::move(g), std::move(b));
}

// all irreducibles with N inside the kernel; N must be normal
inline Universe fixed_universe(GroupPtr g, const Subgroup& n) {
  if (n.parent != g) throw domain_error("fixed universe: subgroup of another group");
  if (!is_normal(n)) throw domain_error("fixed universe: subgroup is not normal");
  auto table = character_table(g);
  Bits b(table->count());
  for (int i = 0; i < table->count(); ++i)
    if (fixed_dim(table->irr[i], n) == table->degrees[i]) b.set(i);
  return close_universe(std::move(g), std::move(b));
}

// the sum of the distinct constituents, as a character
inline ClassFunction universe_character(const Universe& u) {
  auto table = character_table(u.group);
  ClassFunction cf{u.group,
                   std::vector<int64_t>(u.group->num_classes(), 0),
                   CfKind::Generic};
  for (int i = u.constituents.first(); i >= 0; i = u.constituents.next(i))
    cf = cf_add(cf, table->irr[i]);
  return cf;
}

inline Universe restrict_universe(const Universe& u, const Subgroup& h) {
  if (h.parent != u.group)
    throw domain_error("restrict universe: subgroup of another group");
  auto table = character_table(u.group);
  const auto& sg = subgroup_group(h);
  auto child_table = character_table(sg.group);
  Bits b(child_table->count());
  for (int i = u.constituents.first(); i >= 0; i = u.constituents.next(i))
    b |= constituents(restrict_cf(table->irr[i], h));
  return {sg.group, std::move(b)};
}

// ---------------------------------------------------------------------------
// Universe spec grammar:
//   complete | trivial | fixed:<subgroup-label> | gen:<rep>,<rep>,...
// with <rep> one of triv, reg, perm:<label>, regbar:<label>, irr:<index>.

inline ClassFunction reduced_regular_induced(const GroupPtr& g,
                                             const Subgroup& h) {
  // Ind_H^G of (regular representation of H minus its trivial summand)
  const auto& hg = subgroup_group(h);
  auto reg = regular_character(hg.group);
  int64_t p = g->char_modulus();
  ClassFunction rbar{hg.group, reg.vals, CfKind::Generic};
  for (auto& v : rbar.vals) v = submod(v, 1, p);
  auto ind = induce_cf(h, full_subgroup(g), rbar);
  ind.kind = CfKind::Generic;
  return ind;
}

inline Universe parse_universe(const GroupPtr& g, const std::string& spec) {
  if (spec == "complete") return complete_universe(g);
  if (spec == "trivial") return trivial_universe(g);
  auto lat = subgroup_lattice(g);
  if (spec.rfind("fixed:", 0) == 0) {
    int idx = parse_subgroup_label(lat, spec.substr(6));
    return fixed_universe(g, lat->subgroups[idx]);
  }
  if (spec.rfind("gen:", 0) == 0) {
    std::vector<ClassFunction> gens;
    std::string body = spec.substr(4);
    size_t start = 0;
    for (size_t i = 0; i <= body.size(); ++i) {
      if (i < body.size() && body[i] != ',') continue;
      std::string tok = body.substr(start, i - start);
      start = i + 1;
      if (tok.empty()) continue;
      if (tok == "triv") {
        gens.push_back(trivial_character(g));
      } else if (tok == "reg") {
        gens.push_back(regular_character(g));
      } else if (tok.rfind("perm:", 0) == 0) {
        int idx = parse_subgroup_label(lat, tok.substr(5));
        gens.push_back(permutation_character(orbit_gset(lat->subgroups[idx])));
      } else if (tok.rfind("regbar:", 0) == 0) {
        int idx = parse_subgroup_label(lat, tok.substr(7));
        gens.push_back(reduced_regular_induced(g, lat->subgroups[idx]));
      } else if (tok.rfind("irr:", 0) == 0) {
        auto table = character_table(g);
        int idx = std::atoi(tok.c_str() + 4);
        if (idx < 0 || idx >= table->count())
          throw usage_error("irr index out of range: " + tok);
        gens.push_back(table->irr[idx]);
      } else {
        throw usage_error("unknown universe generator: " + tok);
      }
    }
    return universe_generated_by(g, gens);
  }
  throw usage_error("unknown universe spec: " + spec);
}

}  // namespace ninfty
