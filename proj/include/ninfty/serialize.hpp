#pragma once

// JSON documents (nlohmann, ordered keys for byte-stable output) and DOT
// rendering for Hasse diagrams.

#include <json.hpp>

#include "ninfty/mackey.hpp"

namespace ninfty {

using Json = nlohmann::ordered_json;

inline std::string subgroup_label(int idx) { return "H" + std::to_string(idx); }

// small deterministic generating set for display
inline std::vector<int> display_generators(const Subgroup& s) {
  std::vector<int> gens;
  std::vector<int> have{0};
  for (int m : s.members) {
    if (std::binary_search(have.begin(), have.end(), m)) continue;
    gens.push_back(m);
    have = generated_members(s.parent, gens);
  }
  if (gens.empty()) gens.push_back(0);
  return gens;
}

inline Json group_json(const GroupPtr& g, const std::string& spec) {
  auto lat = subgroup_lattice(g);
  Json subs = Json::array();
  for (int i = 0; i < lat->count(); ++i) {
    const auto& s = lat->subgroups[i];
    Json gens = Json::array();
    for (int m : display_generators(s)) gens.push_back(format_cycles(g->element(m)));
    subs.push_back(Json{{"label", subgroup_label(i)},
                        {"order", s.order()},
                        {"iso", iso_hint(s)},
                        {"generators", gens},
                        {"class", subgroup_label(lat->class_rep(lat->class_of[i]))},
                        {"normal", is_normal(s)}});
  }
  return Json{{"spec", spec.empty() ? g->name() : spec},
              {"order", g->order()},
              {"degree", g->degree()},
              {"subgroups", subs}};
}

inline Json pairs_json(const PairSet& p) {
  Json out = Json::array();
  for (auto [h, k] : canonical_pairs(p))
    out.push_back(Json::array({subgroup_label(h), subgroup_label(k)}));
  return out;
}

inline Json system_json(const IndexingSystem& s) {
  return Json{{"pairs", pairs_json(s.pairs)},
              {"pair_instances", s.pairs.pair_count()}};
}

inline Json violation_json(const SubgroupLattice& lat, const Violation& v) {
  auto pair = [](const std::pair<int, int>& p) {
    return Json::array({subgroup_label(p.first), subgroup_label(p.second)});
  };
  Json out{{"axiom", axiom_name(v.axiom)}, {"premise", pair(v.premise1)}};
  if (v.premise2.first >= 0) out["premise2"] = pair(v.premise2);
  if (v.element >= 0)
    out["element"] = format_cycles(lat.group->element(v.element));
  out["missing"] = pair(v.missing);
  return out;
}

inline Json validation_json(const SubgroupLattice& lat, const ValidationReport& rep) {
  Json vio = Json::array();
  for (const auto& v : rep.witnesses) vio.push_back(violation_json(lat, v));
  Json counts;
  const Axiom axioms[] = {Axiom::Reflexivity, Axiom::Conjugation,
                          Axiom::Restriction, Axiom::Composition, Axiom::Product};
  for (auto a : axioms) counts[axiom_name(a)] = rep.counts[int(a)];
  return Json{{"valid", rep.ok}, {"violations", vio}, {"violation_counts", counts}};
}

inline Json universe_json(const Universe& u, const std::string& spec = "") {
  auto table = character_table(u.group);
  Json cons = Json::array();
  for (int i = u.constituents.first(); i >= 0; i = u.constituents.next(i))
    cons.push_back(Json{{"irr", i},
                        {"degree", table->degrees[i]},
                        {"conjugate", table->conj_pair[i]}});
  Json out;
  if (!spec.empty()) out["spec"] = spec;
  out["constituents"] = cons;
  return out;
}

inline Json lattice_json(const IndexingLattice& all) {
  Json systems = Json::array();
  for (const auto& s : all.systems) systems.push_back(system_json(s));
  Json edges = Json::array();
  for (auto [lo, hi] : all.hasse_edges) edges.push_back(Json::array({lo, hi}));
  return Json{{"count", all.count()}, {"systems", systems}, {"hasse", edges}};
}

inline Json mackey_report_json(const MackeyReport& rep) {
  Json fails = Json::array();
  for (const auto& f : rep.failures) fails.push_back(f);
  return Json{{"axiom", rep.check},
              {"status", rep.ok ? "pass" : "fail"},
              {"verified", rep.verified},
              {"witnesses", fails}};
}

// ---------------------------------------------------------------------------
// DOT output

inline std::string hasse_dot(const IndexingLattice& all,
                             const std::vector<CensusRow>* census = nullptr) {
  std::string out = "digraph indexing_systems {\n  rankdir=BT;\n";
  for (int i = 0; i < all.count(); ++i) {
    out += "  n" + std::to_string(i) + " [label=\"" +
           std::to_string(all.systems[i].pairs.pair_count()) + "\"";
    if (census) {
      const auto& row = (*census)[i];
      const char* color = row.disks && row.isometries ? "palegreen"
                          : row.disks                 ? "orange"
                          : row.isometries            ? "lightblue"
                                                      : "lightgray";
      out += std::string(", style=filled, fillcolor=") + color;
    }
    out += "];\n";
  }
  for (auto [lo, hi] : all.hasse_edges)
    out += "  n" + std::to_string(lo) + " -> n" + std::to_string(hi) + ";\n";
  out += "}\n";
  return out;
}

// ---------------------------------------------------------------------------
// GSet action tables

inline Json gset_json(const GSet& t) {
  Json rows = Json::array();
  for (const auto& row : t.act) rows.push_back(row);
  return Json{{"points", t.n}, {"order", t.group->order()}, {"action", rows}};
}

inline GSet gset_from_json(const GroupPtr& g, const Json& doc) {
  std::vector<std::vector<int>> act;
  for (const auto& row : doc.at("action"))
    act.push_back(row.get<std::vector<int>>());
  return make_gset(g, std::move(act));
}

// character table export: lifted small integers where the lift is in range,
// residues otherwise
inline Json character_table_json(const GroupPtr& g) {
  auto table = character_table(g);
  Json classes = Json::array();
  for (int c = 0; c < g->num_classes(); ++c)
    classes.push_back(Json{{"rep", format_cycles(g->element(g->class_rep(c)))},
                           {"size", g->class_members(c).size()}});
  Json irr = Json::array();
  for (int i = 0; i < table->count(); ++i) {
    Json vals = Json::array();
    for (auto v : table->irr[i].vals) {
      // lift into (-2|G|, 2|G|) when possible
      int64_t bound = 2 * int64_t(g->order());
      if (v <= bound)
        vals.push_back(v);
      else if (table->p - v <= bound)
        vals.push_back(-(table->p - v));
      else
        vals.push_back(Json{{"residue", v}});
    }
    irr.push_back(Json{{"degree", table->degrees[i]},
                       {"conjugate", table->conj_pair[i]},
                       {"values", vals}});
  }
  return Json{{"order", g->order()},
              {"prime", table->p},
              {"classes", classes},
              {"irreducibles", irr}};
}

}  // namespace ninfty
