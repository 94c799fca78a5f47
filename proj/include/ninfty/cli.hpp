#pragma once

// The ninfty command-line tool. Every verb emits a deterministic document:
// JSON by default, DOT for Hasse diagrams, and a human-oriented table format.
// Exit codes: 0 success, 1 usage error, 2 validation failure (with report).

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "ninfty/serialize.hpp"

namespace ninfty::cli {

struct CliResult {
  int status = 0;
  std::string out;
  std::string err;
};

namespace detail {

// pairs are read as class representatives: conjugates and the diagonal are
// filled in, and the result must already be closed
inline IndexingSystem expand_and_check(const GroupPtr& g, const PairSet& listed,
                                       const char* what) {
  auto lat = listed.lat;
  auto full = diagonal_pairset(lat);
  for (int h = 0; h < lat->count(); ++h)
    for (int k = listed.rows[h].first(); k >= 0; k = listed.rows[h].next(k))
      for (int x = 0; x < g->order(); ++x)
        full.rows[lat->conj_sub[x][h]].set(lat->conj_sub[x][k]);
  auto rep = validate(full);
  if (!rep.ok)
    throw domain_error(std::string(what) +
                       " does not satisfy the axioms; run the validate verb "
                       "for the report");
  return IndexingSystem{full};
}

inline IndexingSystem load_system(const GroupPtr& g, const std::string& spec) {
  if (spec == "trivial") return trivial_system(g);
  if (spec == "complete") return complete_system(g);
  if (spec.rfind("pairs:", 0) == 0)
    return expand_and_check(g, parse_pairs(g, spec.substr(6)), "system spec");
  if (!spec.empty() && spec[0] == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw usage_error("cannot open system file " + spec.substr(1));
    Json doc = Json::parse(in);
    const Json& pair_doc =
        doc.contains("system") ? doc.at("system").at("pairs") : doc.at("pairs");
    std::string pair_text;
    for (const auto& pr : pair_doc) {
      if (!pair_text.empty()) pair_text += ',';
      pair_text += pr.at(0).get<std::string>() + "/" + pr.at(1).get<std::string>();
    }
    return expand_and_check(g, parse_pairs(g, pair_text), "system file");
  }
  throw usage_error("unknown system spec: " + spec +
                    " (use trivial|complete|pairs:H/K,...|@file.json)");
}

inline OperadModel load_operad(const GroupPtr& g, const std::string& kind,
                               const std::string& universe_spec,
                               const std::string& system_spec) {
  if (kind == "trivial") return trivial_operad(g);
  if (kind == "complete") return complete_operad(g);
  if (kind == "disks" || kind == "steiner" || kind == "isometries") {
    if (universe_spec.empty())
      throw usage_error("operad kind " + kind + " needs --universe");
    auto u = parse_universe(g, universe_spec);
    if (kind == "isometries") return isometries_operad(u);
    if (kind == "steiner") return steiner_operad(u);
    return disks_operad(u);
  }
  if (kind == "explicit") {
    if (system_spec.empty())
      throw usage_error("operad kind explicit needs --system");
    return explicit_operad(load_system(g, system_spec));
  }
  throw usage_error("unknown operad kind: " + kind);
}

inline std::string human_pairs(const IndexingSystem& s) {
  std::string out;
  for (auto [h, k] : canonical_pairs(s.pairs)) {
    if (!out.empty()) out += ' ';
    out += subgroup_label(h) + "/" + subgroup_label(k);
  }
  return out;
}

inline std::string table_of_lattice(const IndexingLattice& all) {
  std::ostringstream os;
  os << all.count() << " indexing systems\n";
  for (int i = 0; i < all.count(); ++i)
    os << "  [" << i << "] pairs=" << all.systems[i].pairs.pair_count() << "  "
       << human_pairs(all.systems[i]) << "\n";
  os << "covers:";
  for (auto [lo, hi] : all.hasse_edges) os << " " << lo << "<" << hi;
  os << "\n";
  return os.str();
}

}  // namespace detail

inline CliResult run(std::vector<std::string> args) {
  CLI::App app{"indexing systems, operad admissibility, and incomplete "
               "Mackey structure for finite groups"};
  app.require_subcommand(1);

  std::string group_spec, format = "json", pairs, system_spec = "complete";
  std::string left_spec, right_spec, to_label, operad_kind = "complete";
  std::string universe_spec, mode = "pairwise", from_label, normal_label;
  std::string family_labels;
  bool dot_flag = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--group", group_spec, "group spec (C<n>, D<2n>, S<n>, A<n>, Q8, C<n>xC<m>, perm:...)")
        ->required();
    cmd->add_option("--format", format, "output format: json|dot|table");
    cmd->add_flag("--dot", dot_flag, "shorthand for --format dot");
    return cmd;
  };

  auto* c_enumerate = add_common(app.add_subcommand("enumerate", "enumerate all indexing systems"));
  auto* c_hasse = add_common(app.add_subcommand("hasse", "Hasse diagram of the poset of indexing systems"));
  auto* c_validate = add_common(app.add_subcommand("validate", "check a pair set against the indexing-system axioms"));
  c_validate->add_option("--pairs", pairs, "pair list H/K,H/K,... (diagonal added)")->required();
  auto* c_closure = add_common(app.add_subcommand("closure", "least indexing system containing the given pairs"));
  c_closure->add_option("--pairs", pairs, "seed pair list H/K,...")->required();
  auto* c_meet = add_common(app.add_subcommand("meet", "intersection of two systems"));
  c_meet->add_option("--left", left_spec)->required();
  c_meet->add_option("--right", right_spec)->required();
  auto* c_join = add_common(app.add_subcommand("join", "least upper bound of two systems"));
  c_join->add_option("--left", left_spec)->required();
  c_join->add_option("--right", right_spec)->required();
  auto* c_restrict = add_common(app.add_subcommand("restrict", "restrict a system to a subgroup"));
  c_restrict->add_option("--system", system_spec);
  c_restrict->add_option("--to", to_label, "subgroup label")->required();
  auto* c_adm = add_common(app.add_subcommand("admissibles", "indexing system of an operad model"));
  c_adm->add_option("--operad", operad_kind, "trivial|complete|disks|steiner|isometries|explicit");
  c_adm->add_option("--universe", universe_spec, "complete|trivial|fixed:<label>|gen:<rep>,...");
  c_adm->add_option("--system", system_spec, "for --operad explicit");
  auto* c_sep = add_common(app.add_subcommand("separate", "find a universe separating disks from isometries"));
  c_sep->add_option("--mode", mode, "pairwise|all-isometries");
  auto* c_census = add_common(app.add_subcommand("census", "which systems are realized by disks/isometries operads"));
  auto* c_coind = add_common(app.add_subcommand("coinduce", "coinduce an operad model from a subgroup"));
  c_coind->add_option("--from", from_label, "subgroup label")->required();
  c_coind->add_option("--operad", operad_kind);
  c_coind->add_option("--universe", universe_spec, "universe spec over the subgroup");
  c_coind->add_option("--system", system_spec, "system spec over the subgroup");
  auto* c_cot = add_common(app.add_subcommand("cotensor", "cotensor an operad model with a universal space"));
  c_cot->add_option("--family", family_labels, "comma-separated subgroup labels")->required();
  c_cot->add_option("--operad", operad_kind);
  c_cot->add_option("--universe", universe_spec);
  c_cot->add_option("--system", system_spec);
  auto* c_fix = add_common(app.add_subcommand("fixed-points", "geometric fixed points of an operad model"));
  c_fix->add_option("--normal", normal_label, "normal subgroup label")->required();
  c_fix->add_option("--operad", operad_kind);
  c_fix->add_option("--universe", universe_spec);
  c_fix->add_option("--system", system_spec);
  auto* c_mackey = add_common(app.add_subcommand("mackey-verify", "double coset, multiplicative, and Frobenius checks"));
  c_mackey->add_option("--system", system_spec, "trivial|complete|pairs:...|@file");

  CliResult res;
  std::vector<const char*> argv;
  argv.push_back("ninfty");
  for (auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream os, es;
    if (e.get_exit_code() == 0) {
      // --help goes to stdout with status 0
      os << app.help();
      res.out = os.str();
      return res;
    }
    es << e.what() << "\n";
    res.err = es.str();
    res.status = 1;
    return res;
  }

  if (dot_flag) format = "dot";

  try {
    auto g = construct_group(group_spec);
    auto lat = subgroup_lattice(g);
    Json doc;
    doc["group"] = group_json(g, group_spec);

    auto emit_system = [&](const IndexingSystem& s, const char* key = "system") {
      doc[key] = system_json(s);
    };

    if (c_enumerate->parsed() || c_hasse->parsed()) {
      auto all = enumerate_all(g);
      bool hasse_default_dot =
          c_hasse->parsed() && c_hasse->count("--format") == 0;
      if (format == "dot" || hasse_default_dot) {
        res.out = hasse_dot(all);
        return res;
      }
      if (format == "table") {
        res.out = detail::table_of_lattice(all);
        return res;
      }
      doc["lattice"] = lattice_json(all);
    } else if (c_validate->parsed()) {
      auto p = parse_pairs(g, pairs);
      for (int h = 0; h < lat->count(); ++h) p.rows[h].set(h);
      auto rep = validate(p);
      doc["candidate_pairs"] = pairs;
      doc["report"] = validation_json(*lat, rep);
      res.out = doc.dump(2) + "\n";
      res.status = rep.ok ? 0 : 2;
      return res;
    } else if (c_closure->parsed()) {
      emit_system(closure(parse_pairs(g, pairs)));
    } else if (c_meet->parsed() || c_join->parsed()) {
      auto a = detail::load_system(g, left_spec);
      auto b = detail::load_system(g, right_spec);
      emit_system(c_meet->parsed() ? meet(a, b) : join(a, b));
    } else if (c_restrict->parsed()) {
      auto s = detail::load_system(g, system_spec);
      const auto& sub = lat->subgroups[parse_subgroup_label(lat, to_label)];
      auto r = restrict_system(s, sub);
      doc["subgroup"] = subgroup_label(lat->index_of_members(sub.members));
      doc["subgroup_group"] = group_json(subgroup_group(sub).group, "");
      doc["system"] = system_json(r);
    } else if (c_adm->parsed()) {
      auto m = detail::load_operad(g, operad_kind, universe_spec, system_spec);
      doc["operad"] = Json{{"kind", operad_kind}};
      if (m.universe) doc["operad"]["universe"] = universe_json(*m.universe, universe_spec);
      emit_system(admissibles(m));
    } else if (c_sep->parsed()) {
      SeparationMode sm;
      if (mode == "pairwise") sm = SeparationMode::Pairwise;
      else if (mode == "all-isometries") sm = SeparationMode::AllIsometries;
      else throw usage_error("unknown mode: " + mode);
      doc["mode"] = mode;
      auto sep = find_separating_universe(g, sm);
      doc["found"] = bool(sep);
      if (sep) {
        doc["universe"] = universe_json(sep->universe, sep->universe_spec);
        doc["witness"] = Json::array({subgroup_label(sep->witness.first),
                                      subgroup_label(sep->witness.second)});
        doc["disks"] = system_json(sep->disks_sys);
        doc["isometries"] = system_json(sep->isom_sys);
        if (sm == SeparationMode::AllIsometries) doc["universes_swept"] = sep->swept;
      }
    } else if (c_census->parsed()) {
      auto census = realization_census(g);
      if (format == "dot") {
        res.out = hasse_dot(census.lattice, &census.rows);
        return res;
      }
      doc["universes_swept"] = census.universes_swept;
      Json rows = Json::array();
      for (int i = 0; i < census.lattice.count(); ++i) {
        Json row = system_json(census.lattice.systems[i]);
        row["disks_realized"] = census.rows[i].disks;
        row["isometries_realized"] = census.rows[i].isometries;
        rows.push_back(row);
      }
      doc["systems"] = rows;
      Json edges = Json::array();
      for (auto [lo, hi] : census.lattice.hasse_edges)
        edges.push_back(Json::array({lo, hi}));
      doc["hasse"] = edges;
    } else if (c_coind->parsed()) {
      const auto& sub = lat->subgroups[parse_subgroup_label(lat, from_label)];
      auto child = subgroup_group(sub).group;
      auto m = detail::load_operad(child, operad_kind, universe_spec, system_spec);
      doc["from"] = subgroup_label(lat->index_of_members(sub.members));
      doc["operad"] = Json{{"kind", operad_kind}};
      emit_system(admissibles(operad_coinduce(m, sub)));
    } else if (c_cot->parsed()) {
      auto m = detail::load_operad(g, operad_kind, universe_spec, system_spec);
      std::vector<int> family;
      size_t start = 0;
      for (size_t i = 0; i <= family_labels.size(); ++i) {
        if (i < family_labels.size() && family_labels[i] != ',') continue;
        std::string tok = family_labels.substr(start, i - start);
        start = i + 1;
        if (!tok.empty()) family.push_back(parse_subgroup_label(lat, tok));
      }
      Json fam = Json::array();
      for (int a : family) fam.push_back(subgroup_label(a));
      doc["family"] = fam;
      doc["operad"] = Json{{"kind", operad_kind}};
      emit_system(admissibles(operad_cotensor(m, family)));
    } else if (c_fix->parsed()) {
      const auto& sub = lat->subgroups[parse_subgroup_label(lat, normal_label)];
      auto m = detail::load_operad(g, operad_kind, universe_spec, system_spec);
      auto fp = operad_fixed_points(m, sub);
      doc["normal"] = subgroup_label(lat->index_of_members(sub.members));
      doc["quotient"] = group_json(fp.quotient.group, "");
      doc["operad"] = Json{{"kind", operad_kind}};
      emit_system(admissibles(fp.model));
    } else if (c_mackey->parsed()) {
      auto s = detail::load_system(g, system_spec);
      auto m = build_burnside(g, s);
      auto r1 = verify_double_coset(m);
      auto r2 = verify_multiplicative_double_coset(m);
      auto r3 = frobenius_check(m);
      doc["system"] = system_json(s);
      doc["reports"] = Json::array(
          {mackey_report_json(r1), mackey_report_json(r2), mackey_report_json(r3)});
      res.out = doc.dump(2) + "\n";
      res.status = (r1.ok && r2.ok && r3.ok) ? 0 : 2;
      return res;
    }

    if (format == "table") {
      // generic fallback rendering for system-shaped outputs
      std::ostringstream os;
      if (doc.contains("system"))
        os << "pairs: " << doc["system"]["pairs"].dump() << "\n";
      else
        os << doc.dump(2) << "\n";
      res.out = os.str();
      return res;
    }
    res.out = doc.dump(2) + "\n";
    return res;
  } catch (const usage_error& e) {
    res.err = std::string("error: ") + e.what() + "\n";
    res.status = 1;
    return res;
  } catch (const resource_error& e) {
    res.err = std::string("error: ") + e.what() + "\n";
    res.status = 1;
    return res;
  } catch (const domain_error& e) {
    res.err = std::string("error: ") + e.what() + "\n";
    res.status = 2;
    return res;
  }
}

}  // namespace ninfty::cli
