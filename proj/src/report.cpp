#include "dtorsion/report.hpp"

#include <algorithm>
#include <sstream>

#include "dtorsion/cohomology.hpp"
#include "dtorsion/error.hpp"
#include "dtorsion/projrep.hpp"
#include "dtorsion/torsion.hpp"

namespace dtorsion {

namespace {

using Value = Report::Value;

// Tabs and line breaks inside a value would break the text layout.
std::string render(const Value& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  std::ranges::replace_if(s, [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
  return s;
}

Value int_array(const std::vector<std::int64_t>& xs) {
  Value a = Value::array();
  for (auto x : xs) a.push_back(x);
  return a;
}

Value element_array(const std::vector<Element>& xs) {
  Value a = Value::array();
  for (auto x : xs) a.push_back(x);
  return a;
}

std::string cyclic_sum(const std::vector<std::int64_t>& factors) {
  if (factors.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? " + Z/" : "Z/") + std::to_string(factors[i]);
  return s;
}

Report start(const ReportOptions& o, const GroupPtr& g) {
  Report r;
  r.command = o.command;
  r.field("group", g->name());
  r.field("order", g->order());
  return r;
}

CohomologyGroup u1_group(const GroupPtr& g, int p, const ReportOptions& o) {
  return cohomology_u1(g, p, o.modulus);
}

std::int64_t selected_class(const CohomologyGroup& h, const ReportOptions& o) {
  const std::int64_t k = o.class_index.value_or(0);
  require(k >= 0 && k < h.order(), ErrorKind::Argument,
          "class index " + std::to_string(k) + " out of range 0.." + std::to_string(h.order() - 1));
  return k;
}

void cocycle_table(Report& r, const Cochain& c) {
  std::vector<std::string> cols;
  for (int i = 1; i <= c.degree(); ++i) cols.push_back("g" + std::to_string(i));
  cols.push_back("value");
  auto& t = r.table("cocycle", cols);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.values()[i] == 0) continue;
    std::vector<Value> row;
    for (Element e : c.tuple_at(i)) row.emplace_back(e);
    row.emplace_back(Phase(c.values()[i], c.modulus()).str());
    t.rows.push_back(std::move(row));
  }
}

void class_fields(Report& r, const CohomologyGroup& h, std::int64_t k, const Cochain& w) {
  r.field("degree", h.degree());
  r.field("modulus", h.modulus());
  r.field("class", k);
  r.field("classes", h.order());
  r.field("coordinates", int_array(h.coordinates(w)));
}

std::string overlap_str(const DiscreteSite& s, std::size_t o) {
  return std::to_string(s.overlaps[o].p) + "-" + std::to_string(s.overlaps[o].q);
}

bool same_site(const DiscreteSite& a, const DiscreteSite& b) {
  return a.group->order() == b.group->order() && std::ranges::equal(a.group->table(), b.group->table()) &&
         a.patch_components == b.patch_components && a.overlaps == b.overlaps && a.triples == b.triples &&
         a.quads == b.quads && a.action == b.action;
}

void site_fields(Report& r, const DiscreteSite& s) {
  r.field("group", s.group->name());
  r.field("order", s.group->order());
  r.field("patches", std::int64_t(s.patch_components.size()));
  r.field("overlaps", std::int64_t(s.overlaps.size()));
  r.field("triples", std::int64_t(s.triples.size()));
  r.field("quads", std::int64_t(s.quads.size()));
}

void violation_rows(Report::Table& t, const std::string& structure, const VerifyReport& v) {
  for (const auto& x : v.violations) t.rows.push_back({structure, x.relation, x.location});
}

}  // namespace

Report::Table& Report::table(std::string name, std::vector<std::string> columns) {
  tables.push_back({std::move(name), std::move(columns), {}});
  return tables.back();
}

std::string Report::text() const {
  std::ostringstream out;
  if (!command.empty()) out << "command\t" << command << "\n";
  for (const auto& [k, v] : fields) out << k << "\t" << render(v) << "\n";
  for (const auto& t : tables) {
    out << "# " << t.name << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "\t" : "") << t.columns[i];
    out << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << render(row[i]);
      out << "\n";
    }
  }
  return out.str();
}

std::string Report::json() const {
  Value doc;
  doc["format"] = "dtorsion-report";
  doc["version"] = kReportVersion;
  doc["command"] = command;
  doc["passed"] = passed;
  doc["fields"] = Value::object();
  for (const auto& [k, v] : fields) doc["fields"][k] = v;
  doc["tables"] = Value::object();
  for (const auto& t : tables) {
    Value rows = Value::array();
    for (const auto& row : t.rows) rows.push_back(Value(row));
    doc["tables"][t.name] = {{"columns", t.columns}, {"rows", rows}};
  }
  return doc.dump(2) + "\n";
}

Report report_info(const GroupPtr& g, const ReportOptions& o) {
  Report r = start(o, g);
  const auto cd = conjugacy_classes(*g);
  const auto ab = abelianization(*g);
  r.field("abelian", g->is_abelian());
  r.field("exponent", exponent(*g));
  r.field("conjugacy_classes", std::int64_t(cd.classes.size()));
  r.field("abelianization", int_array(ab.invariant_factors));
  auto& t = r.table("classes", {"class", "size", "representative", "element_order", "centralizer_order", "members"});
  for (std::size_t i = 0; i < cd.classes.size(); ++i) {
    const auto& c = cd.classes[i];
    t.rows.push_back({std::int64_t(i), std::int64_t(c.size()), c.front(), g->element_order(c.front()),
                      std::int64_t(cd.centralizers[std::size_t(c.front())].size()), element_array(c)});
  }
  return r;
}

Report report_cohomology(const GroupPtr& g, const ReportOptions& o) {
  Report r = start(o, g);
  const int p = o.degree;
  auto h = o.zn ? cohomology_zn(g, p, o.modulus.value_or(g->order())) : u1_group(g, p, o);
  const std::string coeff = o.zn ? "Z/" + std::to_string(h.modulus()) : "U(1)";
  r.field("degree", p);
  r.field("coefficients", coeff);
  r.field("modulus", h.modulus());
  r.field("invariant_factors", int_array(h.invariant_factors()));
  r.field("classes", h.order());
  r.field("result", "H^" + std::to_string(p) + "(G," + coeff + ") = " + cyclic_sum(h.invariant_factors()));
  return r;
}

Report report_cocycles(const GroupPtr& g, const ReportOptions& o) {
  Report r = start(o, g);
  auto h = o.zn ? cohomology_zn(g, o.degree, o.modulus.value_or(g->order())) : u1_group(g, o.degree, o);
  if (o.class_index) {
    const auto k = selected_class(h, o);
    const auto w = h.representative(k);
    class_fields(r, h, k, w);
    cocycle_table(r, w);
    return r;
  }
  r.field("degree", o.degree);
  r.field("modulus", h.modulus());
  r.field("classes", h.order());
  require(h.order() <= kMaxEnumeratedClasses, ErrorKind::Limit,
          "more than " + std::to_string(kMaxEnumeratedClasses) + " classes; select one with --class");
  auto& t = r.table("classes", {"class", "coordinates", "nonzero_entries"});
  const auto reps = h.enumerate_representatives();
  for (std::size_t k = 0; k < reps.size(); ++k) {
    std::int64_t nz = 0;
    for (auto v : reps[k].values()) nz += v != 0;
    t.rows.push_back({std::int64_t(k), int_array(h.coordinates(reps[k])), nz});
  }
  return r;
}

Report report_phases(const GroupPtr& g, const ReportOptions& o) {
  Report r = start(o, g);
  auto h = u1_group(g, 2, o);
  const auto k = selected_class(h, o);
  const auto w = h.representative(k);
  class_fields(r, h, k, w);
  const auto table = epsilon_table(w);
  std::int64_t nontrivial = 0;
  for (const auto& e : table) nontrivial += !e.phase.is_one();
  r.field("commuting_pairs", std::int64_t(table.size()));
  r.field("nontrivial_phases", nontrivial);
  if (o.quotient_conjugation) {
    auto& t = r.table("orbits", {"orbit", "size", "g", "h", "phase"});
    const auto orbits = sector_orbits(*g);
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      const auto s = orbits[i].front();
      t.rows.push_back({std::int64_t(i), std::int64_t(orbits[i].size()), s.g, s.h, epsilon(w, s.g, s.h).str()});
    }
  } else {
    auto& t = r.table("epsilon", {"g", "h", "phase"});
    for (const auto& e : table) t.rows.push_back({e.sector.g, e.sector.h, e.phase.str()});
  }
  return r;
}

Report report_partition(const GroupPtr& g, const ReportOptions& o) {
  Report r = start(o, g);
  std::optional<Cochain> w;
  if (o.class_index) {
    auto h = u1_group(g, 2, o);
    const auto k = selected_class(h, o);
    w = h.representative(k);
    class_fields(r, h, k, *w);
  }
  const auto part = assemble_partition(g, w, o.quotient_conjugation);
  r.field("terms", std::int64_t(part.terms.size()));
  r.field("symbolic", part.symbolic());
  r.field("unit_amplitudes", part.evaluate_uniform(1).str());
  auto& t = r.table("sectors", {"g", "h", "phase", "multiplicity"});
  for (const auto& term : part.terms) t.rows.push_back({term.sector.g, term.sector.h, term.phase.str(), term.multiplicity});
  return r;
}

Report report_membrane(const GroupPtr& g, const ReportOptions& o) {
  Report r = start(o, g);
  auto h = u1_group(g, 3, o);
  const auto k = selected_class(h, o);
  const auto w = h.representative(k);
  class_fields(r, h, k, w);
  const auto triples = commuting_triples(*g);
  const auto gens = sl3_generators();
  bool invariant = true;
  std::int64_t nontrivial = 0;
  auto& t = r.table("membrane", {"g1", "g2", "g3", "phase"});
  for (const auto& x : triples) {
    const auto ph = membrane_phase(w, x[0], x[1], x[2]);
    nontrivial += !ph.is_one();
    for (const auto& m : gens) invariant = invariant && check_sl3_invariance(w, x, m);
    t.rows.push_back({x[0], x[1], x[2], ph.str()});
  }
  r.field("commuting_triples", std::int64_t(triples.size()));
  r.field("nontrivial_phases", nontrivial);
  r.field("sl3_invariant", invariant);
  r.passed = invariant;
  return r;
}

Report report_projrep(const GroupPtr& g, const ReportOptions& o) {
  Report r = start(o, g);
  auto h = u1_group(g, 2, o);
  const auto k = selected_class(h, o);
  const auto rep = twisted_rep_report(h, k);
  class_fields(r, h, k, rep.cocycle);
  r.field("dimension", rep.rep.dimension());
  r.field("regular_classes", std::int64_t(rep.regular_classes.size()));
  std::vector<std::int64_t> dims(rep.dimensions.begin(), rep.dimensions.end());
  r.field("irrep_dimensions", int_array(dims));
  r.field("projective_relation", rep.projective_relation);
  r.field("regular_character", rep.regular_character);
  r.field("sum_of_squares", rep.sum_of_squares);
  r.field("count_matches", rep.count_matches);
  r.passed = rep.consistent();
  auto& t = r.table("regular_classes", {"class", "representative", "members"});
  for (std::size_t i = 0; i < rep.regular_classes.size(); ++i)
    t.rows.push_back({std::int64_t(i), rep.regular_classes[i].front(), element_array(rep.regular_classes[i])});
  if (o.emit_matrices) {
    auto& m = r.table("matrices", {"g", "row", "col", "phase"});
    for (Element x = 0; x < g->order(); ++x)
      for (int c = 0; c < rep.rep[x].dim(); ++c)
        m.rows.push_back({x, rep.rep[x].row[std::size_t(c)], c, rep.rep[x].phase[std::size_t(c)].str()});
  }
  return r;
}

Report report_euler(const GComplex& x, const ReportOptions& o) {
  Report r = start(o, x.group());
  const auto sum = orbifold_euler_sum(x);
  const auto conj = orbifold_euler_conjugacy(x);
  r.field("cells", int_array(x.cell_counts()));
  r.field("euler", euler_char(x));
  r.field("quotient_euler", quotient_orbit_euler(x));
  r.field("orbifold_euler_sum", sum.get_str());
  r.field("orbifold_euler_conjugacy", conj);
  r.field("agree", sum == conj);
  r.passed = sum == conj;
  return r;
}

Report report_inertia(const GComplex& x, const ReportOptions& o) {
  Report r = start(o, x.group());
  const auto rep = inertia_components(x);
  r.field("components", std::int64_t(rep.components.size()));
  r.field("conjugacy_total", rep.conjugacy_total);
  r.field("pair_sum", rep.pair_sum.get_str());
  r.field("agree", rep.pair_sum == rep.conjugacy_total);
  r.passed = rep.pair_sum == rep.conjugacy_total;
  auto& t = r.table("inertia", {"representative", "class_size", "centralizer_order", "fixed_cells", "fixed_euler",
                                "quotient_euler"});
  for (const auto& c : rep.components)
    t.rows.push_back({c.representative, std::int64_t(c.conjugacy_class.size()), c.centralizer_order,
                      int_array(c.fixed_cell_counts), c.fixed_euler, c.quotient_euler});
  return r;
}

Report report_cech_verify(const CechDocument& doc, const ReportOptions& o) {
  require(doc.bundle_structure || doc.gerbe_structure, ErrorKind::Invalid,
          "nothing to verify: the document has no equiv stanza");
  Report r;
  r.command = o.command;
  site_fields(r, doc.site);
  std::vector<std::pair<std::string, VerifyReport>> checks;
  if (doc.bundle_structure)
    checks.emplace_back("bundle", verify_bundle_equivariance(doc.site, doc.bundle.value_or(trivial_bundle(doc.site)),
                                                             *doc.bundle_structure));
  if (doc.gerbe_structure)
    checks.emplace_back("gerbe", verify_gerbe_equivariance(doc.site, doc.gerbe.value_or(trivial_gerbe(doc.site)),
                                                           *doc.gerbe_structure));
  for (const auto& [name, v] : checks) r.field(name + "_violations", v.total);
  auto& t = r.table("violations", {"structure", "relation", "location"});
  for (const auto& [name, v] : checks) {
    violation_rows(t, name, v);
    r.passed = r.passed && v.ok();
  }
  r.field("equivariant", r.passed);
  return r;
}

Report report_cech_diff(const CechDocument& a, const CechDocument& b, const ReportOptions& o) {
  require(same_site(a.site, b.site), ErrorKind::Invalid, "documents describe different sites");
  const bool bundles = a.bundle_structure && b.bundle_structure;
  const bool gerbes = a.gerbe_structure && b.gerbe_structure;
  require(bundles || gerbes, ErrorKind::Invalid, "documents share no kind of equivariant structure");
  const auto& site = a.site;
  Report r;
  r.command = o.command;
  site_fields(r, site);

  if (bundles) {
    const auto ca = a.bundle.value_or(trivial_bundle(site)), cb = b.bundle.value_or(trivial_bundle(site));
    require(ca.g == cb.g, ErrorKind::Invalid, "bundle cocycles differ");
    const auto d = bundle_difference_character(site, ca, *a.bundle_structure, *b.bundle_structure);
    r.field("connected_components", std::int64_t(d.characters.size()));
    r.field("homomorphism", d.homomorphism);
    r.passed = r.passed && d.homomorphism;
    auto& t = r.table("character", {"component", "g", "phase"});
    for (std::size_t c = 0; c < d.characters.size(); ++c)
      for (std::size_t g = 0; g < d.characters[c].size(); ++g)
        t.rows.push_back({std::int64_t(c), std::int64_t(g), d.characters[c][g].str()});
  }

  if (gerbes) {
    const auto ca = a.gerbe.value_or(trivial_gerbe(site)), cb = b.gerbe.value_or(trivial_gerbe(site));
    require(ca.h == cb.h, ErrorKind::Invalid, "gerbe cocycles differ");
    const auto d = gerbe_difference_data(site, ca, *a.gerbe_structure, *b.gerbe_structure);
    const auto diagram = verify_group_law_diagram(site, d);
    r.field("diagram_violations", diagram.total);
    r.passed = r.passed && diagram.ok();
    auto& tt = r.table("transition", {"g", "overlap", "component", "phase"});
    for (std::size_t g = 0; g < d.transition.size(); ++g)
      for (std::size_t ov = 0; ov < d.transition[g].size(); ++ov)
        for (std::size_t c = 0; c < d.transition[g][ov].size(); ++c)
          if (!d.transition[g][ov][c].is_one())
            tt.rows.push_back({std::int64_t(g), overlap_str(site, ov), std::int64_t(c), d.transition[g][ov][c].str()});
    const std::size_t n = std::size_t(site.group->order());
    auto& to = r.table("omega", {"g1", "g2", "patch", "component", "phase"});
    for (std::size_t i = 0; i < d.omega.size(); ++i)
      for (std::size_t p = 0; p < d.omega[i].size(); ++p)
        for (std::size_t c = 0; c < d.omega[i][p].size(); ++c)
          if (!d.omega[i][p][c].is_one())
            to.rows.push_back({std::int64_t(i / n), std::int64_t(i % n), std::int64_t(p), std::int64_t(c),
                               d.omega[i][p][c].str()});
    try {
      const auto t = extract_discrete_torsion(site, d);
      r.field("discrete_torsion", "H^2 class " + std::to_string(t.class_index));
      r.field("class", t.class_index);
      r.field("classes", t.cohomology.order());
      r.field("coordinates", int_array(t.cohomology.coordinates(t.cocycle)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Invalid) throw;
      r.field("discrete_torsion", std::string("none: ") + e.what());
    }
  }
  return r;
}

}  // namespace dtorsion
