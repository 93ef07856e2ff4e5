#include "ssg/json_io.hpp"

#include <deque>
#include <map>

#include "ssg/expr.hpp"

namespace ssg {

namespace {
constexpr const char* kSchema = "ssg/1";
}

Json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return Int(j.get<std::string>());
  throw validation_error("BadJson", "expected an integer or a decimal string");
}

Json mat_to_json(const IntMat& m) {
  Json rows = Json::array();
  for (const auto& r : m) {
    Json row = Json::array();
    for (const auto& x : r) row.push_back(int_to_json(x));
    rows.push_back(row);
  }
  return rows;
}

IntMat mat_from_json(const Json& j) {
  IntMat m;
  for (const auto& row : j) {
    IntVec r;
    for (const auto& x : row) r.push_back(int_from_json(x));
    m.push_back(std::move(r));
  }
  return m;
}

Json heis_elem_to_json(const HeisElem& g) {
  return Json::array({int_to_json(g.a), int_to_json(g.b), int_to_json(g.c)});
}

HeisElem heis_elem_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3)
    throw validation_error("BadJson", "Heisenberg element must be [a, b, c]");
  return HeisElem(int_from_json(j[0]), int_from_json(j[1]), int_from_json(j[2]));
}

Json heis_endo_to_json(const HeisEndo& e) {
  return Json{{"A", Json::array({Json::array({int_to_json(e.a1), int_to_json(e.a2)}),
                                 Json::array({int_to_json(e.b1), int_to_json(e.b2)})})},
              {"c", Json::array({int_to_json(e.c1), int_to_json(e.c2)})}};
}

HeisEndo heis_endo_from_json(const Json& j) {
  const Json& a = j.at("A");
  HeisEndo e(int_from_json(a[0][0]), int_from_json(a[0][1]), int_from_json(a[1][0]),
             int_from_json(a[1][1]));
  if (j.contains("c")) {
    e.c1 = int_from_json(j["c"][0]);
    e.c2 = int_from_json(j["c"][1]);
  }
  return e;
}

Json heis_lattice_to_json(const HeisLattice& l) {
  return Json::array({Json::array({int_to_json(l.e1), int_to_json(l.f12), int_to_json(l.f13)}),
                      Json::array({0, int_to_json(l.e2), int_to_json(l.f23)}),
                      Json::array({0, 0, int_to_json(l.e3)})});
}

HeisLattice heis_lattice_from_json(const Json& j) {
  HeisLattice l;
  l.e1 = int_from_json(j[0][0]);
  l.f12 = int_from_json(j[0][1]);
  l.f13 = int_from_json(j[0][2]);
  l.e2 = int_from_json(j[1][1]);
  l.f23 = int_from_json(j[1][2]);
  l.e3 = int_from_json(j[2][2]);
  return l;
}

Json zlattice_to_json(const ZLattice& l) { return mat_to_json(l.basis); }

ZLattice zlattice_from_json(const Json& j) {
  IntMat m = mat_from_json(j);
  return ZLattice::from_generators(m.empty() ? 0 : m[0].size(), m);
}

Json automaton_to_json(const AutomatonPtr& aut) {
  Json states = Json::array();
  for (std::size_t s = 0; s < aut->state_names.size(); ++s) {
    Json sections = Json::array();
    for (int i = 0; i < aut->degree; ++i) {
      const auto& word = aut->sections[s][static_cast<std::size_t>(i)];
      sections.push_back(FreeWord(word).str(aut->state_names));
    }
    states.push_back(Json{{"name", aut->state_names[s]},
                          {"perm", aut->perms[s]},
                          {"sections", sections}});
  }
  return Json{{"schema", kSchema}, {"type", "automaton"}, {"degree", aut->degree},
              {"states", states}};
}

AutomatonPtr automaton_from_json(const Json& j) {
  auto aut = std::make_shared<WreathAutomaton>();
  aut->degree = j.at("degree").get<int>();
  for (const auto& s : j.at("states")) aut->state_names.push_back(s.at("name").get<std::string>());
  for (const auto& s : j.at("states")) {
    aut->perms.push_back(s.at("perm").get<std::vector<int>>());
    std::vector<std::vector<int>> secs;
    for (const auto& sec : s.at("sections")) {
      std::string text = sec.get<std::string>();
      if (text == "1")
        secs.push_back({});
      else
        secs.push_back(resolve_word(parse_element(text), aut->state_names).letters);
    }
    aut->sections.push_back(std::move(secs));
  }
  aut->validate();
  return aut;
}

Json family_to_json(const FamilyPtr& fam) {
  Json j{{"schema", kSchema}, {"type", "family"}};
  switch (fam->kind) {
    case FamilyKind::Free:
      j["kind"] = "free";
      j["rank"] = fam->free_rank;
      break;
    case FamilyKind::SemidirectZ: {
      j["kind"] = "semidirect_z";
      Json action = Json::array();
      for (const auto& m : fam->z_action) action.push_back(mat_to_json(m));
      j["action"] = action;
      break;
    }
    case FamilyKind::SemidirectHeis: {
      j["kind"] = "semidirect_heis";
      Json action = Json::array();
      for (const auto& e : fam->h_action) action.push_back(heis_endo_to_json(e));
      j["action"] = action;
      break;
    }
    case FamilyKind::HnnHeis:
      j["kind"] = "hnn_heis";
      j["phi"] = heis_endo_to_json(fam->phi);
      break;
    case FamilyKind::HnnAbelian:
      j["kind"] = "hnn_abelian";
      j["matrix"] = mat_to_json(fam->hnn_matrix);
      break;
  }
  return j;
}

FamilyPtr family_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "free") return Family::free_group(j.at("rank").get<int>());
  if (kind == "semidirect_z") {
    std::vector<IntMat> action;
    for (const auto& m : j.at("action")) action.push_back(mat_from_json(m));
    return Family::semidirect_z(std::move(action));
  }
  if (kind == "semidirect_heis") {
    std::vector<HeisEndo> action;
    for (const auto& e : j.at("action")) action.push_back(heis_endo_from_json(e));
    return Family::semidirect_heis(std::move(action));
  }
  if (kind == "hnn_heis") return Family::hnn_heis(heis_endo_from_json(j.at("phi")));
  if (kind == "hnn_abelian") return Family::hnn_abelian(mat_from_json(j.at("matrix")));
  throw validation_error("BadJson", "unknown family kind " + kind);
}

namespace {

Json coset_table_to_json(const CosetTable& t) {
  return Json{{"rank", t.rank}, {"step", t.step}};
}

CosetTable coset_table_from_json(const Json& j) {
  CosetTable t;
  t.rank = j.at("rank").get<int>();
  t.step = j.at("step").get<std::vector<std::vector<int>>>();
  t.base = 0;
  t.complete = true;
  for (const auto& row : t.step)
    for (int x : row)
      if (x < 0) t.complete = false;
  return t;
}

Json domain_to_json(const SubgroupPtr& d) {
  Json j{{"family_kind", static_cast<int>(d->family->kind)}};
  switch (d->family->kind) {
    case FamilyKind::Free:
      j["free_table"] = coset_table_to_json(d->free_table);
      break;
    case FamilyKind::SemidirectZ:
      j["free_table"] = coset_table_to_json(d->free_table);
      j["kernel"] = zlattice_to_json(d->zsub);
      break;
    case FamilyKind::SemidirectHeis:
      j["free_table"] = coset_table_to_json(d->free_table);
      j["kernel"] = heis_lattice_to_json(d->hsub);
      break;
    case FamilyKind::HnnHeis:
    case FamilyKind::HnnAbelian:
      j["p"] = int_to_json(d->hnn_p);
      break;
  }
  return j;
}

SubgroupPtr domain_from_json(const FamilyPtr& fam, const Json& j) {
  switch (fam->kind) {
    case FamilyKind::Free:
      return subgroup_free(fam, coset_table_from_json(j.at("free_table")));
    case FamilyKind::SemidirectZ:
      return subgroup_semi_z(fam, zlattice_from_json(j.at("kernel")),
                             coset_table_from_json(j.at("free_table")));
    case FamilyKind::SemidirectHeis:
      return subgroup_semi_h(fam, heis_lattice_from_json(j.at("kernel")),
                             coset_table_from_json(j.at("free_table")));
    case FamilyKind::HnnHeis:
      return subgroup_hnn_heis(fam, int_from_json(j.at("p")));
    case FamilyKind::HnnAbelian:
      return subgroup_hnn_abelian(fam, int_from_json(j.at("p")));
  }
  throw validation_error("BadJson", "unknown domain kind");
}

std::string apply_kind_name(ApplyKind k) {
  switch (k) {
    case ApplyKind::Generic: return "generic";
    case ApplyKind::HnnHeisClaim3: return "hnn_claim3";
    case ApplyKind::HnnAbelianDivide: return "abelian_divide";
  }
  return "generic";
}

ApplyKind apply_kind_from_name(const std::string& s) {
  if (s == "generic") return ApplyKind::Generic;
  if (s == "hnn_claim3") return ApplyKind::HnnHeisClaim3;
  if (s == "abelian_divide") return ApplyKind::HnnAbelianDivide;
  throw validation_error("BadJson", "unknown apply kind " + s);
}

}  // namespace

Json endo_system_to_json(const EndoSystem& sys) {
  Json endos = Json::array();
  for (const auto& e : sys.endos) {
    Json images = Json::array();
    for (const auto& img : e.images) images.push_back(element_expression(img));
    Json relations = Json::array();
    for (const auto& rel : e.relations)
      relations.push_back(Json{{"name", rel.name}, {"word", rel.word.str(e.domain->gen_names)}});
    endos.push_back(Json{{"label", e.label},
                         {"apply", apply_kind_name(e.apply_kind)},
                         {"domain", domain_to_json(e.domain)},
                         {"domain_generators", e.domain->gen_names},
                         {"index", int_to_json(e.domain->index())},
                         {"images", images},
                         {"relations", relations}});
  }
  return Json{{"schema", kSchema},
              {"type", "endo_system"},
              {"family", family_to_json(sys.codomain)},
              {"endos", endos}};
}

EndoSystem endo_system_from_json(const Json& j) {
  EndoSystem sys;
  sys.codomain = family_from_json(j.at("family"));
  std::map<std::string, GroupElement> ctx = family_context(sys.codomain);
  for (const auto& je : j.at("endos")) {
    VirtualEndo e;
    e.codomain = sys.codomain;
    e.label = je.value("label", "");
    e.apply_kind = apply_kind_from_name(je.at("apply").get<std::string>());
    e.domain = domain_from_json(sys.codomain, je.at("domain"));
    for (const auto& img : je.at("images"))
      e.images.push_back(resolve_element(parse_element(img.get<std::string>()), ctx));
    if (je.contains("relations"))
      for (const auto& rel : je.at("relations")) {
        std::string text = rel.at("word").get<std::string>();
        FreeWord w = text == "1" ? FreeWord()
                                 : resolve_word(parse_element(text), e.domain->gen_names);
        e.relations.push_back({rel.at("name").get<std::string>(), w});
      }
    sys.endos.push_back(std::move(e));
  }
  return sys;
}

Json certificate_to_json(const Certificate& cert) {
  Json j{{"schema", kSchema},
         {"type", "certificate"},
         {"kind", cert.kind == CertKind::Abelian ? "abelian" : "heisenberg"},
         {"rank", cert.rank},
         {"vertices", cert.num_vertices}};
  Json rho = Json::array();
  if (cert.kind == CertKind::Abelian)
    for (const auto& m : cert.rho_z) rho.push_back(mat_to_json(m));
  else
    for (const auto& e : cert.rho_h) rho.push_back(heis_endo_to_json(e));
  j["rho"] = rho;
  Json edges = Json::array();
  for (const auto& e : cert.edges) {
    Json je{{"origin", e.origin}, {"target", e.target}, {"in_tree", e.in_tree}};
    if (cert.kind == CertKind::Abelian) {
      je["edge"] = zlattice_to_json(e.edge_z);
      je["phi"] = mat_to_json(e.phi_z);
      je["theta"] = mat_to_json(e.theta_z);
    } else {
      je["edge"] = heis_lattice_to_json(e.edge_h);
      je["phi"] = Json::array({heis_elem_to_json(e.phi_h[0]), heis_elem_to_json(e.phi_h[1]),
                               heis_elem_to_json(e.phi_h[2])});
      je["theta"] = heis_endo_to_json(e.theta_h);
    }
    edges.push_back(je);
  }
  j["edges"] = edges;
  return j;
}

Certificate certificate_from_json(const Json& j) {
  Certificate cert;
  cert.kind = j.at("kind").get<std::string>() == "abelian" ? CertKind::Abelian
                                                           : CertKind::Heisenberg;
  cert.rank = j.at("rank").get<int>();
  cert.num_vertices = j.at("vertices").get<int>();
  for (const auto& r : j.at("rho")) {
    if (cert.kind == CertKind::Abelian)
      cert.rho_z.push_back(mat_from_json(r));
    else
      cert.rho_h.push_back(heis_endo_from_json(r));
  }
  for (const auto& je : j.at("edges")) {
    CertEdge e;
    e.origin = je.at("origin").get<int>();
    e.target = je.at("target").get<int>();
    e.in_tree = je.value("in_tree", false);
    if (cert.kind == CertKind::Abelian) {
      e.edge_z = zlattice_from_json(je.at("edge"));
      e.phi_z = mat_from_json(je.at("phi"));
      e.theta_z = mat_from_json(je.at("theta"));
    } else {
      e.edge_h = heis_lattice_from_json(je.at("edge"));
      const Json& phis = je.at("phi");
      e.phi_h = {heis_elem_from_json(phis[0]), heis_elem_from_json(phis[1]),
                 heis_elem_from_json(phis[2])};
      e.theta_h = heis_endo_from_json(je.at("theta"));
    }
    cert.edges.push_back(std::move(e));
  }
  return cert;
}

Json cert_report_to_json(const CertReport& report) {
  Json lines = Json::array();
  for (const auto& l : report.lines)
    lines.push_back(Json{{"condition", l.condition}, {"pass", l.pass}, {"detail", l.detail}});
  return Json{{"schema", kSchema}, {"type", "certificate_report"}, {"all_pass", report.all_pass},
              {"checks", lines}};
}

Json verify_report_to_json(const VerifyReport& report) {
  Json lines = Json::array();
  for (const auto& l : report.lines) {
    Json jl{{"relation", l.relation}, {"pass", l.pass}};
    if (!l.pass) jl["image"] = l.image_normal_form;
    lines.push_back(jl);
  }
  return Json{{"schema", kSchema}, {"type", "verify_report"}, {"all_pass", report.all_pass},
              {"relations", lines}};
}

Json probe_to_json(const ProbeResult& probe) {
  Json j{{"schema", kSchema},
         {"type", "probe_report"},
         {"verdict", probe.witness_found ? "KernelWitness" : "NoKernelWitness"},
         {"word_len", probe.word_len},
         {"depth", probe.depth}};
  if (probe.witness_found) j["witness"] = probe.witness_normal_form;
  return j;
}

Json triviality_to_json(const TrivialityResult& result) {
  Json j{{"schema", kSchema}, {"type", "triviality"}};
  switch (result.kind) {
    case TrivialityResult::Kind::Trivial: j["verdict"] = "Trivial"; break;
    case TrivialityResult::Kind::NontrivialAtDepth: j["verdict"] = "NontrivialAtDepth"; break;
    case TrivialityResult::Kind::UndeterminedAtDepth: j["verdict"] = "UndeterminedAtDepth"; break;
  }
  j["depth"] = result.depth;
  return j;
}

Json linear_rep_to_json(const LinearRep& rep) {
  Json mats = Json::array();
  for (const auto& m : rep.matrices) {
    Json rows = Json::array();
    for (const auto& r : m) {
      Json row = Json::array();
      for (const auto& x : r) {
        if (is_integral(x))
          row.push_back(int_to_json(x.get_num()));
        else
          row.push_back(x.get_str());
      }
      rows.push_back(row);
    }
    mats.push_back(rows);
  }
  Json rels = Json::array();
  for (const auto& r : rep.relations)
    rels.push_back(Json{{"name", r.name}, {"word", r.word.str(rep.gen_names)}});
  return Json{{"schema", kSchema},
              {"type", "linear_rep"},
              {"ring", rep.over_q ? "Q" : "Z"},
              {"dimension", rep.dimension},
              {"generators", rep.gen_names},
              {"matrices", mats},
              {"relations", rels},
              {"induced_blocks", rep.induced_blocks},
              {"base_dimension", rep.base_dimension}};
}

Json compiled_to_json(const CompiledAction& action, int depth, std::size_t budget) {
  if (depth < 0)
    throw budget_error("ClosureBudgetExceeded",
                       "lazy automata need a depth bound for export");
  const FamilyPtr& fam = action.system().codomain;
  std::map<std::string, std::size_t> ids;
  std::vector<GroupElement> states;
  std::deque<std::pair<GroupElement, int>> queue;
  auto visit = [&](const GroupElement& g, int d) {
    std::string k = g.key();
    if (ids.emplace(k, states.size()).second) {
      states.push_back(g);
      if ((states.size() + 1) * action.degree() > budget)
        throw budget_error("ClosureBudgetExceeded", "compiled export exceeded the budget");
      if (d < depth) queue.emplace_back(g, d);
    }
  };
  for (int i = 0; i < fam->num_generators(); ++i) visit(GroupElement::generator(fam, i), 0);
  while (!queue.empty()) {
    auto [g, d] = queue.front();
    queue.pop_front();
    for (unsigned long l = 0; l < action.degree(); ++l) visit(action.section(g, l), d + 1);
  }

  Json jstates = Json::array();
  for (const auto& g : states) {
    Json perm = Json::array(), sections = Json::array();
    for (unsigned long l = 0; l < action.degree(); ++l) {
      perm.push_back(action.target(g, l));
      sections.push_back(element_expression(action.section(g, l)));
    }
    jstates.push_back(Json{{"name", element_expression(g)}, {"perm", perm}, {"sections", sections}});
  }
  return Json{{"schema", kSchema},
              {"type", "compiled_automaton"},
              {"degree", action.degree()},
              {"depth", depth},
              {"states", jstates}};
}

}  // namespace ssg
