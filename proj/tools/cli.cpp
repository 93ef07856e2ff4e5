#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ssg/certificate.hpp"
#include "ssg/constructions.hpp"
#include "ssg/dot.hpp"
#include "ssg/expr.hpp"
#include "ssg/json_io.hpp"

namespace ssg::cli {

namespace {

Json read_payload(const std::string& spec) {
  if (!spec.empty() && (spec[0] == '{' || spec[0] == '[')) return Json::parse(spec);
  std::ifstream in(spec);
  if (!in) throw validation_error("BadFile", "cannot open " + spec);
  Json j;
  in >> j;
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw validation_error("BadFile", "cannot write " + path);
  out << text;
}

void emit(const Json& j, const std::string& emit_path, bool json_mode, std::ostream& out,
          const std::string& human) {
  if (!emit_path.empty()) write_file(emit_path, j.dump(2) + "\n");
  if (json_mode)
    out << j.dump(2) << "\n";
  else
    out << human << "\n";
}

// Stock simple endomorphism of the rank-r free group: the odometer for
// rank 1, the section-at-0 endo of the derived generators of B_{r+1} above.
VirtualEndo auto_f0(int rank) {
  if (rank == 1) {
    FamilyPtr z = Family::free_group(1);
    VirtualEndo f;
    f.codomain = z;
    f.domain = subgroup_free(z, subgroup_build({FreeWord({1, 1})}, 1));
    f.apply_kind = ApplyKind::Generic;
    f.label = "odometer";
    f.images = {GroupElement::free_elem(z, FreeWord({1}))};
    return f;
  }
  AutomatonPtr aut = make_bn(rank + 1);
  DerivedGenerators der = derived_free_generators(rank + 1, aut);
  VirtualEndo f = free_ve_from_automaton(aut, der.gens);
  f.label = "b" + std::to_string(rank + 1) + "-section";
  return f;
}

std::vector<bool> parse_perm_flags(const std::string& s) {
  std::vector<bool> flags;
  for (char c : s) {
    if (c == '0')
      flags.push_back(false);
    else if (c == '1')
      flags.push_back(true);
    else
      throw validation_error("BadArity", "permutation flags must be 0 or 1 characters");
  }
  return flags;
}

std::vector<IntMat> matrices_from_json(const Json& j) {
  std::vector<IntMat> out;
  for (const auto& m : j) out.push_back(mat_from_json(m));
  return out;
}

Json claim_data_to_json(const HeisHnnResult& result) {
  Json gammas = mat_to_json(result.claim3.gammas);
  return Json{
      {"p", int_to_json(result.claim1.p)},
      {"k", int_to_json(result.claim1.k)},
      {"case", result.claim1.case_tag == Claim1Case::NonDegenerate ? "NonDegenerate"
                                                                   : "EigenvalueOne"},
      {"x1", heis_elem_to_json(result.claim1.x1)},
      {"y1", heis_elem_to_json(result.claim1.y1)},
      {"alpha_beta", Json::array({int_to_json(result.claim1.alpha_beta.first),
                                  int_to_json(result.claim1.alpha_beta.second)})},
      {"effective", heis_endo_to_json(result.claim1.effective)},
      {"gammas", gammas},
      {"alpha0", int_to_json(result.claim3.alpha0)},
      {"beta0", int_to_json(result.claim3.beta0)},
      {"u", heis_elem_to_json(result.claim3.u)},
      {"strict_divisibility", result.claim3.strict_divisibility}};
}

struct Options {
  bool json = false;
  long seed = 20250808;  // pinned default so runs are reproducible
  std::string emit;
  int exit_override = 0;  // set by verbs that report a failure they already printed
};

int dispatch(CLI::App& app, const std::vector<std::string>& args) {
  std::vector<std::string> argv_store;
  argv_store.push_back("ssg");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  app.parse(static_cast<int>(argv.size()), argv.data());
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact self-similar actions for generalized Baumslag-Solitar-type groups"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "machine-readable JSON on stdout");
  app.add_option("--seed", opt.seed, "seed for randomized sampling (pinned default)");

  Budgets budgets = default_budgets();

  // build-bn
  auto* build_bn = app.add_subcommand("build-bn", "construct the B_n automaton");
  int bn_n = 3;
  std::string bn_perms;
  build_bn->add_option("--n", bn_n, "number of states (n >= 3)")->required();
  build_bn->add_option("--perms", bn_perms, "swap flags for the q-states, e.g. 101");
  build_bn->add_option("--emit", opt.emit, "write the automaton JSON here");
  build_bn->callback([&] {
    AutomatonPtr aut = make_bn(bn_n, parse_perm_flags(bn_perms));
    emit(automaton_to_json(aut), opt.emit, opt.json, out,
         "B_" + std::to_string(bn_n) + ": " + std::to_string(aut->state_names.size()) +
             " states on the binary tree");
  });

  // derive-free
  auto* derive = app.add_subcommand("derive-free", "derived free generators of B_n");
  int df_n = 5;
  std::string df_perms;
  derive->add_option("--n", df_n)->required();
  derive->add_option("--perms", df_perms);
  derive->callback([&] {
    AutomatonPtr aut = make_bn(df_n, parse_perm_flags(df_perms));
    DerivedGenerators der = derived_free_generators(df_n, aut);
    // Measured level-1 orbit count of the generated action.
    std::vector<std::vector<int>> perms;
    for (const auto& g : der.gens) perms.push_back(word_perm(g));
    std::vector<int> root(2);
    root[0] = 0;
    root[1] = 1;
    for (const auto& p : perms)
      if (p[0] == 1) root[1] = 0;  // any swap merges the two points
    int orbits = root[1] == 0 ? 1 : 2;
    Json jg = Json::array();
    for (const auto& g : der.gens) jg.push_back(g.str());
    Json j{{"schema", "ssg/1"},
           {"type", "derived_generators"},
           {"generators", jg},
           {"freeness_warning", der.freeness_warning},
           {"level1_orbits", orbits}};
    emit(j, opt.emit, opt.json, out,
         std::to_string(der.gens.size()) + " derived generators, level-1 orbits: " +
             std::to_string(orbits));
  });

  // heis-hnn
  auto* hnn = app.add_subcommand("heis-hnn", "ascending HNN of the Heisenberg group");
  std::string hnn_endo;
  int hnn_probe_len = 0, hnn_probe_depth = 0, hnn_threads = 1;
  bool hnn_compile = false;
  hnn->add_option("--endo", hnn_endo, "HeisEndo JSON (inline or @file)")->required();
  hnn->add_flag("--compile", hnn_compile, "compile the tree action");
  hnn->add_option("--probe-len", hnn_probe_len);
  hnn->add_option("--probe-depth", hnn_probe_depth);
  hnn->add_option("--threads", hnn_threads);
  hnn->add_option("--emit", opt.emit);
  hnn->callback([&] {
    HeisEndo phi = heis_endo_from_json(read_payload(hnn_endo));
    HeisHnnResult result = build_heis_hnn(phi, budgets);
    Json j{{"schema", "ssg/1"},
           {"type", "heis_hnn"},
           {"claim_data", claim_data_to_json(result)},
           {"system", endo_system_to_json(result.system)},
           {"verified", true}};
    std::string human = "p = " + result.claim1.p.get_str() + ", k = " + result.claim1.k.get_str() +
                        ", alpha0 = " + result.claim3.alpha0.get_str() +
                        ", beta0 = " + result.claim3.beta0.get_str() + ", all relations verified";
    if (hnn_compile || hnn_probe_len > 0) {
      CompiledAction action(result.system);
      j["degree"] = action.degree();
      if (hnn_probe_len > 0) {
        ProbeResult probe =
            faithfulness_probe(action, hnn_probe_len, hnn_probe_depth, hnn_threads,
                               [&](std::size_t done, std::size_t total) {
                                 err << "probe: " << done << "/" << total << " words\n";
                               });
        j["probe"] = probe_to_json(probe);
        human += probe.witness_found ? "; probe: KernelWitness" : "; probe: NoKernelWitness";
      }
    }
    emit(j, opt.emit, opt.json, out, human);
  });

  // heis-semidirect
  auto* hsd = app.add_subcommand("heis-semidirect", "Heisenberg-by-free semidirect product");
  std::string hsd_action, hsd_f0 = "auto";
  std::string hsd_p = "3";
  hsd->add_option("--action", hsd_action, "JSON array of Heisenberg automorphisms")->required();
  hsd->add_option("--p", hsd_p, "odd prime");
  hsd->add_option("--f0", hsd_f0, "auto (default)");
  hsd->add_option("--emit", opt.emit);
  hsd->callback([&] {
    Json ja = read_payload(hsd_action);
    std::vector<HeisEndo> action;
    for (const auto& e : ja) action.push_back(heis_endo_from_json(e));
    if (hsd_f0 != "auto")
      throw validation_error("BadFlag", "only --f0 auto is supported");
    HeisSemidirectResult result =
        build_heis_semidirect(action, Int(hsd_p), auto_f0(static_cast<int>(action.size())));
    Json ju = Json::array();
    for (const auto& u : result.u) ju.push_back(heis_elem_to_json(u));
    Json j{{"schema", "ssg/1"},
           {"type", "heis_semidirect"},
           {"f1_index", int_to_json(Int(static_cast<long>(result.f1_table.index())))},
           {"u", ju},
           {"gammas", mat_to_json(result.gammas)},
           {"system", endo_system_to_json(result.system)}};
    emit(j, opt.emit, opt.json, out,
         "F1 index " + std::to_string(result.f1_table.index()) + ", two verified endomorphisms");
  });

  // split1
  auto* split = app.add_subcommand("split1", "Z^n x| F with two orbits");
  std::string split_action;
  int split_rank = 1;
  split->add_option("--rank", split_rank)->required();
  split->add_option("--action", split_action, "JSON array of GL_n(Z) matrices")->required();
  split->add_option("--emit", opt.emit);
  split->callback([&] {
    std::vector<IntMat> action = matrices_from_json(read_payload(split_action));
    EndoSystem sys = build_split1(split_rank, action, auto_f0(static_cast<int>(action.size())));
    emit(endo_system_to_json(sys), opt.emit, opt.json, out,
         "two verified endomorphisms, tree degree " + sys.tree_degree().get_str());
  });

  // abelian-hnn
  auto* ahnn = app.add_subcommand("abelian-hnn", "ascending HNN of Z^n");
  std::string ahnn_matrix, ahnn_q = "3";
  ahnn->add_option("--matrix", ahnn_matrix, "integer matrix JSON")->required();
  ahnn->add_option("--q", ahnn_q, "prime not dividing det(M)");
  ahnn->add_option("--emit", opt.emit);
  ahnn->callback([&] {
    EndoSystem sys = build_abelian_hnn(mat_from_json(read_payload(ahnn_matrix)), Int(ahnn_q));
    emit(endo_system_to_json(sys), opt.emit, opt.json, out,
         "verified endomorphism, tree degree " + sys.tree_degree().get_str());
  });

  // certificate
  auto* certc = app.add_subcommand("certificate", "verify a residual-finiteness certificate");
  std::string cert_path;
  bool cert_reduce = false, cert_split = false;
  certc->add_option("--cert", cert_path)->required();
  certc->add_flag("--reduce", cert_reduce, "run the H = K^s reduction");
  certc->add_flag("--split1", cert_split, "feed the reduction into the split construction");
  certc->add_option("--emit", opt.emit);
  certc->callback([&] {
    Certificate cert = certificate_from_json(read_payload(cert_path));
    CertReport report = certificate_verify(cert);
    Json j = cert_report_to_json(report);
    if (report.all_pass && (cert_reduce || cert_split)) {
      SemidirectData data = reduce_to_semidirect(cert);
      Json jr{{"s", int_to_json(data.s)}, {"free_rank", data.free_rank}};
      if (data.kind == CertKind::Abelian) {
        jr["h"] = zlattice_to_json(data.h_z);
        Json ja = Json::array();
        for (const auto& m : data.action_z) ja.push_back(mat_to_json(m));
        jr["action"] = ja;
      } else {
        jr["h"] = heis_lattice_to_json(data.h_h);
      }
      j["reduction"] = jr;
      if (cert_split && data.kind == CertKind::Abelian && data.free_rank > 0) {
        EndoSystem sys = build_split1(data.rank, data.action_z, auto_f0(data.free_rank));
        j["system"] = endo_system_to_json(sys);
      }
    }
    emit(j, opt.emit, opt.json, out,
         report.all_pass ? "certificate passes" : "certificate FAILS");
    if (!report.all_pass) opt.exit_override = 3;
  });

  // compile
  auto* compile = app.add_subcommand("compile", "export a compiled action to a depth bound");
  std::string compile_system;
  int compile_depth = -1;
  compile->add_option("--system", compile_system)->required();
  compile->add_option("--depth", compile_depth, "state-exploration depth bound");
  compile->add_option("--emit", opt.emit);
  compile->callback([&] {
    EndoSystem sys = endo_system_from_json(read_payload(compile_system));
    verify_system(sys);
    CompiledAction action(sys);
    Json j = compiled_to_json(action, compile_depth, budgets.closure_words);
    emit(j, opt.emit, opt.json, out,
         "degree " + std::to_string(action.degree()) + ", " +
             std::to_string(j["states"].size()) + " states to depth " +
             std::to_string(compile_depth));
  });

  // act
  auto* actc = app.add_subcommand("act", "apply an element to a vertex");
  std::string act_aut, act_system, act_element, act_vertex;
  actc->add_option("--automaton", act_aut);
  actc->add_option("--system", act_system);
  actc->add_option("--element", act_element)->required();
  actc->add_option("--vertex", act_vertex)->required();
  actc->callback([&] {
    std::string image;
    if (!act_aut.empty()) {
      AutomatonPtr aut = automaton_from_json(read_payload(act_aut));
      FreeWord w = resolve_word(parse_element(act_element), aut->state_names);
      TreeWord v = parse_tree_word(act_vertex, aut->degree);
      image = tree_word_str(act(StateWord{aut, w.letters}, v));
    } else if (!act_system.empty()) {
      EndoSystem sys = endo_system_from_json(read_payload(act_system));
      CompiledAction action(sys);
      GroupElement g = resolve_element(parse_element(act_element), family_context(sys.codomain));
      TreeWord v = parse_tree_word(act_vertex, static_cast<int>(action.degree()));
      image = tree_word_str(action.act(g, v));
    } else {
      throw validation_error("BadFlag", "act needs --automaton or --system");
    }
    if (opt.json)
      out << Json{{"schema", "ssg/1"}, {"type", "act"}, {"image", image}}.dump() << "\n";
    else
      out << image << "\n";
  });

  // portrait
  auto* port = app.add_subcommand("portrait", "portrait of an element");
  std::string port_aut, port_system, port_element, port_dot;
  int port_depth = 2;
  port->add_option("--automaton", port_aut);
  port->add_option("--system", port_system);
  port->add_option("--element", port_element)->required();
  port->add_option("--depth", port_depth);
  port->add_option("--dot", port_dot, "write a DOT rendering here");
  port->callback([&] {
    Portrait p;
    if (!port_aut.empty()) {
      AutomatonPtr aut = automaton_from_json(read_payload(port_aut));
      FreeWord w = resolve_word(parse_element(port_element), aut->state_names);
      p = portrait(StateWord{aut, w.letters}, port_depth);
    } else if (!port_system.empty()) {
      EndoSystem sys = endo_system_from_json(read_payload(port_system));
      CompiledAction action(sys);
      GroupElement g = resolve_element(parse_element(port_element), family_context(sys.codomain));
      p = action.portrait(g, port_depth, budgets.closure_words);
    } else {
      throw validation_error("BadFlag", "portrait needs --automaton or --system");
    }
    if (!port_dot.empty()) write_file(port_dot, export_dot(p));
    Json j{{"schema", "ssg/1"},
           {"type", "portrait"},
           {"depth", port_depth},
           {"nodes", p.node_count()},
           {"trivial", p.all_trivial()}};
    emit(j, opt.emit, opt.json, out,
         "portrait with " + std::to_string(p.node_count()) + " nodes; " +
             (p.all_trivial() ? "all permutations trivial" : "nontrivial"));
  });

  // probe
  auto* probe = app.add_subcommand("probe", "faithfulness probe of a compiled system");
  std::string probe_system;
  int probe_len = 3, probe_depth = 3, probe_threads = 1;
  probe->add_option("--system", probe_system)->required();
  probe->add_option("--len", probe_len);
  probe->add_option("--depth", probe_depth);
  probe->add_option("--threads", probe_threads);
  probe->add_option("--emit", opt.emit);
  probe->callback([&] {
    EndoSystem sys = endo_system_from_json(read_payload(probe_system));
    verify_system(sys);
    CompiledAction action(sys);
    ProbeResult result = faithfulness_probe(action, probe_len, probe_depth, probe_threads,
                                            [&](std::size_t done, std::size_t total) {
                                              err << "probe: " << done << "/" << total
                                                  << " words\n";
                                            });
    emit(probe_to_json(result), opt.emit, opt.json, out,
         result.witness_found ? "KernelWitness: " + result.witness_normal_form
                              : "NoKernelWitness at (len " + std::to_string(probe_len) +
                                    ", depth " + std::to_string(probe_depth) + ")");
  });

  // verify
  auto* verify = app.add_subcommand("verify", "re-run the relation checks of a system");
  std::string verify_system_path;
  verify->add_option("--system", verify_system_path)->required();
  verify->add_option("--emit", opt.emit);
  verify->callback([&] {
    EndoSystem sys = endo_system_from_json(read_payload(verify_system_path));
    Json reports = Json::array();
    bool all = true;
    for (const auto& e : sys.endos) {
      VerifyReport r = verify_well_defined(e);
      all = all && r.all_pass;
      reports.push_back(verify_report_to_json(r));
    }
    Json j{{"schema", "ssg/1"}, {"type", "system_verify"}, {"all_pass", all},
           {"endos", reports}};
    emit(j, opt.emit, opt.json, out, all ? "all relations verified" : "verification FAILED");
    if (!all) opt.exit_override = 3;
  });

  // linearize
  auto* lin = app.add_subcommand("linearize", "exact matrix representations");
  std::string lin_input;
  lin->add_option("--input", lin_input)->required();
  lin->add_option("--emit", opt.emit);
  lin->callback([&] {
    Json spec = read_payload(lin_input);
    std::string type = spec.at("type").get<std::string>();
    LinearRep rep;
    if (type == "semidirect") {
      std::vector<IntMat> action = matrices_from_json(spec.at("action"));
      std::vector<IntMat> free_images;
      if (spec.contains("free_images")) free_images = matrices_from_json(spec["free_images"]);
      rep = linearize_semidirect(spec.at("n").get<int>(), action, free_images);
    } else if (type == "abelian_hnn") {
      rep = linearize_abelian_hnn(mat_from_json(spec.at("matrix")));
    } else if (type == "induced") {
      Json base_spec = spec.at("base");
      LinearRep base = linearize_semidirect(base_spec.at("n").get<int>(),
                                            matrices_from_json(base_spec.at("action")));
      std::vector<InductionGenerator> gens;
      for (const auto& g : spec.at("generators")) {
        InductionGenerator ig;
        ig.name = g.at("name").get<std::string>();
        ig.coset_perm = g.at("perm").get<std::vector<int>>();
        for (const auto& f : g.at("factors")) {
          std::string text = f.get<std::string>();
          ig.factors.push_back(text == "1" ? FreeWord()
                                           : resolve_word(parse_element(text), base.gen_names));
        }
        gens.push_back(std::move(ig));
      }
      std::vector<LinearRep::Relation> rels;
      std::vector<std::string> gnames;
      for (const auto& g : gens) gnames.push_back(g.name);
      for (const auto& r : spec.value("relations", Json::array()))
        rels.push_back({r.at("name").get<std::string>(),
                        resolve_word(parse_element(r.at("word").get<std::string>()), gnames)});
      rep = induce_representation(base, gens, rels);
    } else {
      throw validation_error("BadJson", "unknown linearize input type " + type);
    }
    emit(linear_rep_to_json(rep), opt.emit, opt.json, out,
         "dimension " + std::to_string(rep.dimension) + " over " + (rep.over_q ? "Q" : "Z") +
             ", all relations exact");
  });

  // export
  auto* exportc = app.add_subcommand("export", "DOT export of automata and portraits");
  std::string export_aut, export_dot_path;
  exportc->add_option("--automaton", export_aut)->required();
  exportc->add_option("--dot", export_dot_path)->required();
  exportc->callback([&] {
    AutomatonPtr aut = automaton_from_json(read_payload(export_aut));
    write_file(export_dot_path, export_dot(aut));
    if (opt.json)
      out << Json{{"schema", "ssg/1"}, {"type", "export"}, {"dot", export_dot_path}}.dump()
          << "\n";
    else
      out << "wrote " << export_dot_path << "\n";
  });

  try {
    dispatch(app, args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (opt.json)
      out << Json{{"schema", "ssg/1"}, {"type", "error"}, {"code", e.code()},
                  {"message", e.what()}}
                 .dump()
          << "\n";
    return e.exit_code();
  } catch (const Json::exception& e) {
    err << "error: invalid JSON: " << e.what() << "\n";
    return 2;
  }
  return opt.exit_override;
}

}  // namespace ssg::cli
