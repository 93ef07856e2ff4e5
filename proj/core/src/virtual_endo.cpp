#include "ssg/virtual_endo.hpp"

#include <deque>

namespace ssg {

namespace {

GroupElement generic_apply(const VirtualEndo& f, const GroupElement& g) {
  const SubgroupDescriptor& dom = *f.domain;
  GroupElement out = GroupElement::identity(f.codomain);
  std::size_t free_offset = 0;
  switch (dom.family->kind) {
    case FamilyKind::Free:
      break;
    case FamilyKind::SemidirectZ: {
      IntVec coords = dom.zsub.coordinates(g.zv);
      for (std::size_t i = 0; i < coords.size(); ++i)
        out = element_mul(out, element_pow(f.images[i], coords[i]));
      free_offset = coords.size();
      break;
    }
    case FamilyKind::SemidirectHeis: {
      auto coords = lattice_coordinates(dom.hsub, g.hn);
      for (std::size_t i = 0; i < 3; ++i)
        out = element_mul(out, element_pow(f.images[i], coords[i]));
      free_offset = 3;
      break;
    }
    default:
      throw validation_error("FamilyMismatch", "generic apply does not cover HNN domains");
  }
  FreeWord over_schreier = dom.free_schreier.rewrite(dom.free_table, g.w);
  for (int l : over_schreier.letters) {
    const GroupElement& im = f.images.at(free_offset + static_cast<std::size_t>(std::abs(l) - 1));
    out = element_mul(out, l > 0 ? im : element_inverse(im));
  }
  return out;
}

GroupElement hnn_claim3_apply(const VirtualEndo& f, const GroupElement& g) {
  const Family& fam = *f.domain->family;
  const Int& p = f.domain->hnn_p;
  Int p2 = p * p;
  // Pull the coordinate part into N1 = <x1^p, y1^p>.
  HeisRat cur = g.hh;
  int shift = 0;
  auto in_n1 = [&](const HeisRat& h) {
    if (!h.is_integral()) return false;
    HeisElem e = h.to_elem();
    return divides(p, e.a) && divides(p, e.b) && divides(p2, e.c);
  };
  while (!in_n1(cur)) {
    cur = endo_apply(fam.phi, cur);
    if (++shift > 10000)
      throw budget_error("MembershipBudget", "could not pull the element into N1");
  }
  HeisElem n = cur.to_elem();
  GroupElement fn =
      GroupElement::hnn_h(f.codomain, HeisRat(make_rat(n.a, p), make_rat(n.b, p), make_rat(n.c, p2)));
  const GroupElement& t_img = f.images[2];
  GroupElement out = element_conj(fn, element_pow(t_img, -shift));
  return element_mul(out, element_pow(t_img, g.tk));
}

GroupElement hnn_divide_apply(const VirtualEndo& f, const GroupElement& g) {
  RatVec v = g.qv;
  for (auto& x : v) x /= Rat(f.domain->hnn_p);
  return GroupElement::hnn_a(f.codomain, std::move(v), g.tk);
}

}  // namespace

GroupElement VirtualEndo::apply(const GroupElement& g) const {
  if (!domain->contains(g))
    throw validation_error("NotInDomain", "element " + g.str() + " is outside the domain");
  switch (apply_kind) {
    case ApplyKind::Generic: return generic_apply(*this, g);
    case ApplyKind::HnnHeisClaim3: return hnn_claim3_apply(*this, g);
    case ApplyKind::HnnAbelianDivide: return hnn_divide_apply(*this, g);
  }
  throw validation_error("BadApplyKind", "unknown apply kind");
}

VerifyReport verify_well_defined(const VirtualEndo& f, const std::vector<RelationCheck>& relations) {
  VerifyReport report;
  for (const auto& rel : relations) {
    GroupElement value = f.domain->evaluate_domain_word(rel.word);
    if (!element_is_identity(value))
      throw validation_error("NotInDomain",
                             "relation " + rel.name + " is not a relator; evaluates to " + value.str());
    GroupElement image = GroupElement::identity(f.codomain);
    for (int l : rel.word.letters) {
      const GroupElement& im = f.images.at(static_cast<std::size_t>(std::abs(l) - 1));
      image = element_mul(image, l > 0 ? im : element_inverse(im));
    }
    VerifyLine line;
    line.relation = rel.name;
    line.pass = element_is_identity(image);
    if (!line.pass) {
      line.image_normal_form = image.str();
      report.all_pass = false;
    }
    report.lines.push_back(std::move(line));
  }
  return report;
}

VerifyReport verify_well_defined(const VirtualEndo& f) { return verify_well_defined(f, f.relations); }

Int EndoSystem::tree_degree() const {
  Int d = 0;
  for (const auto& e : endos) d += e.domain->index();
  return d;
}

void verify_system(const EndoSystem& sys) {
  for (const auto& e : sys.endos) {
    if (e.domain->index() <= 1)
      throw verification_error("VerificationFailed",
                               "virtual endomorphism domain must be proper (index > 1)");
    VerifyReport report = verify_well_defined(e);
    if (!report.all_pass) {
      std::string detail;
      for (const auto& line : report.lines)
        if (!line.pass) detail += " " + line.relation + " -> " + line.image_normal_form + ";";
      throw verification_error("VerificationFailed", (e.label.empty() ? "endo" : e.label) +
                                                         " failed relation checks:" + detail);
    }
  }
}

std::vector<RelationCheck> semidirect_relations(const SubgroupPtr& domain) {
  const SubgroupDescriptor& d = *domain;
  std::vector<RelationCheck> rels;
  auto gen_letter = [](std::size_t idx, int sign) {
    return sign > 0 ? static_cast<int>(idx) + 1 : -(static_cast<int>(idx) + 1);
  };

  std::size_t kc = 0;
  if (d.family->kind == FamilyKind::SemidirectZ)
    kc = d.zsub.basis.size();
  else if (d.family->kind == FamilyKind::SemidirectHeis)
    kc = 3;
  else
    throw validation_error("FamilyMismatch", "semidirect_relations needs a semidirect domain");
  std::size_t fc = d.gens.size() - kc;

  // Kernel presentation.
  if (d.family->kind == FamilyKind::SemidirectZ) {
    for (std::size_t i = 0; i < kc; ++i)
      for (std::size_t j = i + 1; j < kc; ++j) {
        FreeWord w({gen_letter(i, 1), gen_letter(j, 1), gen_letter(i, -1), gen_letter(j, -1)});
        rels.push_back({"[k" + std::to_string(i + 1) + ",k" + std::to_string(j + 1) + "]", w});
      }
  } else {
    Int twist = div_exact(d.hsub.e1 * d.hsub.e2, d.hsub.e3, "kernel twist");
    FreeWord comm({gen_letter(0, -1), gen_letter(1, -1), gen_letter(0, 1), gen_letter(1, 1)});
    FreeWord w = free_mul(comm, free_pow(FreeWord({gen_letter(2, 1)}), -twist));
    rels.push_back({"[n1,n2]=n3^" + twist.get_str(), w});
    for (std::size_t i = 0; i < 2; ++i) {
      FreeWord c({gen_letter(i, 1), gen_letter(2, 1), gen_letter(i, -1), gen_letter(2, -1)});
      rels.push_back({"[n" + std::to_string(i + 1) + ",n3]", c});
    }
  }

  // Conjugation action of the free part on the kernel generators.
  for (std::size_t j = 0; j < fc; ++j) {
    const FreeWord& uj = d.free_schreier.schreier_gens[j];
    for (std::size_t i = 0; i < kc; ++i) {
      FreeWord w({gen_letter(kc + j, 1), gen_letter(i, 1), gen_letter(kc + j, -1)});
      FreeWord expr;
      if (d.family->kind == FamilyKind::SemidirectZ) {
        IntVec image = d.family->act_z(uj, d.gens[i].zv);
        IntVec coords = d.zsub.coordinates(image);
        for (std::size_t l = 0; l < coords.size(); ++l)
          expr = free_mul(expr, free_pow(FreeWord({gen_letter(l, 1)}), coords[l]));
      } else {
        HeisElem image = d.family->act_h(uj, d.gens[i].hn);
        auto coords = lattice_coordinates(d.hsub, image);
        for (std::size_t l = 0; l < 3; ++l)
          expr = free_mul(expr, free_pow(FreeWord({gen_letter(l, 1)}), coords[l]));
      }
      rels.push_back({"f" + std::to_string(j + 1) + " k" + std::to_string(i + 1) + " conj",
                      free_mul(w, free_inverse(expr))});
    }
  }
  return rels;
}

VirtualEndo compose_projection(const VirtualEndo& f0, const FamilyPtr& ambient) {
  if (f0.codomain->kind != FamilyKind::Free)
    throw validation_error("FamilyMismatch", "compose_projection needs a free-group endo");
  if (ambient->kind != FamilyKind::SemidirectZ && ambient->kind != FamilyKind::SemidirectHeis)
    throw validation_error("FamilyMismatch", "compose_projection needs a semidirect ambient family");
  if (ambient->free_rank != f0.codomain->free_rank)
    throw validation_error("FamilyMismatch",
                           "the ambient free part does not match the endo's codomain");

  SubgroupPtr dom;
  std::size_t kc;
  if (ambient->kind == FamilyKind::SemidirectZ) {
    dom = subgroup_semi_z(ambient, ZLattice::full(static_cast<std::size_t>(ambient->kernel_rank)),
                          f0.domain->free_table);
    kc = static_cast<std::size_t>(ambient->kernel_rank);
  } else {
    dom = subgroup_semi_h(ambient, HeisLattice{}, f0.domain->free_table);
    kc = 3;
  }

  VirtualEndo beta;
  beta.codomain = ambient;
  beta.domain = dom;
  beta.apply_kind = ApplyKind::Generic;
  beta.label = "beta";
  for (std::size_t i = 0; i < kc; ++i) beta.images.push_back(GroupElement::identity(ambient));
  for (const auto& img : f0.images) {
    GroupElement embedded = GroupElement::identity(ambient);
    embedded.w = img.w;
    beta.images.push_back(embedded);
  }
  beta.relations = semidirect_relations(dom);
  return beta;
}

namespace {

StateWord expand_over_gens(const std::vector<StateWord>& gens, const FreeWord& v) {
  if (gens.empty()) throw validation_error("BadArity", "no generators");
  StateWord out = StateWord::empty(gens[0].aut);
  for (int l : v.letters) {
    const StateWord& g = gens.at(static_cast<std::size_t>(std::abs(l) - 1));
    out = word_mul(out, l > 0 ? g : word_inverse(g));
  }
  return out;
}

// Shortlex search for a word in `gens` equal (as a tree action) to target.
FreeWord rewrite_in_generators(const StateWord& target, const std::vector<StateWord>& gens,
                               std::size_t budget) {
  int r = static_cast<int>(gens.size());
  std::deque<FreeWord> queue{FreeWord()};
  std::size_t tried = 0;
  while (!queue.empty()) {
    FreeWord v = queue.front();
    queue.pop_front();
    if (++tried > budget)
      throw budget_error("RewritingBudgetExceeded",
                         "no expression for " + target.str() + " within the search budget");
    StateWord candidate = expand_over_gens(gens, v);
    if (is_trivial(word_mul(word_inverse(candidate), target), TrivialityMode::Exact).is_trivial())
      return v;
    for (int g = 0; g < r; ++g)
      for (int sign : {1, -1}) {
        int letter = sign > 0 ? g + 1 : -(g + 1);
        if (!v.letters.empty() && v.letters.back() == -letter) continue;
        FreeWord next = v;
        next.letters.push_back(letter);
        queue.push_back(next);
      }
  }
  throw budget_error("RewritingBudgetExceeded", "search space exhausted");
}

}  // namespace

VirtualEndo free_ve_from_automaton(const AutomatonPtr& aut, const std::vector<StateWord>& gens,
                                   std::size_t rewriting_budget) {
  if (gens.empty()) throw validation_error("BadArity", "need at least one generator");
  for (const auto& g : gens)
    if (g.aut != aut) throw validation_error("FamilyMismatch", "generator from another automaton");

  std::vector<std::vector<int>> perms;
  for (const auto& g : gens) perms.push_back(word_perm(g));

  // Transitivity on level 1.
  std::size_t m = static_cast<std::size_t>(aut->degree);
  std::vector<bool> in_orbit(m, false);
  std::deque<int> queue{0};
  in_orbit[0] = true;
  std::size_t orbit_size = 1;
  while (!queue.empty()) {
    int p = queue.front();
    queue.pop_front();
    for (const auto& perm : perms) {
      int fwd = perm[static_cast<std::size_t>(p)];
      int bwd = 0;
      for (std::size_t i = 0; i < m; ++i)
        if (perm[i] == p) bwd = static_cast<int>(i);
      for (int q : {fwd, bwd})
        if (!in_orbit[static_cast<std::size_t>(q)]) {
          in_orbit[static_cast<std::size_t>(q)] = true;
          ++orbit_size;
          queue.push_back(q);
        }
    }
  }
  if (orbit_size != m)
    throw validation_error("NotTransitive",
                           "level-1 action has an orbit of size " + std::to_string(orbit_size) +
                               " out of " + std::to_string(m));

  CosetTable stab = stabilizer_table(perms, 0);
  FamilyPtr free_fam = Family::free_group(static_cast<int>(gens.size()));
  SubgroupPtr dom = subgroup_free(free_fam, stab);

  VirtualEndo f0;
  f0.codomain = free_fam;
  f0.domain = dom;
  f0.apply_kind = ApplyKind::Generic;
  f0.label = "section-at-0";
  for (const auto& u : dom->free_schreier.schreier_gens) {
    StateWord w = expand_over_gens(gens, u);
    StateWord s = section(w, {0});
    FreeWord img = rewrite_in_generators(s, gens, rewriting_budget);
    f0.images.push_back(GroupElement::free_elem(free_fam, img));
  }
  return f0;
}

}  // namespace ssg
