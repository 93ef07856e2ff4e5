#include "ssg/subgroup.hpp"

#include <sstream>
#include <unordered_set>

namespace ssg {

namespace {

Int checked_ui(const Int& v, const char* what) {
  if (!v.fits_ulong_p())
    throw budget_error("IndexBudget", std::string(what) + " is too large to materialise");
  return v;
}

// Canonical residue of v modulo the lattice (box representative).
IntVec z_residue(const ZLattice& lat, IntVec v) {
  for (std::size_t i = 0; i < lat.basis.size(); ++i) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), v[i].get_mpz_t(), lat.basis[i][i].get_mpz_t());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= q * lat.basis[i][j];
  }
  return v;
}

Int z_residue_index(const ZLattice& lat, const IntVec& v) {
  IntVec r = z_residue(lat, v);
  Int idx = 0;
  for (std::size_t i = 0; i < r.size(); ++i) idx = idx * lat.basis[i][i] + r[i];
  return idx;
}

// Canonical coset residue of n modulo a Heisenberg lattice (reduce a, then b,
// then the centre, by left-multiplying with basis elements).
HeisElem h_residue(const HeisLattice& lat, HeisElem n) {
  Int qa;
  mpz_fdiv_q(qa.get_mpz_t(), n.a.get_mpz_t(), lat.e1.get_mpz_t());
  n = heis_mul(heis_pow(lat.gen1(), -qa), n);
  Int qb;
  mpz_fdiv_q(qb.get_mpz_t(), n.b.get_mpz_t(), lat.e2.get_mpz_t());
  n = heis_mul(heis_pow(lat.gen2(), -qb), n);
  n.c = mod_floor(n.c, lat.e3);
  return n;
}

Int h_residue_index(const HeisLattice& lat, const HeisElem& n) {
  HeisElem r = h_residue(lat, n);
  return (r.a * lat.e2 + r.b) * lat.e3 + r.c;
}

struct HnnKey {
  Int a, b, c;  // a, b in [0, p), c in [0, p^2)
};

// Right-coset invariant of <x1^p, y1^p, t>: pull the coordinates back by
// phi^{-k}, then normalise (a, b) mod p and the centre mod p^2 with the
// collection correction a*(b - b mod p).
HnnKey hnn_key(const Family& fam, const Int& p, const GroupElement& g) {
  HeisRat q = hnn_shift(fam, g.hh, -g.tk);
  Int p2 = p * p;
  Int ab = rat_mod(q.a, p);
  Int bb = rat_mod(q.b, p);
  Int cb = rat_mod(q.c + Rat(ab) * (q.b - Rat(bb)), p2);
  return HnnKey{ab, bb, cb};
}

RatVec abelian_shifted(const Family& fam, const GroupElement& g) {
  return hnn_shift(fam, g.qv, -g.tk);
}

}  // namespace

Int SubgroupDescriptor::index() const {
  switch (family->kind) {
    case FamilyKind::Free: return Int(static_cast<unsigned long>(free_table.index()));
    case FamilyKind::SemidirectZ:
      return zsub.index() * static_cast<unsigned long>(free_table.index());
    case FamilyKind::SemidirectHeis:
      return hsub.index() * static_cast<unsigned long>(free_table.index());
    case FamilyKind::HnnHeis: return hnn_p * hnn_p * hnn_p * hnn_p;
    case FamilyKind::HnnAbelian: {
      Int idx = 1;
      for (int i = 0; i < family->kernel_rank; ++i) idx *= hnn_p;
      return idx;
    }
  }
  return 1;
}

bool SubgroupDescriptor::contains(const GroupElement& g) const {
  if (!family_equal(family, g.family))
    throw validation_error("FamilyMismatch", "membership across families");
  switch (family->kind) {
    case FamilyKind::Free: return free_table.contains(g.w);
    case FamilyKind::SemidirectZ: return free_table.contains(g.w) && zsub.contains(g.zv);
    case FamilyKind::SemidirectHeis:
      return free_table.contains(g.w) && lattice_contains(hsub, g.hn);
    case FamilyKind::HnnHeis: {
      HnnKey k = hnn_key(*family, hnn_p, g);
      return k.a == 0 && k.b == 0 && k.c == 0;
    }
    case FamilyKind::HnnAbelian: {
      RatVec v = abelian_shifted(*family, g);
      for (const auto& x : v)
        if (rat_mod(x, hnn_p) != 0) return false;
      return true;
    }
  }
  return false;
}

Int SubgroupDescriptor::coset_index(const GroupElement& g) const {
  if (!family_equal(family, g.family))
    throw validation_error("FamilyMismatch", "coset index across families");
  switch (family->kind) {
    case FamilyKind::Free: {
      int s = free_table.trace(free_table.base, free_reduce(g.w));
      return Int(static_cast<long>(s));
    }
    case FamilyKind::SemidirectZ: {
      int s = free_table.trace(free_table.base, free_reduce(g.w));
      FreeWord u_inv = free_mul(free_schreier.transversal[static_cast<std::size_t>(s)],
                                free_inverse(g.w));
      Int r = z_residue_index(zsub, family->act_z(u_inv, g.zv));
      return r * static_cast<unsigned long>(free_table.index()) + static_cast<long>(s);
    }
    case FamilyKind::SemidirectHeis: {
      int s = free_table.trace(free_table.base, free_reduce(g.w));
      FreeWord u_inv = free_mul(free_schreier.transversal[static_cast<std::size_t>(s)],
                                free_inverse(g.w));
      Int r = h_residue_index(hsub, family->act_h(u_inv, g.hn));
      return r * static_cast<unsigned long>(free_table.index()) + static_cast<long>(s);
    }
    case FamilyKind::HnnHeis: {
      HnnKey k = hnn_key(*family, hnn_p, g);
      return (k.a * hnn_p + k.b) * hnn_p * hnn_p + k.c;
    }
    case FamilyKind::HnnAbelian: {
      RatVec v = abelian_shifted(*family, g);
      Int idx = 0;
      for (const auto& x : v) idx = idx * hnn_p + rat_mod(x, hnn_p);
      return idx;
    }
  }
  return 0;
}

void SubgroupDescriptor::build_transversal() const {
  std::vector<GroupElement> reps;
  switch (family->kind) {
    case FamilyKind::Free:
      for (const auto& w : free_schreier.transversal)
        reps.push_back(GroupElement::free_elem(family, w));
      break;
    case FamilyKind::SemidirectZ:
    case FamilyKind::SemidirectHeis: {
      Int kernel_count = family->kind == FamilyKind::SemidirectZ ? zsub.index() : hsub.index();
      checked_ui(kernel_count * static_cast<unsigned long>(free_table.index()), "transversal");
      // Kernel box representatives, outer; free-part shortlex words, inner.
      std::vector<GroupElement> kernel_reps;
      if (family->kind == FamilyKind::SemidirectZ) {
        std::size_t n = zsub.basis.size();
        unsigned long total = checked_ui(zsub.index(), "kernel box").get_ui();
        for (unsigned long m = 0; m < total; ++m) {
          IntVec digits(n, 0);
          Int rem = m;
          for (std::size_t i = n; i > 0; --i) {
            digits[i - 1] = mod_floor(rem, zsub.basis[i - 1][i - 1]);
            rem /= zsub.basis[i - 1][i - 1];
          }
          kernel_reps.push_back(GroupElement::semi_z(family, digits));
        }
      } else {
        for (Int i = 0; i < hsub.e1; ++i)
          for (Int j = 0; j < hsub.e2; ++j)
            for (Int l = 0; l < hsub.e3; ++l)
              kernel_reps.push_back(GroupElement::semi_h(family, HeisElem(i, j, l)));
      }
      for (const auto& kr : kernel_reps)
        for (const auto& w : free_schreier.transversal) {
          GroupElement g = kr;
          g.w = w;
          reps.push_back(std::move(g));
        }
      break;
    }
    case FamilyKind::HnnHeis: {
      checked_ui(index(), "transversal");
      Int p2 = hnn_p * hnn_p;
      for (Int i = 0; i < hnn_p; ++i)
        for (Int j = 0; j < hnn_p; ++j)
          for (Int l = 0; l < p2; ++l)
            reps.push_back(GroupElement::hnn_h(family, HeisRat(Rat(i), Rat(j), Rat(l))));
      break;
    }
    case FamilyKind::HnnAbelian: {
      unsigned long total = checked_ui(index(), "transversal").get_ui();
      std::size_t n = static_cast<std::size_t>(family->kernel_rank);
      for (unsigned long m = 0; m < total; ++m) {
        RatVec digits(n, 0);
        Int rem = m;
        for (std::size_t i = n; i > 0; --i) {
          digits[i - 1] = Rat(mod_floor(rem, hnn_p));
          rem /= hnn_p;
        }
        reps.push_back(GroupElement::hnn_a(family, digits));
      }
      break;
    }
  }
  transversal_cache_ = std::move(reps);
}

const std::vector<GroupElement>& SubgroupDescriptor::transversal() const {
  std::call_once(transversal_once_, [this] { build_transversal(); });
  return transversal_cache_;
}

GroupElement SubgroupDescriptor::evaluate_domain_word(const FreeWord& word_over_gens) const {
  GroupElement acc = GroupElement::identity(family);
  for (int l : word_over_gens.letters) {
    const GroupElement& g = gens.at(static_cast<std::size_t>(std::abs(l) - 1));
    acc = element_mul(acc, l > 0 ? g : element_inverse(g));
  }
  return acc;
}

namespace {

std::shared_ptr<SubgroupDescriptor> base_descriptor(const FamilyPtr& fam) {
  auto d = std::make_shared<SubgroupDescriptor>();
  d->family = fam;
  return d;
}

void attach_free_part(SubgroupDescriptor& d, const CosetTable& table) {
  d.free_table = table;
  d.free_schreier = transversal_and_schreier(table);
}

}  // namespace

SubgroupPtr subgroup_free(const FamilyPtr& fam, const CosetTable& table) {
  if (fam->kind != FamilyKind::Free)
    throw validation_error("FamilyMismatch", "subgroup_free needs a free family");
  if (table.rank != fam->free_rank)
    throw validation_error("BadArity", "coset table rank mismatch");
  auto d = base_descriptor(fam);
  attach_free_part(*d, table);
  for (std::size_t i = 0; i < d->free_schreier.schreier_gens.size(); ++i) {
    d->gen_names.push_back("s" + std::to_string(i + 1));
    d->gens.push_back(GroupElement::free_elem(fam, d->free_schreier.schreier_gens[i]));
  }
  return d;
}

SubgroupPtr subgroup_semi_z(const FamilyPtr& fam, const ZLattice& kernel,
                            const CosetTable& free_part) {
  if (fam->kind != FamilyKind::SemidirectZ)
    throw validation_error("FamilyMismatch", "subgroup_semi_z needs a Z^n semidirect family");
  auto d = base_descriptor(fam);
  d->zsub = kernel;
  attach_free_part(*d, free_part);
  // The free part must normalise the kernel lattice for the pair to close.
  for (const auto& sg : d->free_schreier.schreier_gens)
    if (!(kernel.transformed(fam->act_matrix(sg)) == kernel))
      throw validation_error("NotInvariant", "free part does not preserve the kernel lattice");
  for (std::size_t i = 0; i < kernel.basis.size(); ++i) {
    d->gen_names.push_back("k" + std::to_string(i + 1));
    d->gens.push_back(GroupElement::semi_z(fam, kernel.basis[i]));
  }
  for (std::size_t i = 0; i < d->free_schreier.schreier_gens.size(); ++i) {
    d->gen_names.push_back("f" + std::to_string(i + 1));
    d->gens.push_back(GroupElement::semi_z(fam, IntVec(static_cast<std::size_t>(fam->kernel_rank), 0),
                                           d->free_schreier.schreier_gens[i]));
  }
  return d;
}

SubgroupPtr subgroup_semi_h(const FamilyPtr& fam, const HeisLattice& kernel,
                            const CosetTable& free_part) {
  if (fam->kind != FamilyKind::SemidirectHeis)
    throw validation_error("FamilyMismatch", "subgroup_semi_h needs a Heisenberg semidirect family");
  auto d = base_descriptor(fam);
  d->hsub = kernel;
  attach_free_part(*d, free_part);
  for (const auto& sg : d->free_schreier.schreier_gens)
    if (!(lattice_image(fam->act_endo(sg), kernel) == kernel))
      throw validation_error("NotInvariant", "free part does not preserve the kernel lattice");
  d->gen_names = {"n1", "n2", "n3"};
  d->gens = {GroupElement::semi_h(fam, kernel.gen1()), GroupElement::semi_h(fam, kernel.gen2()),
             GroupElement::semi_h(fam, kernel.gen3())};
  for (std::size_t i = 0; i < d->free_schreier.schreier_gens.size(); ++i) {
    d->gen_names.push_back("f" + std::to_string(i + 1));
    d->gens.push_back(GroupElement::semi_h(fam, HeisElem(), d->free_schreier.schreier_gens[i]));
  }
  return d;
}

SubgroupPtr subgroup_hnn_heis(const FamilyPtr& fam, const Int& p) {
  if (fam->kind != FamilyKind::HnnHeis)
    throw validation_error("FamilyMismatch", "subgroup_hnn_heis needs an HNN family");
  if (p < 3 || !is_prime(p) || divides(p, fam->phi.det()))
    throw validation_error("PrecondViolated", "need an odd prime p with p not dividing det(A)");
  auto d = base_descriptor(fam);
  d->free_table = CosetTable::full_group(1);
  d->free_schreier = transversal_and_schreier(d->free_table);
  d->hnn_p = p;
  d->gen_names = {"x1p", "y1p", "t"};
  d->gens = {GroupElement::hnn_h(fam, HeisRat(Rat(p), Rat(0), Rat(0))),
             GroupElement::hnn_h(fam, HeisRat(Rat(0), Rat(p), Rat(0))),
             GroupElement::hnn_h(fam, HeisRat(), 1)};
  return d;
}

SubgroupPtr subgroup_hnn_abelian(const FamilyPtr& fam, const Int& q) {
  if (fam->kind != FamilyKind::HnnAbelian)
    throw validation_error("FamilyMismatch", "subgroup_hnn_abelian needs an abelian HNN family");
  if (q < 2 || !is_prime(q) || divides(q, int_det(fam->hnn_matrix)))
    throw validation_error("BadPrime", "need a prime q with q not dividing det(M)");
  auto d = base_descriptor(fam);
  d->free_table = CosetTable::full_group(1);
  d->free_schreier = transversal_and_schreier(d->free_table);
  d->hnn_p = q;
  for (int i = 0; i < fam->kernel_rank; ++i) {
    RatVec v(static_cast<std::size_t>(fam->kernel_rank), 0);
    v[static_cast<std::size_t>(i)] = Rat(q);
    d->gen_names.push_back("qa" + std::to_string(i + 1));
    d->gens.push_back(GroupElement::hnn_a(fam, v));
  }
  d->gen_names.push_back("t");
  d->gens.push_back(GroupElement::hnn_a(fam, RatVec(static_cast<std::size_t>(fam->kernel_rank), 0), 1));
  return d;
}

bool hnn_m1_membership(const FamilyPtr& fam, const GroupElement& g, const Int& p,
                       std::size_t budget) {
  if (fam->kind != FamilyKind::HnnHeis)
    throw validation_error("FamilyMismatch", "m1 membership needs an HNN family");
  if (g.tk != 0)
    throw validation_error("PrecondViolated", "m1 membership needs t-exponent 0");
  if (p < 3 || divides(p, fam->phi.det()))
    throw validation_error("PrecondViolated", "need odd p with p not dividing det(A)");
  Int p2 = p * p;
  HeisElem state(rat_mod(g.hh.a, p2), rat_mod(g.hh.b, p2), rat_mod(g.hh.c, p2));
  std::unordered_set<std::string> seen;
  for (std::size_t step = 0; step < budget; ++step) {
    if (mod_floor(state.a, p) == 0 && mod_floor(state.b, p) == 0 && state.c == 0) return true;
    std::string k = state.a.get_str() + "." + state.b.get_str() + "." + state.c.get_str();
    if (!seen.insert(k).second) return false;  // cycle closed without hitting N1
    HeisElem next = endo_apply(fam->phi, state);
    state = HeisElem(mod_floor(next.a, p2), mod_floor(next.b, p2), mod_floor(next.c, p2));
  }
  throw budget_error("MembershipBudget", "cycle detection exceeded the step budget");
}

}  // namespace ssg
