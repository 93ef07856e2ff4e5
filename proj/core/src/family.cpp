#include "ssg/family.hpp"

#include <sstream>

namespace ssg {

namespace {

IntMat integral_inverse(const IntMat& m) {
  RatMat inv = int_inverse_over_q(m);
  IntMat out(inv.size(), IntVec(inv.size()));
  for (std::size_t i = 0; i < inv.size(); ++i)
    for (std::size_t j = 0; j < inv.size(); ++j) {
      if (!is_integral(inv[i][j]))
        throw validation_error("NotUnimodular", "action matrix is not invertible over Z");
      out[i][j] = inv[i][j].get_num();
    }
  return out;
}

HeisEndo endo_inverse(const HeisEndo& phi) {
  if (!phi.is_automorphism())
    throw validation_error("NotUnimodular", "Heisenberg action must have det = +-1");
  Int d = phi.det();
  // Matrix part inverts over Z; the z-data solves psi(phi(x)) = x.
  Int ia1 = phi.b2 * d, ia2 = -phi.a2 * d, ib1 = -phi.b1 * d, ib2 = phi.a1 * d;
  HeisEndo psi(ia1, ia2, ib1, ib2, 0, 0);
  HeisElem rx = endo_apply(psi, phi.image_x());  // = x z^{e1} for some e1
  HeisElem ry = endo_apply(psi, phi.image_y());
  // Adding c-parts (u1, u2) to psi shifts rx.c by a1 u1 + b1 u2, ry.c by a2 u1 + b2 u2.
  Rat u1 = (Rat(phi.b2) * Rat(-rx.c) - Rat(phi.b1) * Rat(-ry.c)) / Rat(d);
  Rat u2 = (Rat(-phi.a2) * Rat(-rx.c) + Rat(phi.a1) * Rat(-ry.c)) / Rat(d);
  if (!is_integral(u1) || !is_integral(u2))
    throw verification_error("InverseBug", "automorphism inverse is not integral");
  psi.c1 = u1.get_num();
  psi.c2 = u2.get_num();
  if (!(endo_compose(psi, phi) == HeisEndo()))
    throw verification_error("InverseBug", "automorphism inverse failed the identity check");
  return psi;
}

std::vector<std::string> indexed_names(const std::string& base, int n, int start = 1) {
  std::vector<std::string> out;
  if (n == 1) {
    out.push_back(base);
    return out;
  }
  for (int i = 0; i < n; ++i) out.push_back(base + std::to_string(start + i));
  return out;
}

}  // namespace

FamilyPtr Family::free_group(int rank) {
  if (rank < 1) throw validation_error("BadArity", "free group needs rank >= 1");
  auto f = std::make_shared<Family>();
  f->kind = FamilyKind::Free;
  f->free_rank = rank;
  f->names = indexed_names("x", rank);
  return f;
}

FamilyPtr Family::semidirect_z(std::vector<IntMat> action) {
  if (action.empty()) throw validation_error("BadArity", "semidirect product needs a free part");
  auto f = std::make_shared<Family>();
  f->kind = FamilyKind::SemidirectZ;
  f->free_rank = static_cast<int>(action.size());
  f->kernel_rank = static_cast<int>(action[0].size());
  for (auto& m : action) {
    if (m.size() != static_cast<std::size_t>(f->kernel_rank))
      throw validation_error("BadArity", "action matrices must share one rank");
    f->z_action_inv.push_back(integral_inverse(m));
    f->z_action.push_back(std::move(m));
  }
  f->names = indexed_names("a", f->kernel_rank);
  auto ts = indexed_names("t", f->free_rank);
  f->names.insert(f->names.end(), ts.begin(), ts.end());
  return f;
}

FamilyPtr Family::semidirect_heis(std::vector<HeisEndo> action) {
  if (action.empty()) throw validation_error("BadArity", "semidirect product needs a free part");
  auto f = std::make_shared<Family>();
  f->kind = FamilyKind::SemidirectHeis;
  f->free_rank = static_cast<int>(action.size());
  f->kernel_rank = 2;
  for (auto& e : action) {
    f->h_action_inv.push_back(endo_inverse(e));
    f->h_action.push_back(std::move(e));
  }
  f->names = {"x", "y"};
  auto ts = indexed_names("t", f->free_rank);
  f->names.insert(f->names.end(), ts.begin(), ts.end());
  return f;
}

FamilyPtr Family::hnn_heis(const HeisEndo& phi) {
  Int d = phi.det();
  if (d == 0 || d == 1 || d == -1)
    throw validation_error("NotApplicable",
                           "ascending HNN coordinates need det(A) not in {-1,0,1}; "
                           "invertible actions belong to the semidirect family");
  auto f = std::make_shared<Family>();
  f->kind = FamilyKind::HnnHeis;
  f->free_rank = 1;
  f->kernel_rank = 2;
  f->phi = phi;
  f->names = {"x1", "y1", "t"};
  return f;
}

FamilyPtr Family::hnn_abelian(const IntMat& m) {
  if (int_det(m) == 0) throw validation_error("NotApplicable", "HNN base matrix needs det != 0");
  auto f = std::make_shared<Family>();
  f->kind = FamilyKind::HnnAbelian;
  f->free_rank = 1;
  f->kernel_rank = static_cast<int>(m.size());
  f->hnn_matrix = m;
  f->hnn_matrix_inv = int_inverse_over_q(m);
  f->names = indexed_names("a", f->kernel_rank);
  f->names.push_back("t");
  return f;
}

IntMat Family::act_matrix(const FreeWord& w) const {
  IntMat acc = int_identity(static_cast<std::size_t>(kernel_rank));
  for (int l : w.letters) {
    const IntMat& m = l > 0 ? z_action[static_cast<std::size_t>(l - 1)]
                            : z_action_inv[static_cast<std::size_t>(-l - 1)];
    acc = int_mul(acc, m);
  }
  return acc;
}

HeisEndo Family::act_endo(const FreeWord& w) const {
  HeisEndo acc;
  for (int l : w.letters) {
    const HeisEndo& e = l > 0 ? h_action[static_cast<std::size_t>(l - 1)]
                              : h_action_inv[static_cast<std::size_t>(-l - 1)];
    acc = endo_compose(acc, e);
  }
  return acc;
}

IntVec Family::act_z(const FreeWord& w, const IntVec& v) const {
  IntVec out = v;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    const IntMat& m = *it > 0 ? z_action[static_cast<std::size_t>(*it - 1)]
                              : z_action_inv[static_cast<std::size_t>(-*it - 1)];
    out = int_apply(m, out);
  }
  return out;
}

HeisElem Family::act_h(const FreeWord& w, const HeisElem& n) const {
  HeisElem out = n;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    const HeisEndo& e = *it > 0 ? h_action[static_cast<std::size_t>(*it - 1)]
                                : h_action_inv[static_cast<std::size_t>(-*it - 1)];
    out = endo_apply(e, out);
  }
  return out;
}

bool family_equal(const FamilyPtr& a, const FamilyPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case FamilyKind::Free: return a->free_rank == b->free_rank;
    case FamilyKind::SemidirectZ:
      return a->kernel_rank == b->kernel_rank && a->z_action == b->z_action;
    case FamilyKind::SemidirectHeis: return a->h_action == b->h_action;
    case FamilyKind::HnnHeis: return a->phi == b->phi;
    case FamilyKind::HnnAbelian: return a->hnn_matrix == b->hnn_matrix;
  }
  return false;
}

GroupElement GroupElement::identity(const FamilyPtr& fam) {
  GroupElement g;
  g.family = fam;
  if (fam->kind == FamilyKind::SemidirectZ) g.zv.assign(static_cast<std::size_t>(fam->kernel_rank), 0);
  if (fam->kind == FamilyKind::HnnAbelian) g.qv.assign(static_cast<std::size_t>(fam->kernel_rank), 0);
  return g;
}

GroupElement GroupElement::generator(const FamilyPtr& fam, int i) {
  if (i < 0 || i >= fam->num_generators())
    throw validation_error("UnknownGenerator", "generator index out of range");
  GroupElement g = identity(fam);
  switch (fam->kind) {
    case FamilyKind::Free:
      g.w = FreeWord::gen(i);
      break;
    case FamilyKind::SemidirectZ:
      if (i < fam->kernel_rank)
        g.zv[static_cast<std::size_t>(i)] = 1;
      else
        g.w = FreeWord::gen(i - fam->kernel_rank);
      break;
    case FamilyKind::SemidirectHeis:
      if (i == 0)
        g.hn = HeisElem(1, 0, 0);
      else if (i == 1)
        g.hn = HeisElem(0, 1, 0);
      else
        g.w = FreeWord::gen(i - 2);
      break;
    case FamilyKind::HnnHeis:
      if (i == 0)
        g.hh = HeisRat(Rat(1), Rat(0), Rat(0));
      else if (i == 1)
        g.hh = HeisRat(Rat(0), Rat(1), Rat(0));
      else
        g.tk = 1;
      break;
    case FamilyKind::HnnAbelian:
      if (i < fam->kernel_rank)
        g.qv[static_cast<std::size_t>(i)] = 1;
      else
        g.tk = 1;
      break;
  }
  return g;
}

namespace {

FreeWord checked_word(const Family& fam, FreeWord w) {
  for (int l : w.letters)
    if (l == 0 || std::abs(l) > fam.free_rank)
      throw validation_error("BadLetter", "free-part letter out of range");
  return free_reduce(w);
}

}  // namespace

GroupElement GroupElement::free_elem(const FamilyPtr& fam, FreeWord w) {
  GroupElement g = identity(fam);
  g.w = checked_word(*fam, std::move(w));
  return g;
}

GroupElement GroupElement::semi_z(const FamilyPtr& fam, IntVec v, FreeWord w) {
  GroupElement g = identity(fam);
  g.zv = std::move(v);
  g.w = checked_word(*fam, std::move(w));
  if (g.zv.size() != static_cast<std::size_t>(fam->kernel_rank))
    throw validation_error("BadArity", "kernel vector has the wrong rank");
  return g;
}

GroupElement GroupElement::semi_h(const FamilyPtr& fam, HeisElem n, FreeWord w) {
  GroupElement g = identity(fam);
  g.hn = std::move(n);
  g.w = checked_word(*fam, std::move(w));
  return g;
}

GroupElement GroupElement::hnn_h(const FamilyPtr& fam, HeisRat h, Int k) {
  GroupElement g = identity(fam);
  g.hh = std::move(h);
  g.tk = std::move(k);
  return g;
}

GroupElement GroupElement::hnn_a(const FamilyPtr& fam, RatVec v, Int k) {
  GroupElement g = identity(fam);
  g.qv = std::move(v);
  g.tk = std::move(k);
  if (g.qv.size() != static_cast<std::size_t>(fam->kernel_rank))
    throw validation_error("BadArity", "base vector has the wrong rank");
  return g;
}

HeisRat hnn_shift(const Family& fam, const HeisRat& h, const Int& k) {
  HeisRat out = h;
  if (k >= 0)
    for (Int i = 0; i < k; ++i) out = endo_apply(fam.phi, out);
  else
    for (Int i = 0; i > k; --i) out = endo_apply_inverse(fam.phi, out);
  return out;
}

RatVec hnn_shift(const Family& fam, const RatVec& v, const Int& k) {
  RatVec out = v;
  if (k >= 0)
    for (Int i = 0; i < k; ++i) out = rat_apply(to_rat(fam.hnn_matrix), out);
  else
    for (Int i = 0; i > k; --i) out = rat_apply(fam.hnn_matrix_inv, out);
  return out;
}

namespace {

void require_same_family(const GroupElement& g, const GroupElement& h) {
  if (!family_equal(g.family, h.family))
    throw validation_error("FamilyMismatch", "elements live in different families");
}

}  // namespace

GroupElement element_mul(const GroupElement& g, const GroupElement& h) {
  require_same_family(g, h);
  GroupElement out = GroupElement::identity(g.family);
  switch (g.family->kind) {
    case FamilyKind::Free:
      out.w = free_mul(g.w, h.w);
      break;
    case FamilyKind::SemidirectZ: {
      IntVec moved = g.family->act_z(g.w, h.zv);
      out.zv = g.zv;
      for (std::size_t i = 0; i < out.zv.size(); ++i) out.zv[i] += moved[i];
      out.w = free_mul(g.w, h.w);
      break;
    }
    case FamilyKind::SemidirectHeis:
      out.hn = heis_mul(g.hn, g.family->act_h(g.w, h.hn));
      out.w = free_mul(g.w, h.w);
      break;
    case FamilyKind::HnnHeis:
      out.hh = heis_mul(g.hh, hnn_shift(*g.family, h.hh, g.tk));
      out.tk = g.tk + h.tk;
      break;
    case FamilyKind::HnnAbelian: {
      RatVec moved = hnn_shift(*g.family, h.qv, g.tk);
      out.qv = g.qv;
      for (std::size_t i = 0; i < out.qv.size(); ++i) out.qv[i] += moved[i];
      out.tk = g.tk + h.tk;
      break;
    }
  }
  return out;
}

GroupElement element_inverse(const GroupElement& g) {
  GroupElement out = GroupElement::identity(g.family);
  switch (g.family->kind) {
    case FamilyKind::Free:
      out.w = free_inverse(g.w);
      break;
    case FamilyKind::SemidirectZ: {
      FreeWord wi = free_inverse(g.w);
      IntVec moved = g.family->act_z(wi, g.zv);
      for (std::size_t i = 0; i < moved.size(); ++i) out.zv[i] = -moved[i];
      out.w = wi;
      break;
    }
    case FamilyKind::SemidirectHeis: {
      FreeWord wi = free_inverse(g.w);
      out.hn = g.family->act_h(wi, heis_inverse(g.hn));
      out.w = wi;
      break;
    }
    case FamilyKind::HnnHeis:
      out.hh = hnn_shift(*g.family, heis_inverse(g.hh), -g.tk);
      out.tk = -g.tk;
      break;
    case FamilyKind::HnnAbelian: {
      RatVec neg = g.qv;
      for (auto& x : neg) x = -x;
      out.qv = hnn_shift(*g.family, neg, -g.tk);
      out.tk = -g.tk;
      break;
    }
  }
  return out;
}

GroupElement element_pow(const GroupElement& g, const Int& n) {
  if (n == 0) return GroupElement::identity(g.family);
  GroupElement base = n > 0 ? g : element_inverse(g);
  Int reps = abs(n);
  if (reps > 1000000) throw budget_error("PowerBudget", "element power exponent too large");
  GroupElement acc = GroupElement::identity(g.family);
  GroupElement sq = base;
  Int r = reps;
  while (r > 0) {
    if (mpz_odd_p(r.get_mpz_t())) acc = element_mul(acc, sq);
    r >>= 1;
    if (r > 0) sq = element_mul(sq, sq);
  }
  return acc;
}

GroupElement element_conj(const GroupElement& g, const GroupElement& by) {
  return element_mul(element_mul(by, g), element_inverse(by));
}

bool element_is_identity(const GroupElement& g) {
  switch (g.family->kind) {
    case FamilyKind::Free: return g.w.empty();
    case FamilyKind::SemidirectZ: {
      if (!g.w.empty()) return false;
      for (const auto& x : g.zv)
        if (x != 0) return false;
      return true;
    }
    case FamilyKind::SemidirectHeis: return g.w.empty() && g.hn.is_identity();
    case FamilyKind::HnnHeis: return g.tk == 0 && g.hh.is_identity();
    case FamilyKind::HnnAbelian: {
      if (g.tk != 0) return false;
      for (const auto& x : g.qv)
        if (x != 0) return false;
      return true;
    }
  }
  return false;
}

bool element_equal(const GroupElement& g, const GroupElement& h) {
  return element_is_identity(element_mul(element_inverse(g), h));
}

std::string GroupElement::str() const {
  std::ostringstream os;
  switch (family->kind) {
    case FamilyKind::Free: return w.str(family->names);
    case FamilyKind::SemidirectZ: {
      os << "(";
      for (std::size_t i = 0; i < zv.size(); ++i) os << (i ? "," : "") << zv[i];
      os << ")";
      if (!w.empty()) {
        std::vector<std::string> tnames(family->names.begin() + family->kernel_rank,
                                        family->names.end());
        os << "*" << w.str(tnames);
      }
      return os.str();
    }
    case FamilyKind::SemidirectHeis: {
      os << hn.str();
      if (!w.empty()) {
        std::vector<std::string> tnames(family->names.begin() + 2, family->names.end());
        os << "*" << w.str(tnames);
      }
      return os.str();
    }
    case FamilyKind::HnnHeis:
      os << hh.str();
      if (tk != 0) os << "*t^" << tk;
      return os.str();
    case FamilyKind::HnnAbelian: {
      os << "(";
      for (std::size_t i = 0; i < qv.size(); ++i) os << (i ? "," : "") << qv[i];
      os << ")";
      if (tk != 0) os << "*t^" << tk;
      return os.str();
    }
  }
  return "?";
}

std::string GroupElement::key() const {
  std::ostringstream os;
  switch (family->kind) {
    case FamilyKind::Free:
      os << "F";
      for (int l : w.letters) os << "." << l;
      return os.str();
    case FamilyKind::SemidirectZ:
      os << "Z";
      for (const auto& x : zv) os << "." << x;
      os << "|";
      for (int l : w.letters) os << "." << l;
      return os.str();
    case FamilyKind::SemidirectHeis:
      os << "H" << hn.a << "." << hn.b << "." << hn.c << "|";
      for (int l : w.letters) os << "." << l;
      return os.str();
    case FamilyKind::HnnHeis:
      os << "N" << hh.a << "." << hh.b << "." << hh.c << "|" << tk;
      return os.str();
    case FamilyKind::HnnAbelian:
      os << "A";
      for (const auto& x : qv) os << "." << x;
      os << "|" << tk;
      return os.str();
  }
  return os.str();
}

GroupElement evaluate_word(const FamilyPtr& fam, const FreeWord& word_over_gens) {
  GroupElement acc = GroupElement::identity(fam);
  for (int l : word_over_gens.letters) {
    GroupElement g = GroupElement::generator(fam, std::abs(l) - 1);
    acc = element_mul(acc, l > 0 ? g : element_inverse(g));
  }
  return acc;
}

}  // namespace ssg
