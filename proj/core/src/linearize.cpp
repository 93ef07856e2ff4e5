#include "ssg/linearize.hpp"

namespace ssg {

RatMat LinearRep::evaluate(const FreeWord& word) const {
  RatMat acc = rat_identity(dimension);
  for (int l : word.letters) {
    const RatMat& m = matrices.at(static_cast<std::size_t>(std::abs(l) - 1));
    acc = rat_mul(acc, l > 0 ? m : rat_inverse(m));
  }
  return acc;
}

void LinearRep::verify() const {
  RatMat id = rat_identity(dimension);
  for (const auto& rel : relations)
    if (!(evaluate(rel.word) == id))
      throw verification_error("RelationFailed",
                               "relation " + rel.name + " does not evaluate to the identity");
}

std::vector<IntMat> default_free_images(int rank) {
  IntMat s{{Int(1), Int(2)}, {Int(0), Int(1)}};
  IntMat t{{Int(1), Int(0)}, {Int(2), Int(1)}};
  if (rank == 1) return {s};
  if (rank == 2) return {s, t};
  RatMat s_inv = int_inverse_over_q(s);
  std::vector<IntMat> out;
  RatMat left = rat_identity(2);
  for (int i = 0; i < rank; ++i) {
    // S^i T S^-i stay freely independent inside <S, T>.
    RatMat img = rat_mul(left, rat_mul(to_rat(t), rat_inverse(left)));
    IntMat m(2, IntVec(2));
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) m[r][c] = img[r][c].get_num();
    out.push_back(std::move(m));
    left = rat_mul(left, to_rat(s));
  }
  return out;
}

namespace {

RatMat affine_translation(std::size_t n, const IntVec& v) {
  RatMat m = rat_identity(n + 1);
  for (std::size_t i = 0; i < n; ++i) m[i][n] = Rat(v[i]);
  return m;
}

RatMat block_diag(const RatMat& a, const RatMat& b) {
  std::size_t n = a.size(), m = b.size();
  RatMat out(n + m, RatVec(n + m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = a[i][j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out[n + i][n + j] = b[i][j];
  return out;
}

RatMat gl_block(std::size_t n, const IntMat& a) {
  RatMat m = rat_identity(n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rat(a[i][j]);
  return m;
}

}  // namespace

LinearRep linearize_semidirect(int n, const std::vector<IntMat>& action,
                               const std::vector<IntMat>& free_images) {
  int r = static_cast<int>(action.size());
  std::vector<IntMat> fimg = free_images.empty() ? default_free_images(r) : free_images;
  if (static_cast<int>(fimg.size()) != r)
    throw validation_error("BadArity", "one free image per free generator");

  LinearRep rep;
  rep.over_q = false;
  rep.dimension = 2 + static_cast<std::size_t>(n) + 1;
  rep.base_dimension = rep.dimension;

  std::size_t nn = static_cast<std::size_t>(n);
  for (int i = 0; i < n; ++i) {
    IntVec unit(nn, 0);
    unit[static_cast<std::size_t>(i)] = 1;
    rep.gen_names.push_back("h" + std::to_string(i + 1));
    rep.matrices.push_back(block_diag(rat_identity(2), affine_translation(nn, unit)));
  }
  for (int j = 0; j < r; ++j) {
    rep.gen_names.push_back("f" + std::to_string(j + 1));
    rep.matrices.push_back(block_diag(to_rat(fimg[static_cast<std::size_t>(j)]),
                                      gl_block(nn, action[static_cast<std::size_t>(j)])));
  }

  auto letter = [](int idx, int sign) { return sign > 0 ? idx + 1 : -(idx + 1); };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      rep.relations.push_back({"[h" + std::to_string(i + 1) + ",h" + std::to_string(j + 1) + "]",
                               FreeWord({letter(i, 1), letter(j, 1), letter(i, -1), letter(j, -1)})});
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < n; ++i) {
      FreeWord w({letter(n + j, 1), letter(i, 1), letter(n + j, -1)});
      FreeWord expr;
      for (int l = 0; l < n; ++l)
        expr = free_mul(expr,
                        free_pow(FreeWord({letter(l, 1)}),
                                 action[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)]
                                       [static_cast<std::size_t>(i)]));
      rep.relations.push_back(
          {"f" + std::to_string(j + 1) + " h" + std::to_string(i + 1) + " conj",
           free_mul(w, free_inverse(expr))});
    }
  rep.verify();
  return rep;
}

LinearRep induce_representation(const LinearRep& base, const std::vector<InductionGenerator>& gens,
                                const std::vector<LinearRep::Relation>& relations) {
  if (gens.empty()) throw validation_error("BadArity", "no generators to induce");
  std::size_t q = gens[0].coset_perm.size();
  std::size_t d = base.dimension;

  LinearRep rep;
  rep.over_q = base.over_q;
  rep.dimension = q * d;
  rep.induced_blocks = q;
  rep.base_dimension = d;
  for (const auto& g : gens) {
    if (g.coset_perm.size() != q || g.factors.size() != q)
      throw validation_error("BadArity", "induction data sizes disagree");
    RatMat m(q * d, RatVec(q * d, 0));
    for (std::size_t j = 0; j < q; ++j) {
      RatMat block = base.evaluate(g.factors[j]);
      std::size_t col = static_cast<std::size_t>(g.coset_perm[j]);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) m[j * d + a][col * d + b] = block[a][b];
    }
    rep.gen_names.push_back(g.name);
    rep.matrices.push_back(std::move(m));
  }
  rep.relations = relations;
  rep.verify();
  return rep;
}

LinearRep linearize_abelian_hnn(const IntMat& m) {
  std::size_t n = m.size();
  if (int_det(m) == 0) throw validation_error("NotApplicable", "need det(M) != 0");
  LinearRep rep;
  rep.over_q = true;
  rep.dimension = n + 1;
  rep.base_dimension = rep.dimension;
  for (std::size_t i = 0; i < n; ++i) {
    IntVec unit(n, 0);
    unit[i] = 1;
    rep.gen_names.push_back("a" + std::to_string(i + 1));
    rep.matrices.push_back(affine_translation(n, unit));
  }
  rep.gen_names.push_back("t");
  rep.matrices.push_back(gl_block(n, m));

  auto letter = [](std::size_t idx, int sign) {
    return sign > 0 ? static_cast<int>(idx) + 1 : -(static_cast<int>(idx) + 1);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      rep.relations.push_back({"[a" + std::to_string(i + 1) + ",a" + std::to_string(j + 1) + "]",
                               FreeWord({letter(i, 1), letter(j, 1), letter(i, -1), letter(j, -1)})});
  for (std::size_t i = 0; i < n; ++i) {
    FreeWord w({letter(n, 1), letter(i, 1), letter(n, -1)});
    FreeWord expr;
    for (std::size_t l = 0; l < n; ++l)
      expr = free_mul(expr, free_pow(FreeWord({letter(l, 1)}), m[l][i]));
    rep.relations.push_back({"t a" + std::to_string(i + 1) + " t^-1 relation",
                             free_mul(w, free_inverse(expr))});
  }
  rep.verify();
  return rep;
}

}  // namespace ssg
