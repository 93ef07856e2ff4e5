#include "ssg/certificate.hpp"

#include <deque>

namespace ssg {

void CertReport::add(const std::string& condition, bool pass, const std::string& detail) {
  lines.push_back({condition, pass, detail});
  if (!pass) all_pass = false;
}

namespace {

bool graph_connected(const Certificate& cert, bool tree_only) {
  if (cert.num_vertices <= 0) return false;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(cert.num_vertices));
  int edge_count = 0;
  for (const auto& e : cert.edges) {
    if (tree_only && !e.in_tree) continue;
    adj[static_cast<std::size_t>(e.origin)].push_back(e.target);
    adj[static_cast<std::size_t>(e.target)].push_back(e.origin);
    ++edge_count;
  }
  if (tree_only && edge_count != cert.num_vertices - 1) return false;
  std::vector<bool> seen(static_cast<std::size_t>(cert.num_vertices), false);
  std::deque<int> queue{0};
  seen[0] = true;
  int reached = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj[static_cast<std::size_t>(v)])
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        ++reached;
        queue.push_back(w);
      }
  }
  return reached == cert.num_vertices;
}

ZLattice abelian_edge_in_k(const Certificate& cert, const CertEdge& e) {
  IntMat rows;
  for (const auto& b : e.edge_z.basis)
    rows.push_back(int_apply(cert.rho_z[static_cast<std::size_t>(e.origin)], b));
  return ZLattice::from_generators(static_cast<std::size_t>(cert.rank), rows);
}

HeisLattice heis_edge_in_k(const Certificate& cert, const CertEdge& e) {
  const HeisEndo& rho = cert.rho_h[static_cast<std::size_t>(e.origin)];
  return lattice_canonicalize({endo_apply(rho, e.edge_h.gen1()), endo_apply(rho, e.edge_h.gen2()),
                               endo_apply(rho, e.edge_h.gen3())});
}

}  // namespace

CertReport certificate_verify(const Certificate& cert) {
  CertReport report;
  report.add("graph connected", graph_connected(cert, false));
  report.add("spanning tree", graph_connected(cert, true));

  bool vertices_ok = true;
  std::string vdetail;
  if (cert.kind == CertKind::Abelian) {
    if (static_cast<int>(cert.rho_z.size()) != cert.num_vertices) {
      vertices_ok = false;
      vdetail = "wrong number of monomorphisms";
    } else {
      for (std::size_t v = 0; v < cert.rho_z.size(); ++v)
        if (int_det(cert.rho_z[v]) == 0) {
          vertices_ok = false;
          vdetail = "rho_" + std::to_string(v) + " is not injective";
        }
    }
  } else {
    if (static_cast<int>(cert.rho_h.size()) != cert.num_vertices) {
      vertices_ok = false;
      vdetail = "wrong number of monomorphisms";
    } else {
      for (std::size_t v = 0; v < cert.rho_h.size(); ++v)
        if (cert.rho_h[v].det() == 0) {
          vertices_ok = false;
          vdetail = "rho_" + std::to_string(v) + " is not injective";
        }
    }
  }
  report.add("monomorphisms rho_v injective with finite-index image", vertices_ok, vdetail);

  for (std::size_t i = 0; i < cert.edges.size(); ++i) {
    const CertEdge& e = cert.edges[i];
    std::string tag = "edge " + std::to_string(i);
    if (e.origin < 0 || e.origin >= cert.num_vertices || e.target < 0 ||
        e.target >= cert.num_vertices) {
      report.add(tag + " endpoints", false, "vertex out of range");
      continue;
    }

    if (cert.kind == CertKind::Abelian) {
      bool proper_in = e.edge_z.rank() == static_cast<std::size_t>(cert.rank) && e.edge_z.index() > 1;
      report.add(tag + " G_e proper finite-index in G_o(e)", proper_in,
                 "index " + e.edge_z.index().get_str());
      bool phi_inj = true;
      Int image_index = 0;
      try {
        ZLattice img = ZLattice::from_generators(static_cast<std::size_t>(cert.rank), e.phi_z);
        image_index = img.index();
      } catch (const Error&) {
        phi_inj = false;
      }
      report.add(tag + " phi_e injective with proper finite-index image", phi_inj && image_index > 1,
                 phi_inj ? "index " + image_index.get_str() : "rank-deficient image");
      Int tdet = int_det(e.theta_z);
      report.add(tag + " theta_e invertible over Z", tdet == 1 || tdet == -1,
                 "det " + tdet.get_str());
      if (!(phi_inj && (tdet == 1 || tdet == -1))) continue;

      bool intertwine = true;
      std::string where;
      for (std::size_t b = 0; b < e.edge_z.basis.size(); ++b) {
        IntVec lhs = int_apply(e.theta_z,
                               int_apply(cert.rho_z[static_cast<std::size_t>(e.origin)],
                                         e.edge_z.basis[b]));
        IntVec rhs = int_apply(cert.rho_z[static_cast<std::size_t>(e.target)], e.phi_z[b]);
        if (lhs != rhs) {
          intertwine = false;
          where = "basis vector " + std::to_string(b);
          break;
        }
      }
      report.add(tag + " intertwining theta_e rho_o = rho_tau phi_e", intertwine, where);
    } else {
      bool proper_in = e.edge_h.index() > 1;
      report.add(tag + " G_e proper finite-index in G_o(e)", proper_in,
                 "index " + e.edge_h.index().get_str());
      // phi_e must respect the edge group's presentation.
      Int twist = div_exact(e.edge_h.e1 * e.edge_h.e2, e.edge_h.e3, "edge twist");
      HeisElem comm = heis_comm(e.phi_h[0], e.phi_h[1]);
      bool phi_hom = e.phi_h[2].a == 0 && e.phi_h[2].b == 0 &&
                     comm == heis_pow(e.phi_h[2], twist);
      bool phi_inj = true;
      Int image_index = 0;
      try {
        HeisLattice img = lattice_canonicalize({e.phi_h[0], e.phi_h[1], e.phi_h[2]});
        image_index = img.index();
      } catch (const Error&) {
        phi_inj = false;
      }
      report.add(tag + " phi_e homomorphism, injective, proper image",
                 phi_hom && phi_inj && image_index > 1,
                 !phi_hom ? "presentation not respected" : "index " + image_index.get_str());
      Int tdet = e.theta_h.det();
      report.add(tag + " theta_e invertible", tdet == 1 || tdet == -1, "det " + tdet.get_str());
      if (!(phi_hom && phi_inj && (tdet == 1 || tdet == -1))) continue;

      bool intertwine = true;
      std::string where;
      const HeisEndo& rho_o = cert.rho_h[static_cast<std::size_t>(e.origin)];
      const HeisEndo& rho_t = cert.rho_h[static_cast<std::size_t>(e.target)];
      HeisElem basis[3] = {e.edge_h.gen1(), e.edge_h.gen2(), e.edge_h.gen3()};
      for (int b = 0; b < 3; ++b) {
        HeisElem lhs = endo_apply(e.theta_h, endo_apply(rho_o, basis[b]));
        HeisElem rhs = endo_apply(rho_t, e.phi_h[static_cast<std::size_t>(b)]);
        if (!(lhs == rhs)) {
          intertwine = false;
          where = "generator " + std::to_string(b + 1);
          break;
        }
      }
      report.add(tag + " intertwining theta_e rho_o = rho_tau phi_e", intertwine, where);
    }
  }
  return report;
}

SemidirectData reduce_to_semidirect(const Certificate& cert) {
  CertReport report = certificate_verify(cert);
  if (!report.all_pass) {
    std::string detail;
    for (const auto& line : report.lines)
      if (!line.pass) detail += " " + line.condition + ";";
    throw verification_error("CertificateFailed", "certificate does not pass:" + detail);
  }

  SemidirectData out;
  out.kind = cert.kind;
  out.rank = cert.kind == CertKind::Abelian ? cert.rank : 2;

  if (cert.kind == CertKind::Abelian) {
    ZLattice d = abelian_edge_in_k(cert, cert.edges[0]);
    for (std::size_t i = 1; i < cert.edges.size(); ++i)
      d = lattice_intersect(d, abelian_edge_in_k(cert, cert.edges[i]));
    out.d_z = d;
    // Minimal positive s with s Z^n <= D.
    bool found = false;
    Int bound = d.index() + 1;
    for (Int s = 1; s <= bound && !found; ++s) {
      bool inside = true;
      for (int i = 0; i < cert.rank && inside; ++i) {
        IntVec unit(static_cast<std::size_t>(cert.rank), 0);
        unit[static_cast<std::size_t>(i)] = s;
        inside = d.contains(unit);
      }
      if (inside) {
        out.s = s;
        found = true;
      }
    }
    if (!found) throw budget_error("SearchExhausted", "no exponent s with K^s <= D");
    out.h_z = ZLattice::scaled(static_cast<std::size_t>(cert.rank), out.s);

    RatMat basis_cols(static_cast<std::size_t>(cert.rank), RatVec(static_cast<std::size_t>(cert.rank)));
    for (int i = 0; i < cert.rank; ++i)
      for (int j = 0; j < cert.rank; ++j)
        basis_cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            Rat(out.h_z.basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
    RatMat basis_inv = rat_inverse(basis_cols);
    for (const auto& e : cert.edges) {
      if (e.in_tree) continue;
      if (!(out.h_z.transformed(e.theta_z) == out.h_z))
        throw verification_error("VerificationFailed", "H = K^s is not theta_e-invariant");
      // theta in H-basis coordinates: B^{-1} theta B.
      RatMat conj = rat_mul(basis_inv, rat_mul(to_rat(e.theta_z), basis_cols));
      IntMat m(static_cast<std::size_t>(cert.rank), IntVec(static_cast<std::size_t>(cert.rank)));
      for (int i = 0; i < cert.rank; ++i)
        for (int j = 0; j < cert.rank; ++j) {
          const Rat& x = conj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          if (!is_integral(x))
            throw verification_error("VerificationFailed", "restricted action is not integral");
          m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = x.get_num();
        }
      out.action_z.push_back(std::move(m));
      ++out.free_rank;
    }
  } else {
    HeisLattice d = heis_edge_in_k(cert, cert.edges[0]);
    for (std::size_t i = 1; i < cert.edges.size(); ++i)
      d = lattice_intersect(d, heis_edge_in_k(cert, cert.edges[i]));
    out.d_h = d;
    HeisLattice full;  // the whole group
    bool found = false;
    Int bound = 2 * d.index() + 1;
    for (Int s = 1; s <= bound && !found; ++s) {
      HeisLattice ks = lattice_power_subgroup(full, s);
      if (lattice_contains(d, ks.gen1()) && lattice_contains(d, ks.gen2()) &&
          lattice_contains(d, ks.gen3())) {
        out.s = s;
        out.h_h = ks;
        found = true;
      }
    }
    if (!found) throw budget_error("SearchExhausted", "no exponent s with K^s <= D");
    for (const auto& e : cert.edges) {
      if (e.in_tree) continue;
      if (!(lattice_image(e.theta_h, out.h_h) == out.h_h))
        throw verification_error("VerificationFailed", "H = K^s is not theta_e-invariant");
      out.action_k.push_back(e.theta_h);
      ++out.free_rank;
    }
  }
  return out;
}

HeisActionData reduce_to_heis_action(const SemidirectData& data) {
  if (data.kind != CertKind::Heisenberg)
    throw validation_error("FamilyMismatch", "Heisenberg hand-off needs a Heisenberg reduction");
  if (data.free_rank == 0)
    throw validation_error("BadArity", "degenerate free part: nothing acts");

  HeisActionData out;
  // Canonical Heisenberg-isomorphic sublattice of H: drop the surplus centre.
  out.h1 = lattice_canonicalize({data.h_h.gen1(), data.h_h.gen2()});

  FamilyPtr fam = Family::semidirect_heis(data.action_k);
  out.stabilizer = heis_lattice_stabilizer(fam, out.h1);
  SchreierData schreier = transversal_and_schreier(out.stabilizer);
  out.schreier_words = schreier.schreier_gens;

  HeisBasis basis = HeisBasis::from_pair(out.h1.gen1(), out.h1.gen2());
  for (const auto& w : out.schreier_words)
    out.action.push_back(basis.endo_in_basis(fam->act_endo(w)));
  return out;
}

Certificate bs_certificate(const Int& n, const Int& m, const Int& theta_unit) {
  Certificate cert;
  cert.kind = CertKind::Abelian;
  cert.rank = 1;
  cert.num_vertices = 1;
  cert.rho_z = {int_identity(1)};
  CertEdge e;
  e.origin = e.target = 0;
  e.in_tree = false;
  e.edge_z = ZLattice{IntMat{{n}}};
  e.phi_z = IntMat{{m}};
  e.theta_z = IntMat{{theta_unit}};
  cert.edges.push_back(std::move(e));
  return cert;
}

}  // namespace ssg
