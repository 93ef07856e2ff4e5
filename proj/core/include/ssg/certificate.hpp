#pragma once

#include <array>
#include <string>
#include <vector>

#include "ssg/constructions.hpp"
#include "ssg/lattice.hpp"

namespace ssg {

// Residual-finiteness certificate for a finite connected graph of groups with
// all vertex/edge groups of one kind (free abelian of one rank, or
// commensurable with the Heisenberg group) and finite-index edge inclusions.
// The user supplies the ambient group K, monomorphisms rho_v : G_v -> K and
// automorphisms theta_e of K; the checker verifies the intertwining equation
//   theta_e . rho_{o(e)} |_{G_e} = rho_{tau(e)} . phi_e |_{G_e}
// together with the structural side conditions.
enum class CertKind { Abelian, Heisenberg };

struct CertEdge {
  int origin = 0, target = 0;
  bool in_tree = false;

  // Abelian data: edge lattice in o(e) coordinates, phi_e row-by-row on its
  // basis (images in tau(e) coordinates), theta_e in K coordinates.
  ZLattice edge_z;
  IntMat phi_z;
  IntMat theta_z;

  // Heisenberg data: canonical edge lattice, phi_e on its three canonical
  // generators, theta_e as an automorphism of K.
  HeisLattice edge_h;
  std::array<HeisElem, 3> phi_h;
  HeisEndo theta_h;
};

struct Certificate {
  CertKind kind = CertKind::Abelian;
  int rank = 1;  // abelian rank n (Heisenberg certificates use rank = 2 silently)
  int num_vertices = 1;
  std::vector<CertEdge> edges;
  std::vector<IntMat> rho_z;     // per vertex (abelian)
  std::vector<HeisEndo> rho_h;   // per vertex (Heisenberg)
};

struct CertReportLine {
  std::string condition;
  bool pass = false;
  std::string detail;
};

struct CertReport {
  std::vector<CertReportLine> lines;
  bool all_pass = true;

  void add(const std::string& condition, bool pass, const std::string& detail = "");
};

CertReport certificate_verify(const Certificate& cert);

// Constructive reduction: D = intersection of the edge images in K, the
// minimal s with K^s <= D, H = K^s, and the action of the free group on the
// non-tree edges via the theta_e (expressed in H's basis for the abelian
// case). Requires a passing certificate.
struct SemidirectData {
  CertKind kind = CertKind::Abelian;
  int rank = 1;
  Int s{1};
  int free_rank = 0;

  ZLattice d_z, h_z;
  std::vector<IntMat> action_z;  // theta_e restricted to H, in H-basis coordinates

  HeisLattice d_h, h_h;
  std::vector<HeisEndo> action_k;  // theta_e in K coordinates (Heisenberg case)
};

SemidirectData reduce_to_semidirect(const Certificate& cert);

// Heisenberg hand-off: picks the canonical Heisenberg-isomorphic sublattice
// H1 = <h1, h2> of H, stabilises it inside the free group acting through the
// theta_e, and re-expresses the stabiliser's action in H1's basis, ready for
// build_heis_semidirect.
struct HeisActionData {
  HeisLattice h1;
  CosetTable stabilizer;                // of H1 inside the free group on the theta_e
  std::vector<FreeWord> schreier_words;
  std::vector<HeisEndo> action;         // one automorphism of H1 per Schreier generator
};

HeisActionData reduce_to_heis_action(const SemidirectData& data);

// BS(n, m) one-loop candidate certificate over K = Z (theta = the unit u).
Certificate bs_certificate(const Int& n, const Int& m, const Int& theta_unit);

}  // namespace ssg
