#include "ssg/heisenberg.hpp"

#include <sstream>

namespace ssg {

std::string HeisElem::str() const {
  std::ostringstream os;
  os << "(" << a << "," << b << "," << c << ")";
  return os.str();
}

std::string HeisRat::str() const {
  std::ostringstream os;
  os << "(" << a << "," << b << "," << c << ")";
  return os.str();
}

bool HeisRat::is_integral() const {
  return ssg::is_integral(a) && ssg::is_integral(b) && ssg::is_integral(c);
}

HeisElem HeisRat::to_elem() const {
  if (!is_integral())
    throw validation_error("NotIntegral", "completion coordinates " + str() + " are not integral");
  return HeisElem(a.get_num(), b.get_num(), c.get_num());
}

HeisElem heis_mul(const HeisElem& lhs, const HeisElem& rhs) {
  return HeisElem(lhs.a + rhs.a, lhs.b + rhs.b, lhs.c + rhs.c - lhs.b * rhs.a);
}

HeisRat heis_mul(const HeisRat& lhs, const HeisRat& rhs) {
  return HeisRat(lhs.a + rhs.a, lhs.b + rhs.b, lhs.c + rhs.c - lhs.b * rhs.a);
}

HeisElem heis_inverse(const HeisElem& g) {
  return HeisElem(-g.a, -g.b, -g.c - g.a * g.b);
}

HeisRat heis_inverse(const HeisRat& g) {
  return HeisRat(-g.a, -g.b, -g.c - g.a * g.b);
}

HeisElem heis_pow(const HeisElem& g, const Int& n) {
  return HeisElem(n * g.a, n * g.b, n * g.c - g.a * g.b * choose2(n));
}

HeisRat heis_pow(const HeisRat& g, const Int& n) {
  Rat nn(n);
  return HeisRat(nn * g.a, nn * g.b, nn * g.c - g.a * g.b * Rat(choose2(n)));
}

HeisRat heis_pow(const HeisRat& g, const Rat& n) {
  return HeisRat(n * g.a, n * g.b, n * g.c - g.a * g.b * n * (n - 1) / 2);
}

HeisElem heis_comm(const HeisElem& g, const HeisElem& h) {
  return HeisElem(0, 0, g.a * h.b - h.a * g.b);
}

std::string HeisEndo::str() const {
  std::ostringstream os;
  os << "A=[[" << a1 << "," << a2 << "],[" << b1 << "," << b2 << "]], c=(" << c1 << "," << c2 << ")";
  return os.str();
}

HeisElem endo_apply(const HeisEndo& phi, const HeisElem& g) {
  HeisElem im = heis_mul(heis_pow(phi.image_x(), g.a), heis_pow(phi.image_y(), g.b));
  im.c += g.c * phi.det();
  return im;
}

HeisRat endo_apply(const HeisEndo& phi, const HeisRat& g) {
  // Same collection formula as the integral case, evaluated over Q.
  Rat xa = Rat(phi.a1) * g.a, xb = Rat(phi.b1) * g.a;
  Rat xc = Rat(phi.c1) * g.a - Rat(phi.a1 * phi.b1) * g.a * (g.a - 1) / 2;
  Rat ya = Rat(phi.a2) * g.b, yb = Rat(phi.b2) * g.b;
  Rat yc = Rat(phi.c2) * g.b - Rat(phi.a2 * phi.b2) * g.b * (g.b - 1) / 2;
  HeisRat im = heis_mul(HeisRat(xa, xb, xc), HeisRat(ya, yb, yc));
  im.c += g.c * Rat(phi.det());
  return im;
}

HeisRat endo_apply_inverse(const HeisEndo& phi, const HeisRat& g) {
  Int d = phi.det();
  if (d == 0) throw validation_error("NotInjective", "endomorphism has det 0");
  // (a, b) = A^-1 (g.a, g.b); then strip the z-part contributed by the image
  // of (a, b, 0) and divide the rest by det.
  Rat a = (Rat(phi.b2) * g.a - Rat(phi.a2) * g.b) / Rat(d);
  Rat b = (Rat(-phi.b1) * g.a + Rat(phi.a1) * g.b) / Rat(d);
  HeisRat shell = endo_apply(phi, HeisRat(a, b, Rat(0)));
  Rat c = (g.c - shell.c) / Rat(d);
  return HeisRat(a, b, c);
}

HeisEndo endo_compose(const HeisEndo& phi, const HeisEndo& psi) {
  HeisElem ix = endo_apply(phi, psi.image_x());
  HeisElem iy = endo_apply(phi, psi.image_y());
  return HeisEndo(ix.a, iy.a, ix.b, iy.b, ix.c, iy.c);
}

HeisEndo endo_pow(const HeisEndo& phi, unsigned long k) {
  HeisEndo acc;  // identity
  for (unsigned long i = 0; i < k; ++i) acc = endo_compose(acc, phi);
  return acc;
}

}  // namespace ssg
