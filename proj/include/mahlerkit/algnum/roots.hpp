#pragma once

#include <vector>

#include "mahlerkit/adaptive.hpp"
#include "mahlerkit/algnum/polynomial.hpp"
#include "mahlerkit/ball.hpp"

namespace mahlerkit::algnum {

inline constexpr int kMaxRootDegree = 64;

// Closed disk known to contain exactly one root of its polynomial.
struct RootDisk {
  Mpfr re;
  Mpfr im;
  Mpfr radius;

  ComplexBall ball(Precision prec) const { return ComplexBall::disk(re, im, radius, prec); }
  // |root| as a ball: |centre| widened by the radius.
  RealBall modulus(Precision prec) const;
  bool contains(const ComplexBall& z) const;
};

struct RootIsolation {
  std::vector<RootDisk> disks;
  Precision precision = 0;
};

// Certified isolation of every complex root of a squarefree polynomial.
//
// Seeds come from the companion-matrix eigenvalues and are refined by
// Newton-type simultaneous iteration (Aberth). The result is certified with
// the Weierstrass inclusion disks |z - z_i| <= d |W_i|: pairwise disjoint
// disks each hold exactly one root. On failure the working precision is
// doubled up to `cap`, after which RootIsolationFailure is raised.
RootIsolation isolate_roots(const IntPolynomial& f, Precision prec, Precision cap = Precision{1} << 16);

// True when the root in disk `index` is provably real: the mirror image of
// that disk meets no other disk, so the conjugate root must be the root
// itself.
bool certainly_real(const RootIsolation& isolation, std::size_t index);

// Rational roots of f, found exactly (candidates from certified root balls,
// confirmed by exact evaluation).
std::vector<Rational> rational_roots(const IntPolynomial& f);

}  // namespace mahlerkit::algnum
