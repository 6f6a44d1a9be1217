#pragma once

#include "gengeo/genbundle.hpp"

namespace gengeo {

// Dorfman bracket on sections of TM + T*M:
//   [[X + xi, Y + eta]] = [X, Y] + L_X eta - i_Y d xi.
// Not antisymmetric: the symmetric part is d(i_X xi + i_Y eta) terms, and
// nothing here assumes it away.
GenField dorfman_bracket(const GenField& u, const GenField& v);

// Generalized torsion of a block endomorphism:
//   N_T(u, v) = [[Tu, Tv]] - T([[Tu, v]] + [[u, Tv]]) - [[u, v]],
// the normalization that reduces to the classical Nijenhuis tensor on
// diag(J, J*) inputs when T^2 = -Id.
GenField gen_nijenhuis(const BlockEndo& t, const GenField& u, const GenField& v);

// Demonstrates that N_T is not tensorial for mixed-type structures.  For the
// probe endomorphism [[J, sharp_g], [0, J*]] applied to pure-form sections,
// scaling the first argument by a function f leaves the residue
//   N_T(f xi, eta) - f N_T(xi, eta) = -2 g(sharp xi, sharp eta) (sharp_g df + J* df),
// which this evaluates both ways at a point.
struct TensorialityProbe {
  SectionValue discrepancy;  // N_T(f xi, eta) - f N_T(xi, eta)
  SectionValue closed_form;  // -2 g(sharp xi, sharp eta) (sharp_g df + J* df)
  double gap = 0.0;          // max componentwise difference
  double magnitude = 0.0;    // max componentwise |closed_form|
};

TensorialityProbe tensoriality_probe(const MetricField& g, const EndoField& j, const Expr& f,
                                     const OneForm& xi, const OneForm& eta, const Point& p);

}  // namespace gengeo
