#pragma once

#include <span>
#include <vector>

#include "obstructor/local_field.hpp"
#include "obstructor/residue_ring.hpp"

namespace obstructor {

inline constexpr int kExtensionDegreeCap = 4;

struct ExtensionCatalog {
  Prime p{2};
  int degree = 1;
  std::vector<LocalField> entries;
  // False when a candidate cap cut the Krasner-bounded enumeration short.
  bool complete = true;
};

// All extensions of Q_p of the given degree up to isomorphism, unramified part first.
// Results are memoized per (p, degree, precision).
ExtensionCatalog enumerate_extensions(const Prime& p, int degree, int precision = kDefaultPrecision,
                                      int cap = kExtensionDegreeCap);

// Different exponent v_S(E'(pi)) of an Eisenstein polynomial over O_T (coefficients low to high).
int different_exponent(const FieldDescriptor& d);

// Tree search for a root in O_S of a polynomial over the residue ring; decides existence
// with the Hensel criterion. Throws InconclusiveError when the ring precision runs out.
bool polynomial_has_root(const ResidueRing& ring, std::span<const ResidueRing::Element> poly);

// Roots in O_S/pi^K of the unramified polynomial of `t_source` (one per embedding of T).
std::vector<ResidueRing::Element> unramified_roots(const ResidueRing& ring, const FieldDescriptor& t_source);

// Root test: the Eisenstein polynomial of `a` (under some embedding of its unramified part)
// has a root in b.
bool has_root_in(const FieldDescriptor& a, const LocalField& b);
bool isomorphic(const LocalField& a, const LocalField& b);

}  // namespace obstructor
