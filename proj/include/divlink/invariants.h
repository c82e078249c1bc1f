#pragma once

#include "divlink/diagram.h"
#include "divlink/laurent.h"

#include <vector>

namespace divlink {

std::size_t component_count(const LinkDiagram& diagram);

/// Symmetric, zero diagonal.
using LinkingMatrix = std::vector<std::vector<int>>;

struct WritheAndLinking {
  int writhe = 0;
  LinkingMatrix linking;
};

WritheAndLinking writhe_and_linking(const LinkDiagram& diagram);
WritheAndLinking writhe_and_linking(const PDCode& pd);

/// Multiplies by a unit +-t^k so the lowest exponent is 0 and the constant term is positive.
LaurentPolynomial normalize_alexander(const LaurentPolynomial& p);

/// Fox calculus on the Wirtinger presentation, normalized. Knots only.
LaurentPolynomial alexander_fox(const LinkDiagram& diagram);
LaurentPolynomial alexander_fox(const PDCode& pd);

inline constexpr std::size_t kDefaultConwayCap = 24;
inline constexpr std::size_t kDefaultJonesCap = 20;

/// Conway polynomial by skein recursion toward descending diagrams.
LaurentPolynomial conway_skein(const LinkDiagram& diagram, std::size_t cap = kDefaultConwayCap);
LaurentPolynomial conway_skein(const GaussCode& gauss, std::size_t cap = kDefaultConwayCap);

/// Substitutes z = t^(1/2) - t^(-1/2) and normalizes.
LaurentPolynomial alexander_from_conway(const LaurentPolynomial& nabla);

/// Jones polynomial from the Kauffman bracket, in powers of t^(1/2)
/// (variable SqrtT). V(unknot) = 1; the right-handed trefoil gives t + t^3 - t^4.
LaurentPolynomial jones_kauffman(const LinkDiagram& diagram, std::size_t cap = kDefaultJonesCap);
LaurentPolynomial jones_kauffman(const PDCode& pd, std::size_t cap = kDefaultJonesCap);

/// Flips every crossing of a PD code.
PDCode mirror(const PDCode& pd);

}  // namespace divlink
