#pragma once

#include "divlink/divide.h"

#include <cstdint>
#include <string>
#include <vector>

namespace divlink {

struct TorusParams {
  int p = 2;
  int q = 3;
  int samples = 0;  // 0 picks the smallest admissible count
};

/// Chebyshev (Lissajous) divide whose link is the (p, q) torus link: for
/// d = gcd(p, q) the curves theta -> (cos(p' theta), cos(q' theta + 2 pi j / (d p')))
/// scaled into the disk, with arcs extended to the boundary, sheared by
/// x += y/64 and made generic by a seeded perturbation.
Divide torus_divide(const TorusParams& params, std::uint64_t seed = 0);

/// The fixture names accepted by `canned`.
const std::vector<std::string>& canned_names();

/// A named divide from the built-in corpus.
Divide canned(const std::string& name);

/// The ".divide" source text of a corpus fixture.
const std::string& canned_source(const std::string& name);

/// Seeded open-branch divide with endpoints on the lower boundary arc.
/// Requires 1 <= n_branches <= 8 and 2 <= max_vertices <= 40.
Divide random_divide(int n_branches, int max_vertices, std::uint64_t seed);

}  // namespace divlink
