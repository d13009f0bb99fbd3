#pragma once

// Skeleton-wise replacement of a map on a cubical complex K by an
// eps-admissible one, through a homotopy that is constant on a subcomplex L.

#include <vector>

#include "tamecube/cubelat.hpp"
#include "tamecube/fnexpr.hpp"
#include "tamecube/tame.hpp"

namespace tamecube {

/// Coordinates on F x I for a j-face F of I^n, arranged so that
/// (dF x I) u (F x {0}) becomes J^j in I^{j+1}: s runs over the free axes
/// of F in increasing order and w = 1 - u.
struct FaceChart {
  Face face;
  /// (s, w) in I^{j+1} -> (x, u) in I^{n+1}.
  SmoothMap to_cube;
  /// (x, u) in I^{n+1} -> (s, w) in I^{j+1}.
  SmoothMap from_cube;
};

/// Throws DomainError for a 0-dimensional face (nothing to extend over).
FaceChart face_chart(const Face& f);

struct FaceStep {
  Face face;
  double sigma = 0.0;
  int attempts = 0;
  /// check_tame of the new end map on F at eps^dim(F).
  TamenessReport report;
};

struct SkeletonStep {
  int dim = 0;
  ExtensionParams params;
  std::vector<FaceStep> faces;
};

struct ReplacementTrace {
  double eps = 0.0;
  double initial_sigma = 0.0;
  double initial_width = 0.0;
  std::vector<SkeletonStep> steps;
  TamenessReport final_report;
};

struct Replacement {
  SmoothMap g;
  Homotopy h;
  ReplacementTrace trace;
};

/// Produces g eps-admissible on K and H: f ~ g with H(x, u) = f(x) on L.
/// Requires L a subcomplex of K and f eps-admissible on L. Throws
/// PreconditionError when that fails or when a face step cannot be made
/// tame within the retry budget.
Replacement admissible_replace(const SmoothMap& f, const CubicalComplex& k,
                               const CubicalComplex& l, double eps,
                               const ToleranceConfig& cfg = {});

/// Halvings of sigma tried on a face before giving up.
inline constexpr int kMaxSigmaHalvings = 8;

}  // namespace tamecube
