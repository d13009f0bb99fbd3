#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tamecube {

using Point = std::vector<double>;

inline constexpr double kMembershipTol = 1e-12;

/// A face of the unit cube I^n: every coordinate is either free or pinned
/// to 0 or 1. Coordinates are 0-based.
class Face {
 public:
  static constexpr std::int8_t kFree = -1;

  Face() = default;
  /// pins[i] is kFree, 0 or 1.
  explicit Face(std::vector<std::int8_t> pins);

  static Face full(int n);
  /// The codimension-1 face {t_axis = alpha}.
  static Face facet(int n, int axis, int alpha);
  /// Parses a signature such as "0*1" (one character per coordinate).
  static Face from_signature(std::string_view sig);

  int ambient_dim() const { return static_cast<int>(pins_.size()); }
  int dim() const;
  std::int8_t pin(int axis) const { return pins_[axis]; }
  bool is_free(int axis) const { return pins_[axis] == kFree; }
  const std::vector<std::int8_t>& pins() const { return pins_; }

  bool contains(std::span<const double> p, double tol = kMembershipTol) const;
  bool is_subface_of(const Face& other) const;
  /// Intersection with another face of the same cube; nullopt if disjoint.
  std::optional<Face> intersect(const Face& other) const;
  /// Every face contained in this one, itself included.
  std::vector<Face> subfaces() const;
  /// Codimension-1 faces of this face (its boundary's maximal faces).
  std::vector<Face> boundary_facets() const;
  std::vector<int> free_axes() const;

  std::string signature() const;

  auto operator<=>(const Face&) const = default;

 private:
  std::vector<std::int8_t> pins_;
};

/// A union of faces of I^n, stored by its maximal faces. Construction
/// deduplicates and drops dominated faces; faces are kept sorted by
/// signature.
class CubicalComplex {
 public:
  CubicalComplex() = default;
  CubicalComplex(int ambient_dim, std::vector<Face> faces);

  static CubicalComplex empty(int n);
  static CubicalComplex full(int n);
  static CubicalComplex boundary(int n);
  /// The boundary tube plus top face: all facets of I^n except {t_n = 0}.
  static CubicalComplex j_complex(int n);

  int ambient_dim() const { return n_; }
  /// Largest face dimension, -1 for the empty complex.
  int dim() const;
  bool is_empty() const { return maximal_.empty(); }
  const std::vector<Face>& maximal_faces() const { return maximal_; }
  /// All faces, ordered by dimension then signature.
  std::vector<Face> all_faces() const;

  bool contains(std::span<const double> p, double tol = kMembershipTol) const;
  bool contains(const Face& f) const;
  bool is_subcomplex_of(const CubicalComplex& other) const;

  CubicalComplex intersect(const Face& f) const;
  CubicalComplex unite(const CubicalComplex& other) const;

  bool operator==(const CubicalComplex&) const = default;

 private:
  int n_ = 0;
  std::vector<Face> maximal_;
};

CubicalComplex skeleton(const CubicalComplex& k, int j);

/// Parses `full:n`, `boundary:n`, `J:n`, `empty:n`, `skeleton:<desc>:<j>`,
/// `faces:<sig>,<sig>,...`.
CubicalComplex parse_complex(std::string_view desc);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool degenerate() const { return lo == hi; }
};

struct Box {
  std::vector<Interval> sides;

  bool contains(std::span<const double> p, double tol = kMembershipTol) const;
};

/// Finite union of closed axis-aligned boxes inside I^n.
class BoxRegion {
 public:
  BoxRegion() = default;
  BoxRegion(int ambient_dim, std::vector<Box> boxes);

  int ambient_dim() const { return n_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool is_empty() const { return boxes_.empty(); }
  bool contains(std::span<const double> p, double tol = kMembershipTol) const;
  BoxRegion intersect(const Face& f) const;

 private:
  int n_ = 0;
  std::vector<Box> boxes_;
};

/// Union over maximal faces of the box that keeps pinned coordinates and
/// shrinks each free coordinate to [eps, 1 - eps].
BoxRegion chamber_region(const CubicalComplex& k, double eps);

/// The boundary of I^n minus the open core (delta, 1-delta)^{n-1} x {0} of
/// the bottom face.
BoxRegion j_delta_region(int n, double delta);

/// Replaces coordinate `axis` by alpha.
Point face_projection(std::span<const double> p, int axis, int alpha);

/// Anything the checkers can sample: a complex or a box union.
using Region = std::variant<CubicalComplex, BoxRegion>;

int ambient_dim(const Region& r);
bool contains(const Region& r, std::span<const double> p,
              double tol = kMembershipTol);
bool is_empty(const Region& r);
Region intersect(const Region& r, const Face& f);

/// R x I: every face or box gets one more free coordinate in [0, 1].
Region cylinder(const Region& r);

/// Per-axis sample coordinates: `res` equally spaced values in [0, 1]
/// merged with `extra` (values outside [0, 1] are dropped), sorted, unique.
std::vector<double> axis_samples(int res, std::span<const double> extra = {});

/// Structured samples: every point of the product grid built from
/// `coords` that lies in the region. Degenerate box sides and pinned
/// coordinates contribute their single value; box sides also contribute
/// their endpoints. Sorted and deduplicated.
std::vector<Point> grid_points(const Region& r, std::span<const double> coords);

/// Uniform random points: a random maximal face / box, then uniform free
/// coordinates.
std::vector<Point> random_points(const Region& r, int count,
                                 std::mt19937_64& rng);

}  // namespace tamecube
