#pragma once

// Smooth maps R^n -> R^m as immutable combinator trees.
//
// A SmoothMap is a shared pointer to a node; sub-maps are shared, so large
// constructions (extensions glued over many faces) form a DAG rather than
// copies. Evaluation is an exact recursion over the nodes. A node may carry
// a domain box; evaluating it outside that box throws DomainError instead of
// extrapolating.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tamecube/cubelat.hpp"
#include "tamecube/kernels.hpp"

namespace tamecube {

enum class Op : std::uint8_t {
  kConst,
  kCoord,
  kAffine,
  kSum,
  kProduct,
  kQuotient,
  kCompose,
  kFlatExp,
  kSmoothStep,
  kSmash,
  kSmashVar,
  kTuple,
  kClamp01,
  kPiecewise,
  kGlue,
};

const char* op_name(Op op);

class SmoothMap;

struct MapNode {
  Op op = Op::kConst;
  int in_dim = 0;
  int out_dim = 0;
  std::vector<SmoothMap> children;
  // kConst: the value. kAffine: row-major matrix followed by the offset.
  // kPiecewise: breakpoints.
  std::vector<double> values;
  // kCoord: coordinate (0-based). kPiecewise: split axis (0-based).
  int index = 0;
  SmashParams smash;
  // kGlue: one face of I^in_dim per child.
  std::vector<Face> faces;
  std::optional<Box> domain;
};

class SmoothMap {
 public:
  explicit SmoothMap(std::shared_ptr<const MapNode> node);

  int in_dim() const { return node_->in_dim; }
  int out_dim() const { return node_->out_dim; }
  Op op() const { return node_->op; }
  const MapNode& node() const { return *node_; }
  const std::optional<Box>& domain() const { return node_->domain; }

  /// Throws DimensionError on a wrong-sized point and DomainError outside
  /// the declared domain (tolerance kMembershipTol).
  std::vector<double> operator()(std::span<const double> p) const;
  std::vector<double> operator()(std::initializer_list<double> p) const {
    return (*this)(std::span<const double>(p.begin(), p.size()));
  }

  /// Same map with a declared domain box.
  SmoothMap restricted_to(Box domain) const;
  SmoothMap on_unit_cube() const;

 private:
  std::shared_ptr<const MapNode> node_;
};

Box unit_box(int n);

namespace maps {

SmoothMap constant(std::vector<double> value, int in_dim);
/// x -> x_k (0-based k).
SmoothMap coord(int k, int in_dim);
SmoothMap identity(int n);
/// x -> (x_{axes[0]}, x_{axes[1]}, ...).
SmoothMap select(std::vector<int> axes, int in_dim);
/// x -> A x + b, with `matrix` given row by row.
SmoothMap affine(const std::vector<std::vector<double>>& matrix,
                 std::vector<double> offset);

/// Elementwise sum/product; scalar-valued children broadcast.
SmoothMap sum(std::vector<SmoothMap> terms);
SmoothMap product(std::vector<SmoothMap> factors);
/// Elementwise quotient; a scalar denominator broadcasts. A zero
/// denominator at evaluation time is a DomainError.
SmoothMap quotient(SmoothMap numerator, SmoothMap denominator);

/// outer o inner. Requires inner.out_dim == outer.in_dim.
SmoothMap compose(SmoothMap outer, SmoothMap inner);
SmoothMap tuple(std::vector<SmoothMap> parts);

/// Elementwise primitives R^dim -> R^dim.
SmoothMap flat_exp(int dim);
SmoothMap smooth_step(int dim);
SmoothMap smash(SmashParams p, int dim);
SmoothMap clamp01(int dim);
/// (sigma, tau, t) -> smash with parameters taken from the input.
SmoothMap smash_var();

/// pieces[i] is used where breakpoints[i-1] < x_axis <= breakpoints[i].
/// Breakpoints must be strictly increasing inside (0, 1).
SmoothMap piecewise(int axis, std::vector<double> breakpoints,
                    std::vector<SmoothMap> pieces);

/// A map defined face by face on a union of faces of I^n: a point is
/// evaluated by the first face (in the given order) containing it.
SmoothMap glue(std::vector<Face> faces, std::vector<SmoothMap> pieces);

// Conveniences for building formulas.
SmoothMap scalar(double c, int in_dim);
SmoothMap scale(double c, SmoothMap f);
/// c0 + c1 * x_k
SmoothMap linear_in(int k, double c0, double c1, int in_dim);

}  // namespace maps

/// A homotopy X x I -> R^m: a map whose last input coordinate is time.
class Homotopy {
 public:
  explicit Homotopy(SmoothMap map);

  const SmoothMap& map() const { return map_; }
  int space_dim() const { return map_.in_dim() - 1; }
  int out_dim() const { return map_.out_dim(); }
  std::vector<double> operator()(std::span<const double> x, double u) const;

 private:
  SmoothMap map_;
};

/// x -> H(x, u).
SmoothMap slice(const Homotopy& h, double u);
/// (x, u) -> f(x).
Homotopy constant_homotopy(const SmoothMap& f);

enum class FdScheme { kCentral, kForward, kBackward };

/// Finite-difference partial derivative along `axis`. Central by default;
/// switches to a second-order one-sided stencil when a central step would
/// leave the declared domain box.
std::vector<double> fd_partial(const SmoothMap& f, std::span<const double> p,
                               int axis, double h = 1e-4);
std::vector<double> fd_partial(const SmoothMap& f, std::span<const double> p,
                               int axis, double h, FdScheme scheme);
/// Richardson combination (4 D(h/2) - D(h)) / 3.
std::vector<double> fd_partial_richardson(const SmoothMap& f,
                                          std::span<const double> p, int axis,
                                          double h = 1e-4);

/// Max-norm distance between two vectors of equal size.
double max_abs_diff(std::span<const double> a, std::span<const double> b);

}  // namespace tamecube
