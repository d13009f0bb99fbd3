#include "tamecube/fnexpr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/container/small_vector.hpp>

#include "tamecube/errors.hpp"

namespace tamecube {

namespace {

using Vec = boost::container::small_vector<double, 8>;

std::string describe_point(std::span<const double> p) {
  std::ostringstream s;
  s << '(';
  for (std::size_t i = 0; i < p.size(); ++i) s << (i ? ", " : "") << p[i];
  s << ')';
  return s.str();
}

void check_domain(const MapNode& n, std::span<const double> in) {
  if (n.domain && !n.domain->contains(in, kMembershipTol)) {
    throw DomainError(std::string(op_name(n.op)) + " evaluated outside its domain at " +
                      describe_point(in));
  }
}

void eval_node(const MapNode& n, std::span<const double> in, Vec& out);

void eval_child(const SmoothMap& c, std::span<const double> in, Vec& out) {
  eval_node(c.node(), in, out);
}

// Smash parameters computed from other coordinates can land an ulp outside
// the admissible range; snap those back before evaluating.
double smash_from_input(double sigma, double tau, double t) {
  constexpr double kSlack = 1e-12;
  if (sigma < 0.0 && sigma > -kSlack) sigma = 0.0;
  if (tau > 0.5 && tau < 0.5 + kSlack) tau = 0.5;
  if (!(sigma >= 0.0 && sigma < tau && tau <= 0.5)) {
    std::ostringstream msg;
    msg << "variable smash parameters out of range: sigma=" << sigma
        << " tau=" << tau;
    throw DomainError(msg.str());
  }
  return smash_unchecked(sigma, tau, t);
}

void eval_node(const MapNode& n, std::span<const double> in, Vec& out) {
  check_domain(n, in);
  out.resize(n.out_dim);
  switch (n.op) {
    case Op::kConst:
      std::copy(n.values.begin(), n.values.end(), out.begin());
      return;
    case Op::kCoord:
      out[0] = in[n.index];
      return;
    case Op::kAffine: {
      const int rows = n.out_dim;
      const int cols = n.in_dim;
      for (int r = 0; r < rows; ++r) {
        double acc = 0.0;
        for (int c = 0; c < cols; ++c) acc += n.values[r * cols + c] * in[c];
        out[r] = acc + n.values[rows * cols + r];
      }
      return;
    }
    case Op::kSum:
    case Op::kProduct: {
      const bool is_sum = n.op == Op::kSum;
      std::fill(out.begin(), out.end(), is_sum ? 0.0 : 1.0);
      Vec tmp;
      for (const auto& c : n.children) {
        eval_child(c, in, tmp);
        for (int i = 0; i < n.out_dim; ++i) {
          const double v = tmp.size() == 1 ? tmp[0] : tmp[i];
          if (is_sum) {
            out[i] += v;
          } else {
            out[i] *= v;
          }
        }
      }
      return;
    }
    case Op::kQuotient: {
      Vec num, den;
      eval_child(n.children[0], in, num);
      eval_child(n.children[1], in, den);
      for (int i = 0; i < n.out_dim; ++i) {
        const double d = den.size() == 1 ? den[0] : den[i];
        if (d == 0.0) {
          throw DomainError("division by zero at " + describe_point(in));
        }
        out[i] = num[i] / d;
      }
      return;
    }
    case Op::kCompose: {
      Vec mid;
      eval_child(n.children[1], in, mid);
      eval_child(n.children[0], std::span<const double>(mid.data(), mid.size()), out);
      return;
    }
    case Op::kFlatExp:
      for (int i = 0; i < n.out_dim; ++i) out[i] = flat_exp(in[i]);
      return;
    case Op::kSmoothStep:
      for (int i = 0; i < n.out_dim; ++i) out[i] = smooth_step(in[i]);
      return;
    case Op::kSmash:
      for (int i = 0; i < n.out_dim; ++i) {
        out[i] = smash_unchecked(n.smash.sigma, n.smash.tau, in[i]);
      }
      return;
    case Op::kClamp01:
      for (int i = 0; i < n.out_dim; ++i) out[i] = std::clamp(in[i], 0.0, 1.0);
      return;
    case Op::kSmashVar:
      out[0] = smash_from_input(in[0], in[1], in[2]);
      return;
    case Op::kTuple: {
      Vec tmp;
      int k = 0;
      for (const auto& c : n.children) {
        eval_child(c, in, tmp);
        for (double v : tmp) out[k++] = v;
      }
      return;
    }
    case Op::kPiecewise: {
      const double x = in[n.index];
      std::size_t piece = 0;
      while (piece < n.values.size() && x > n.values[piece]) ++piece;
      eval_child(n.children[piece], in, out);
      return;
    }
    case Op::kGlue:
      for (std::size_t i = 0; i < n.faces.size(); ++i) {
        if (n.faces[i].contains(in, kMembershipTol)) {
          eval_child(n.children[i], in, out);
          return;
        }
      }
      throw DomainError("glued map evaluated off its faces at " + describe_point(in));
  }
}

std::shared_ptr<MapNode> make_node(Op op, int in_dim, int out_dim) {
  auto n = std::make_shared<MapNode>();
  n->op = op;
  n->in_dim = in_dim;
  n->out_dim = out_dim;
  return n;
}

void require_positive(int d, const char* what) {
  if (d < 1) {
    throw DimensionError(std::string(what) + ": dimension must be >= 1, got " +
                         std::to_string(d));
  }
}

void require_same_in(const std::vector<SmoothMap>& xs, const char* what) {
  if (xs.empty()) throw DimensionError(std::string(what) + " needs at least one child");
  for (const auto& x : xs) {
    if (x.in_dim() != xs.front().in_dim()) {
      throw DimensionError(std::string(what) + ": children disagree on input dimension (" +
                           std::to_string(xs.front().in_dim()) + " vs " +
                           std::to_string(x.in_dim()) + ")");
    }
  }
}

int broadcast_dim(const std::vector<SmoothMap>& xs, const char* what) {
  int d = 1;
  for (const auto& x : xs) d = std::max(d, x.out_dim());
  for (const auto& x : xs) {
    if (x.out_dim() != 1 && x.out_dim() != d) {
      throw DimensionError(std::string(what) + ": output dimensions " +
                           std::to_string(x.out_dim()) + " and " + std::to_string(d) +
                           " do not broadcast");
    }
  }
  return d;
}

SmoothMap elementwise(Op op, int dim) {
  require_positive(dim, op_name(op));
  return SmoothMap(make_node(op, dim, dim));
}

}  // namespace

const char* op_name(Op op) {
  switch (op) {
    case Op::kConst: return "const";
    case Op::kCoord: return "coord";
    case Op::kAffine: return "affine";
    case Op::kSum: return "sum";
    case Op::kProduct: return "prod";
    case Op::kQuotient: return "div";
    case Op::kCompose: return "compose";
    case Op::kFlatExp: return "gamma";
    case Op::kSmoothStep: return "lambda";
    case Op::kSmash: return "smash";
    case Op::kSmashVar: return "smashv";
    case Op::kTuple: return "tuple";
    case Op::kClamp01: return "clamp01";
    case Op::kPiecewise: return "piece";
    case Op::kGlue: return "glue";
  }
  return "?";
}

SmoothMap::SmoothMap(std::shared_ptr<const MapNode> node) : node_(std::move(node)) {
  if (!node_) throw DomainError("null map node");
}

std::vector<double> SmoothMap::operator()(std::span<const double> p) const {
  if (static_cast<int>(p.size()) != in_dim()) {
    throw DimensionError("map expects a point of dimension " + std::to_string(in_dim()) +
                         ", got " + std::to_string(p.size()));
  }
  Vec out;
  eval_node(*node_, p, out);
  return {out.begin(), out.end()};
}

SmoothMap SmoothMap::restricted_to(Box domain) const {
  if (static_cast<int>(domain.sides.size()) != in_dim()) {
    throw DimensionError("domain box dimension does not match map input dimension");
  }
  auto n = std::make_shared<MapNode>(*node_);
  n->domain = std::move(domain);
  return SmoothMap(std::move(n));
}

SmoothMap SmoothMap::on_unit_cube() const { return restricted_to(unit_box(in_dim())); }

Box unit_box(int n) { return Box{std::vector<Interval>(n, Interval{0.0, 1.0})}; }

namespace maps {

SmoothMap constant(std::vector<double> value, int in_dim) {
  if (in_dim < 0) throw DimensionError("negative input dimension");
  if (value.empty()) throw DimensionError("constant needs at least one component");
  auto n = make_node(Op::kConst, in_dim, static_cast<int>(value.size()));
  n->values = std::move(value);
  return SmoothMap(std::move(n));
}

SmoothMap coord(int k, int in_dim) {
  if (k < 0 || k >= in_dim) {
    throw DimensionError("coordinate " + std::to_string(k + 1) +
                         " out of range for input dimension " + std::to_string(in_dim));
  }
  auto n = make_node(Op::kCoord, in_dim, 1);
  n->index = k;
  return SmoothMap(std::move(n));
}

SmoothMap identity(int n) {
  std::vector<int> axes(n);
  for (int i = 0; i < n; ++i) axes[i] = i;
  return select(std::move(axes), n);
}

SmoothMap select(std::vector<int> axes, int in_dim) {
  std::vector<std::vector<double>> m;
  for (int a : axes) {
    if (a < 0 || a >= in_dim) throw DimensionError("selected axis out of range");
    std::vector<double> row(in_dim, 0.0);
    row[a] = 1.0;
    m.push_back(std::move(row));
  }
  return affine(m, std::vector<double>(axes.size(), 0.0));
}

SmoothMap affine(const std::vector<std::vector<double>>& matrix,
                 std::vector<double> offset) {
  if (matrix.empty()) throw DimensionError("affine map needs at least one row");
  const int rows = static_cast<int>(matrix.size());
  const int cols = static_cast<int>(matrix.front().size());
  require_positive(cols, "affine");
  if (static_cast<int>(offset.size()) != rows) {
    throw DimensionError("affine offset has " + std::to_string(offset.size()) +
                         " entries for " + std::to_string(rows) + " rows");
  }
  auto n = make_node(Op::kAffine, cols, rows);
  n->values.reserve(rows * cols + rows);
  for (const auto& row : matrix) {
    if (static_cast<int>(row.size()) != cols) throw DimensionError("ragged affine matrix");
    n->values.insert(n->values.end(), row.begin(), row.end());
  }
  n->values.insert(n->values.end(), offset.begin(), offset.end());
  return SmoothMap(std::move(n));
}

SmoothMap sum(std::vector<SmoothMap> terms) {
  require_same_in(terms, "sum");
  if (terms.size() == 1) return terms.front();
  auto n = make_node(Op::kSum, terms.front().in_dim(), broadcast_dim(terms, "sum"));
  n->children = std::move(terms);
  return SmoothMap(std::move(n));
}

SmoothMap product(std::vector<SmoothMap> factors) {
  require_same_in(factors, "prod");
  if (factors.size() == 1) return factors.front();
  auto n = make_node(Op::kProduct, factors.front().in_dim(), broadcast_dim(factors, "prod"));
  n->children = std::move(factors);
  return SmoothMap(std::move(n));
}

SmoothMap quotient(SmoothMap numerator, SmoothMap denominator) {
  std::vector<SmoothMap> kids{std::move(numerator), std::move(denominator)};
  require_same_in(kids, "div");
  if (kids[1].out_dim() != 1 && kids[1].out_dim() != kids[0].out_dim()) {
    throw DimensionError("div: denominator must be scalar or match the numerator");
  }
  auto n = make_node(Op::kQuotient, kids[0].in_dim(), kids[0].out_dim());
  n->children = std::move(kids);
  return SmoothMap(std::move(n));
}

SmoothMap compose(SmoothMap outer, SmoothMap inner) {
  if (inner.out_dim() != outer.in_dim()) {
    throw DimensionError(std::string("compose: inner ") + op_name(inner.op()) +
                         " produces dimension " + std::to_string(inner.out_dim()) +
                         " but outer " + op_name(outer.op()) + " expects " +
                         std::to_string(outer.in_dim()));
  }
  auto n = make_node(Op::kCompose, inner.in_dim(), outer.out_dim());
  n->children = {std::move(outer), std::move(inner)};
  return SmoothMap(std::move(n));
}

SmoothMap tuple(std::vector<SmoothMap> parts) {
  require_same_in(parts, "tuple");
  int out = 0;
  for (const auto& p : parts) out += p.out_dim();
  auto n = make_node(Op::kTuple, parts.front().in_dim(), out);
  n->children = std::move(parts);
  return SmoothMap(std::move(n));
}

SmoothMap flat_exp(int dim) { return elementwise(Op::kFlatExp, dim); }
SmoothMap smooth_step(int dim) { return elementwise(Op::kSmoothStep, dim); }
SmoothMap clamp01(int dim) { return elementwise(Op::kClamp01, dim); }

SmoothMap smash(SmashParams p, int dim) {
  p.validate();
  require_positive(dim, "smash");
  auto n = make_node(Op::kSmash, dim, dim);
  n->smash = p;
  return SmoothMap(std::move(n));
}

SmoothMap smash_var() { return SmoothMap(make_node(Op::kSmashVar, 3, 1)); }

SmoothMap piecewise(int axis, std::vector<double> breakpoints,
                    std::vector<SmoothMap> pieces) {
  require_same_in(pieces, "piece");
  if (pieces.size() != breakpoints.size() + 1) {
    throw DimensionError("piece: need one more piece than breakpoints");
  }
  const int in = pieces.front().in_dim();
  if (axis < 0 || axis >= in) throw DimensionError("piece: split axis out of range");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    const double b = breakpoints[i];
    if (!(b > 0.0 && b < 1.0) || (i > 0 && !(b > breakpoints[i - 1]))) {
      throw DomainError("piece: breakpoints must be strictly increasing in (0, 1)");
    }
  }
  for (const auto& p : pieces) {
    if (p.out_dim() != pieces.front().out_dim()) {
      throw DimensionError("piece: pieces disagree on output dimension");
    }
  }
  auto n = make_node(Op::kPiecewise, in, pieces.front().out_dim());
  n->index = axis;
  n->values = std::move(breakpoints);
  n->children = std::move(pieces);
  return SmoothMap(std::move(n));
}

SmoothMap glue(std::vector<Face> faces, std::vector<SmoothMap> pieces) {
  require_same_in(pieces, "glue");
  if (faces.size() != pieces.size()) throw DimensionError("glue: one face per piece");
  const int in = pieces.front().in_dim();
  for (const auto& f : faces) {
    if (f.ambient_dim() != in) throw DimensionError("glue: face " + f.signature() +
                                                    " does not match input dimension");
  }
  for (const auto& p : pieces) {
    if (p.out_dim() != pieces.front().out_dim()) {
      throw DimensionError("glue: pieces disagree on output dimension");
    }
  }
  auto n = make_node(Op::kGlue, in, pieces.front().out_dim());
  n->faces = std::move(faces);
  n->children = std::move(pieces);
  return SmoothMap(std::move(n));
}

SmoothMap scalar(double c, int in_dim) { return constant({c}, in_dim); }

SmoothMap scale(double c, SmoothMap f) {
  const int in = f.in_dim();
  return product({scalar(c, in), std::move(f)});
}

SmoothMap linear_in(int k, double c0, double c1, int in_dim) {
  std::vector<double> row(in_dim, 0.0);
  if (k < 0 || k >= in_dim) throw DimensionError("linear_in: axis out of range");
  row[k] = c1;
  return affine({row}, {c0});
}

}  // namespace maps

Homotopy::Homotopy(SmoothMap map) : map_(std::move(map)) {
  if (map_.in_dim() < 1) throw DimensionError("a homotopy needs a time coordinate");
}

std::vector<double> Homotopy::operator()(std::span<const double> x, double u) const {
  std::vector<double> p(x.begin(), x.end());
  p.push_back(u);
  return map_(p);
}

SmoothMap slice(const Homotopy& h, double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("slice time must lie in [0, 1]");
  const int n = h.space_dim();
  if (n == 0) return maps::compose(h.map(), maps::constant({u}, 0));
  std::vector<std::vector<double>> m(n + 1, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) m[i][i] = 1.0;
  std::vector<double> offset(n + 1, 0.0);
  offset[n] = u;
  SmoothMap s = maps::compose(h.map(), maps::affine(m, std::move(offset)));
  if (const auto& d = h.map().domain()) {
    Box b{std::vector<Interval>(d->sides.begin(), d->sides.begin() + n)};
    s = s.restricted_to(std::move(b));
  }
  return s;
}

Homotopy constant_homotopy(const SmoothMap& f) {
  const int n = f.in_dim();
  std::vector<int> axes(n);
  for (int i = 0; i < n; ++i) axes[i] = i;
  if (n == 0) return Homotopy(maps::constant(f({}), 1));
  SmoothMap h = maps::compose(f, maps::select(axes, n + 1));
  if (const auto& d = f.domain()) {
    Box b = *d;
    b.sides.push_back({0.0, 1.0});
    h = h.restricted_to(std::move(b));
  }
  return Homotopy(std::move(h));
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("max_abs_diff: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

namespace {

std::vector<double> shifted_eval(const SmoothMap& f, std::span<const double> p, int axis,
                                 double delta) {
  std::vector<double> q(p.begin(), p.end());
  q[axis] += delta;
  return f(q);
}

bool inside_along(const SmoothMap& f, std::span<const double> p, int axis, double delta) {
  const auto& d = f.domain();
  if (!d) return true;
  const double x = p[axis] + delta;
  return x >= d->sides[axis].lo - kMembershipTol && x <= d->sides[axis].hi + kMembershipTol;
}

}  // namespace

std::vector<double> fd_partial(const SmoothMap& f, std::span<const double> p, int axis,
                               double h, FdScheme scheme) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  if (axis < 0 || axis >= f.in_dim()) throw DimensionError("fd axis out of range");
  if (static_cast<int>(p.size()) != f.in_dim()) throw DimensionError("fd point size");
  std::vector<double> out(f.out_dim());
  switch (scheme) {
    case FdScheme::kCentral: {
      const auto a = shifted_eval(f, p, axis, h);
      const auto b = shifted_eval(f, p, axis, -h);
      for (int i = 0; i < f.out_dim(); ++i) out[i] = (a[i] - b[i]) / (2.0 * h);
      break;
    }
    case FdScheme::kForward: {
      const auto f0 = f(p);
      const auto f1 = shifted_eval(f, p, axis, h);
      const auto f2 = shifted_eval(f, p, axis, 2.0 * h);
      for (int i = 0; i < f.out_dim(); ++i) {
        out[i] = (-3.0 * f0[i] + 4.0 * f1[i] - f2[i]) / (2.0 * h);
      }
      break;
    }
    case FdScheme::kBackward: {
      const auto f0 = f(p);
      const auto f1 = shifted_eval(f, p, axis, -h);
      const auto f2 = shifted_eval(f, p, axis, -2.0 * h);
      for (int i = 0; i < f.out_dim(); ++i) {
        out[i] = (3.0 * f0[i] - 4.0 * f1[i] + f2[i]) / (2.0 * h);
      }
      break;
    }
  }
  return out;
}

std::vector<double> fd_partial(const SmoothMap& f, std::span<const double> p, int axis,
                               double h) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  if (axis < 0 || axis >= f.in_dim()) throw DimensionError("fd axis out of range");
  const bool fwd = inside_along(f, p, axis, 2.0 * h);
  const bool bwd = inside_along(f, p, axis, -2.0 * h);
  if (inside_along(f, p, axis, h) && inside_along(f, p, axis, -h)) {
    return fd_partial(f, p, axis, h, FdScheme::kCentral);
  }
  if (fwd) return fd_partial(f, p, axis, h, FdScheme::kForward);
  if (bwd) return fd_partial(f, p, axis, h, FdScheme::kBackward);
  throw DomainError("finite-difference stencil does not fit in the domain");
}

std::vector<double> fd_partial_richardson(const SmoothMap& f, std::span<const double> p,
                                          int axis, double h) {
  const auto coarse = fd_partial(f, p, axis, h);
  const auto fine = fd_partial(f, p, axis, 0.5 * h);
  std::vector<double> out(coarse.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
  return out;
}

}  // namespace tamecube
