#include "tamecube/cubelat.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "tamecube/errors.hpp"

namespace tamecube {

namespace {

void require_dim(int n, const char* what) {
  if (n <= 0) {
    throw DomainError(std::string(what) + ": dimension must be >= 1, got " +
                      std::to_string(n));
  }
}

std::vector<Face> normalize(std::vector<Face> faces) {
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  std::vector<Face> out;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < faces.size() && !dominated; ++j) {
      dominated = i != j && faces[i].is_subface_of(faces[j]);
    }
    if (!dominated) out.push_back(faces[i]);
  }
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    return a.signature() < b.signature();
  });
  return out;
}

template <class Fn>
void for_each_product(const std::vector<std::vector<double>>& axes, Fn&& fn) {
  const std::size_t n = axes.size();
  for (const auto& a : axes) {
    if (a.empty()) return;
  }
  std::vector<std::size_t> idx(n, 0);
  Point p(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) p[i] = axes[i][idx[i]];
    fn(p);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++idx[k] < axes[k].size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (n == 0) return;
  }
}

void sort_unique(std::vector<Point>& pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

// 53-bit uniform double in [0, 1), independent of the standard library's
// distribution implementations.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

}  // namespace

// ---------------------------------------------------------------- Face

Face::Face(std::vector<std::int8_t> pins) : pins_(std::move(pins)) {
  for (auto v : pins_) {
    if (v != kFree && v != 0 && v != 1) {
      throw DomainError("face pin must be free, 0 or 1");
    }
  }
}

Face Face::full(int n) {
  if (n < 0) throw DomainError("face dimension must be non-negative");
  return Face(std::vector<std::int8_t>(n, kFree));
}

Face Face::facet(int n, int axis, int alpha) {
  if (axis < 0 || axis >= n) {
    throw DomainError("facet axis " + std::to_string(axis) +
                      " out of range for dimension " + std::to_string(n));
  }
  if (alpha != 0 && alpha != 1) throw DomainError("facet value must be 0 or 1");
  Face f = full(n);
  f.pins_[axis] = static_cast<std::int8_t>(alpha);
  return f;
}

Face Face::from_signature(std::string_view sig) {
  std::vector<std::int8_t> pins;
  pins.reserve(sig.size());
  for (char c : sig) {
    switch (c) {
      case '*': pins.push_back(kFree); break;
      case '0': pins.push_back(0); break;
      case '1': pins.push_back(1); break;
      default:
        throw DomainError("bad face signature '" + std::string(sig) + "'");
    }
  }
  return Face(std::move(pins));
}

int Face::dim() const {
  return static_cast<int>(std::count(pins_.begin(), pins_.end(), kFree));
}

bool Face::contains(std::span<const double> p, double tol) const {
  if (p.size() != pins_.size()) return false;
  for (std::size_t i = 0; i < pins_.size(); ++i) {
    if (pins_[i] == kFree) {
      if (p[i] < -tol || p[i] > 1.0 + tol) return false;
    } else if (std::abs(p[i] - pins_[i]) > tol) {
      return false;
    }
  }
  return true;
}

bool Face::is_subface_of(const Face& other) const {
  if (other.pins_.size() != pins_.size()) return false;
  for (std::size_t i = 0; i < pins_.size(); ++i) {
    if (other.pins_[i] != kFree && other.pins_[i] != pins_[i]) return false;
  }
  return true;
}

std::optional<Face> Face::intersect(const Face& other) const {
  if (other.pins_.size() != pins_.size()) {
    throw DimensionError("face intersection across different cubes");
  }
  std::vector<std::int8_t> out(pins_.size());
  for (std::size_t i = 0; i < pins_.size(); ++i) {
    const auto a = pins_[i];
    const auto b = other.pins_[i];
    if (a == kFree) {
      out[i] = b;
    } else if (b == kFree || a == b) {
      out[i] = a;
    } else {
      return std::nullopt;
    }
  }
  return Face(std::move(out));
}

std::vector<Face> Face::subfaces() const {
  std::vector<Face> out{*this};
  for (int axis : free_axes()) {
    const std::size_t count = out.size();
    for (std::size_t i = 0; i < count; ++i) {
      for (std::int8_t alpha : {std::int8_t{0}, std::int8_t{1}}) {
        Face g = out[i];
        g.pins_[axis] = alpha;
        out.push_back(std::move(g));
      }
    }
  }
  return out;
}

std::vector<Face> Face::boundary_facets() const {
  std::vector<Face> out;
  for (int axis : free_axes()) {
    for (std::int8_t alpha : {std::int8_t{0}, std::int8_t{1}}) {
      Face g = *this;
      g.pins_[axis] = alpha;
      out.push_back(std::move(g));
    }
  }
  return out;
}

std::vector<int> Face::free_axes() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < pins_.size(); ++i) {
    if (pins_[i] == kFree) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::string Face::signature() const {
  std::string s;
  s.reserve(pins_.size());
  for (auto v : pins_) s.push_back(v == kFree ? '*' : static_cast<char>('0' + v));
  return s;
}

// ------------------------------------------------------- CubicalComplex

CubicalComplex::CubicalComplex(int ambient_dim, std::vector<Face> faces)
    : n_(ambient_dim) {
  if (ambient_dim < 0) throw DomainError("negative ambient dimension");
  for (const auto& f : faces) {
    if (f.ambient_dim() != ambient_dim) {
      throw DimensionError("face " + f.signature() +
                           " does not live in dimension " +
                           std::to_string(ambient_dim));
    }
  }
  maximal_ = normalize(std::move(faces));
}

CubicalComplex CubicalComplex::empty(int n) { return CubicalComplex(n, {}); }

CubicalComplex CubicalComplex::full(int n) {
  require_dim(n, "full cube");
  return CubicalComplex(n, {Face::full(n)});
}

CubicalComplex CubicalComplex::boundary(int n) {
  require_dim(n, "boundary complex");
  std::vector<Face> faces;
  for (int axis = 0; axis < n; ++axis) {
    faces.push_back(Face::facet(n, axis, 0));
    faces.push_back(Face::facet(n, axis, 1));
  }
  return CubicalComplex(n, std::move(faces));
}

CubicalComplex CubicalComplex::j_complex(int n) {
  require_dim(n, "J complex");
  std::vector<Face> faces{Face::facet(n, n - 1, 1)};
  for (int axis = 0; axis + 1 < n; ++axis) {
    faces.push_back(Face::facet(n, axis, 0));
    faces.push_back(Face::facet(n, axis, 1));
  }
  return CubicalComplex(n, std::move(faces));
}

int CubicalComplex::dim() const {
  int d = -1;
  for (const auto& f : maximal_) d = std::max(d, f.dim());
  return d;
}

std::vector<Face> CubicalComplex::all_faces() const {
  std::vector<Face> out;
  for (const auto& f : maximal_) {
    auto sub = f.subfaces();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.signature() < b.signature();
  });
  return out;
}

bool CubicalComplex::contains(std::span<const double> p, double tol) const {
  return std::any_of(maximal_.begin(), maximal_.end(),
                     [&](const Face& f) { return f.contains(p, tol); });
}

bool CubicalComplex::contains(const Face& face) const {
  return std::any_of(maximal_.begin(), maximal_.end(),
                     [&](const Face& f) { return face.is_subface_of(f); });
}

bool CubicalComplex::is_subcomplex_of(const CubicalComplex& other) const {
  if (other.n_ != n_) return false;
  return std::all_of(maximal_.begin(), maximal_.end(),
                     [&](const Face& f) { return other.contains(f); });
}

CubicalComplex CubicalComplex::intersect(const Face& face) const {
  std::vector<Face> out;
  for (const auto& f : maximal_) {
    if (auto g = f.intersect(face)) out.push_back(std::move(*g));
  }
  return CubicalComplex(n_, std::move(out));
}

CubicalComplex CubicalComplex::unite(const CubicalComplex& other) const {
  if (other.n_ != n_) throw DimensionError("union of complexes in different cubes");
  std::vector<Face> faces = maximal_;
  faces.insert(faces.end(), other.maximal_.begin(), other.maximal_.end());
  return CubicalComplex(n_, std::move(faces));
}

CubicalComplex skeleton(const CubicalComplex& k, int j) {
  if (j < 0) throw DomainError("skeleton dimension must be non-negative");
  if (j >= k.dim()) return k;
  std::vector<Face> faces;
  for (const auto& f : k.all_faces()) {
    if (f.dim() <= j) faces.push_back(f);
  }
  return CubicalComplex(k.ambient_dim(), std::move(faces));
}

namespace {

int parse_int(std::string_view s, std::string_view whole) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DomainError("bad integer '" + std::string(s) + "' in complex descriptor '" +
                      std::string(whole) + "'");
  }
  return v;
}

}  // namespace

CubicalComplex parse_complex(std::string_view desc) {
  const auto colon = desc.find(':');
  if (colon == std::string_view::npos) {
    throw DomainError("complex descriptor '" + std::string(desc) +
                      "' must look like kind:argument");
  }
  const auto kind = desc.substr(0, colon);
  const auto rest = desc.substr(colon + 1);
  if (kind == "full") return CubicalComplex::full(parse_int(rest, desc));
  if (kind == "boundary") return CubicalComplex::boundary(parse_int(rest, desc));
  if (kind == "J") return CubicalComplex::j_complex(parse_int(rest, desc));
  if (kind == "empty") return CubicalComplex::empty(parse_int(rest, desc));
  if (kind == "skeleton") {
    const auto last = rest.rfind(':');
    if (last == std::string_view::npos) {
      throw DomainError("skeleton descriptor needs skeleton:<desc>:<j>");
    }
    return skeleton(parse_complex(rest.substr(0, last)),
                    parse_int(rest.substr(last + 1), desc));
  }
  if (kind == "faces") {
    std::vector<Face> faces;
    std::size_t start = 0;
    while (start <= rest.size()) {
      auto end = rest.find(',', start);
      if (end == std::string_view::npos) end = rest.size();
      faces.push_back(Face::from_signature(rest.substr(start, end - start)));
      start = end + 1;
    }
    const int n = faces.front().ambient_dim();
    return CubicalComplex(n, std::move(faces));
  }
  throw DomainError("unknown complex kind '" + std::string(kind) + "'");
}

// ------------------------------------------------------------ BoxRegion

bool Box::contains(std::span<const double> p, double tol) const {
  if (p.size() != sides.size()) return false;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    if (p[i] < sides[i].lo - tol || p[i] > sides[i].hi + tol) return false;
  }
  return true;
}

BoxRegion::BoxRegion(int ambient_dim, std::vector<Box> boxes)
    : n_(ambient_dim), boxes_(std::move(boxes)) {
  for (const auto& b : boxes_) {
    if (static_cast<int>(b.sides.size()) != n_) {
      throw DimensionError("box dimension does not match region dimension");
    }
    for (const auto& s : b.sides) {
      if (!(s.lo <= s.hi) || s.lo < 0.0 || s.hi > 1.0) {
        throw DomainError("box sides must satisfy 0 <= lo <= hi <= 1");
      }
    }
  }
}

bool BoxRegion::contains(std::span<const double> p, double tol) const {
  return std::any_of(boxes_.begin(), boxes_.end(),
                     [&](const Box& b) { return b.contains(p, tol); });
}

BoxRegion BoxRegion::intersect(const Face& f) const {
  if (f.ambient_dim() != n_) throw DimensionError("face/region dimension mismatch");
  std::vector<Box> out;
  for (const auto& b : boxes_) {
    Box c = b;
    bool keep = true;
    for (int i = 0; i < n_ && keep; ++i) {
      if (f.is_free(i)) continue;
      const double a = f.pin(i);
      keep = c.sides[i].lo <= a && a <= c.sides[i].hi;
      c.sides[i] = {a, a};
    }
    if (keep) out.push_back(std::move(c));
  }
  return BoxRegion(n_, std::move(out));
}

BoxRegion chamber_region(const CubicalComplex& k, double eps) {
  if (!(eps > 0.0 && eps <= 0.5)) {
    throw DomainError("chamber width must satisfy 0 < eps <= 1/2");
  }
  std::vector<Box> boxes;
  for (const auto& f : k.maximal_faces()) {
    Box b;
    for (int i = 0; i < k.ambient_dim(); ++i) {
      if (f.is_free(i)) {
        b.sides.push_back({eps, 1.0 - eps});
      } else {
        b.sides.push_back({double(f.pin(i)), double(f.pin(i))});
      }
    }
    boxes.push_back(std::move(b));
  }
  return BoxRegion(k.ambient_dim(), std::move(boxes));
}

BoxRegion j_delta_region(int n, double delta) {
  require_dim(n, "J_delta region");
  if (!(delta > 0.0 && delta < 0.5)) {
    throw DomainError("J_delta collar width must satisfy 0 < delta < 1/2");
  }
  std::vector<Box> boxes;
  const CubicalComplex j = CubicalComplex::j_complex(n);
  for (const auto& f : j.maximal_faces()) {
    Box b;
    for (int i = 0; i < n; ++i) {
      b.sides.push_back(f.is_free(i) ? Interval{0.0, 1.0}
                                     : Interval{double(f.pin(i)), double(f.pin(i))});
    }
    boxes.push_back(std::move(b));
  }
  for (int axis = 0; axis + 1 < n; ++axis) {
    for (Interval collar : {Interval{0.0, delta}, Interval{1.0 - delta, 1.0}}) {
      Box b{std::vector<Interval>(n, Interval{0.0, 1.0})};
      b.sides[axis] = collar;
      b.sides[n - 1] = {0.0, 0.0};
      boxes.push_back(std::move(b));
    }
  }
  return BoxRegion(n, std::move(boxes));
}

Point face_projection(std::span<const double> p, int axis, int alpha) {
  if (axis < 0 || axis >= static_cast<int>(p.size())) {
    throw DomainError("projection axis " + std::to_string(axis) +
                      " out of range for a point of dimension " +
                      std::to_string(p.size()));
  }
  if (alpha != 0 && alpha != 1) throw DomainError("projection value must be 0 or 1");
  Point q(p.begin(), p.end());
  q[axis] = alpha;
  return q;
}

// --------------------------------------------------------------- Region

int ambient_dim(const Region& r) {
  return std::visit([](const auto& x) { return x.ambient_dim(); }, r);
}

bool contains(const Region& r, std::span<const double> p, double tol) {
  return std::visit([&](const auto& x) { return x.contains(p, tol); }, r);
}

bool is_empty(const Region& r) {
  return std::visit([](const auto& x) { return x.is_empty(); }, r);
}

Region intersect(const Region& r, const Face& f) {
  return std::visit([&](const auto& x) -> Region { return x.intersect(f); }, r);
}

Region cylinder(const Region& r) {
  if (const auto* k = std::get_if<CubicalComplex>(&r)) {
    std::vector<Face> faces;
    for (const auto& f : k->maximal_faces()) {
      auto pins = f.pins();
      pins.push_back(Face::kFree);
      faces.emplace_back(std::move(pins));
    }
    return CubicalComplex(k->ambient_dim() + 1, std::move(faces));
  }
  const auto& region = std::get<BoxRegion>(r);
  std::vector<Box> boxes = region.boxes();
  for (auto& b : boxes) b.sides.push_back({0.0, 1.0});
  return BoxRegion(region.ambient_dim() + 1, std::move(boxes));
}

std::vector<double> axis_samples(int res, std::span<const double> extra) {
  if (res < 2) throw DomainError("grid resolution must be at least 2");
  std::vector<double> out;
  out.reserve(res + extra.size());
  for (int k = 0; k < res; ++k) out.push_back(double(k) / double(res - 1));
  out.back() = 1.0;
  for (double v : extra) {
    if (v >= 0.0 && v <= 1.0) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Point> grid_points(const Region& r, std::span<const double> coords) {
  std::vector<Point> out;
  const std::vector<double> all(coords.begin(), coords.end());
  auto collect = [&](const std::vector<std::vector<double>>& axes) {
    for_each_product(axes, [&](const Point& p) { out.push_back(p); });
  };
  if (const auto* k = std::get_if<CubicalComplex>(&r)) {
    for (const auto& f : k->maximal_faces()) {
      std::vector<std::vector<double>> axes;
      for (int i = 0; i < k->ambient_dim(); ++i) {
        axes.push_back(f.is_free(i) ? all : std::vector<double>{double(f.pin(i))});
      }
      collect(axes);
    }
  } else {
    const auto& region = std::get<BoxRegion>(r);
    for (const auto& b : region.boxes()) {
      std::vector<std::vector<double>> axes;
      for (const auto& s : b.sides) {
        if (s.degenerate()) {
          axes.push_back({s.lo});
          continue;
        }
        std::vector<double> a{s.lo, s.hi};
        for (double v : all) {
          if (v > s.lo && v < s.hi) a.push_back(v);
        }
        std::sort(a.begin(), a.end());
        axes.push_back(std::move(a));
      }
      collect(axes);
    }
  }
  sort_unique(out);
  return out;
}

std::vector<Point> random_points(const Region& r, int count, std::mt19937_64& rng) {
  std::vector<Point> out;
  if (is_empty(r) || count <= 0) return out;
  out.reserve(count);
  if (const auto* k = std::get_if<CubicalComplex>(&r)) {
    const auto& faces = k->maximal_faces();
    for (int c = 0; c < count; ++c) {
      const Face& f = faces[uniform_index(rng, faces.size())];
      Point p(k->ambient_dim());
      for (int i = 0; i < k->ambient_dim(); ++i) {
        p[i] = f.is_free(i) ? unit_uniform(rng) : double(f.pin(i));
      }
      out.push_back(std::move(p));
    }
  } else {
    const auto& boxes = std::get<BoxRegion>(r).boxes();
    for (int c = 0; c < count; ++c) {
      const Box& b = boxes[uniform_index(rng, boxes.size())];
      Point p(b.sides.size());
      for (std::size_t i = 0; i < b.sides.size(); ++i) {
        p[i] = b.sides[i].lo + (b.sides[i].hi - b.sides[i].lo) * unit_uniform(rng);
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace tamecube
