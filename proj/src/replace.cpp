#include "tamecube/replace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tamecube/errors.hpp"

namespace tamecube {

namespace {

using namespace maps;

Face cylinder_face(const Face& f) {
  auto pins = f.pins();
  pins.push_back(Face::kFree);
  return Face(std::move(pins));
}

std::vector<int> first_axes(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

struct Piece {
  Face face;  // a face of I^n; the glued homotopy lives on face x I
  SmoothMap map;
};

Homotopy glue_homotopy(const std::vector<Piece>& pieces) {
  std::vector<Face> faces;
  std::vector<SmoothMap> maps;
  for (const auto& p : pieces) {
    faces.push_back(cylinder_face(p.face));
    maps.push_back(p.map);
  }
  return Homotopy(glue(std::move(faces), std::move(maps)));
}

// J^j in (s, w) coordinates: the top face first, then the side facets.
std::vector<Face> j_faces_top_first(int j) {
  std::vector<Face> out{Face::facet(j + 1, j, 1)};
  for (int k = 0; k < j; ++k) {
    for (int a : {0, 1}) out.push_back(Face::facet(j + 1, k, a));
  }
  return out;
}

}  // namespace

FaceChart face_chart(const Face& f) {
  const int n = f.ambient_dim();
  const int j = f.dim();
  if (j < 1) throw DomainError("face " + f.signature() + " has no chart: it is a vertex");
  const auto free = f.free_axes();

  std::vector<std::vector<double>> to(n + 1, std::vector<double>(j + 1, 0.0));
  std::vector<double> to_off(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    if (!f.is_free(i)) to_off[i] = f.pin(i);
  }
  for (int k = 0; k < j; ++k) to[free[k]][k] = 1.0;
  to[n][j] = -1.0;
  to_off[n] = 1.0;

  std::vector<std::vector<double>> from(j + 1, std::vector<double>(n + 1, 0.0));
  std::vector<double> from_off(j + 1, 0.0);
  for (int k = 0; k < j; ++k) from[k][free[k]] = 1.0;
  from[j][n] = -1.0;
  from_off[j] = 1.0;

  return {f, affine(to, to_off), affine(from, from_off)};
}

Replacement admissible_replace(const SmoothMap& f, const CubicalComplex& k,
                               const CubicalComplex& l, double eps, const ToleranceConfig& cfg) {
  cfg.validate();
  if (!(eps > 0.0 && eps < 0.5)) {
    throw DomainError("admissible_replace needs 0 < eps < 1/2");
  }
  const int n = k.ambient_dim();
  if (f.in_dim() != n || l.ambient_dim() != n) {
    throw DimensionError("admissible_replace: map, K and L must share the ambient dimension");
  }
  if (!l.is_subcomplex_of(k)) throw PreconditionError("admissible_replace: L is not contained in K");
  if (!l.is_empty()) {
    const auto on_l = check_admissible(f, l, eps, cfg);
    if (!on_l.passed) {
      std::ostringstream msg;
      msg << "admissible_replace: input is not " << eps << "-admissible on L (worst "
          << on_l.worst << ")";
      throw PreconditionError(msg.str());
    }
  }

  Replacement out{f, constant_homotopy(f), {}};
  out.trace.eps = eps;
  if (k.dim() <= 0) {
    out.trace.final_report = check_admissible(f, k, eps, cfg);
    return out;
  }

  const double width = std::pow(eps, std::max(l.dim(), 1));
  const double sigma0 = 0.5 * width;
  out.trace.initial_width = width;
  out.trace.initial_sigma = sigma0;
  const Taming tamed = tame_replace(f, sigma0, width);
  const SmoothMap& start = tamed.g;

  // Pieces of the running homotopy: L first (constant f), then every
  // face of K outside L in processing order.
  std::vector<Piece> pieces;
  for (const auto& face : l.maximal_faces()) {
    pieces.push_back({face, constant_homotopy(f).map()});
  }
  const Homotopy start_const = constant_homotopy(start);
  const std::vector<Face> k_faces = k.all_faces();
  std::vector<Face> todo;
  for (const auto& face : k_faces) {
    if (l.contains(face)) continue;
    if (face.dim() == 0) {
      pieces.push_back({face, start_const.map()});
    } else {
      todo.push_back(face);
    }
  }
  if (std::any_of(k_faces.begin(), k_faces.end(),
                  [&](const Face& v) { return v.dim() == 0 && !l.contains(v); })) {
    SkeletonStep s0;
    s0.dim = 0;
    for (const auto& face : k_faces) {
      if (face.dim() == 0 && !l.contains(face)) s0.faces.push_back({face, sigma0, 0, {}});
    }
    out.trace.steps.push_back(std::move(s0));
  }

  Homotopy running = pieces.empty() ? start_const : glue_homotopy(pieces);
  double prev_sigma = sigma0;
  for (int j = 1; j <= k.dim(); ++j) {
    SkeletonStep step;
    step.dim = j;
    const double eps_j = std::min(sigma0, prev_sigma);
    const ExtensionParams base{eps_j, 0.5 * std::min(std::pow(eps, j + 1), eps_j),
                               std::min(std::pow(eps, j - 1), 0.5), std::pow(eps, j)};
    step.params = base;
    double level_sigma = base.sigma;
    std::vector<Piece> added;
    for (const auto& face : todo) {
      if (face.dim() != j) continue;
      const FaceChart chart = face_chart(face);
      std::vector<SmoothMap> data;
      data.push_back(compose(start, compose(select(first_axes(n), n + 1), chart.to_cube)));
      for (int s = 0; s < 2 * j; ++s) data.push_back(compose(running.map(), chart.to_cube));
      const SmoothMap boundary_data = glue(j_faces_top_first(j), std::move(data));

      ExtensionParams p = base;
      FaceStep fs{face, p.sigma, 0, {}};
      const CubicalComplex face_region(n, {face});
      for (;;) {
        ++fs.attempts;
        const SmoothMap ext = extend_tame(boundary_data, p, cfg, true);
        const SmoothMap h_face = compose(ext, chart.from_cube);
        fs.report = check_tame(slice(Homotopy(h_face), 1.0), face_region, std::pow(eps, j), cfg);
        if (fs.report.passed) {
          fs.sigma = p.sigma;
          added.push_back({face, h_face});
          break;
        }
        if (fs.attempts > kMaxSigmaHalvings) {
          std::ostringstream msg;
          msg << "admissible_replace: face " << face.signature() << " (dimension " << j
              << ") is not " << std::pow(eps, j) << "-tame after " << fs.attempts
              << " attempts (worst " << fs.report.worst << ")";
          throw PreconditionError(msg.str());
        }
        p.sigma *= 0.5;
      }
      level_sigma = std::min(level_sigma, fs.sigma);
      step.faces.push_back(std::move(fs));
    }
    if (!added.empty()) {
      pieces.insert(pieces.end(), added.begin(), added.end());
      running = glue_homotopy(pieces);
      prev_sigma = level_sigma;
      out.trace.steps.push_back(std::move(step));
    }
  }

  const Region kr = k;
  out.h = concat_homotopy(tamed.h, running, kr, cfg);
  out.g = slice(running, 1.0);
  out.trace.final_report = check_admissible(out.g, k, eps, cfg);
  return out;
}

}  // namespace tamecube
