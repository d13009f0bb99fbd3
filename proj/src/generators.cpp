#include "tamecube/generators.hpp"

#include <charconv>
#include <vector>

#include "tamecube/errors.hpp"

namespace tamecube::gen {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string coord(int k) { return "(coord " + std::to_string(k + 1) + ")"; }

std::string tuple_of_coords(int n) {
  std::string s = "(tuple";
  for (int k = 0; k < n; ++k) s += " " + coord(k);
  return s + ")";
}

// Coefficients are rounded to 1/1024 so printed texts stay short.
double coefficient(std::mt19937_64& rng) {
  return static_cast<double>(static_cast<long>(uniform(rng, -2.0, 2.0) * 1024.0)) / 1024.0;
}

}  // namespace

std::string polynomial(int n, std::mt19937_64& rng) {
  if (n < 1) throw DomainError("polynomial needs n >= 1");
  std::vector<std::string> terms{num(coefficient(rng))};
  for (int i = 0; i < n; ++i) {
    terms.push_back("(prod " + num(coefficient(rng)) + " " + coord(i) + ")");
    for (int j = i; j < n; ++j) {
      terms.push_back("(prod " + num(coefficient(rng)) + " " + coord(i) + " " + coord(j) + ")");
    }
  }
  const int k = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
  const double centre = uniform(rng, 0.25, 0.75);
  terms.push_back("(prod " + num(coefficient(rng)) + " (lambda (affine [[" +
                  [&] {
                    std::string row;
                    for (int i = 0; i < n; ++i) row += (i ? " " : "") + num(i == k ? 4.0 : 0.0);
                    return row;
                  }() +
                  "]] [" + num(0.5 - 4.0 * centre) + "])))");
  std::string s = "(sum";
  for (const auto& t : terms) s += " " + t;
  return s + ")";
}

std::string tame_on_j(int n, double eps, std::mt19937_64& rng) {
  if (!(eps > 0.0 && eps < 0.5)) throw DomainError("tame_on_j needs 0 < eps < 1/2");
  const double tau = eps + (0.5 - eps) * uniform(rng, 0.2, 0.8);
  std::string tamed = "(compose " + polynomial(n, rng) + " (smash " + num(eps) + " " + num(tau) +
                      " " + tuple_of_coords(n) + "))";
  // Vanishes on every side face and on the top face.
  std::string bubble = "(prod " + num(coefficient(rng)) + " (sum 1 (prod -1 " + coord(n - 1) + "))";
  for (int k = 0; k + 1 < n; ++k) {
    bubble += " " + coord(k) + " (sum 1 (prod -1 " + coord(k) + "))";
  }
  bubble += " " + polynomial(n, rng) + ")";
  return "(sum " + tamed + " " + bubble + ")";
}

ReplacementCase replacement_case(int n, std::mt19937_64& rng) {
  if (n < 2) throw DomainError("replacement_case needs n >= 2");
  const CubicalComplex k = CubicalComplex::boundary(n);
  std::vector<Face> facets = k.maximal_faces();
  std::vector<CubicalComplex> options;
  for (const auto& f : facets) options.emplace_back(n, std::vector<Face>{f});
  options.emplace_back(n, std::vector<Face>{facets[0], facets[facets.size() - 1]});
  const CubicalComplex edges = skeleton(k, 1);
  for (const auto& e : edges.maximal_faces()) {
    if (e.dim() == 1) {
      options.emplace_back(n, std::vector<Face>{e});
      break;
    }
  }
  options.emplace_back(n, std::vector<Face>{Face(std::vector<std::int8_t>(n, 0))});
  CubicalComplex l = options[rng() % options.size()];

  std::string tamed = "(compose " + polynomial(n, rng) + " (smash 0.2 0.3 " + tuple_of_coords(n) + "))";
  // One vanishing factor per maximal face of L.
  std::string bump = "(prod " + num(coefficient(rng));
  for (const auto& f : l.maximal_faces()) {
    for (int i = 0; i < n; ++i) {
      if (f.is_free(i)) continue;
      bump += " (sum " + num(-double(f.pin(i))) + " " + coord(i) + ")";
      break;
    }
  }
  bump += " " + polynomial(n, rng) + ")";
  return {k, l, "(sum " + tamed + " " + bump + ")"};
}

HomotopyPair homotopy_pair(int n, std::mt19937_64& rng) {
  if (n < 1) throw DomainError("homotopy_pair needs n >= 1");
  const std::string space = "(affine [" + [&] {
    std::string rows;
    for (int i = 0; i < n; ++i) {
      rows += "[";
      for (int c = 0; c <= n; ++c) rows += (c ? " " : "") + num(c == i ? 1.0 : 0.0);
      rows += "]";
    }
    return rows;
  }() + "] [" + [&] {
    std::string o;
    for (int i = 0; i < n; ++i) o += (i ? " " : "") + num(0.0);
    return o;
  }() + "])";
  auto lifted = [&](const std::string& p) { return "(compose " + p + " " + space + ")"; };
  const std::string u = coord(n);
  const std::string one_minus_u = "(sum 1 (prod -1 " + u + "))";
  const std::string p = lifted(polynomial(n, rng));
  const std::string q = lifted(polynomial(n, rng));
  const std::string r = lifted(polynomial(n, rng));
  auto path = [&](const std::string& a, const std::string& b) {
    return "(sum (prod " + one_minus_u + " " + a + ") (prod " + u + " " + b + "))";
  };
  return {path(p, q), path(q, r)};
}

}  // namespace tamecube::gen
