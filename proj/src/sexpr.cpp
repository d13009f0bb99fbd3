#include "tamecube/sexpr.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <vector>

#include "tamecube/errors.hpp"

namespace tamecube {

namespace {

struct Sx {
  bool is_list = false;
  bool bracket = false;
  std::string atom;
  std::vector<Sx> items;
  int line = 1;
  int col = 1;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  Sx read_all() {
    skip_space();
    if (at_end()) throw ParseError("empty map text", line_, col_);
    Sx e = read();
    skip_space();
    if (!at_end()) throw ParseError("unexpected text after expression", line_, col_);
    return e;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (!at_end()) {
      const char c = peek();
      if (c == ';') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else {
        return;
      }
    }
  }

  static bool is_delim(char c) {
    return c == '(' || c == ')' || c == '[' || c == ']' || c == ' ' || c == '\t' ||
           c == '\n' || c == '\r' || c == ';';
  }

  Sx read() {
    Sx e;
    e.line = line_;
    e.col = col_;
    const char c = peek();
    if (c == ')' || c == ']') throw ParseError(std::string("unexpected '") + c + "'", line_, col_);
    if (c == '(' || c == '[') {
      const char close = c == '(' ? ')' : ']';
      e.is_list = true;
      e.bracket = c == '[';
      advance();
      for (;;) {
        skip_space();
        if (at_end()) {
          throw ParseError(std::string("missing '") + close + "' for list opened here",
                           e.line, e.col);
        }
        if (peek() == close) {
          advance();
          return e;
        }
        if (peek() == ')' || peek() == ']') {
          throw ParseError(std::string("mismatched '") + peek() + "'", line_, col_);
        }
        e.items.push_back(read());
      }
    }
    const std::size_t start = pos_;
    while (!at_end() && !is_delim(peek())) advance();
    e.atom = std::string(text_.substr(start, pos_ - start));
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

[[noreturn]] void fail(const Sx& e, const std::string& what) {
  throw ParseError(what, e.line, e.col);
}

std::optional<double> as_number(const Sx& e) {
  if (e.is_list || e.atom.empty()) return std::nullopt;
  double v = 0.0;
  const char* first = e.atom.data();
  const char* last = first + e.atom.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return v;
}

double number(const Sx& e) {
  auto v = as_number(e);
  if (!v) fail(e, "expected a number");
  return *v;
}

int integer(const Sx& e) {
  const double v = number(e);
  if (v != static_cast<double>(static_cast<int>(v))) fail(e, "expected an integer");
  return static_cast<int>(v);
}

const std::string& head(const Sx& e) {
  if (e.items.empty() || e.items.front().is_list) fail(e, "list must start with an operator name");
  return e.items.front().atom;
}

void arity(const Sx& e, std::size_t lo, std::size_t hi) {
  const std::size_t n = e.items.size() - 1;
  if (n < lo || n > hi) {
    fail(e, "'" + head(e) + "' takes " +
                (lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi)) +
                " arguments, got " + std::to_string(n));
  }
}

bool is_elementwise(std::string_view s) {
  return s == "gamma" || s == "lambda" || s == "clamp01";
}

std::string position(const Sx& e) {
  return "line " + std::to_string(e.line) + ", column " + std::to_string(e.col) + ": ";
}

// Builder errors get the position of the form that raised them.
template <typename F>
SmoothMap at(const Sx& e, F&& build) {
  try {
    return build();
  } catch (const DimensionError& err) {
    throw DimensionError(position(e) + err.what());
  } catch (const DomainError& err) {
    throw DomainError(position(e) + err.what());
  }
}

struct DimInfo {
  int min_in = 0;
  std::optional<int> exact;
};

void merge(DimInfo& acc, const DimInfo& d, const Sx& where) {
  acc.min_in = std::max(acc.min_in, d.min_in);
  if (d.exact) {
    if (acc.exact && *acc.exact != *d.exact) {
      throw DimensionError(position(where) + "input dimension " + std::to_string(*acc.exact) +
                           " conflicts with " + std::to_string(*d.exact));
    }
    acc.exact = d.exact;
  }
  if (acc.exact && acc.min_in > *acc.exact) {
    throw DimensionError(position(where) + "needs input dimension at least " +
                         std::to_string(acc.min_in) + " but is fixed to " +
                         std::to_string(*acc.exact));
  }
}

DimInfo infer(const Sx& e) {
  if (!e.is_list) {
    if (as_number(e)) return {};
    if (is_elementwise(e.atom)) return {1, std::nullopt};
    if (e.atom == "smashv") return {3, 3};
    fail(e, "unknown atom '" + e.atom + "'");
  }
  const std::string& op = head(e);
  DimInfo d;
  if (op == "coord") {
    arity(e, 1, 1);
    const int k = integer(e.items[1]);
    if (k < 1) fail(e.items[1], "coordinates are numbered from 1");
    return {k, std::nullopt};
  }
  if (op == "const") return {};
  if (is_elementwise(op)) {
    arity(e, 1, 1);
    return infer(e.items[1]);
  }
  if (op == "smash") {
    arity(e, 2, 3);
    return e.items.size() == 4 ? infer(e.items[3]) : DimInfo{1, std::nullopt};
  }
  if (op == "compose") {
    arity(e, 2, 2);
    infer(e.items[1]);
    return infer(e.items[2]);
  }
  if (op == "affine") {
    arity(e, 2, 2);
    const Sx& rows = e.items[1];
    if (!rows.is_list || rows.items.empty() || !rows.items[0].is_list) {
      fail(rows, "affine matrix must be a list of rows");
    }
    const int cols = static_cast<int>(rows.items[0].items.size());
    return {cols, cols};
  }
  if (op == "piece") {
    if (e.items.size() < 4) fail(e, "'piece' needs an axis, breakpoints and pieces");
    const int axis = integer(e.items[1]);
    if (axis < 1) fail(e.items[1], "axes are numbered from 1");
    d.min_in = axis;
    for (std::size_t i = 3; i < e.items.size(); ++i) merge(d, infer(e.items[i]), e.items[i]);
    return d;
  }
  if (op == "glue") {
    if (e.items.size() < 3 || !e.items[1].is_list || e.items[1].items.empty()) {
      fail(e, "'glue' needs a face list and pieces");
    }
    const Sx& sig = e.items[1].items[0];
    if (sig.is_list) fail(sig, "face signatures are atoms such as 0*1");
    const int n = static_cast<int>(sig.atom.size());
    d = {n, n};
    for (std::size_t i = 2; i < e.items.size(); ++i) merge(d, infer(e.items[i]), e.items[i]);
    return d;
  }
  if (op == "dim") {
    arity(e, 2, 2);
    const int n = integer(e.items[1]);
    if (n < 0) fail(e.items[1], "dimension must be non-negative");
    d = {n, n};
    merge(d, infer(e.items[2]), e.items[2]);
    return d;
  }
  if (op == "tuple" || op == "sum" || op == "prod" || op == "div" || op == "smashv") {
    if (e.items.size() < 2) fail(e, "'" + op + "' needs arguments");
    for (std::size_t i = 1; i < e.items.size(); ++i) merge(d, infer(e.items[i]), e.items[i]);
    return d;
  }
  fail(e.items.front(), "unknown operator '" + op + "'");
}

SmoothMap build(const Sx& e, int in);

SmoothMap elementwise(const Sx& where, std::string_view name, int dim) {
  return at(where, [&] {
    if (name == "gamma") return maps::flat_exp(dim);
    if (name == "lambda") return maps::smooth_step(dim);
    return maps::clamp01(dim);
  });
}

std::vector<SmoothMap> build_all(const Sx& e, std::size_t from, int in) {
  std::vector<SmoothMap> out;
  for (std::size_t i = from; i < e.items.size(); ++i) out.push_back(build(e.items[i], in));
  return out;
}

std::vector<double> numbers(const Sx& list) {
  if (!list.is_list) fail(list, "expected a list of numbers");
  std::vector<double> v;
  for (const auto& x : list.items) v.push_back(number(x));
  return v;
}

SmoothMap build(const Sx& e, int in) {
  if (!e.is_list) {
    if (auto v = as_number(e)) return at(e, [&] { return maps::scalar(*v, in); });
    if (is_elementwise(e.atom)) return elementwise(e, e.atom, in);
    if (e.atom == "smashv") {
      return at(e, [&] {
        if (in != 3) {
          throw DimensionError("smashv takes 3 inputs, context supplies " + std::to_string(in));
        }
        return maps::smash_var();
      });
    }
    fail(e, "unknown atom '" + e.atom + "'");
  }
  const std::string& op = head(e);
  if (op == "coord") {
    const int k = integer(e.items[1]);
    return at(e, [&] { return maps::coord(k - 1, in); });
  }
  if (op == "const") {
    std::vector<double> v;
    for (std::size_t i = 1; i < e.items.size(); ++i) v.push_back(number(e.items[i]));
    return at(e, [&] { return maps::constant(v, in); });
  }
  if (is_elementwise(op)) {
    SmoothMap g = build(e.items[1], in);
    SmoothMap outer = elementwise(e, op, g.out_dim());
    return at(e, [&] { return maps::compose(outer, g); });
  }
  if (op == "smash") {
    const SmashParams p{number(e.items[1]), number(e.items[2])};
    if (e.items.size() == 3) return at(e, [&] { return maps::smash(p, in); });
    SmoothMap g = build(e.items[3], in);
    return at(e, [&] { return maps::compose(maps::smash(p, g.out_dim()), g); });
  }
  if (op == "smashv") {
    arity(e, 3, 3);
    auto parts = build_all(e, 1, in);
    return at(e, [&] {
      for (const auto& p : parts) {
        if (p.out_dim() != 1) throw DimensionError("smashv arguments must be scalar");
      }
      return maps::compose(maps::smash_var(), maps::tuple(parts));
    });
  }
  if (op == "compose") {
    SmoothMap inner = build(e.items[2], in);
    SmoothMap outer = build(e.items[1], inner.out_dim());
    return at(e, [&] { return maps::compose(outer, inner); });
  }
  if (op == "tuple" || op == "sum" || op == "prod") {
    auto parts = build_all(e, 1, in);
    return at(e, [&] {
      if (op == "tuple") return maps::tuple(parts);
      if (op == "sum") return maps::sum(parts);
      return maps::product(parts);
    });
  }
  if (op == "div") {
    arity(e, 2, 2);
    auto parts = build_all(e, 1, in);
    return at(e, [&] { return maps::quotient(parts[0], parts[1]); });
  }
  if (op == "affine") {
    const Sx& rows = e.items[1];
    std::vector<std::vector<double>> m;
    for (const auto& r : rows.items) m.push_back(numbers(r));
    const auto offset = numbers(e.items[2]);
    return at(e, [&] {
      if (static_cast<int>(m.front().size()) != in) {
        throw DimensionError("affine matrix has " + std::to_string(m.front().size()) +
                             " columns but the input dimension is " + std::to_string(in));
      }
      return maps::affine(m, offset);
    });
  }
  if (op == "piece") {
    const int axis = integer(e.items[1]);
    const auto bps = numbers(e.items[2]);
    auto parts = build_all(e, 3, in);
    return at(e, [&] { return maps::piecewise(axis - 1, bps, parts); });
  }
  if (op == "glue") {
    std::vector<Face> faces;
    for (const auto& s : e.items[1].items) {
      if (s.is_list) fail(s, "face signatures are atoms such as 0*1");
      try {
        faces.push_back(Face::from_signature(s.atom));
      } catch (const std::exception& err) {
        fail(s, err.what());
      }
    }
    auto parts = build_all(e, 2, in);
    return at(e, [&] { return maps::glue(faces, parts); });
  }
  if (op == "dim") {
    const int n = integer(e.items[1]);
    if (n != in) {
      throw DimensionError(position(e) + "declared input dimension " + std::to_string(n) +
                           " but the context supplies " + std::to_string(in));
    }
    return build(e.items[2], n);
  }
  fail(e.items.front(), "unknown operator '" + op + "'");
}

void emit_number(std::string& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

void emit_numbers(std::string& out, const double* first, const double* last) {
  for (const double* p = first; p != last; ++p) {
    if (p != first) out += ' ';
    emit_number(out, *p);
  }
}

void emit(std::string& out, const SmoothMap& f);

void emit_children(std::string& out, const MapNode& n, std::size_t from = 0) {
  for (std::size_t i = from; i < n.children.size(); ++i) {
    out += ' ';
    emit(out, n.children[i]);
  }
}

void emit_smash_head(std::string& out, const SmashParams& p) {
  out += "smash ";
  emit_number(out, p.sigma);
  out += ' ';
  emit_number(out, p.tau);
}

void emit(std::string& out, const SmoothMap& f) {
  const MapNode& n = f.node();
  switch (n.op) {
    case Op::kConst:
      if (n.values.size() == 1) {
        emit_number(out, n.values[0]);
      } else {
        out += "(const ";
        emit_numbers(out, n.values.data(), n.values.data() + n.values.size());
        out += ')';
      }
      return;
    case Op::kCoord:
      out += "(coord " + std::to_string(n.index + 1) + ')';
      return;
    case Op::kAffine: {
      out += "(affine [";
      for (int r = 0; r < n.out_dim; ++r) {
        out += r ? " [" : "[";
        const double* row = n.values.data() + r * n.in_dim;
        emit_numbers(out, row, row + n.in_dim);
        out += ']';
      }
      out += "] [";
      const double* off = n.values.data() + n.out_dim * n.in_dim;
      emit_numbers(out, off, off + n.out_dim);
      out += "])";
      return;
    }
    case Op::kSum:
    case Op::kProduct:
    case Op::kTuple:
    case Op::kQuotient:
      out += '(';
      out += op_name(n.op);
      emit_children(out, n);
      out += ')';
      return;
    case Op::kCompose: {
      const MapNode& outer = n.children[0].node();
      const MapNode& inner = n.children[1].node();
      if (outer.op == Op::kFlatExp || outer.op == Op::kSmoothStep ||
          outer.op == Op::kClamp01) {
        out += '(';
        out += op_name(outer.op);
        out += ' ';
        emit(out, n.children[1]);
        out += ')';
      } else if (outer.op == Op::kSmash) {
        out += '(';
        emit_smash_head(out, outer.smash);
        out += ' ';
        emit(out, n.children[1]);
        out += ')';
      } else if (outer.op == Op::kSmashVar && inner.op == Op::kTuple &&
                 inner.children.size() == 3) {
        out += "(smashv";
        emit_children(out, inner);
        out += ')';
      } else {
        out += "(compose";
        emit_children(out, n);
        out += ')';
      }
      return;
    }
    case Op::kFlatExp:
    case Op::kSmoothStep:
    case Op::kClamp01:
    case Op::kSmashVar:
      out += op_name(n.op);
      return;
    case Op::kSmash:
      out += '(';
      emit_smash_head(out, n.smash);
      out += ')';
      return;
    case Op::kPiecewise:
      out += "(piece " + std::to_string(n.index + 1) + " (";
      emit_numbers(out, n.values.data(), n.values.data() + n.values.size());
      out += ')';
      emit_children(out, n);
      out += ')';
      return;
    case Op::kGlue:
      out += "(glue [";
      for (std::size_t i = 0; i < n.faces.size(); ++i) {
        if (i) out += ' ';
        out += n.faces[i].signature();
      }
      out += ']';
      emit_children(out, n);
      out += ')';
      return;
  }
}

int top_dim(const Sx& e) {
  const DimInfo d = infer(e);
  return d.exact ? *d.exact : d.min_in;
}

}  // namespace

SmoothMap parse_map(std::string_view text) {
  const Sx e = Reader(text).read_all();
  const int in = top_dim(e);
  return build(e, in).restricted_to(unit_box(in));
}

std::string serialize_map(const SmoothMap& f) {
  std::string body;
  emit(body, f);
  if (top_dim(Reader(body).read_all()) == f.in_dim()) return body;
  return "(dim " + std::to_string(f.in_dim()) + ' ' + body + ')';
}

}  // namespace tamecube
