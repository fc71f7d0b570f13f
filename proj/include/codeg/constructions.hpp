#pragma once

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "genfile.hpp"
#include "group.hpp"
#include "modular.hpp"
#include "structure.hpp"

namespace codeg {

/// A recipe for a concrete permutation group.
///
/// Keyword syntax, one spec per manifest line:
///
///     cyclic <n>                 C_n, regular action
///     dihedral <order>           dihedral group of the given order, natural action
///     symmetric <n>              S_n
///     alternating <n>            A_n
///     quaternion <order>         generalized quaternion group, regular action
///     cpk_q8 <p> <k> builtin     F_p^k : Q_8 with a fixed-point-free Q_8
///     cpk_q8 <p> <k> <a..> <b..> same, with the two Q_8 generators given row-major
///     affine <p> <k> <m> <M_1..M_m>  F_p^k : <M_1, ..., M_m>
///     semilinear <p> <n> <m> <f> F_q : (C_m : C_f) inside AGammaL(1, q), q = p^n
///     direct <spec> x <spec>     direct product on disjoint points
///     file <path>                generator file
///
/// Any spec may end with `as <name>` to override the default label.
struct GroupSpec {
  enum class Kind {
    Cyclic,
    Dihedral,
    Symmetric,
    Alternating,
    GeneralizedQuaternion,
    CpkSemidirectQ8,
    Affine,
    Semilinear,
    DirectProduct,
    File
  };

  Kind kind = Kind::Cyclic;
  std::vector<std::uint64_t> params;
  std::vector<std::vector<std::uint64_t>> matrices;  // row-major k x k over F_p
  std::string path;
  std::vector<GroupSpec> factors;
  std::string name;
  std::string text;  // normalized source text
};

namespace detail {

inline std::uint64_t parse_uint(const std::string& token, const std::string& context) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("expected a non-negative integer, got '" + token + "' in: " + context);
  return std::stoull(token);
}

inline std::string join(const std::vector<std::string>& tokens, std::size_t from, std::size_t to) {
  std::string out;
  for (auto i = from; i < to; ++i) {
    if (!out.empty()) out += ' ';
    out += tokens[i];
  }
  return out;
}

inline GroupSpec parse_tokens(const std::vector<std::string>& tokens, const std::string& context) {
  if (tokens.empty()) throw ParseError("empty group spec");
  GroupSpec spec;
  spec.text = join(tokens, 0, tokens.size());
  const auto& kw = tokens[0];
  auto expect_args = [&](std::size_t n) {
    if (tokens.size() != n + 1) throw ParseError("'" + kw + "' takes " + std::to_string(n) + " argument(s): " + context);
    for (std::size_t i = 1; i <= n; ++i) spec.params.push_back(parse_uint(tokens[i], context));
  };
  auto read_matrices = [&](std::size_t from, std::size_t count, std::uint64_t p, std::uint64_t k) {
    if (tokens.size() != from + count * k * k)
      throw ParseError("expected " + std::to_string(count) + " matrices of size " + std::to_string(k) + "x" +
                       std::to_string(k) + ": " + context);
    for (std::size_t m = 0; m < count; ++m) {
      std::vector<std::uint64_t> mat;
      for (std::size_t i = 0; i < k * k; ++i) mat.push_back(parse_uint(tokens[from + m * k * k + i], context) % p);
      spec.matrices.push_back(std::move(mat));
    }
  };

  if (kw == "cyclic") {
    spec.kind = GroupSpec::Kind::Cyclic;
    expect_args(1);
  } else if (kw == "dihedral") {
    spec.kind = GroupSpec::Kind::Dihedral;
    expect_args(1);
  } else if (kw == "symmetric") {
    spec.kind = GroupSpec::Kind::Symmetric;
    expect_args(1);
  } else if (kw == "alternating") {
    spec.kind = GroupSpec::Kind::Alternating;
    expect_args(1);
  } else if (kw == "quaternion") {
    spec.kind = GroupSpec::Kind::GeneralizedQuaternion;
    expect_args(1);
  } else if (kw == "semilinear") {
    spec.kind = GroupSpec::Kind::Semilinear;
    expect_args(4);
  } else if (kw == "cpk_q8") {
    spec.kind = GroupSpec::Kind::CpkSemidirectQ8;
    if (tokens.size() < 4) throw ParseError("cpk_q8 needs p, k and 'builtin' or matrices: " + context);
    spec.params = {parse_uint(tokens[1], context), parse_uint(tokens[2], context)};
    if (!(tokens.size() == 4 && tokens[3] == "builtin")) read_matrices(3, 2, spec.params[0], spec.params[1]);
  } else if (kw == "affine") {
    spec.kind = GroupSpec::Kind::Affine;
    if (tokens.size() < 4) throw ParseError("affine needs p, k, m and m matrices: " + context);
    spec.params = {parse_uint(tokens[1], context), parse_uint(tokens[2], context), parse_uint(tokens[3], context)};
    read_matrices(4, spec.params[2], spec.params[0], spec.params[1]);
  } else if (kw == "direct") {
    spec.kind = GroupSpec::Kind::DirectProduct;
    auto x = std::find(tokens.begin() + 1, tokens.end(), "x");
    if (x == tokens.end()) throw ParseError("direct product needs 'x' between factors: " + context);
    std::vector<std::string> left(tokens.begin() + 1, x), right(x + 1, tokens.end());
    spec.factors.push_back(parse_tokens(left, context));
    spec.factors.push_back(parse_tokens(right, context));
  } else if (kw == "file") {
    spec.kind = GroupSpec::Kind::File;
    if (tokens.size() != 2) throw ParseError("file takes one path: " + context);
    spec.path = tokens[1];
  } else {
    throw ParseError("unknown group kind '" + kw + "' in: " + context);
  }
  return spec;
}

} // namespace detail

/// Parses one spec. Relative file paths are resolved against `base_dir`.
inline GroupSpec parse_spec(const std::string& line, const std::filesystem::path& base_dir = {}) {
  std::vector<std::string> tokens;
  std::istringstream words(line);
  for (std::string w; words >> w;) tokens.push_back(w);
  std::string name;
  if (auto as = std::find(tokens.begin(), tokens.end(), "as"); as != tokens.end()) {
    if (as + 1 == tokens.end()) throw ParseError("'as' needs a name: " + line);
    name = detail::join(tokens, static_cast<std::size_t>(as - tokens.begin()) + 1, tokens.size());
    tokens.erase(as, tokens.end());
  }
  auto spec = detail::parse_tokens(tokens, line);
  std::function<void(GroupSpec&)> resolve = [&](GroupSpec& s) {
    if (s.kind == GroupSpec::Kind::File && !base_dir.empty() && std::filesystem::path(s.path).is_relative())
      s.path = (base_dir / s.path).lexically_normal().string();
    for (auto& f : s.factors) resolve(f);
  };
  resolve(spec);
  spec.name = name;
  return spec;
}

/// Reads a manifest: one spec per line, '#' comments.
inline std::vector<GroupSpec> parse_manifest(const std::string& text, const std::filesystem::path& base_dir = {}) {
  std::vector<GroupSpec> specs;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    specs.push_back(parse_spec(line, base_dir));
  }
  return specs;
}

inline std::vector<GroupSpec> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open manifest " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_manifest(buffer.str(), std::filesystem::path(path).parent_path());
}

namespace detail {

using Matrix = std::vector<std::uint64_t>;  // row-major k x k

inline std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

inline std::vector<std::uint64_t> to_vector(std::uint64_t index, std::uint64_t p, std::uint64_t k) {
  std::vector<std::uint64_t> v(k);
  for (std::uint64_t i = 0; i < k; ++i) {
    v[i] = index % p;
    index /= p;
  }
  return v;
}

inline std::uint64_t to_index(const std::vector<std::uint64_t>& v, std::uint64_t p) {
  std::uint64_t index = 0;
  for (auto i = v.size(); i-- > 0;) index = index * p + v[i];
  return index;
}

inline std::vector<std::uint64_t> apply(const Matrix& m, const std::vector<std::uint64_t>& v, std::uint64_t p) {
  const auto k = v.size();
  std::vector<std::uint64_t> out(k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out[i] = (out[i] + m[i * k + j] * v[j]) % p;
  return out;
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b, std::uint64_t p, std::uint64_t k) {
  Matrix out(k * k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < k; ++j) out[i * k + j] = (out[i * k + j] + a[i * k + l] * b[l * k + j]) % p;
  return out;
}

inline std::size_t mat_rank(const Matrix& a, std::uint64_t p, std::uint64_t k) {
  modular::Matrix m(k, k);
  m.data = a;
  return modular::rref(m, p).size();
}

/// Affine group F_p^k : <matrices> acting on p^k points.
inline std::vector<Permutation> affine_generators(std::uint64_t p, std::uint64_t k, const std::vector<Matrix>& mats) {
  const auto n = ipow(p, k);
  std::vector<Permutation> gens;
  for (std::uint64_t axis = 0; axis < k; ++axis) {
    std::vector<Point> images(n);
    for (std::uint64_t x = 0; x < n; ++x) {
      auto v = to_vector(x, p, k);
      v[axis] = (v[axis] + 1) % p;
      images[x] = static_cast<Point>(to_index(v, p));
    }
    gens.emplace_back(std::move(images));
  }
  for (const auto& m : mats) {
    if (mat_rank(m, p, k) != k) throw InvalidAction("action matrix is singular over F_" + std::to_string(p));
    std::vector<Point> images(n);
    for (std::uint64_t x = 0; x < n; ++x) images[x] = static_cast<Point>(to_index(apply(m, to_vector(x, p, k), p), p));
    gens.emplace_back(std::move(images));
  }
  return gens;
}

/// Q_8 inside SL(2, p): a = [[0,-1],[1,0]], b = [[x,y],[y,-x]] with x^2 + y^2 = -1,
/// repeated block-diagonally k/2 times.
inline std::vector<Matrix> builtin_q8(std::uint64_t p, std::uint64_t k) {
  if (p == 2) throw InvalidAction("Q_8 has no fixed-point-free action in characteristic 2");
  if (k % 2 != 0 || k == 0) throw InvalidAction("a fixed-point-free Q_8 needs even rank k");
  std::uint64_t x = 0, y = 0;
  bool found = false;
  for (x = 0; x < p && !found; ++x)
    for (y = 0; y < p && !found; ++y)
      if ((x * x + y * y + 1) % p == 0) found = true;
  --x;
  --y;
  Matrix a(k * k, 0), b(k * k, 0);
  for (std::uint64_t blk = 0; blk < k; blk += 2) {
    auto at = [&](Matrix& m, std::uint64_t i, std::uint64_t j) -> std::uint64_t& { return m[(blk + i) * k + blk + j]; };
    at(a, 0, 1) = p - 1;
    at(a, 1, 0) = 1;
    at(b, 0, 0) = x;
    at(b, 0, 1) = y;
    at(b, 1, 0) = y;
    at(b, 1, 1) = (p - x) % p;
  }
  return {a, b};
}

/// Checks that two matrices generate Q_8 acting without nonzero fixed vectors.
inline void validate_q8_action(const std::vector<Matrix>& gens, std::uint64_t p, std::uint64_t k) {
  Matrix identity(k * k, 0);
  for (std::size_t i = 0; i < k; ++i) identity[i * k + i] = 1;
  std::vector<Matrix> group{identity};
  for (std::size_t head = 0; head < group.size(); ++head) {
    for (const auto& g : gens) {
      auto next = mat_mul(group[head], g, p, k);
      if (std::find(group.begin(), group.end(), next) == group.end()) group.push_back(next);
      if (group.size() > 8) throw InvalidAction("action matrices generate a group larger than Q_8");
    }
  }
  std::size_t involutions = 0;
  bool abelian = true;
  for (const auto& m : group) {
    if (m != identity && mat_mul(m, m, p, k) == identity) ++involutions;
    for (const auto& n : group)
      if (mat_mul(m, n, p, k) != mat_mul(n, m, p, k)) abelian = false;
  }
  if (group.size() != 8 || involutions != 1 || abelian)
    throw InvalidAction("action matrices do not generate Q_8");
  for (const auto& m : group) {
    if (m == identity) continue;
    auto shifted = m;
    for (std::size_t i = 0; i < k; ++i) shifted[i * k + i] = (shifted[i * k + i] + p - 1) % p;
    if (mat_rank(shifted, p, k) != k) throw InvalidAction("Q_8 action has nonzero fixed vectors");
  }
}

/// Arithmetic in F_{p^n} with elements encoded as base-p digit strings.
class FiniteField {
public:
  FiniteField(std::uint64_t p, std::uint64_t n) : p_(p), n_(n), q_(ipow(p, n)) {
    require_prime(p);
    if (n == 0) throw PreconditionError("field degree must be positive");
    // Search for a primitive modulus: x must have multiplicative order q - 1.
    const auto factors = prime_set(q_ - 1);
    for (std::uint64_t tail = 0; tail < q_; ++tail) {
      modulus_ = to_vector(tail, p_, n_);  // f = x^n + sum tail_i x^i
      if (n_ > 1 && modulus_[0] == 0) continue;
      std::uint64_t x = n_ == 1 ? (p_ - modulus_[0]) % p_ : p_;
      if (x == 0) continue;
      if (power(x, q_ - 1) != 1) continue;
      bool primitive = std::all_of(factors.begin(), factors.end(),
                                   [&](std::uint64_t r) { return power(x, (q_ - 1) / r) != 1; });
      if (!primitive) continue;
      generator_ = x;
      return;
    }
    throw Error("no primitive polynomial found");
  }

  std::uint64_t size() const { return q_; }
  std::uint64_t primitive_element() const { return generator_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    auto va = to_vector(a, p_, n_), vb = to_vector(b, p_, n_);
    for (std::size_t i = 0; i < n_; ++i) va[i] = (va[i] + vb[i]) % p_;
    return to_index(va, p_);
  }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    auto va = to_vector(a, p_, n_), vb = to_vector(b, p_, n_);
    std::vector<std::uint64_t> prod(2 * n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + va[i] * vb[j]) % p_;
    for (std::size_t d = 2 * n_ - 1; d >= n_; --d) {
      auto c = prod[d];
      if (c == 0) continue;
      prod[d] = 0;
      for (std::size_t i = 0; i < n_; ++i) prod[d - n_ + i] = (prod[d - n_ + i] + (p_ - c) * modulus_[i]) % p_;
    }
    prod.resize(n_);
    return to_index(prod, p_);
  }

  std::uint64_t power(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

private:
  std::uint64_t p_, n_, q_;
  std::vector<std::uint64_t> modulus_;
  std::uint64_t generator_ = 0;
};

/// F_q : (C_m : C_f) with C_m <= F_q^* and C_f generated by x -> x^(p^(n/f)).
inline std::vector<Permutation> semilinear_generators(std::uint64_t p, std::uint64_t n, std::uint64_t m,
                                                      std::uint64_t f) {
  require_prime(p);
  FiniteField field(p, n);
  const auto q = field.size();
  if (m == 0 || (q - 1) % m != 0) throw InvalidAction("m must divide p^n - 1");
  if (f == 0 || n % f != 0) throw InvalidAction("f must divide n");
  std::vector<Permutation> gens;
  for (std::uint64_t axis = 0; axis < n; ++axis) {
    auto basis = ipow(p, axis);
    std::vector<Point> images(q);
    for (std::uint64_t x = 0; x < q; ++x) images[x] = static_cast<Point>(field.add(x, basis));
    gens.emplace_back(std::move(images));
  }
  if (m > 1) {
    auto c = field.power(field.primitive_element(), (q - 1) / m);
    std::vector<Point> images(q);
    for (std::uint64_t x = 0; x < q; ++x) images[x] = static_cast<Point>(field.mul(x, c));
    gens.emplace_back(std::move(images));
  }
  if (f > 1) {
    auto exponent = ipow(p, n / f);
    std::vector<Point> images(q);
    for (std::uint64_t x = 0; x < q; ++x) images[x] = static_cast<Point>(field.power(x, exponent));
    gens.emplace_back(std::move(images));
  }
  return gens;
}

inline Permutation shifted(const Permutation& perm, std::size_t offset, std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  for (Point i = 0; i < perm.degree(); ++i) images[offset + i] = static_cast<Point>(offset + perm[i]);
  return Permutation(std::move(images));
}

struct Realization {
  std::size_t degree = 1;
  std::vector<Permutation> generators;
  std::string name;
};

inline Realization realize(const GroupSpec& spec) {
  using Kind = GroupSpec::Kind;
  Realization r;
  auto cycles = [&](std::size_t degree, const std::vector<std::vector<Point>>& cs) {
    r.generators.push_back(Permutation::from_cycles(degree, cs));
  };
  const auto& ps = spec.params;
  switch (spec.kind) {
  case Kind::Cyclic: {
    auto n = ps[0];
    if (n == 0) throw PreconditionError("cyclic order must be positive");
    r.degree = n;
    std::vector<Point> cycle(n);
    std::iota(cycle.begin(), cycle.end(), Point{0});
    cycles(n, n > 1 ? std::vector<std::vector<Point>>{cycle} : std::vector<std::vector<Point>>{});
    r.name = "C" + std::to_string(n);
    break;
  }
  case Kind::Dihedral: {
    auto order = ps[0];
    if (order < 2 || order % 2 != 0) throw PreconditionError("dihedral order must be even and positive");
    auto n = order / 2;
    r.name = "D" + std::to_string(order);
    if (n == 1) {
      r.degree = 2;
      cycles(2, {{0, 1}});
    } else if (n == 2) {
      r.degree = 4;
      cycles(4, {{0, 1}});
      cycles(4, {{2, 3}});
    } else {
      r.degree = n;
      std::vector<Point> rotation(n);
      std::iota(rotation.begin(), rotation.end(), Point{0});
      cycles(n, {rotation});
      std::vector<Point> reflection(n);
      for (Point i = 0; i < n; ++i) reflection[i] = static_cast<Point>((n - i) % n);
      r.generators.emplace_back(std::move(reflection));
    }
    break;
  }
  case Kind::Symmetric: {
    auto n = ps[0];
    if (n == 0) throw PreconditionError("symmetric degree must be positive");
    r.degree = n;
    r.name = "S" + std::to_string(n);
    if (n == 1) {
      cycles(1, {});
    } else {
      cycles(n, {{0, 1}});
      std::vector<Point> cycle(n);
      std::iota(cycle.begin(), cycle.end(), Point{0});
      if (n > 2) cycles(n, {cycle});
    }
    break;
  }
  case Kind::Alternating: {
    auto n = ps[0];
    if (n == 0) throw PreconditionError("alternating degree must be positive");
    r.degree = n;
    r.name = "A" + std::to_string(n);
    if (n < 3) cycles(n, {});
    for (Point i = 2; i < n; ++i) cycles(n, {{0, 1, i}});
    break;
  }
  case Kind::GeneralizedQuaternion: {
    auto order = ps[0];
    if (order < 8 || !is_p_power(order, 2)) throw PreconditionError("quaternion order must be 2^k with k >= 3");
    // Elements a^i b^j, index i + m j; b a = a^-1 b, b^2 = a^(m/2).
    auto m = order / 2;
    r.degree = order;
    r.name = "Q" + std::to_string(order);
    auto right_mul = [&](std::uint64_t s, std::uint64_t t) {
      std::vector<Point> images(order);
      for (std::uint64_t i = 0; i < m; ++i) {
        for (std::uint64_t j = 0; j < 2; ++j) {
          std::uint64_t exp = (j == 0 ? i + s : i + m - s) % m;
          std::uint64_t bj = j + t;
          if (bj == 2) {
            exp = (exp + m / 2) % m;
            bj = 0;
          }
          images[i + m * j] = static_cast<Point>(exp + m * bj);
        }
      }
      return Permutation(std::move(images));
    };
    r.generators = {right_mul(1, 0), right_mul(0, 1)};
    break;
  }
  case Kind::CpkSemidirectQ8: {
    auto p = ps[0], k = ps[1];
    require_prime(p);
    std::vector<Matrix> mats = spec.matrices.empty() ? builtin_q8(p, k) : spec.matrices;
    validate_q8_action(mats, p, k);
    r.generators = affine_generators(p, k, mats);
    r.degree = ipow(p, k);
    r.name = "C" + std::to_string(p) + "^" + std::to_string(k) + ":Q8";
    break;
  }
  case Kind::Affine: {
    auto p = ps[0], k = ps[1];
    require_prime(p);
    r.generators = affine_generators(p, k, spec.matrices);
    r.degree = ipow(p, k);
    r.name = "F" + std::to_string(p) + "^" + std::to_string(k) + ":M" + std::to_string(spec.matrices.size());
    break;
  }
  case Kind::Semilinear: {
    auto p = ps[0], n = ps[1], m = ps[2], f = ps[3];
    r.generators = semilinear_generators(p, n, m, f);
    r.degree = ipow(p, n);
    r.name = "F" + std::to_string(r.degree) + ":";
    if (f == 1)
      r.name += "C" + std::to_string(m);
    else if (m == 1)
      r.name += "C" + std::to_string(f);
    else
      r.name += "(C" + std::to_string(m) + ":C" + std::to_string(f) + ")";
    break;
  }
  case Kind::DirectProduct: {
    auto a = realize(spec.factors[0]);
    auto b = realize(spec.factors[1]);
    r.degree = a.degree + b.degree;
    for (const auto& g : a.generators) r.generators.push_back(shifted(g, 0, r.degree));
    for (const auto& g : b.generators) r.generators.push_back(shifted(g, a.degree, r.degree));
    r.name = a.name + "x" + b.name;
    break;
  }
  case Kind::File: {
    auto file = read_generator_file(spec.path);
    r.degree = file.degree;
    r.generators = std::move(file.generators);
    r.name = std::filesystem::path(spec.path).stem().string();
    break;
  }
  }
  return r;
}

} // namespace detail

inline GroupPtr build_from_spec(const GroupSpec& spec, std::size_t bound = kDefaultOrderBound) {
  auto r = detail::realize(spec);
  return build_group(std::move(r.generators), spec.name.empty() ? r.name : spec.name, bound);
}

inline GroupPtr build_from_spec(const std::string& text, std::size_t bound = kDefaultOrderBound) {
  return build_from_spec(parse_spec(text), bound);
}

} // namespace codeg
