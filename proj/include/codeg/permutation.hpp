#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace codeg {

using Point = std::uint32_t;

/// A permutation of {0, ..., degree-1} stored by its image array.
///
/// Products follow the right-action convention: (a * b) applies a first and
/// then b, so x^(ab) = (x^a)^b.
class Permutation {
public:
  Permutation() = default;

  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (auto x : images_) {
      if (x >= images_.size() || seen[x])
        throw PreconditionError("permutation images are not a bijection");
      seen[x] = true;
    }
  }

  static Permutation identity(std::size_t degree) {
    std::vector<Point> images(degree);
    std::iota(images.begin(), images.end(), Point{0});
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  /// Builds a permutation from 0-based cycles.
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
    auto p = identity(degree);
    std::vector<bool> moved(degree, false);
    for (const auto& cycle : cycles) {
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        auto from = cycle[i];
        auto to = cycle[(i + 1) % cycle.size()];
        if (from >= degree || to >= degree)
          throw PreconditionError("cycle point out of range");
        if (moved[from]) throw PreconditionError("cycles are not disjoint");
        moved[from] = true;
        p.images_[from] = to;
      }
    }
    return p;
  }

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const {
    for (Point i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation operator*(const Permutation& rhs) const {
    if (degree() != rhs.degree()) throw DegreeMismatch("cannot compose permutations of different degree");
    Permutation out;
    out.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) out.images_[i] = rhs.images_[images_[i]];
    return out;
  }

  Permutation inverse() const {
    Permutation out;
    out.images_.resize(images_.size());
    for (Point i = 0; i < images_.size(); ++i) out.images_[images_[i]] = i;
    return out;
  }

  /// Order as the lcm of the cycle lengths.
  std::uint64_t order() const {
    std::uint64_t result = 1;
    std::vector<bool> seen(images_.size(), false);
    for (Point i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      std::uint64_t len = 0;
      for (Point j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  /// Disjoint cycle notation with 1-based points, "()" for the identity.
  std::string to_cycle_string() const {
    std::string out;
    std::vector<bool> seen(images_.size(), false);
    for (Point i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == i) continue;
      out += '(';
      for (Point j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        if (j != i) out += ',';
        out += std::to_string(j + 1);
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  /// Parses 1-based disjoint cycle notation such as "(1,2)(3,4)".
  static Permutation parse_cycles(std::string_view text, std::size_t degree) {
    std::vector<std::vector<Point>> cycles;
    std::size_t pos = 0;
    auto skip_space = [&] {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
    };
    skip_space();
    while (pos < text.size()) {
      if (text[pos] != '(') throw ParseError("expected '(' in cycle notation: " + std::string(text));
      ++pos;
      std::vector<Point> cycle;
      skip_space();
      while (pos < text.size() && text[pos] != ')') {
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (start == pos) throw ParseError("expected a point in cycle notation: " + std::string(text));
        auto value = std::stoul(std::string(text.substr(start, pos - start)));
        if (value < 1 || value > degree)
          throw ParseError("point " + std::to_string(value) + " outside 1.." + std::to_string(degree));
        cycle.push_back(static_cast<Point>(value - 1));
        skip_space();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          skip_space();
        }
      }
      if (pos >= text.size()) throw ParseError("unterminated cycle: " + std::string(text));
      ++pos;
      if (!cycle.empty()) cycles.push_back(std::move(cycle));
      skip_space();
    }
    try {
      return from_cycles(degree, cycles);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(std::string(e.what()) + ": " + std::string(text));
    }
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.images_ <=> b.images_; }

private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto x : p.images()) {
      h ^= x;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

} // namespace codeg
