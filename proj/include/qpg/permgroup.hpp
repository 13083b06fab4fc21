#pragma once

#include <boost/rational.hpp>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qpg::perm {

/// A bijection of {0..N-1} in one-line notation. Files and the CLI use the
/// 1-based form; everything in memory is 0-based.
class Permutation {
 public:
  Permutation() = default;
  /// Throws InputError if `images` is not a bijection of {0..N-1}.
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int degree);
  static Permutation from_one_based(std::span<const int> images);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int point) const { return images_[static_cast<std::size_t>(point)]; }
  const std::vector<int>& images() const { return images_; }
  std::vector<int> one_based() const;

  Permutation inverse() const;
  int fixed_points() const;
  bool is_derangement() const { return fixed_points() == 0; }
  bool is_identity() const;
  /// True when this(k) != other(k) for every k, i.e. this^{-1} other is a
  /// derangement.
  bool disagrees_everywhere(const Permutation& other) const;

  /// Composition, right factor applied first: (a * b)(k) = a(b(k)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

inline constexpr std::size_t kDefaultOrderCap = 1'000'000;

/// A finite permutation group with its full element list in canonical
/// (lexicographic) order; the identity is always element 0.
class PermGroup {
 public:
  int degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& elements() const { return elements_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const Permutation& operator[](std::size_t i) const { return elements_[i]; }

  std::optional<std::size_t> index_of(const Permutation& p) const;
  bool contains(const Permutation& p) const { return index_of(p).has_value(); }

 private:
  friend PermGroup closure(int, std::span<const Permutation>, std::size_t);
  PermGroup(int degree, std::vector<Permutation> elements, std::vector<Permutation> generators);

  int degree_ = 0;
  std::vector<Permutation> elements_;
  std::vector<Permutation> generators_;
  std::unordered_map<Permutation, std::size_t, PermutationHash> index_;
};

/// The group generated by `generators` on {0..degree-1}, by breadth-first
/// multiplication. Throws CapExceeded ("group too large") past `cap` elements.
PermGroup closure(int degree, std::span<const Permutation> generators,
                  std::size_t cap = kDefaultOrderCap);

/// Multiplication and inverse tables over element indices.
class CayleyTable {
 public:
  explicit CayleyTable(const PermGroup& group);
  std::size_t order() const { return inverse_.size(); }
  /// Index of elements[a] * elements[b].
  std::uint32_t mul(std::size_t a, std::size_t b) const { return table_[a * order() + b]; }
  std::uint32_t inv(std::size_t a) const { return inverse_[a]; }

 private:
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
};

/// D_G: the elements without fixed points.
std::vector<Permutation> derangements(const PermGroup& group);

/// Orbit partition of the natural action; blocks sorted by least element.
std::vector<std::vector<int>> orbits(const PermGroup& group);
bool is_transitive(const PermGroup& group);

/// l(G): the least |S|, S a subset of G, such that every pair (i, j) has some
/// sigma in S with sigma(j) = i. Exact branch-and-bound set cover; throws
/// InputError for intransitive groups.
int transitivity_level(const PermGroup& group);

/// N elements whose pairwise quotients sigma_i^{-1} sigma_j (i != j) are all
/// derangements, or nullopt when none exist (exhaustive). The returned tuple
/// starts with the identity and sigma_k(0) = k.
std::optional<std::vector<Permutation>> strongest_transitive_certificate(const PermGroup& group);

/// Up to `limit` tuples (sigma_1..sigma_N) in G with sigma_1(i)..sigma_N(i)
/// distinct for every i, in lexicographic order of element indices.
std::vector<std::vector<Permutation>> latin_tuples(const PermGroup& group, std::size_t limit);

/// An N x N array over {0..N-1} whose rows and columns are permutations.
class LatinSquare {
 public:
  /// Throws InputError unless every row and column is a permutation.
  explicit LatinSquare(std::vector<std::vector<int>> entries);
  static LatinSquare from_one_based(const std::vector<std::vector<int>>& entries);
  /// The square whose k-th row is tuple[k] in one-line notation.
  static LatinSquare from_rows(std::span<const Permutation> tuple);

  int order() const { return static_cast<int>(entries_.size()); }
  int operator()(int row, int col) const { return entries_[row][col]; }
  const std::vector<std::vector<int>>& entries() const { return entries_; }
  std::vector<Permutation> rows() const;
  /// Rows reordered so that the first column reads 0, 1, ..., N-1.
  LatinSquare rows_sorted() const;

  friend bool operator==(const LatinSquare&, const LatinSquare&) = default;

 private:
  std::vector<std::vector<int>> entries_;
};

/// All subgroups H of G with |H| = order in which every non-identity element
/// is a derangement. Exhaustive, by cyclic extension.
std::vector<PermGroup> deranging_subgroups(const PermGroup& group, std::size_t order);

/// Every subgroup of G, by cyclic extension. Intended for small G.
std::vector<PermGroup> all_subgroups(const PermGroup& group);

/// PGL_2(p) acting on the p+1 points of the projective line over F_p, labelled
/// [0:1], [1:0], [1:1], ..., [1:p-1].
PermGroup pgl2(int p);

/// Left-translation action of G on itself; degree |G|, points labelled by
/// element index.
PermGroup regular_action(const PermGroup& group);

/// Named families: "cyclic:N", "symmetric:N", "alternating:N", "dihedral:N",
/// "trivial:N", "pgl2:p", "affine:p" (x -> ax+b over F_p),
/// "hyperoctahedral-segments:n" (signed permutations of n segments on 2n points).
PermGroup named_group(std::string_view spec);

bool is_prime(int n);

using Rational = boost::rational<std::int64_t>;

/// Law of the main character (number of fixed points) on a finite group:
/// weights[i] = #{sigma : sigma has i fixed points} / |G|.
struct SpectralMeasure {
  int degree = 0;
  std::vector<Rational> weights;

  Rational total() const;
  /// sum_i i^p weights[i]
  Rational moment(int p) const;
  friend bool operator==(const SpectralMeasure&, const SpectralMeasure&) = default;
};

SpectralMeasure character_measure(const PermGroup& group);

/// p/(2(p+1)) d_0 + 1/p d_1 + (p-2)/(2(p-1)) d_2 + 1/((p-1)p(p+1)) d_{p+1}.
SpectralMeasure pgl2_measure_formula(int p);

std::string to_string(const Rational& r);

namespace detail {

/// Items are 0..universe-1. `blocks` partitions the items so that no set
/// contains two items of one block; the largest number of uncovered items in
/// a block is then a lower bound on the sets still needed. Singleton blocks
/// are always valid.
struct SetCoverProblem {
  int universe = 0;
  std::vector<std::vector<int>> sets;
  std::vector<std::vector<int>> blocks;
};

/// Exact minimum number of sets whose union is the universe, or -1 when the
/// sets do not cover it. Branch and bound seeded with a greedy cover.
int exact_set_cover(const SetCoverProblem& problem);

}  // namespace detail

}  // namespace qpg::perm
