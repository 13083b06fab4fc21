#include "qpg/permgroup.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "qpg/errors.hpp"

namespace qpg::perm {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= degree() || seen[static_cast<std::size_t>(v)]) {
      throw InputError("not a permutation of {1.." + std::to_string(degree()) + "}");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int degree) {
  std::vector<int> images(static_cast<std::size_t>(degree));
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

Permutation Permutation::from_one_based(std::span<const int> images) {
  std::vector<int> zero_based(images.begin(), images.end());
  for (int& v : zero_based) --v;
  return Permutation(std::move(zero_based));
}

std::vector<int> Permutation::one_based() const {
  std::vector<int> out(images_);
  for (int& v : out) ++v;
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t k = 0; k < images_.size(); ++k) inv[static_cast<std::size_t>(images_[k])] = static_cast<int>(k);
  Permutation out;
  out.images_ = std::move(inv);
  return out;
}

int Permutation::fixed_points() const {
  int count = 0;
  for (std::size_t k = 0; k < images_.size(); ++k) count += images_[k] == static_cast<int>(k);
  return count;
}

bool Permutation::is_identity() const { return fixed_points() == degree(); }

bool Permutation::disagrees_everywhere(const Permutation& other) const {
  for (std::size_t k = 0; k < images_.size(); ++k)
    if (images_[k] == other.images_[k]) return false;
  return true;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw InputError("composing permutations of different degree");
  Permutation out;
  out.images_.resize(b.images_.size());
  for (std::size_t k = 0; k < b.images_.size(); ++k)
    out.images_[k] = a.images_[static_cast<std::size_t>(b.images_[k])];
  return out;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int v : p.images()) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
  return h;
}

PermGroup::PermGroup(int degree, std::vector<Permutation> elements, std::vector<Permutation> generators)
    : degree_(degree), elements_(std::move(elements)), generators_(std::move(generators)) {
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
}

std::optional<std::size_t> PermGroup::index_of(const Permutation& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

PermGroup closure(int degree, std::span<const Permutation> generators, std::size_t cap) {
  if (degree < 1) throw InputError("group degree must be positive");
  for (const auto& g : generators)
    if (g.degree() != degree) throw InputError("generator degree does not match group degree");

  std::unordered_set<Permutation, PermutationHash> seen;
  std::deque<Permutation> queue;
  const auto id = Permutation::identity(degree);
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    const Permutation x = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : generators) {
      Permutation y = g * x;
      if (seen.insert(y).second) {
        if (seen.size() > cap) throw CapExceeded("group too large", static_cast<long long>(cap));
        queue.push_back(std::move(y));
      }
    }
  }
  std::vector<Permutation> elements(seen.begin(), seen.end());
  std::sort(elements.begin(), elements.end());
  return PermGroup(degree, std::move(elements), {generators.begin(), generators.end()});
}

CayleyTable::CayleyTable(const PermGroup& group) {
  const std::size_t n = group.order();
  table_.resize(n * n);
  inverse_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      table_[a * n + b] = static_cast<std::uint32_t>(*group.index_of(group[a] * group[b]));
    inverse_[a] = static_cast<std::uint32_t>(*group.index_of(group[a].inverse()));
  }
}

std::vector<Permutation> derangements(const PermGroup& group) {
  std::vector<Permutation> out;
  for (const auto& g : group.elements())
    if (g.is_derangement()) out.push_back(g);
  return out;
}

std::vector<std::vector<int>> orbits(const PermGroup& group) {
  const int n = group.degree();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // Orbits of the generated group are the connected components of the
  // generators' graphs; fall back to all elements when no generators are kept.
  const auto& movers = group.generators().empty() ? group.elements() : group.generators();
  for (const auto& g : movers)
    for (int k = 0; k < n; ++k) {
      const int a = find(k), b = find(g(k));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of(static_cast<std::size_t>(n), -1);
  for (int k = 0; k < n; ++k) {
    const int r = find(k);
    if (block_of[r] < 0) {
      block_of[r] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[block_of[r]].push_back(k);
  }
  return blocks;
}

bool is_transitive(const PermGroup& group) { return orbits(group).size() == 1; }

LatinSquare::LatinSquare(std::vector<std::vector<int>> entries) : entries_(std::move(entries)) {
  const int n = order();
  if (n == 0) throw InputError("Latin square of order zero");
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(entries_[r].size()) != n) throw InputError("Latin square is not square");
  }
  for (int r = 0; r < n; ++r) {
    std::vector<char> row_seen(n, 0), col_seen(n, 0);
    for (int c = 0; c < n; ++c) {
      const int a = entries_[r][c], b = entries_[c][r];
      if (a < 0 || a >= n || row_seen[a]) throw InputError("Latin square row " + std::to_string(r + 1) + " is not a permutation");
      if (b < 0 || b >= n || col_seen[b]) throw InputError("Latin square column " + std::to_string(r + 1) + " is not a permutation");
      row_seen[a] = col_seen[b] = 1;
    }
  }
}

LatinSquare LatinSquare::from_one_based(const std::vector<std::vector<int>>& entries) {
  auto copy = entries;
  for (auto& row : copy)
    for (int& v : row) --v;
  return LatinSquare(std::move(copy));
}

LatinSquare LatinSquare::from_rows(std::span<const Permutation> tuple) {
  std::vector<std::vector<int>> entries;
  entries.reserve(tuple.size());
  for (const auto& p : tuple) entries.push_back(p.images());
  return LatinSquare(std::move(entries));
}

std::vector<Permutation> LatinSquare::rows() const {
  std::vector<Permutation> out;
  out.reserve(entries_.size());
  for (const auto& row : entries_) out.emplace_back(row);
  return out;
}

LatinSquare LatinSquare::rows_sorted() const {
  auto copy = entries_;
  std::sort(copy.begin(), copy.end(), [](const auto& a, const auto& b) { return a[0] < b[0]; });
  return LatinSquare(std::move(copy));
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

int mod(long long a, int p) {
  const long long r = a % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

int inverse_mod(int a, int p) {
  // Fermat; p prime and small.
  long long result = 1, base = mod(a, p);
  for (int e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<int>(result);
}

int parse_parameter(std::string_view spec, std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 1) {
    throw InputError("bad group family parameter in '" + std::string(spec) + "'");
  }
  return value;
}

PermGroup from_generator_lists(int degree, const std::vector<std::vector<int>>& gens) {
  std::vector<Permutation> perms;
  for (const auto& g : gens) perms.emplace_back(g);
  return closure(degree, perms);
}

}  // namespace

PermGroup pgl2(int p) {
  if (!is_prime(p) || p < 3) throw InputError("pgl2: p must be an odd prime, got " + std::to_string(p));
  if (static_cast<long long>(p) * p * p > static_cast<long long>(kDefaultOrderCap)) {
    throw CapExceeded("pgl2: group too large", static_cast<long long>(kDefaultOrderCap));
  }
  const int n = p + 1;
  // [0:1] -> 0, [1:t] -> 1 + t.
  auto label = [p](int x, int y) {
    if (x == 0) return 0;
    return 1 + mod(static_cast<long long>(y) * inverse_mod(x, p), p);
  };
  std::unordered_set<Permutation, PermutationHash> seen;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c)
        for (int d = 0; d < p; ++d) {
          if (mod(static_cast<long long>(a) * d - static_cast<long long>(b) * c, p) == 0) continue;
          std::vector<int> images(static_cast<std::size_t>(n));
          // Column vector (x, y) for each point; the matrix acts on the left.
          images[0] = label(b, d);
          for (int t = 0; t < p; ++t) images[1 + t] = label(mod(a + b * t, p), mod(c + d * t, p));
          seen.insert(Permutation(std::move(images)));
        }
  std::vector<Permutation> gens(seen.begin(), seen.end());
  std::sort(gens.begin(), gens.end());
  // The element set is already a group; closing over it only fixes ordering.
  return closure(n, gens);
}

PermGroup regular_action(const PermGroup& group) {
  const int n = static_cast<int>(group.order());
  const CayleyTable table(group);
  std::vector<Permutation> gens;
  const auto& source = group.generators().empty() ? group.elements() : group.generators();
  for (const auto& g : source) {
    const std::size_t gi = *group.index_of(g);
    std::vector<int> images(static_cast<std::size_t>(n));
    for (int h = 0; h < n; ++h) images[h] = static_cast<int>(table.mul(gi, static_cast<std::size_t>(h)));
    gens.emplace_back(std::move(images));
  }
  return closure(n, gens);
}

PermGroup named_group(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw InputError("group family must look like name:param, got '" + std::string(spec) + "'");
  const std::string_view name = spec.substr(0, colon);
  const int k = parse_parameter(spec, spec.substr(colon + 1));

  auto shift = [](int n) {
    std::vector<int> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[i] = (i + 1) % n;
    return g;
  };
  auto transposition = [](int n, int a, int b) {
    std::vector<int> g(static_cast<std::size_t>(n));
    std::iota(g.begin(), g.end(), 0);
    std::swap(g[a], g[b]);
    return g;
  };

  if (name == "trivial") return closure(k, {});
  if (name == "cyclic") return from_generator_lists(k, {shift(k)});
  if (name == "symmetric") {
    if (k == 1) return closure(1, {});
    return from_generator_lists(k, {transposition(k, 0, 1), shift(k)});
  }
  if (name == "alternating") {
    std::vector<std::vector<int>> gens;
    for (int c = 2; c < k; ++c) {
      std::vector<int> g(static_cast<std::size_t>(k));
      std::iota(g.begin(), g.end(), 0);
      g[0] = 1, g[1] = c, g[c] = 0;
      gens.push_back(g);
    }
    return from_generator_lists(k, gens);
  }
  if (name == "dihedral") {
    std::vector<int> reflection(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) reflection[i] = (k - i) % k;
    return from_generator_lists(k, {shift(k), reflection});
  }
  if (name == "pgl2") return pgl2(k);
  if (name == "affine") {
    if (!is_prime(k)) throw InputError("affine: p must be prime");
    std::vector<std::vector<int>> gens{shift(k)};
    for (int a = 2; a < k; ++a) {
      std::vector<int> g(static_cast<std::size_t>(k));
      for (int x = 0; x < k; ++x) g[x] = a * x % k;
      gens.push_back(g);
    }
    return from_generator_lists(k, gens);
  }
  if (name == "hyperoctahedral-segments") {
    // Segment s joins points 2s and 2s+1.
    const int n = 2 * k;
    std::vector<std::vector<int>> gens{transposition(n, 0, 1)};
    if (k > 1) {
      std::vector<int> swap01(static_cast<std::size_t>(n));
      std::iota(swap01.begin(), swap01.end(), 0);
      std::swap(swap01[0], swap01[2]);
      std::swap(swap01[1], swap01[3]);
      std::vector<int> rotate(static_cast<std::size_t>(n));
      for (int s = 0; s < k; ++s) {
        rotate[2 * s] = 2 * ((s + 1) % k);
        rotate[2 * s + 1] = 2 * ((s + 1) % k) + 1;
      }
      gens.push_back(swap01);
      gens.push_back(rotate);
    }
    return from_generator_lists(n, gens);
  }
  throw InputError("unknown group family '" + std::string(name) + "'");
}

Rational SpectralMeasure::total() const {
  Rational sum(0);
  for (const auto& w : weights) sum += w;
  return sum;
}

Rational SpectralMeasure::moment(int p) const {
  Rational sum(0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    std::int64_t power = 1;
    for (int e = 0; e < p; ++e) power *= static_cast<std::int64_t>(i);
    sum += weights[i] * power;
  }
  return sum;
}

SpectralMeasure character_measure(const PermGroup& group) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(group.degree()) + 1, 0);
  for (const auto& g : group.elements()) ++counts[static_cast<std::size_t>(g.fixed_points())];
  SpectralMeasure mu{group.degree(), {}};
  const auto order = static_cast<std::int64_t>(group.order());
  for (auto c : counts) mu.weights.emplace_back(c, order);
  return mu;
}

SpectralMeasure pgl2_measure_formula(int p) {
  if (!is_prime(p) || p < 3) throw InputError("pgl2_measure_formula: p must be an odd prime");
  const std::int64_t q = p;
  SpectralMeasure mu{p + 1, std::vector<Rational>(static_cast<std::size_t>(p) + 2, Rational(0))};
  mu.weights[0] = Rational(q, 2 * (q + 1));
  mu.weights[1] = Rational(1, q);
  mu.weights[2] = Rational(q - 2, 2 * (q - 1));
  mu.weights[static_cast<std::size_t>(p) + 1] = Rational(1, (q - 1) * q * (q + 1));
  return mu;
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace qpg::perm
