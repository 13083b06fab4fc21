// Exhaustive searches over small permutation groups: set cover for the
// transitivity level, Latin tuples, and subgroup enumeration.

#include <algorithm>
#include <bit>
#include <set>

#include "qpg/errors.hpp"
#include "qpg/permgroup.hpp"

namespace qpg::perm {

namespace {

using Words = std::vector<std::uint64_t>;

Words make_bits(int universe, const std::vector<int>& items) {
  Words w(static_cast<std::size_t>((universe + 63) / 64), 0);
  for (int i : items) w[static_cast<std::size_t>(i) / 64] |= std::uint64_t{1} << (i % 64);
  return w;
}

bool test_bit(const Words& w, int i) { return (w[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1u; }

class SetCoverSearch {
 public:
  explicit SetCoverSearch(const detail::SetCoverProblem& problem) : problem_(problem) {
    for (const auto& s : problem.sets) set_bits_.push_back(make_bits(problem.universe, s));
    containing_.resize(static_cast<std::size_t>(problem.universe));
    for (std::size_t s = 0; s < problem.sets.size(); ++s)
      for (int item : problem.sets[s]) containing_[static_cast<std::size_t>(item)].push_back(s);
    for (const auto& s : problem.sets) max_set_size_ = std::max(max_set_size_, static_cast<int>(s.size()));
  }

  int solve() {
    const Words empty(static_cast<std::size_t>((problem_.universe + 63) / 64), 0);
    for (const auto& c : containing_)
      if (c.empty()) return -1;
    if (problem_.universe == 0) return 0;
    root_bound_ = lower_bound(empty);
    best_ = greedy(empty);
    if (best_ > root_bound_) search(empty, 0);
    return best_;
  }

 private:
  int uncovered_count(const Words& covered) const {
    int covered_count = 0;
    for (auto w : covered) covered_count += std::popcount(w);
    return problem_.universe - covered_count;
  }

  int lower_bound(const Words& covered) const {
    const int open = uncovered_count(covered);
    if (open == 0) return 0;
    int bound = (open + max_set_size_ - 1) / max_set_size_;
    for (const auto& block : problem_.blocks) {
      int in_block = 0;
      for (int item : block) in_block += !test_bit(covered, item);
      bound = std::max(bound, in_block);
    }
    return std::max(bound, 1);
  }

  int greedy(Words covered) const {
    int used = 0;
    while (uncovered_count(covered) > 0) {
      std::size_t best_set = 0;
      int best_gain = -1;
      for (std::size_t s = 0; s < set_bits_.size(); ++s) {
        int gain = 0;
        for (std::size_t k = 0; k < covered.size(); ++k) gain += std::popcount(set_bits_[s][k] & ~covered[k]);
        if (gain > best_gain) best_gain = gain, best_set = s;
      }
      for (std::size_t k = 0; k < covered.size(); ++k) covered[k] |= set_bits_[best_set][k];
      ++used;
    }
    return used;
  }

  void search(const Words& covered, int chosen) {
    if (best_ == root_bound_) return;
    const int open = uncovered_count(covered);
    if (open == 0) {
      best_ = std::min(best_, chosen);
      return;
    }
    if (chosen + lower_bound(covered) >= best_) return;
    // Branch on the uncovered item with the fewest candidate sets.
    int pivot = -1;
    std::size_t fewest = SIZE_MAX;
    for (int item = 0; item < problem_.universe; ++item) {
      if (test_bit(covered, item)) continue;
      if (containing_[static_cast<std::size_t>(item)].size() < fewest) {
        fewest = containing_[static_cast<std::size_t>(item)].size();
        pivot = item;
      }
    }
    Words next(covered.size());
    for (std::size_t s : containing_[static_cast<std::size_t>(pivot)]) {
      for (std::size_t k = 0; k < covered.size(); ++k) next[k] = covered[k] | set_bits_[s][k];
      search(next, chosen + 1);
      if (best_ == root_bound_) return;
    }
  }

  const detail::SetCoverProblem& problem_;
  std::vector<Words> set_bits_;
  std::vector<std::vector<std::size_t>> containing_;
  int max_set_size_ = 1;
  int root_bound_ = 0;
  int best_ = 0;
};

// Backtracking over positions of an N-tuple whose members pairwise disagree
// everywhere. `candidates(slot)` lists element indices allowed at that slot.
template <typename Candidates, typename Visit>
bool extend_tuple(const PermGroup& group, std::vector<std::size_t>& chosen, int slots,
                  const Candidates& candidates, const Visit& visit) {
  if (static_cast<int>(chosen.size()) == slots) return visit(chosen);
  for (std::size_t e : candidates(static_cast<int>(chosen.size()))) {
    bool ok = true;
    for (std::size_t c : chosen)
      if (!group[e].disagrees_everywhere(group[c])) {
        ok = false;
        break;
      }
    if (!ok) continue;
    chosen.push_back(e);
    if (extend_tuple(group, chosen, slots, candidates, visit)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

namespace detail {
int exact_set_cover(const SetCoverProblem& problem) { return SetCoverSearch(problem).solve(); }
}  // namespace detail

int transitivity_level(const PermGroup& group) {
  if (!is_transitive(group)) throw InputError("transitivity_level: group is not transitive");
  const int n = group.degree();
  // Item j*N + i is the pair (i, j); element sigma covers (sigma(j), j).
  detail::SetCoverProblem problem;
  problem.universe = n * n;
  for (const auto& g : group.elements()) {
    std::vector<int> items;
    for (int j = 0; j < n; ++j) items.push_back(j * n + g(j));
    problem.sets.push_back(std::move(items));
  }
  for (int j = 0; j < n; ++j) {
    std::vector<int> column;
    for (int i = 0; i < n; ++i) column.push_back(j * n + i);
    problem.blocks.push_back(std::move(column));
  }
  return detail::exact_set_cover(problem);
}

std::optional<std::vector<Permutation>> strongest_transitive_certificate(const PermGroup& group) {
  const int n = group.degree();
  // Left translation preserves the quotients sigma_i^{-1} sigma_j, so a
  // certificate can be moved to contain the identity; its members have
  // distinct values at 0, so slot k holds the member with sigma(0) = k.
  std::vector<std::vector<std::size_t>> by_image(static_cast<std::size_t>(n));
  for (std::size_t e = 0; e < group.order(); ++e)
    if (group[e].is_derangement()) by_image[static_cast<std::size_t>(group[e](0))].push_back(e);
  by_image[0] = {0};

  std::vector<std::size_t> chosen;
  std::optional<std::vector<Permutation>> result;
  extend_tuple(
      group, chosen, n, [&](int slot) -> const std::vector<std::size_t>& { return by_image[static_cast<std::size_t>(slot)]; },
      [&](const std::vector<std::size_t>& tuple) {
        std::vector<Permutation> out;
        for (std::size_t e : tuple) out.push_back(group[e]);
        result = std::move(out);
        return true;
      });
  return result;
}

std::vector<std::vector<Permutation>> latin_tuples(const PermGroup& group, std::size_t limit) {
  std::vector<std::vector<Permutation>> out;
  if (limit == 0) return out;
  std::vector<std::size_t> all(group.order());
  for (std::size_t e = 0; e < all.size(); ++e) all[e] = e;
  std::vector<std::size_t> chosen;
  extend_tuple(
      group, chosen, group.degree(), [&](int) -> const std::vector<std::size_t>& { return all; },
      [&](const std::vector<std::size_t>& tuple) {
        std::vector<Permutation> t;
        for (std::size_t e : tuple) t.push_back(group[e]);
        out.push_back(std::move(t));
        return out.size() >= limit;
      });
  return out;
}

namespace {

// Subgroups as sorted index lists, grown one cyclic extension at a time.
// `allowed` filters elements; `admissible_order` prunes by order.
template <typename Allowed, typename Admissible>
std::vector<std::vector<std::uint32_t>> enumerate_subgroups(const PermGroup& group, const Allowed& allowed,
                                                           const Admissible& admissible_order) {
  const CayleyTable table(group);
  const std::size_t n = group.order();

  auto extend = [&](const std::vector<std::uint32_t>& h, std::uint32_t g) -> std::optional<std::vector<std::uint32_t>> {
    std::vector<char> member(n, 0);
    std::vector<std::uint32_t> elems = h;
    for (auto e : h) member[e] = 1;
    // Closing H u {g} under right multiplication by H u {g} yields <H, g>.
    std::vector<std::uint32_t> frontier = elems;
    if (!member[g]) {
      member[g] = 1;
      elems.push_back(g);
      frontier.push_back(g);
    }
    std::vector<std::uint32_t> generators = h;
    generators.push_back(g);
    while (!frontier.empty()) {
      std::vector<std::uint32_t> next;
      for (auto x : frontier)
        for (auto s : generators) {
          const auto y = table.mul(x, s);
          if (member[y]) continue;
          if (!allowed(y)) return std::nullopt;
          member[y] = 1;
          elems.push_back(y);
          next.push_back(y);
          if (!admissible_order(elems.size(), false)) return std::nullopt;
        }
      frontier = std::move(next);
    }
    std::sort(elems.begin(), elems.end());
    if (!admissible_order(elems.size(), true)) return std::nullopt;
    return elems;
  };

  std::set<std::vector<std::uint32_t>> seen{{0}};
  std::vector<std::vector<std::uint32_t>> frontier{{0}};
  while (!frontier.empty()) {
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& h : frontier) {
      std::vector<char> member(n, 0);
      for (auto e : h) member[e] = 1;
      for (std::uint32_t g = 1; g < n; ++g) {
        if (member[g] || !allowed(g)) continue;
        auto k = extend(h, g);
        if (k && seen.insert(*k).second) next.push_back(std::move(*k));
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

PermGroup subgroup_from_indices(const PermGroup& group, const std::vector<std::uint32_t>& indices) {
  std::vector<Permutation> gens;
  for (auto e : indices)
    if (e != 0) gens.push_back(group[e]);
  return closure(group.degree(), gens);
}

}  // namespace

std::vector<PermGroup> deranging_subgroups(const PermGroup& group, std::size_t order) {
  if (order == 0 || group.order() % order != 0) throw InputError("deranging_subgroups: order must divide |G|");
  auto allowed = [&](std::uint32_t e) { return e == 0 || group[e].is_derangement(); };
  // Intermediate subgroups may be any divisor of the target order (Lagrange).
  auto admissible = [order](std::size_t size, bool complete) { return complete ? order % size == 0 : size <= order; };
  std::vector<PermGroup> out;
  for (const auto& h : enumerate_subgroups(group, allowed, admissible))
    if (h.size() == order) out.push_back(subgroup_from_indices(group, h));
  return out;
}

std::vector<PermGroup> all_subgroups(const PermGroup& group) {
  auto allowed = [](std::uint32_t) { return true; };
  auto admissible = [](std::size_t, bool) { return true; };
  std::vector<PermGroup> out;
  for (const auto& h : enumerate_subgroups(group, allowed, admissible)) out.push_back(subgroup_from_indices(group, h));
  return out;
}

}  // namespace qpg::perm
