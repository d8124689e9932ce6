#include "heapgame/strategy.hpp"

#include <algorithm>
#include <limits>

namespace heapgame {

std::string_view to_string(StrategyCase c) noexcept {
  switch (c) {
    case StrategyCase::trim_rest: return "trim_rest";
    case StrategyCase::anchored_diagonal: return "anchored_diagonal";
    case StrategyCase::trim_anchor: return "trim_anchor";
    case StrategyCase::drop_second: return "drop_second";
    case StrategyCase::shifted_diagonal: return "shifted_diagonal";
  }
  return "unknown";
}

std::optional<std::string> legality_violation(const Position& p, const Move& mv) {
  if (const auto* d = std::get_if<DiagonalReduction>(&mv)) {
    if (d->t == 0) return "a diagonal move must remove at least one token";
    if (d->t > p.smallest()) return "a diagonal move cannot exceed the smallest heap";
    return std::nullopt;
  }
  const auto& amounts = std::get<SubsetReduction>(mv).amounts;
  if (amounts.size() != p.k()) return "a subset move must list one amount per heap";
  std::size_t touched = 0;
  for (std::size_t i = 0; i < amounts.size(); ++i) {
    if (amounts[i] > p[i]) return "cannot remove more tokens than a heap holds";
    if (amounts[i] > 0) ++touched;
  }
  if (touched == 0) return "a move must remove at least one token";
  if (touched > p.k() - 1) return "at most k-1 heaps may be reduced by a subset move";
  return std::nullopt;
}

Position apply(const Position& p, const Move& mv) {
  if (auto why = legality_violation(p, mv)) throw IllegalMoveError(*why);
  std::vector<Tokens> next(p.heaps().begin(), p.heaps().end());
  if (const auto* d = std::get_if<DiagonalReduction>(&mv)) {
    for (Tokens& h : next) h -= d->t;
    return Position::from_sorted(std::move(next), p.k());
  }
  const auto& amounts = std::get<SubsetReduction>(mv).amounts;
  for (std::size_t i = 0; i < next.size(); ++i) next[i] -= amounts[i];
  return Position::canonical(std::move(next), p.k());
}

Move to_caller_order(const Move& mv, std::span<const std::size_t> permutation) {
  const auto* s = std::get_if<SubsetReduction>(&mv);
  if (!s) return mv;
  if (s->amounts.size() != permutation.size())
    throw IllegalMoveError("a subset move must list one amount per heap");
  SubsetReduction out{std::vector<Tokens>(s->amounts.size(), 0)};
  for (std::size_t i = 0; i < permutation.size(); ++i)
    out.amounts[permutation[i]] = s->amounts[i];
  return out;
}

Move to_canonical_order(const Move& mv, std::span<const std::size_t> permutation) {
  const auto* s = std::get_if<SubsetReduction>(&mv);
  if (!s) return mv;
  if (s->amounts.size() != permutation.size())
    throw IllegalMoveError("a subset move must list one amount per heap");
  SubsetReduction out{std::vector<Tokens>(s->amounts.size(), 0)};
  for (std::size_t i = 0; i < permutation.size(); ++i)
    out.amounts[i] = s->amounts[permutation[i]];
  return out;
}

std::vector<Tokens> apply_labeled(std::span<const Tokens> heaps, const Move& mv) {
  const Normalized nz = normalize(heaps);
  if (auto why = legality_violation(nz.position, to_canonical_order(mv, nz.permutation)))
    throw IllegalMoveError(*why);
  std::vector<Tokens> next(heaps.begin(), heaps.end());
  if (const auto* d = std::get_if<DiagonalReduction>(&mv)) {
    for (Tokens& h : next) h -= d->t;
  } else {
    const auto& amounts = std::get<SubsetReduction>(mv).amounts;
    for (std::size_t i = 0; i < next.size(); ++i) next[i] -= amounts[i];
  }
  return next;
}

std::uint64_t follower_scan_size(const Position& p) noexcept {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t box = 1;
  for (Tokens h : p.heaps()) {
    if (h == kMax || __builtin_mul_overflow(box, h + 1, &box)) return kMax;
  }
  return box > kMax - p.smallest() ? kMax : box + p.smallest();
}

namespace {

void check_scan(const Position& p, std::size_t cap) {
  if (follower_scan_size(p) > cap)
    throw ResourceLimitError("follower scan of " + format_heaps(p.heaps()) +
                             " exceeds the cap of " + std::to_string(cap) + " states");
}

// Visits every labeled subset reduction of p: each vector `kept` with
// kept[i] <= p[i], kept != p, and at least one heap left untouched.
template <class F>
void for_each_subset_reduction(const Position& p, F&& visit) {
  const std::size_t k = p.k();
  std::vector<Tokens> kept(k, 0);
  for (;;) {
    bool untouched = false;
    bool all_kept = true;
    for (std::size_t i = 0; i < k; ++i) {
      if (kept[i] == p[i]) untouched = true;
      else all_kept = false;
    }
    if (untouched && !all_kept) visit(kept);
    std::size_t i = 0;
    while (i < k && kept[i] == p[i]) kept[i++] = 0;
    if (i == k) break;
    ++kept[i];
  }
}

// Removes `excess` tokens from heaps [from, k) of `heaps`, largest first, never
// taking a heap below `floor`.
void shave_largest_first(std::span<const Tokens> heaps, std::size_t from, Tokens excess,
                         Tokens floor, std::vector<Tokens>& amounts) {
  for (std::size_t i = heaps.size(); i-- > from && excess > 0;) {
    const Tokens room = heaps[i] > floor ? heaps[i] - floor : 0;
    const Tokens take = std::min(room, excess);
    amounts[i] += take;
    excess -= take;
  }
  if (excess != 0)
    throw std::logic_error("shave_largest_first: not enough room above the floor");
}

}  // namespace

std::vector<Position> followers(const Position& p, std::size_t cap) {
  check_scan(p, cap);
  std::vector<Position> out;
  for_each_subset_reduction(p, [&](const std::vector<Tokens>& kept) {
    out.push_back(Position::canonical(kept, p.k()));
  });
  for (Tokens t = 1; t <= p.smallest(); ++t) {
    std::vector<Tokens> next(p.heaps().begin(), p.heaps().end());
    for (Tokens& h : next) h -= t;
    out.push_back(Position::from_sorted(std::move(next), p.k()));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Analysis analyze(const Position& p) {
  if (auto n = p_class_index(p)) return Analysis{Verdict::P, n, std::nullopt, std::nullopt};

  const std::size_t k = p.k();
  const auto heaps = p.heaps();
  const Tokens m0 = p.smallest();
  const std::uint64_t n = triangular_floor_index(m0);
  const Tokens tn = triangular(n);
  const Tokens j = m0 - tn;
  const Tokens rest = p.rest_sum();
  // (k-1)T_n + n <= k*m0 <= total, so none of these wrap.
  const Tokens target = (k - 1) * tn + n;

  Derivation d{n, j, rest, StrategyCase::trim_rest, std::nullopt, std::nullopt};
  auto diagonal_to = [&](std::uint64_t m, StrategyCase branch) {
    d.branch = branch;
    d.target_class = m;
    d.diagonal = m0 - triangular(m);
    return Analysis{Verdict::N, std::nullopt, DiagonalReduction{*d.diagonal}, d};
  };
  auto subset = [&](std::vector<Tokens> amounts, StrategyCase branch) {
    d.branch = branch;
    d.target_class = n;
    return Analysis{Verdict::N, std::nullopt, SubsetReduction{std::move(amounts)}, d};
  };

  if (j == 0) {
    if (rest > target) {
      std::vector<Tokens> amounts(k, 0);
      shave_largest_first(heaps, 1, rest - target, tn, amounts);
      return subset(std::move(amounts), StrategyCase::trim_rest);
    }
    // rest < target: rest = (k-1)T_n + j' with j' < n.
    return diagonal_to(rest - (k - 1) * tn, StrategyCase::anchored_diagonal);
  }

  if (rest <= target + j) {
    // Ties go to the diagonal: it wins faster.
    return diagonal_to(rest - (k - 1) * m0, StrategyCase::shifted_diagonal);
  }

  const Tokens m1 = heaps[1];
  std::vector<Tokens> amounts(k, 0);
  if (static_cast<u128>(m1) < static_cast<u128>(tn) + n + 1) {
    // m_0 -> T_n; m_1 stays; heaps 2.. are shaved so m_1 + rest' = target.
    amounts[0] = j;
    shave_largest_first(heaps, 2, rest - target, tn, amounts);
    return subset(std::move(amounts), StrategyCase::trim_anchor);
  }
  // m_1 -> T_n becomes the anchor; m_0 stays a part; heaps 2.. are shaved so
  // m_0 + rest' = target.
  amounts[1] = m1 - tn;
  shave_largest_first(heaps, 2, m0 + (rest - m1) - target, tn, amounts);
  return subset(std::move(amounts), StrategyCase::drop_second);
}

std::vector<Move> all_winning_moves(const Position& p, std::size_t max_moves,
                                    std::size_t cap) {
  check_scan(p, cap);
  std::vector<Move> out;
  for_each_subset_reduction(p, [&](const std::vector<Tokens>& kept) {
    if (out.size() >= max_moves) return;
    if (!is_p_position(Position::canonical(kept, p.k()))) return;
    SubsetReduction mv{std::vector<Tokens>(p.k())};
    for (std::size_t i = 0; i < p.k(); ++i) mv.amounts[i] = p[i] - kept[i];
    out.emplace_back(std::move(mv));
  });
  for (Tokens t = 1; t <= p.smallest() && out.size() < max_moves; ++t) {
    std::vector<Tokens> next(p.heaps().begin(), p.heaps().end());
    for (Tokens& h : next) h -= t;
    if (is_p_position(Position::from_sorted(std::move(next), p.k())))
      out.emplace_back(DiagonalReduction{t});
  }
  return out;
}

std::optional<Move> engine_reply(const Position& p) {
  if (p.is_terminal()) return std::nullopt;
  Analysis a = analyze(p);
  if (a.winning_move) return std::move(*a.winning_move);
  SubsetReduction stall{std::vector<Tokens>(p.k(), 0)};
  stall.amounts.back() = 1;
  return stall;
}

std::string describe(const Move& mv) {
  if (const auto* d = std::get_if<DiagonalReduction>(&mv))
    return "diagonal -" + std::to_string(d->t);
  std::string s = "subset";
  bool first = true;
  const auto& amounts = std::get<SubsetReduction>(mv).amounts;
  for (std::size_t i = 0; i < amounts.size(); ++i) {
    if (amounts[i] == 0) continue;
    s += first ? " " : ", ";
    s += "heap" + std::to_string(i) + " -" + std::to_string(amounts[i]);
    first = false;
  }
  return s;
}

}  // namespace heapgame
