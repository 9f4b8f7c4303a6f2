#include "cdsort/game.hpp"

#include <algorithm>

#include "cdsort/error.hpp"

namespace cdsort {

std::string_view to_string(Player p) { return p == Player::One ? "ONE" : "TWO"; }

std::string_view to_string(GameKind k) {
  switch (k) {
    case GameKind::CdsFixedPoint: return "cds-game";
    case GameKind::CdsNormal: return "cds-normal";
    case GameKind::CdsMisere: return "cds-misere";
    case GameKind::CdrFixedPoint: return "cdr-game";
    case GameKind::CdrNormal: return "cdr-normal";
    case GameKind::CdrMisere: return "cdr-misere";
  }
  return "cds-game";
}

GameKind parse_game_kind(std::string_view text) {
  for (GameKind k : {GameKind::CdsFixedPoint, GameKind::CdsNormal, GameKind::CdsMisere,
                     GameKind::CdrFixedPoint, GameKind::CdrNormal, GameKind::CdrMisere}) {
    if (text == to_string(k)) return k;
  }
  throw Error(ErrorCode::ParseError, "unknown game kind '" + std::string(text) + "'");
}

bool is_cds_kind(GameKind k) {
  return k == GameKind::CdsFixedPoint || k == GameKind::CdsNormal || k == GameKind::CdsMisere;
}

bool is_fixed_point_kind(GameKind k) {
  return k == GameKind::CdsFixedPoint || k == GameKind::CdrFixedPoint;
}

namespace {

bool is_normal(GameKind k) { return k == GameKind::CdsNormal || k == GameKind::CdrNormal; }

}  // namespace

Permutation cds_fixed_point_for_label(int n, int label) {
  if (label < 0 || label >= n) {
    throw Error(ErrorCode::InvalidF,
                "label " + std::to_string(label) + " names no cds fixed point of size " + std::to_string(n));
  }
  return rotation_fixed_point(n, label + 1);
}

int cds_label_of(std::span<const int> fixed_point) { return fixed_point.front() - 1; }

GameSpec GameSpec::cds(GameKind kind, const Permutation& start, std::set<int> favorable) {
  GameSpec s;
  s.kind = kind;
  s.start.assign(start.letters().begin(), start.letters().end());
  s.cds_favorable = std::move(favorable);
  return s;
}

GameSpec GameSpec::cdr(GameKind kind, const SignedPermutation& start,
                       std::vector<SignedPermutation> favorable) {
  GameSpec s;
  s.kind = kind;
  s.start.assign(start.letters().begin(), start.letters().end());
  s.cdr_favorable = std::move(favorable);
  return s;
}

void validate(const GameSpec& spec) {
  const int n = spec.size();
  if (is_cds_kind(spec.kind)) {
    Permutation check(spec.start);  // rejects signed letters
    for (int label : spec.cds_favorable) cds_fixed_point_for_label(n, label);
  } else {
    SignedPermutation check(spec.start);
    for (const auto& f : spec.cdr_favorable) {
      if (f.size() != n || !is_cdr_fixed_point(f)) {
        throw Error(ErrorCode::InvalidF, f.to_string() + " is not a cdr fixed point of size " +
                                             std::to_string(n));
      }
    }
  }
  if (n > kMaxPackedSize) {
    throw Error(ErrorCode::TooLarge, "games are solved for n <= " + std::to_string(kMaxPackedSize));
  }
}

std::string Move::text() const {
  return std::visit([](const auto& ctx) { return ctx.to_string(); }, context);
}

std::vector<Move> legal_moves(GameKind kind, std::span<const int> state) {
  std::vector<Move> out;
  const auto add = [&](MoveContext ctx, Letters next) {
    for (const auto& m : out)
      if (m.successor == next) return;
    out.push_back(Move{std::move(ctx), std::move(next)});
  };
  if (is_cds_kind(kind)) {
    for (const auto& ctx : list_cds_contexts(state)) add(ctx, apply_cds(state, ctx));
  } else {
    for (const auto& ctx : list_cdr_contexts(state)) add(ctx, apply_cdr(state, ctx));
  }
  return out;
}

Move resolve_move(GameKind kind, std::span<const int> state, std::string_view text) {
  if (is_cds_kind(kind)) {
    const auto [a, b] = parse_cds_context(text);
    const auto ctx = find_cds_context(state, a, b);
    if (!ctx) {
      throw Error(ErrorCode::IllegalMove,
                  std::string(text) + " is not a cds context of " + format_letters(state));
    }
    return Move{*ctx, apply_cds(state, *ctx)};
  }
  const Pointer p = parse_pointer(text);
  const auto ctx = find_cdr_context(state, p.low);
  if (!ctx) {
    throw Error(ErrorCode::IllegalMove,
                std::string(text) + " is not a cdr context of " + format_letters(state));
  }
  return Move{*ctx, apply_cdr(state, *ctx)};
}

GameSolver::GameSolver(GameSpec spec) : spec_(std::move(spec)) {
  validate(spec_);
  for (const auto& f : spec_.cdr_favorable) cdr_favorable_keys_.insert(pack_state(f.letters()));
}

Player GameSolver::terminal_winner(std::span<const int> state, Player to_move) const {
  switch (spec_.kind) {
    case GameKind::CdsFixedPoint:
      return spec_.cds_favorable.count(cds_label_of(state)) ? Player::One : Player::Two;
    case GameKind::CdrFixedPoint:
      return cdr_favorable_keys_.count(pack_state(state)) ? Player::One : Player::Two;
    case GameKind::CdsNormal:
    case GameKind::CdrNormal:
      // The player who cannot move lost: the opponent made the last move.
      return other(to_move);
    case GameKind::CdsMisere:
    case GameKind::CdrMisere:
      return to_move;
  }
  return Player::Two;
}

Player GameSolver::winner_from(std::span<const int> state, Player to_move) {
  const StateKey key = (pack_state(state) << 1) | (to_move == Player::Two ? 1u : 0u);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  const auto moves = legal_moves(spec_.kind, state);
  Player result;
  if (moves.empty()) {
    result = terminal_winner(state, to_move);
  } else {
    result = other(to_move);
    for (const auto& m : moves) {
      if (winner_from(m.successor, other(to_move)) == to_move) {
        result = to_move;
        break;
      }
    }
  }
  memo_.emplace(key, result);
  return result;
}

std::optional<Move> GameSolver::best_move(std::span<const int> state, Player to_move) {
  auto moves = legal_moves(spec_.kind, state);
  if (moves.empty()) return std::nullopt;
  for (auto& m : moves)
    if (winner_from(m.successor, other(to_move)) == to_move) return std::move(m);
  return std::move(moves.front());
}

GameOutcome GameSolver::solve() {
  GameOutcome out;
  out.winner = winner_from(spec_.start, Player::One);
  Letters cur = spec_.start;
  Player mover = Player::One;
  while (auto m = best_move(cur, mover)) {
    cur = m->successor;
    out.principal_variation.push_back(std::move(*m));
    mover = other(mover);
  }
  out.states_explored = states_explored();
  return out;
}

GameOutcome solve(const GameSpec& spec) { return GameSolver(spec).solve(); }

Player cds_parity_fast_path(const Permutation& pi, GameKind kind) {
  if (kind != GameKind::CdsNormal && kind != GameKind::CdsMisere) {
    throw Error(ErrorCode::BadRequest, "parity fast path applies to cds normal/misere games only");
  }
  const bool odd = cds_duration(pi) % 2 == 1;
  // Normal play: ONE makes the last move exactly when the length is odd.
  if (is_normal(kind)) return odd ? Player::One : Player::Two;
  return odd ? Player::Two : Player::One;
}

std::optional<Player> greedy_verdict(std::size_t pile_size, std::size_t favorable_size) {
  if (4 * favorable_size >= 3 * pile_size) return Player::One;
  if (4 * favorable_size + 8 < pile_size) return Player::Two;
  return std::nullopt;
}

namespace {

void require_subset(const StrategicPile& pile, const std::set<int>& favorable) {
  for (int x : favorable) {
    if (!pile.contains(x)) {
      throw Error(ErrorCode::FNotSubsetOfPile,
                  std::to_string(x) + " is not in the strategic pile " + pile.to_string());
    }
  }
}

}  // namespace

std::optional<Player> greedy_bound(const Permutation& pi, const std::set<int>& favorable) {
  const StrategicPile pile = strategic_pile(pi);
  if (pile.empty()) throw Error(ErrorCode::BadRequest, pi.to_string() + " is cds-sortable");
  require_subset(pile, favorable);
  return greedy_verdict(pile.size(), favorable.size());
}

PileTally pile_tally(const Permutation& pi, const std::set<int>& favorable) {
  PileTally t;
  for (int x : strategic_pile(pi).elements) (favorable.count(x) ? t.favor_one : t.favor_two)++;
  return t;
}

CdsContext greedy_strategy_move(const Permutation& pi, const std::set<int>& favorable) {
  const auto ctxs = list_cds_contexts(pi);
  if (ctxs.empty()) throw Error(ErrorCode::NoMove, pi.to_string() + " is a cds fixed point");
  const StrategicPile pile = strategic_pile(pi);
  require_subset(pile, favorable);
  const CdsContext* best = nullptr;
  int best_removed = -1;
  for (const auto& ctx : ctxs) {
    const StrategicPile after = strategic_pile(apply_cds(pi, ctx));
    int removed = 0;
    for (int x : pile.elements)
      if (!favorable.count(x) && !after.contains(x)) ++removed;
    if (removed > best_removed) {
      best_removed = removed;
      best = &ctx;
    }
  }
  return *best;
}

}  // namespace cdsort
