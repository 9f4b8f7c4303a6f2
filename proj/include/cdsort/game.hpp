#pragma once

// Two-player sorting games over cds and cdr moves, solved exactly by
// memoized backward induction.

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "cdsort/cdr.hpp"
#include "cdsort/cds.hpp"
#include "cdsort/perm.hpp"

namespace cdsort {

enum class GameKind { CdsFixedPoint, CdsNormal, CdsMisere, CdrFixedPoint, CdrNormal, CdrMisere };
enum class Player { One, Two };

inline Player other(Player p) { return p == Player::One ? Player::Two : Player::One; }
std::string_view to_string(Player p);
std::string_view to_string(GameKind k);
// Accepts the to_string names ("cds-game", "cdr-normal", ...).
GameKind parse_game_kind(std::string_view text);
bool is_cds_kind(GameKind k);
bool is_fixed_point_kind(GameKind k);

// cds fixed points are named by strategic-pile label x: the rotation
// [x+1 ... n 1 ... x], with x = 0 naming the identity.
Permutation cds_fixed_point_for_label(int n, int label);
int cds_label_of(std::span<const int> fixed_point);

struct GameSpec {
  GameKind kind = GameKind::CdsFixedPoint;
  Letters start;
  std::set<int> cds_favorable;                   // labels; cds_fixed_point only
  std::vector<SignedPermutation> cdr_favorable;  // cdr_fixed_point only

  static GameSpec cds(GameKind kind, const Permutation& start, std::set<int> favorable = {});
  static GameSpec cdr(GameKind kind, const SignedPermutation& start,
                      std::vector<SignedPermutation> favorable = {});
  int size() const noexcept { return static_cast<int>(start.size()); }
};

// Throws Error{InvalidF} for favorable entries that are not fixed points of the
// game's operation, Error{SignedEntryInUnsignedMode} for a signed cds start.
void validate(const GameSpec& spec);

using MoveContext = std::variant<CdsContext, CdrContext>;

struct Move {
  MoveContext context;
  Letters successor;

  std::string text() const;
};

// Legal moves in list order, one per distinct successor (the first context
// producing it is kept).
std::vector<Move> legal_moves(GameKind kind, std::span<const int> state);
// Parses "{(x,x+1),(y,y+1)}" (cds) or "(x,x+1)" (cdr) and resolves it against
// the state. Throws Error{ParseError | IllegalMove}.
Move resolve_move(GameKind kind, std::span<const int> state, std::string_view text);

struct GameOutcome {
  Player winner = Player::One;
  std::vector<Move> principal_variation;
  std::size_t states_explored = 0;
};

// Reentrant per instance; one solver per GameSpec, its table reused across
// queries from any position of that game.
class GameSolver {
 public:
  explicit GameSolver(GameSpec spec);

  const GameSpec& spec() const noexcept { return spec_; }

  Player winner_from(std::span<const int> state, Player to_move);
  // First move (list order) that keeps to_move winning, else the first move.
  std::optional<Move> best_move(std::span<const int> state, Player to_move);
  // Winner of a terminal position reached with to_move unable to move.
  Player terminal_winner(std::span<const int> state, Player to_move) const;

  GameOutcome solve();
  std::size_t states_explored() const noexcept { return memo_.size(); }

 private:
  GameSpec spec_;
  std::set<StateKey> cdr_favorable_keys_;
  std::unordered_map<StateKey, Player> memo_;
};

GameOutcome solve(const GameSpec& spec);

// Normal/misere cds winner from the parity of cds_duration.
Player cds_parity_fast_path(const Permutation& pi, GameKind kind);

// |F| >= 3/4 |SP| -> ONE; |F| < 1/4 |SP| - 2 -> TWO; otherwise no verdict.
std::optional<Player> greedy_verdict(std::size_t pile_size, std::size_t favorable_size);
// Throws Error{FNotSubsetOfPile} if F is not within SP(pi), Error{BadRequest}
// if pi is cds-sortable.
std::optional<Player> greedy_bound(const Permutation& pi, const std::set<int>& favorable);

// Pile elements favoring each player before the mover's turn.
struct PileTally {
  int favor_one = 0;
  int favor_two = 0;
};
PileTally pile_tally(const Permutation& pi, const std::set<int>& favorable);

// The move that removes the most pile elements not in F (ties: list order).
// Throws Error{NoMove} at a fixed point, Error{FNotSubsetOfPile}.
CdsContext greedy_strategy_move(const Permutation& pi, const std::set<int>& favorable);

}  // namespace cdsort
