#include "doctest.h"

#include "cdsort/error.hpp"
#include "cdsort/game.hpp"
#include "oracles.hpp"
#include "sweeps.hpp"

using namespace cdsort;

namespace {

Permutation P(const char* s) { return parse_permutation(s); }
const Permutation kAlpha3 = parse_permutation("[6 5 4 3 2 1]");

Player winner(GameKind k, const Permutation& pi, std::set<int> f = {}) {
  return solve(GameSpec::cds(k, pi, std::move(f))).winner;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::BadRequest;
}

int oracle_kind(GameKind k) {
  if (is_fixed_point_kind(k)) return 0;
  return k == GameKind::CdsNormal || k == GameKind::CdrNormal ? 1 : 2;
}

}  // namespace

TEST_SUITE("game") {
  TEST_CASE("reverse order game") {
    CHECK(winner(GameKind::CdsFixedPoint, kAlpha3, {1}) == Player::Two);
    CHECK(winner(GameKind::CdsFixedPoint, kAlpha3, {1, 3}) == Player::One);
    CHECK(winner(GameKind::CdsFixedPoint, kAlpha3, {3, 5}) == Player::One);
    CHECK(winner(GameKind::CdsFixedPoint, kAlpha3, {1, 5}) == Player::One);
    CHECK(winner(GameKind::CdsFixedPoint, kAlpha3, {}) == Player::Two);
  }

  TEST_CASE("alpha law for m = 2, 3, 4") {
    for (int m = 2; m <= 4; ++m) CHECK(sweeps::alpha_law_violations(m) == 0);
  }

  TEST_CASE("every reachable fixed point favorable") {
    for (const auto& w : oracle::all_perms(5)) {
      std::set<int> f;
      for (int k : reachable_cds_fixed_points(Permutation(w))) f.insert(k - 1);
      CHECK(winner(GameKind::CdsFixedPoint, Permutation(w), f) == Player::One);
    }
  }

  TEST_CASE("normal and misere conventions") {
    CHECK(winner(GameKind::CdsNormal, P("[4 1 3 2]")) == Player::One);
    CHECK(winner(GameKind::CdsMisere, P("[4 1 3 2]")) == Player::Two);
    CHECK(winner(GameKind::CdsNormal, Permutation::identity(4)) == Player::Two);
    CHECK(winner(GameKind::CdsMisere, Permutation::identity(4)) == Player::One);
    CHECK(cds_parity_fast_path(Permutation::identity(4), GameKind::CdsNormal) == Player::Two);
    CHECK(cds_parity_fast_path(P("[4 1 3 2]"), GameKind::CdsNormal) == Player::One);
    CHECK(cds_parity_fast_path(P("[4 1 3 2]"), GameKind::CdsMisere) == Player::Two);
    CHECK(winner(GameKind::CdsFixedPoint, Permutation::identity(3), {0}) == Player::One);
    CHECK(winner(GameKind::CdsFixedPoint, Permutation::identity(3), {1}) == Player::Two);
  }

  TEST_CASE("principal variation ends at a terminal with the stated winner") {
    const auto g = solve(GameSpec::cds(GameKind::CdsFixedPoint, kAlpha3, {1}));
    REQUIRE(!g.principal_variation.empty());
    const auto& last = g.principal_variation.back().successor;
    CHECK(is_cds_fixed_point(last));
    CHECK(cds_label_of(last) != 1);
    CHECK(g.states_explored > 0);
  }

  TEST_CASE("greedy thresholds") {
    CHECK(greedy_verdict(4, 3) == Player::One);
    CHECK(greedy_verdict(20, 2) == Player::Two);
    CHECK(greedy_verdict(20, 3) == std::nullopt);
    CHECK(greedy_verdict(4, 2) == std::nullopt);
    CHECK(greedy_bound(kAlpha3, {1, 3, 5}) == Player::One);
    CHECK(code_of([] { greedy_bound(P("[1 2 3]"), {}); }) == ErrorCode::BadRequest);
    CHECK(code_of([] { greedy_bound(kAlpha3, {2}); }) == ErrorCode::FNotSubsetOfPile);
  }

  TEST_CASE("greedy strategy move") {
    const auto ctx = greedy_strategy_move(kAlpha3, {1});
    const auto after = strategic_pile(apply_cds(kAlpha3, ctx));
    CHECK((!after.contains(3) || !after.contains(5)));
    CHECK(code_of([] { greedy_strategy_move(P("[2 3 1]"), {}); }) == ErrorCode::NoMove);
    // Find a position where one move removes two non-F pile elements.
    bool found = false;
    for (const auto& w : oracle::all_perms(6)) {
      const Permutation pi(w);
      const auto pile = strategic_pile(pi);
      if (pile.size() < 3) continue;
      const std::set<int> f{pile.elements.front()};
      int best = 0;
      for (const auto& c : list_cds_contexts(pi)) {
        const auto a = strategic_pile(apply_cds(pi, c));
        int removed = 0;
        for (int x : pile.elements) removed += !f.count(x) && !a.contains(x);
        best = std::max(best, removed);
      }
      if (best < 2) continue;
      found = true;
      const auto g = strategic_pile(apply_cds(pi, greedy_strategy_move(pi, f)));
      int removed = 0;
      for (int x : pile.elements) removed += !f.count(x) && !g.contains(x);
      CHECK(removed == 2);
    }
    CHECK(found);
  }

  TEST_CASE("spec validation") {
    CHECK(code_of([] { GameSolver(GameSpec::cds(GameKind::CdsFixedPoint, kAlpha3, {6})); }) ==
          ErrorCode::InvalidF);
    CHECK(code_of([] {
            GameSolver(GameSpec::cdr(GameKind::CdrFixedPoint, parse_signed_permutation("[2 -1]"),
                                     {parse_signed_permutation("[2 -1]")}));
          }) == ErrorCode::InvalidF);
    GameSpec bad;
    bad.kind = GameKind::CdsNormal;
    bad.start = {2, -1};
    CHECK(code_of([&] { validate(bad); }) == ErrorCode::SignedEntryInUnsignedMode);
    CHECK(parse_game_kind("cdr-misere") == GameKind::CdrMisere);
    CHECK(code_of([] { parse_game_kind("chess"); }) == ErrorCode::ParseError);
  }

  TEST_CASE("moves resolve from text") {
    const auto m = resolve_move(GameKind::CdsFixedPoint, P("[4 1 3 2]").letters(), "{(3,4),(1,2)}");
    CHECK(format_letters(m.successor) == "[3 4 1 2]");
    CHECK(m.text() == "{(1,2),(3,4)}");
    CHECK(code_of([] { resolve_move(GameKind::CdsNormal, P("[1 2 3]").letters(), "{(1,2),(2,3)}"); }) ==
          ErrorCode::IllegalMove);
    const auto r = resolve_move(GameKind::CdrNormal, parse_signed_permutation("[3 -1 -2 5 4]").letters(),
                                "(2,3)");
    CHECK(format_letters(r.successor) == "[1 -3 -2 5 4]");
    CHECK(legal_moves(GameKind::CdsFixedPoint, P("[4 1 3 2]").letters()).size() == 3);
  }

  TEST_CASE("cds solver agrees with plain minimax") {
    for (int n = 1; n <= 5; ++n) {
      for (const auto& w : oracle::all_perms(n)) {
        for (GameKind k : {GameKind::CdsNormal, GameKind::CdsMisere}) {
          const bool ref = oracle::one_wins(w, true, oracle_kind(k), {}, oracle::cds_successors);
          CHECK((winner(k, Permutation(w)) == Player::One) == ref);
        }
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
          std::set<int> f;
          std::set<oracle::Word> fw;
          for (int x = 0; x < n; ++x)
            if (mask >> x & 1u) {
              f.insert(x);
              fw.insert(oracle::rotation(n, x + 1));
            }
          const bool ref = oracle::one_wins(w, true, 0, fw, oracle::cds_successors);
          CHECK((winner(GameKind::CdsFixedPoint, Permutation(w), f) == Player::One) == ref);
        }
      }
    }
  }

  TEST_CASE("cdr solver agrees with plain minimax") {
    for (int n = 1; n <= 4; ++n) {
      for (const auto& w : oracle::all_signed(n)) {
        const SignedPermutation sp(w);
        for (GameKind k : {GameKind::CdrNormal, GameKind::CdrMisere}) {
          const bool ref = oracle::one_wins(w, true, oracle_kind(k), {}, oracle::cdr_successors);
          CHECK((solve(GameSpec::cdr(k, sp)).winner == Player::One) == ref);
        }
        // F = positive fixed points, and F = {identity}.
        oracle::PlayExplorer ex(oracle::cdr_successors);
        const auto terminals = ex.explore(w).terminals;
        std::vector<SignedPermutation> pos;
        std::set<oracle::Word> posw;
        for (const auto& t : terminals)
          if (t.front() > 0) {
            pos.emplace_back(t);
            posw.insert(t);
          }
        const bool ref = oracle::one_wins(w, true, 0, posw, oracle::cdr_successors);
        CHECK((solve(GameSpec::cdr(GameKind::CdrFixedPoint, sp, pos)).winner == Player::One) == ref);
        const std::set<oracle::Word> idw{oracle::identity(n)};
        const bool ref_id = oracle::one_wins(w, true, 0, idw, oracle::cdr_successors);
        CHECK((solve(GameSpec::cdr(GameKind::CdrFixedPoint, sp, {SignedPermutation::identity(n)}))
                   .winner == Player::One) == ref_id);
      }
    }
  }

  TEST_CASE("F monotonicity for n <= 5") {
    for (int n = 1; n <= 5; ++n) {
      for (const auto& w : oracle::all_perms(n)) {
        std::vector<bool> one(1u << n);
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
          std::set<int> f;
          for (int x = 0; x < n; ++x)
            if (mask >> x & 1u) f.insert(x);
          one[mask] = winner(GameKind::CdsFixedPoint, Permutation(w), f) == Player::One;
        }
        for (unsigned a = 0; a < one.size(); ++a)
          for (unsigned b = 0; b < one.size(); ++b)
            if ((a & b) == a && one[a]) CHECK(one[b]);
      }
    }
  }

  TEST_CASE("engine moves preserve a winning verdict") {
    for (const auto& w : oracle::all_perms(5)) {
      GameSolver s(GameSpec::cds(GameKind::CdsFixedPoint, Permutation(w), {0, 2}));
      for (Player p : {Player::One, Player::Two}) {
        if (s.winner_from(w, p) != p) continue;
        const auto m = s.best_move(w, p);
        if (!m) continue;
        CHECK(s.winner_from(m->successor, other(p)) == p);
      }
    }
  }

  TEST_CASE("game laws over S_5") {
    for (const auto& [name, count] : sweeps::game_laws(5)) {
      if (name == "greedy verdicts checked") continue;
      INFO(name);
      CHECK(count == 0);
    }
  }
}
