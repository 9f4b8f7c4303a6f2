#include "doctest.h"

#include "cdsort/cdr.hpp"
#include "cdsort/cds.hpp"
#include "cdsort/error.hpp"
#include "oracles.hpp"

using namespace cdsort;

namespace {

SignedPermutation S(const char* s) { return parse_signed_permutation(s); }

SignedPermutation step(const SignedPermutation& sp, int low) {
  const auto ctx = find_cdr_context(sp.letters(), low);
  REQUIRE(ctx.has_value());
  return apply_cdr(sp, *ctx);
}

std::vector<std::string> texts(const std::vector<SignedPermutation>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(s.to_string());
  return out;
}

}  // namespace

TEST_SUITE("cdr") {
  TEST_CASE("single application") {
    CHECK(step(S("[3 -1 -2 5 4]"), 2).to_string() == "[1 -3 -2 5 4]");
    CHECK(!find_cdr_context(S("[1 2 3]").letters(), 1));
    CdrContext bogus;
    bogus.low = 1;
    bogus.cuts = {0, 1};
    CHECK_THROWS_AS(apply_cdr(S("[1 2 3]"), bogus), Error);
  }

  TEST_CASE("play lengths differ") {
    auto a = S("[3 -1 -2 5 4]");
    for (int low : {2, 3, 4, 1}) a = step(a, low);
    CHECK(a.is_identity());
    auto b = step(step(S("[3 -1 -2 5 4]"), 2), 1);
    CHECK(b.to_string() == "[1 2 3 5 4]");
    CHECK(is_cdr_fixed_point(b));
  }

  TEST_CASE("expansion and D for [3 -1 -2 5 4]") {
    const auto pi = S("[3 -1 -2 5 4]");
    CHECK(expand_star(pi).to_string() == "[5 6 2 1 4 3 9 10 7 8]");
    CHECK(build_d(pi).to_string() == "(0 4)(1 5)(2 9 11 7)(3 6 10 8)");
    const auto sigma = step(pi, 2);
    CHECK(expand_star(sigma).to_string() == "[1 2 6 5 4 3 9 10 7 8]");
    CHECK(build_d(sigma).to_string() == "(0)(1)(2 9 11 7)(3 6 10 8)(4)(5)");
    CHECK(cdr_necessary_condition(pi));
    CHECK(search_cdr_sort(pi, CdrTarget::Identity).has_value());
  }

  TEST_CASE("converse counterexample [2 4 3 5 -1 6]") {
    const auto pi = S("[2 4 3 5 -1 6]");
    CHECK(expand_star(pi).to_string() == "[3 4 7 8 5 6 9 10 2 1 11 12]");
    // The printed form leaves the fixed point 2n+1 = 13 implicit.
    CHECK(build_d(pi).to_string() == "(0 11 2)(1 3 10)(4 8 6)(5 7 9)(12)(13)");
    CHECK(cdr_necessary_condition(pi));
    CHECK(!search_cdr_sort(pi, CdrTarget::Identity));
    const auto ctxs = list_cdr_contexts(pi);
    REQUIRE(ctxs.size() == 1);
    CHECK(ctxs[0].low == 1);
    const auto s1 = apply_cdr(pi, ctxs[0]);
    CHECK(s1.to_string() == "[-5 -3 -4 -2 -1 6]");
    REQUIRE(list_cdr_contexts(s1).size() == 1);
    CHECK(step(s1, 5).to_string() == "[1 2 4 3 5 6]");
    CHECK(texts(reachable_cdr_fixed_points(pi)) == std::vector<std::string>{"[1 2 4 3 5 6]"});
  }

  TEST_CASE("fixed points of [5 -2 7 4 -1 3 6]") {
    const auto pi = S("[5 -2 7 4 -1 3 6]");
    CHECK(!search_cdr_sort(pi, CdrTarget::Identity));
    CHECK(!search_cdr_sort(pi, CdrTarget::ReversedNegative));
    // The six printed fixed points plus [5 1 2 3 6 7 4], reached by (2,3), (6,7), (1,2).
    CHECK(texts(reachable_cdr_fixed_points(pi)) ==
          std::vector<std::string>{"[-1 -7 -6 -5 -4 -3 -2]", "[-1 -5 -4 -7 -6 -3 -2]",
                                   "[5 1 2 3 4 7 6]", "[5 1 2 3 6 7 4]", "[5 6 7 1 2 3 4]",
                                   "[7 1 2 3 4 5 6]", "[7 4 5 1 2 3 6]"});
    CHECK(step(step(step(pi, 2), 6), 1).to_string() == "[5 1 2 3 6 7 4]");
  }

  TEST_CASE("reverse sortable despite the parity hypothesis") {
    const auto pi = S("[8 3 6 1 -4 7 2 5]");
    CHECK(search_cdr_sort(pi, CdrTarget::ReversedNegative).has_value());
    CHECK(!search_cdr_sort(pi, CdrTarget::Identity));
  }

  TEST_CASE("witnesses replay to the target") {
    for (const auto& w : oracle::all_signed(4)) {
      for (CdrTarget t : {CdrTarget::Identity, CdrTarget::ReversedNegative}) {
        const auto seq = search_cdr_sort(SignedPermutation(w), t);
        if (!seq) continue;
        SignedPermutation cur(w);
        for (const auto& c : *seq) cur = apply_cdr(cur, c);
        CHECK(Letters(cur.letters().begin(), cur.letters().end()) == target_letters(t, 4));
      }
    }
  }

  TEST_CASE("contexts agree with the token-word oracle") {
    for (int n = 1; n <= 5; ++n) {
      for (const auto& w : oracle::all_signed(n)) {
        std::set<oracle::Word> lib;
        for (const auto& c : list_cdr_contexts(w)) lib.insert(apply_cdr(w, c));
        const auto ref = oracle::cdr_successors(w);
        CHECK(lib == std::set<oracle::Word>(ref.begin(), ref.end()));
        CHECK(is_cdr_fixed_point(w) == ref.empty());
      }
    }
  }

  TEST_CASE("dihedral generators") {
    for (int n = 2; n <= 6; ++n) {
      const auto [mu, nu] = dihedral_generators(n);
      std::set<SignedPermutation> group{SignedPermutation::identity(n)};
      std::vector<SignedPermutation> frontier{SignedPermutation::identity(n)};
      while (!frontier.empty()) {
        const auto g = frontier.back();
        frontier.pop_back();
        for (const auto& h : {compose(mu, g), compose(nu, g)})
          if (group.insert(h).second) frontier.push_back(h);
      }
      const auto fam = dihedral_family(n);
      CHECK(group.size() == static_cast<std::size_t>(2 * n));
      CHECK(group == std::set<SignedPermutation>(fam.begin(), fam.end()));
      std::set<SignedPermutation> uniform;
      for (const auto& w : oracle::all_signed(n))
        if (is_cdr_fixed_point(w) && is_cds_fixed_point(w)) uniform.emplace(w);
      CHECK(uniform == group);
    }
  }
}
