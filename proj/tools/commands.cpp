#include "commands.hpp"

#include <algorithm>
#include <sstream>

#include "CLI11.hpp"

#include "cdsort/cdr.hpp"
#include "cdsort/cds.hpp"
#include "cdsort/enumerate.hpp"
#include "cdsort/error.hpp"
#include "cdsort/game.hpp"
#include "cdsort/http_server.hpp"
#include "cdsort/service.hpp"

namespace cdsort::cli {

namespace {

using nlohmann::json;

// Largest signed size for which analyze still runs the cdr searches.
constexpr int kAnalyzeSearchLimit = 7;

struct Options {
  bool is_signed = false;
  bool as_json = false;
  int n = 0;
  int from = 0;
  std::string F;
  std::string target = "identity";
  std::string op;
  std::string perm;
  std::string context;
  std::string what;
  std::string kind;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string journal;
};

CommandResult ok(std::string text, json body, bool as_json, int code = 0) {
  CommandResult r;
  r.exit_code = code;
  r.out = as_json ? body.dump(2) + "\n" : std::move(text);
  r.json = std::move(body);
  return r;
}

json ints(const std::vector<int>& v) { return json(v); }

Letters copy(std::span<const int> s) { return Letters(s.begin(), s.end()); }

CdrTarget parse_target(const std::string& t) {
  if (t == "identity") return CdrTarget::Identity;
  if (t == "reverse") return CdrTarget::ReversedNegative;
  throw Error(ErrorCode::ParseError, "--target must be identity or reverse");
}

// Splits at commas outside brackets, so "[1 2],[-2 -1]" is two items.
std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

CommandResult analyze(const Options& o) {
  std::ostringstream t;
  json j;
  if (!o.is_signed) {
    const Permutation pi = parse_permutation(o.perm);
    const CyclePermutation c = build_c(pi);
    const StrategicPile pile = strategic_pile(pi);
    const bool sortable = is_cds_sortable(pi);
    const int duration = cds_duration(pi);
    const auto ks = reachable_cds_fixed_points(pi);
    json fps = json::array();
    for (int k : ks) fps.push_back(rotation_fixed_point(pi.size(), k).to_string());
    j = {{"permutation", pi.to_string()},
         {"c", c.to_string()},
         {"cycle_count", c.cycle_count()},
         {"pile", ints(pile.elements)},
         {"sortable", sortable},
         {"duration", duration},
         {"reachable_fixed_points", fps},
         {"parity_class", to_string(parity_class(pi))}};
    t << "permutation       " << pi << "\n"
      << "C                 " << c.to_string() << "\n"
      << "cycle count       " << c.cycle_count() << "\n"
      << "strategic pile    " << pile.to_string() << "\n"
      << "sortable          " << (sortable ? "yes" : "no") << "\n"
      << "duration          " << duration << "\n"
      << "fixed points      ";
    for (std::size_t i = 0; i < ks.size(); ++i)
      t << (i ? " " : "") << rotation_fixed_point(pi.size(), ks[i]);
    t << "\nparity class      " << to_string(parity_class(pi)) << "\n";
  } else {
    const SignedPermutation sp = parse_signed_permutation(o.perm);
    const CyclePermutation d = build_d(sp);
    const auto star = expand_star(sp);
    const bool necessary = cdr_necessary_condition(sp);
    j = {{"permutation", sp.to_string()},
         {"expansion", ints(star.values)},
         {"d", d.to_string()},
         {"cycle_count", d.cycle_count()},
         {"necessary_condition", necessary},
         {"d_pile_segment", ints(d_pile_segment(sp))},
         {"fixed_point", is_cdr_fixed_point(sp)},
         {"parity_class", to_string(signed_parity_class(sp))}};
    t << "permutation       " << sp << "\n"
      << "expansion         " << star.to_string() << "\n"
      << "D                 " << d.to_string() << "\n"
      << "cycle count       " << d.cycle_count() << "\n"
      << "0, 2n separated   " << (necessary ? "yes" : "no") << "\n";
    if (sp.size() <= kAnalyzeSearchLimit) {
      const bool sortable = search_cdr_sort(sp, CdrTarget::Identity).has_value();
      const bool reverse = search_cdr_sort(sp, CdrTarget::ReversedNegative).has_value();
      json fps = json::array();
      std::string fp_text;
      for (const auto& f : reachable_cdr_fixed_points(sp)) {
        fps.push_back(f.to_string());
        fp_text += (fp_text.empty() ? "" : " ") + f.to_string();
      }
      j["sortable"] = sortable;
      j["reverse_sortable"] = reverse;
      j["reachable_fixed_points"] = fps;
      t << "sortable          " << (sortable ? "yes" : "no") << "\n"
        << "reverse sortable  " << (reverse ? "yes" : "no") << "\n"
        << "fixed points      " << fp_text << "\n";
    } else {
      j["sortable"] = nullptr;
      j["reverse_sortable"] = nullptr;
      j["reachable_fixed_points"] = nullptr;
      t << "searches skipped  n > " << kAnalyzeSearchLimit << "\n";
    }
    t << "parity class      " << to_string(signed_parity_class(sp)) << "\n";
  }
  return ok(t.str(), std::move(j), o.as_json);
}

CommandResult apply(const Options& o) {
  Letters next;
  std::string ctx_text;
  if (o.op == "cds") {
    // Validates the letters for the chosen mode.
    const Letters l = o.is_signed ? copy(parse_signed_permutation(o.perm).letters())
                                  : copy(parse_permutation(o.perm).letters());
    const auto [a, b] = parse_cds_context(o.context);
    const auto ctx = find_cds_context(l, a, b);
    if (!ctx) {
      throw Error(ErrorCode::InvalidContext, o.context + " is not a cds context of " + format_letters(l));
    }
    next = apply_cds(l, *ctx);
    ctx_text = ctx->to_string();
  } else {
    const SignedPermutation sp = parse_signed_permutation(o.perm);
    const Pointer p = parse_pointer(o.context);
    const auto ctx = find_cdr_context(sp.letters(), p.low);
    if (!ctx) {
      throw Error(ErrorCode::InvalidContext, o.context + " is not a cdr context of " + sp.to_string());
    }
    next = apply_cdr(sp.letters(), *ctx);
    ctx_text = ctx->to_string();
  }
  json j{{"op", o.op}, {"context", ctx_text}, {"result", format_letters(next)}};
  return ok(format_letters(next) + "\n", std::move(j), o.as_json);
}

CommandResult sort(const Options& o) {
  json steps = json::array();
  std::string text;
  if (o.op == "cds") {
    const Permutation pi = parse_permutation(o.perm);
    if (!is_cds_sortable(pi)) {
      return ok("not sortable\n", json{{"sortable", false}, {"steps", steps}}, o.as_json,
                kExitNotSortable);
    }
    Permutation cur = pi;
    for (const auto& ctx : sort_by_cds(pi)) {
      cur = apply_cds(cur, ctx);
      steps.push_back({{"context", ctx.to_string()}, {"result", cur.to_string()}});
      text += ctx.to_string() + " -> " + cur.to_string() + "\n";
    }
  } else {
    const SignedPermutation sp = parse_signed_permutation(o.perm);
    if (sp.size() > kMaxPackedSize) throw Error(ErrorCode::TooLarge, "cdr search is bounded at n <= 12");
    const auto w = search_cdr_sort(sp, parse_target(o.target));
    if (!w) {
      return ok("not sortable\n", json{{"sortable", false}, {"steps", steps}}, o.as_json,
                kExitNotSortable);
    }
    SignedPermutation cur = sp;
    for (const auto& ctx : *w) {
      cur = apply_cdr(cur, ctx);
      steps.push_back({{"context", ctx.to_string()}, {"result", cur.to_string()}});
      text += ctx.to_string() + " -> " + cur.to_string() + "\n";
    }
  }
  if (text.empty()) text = "already sorted\n";
  return ok(text, json{{"sortable", true}, {"steps", steps}}, o.as_json);
}

json report_json(const CountReport& r) {
  return {{"n", r.n}, {"count", r.count}, {"elapsed_ms", r.elapsed_ms}, {"method", r.method}};
}

CommandResult enumerate(const Options& o) {
  if (o.n < 1) throw Error(ErrorCode::OutOfRange, "--n must be positive");
  const int lo = o.from > 0 ? std::min(o.from, o.n) : o.n;
  std::vector<CountReport> rows;
  if (o.what == "holmes-plummer") {
    // --n is k here; each row checks count(2k+1) against (k+1)(2k)!.
    json arr = json::array();
    std::string text;
    bool all = true;
    for (int k = lo; k <= o.n; ++k) {
      const CountReport r = count_cds_sortable(2 * k + 1);
      const bool holds = r.count == holmes_plummer_value(k);
      all = all && holds;
      arr.push_back({{"k", k}, {"n", 2 * k + 1}, {"count", r.count},
                     {"predicted", holmes_plummer_value(k)}, {"holds", holds}});
      text += "k=" + std::to_string(k) + " n=" + std::to_string(2 * k + 1) + " count=" +
              std::to_string(r.count) + " predicted=" + std::to_string(holmes_plummer_value(k)) +
              (holds ? " holds\n" : " FAILS\n");
    }
    return ok(text, json{{"rows", arr}, {"holds", all}}, o.as_json);
  }
  for (int n = lo; n <= o.n; ++n) {
    if (o.what == "cds-sortable") {
      rows.push_back(count_cds_sortable(n));
    } else if (o.what == "cdr-sortable") {
      rows.push_back(count_cdr(n, parse_target(o.target)));
    } else if (o.what == "cds-fixed-points") {
      rows.push_back(count_fixed_points(n, FixedPointOp::Cds, o.is_signed));
    } else if (o.what == "cdr-fixed-points") {
      rows.push_back(count_fixed_points(n, FixedPointOp::Cdr, true));
    } else {
      throw Error(ErrorCode::ParseError,
                  "enumerate expects cds-sortable|cdr-sortable|cds-fixed-points|cdr-fixed-points|"
                  "holmes-plummer");
    }
  }
  json arr = json::array();
  for (const auto& r : rows) arr.push_back(report_json(r));
  std::string text = rows.size() == 1 ? std::to_string(rows.front().count) + "\n" : format_table(rows);
  return ok(text, json{{"what", o.what}, {"rows", arr}}, o.as_json);
}

CommandResult solve_cmd(const Options& o) {
  const GameKind kind = parse_game_kind(o.kind);
  GameSpec spec;
  const auto items = split_top_level(o.F);
  if (is_cds_kind(kind)) {
    std::set<int> labels;
    for (const auto& s : items) {
      try {
        labels.insert(std::stoi(s));
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "--F expects integer labels: '" + s + "'");
      }
    }
    spec = GameSpec::cds(kind, parse_permutation(o.perm), std::move(labels));
  } else {
    std::vector<SignedPermutation> members;
    for (const auto& s : items) members.push_back(parse_signed_permutation(s));
    spec = GameSpec::cdr(kind, parse_signed_permutation(o.perm), std::move(members));
  }
  const GameOutcome g = solve(spec);
  json pv = json::array();
  std::string line;
  for (const auto& m : g.principal_variation) {
    pv.push_back({{"move", m.text()}, {"result", format_letters(m.successor)}});
    line += "  " + m.text() + " -> " + format_letters(m.successor) + "\n";
  }
  json j{{"kind", to_string(kind)},
         {"start", format_letters(spec.start)},
         {"winner", to_string(g.winner)},
         {"principal_variation", pv},
         {"states_explored", g.states_explored}};
  std::string text = "winner " + std::string(to_string(g.winner)) + "\nprincipal variation\n" + line +
                     "states explored " + std::to_string(g.states_explored) + "\n";
  return ok(text, std::move(j), o.as_json);
}

CommandResult serve(const Options& o) {
  std::unique_ptr<GameService> svc;
  if (!o.journal.empty() && std::filesystem::exists(o.journal)) {
    svc = GameService::replay(o.journal);
  } else {
    svc = std::make_unique<GameService>(o.journal.empty()
                                            ? std::nullopt
                                            : std::optional<std::filesystem::path>(o.journal));
  }
  HttpServer server(*svc);
  if (!server.listen(o.host, o.port)) {
    CommandResult r;
    r.exit_code = kExitError;
    r.err = "cannot listen on " + o.host + ":" + std::to_string(o.port) + "\n";
    return r;
  }
  return {};
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"Context directed swap and reversal sorting engine", "cdsort"};
  app.require_subcommand(1);
  Options o;

  auto* an = app.add_subcommand("analyze", "C (or D) cycles, pile, sortability, duration");
  an->add_option("perm", o.perm, "[a_1 ... a_n]")->required();
  an->add_flag("--signed", o.is_signed);
  an->add_flag("--json", o.as_json);

  auto* ap = app.add_subcommand("apply", "apply one cds or cdr context");
  ap->add_option("op", o.op)->required()->check(CLI::IsMember({"cds", "cdr"}));
  ap->add_option("perm", o.perm)->required();
  ap->add_option("context", o.context, "{(x,x+1),(y,y+1)} or (x,x+1)")->required();
  ap->add_flag("--signed", o.is_signed);
  ap->add_flag("--json", o.as_json);

  auto* so = app.add_subcommand("sort", "sorting sequence, or 'not sortable' (exit 1)");
  so->add_option("op", o.op)->required()->check(CLI::IsMember({"cds", "cdr"}));
  so->add_option("perm", o.perm)->required();
  so->add_option("--target", o.target)->check(CLI::IsMember({"identity", "reverse"}));
  so->add_flag("--json", o.as_json);

  auto* en = app.add_subcommand("enumerate", "exhaustive counts");
  en->add_option("what", o.what,
                 "cds-sortable|cdr-sortable|cds-fixed-points|cdr-fixed-points|holmes-plummer")
      ->required();
  en->add_option("--n", o.n, "size (k for holmes-plummer)")->required();
  en->add_option("--from", o.from, "first size of a table");
  en->add_option("--target", o.target)->check(CLI::IsMember({"identity", "reverse"}));
  en->add_flag("--signed", o.is_signed);
  en->add_flag("--json", o.as_json);

  auto* sv = app.add_subcommand("solve", "optimal play for one game");
  sv->add_option("kind", o.kind, "cds-game|cds-normal|cds-misere|cdr-game|cdr-normal|cdr-misere")
      ->required();
  sv->add_option("perm", o.perm)->required();
  sv->add_option("--F", o.F, "comma list: pile labels (cds) or signed fixed points (cdr)");
  sv->add_flag("--json", o.as_json);

  auto* se = app.add_subcommand("serve", "HTTP play service");
  se->add_option("--host", o.host);
  se->add_option("--port", o.port);
  se->add_option("--journal", o.journal, "append-only session journal (replayed on start)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    CommandResult r;
    r.exit_code = code == 0 ? 0 : kExitError;
    r.out = out.str();
    r.err = err.str();
    return r;
  }

  try {
    if (*an) return analyze(o);
    if (*ap) return apply(o);
    if (*so) return sort(o);
    if (*en) return enumerate(o);
    if (*sv) return solve_cmd(o);
    if (*se) return serve(o);
  } catch (const Error& e) {
    CommandResult r;
    r.exit_code = kExitError;
    r.err = std::string(to_string(e.code())) + ": " + e.what() + "\n";
    if (o.as_json) r.json = error_body(e.code(), e.what());
    return r;
  }
  return {};
}

}  // namespace cdsort::cli
