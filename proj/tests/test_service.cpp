#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "httplib.h"

#include "cdsort/http_server.hpp"
#include "cdsort/service.hpp"

using namespace cdsort;

namespace {

Json create(GameService& svc, const Json& body) {
  const auto r = svc.handle("POST", "/sessions", body.dump());
  REQUIRE(r.status == 201);
  return r.body;
}

HttpResponse post(GameService& svc, const std::string& path, const Json& body = Json::object()) {
  return svc.handle("POST", path, body.dump());
}

}  // namespace

TEST_SUITE("service") {
  TEST_CASE("reverse order session") {
    GameService svc;
    const Json s = create(svc, {{"kind", "cds-game"}, {"start", "[6 5 4 3 2 1]"}, {"F", {1}}});
    CHECK(s["status"] == "in_play");
    CHECK(s["analysis"]["evaluation"] == "TWO");
    CHECK(s["analysis"]["pile"] == Json({1, 3, 5}));
    CHECK(s["analysis"]["favorable_reachable"] == Json({1}));
    const std::string id = s["id"];
    const auto moves = svc.handle("GET", "/sessions/" + id + "/moves", "");
    REQUIRE(moves.status == 200);
    // Every ONE move leaves TWO a winning reply.
    for (const auto& m : moves.body["moves"]) CHECK(m["verdict"] == "TWO");
  }

  TEST_CASE("engine as TWO wins every line") {
    GameService svc;
    const Json s = create(svc, {{"kind", "cds-game"}, {"start", "[6 5 4 3 2 1]"}, {"F", {1}}});
    const std::string id = s["id"];
    const auto first = svc.handle("GET", "/sessions/" + id + "/moves", "").body["moves"];
    for (std::size_t i = 0; i < first.size(); ++i) {
      const std::string sid = create(svc, {{"kind", "cds-game"}, {"start", "[6 5 4 3 2 1]"}, {"F", {1}}})["id"];
      Json cur = post(svc, "/sessions/" + sid + "/move", {{"move", first[i]["move"]}}).body;
      while (cur["status"] == "in_play") {
        CHECK(cur["analysis"]["evaluation"] == "TWO");
        cur = post(svc, "/sessions/" + sid + "/engine-move").body;
        if (cur["status"] != "in_play") break;
        const auto ms = svc.handle("GET", "/sessions/" + sid + "/moves", "").body["moves"];
        cur = post(svc, "/sessions/" + sid + "/move", {{"move", ms[0]["move"]}}).body;
      }
      CHECK(cur["winner"] == "TWO");
    }
  }

  TEST_CASE("[4 1 3 2] moves and play") {
    GameService svc;
    const std::string id = create(svc, {{"kind", "cds-game"}, {"start", "[4 1 3 2]"}, {"F", {0}}})["id"];
    const auto moves = svc.handle("GET", "/sessions/" + id + "/moves", "").body["moves"];
    REQUIRE(moves.size() == 3);
    std::set<std::string> succ;
    for (const auto& m : moves) succ.insert(m["successor"]);
    CHECK(succ == std::set<std::string>{"[4 1 2 3]", "[3 4 1 2]", "[2 3 4 1]"});
    const auto r = post(svc, "/sessions/" + id + "/move", {{"move", "{(1,2),(3,4)}"}});
    REQUIRE(r.status == 200);
    CHECK(r.body["state"] == "[3 4 1 2]");
    CHECK(r.body["status"] == "finished");
    CHECK(r.body["winner"] == "TWO");
    CHECK(r.body["history"].size() == 1);
    const auto again = post(svc, "/sessions/" + id + "/move", {{"move", "{(1,2),(3,4)}"}});
    CHECK(again.status == 409);
    CHECK(again.body["code"] == "Finished");
    CHECK(svc.handle("GET", "/sessions/" + id + "/moves", "").body["code"] == "Finished");
  }

  TEST_CASE("errors") {
    GameService svc;
    CHECK(svc.handle("GET", "/sessions/nope", "").status == 404);
    CHECK(svc.handle("GET", "/sessions/nope", "").body["code"] == "NotFound");
    const auto bad = post(svc, "/sessions", {{"kind", "cds-game"}, {"start", "[3 2 1]"}, {"F", {7}}});
    CHECK(bad.status == 422);
    CHECK(bad.body["code"] == "InvalidF");
    CHECK(svc.handle("POST", "/sessions", "{not json").body["code"] == "BadRequest");
    CHECK(post(svc, "/sessions", {{"kind", "cds-game"}, {"start", "[1 1]"}}).body["code"] ==
          "NotABijection");
    const std::string id = create(svc, {{"kind", "cds-normal"}, {"start", "[4 1 3 2]"}})["id"];
    const auto illegal = post(svc, "/sessions/" + id + "/move", {{"move", "{(1,2),(5,6)}"}});
    CHECK(illegal.status == 422);
    CHECK(illegal.body["code"] == "IllegalMove");
    CHECK(post(svc, "/sessions/" + id + "/move", {{"move", "garbage"}}).body["code"] == "IllegalMove");
    CHECK(svc.handle("DELETE", "/sessions/" + id, "").status == 404);
  }

  TEST_CASE("identity start is finished with ONE winning") {
    GameService svc;
    const Json s = create(svc, {{"kind", "cds-game"}, {"start", "[1 2 3 4]"}, {"F", {0}}});
    CHECK(s["status"] == "finished");
    CHECK(s["winner"] == "ONE");
  }

  TEST_CASE("cdr session") {
    GameService svc;
    const Json s =
        create(svc, {{"kind", "cdr-game"}, {"start", "[3 -1 -2 5 4]"}, {"F", {"[1 2 3 4 5]"}}});
    CHECK(s["status"] == "in_play");
    CHECK(s["analysis"]["necessary_condition"] == true);
    const std::string id = s["id"];
    const auto r = post(svc, "/sessions/" + id + "/move", {{"move", "(2,3)"}});
    CHECK(r.body["state"] == "[1 -3 -2 5 4]");
    const auto moves = svc.handle("GET", "/sessions/" + id + "/moves", "").body["moves"];
    CHECK(!moves.empty());
    Json cur = r.body;
    while (cur["status"] == "in_play") cur = post(svc, "/sessions/" + id + "/engine-move").body;
    CHECK(cur["winner"].is_string());
  }

  TEST_CASE("engine optimality over S_5") {
    GameService svc;
    std::vector<int> w{1, 2, 3, 4, 5};
    do {
      const Json s = create(svc, {{"kind", "cds-game"}, {"start", format_letters(w)}, {"F", {0, 2}}});
      Json cur = s;
      while (cur["status"] == "in_play") {
        const std::string eval = cur["analysis"]["evaluation"];
        const std::string mover = cur["to_move"];
        cur = post(svc, "/sessions/" + std::string(s["id"]) + "/engine-move").body;
        if (eval == mover) {
          CHECK(cur["analysis"]["evaluation"] == eval);
        }
      }
    } while (std::next_permutation(w.begin(), w.end()));
  }

  TEST_CASE("journal replays to identical sessions") {
    const auto path = std::filesystem::temp_directory_path() / "cdsort_journal_test.jsonl";
    std::filesystem::remove(path);
    std::vector<Json> before;
    {
      GameService svc(path);
      const std::string a = create(svc, {{"kind", "cds-game"}, {"start", "[6 5 4 3 2 1]"}, {"F", {1}}})["id"];
      const std::string b = create(svc, {{"kind", "cdr-normal"}, {"start", "[3 -1 -2 5 4]"}})["id"];
      post(svc, "/sessions/" + a + "/move", {{"move", "{(1,2),(2,3)}"}});
      post(svc, "/sessions/" + a + "/engine-move");
      post(svc, "/sessions/" + b + "/engine-move");
      before = {svc.get(a), svc.get(b)};
    }
    std::ifstream in(path);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 5);
    auto replayed = GameService::replay(path);
    CHECK(replayed->session_count() == 2);
    for (const auto& s : before) CHECK(replayed->get(s["id"]) == s);
    std::filesystem::remove(path);
  }

  TEST_CASE("history folds back to the current state") {
    GameService svc;
    const Json s = create(svc, {{"kind", "cds-normal"}, {"start", "[7 3 6 2 5 1 4]"}});
    Json cur = s;
    while (cur["status"] == "in_play") cur = post(svc, "/sessions/" + std::string(s["id"]) + "/engine-move").body;
    Letters state = parse_letters(std::string(s["spec"]["start"]));
    for (const auto& h : cur["history"]) {
      state = resolve_move(GameKind::CdsNormal, state, std::string(h["move"])).successor;
      CHECK(format_letters(state) == h["state"]);
    }
    CHECK(format_letters(state) == cur["state"]);
  }

  TEST_CASE("real HTTP round trip") {
    GameService svc;
    HttpServer server(svc);
    const int port = server.start("127.0.0.1", 0);
    REQUIRE(port > 0);
    httplib::Client cli("127.0.0.1", port);
    auto r = cli.Post("/sessions", R"({"kind":"cds-game","start":"[4 1 3 2]","F":[0]})",
                      "application/json");
    REQUIRE(r);
    CHECK(r->status == 201);
    const Json s = Json::parse(r->body);
    const std::string id = s["id"];
    auto g = cli.Get("/sessions/" + id + "/moves");
    REQUIRE(g);
    CHECK(Json::parse(g->body)["moves"].size() == 3);
    auto m = cli.Post("/sessions/" + id + "/move", R"({"move":"{(1,2),(2,3)}"})", "application/json");
    REQUIRE(m);
    CHECK(Json::parse(m->body)["state"] == "[4 1 2 3]");
    auto e = cli.Post("/sessions/" + id + "/engine-move", "", "application/json");
    REQUIRE(e);
    CHECK(e->status == 409);
    auto nf = cli.Get("/sessions/zzz");
    REQUIRE(nf);
    CHECK(nf->status == 404);
    server.stop();
  }
}
