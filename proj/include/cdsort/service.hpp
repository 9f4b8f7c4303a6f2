#pragma once

// Session store behind the play API. Each session owns a solver for its game;
// requests on one session are serialized, distinct sessions run independently.
// Routing is exposed as handle() so the API is testable without sockets.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cdsort/error.hpp"
#include "cdsort/game.hpp"

namespace cdsort {

using Json = nlohmann::json;

struct HistoryEntry {
  Player mover = Player::One;
  std::string move;
  Letters state;
};

struct Session {
  std::string id;
  GameSpec spec;
  Letters state;
  std::vector<HistoryEntry> history;
  GameSolver solver;
  std::optional<CdrFixedPointIndex> cdr_index;
  std::mutex mu;

  Session(std::string id, GameSpec spec);

  Player to_move() const noexcept { return history.size() % 2 == 0 ? Player::One : Player::Two; }
  bool finished() const;
};

// Request body of POST /sessions:
//   {"kind": "cds-game", "start": "[6 5 4 3 2 1]", "F": [1]}
// cds F entries are pile labels x (x = 0 is the identity); cdr F entries are
// signed fixed points in text form.
GameSpec spec_from_json(const Json& body);
Json spec_to_json(const GameSpec& spec);

struct HttpResponse {
  int status = 200;
  Json body;
};

class GameService {
 public:
  // With a journal path every create and move is appended as one JSON line.
  explicit GameService(std::optional<std::filesystem::path> journal = std::nullopt);

  Json create(const Json& body);
  Json get(const std::string& id);
  Json moves(const std::string& id);
  // body: {"move": "{(1,2),(3,4)}"}
  Json play(const std::string& id, const Json& body);
  Json engine_move(const std::string& id);

  // Maps Error codes to {code, message} bodies with matching HTTP statuses.
  HttpResponse handle(const std::string& method, const std::string& path, const std::string& body);

  // Rebuilds sessions from a journal; replayed moves are re-validated.
  static std::unique_ptr<GameService> replay(const std::filesystem::path& journal);

  std::size_t session_count() const;

 private:
  std::shared_ptr<Session> find(const std::string& id) const;
  std::shared_ptr<Session> insert(std::string id, GameSpec spec);
  void advance(Session& s, const Move& m);
  Json snapshot(Session& s);
  void journal(const Json& line);
  std::string fresh_id();

  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::optional<std::filesystem::path> journal_path_;
  std::mutex journal_mu_;
  std::uint64_t next_ = 1;
};

int http_status(ErrorCode code);
Json error_body(ErrorCode code, const std::string& message);

}  // namespace cdsort
