#include "cdsort/service.hpp"

#include <algorithm>
#include <fstream>
#include <random>

#include "cdsort/error.hpp"

namespace cdsort {

Session::Session(std::string id_, GameSpec spec_)
    : id(std::move(id_)), spec(spec_), state(spec_.start), solver(std::move(spec_)) {
  if (!is_cds_kind(spec.kind)) cdr_index.emplace(spec.size());
}

bool Session::finished() const { return legal_moves(spec.kind, state).empty(); }

GameSpec spec_from_json(const Json& body) {
  if (!body.is_object()) throw Error(ErrorCode::BadRequest, "request body must be a JSON object");
  if (!body.contains("kind") || !body["kind"].is_string() || !body.contains("start") ||
      !body["start"].is_string()) {
    throw Error(ErrorCode::BadRequest, "spec needs string fields 'kind' and 'start'");
  }
  const GameKind kind = parse_game_kind(body["kind"].get<std::string>());
  const std::string start = body["start"].get<std::string>();
  const Json f = body.value("F", Json::array());
  if (!f.is_array()) throw Error(ErrorCode::BadRequest, "'F' must be an array");
  GameSpec spec;
  if (is_cds_kind(kind)) {
    std::set<int> labels;
    for (const auto& e : f) {
      if (!e.is_number_integer()) throw Error(ErrorCode::InvalidF, "cds F entries are integer labels");
      labels.insert(e.get<int>());
    }
    spec = GameSpec::cds(kind, parse_permutation(start), std::move(labels));
  } else {
    std::vector<SignedPermutation> members;
    for (const auto& e : f) {
      if (!e.is_string()) throw Error(ErrorCode::InvalidF, "cdr F entries are signed permutations");
      members.push_back(parse_signed_permutation(e.get<std::string>()));
    }
    spec = GameSpec::cdr(kind, parse_signed_permutation(start), std::move(members));
  }
  validate(spec);
  return spec;
}

Json spec_to_json(const GameSpec& spec) {
  Json j{{"kind", to_string(spec.kind)}, {"start", format_letters(spec.start)}};
  Json f = Json::array();
  if (is_cds_kind(spec.kind)) {
    for (int x : spec.cds_favorable) f.push_back(x);
  } else {
    for (const auto& m : spec.cdr_favorable) f.push_back(m.to_string());
  }
  j["F"] = std::move(f);
  return j;
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound: return 404;
    case ErrorCode::Finished: return 409;
    case ErrorCode::IllegalMove:
    case ErrorCode::InvalidF:
    case ErrorCode::TooLarge: return 422;
    default: return 400;
  }
}

Json error_body(ErrorCode code, const std::string& message) {
  return Json{{"code", to_string(code)}, {"message", message}};
}

GameService::GameService(std::optional<std::filesystem::path> journal)
    : journal_path_(std::move(journal)) {}

std::size_t GameService::session_count() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

std::string GameService::fresh_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  char buf[32];
  std::snprintf(buf, sizeof buf, "s%llu-%08llx", static_cast<unsigned long long>(next_++),
                static_cast<unsigned long long>(rng() & 0xffffffffULL));
  return buf;
}

std::shared_ptr<Session> GameService::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::NotFound, "no session '" + id + "'");
  return it->second;
}

std::shared_ptr<Session> GameService::insert(std::string id, GameSpec spec) {
  auto s = std::make_shared<Session>(id, std::move(spec));
  std::lock_guard lock(mu_);
  sessions_[id] = s;
  return s;
}

void GameService::journal(const Json& line) {
  if (!journal_path_) return;
  std::lock_guard lock(journal_mu_);
  std::ofstream out(*journal_path_, std::ios::app);
  out << line.dump() << '\n';
}

namespace {

Json letters_json(const std::vector<int>& v) {
  Json a = Json::array();
  for (int x : v) a.push_back(x);
  return a;
}

// F members (in the spec's own representation) still reachable from state.
Json reachable_favorable(Session& s, std::span<const int> state) {
  Json out = Json::array();
  if (is_cds_kind(s.spec.kind)) {
    const auto ks = reachable_cds_fixed_points(Permutation(Letters(state.begin(), state.end())));
    for (int x : s.spec.cds_favorable)
      if (std::find(ks.begin(), ks.end(), x + 1) != ks.end()) out.push_back(x);
  } else {
    const auto& keys = s.cdr_index->reachable_keys(state);
    for (const auto& f : s.spec.cdr_favorable)
      if (std::binary_search(keys.begin(), keys.end(), pack_state(f.letters())))
        out.push_back(f.to_string());
  }
  return out;
}

Json pile_json(Session& s, std::span<const int> state) {
  if (is_cds_kind(s.spec.kind)) {
    return letters_json(strategic_pile(Permutation(Letters(state.begin(), state.end()))).elements);
  }
  return letters_json(d_pile_segment(SignedPermutation(Letters(state.begin(), state.end()))));
}

}  // namespace

Json GameService::snapshot(Session& s) {
  Json j;
  j["id"] = s.id;
  j["spec"] = spec_to_json(s.spec);
  j["state"] = format_letters(s.state);
  j["to_move"] = to_string(s.to_move());
  Json hist = Json::array();
  for (std::size_t i = 0; i < s.history.size(); ++i) {
    const auto& h = s.history[i];
    hist.push_back({{"ply", i + 1},
                    {"mover", to_string(h.mover)},
                    {"move", h.move},
                    {"state", format_letters(h.state)}});
  }
  j["history"] = std::move(hist);
  const bool done = s.finished();
  j["status"] = done ? "finished" : "in_play";
  const Player eval = s.solver.winner_from(s.state, s.to_move());
  if (done) j["winner"] = to_string(eval);
  Json analysis;
  analysis["evaluation"] = to_string(eval);
  analysis["favorable_reachable"] = reachable_favorable(s, s.state);
  if (is_cds_kind(s.spec.kind)) {
    const Permutation pi(s.state);
    analysis["pile"] = pile_json(s, s.state);
    analysis["sortable"] = is_cds_sortable(pi);
    analysis["duration"] = cds_duration(pi);
    Json labels = Json::array();
    for (int k : reachable_cds_fixed_points(pi)) labels.push_back(k - 1);
    analysis["reachable_fixed_points"] = std::move(labels);
  } else {
    const SignedPermutation sp(s.state);
    analysis["d_pile_segment"] = pile_json(s, s.state);
    analysis["necessary_condition"] = cdr_necessary_condition(sp);
    Json fps = Json::array();
    for (StateKey k : s.cdr_index->reachable_keys(s.state))
      fps.push_back(format_letters(unpack_state(k, s.spec.size())));
    analysis["reachable_fixed_points"] = std::move(fps);
  }
  j["analysis"] = std::move(analysis);
  return j;
}

Json GameService::create(const Json& body) {
  GameSpec spec = spec_from_json(body);
  std::string id;
  {
    std::lock_guard lock(mu_);
    id = fresh_id();
  }
  journal(Json{{"type", "create"}, {"id", id}, {"spec", spec_to_json(spec)}});
  auto s = insert(id, std::move(spec));
  std::lock_guard lock(s->mu);
  return snapshot(*s);
}

Json GameService::get(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mu);
  return snapshot(*s);
}

Json GameService::moves(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mu);
  const auto ms = legal_moves(s->spec.kind, s->state);
  if (ms.empty()) throw Error(ErrorCode::Finished, "session '" + id + "' is finished");
  const Player next = other(s->to_move());
  Json out = Json::array();
  for (const auto& m : ms) {
    out.push_back({{"move", m.text()},
                   {"successor", format_letters(m.successor)},
                   {"successor_pile", pile_json(*s, m.successor)},
                   {"favorable_reachable", reachable_favorable(*s, m.successor)},
                   {"verdict", to_string(s->solver.winner_from(m.successor, next))}});
  }
  return Json{{"id", id}, {"to_move", to_string(s->to_move())}, {"moves", std::move(out)}};
}

void GameService::advance(Session& s, const Move& m) {
  s.history.push_back(HistoryEntry{s.to_move(), m.text(), m.successor});
  s.state = m.successor;
  journal(Json{{"type", "move"}, {"id", s.id}, {"move", m.text()}});
}

Json GameService::play(const std::string& id, const Json& body) {
  if (!body.is_object() || !body.contains("move") || !body["move"].is_string()) {
    throw Error(ErrorCode::BadRequest, "body must be {\"move\": \"<context>\"}");
  }
  auto s = find(id);
  std::lock_guard lock(s->mu);
  if (s->finished()) throw Error(ErrorCode::Finished, "session '" + id + "' is finished");
  const std::string text = body["move"].get<std::string>();
  Move m = [&] {
    try {
      return resolve_move(s->spec.kind, s->state, text);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError) throw Error(ErrorCode::IllegalMove, e.what());
      throw;
    }
  }();
  advance(*s, m);
  return snapshot(*s);
}

Json GameService::engine_move(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mu);
  auto m = s->solver.best_move(s->state, s->to_move());
  if (!m) throw Error(ErrorCode::Finished, "session '" + id + "' is finished");
  advance(*s, *m);
  return snapshot(*s);
}

HttpResponse GameService::handle(const std::string& method, const std::string& path,
                                 const std::string& body) {
  try {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= path.size()) {
      const auto slash = path.find('/', start);
      const auto end = slash == std::string::npos ? path.size() : slash;
      if (end > start) parts.push_back(path.substr(start, end - start));
      if (slash == std::string::npos) break;
      start = slash + 1;
    }
    const auto parse_body = [&] {
      if (body.empty()) return Json::object();
      try {
        return Json::parse(body);
      } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::BadRequest, std::string("malformed JSON: ") + e.what());
      }
    };
    if (parts.empty() || parts[0] != "sessions" || parts.size() > 3) {
      throw Error(ErrorCode::NotFound, "no route for " + method + " " + path);
    }
    if (parts.size() == 1 && method == "POST") return {201, create(parse_body())};
    if (parts.size() == 2 && method == "GET") return {200, get(parts[1])};
    if (parts.size() == 3) {
      if (parts[2] == "moves" && method == "GET") return {200, moves(parts[1])};
      if (parts[2] == "move" && method == "POST") return {200, play(parts[1], parse_body())};
      if (parts[2] == "engine-move" && method == "POST") return {200, engine_move(parts[1])};
    }
    throw Error(ErrorCode::NotFound, "no route for " + method + " " + path);
  } catch (const Error& e) {
    return {http_status(e.code()), error_body(e.code(), e.what())};
  }
}

std::unique_ptr<GameService> GameService::replay(const std::filesystem::path& journal) {
  auto svc = std::make_unique<GameService>();
  std::ifstream in(journal);
  if (!in) throw Error(ErrorCode::NotFound, "cannot open journal " + journal.string());
  std::string line;
  std::uint64_t max_seq = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const Json j = Json::parse(line);
    const std::string id = j.at("id").get<std::string>();
    if (j.at("type") == "create") {
      svc->insert(id, spec_from_json(j.at("spec")));
      max_seq = std::max<std::uint64_t>(max_seq, std::strtoull(id.c_str() + 1, nullptr, 10));
    } else {
      auto s = svc->find(id);
      const Move m = resolve_move(s->spec.kind, s->state, j.at("move").get<std::string>());
      svc->advance(*s, m);
    }
  }
  svc->next_ = max_seq + 1;
  svc->journal_path_ = journal;
  return svc;
}

}  // namespace cdsort
