#include "pcm/service.hpp"

#include <httplib.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "pcm/eigenvalue.hpp"
#include "pcm/experiments.hpp"
#include "pcm/graph.hpp"
#include "pcm/io.hpp"
#include "pcm/llsm.hpp"

namespace pcm::service {

using nlohmann::json;

namespace {

std::string new_session_id() {
  static std::mutex mutex;
  static std::mt19937_64 engine{std::random_device{}()};
  std::lock_guard lock(mutex);
  std::ostringstream out;
  out << std::hex << std::setfill('0') << std::setw(16) << engine() << std::setw(16) << engine();
  return out.str();
}

long long to_millis(Clock::time_point t) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
}

Clock::time_point from_millis(long long ms) {
  return Clock::time_point(std::chrono::duration_cast<Clock::duration>(std::chrono::milliseconds(ms)));
}

json one_based(const Position& p) { return json::array({p.row + 1, p.col + 1}); }

json components_json(const std::vector<std::vector<int>>& components) {
  json out = json::array();
  for (const auto& c : components) {
    json comp = json::array();
    for (int v : c) comp.push_back(v + 1);
    out.push_back(std::move(comp));
  }
  return out;
}

json warnings_json(const IncompletePCM& pcm) {
  json out = json::array();
  for (const auto& p : pcm.known_positions()) {
    const double v = *pcm.at(p.row, p.col);
    if (v < kScaleMin * (1 - 1e-12) || v > kScaleMax * (1 + 1e-12))
      out.push_back({{"position", one_based(p)}, {"value", v}, {"warning", "outside the 1/9..9 scale"}});
  }
  return out;
}

json result_json(const CompletionResult& r) {
  json filled = json::array();
  for (const auto& p : r.filled) filled.push_back(one_based(p));
  json weights = json::array();
  for (int i = 0; i < r.weights.size(); ++i) weights.push_back(r.weights[i]);
  return {{"method", std::string(to_string(r.method))},
          {"matrix", to_json(r.matrix)},
          {"filled", std::move(filled)},
          {"weights", std::move(weights)},
          {"lambda_max", r.lambda_max},
          {"ci", r.ci},
          {"gci", r.gci}};
}

json comparison_json(const CompletionComparison& c) {
  json entries = json::array();
  for (const auto& p : c.llsm.filled)
    entries.push_back({{"position", one_based(p)},
                       {"llsm", c.llsm.matrix(p.row, p.col)},
                       {"ev", c.ev.matrix(p.row, p.col)},
                       {"divergence", c.divergence(p.row, p.col)}});
  return {{"max_divergence", c.max_divergence},
          {"max_position", c.max_position ? one_based(*c.max_position) : json(nullptr)},
          {"coincide", c.coincide},
          {"tolerance", c.tolerance},
          {"entries", std::move(entries)}};
}

}  // namespace

IncompletePCM Session::matrix() const {
  std::vector<Cell> upper;
  for (int i = 0; i < order; ++i)
    for (int j = i + 1; j < order; ++j) {
      const auto it = judgments.find({i, j});
      upper.push_back(it == judgments.end() ? Cell{} : Cell{it->second});
    }
  return IncompletePCM::from_upper(order, std::move(upper));
}

MethodChoice parse_method(std::string_view name) {
  if (name == "llsm") return MethodChoice::Llsm;
  if (name == "ev") return MethodChoice::Ev;
  if (name == "both") return MethodChoice::Both;
  throw BadValue("method must be llsm, ev or both, got '" + std::string(name) + "'");
}

json session_state_json(const Session& s) {
  const auto pcm = s.matrix();
  const auto components = connected_components(comparison_graph(pcm));
  json judgments = json::array();
  for (const auto& [p, v] : s.judgments) judgments.push_back({{"i", p.row + 1}, {"j", p.col + 1}, {"value", v}});
  return {{"id", s.id},
          {"order", s.order},
          {"judgments", std::move(judgments)},
          {"matrix", to_json(pcm)},
          {"connected", components.size() <= 1},
          {"components", components_json(components)},
          {"missing_count", pcm.missing_count()},
          {"warnings", warnings_json(pcm)},
          {"created", to_millis(s.created)},
          {"updated", to_millis(s.updated)}};
}

json completion_json(const IncompletePCM& pcm, MethodChoice method, double tol) {
  const auto components = connected_components(comparison_graph(pcm));
  json out = {{"order", pcm.order()},
              {"matrix", to_json(pcm)},
              {"connected", components.size() <= 1},
              {"warnings", warnings_json(pcm)}};
  if (components.size() > 1) {
    out["components"] = components_json(components);
    out["diagnostic"] =
        "comparison graph is disconnected; the optimal completion is not unique until the components are linked";
    return out;
  }
  json results = json::object();
  if (method == MethodChoice::Both) {
    const auto cmp = compare_completions(pcm, tol);
    results["llsm"] = result_json(cmp.llsm);
    results["ev"] = result_json(cmp.ev);
    out["comparison"] = comparison_json(cmp);
  } else if (method == MethodChoice::Llsm) {
    results["llsm"] = result_json(llsm_completion(pcm));
  } else {
    results["ev"] = result_json(ev_completion(pcm));
  }
  out["results"] = std::move(results);
  return out;
}

std::optional<Position> suggest_pair(const IncompletePCM& pcm) {
  const auto missing = pcm.missing_positions();
  if (missing.empty()) return std::nullopt;
  auto components = connected_components(comparison_graph(pcm));
  if (components.size() > 1) {
    std::stable_sort(components.begin(), components.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    const int a = components[0].front(), b = components[1].front();
    return Position{std::min(a, b), std::max(a, b)};
  }
  std::optional<Position> best;
  double best_score = -1.0;
  if (pcm.order() >= 5) {
    const auto cmp = compare_completions(pcm, kDefaultTolerance);
    for (const auto& p : missing) {
      const double d = cmp.divergence(p.row, p.col);
      if (d > best_score) {
        best_score = d;
        best = p;
      }
    }
  } else {
    const auto llsm = llsm_completion(pcm);
    for (const auto& p : missing) {
      const double d = std::abs(std::log(llsm.matrix(p.row, p.col)));
      if (d > best_score) {
        best_score = d;
        best = p;
      }
    }
  }
  return best;
}

SessionStore::SessionStore(std::filesystem::path journal) : journal_path_(std::move(journal)) {
  replay();
  journal_.open(*journal_path_, std::ios::app);
  if (!journal_) throw Error("cannot open session journal " + journal_path_->string());
}

void SessionStore::replay() {
  std::ifstream in(*journal_path_);
  if (!in) return;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
      const std::string event = rec.at("event");
      const std::string id = rec.at("id");
      const auto at = from_millis(rec.value("ts", 0LL));
      if (event == "create") {
        create_with_id(id, rec.at("order").get<int>(), at);
      } else if (event == "judgment") {
        auto slot = find(id);
        const int i = rec.at("i").get<int>() - 1, j = rec.at("j").get<int>() - 1;
        if (rec.at("value").is_null())
          slot->session.judgments.erase({i, j});
        else
          slot->session.judgments[{i, j}] = rec.at("value").get<double>();
        slot->session.updated = at;
      }
    } catch (const std::exception& e) {
      // A torn final line from a crash is expected; anything earlier is not.
      if (in.peek() == EOF) break;
      throw Error("corrupt session journal at line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void SessionStore::append(const json& record) {
  if (!journal_path_) return;
  std::lock_guard lock(journal_mutex_);
  journal_ << record.dump() << '\n';
  journal_.flush();
}

Session SessionStore::create_with_id(std::string id, int order, Clock::time_point at) {
  auto slot = std::make_shared<Slot>();
  slot->session.id = id;
  slot->session.order = order;
  slot->session.created = slot->session.updated = at;
  std::unique_lock lock(registry_mutex_);
  sessions_[std::move(id)] = slot;
  return slot->session;
}

Session SessionStore::create_session(int order) {
  if (order < kMinOrder || order > kMaxOrder)
    throw BadOrder("order must be between " + std::to_string(kMinOrder) + " and " + std::to_string(kMaxOrder) +
                   ", got " + std::to_string(order));
  const auto now = Clock::now();
  std::string id = new_session_id();
  append({{"event", "create"}, {"id", id}, {"order", order}, {"ts", to_millis(now)}});
  return create_with_id(std::move(id), order, now);
}

std::shared_ptr<SessionStore::Slot> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(registry_mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw UnknownSession("unknown session '" + id + "'");
  return it->second;
}

json SessionStore::submit_judgment(const std::string& id, int i, int j, std::optional<double> value) {
  auto slot = find(id);
  std::unique_lock lock(slot->mutex);
  Session& s = slot->session;
  if (i < 1 || j < 1 || i > s.order || j > s.order || i >= j)
    throw BadValue("judgment indices must satisfy 1 <= i < j <= " + std::to_string(s.order));
  if (value && !(std::isfinite(*value) && *value > 0.0)) throw BadValue("judgment value must be a positive number");
  const Position key{i - 1, j - 1};
  const auto it = s.judgments.find(key);
  const bool unchanged = value ? (it != s.judgments.end() && it->second == *value) : it == s.judgments.end();
  if (!unchanged) {
    const auto now = Clock::now();
    append({{"event", "judgment"},
            {"id", id},
            {"i", i},
            {"j", j},
            {"value", value ? json(*value) : json(nullptr)},
            {"ts", to_millis(now)}});
    if (value)
      s.judgments[key] = *value;
    else
      s.judgments.erase(key);
    s.updated = now;
  }
  return session_state_json(s);
}

Session SessionStore::get(const std::string& id) const {
  auto slot = find(id);
  std::shared_lock lock(slot->mutex);
  return slot->session;
}

json SessionStore::state(const std::string& id) const { return session_state_json(get(id)); }

json SessionStore::get_completion(const std::string& id, MethodChoice method, double tol) const {
  const Session s = get(id);
  json out = completion_json(s.matrix(), method, tol);
  out["session"] = s.id;
  return out;
}

std::optional<Position> SessionStore::suggest_next_comparison(const std::string& id) const {
  const auto p = suggest_pair(get(id).matrix());
  if (!p) return std::nullopt;
  return Position{p->row + 1, p->col + 1};
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(registry_mutex_);
  return sessions_.size();
}

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& kind, const std::string& message) {
  send_json(res, status, {{"error", kind}, {"message", message}});
}

template <class Handler>
auto guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const UnknownSession& e) {
      send_error(res, 404, "UnknownSession", e.what());
    } catch (const BadOrder& e) {
      send_error(res, 400, "BadOrder", e.what());
    } catch (const BadValue& e) {
      send_error(res, 400, "BadValue", e.what());
    } catch (const ParseError& e) {
      send_error(res, 400, "BadValue", e.what());
    } catch (const ValidationError& e) {
      send_error(res, 400, "BadValue", e.what());
    } catch (const json::exception& e) {
      send_error(res, 400, "BadRequest", e.what());
    } catch (const NoConvergence& e) {
      send_error(res, 500, "NoConvergence", e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "InternalError", e.what());
    }
  };
}

}  // namespace

void register_routes(httplib::Server& server, SessionStore& store) {
  server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) { send_json(res, 200, {{"ok", true}}); });

  server.Post("/sessions", guarded([&store](const httplib::Request& req, httplib::Response& res) {
                const auto body = json::parse(req.body);
                const auto s = store.create_session(body.at("order").get<int>());
                send_json(res, 201, session_state_json(s));
              }));

  server.Get(R"(/sessions/([0-9a-f]+))", guarded([&store](const httplib::Request& req, httplib::Response& res) {
               send_json(res, 200, store.state(req.matches[1]));
             }));

  server.Put(R"(/sessions/([0-9a-f]+)/judgments)",
             guarded([&store](const httplib::Request& req, httplib::Response& res) {
               const auto body = json::parse(req.body);
               std::optional<double> value;
               const auto& v = body.at("value");
               if (v.is_number())
                 value = v.get<double>();
               else if (v.is_string())
                 value = parse_cell(v.get<std::string>());
               else if (!v.is_null())
                 throw BadValue("value must be a number, a fraction string or null");
               send_json(res, 200, store.submit_judgment(req.matches[1], body.at("i").get<int>(),
                                                         body.at("j").get<int>(), value));
             }));

  server.Get(R"(/sessions/([0-9a-f]+)/completion)",
             guarded([&store](const httplib::Request& req, httplib::Response& res) {
               const auto method = parse_method(req.has_param("method") ? req.get_param_value("method") : "both");
               double tol = kDefaultTolerance;
               if (req.has_param("tol")) {
                 try {
                   tol = std::stod(req.get_param_value("tol"));
                 } catch (const std::exception&) {
                   throw BadValue("tol must be a positive number");
                 }
                 if (!(tol > 0.0)) throw BadValue("tol must be a positive number");
               }
               send_json(res, 200, store.get_completion(req.matches[1], method, tol));
             }));

  server.Get(R"(/sessions/([0-9a-f]+)/suggestion)",
             guarded([&store](const httplib::Request& req, httplib::Response& res) {
               const auto p = store.suggest_next_comparison(req.matches[1]);
               send_json(res, 200,
                         p ? json{{"suggestion", {{"i", p->row}, {"j", p->col}}}} : json{{"suggestion", nullptr}});
             }));
}

}  // namespace pcm::service
