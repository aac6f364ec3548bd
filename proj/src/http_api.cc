#include "nlplan/http_api.h"

#include <functional>

#include "nlplan/bundle_io.h"

namespace nlplan {
using nlohmann::json;

namespace {

void send_json(httplib::Response &res, const json &body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", "application/json");
}

void send_error(httplib::Response &res, const std::string &code, const std::string &message) {
  send_json(res, {{"error", {{"code", code}, {"message", message}}}}, status_for(code));
}

json body_of(const httplib::Request &req) {
  if (req.body.empty()) return json::object();
  try {
    json j = json::parse(req.body);
    if (!j.is_object()) throw Error("bad-request", "request body must be a JSON object");
    return j;
  } catch (const json::exception &e) {
    throw Error("bad-request", std::string("malformed JSON body: ") + e.what());
  }
}

std::string field(const json &body, const char *key) {
  if (!body.contains(key) || !body.at(key).is_string()) {
    throw Error("bad-request", std::string("missing string field '") + key + "'");
  }
  return body.at(key).get<std::string>();
}

using Handler = std::function<void(const httplib::Request &, httplib::Response &)>;

// Maps thrown errors onto JSON error responses.
Handler guarded(Handler h) {
  return [h = std::move(h)](const httplib::Request &req, httplib::Response &res) {
    try {
      h(req, res);
    } catch (const Error &e) {
      send_error(res, e.code(), e.what());
    } catch (const std::exception &e) {
      send_error(res, "internal", e.what());
    }
  };
}

json flags_json(const std::vector<SpellFlag> &flags) {
  json out = json::array();
  for (const auto &f : flags) {
    out.push_back({{"token", f.token}, {"offset", f.offset}, {"candidates", f.candidates}});
  }
  return {{"flags", out}};
}

}  // namespace

int status_for(const std::string &code) {
  if (code == "unknown-session" || code == "unknown-suggestion") return 404;
  if (code == "already-decided" || code == "stale-suggestion") return 409;
  if (code == "internal" || code == "store-failed" || code == "invalid-bundle") return 500;
  if (code == "conceptnet-unavailable") return 503;
  return 400;
}

void register_routes(httplib::Server &server, Service &service) {
  server.Post("/sessions", guarded([&](const httplib::Request &req, httplib::Response &res) {
                json body = body_of(req);
                std::string id = service.create_session(body.value("config", json::object()));
                send_json(res, {{"id", id}}, 201);
              }));

  server.Post(R"(/sessions/([^/]+)/text)", guarded([&](const httplib::Request &req, httplib::Response &res) {
                auto s = service.get(req.matches[1]);
                json body = body_of(req);
                SubmitOptions opt;
                if (body.contains("category")) opt.category = parse_category(field(body, "category"));
                if (body.contains("conllu")) opt.conllu = field(body, "conllu");
                std::string text = body.contains("text") ? field(body, "text") : "";
                send_json(res, s->submit_text(text, opt));
              }));

  server.Post(R"(/sessions/([^/]+)/objects)", guarded([&](const httplib::Request &req, httplib::Response &res) {
                auto s = service.get(req.matches[1]);
                json body = body_of(req);
                send_json(res, s->declare_object(field(body, "name"), field(body, "type")));
              }));

  server.Get(R"(/sessions/([^/]+)/domain)", guarded([&](const httplib::Request &req, httplib::Response &res) {
               send_json(res, bundle_to_json(service.get(req.matches[1])->bundle()));
             }));

  server.Get(R"(/sessions/([^/]+)/suggestions)", guarded([&](const httplib::Request &req, httplib::Response &res) {
               json out = json::array();
               for (const auto &s : service.get(req.matches[1])->pending()) out.push_back(suggestion_to_json(s));
               send_json(res, {{"suggestions", out}});
             }));

  server.Post(R"(/sessions/([^/]+)/suggestions/([^/]+)/(accept|reject))",
              guarded([&](const httplib::Request &req, httplib::Response &res) {
                auto s = service.get(req.matches[1]);
                send_json(res, s->decide(req.matches[2], req.matches[3] == "accept"));
              }));

  server.Get(R"(/sessions/([^/]+)/code)", guarded([&](const httplib::Request &req, httplib::Response &res) {
               std::string target = req.has_param("target") ? req.get_param_value("target") : "sexpr";
               res.set_content(service.get(req.matches[1])->code(target), "text/plain; charset=utf-8");
             }));

  server.Post("/spellcheck", guarded([&](const httplib::Request &req, httplib::Response &res) {
                json body = body_of(req);
                std::string text = field(body, "text");
                if (body.contains("session")) {
                  send_json(res, flags_json(service.get(field(body, "session"))->spellcheck(text)));
                } else {
                  send_json(res, flags_json(service.spellcheck(text)));
                }
              }));
}

}  // namespace nlplan
