#include "popctl/http_api.hh"

#include <httplib.h>
#include <json.hpp>

#include "popctl/errors.hh"

namespace popctl {

using json = nlohmann::json;

namespace {

json view_json(const SessionView& v) {
    json j;
    j["id"] = v.id;
    j["m"] = v.m;
    j["states"] = v.states;
    j["counts"] = v.counts;
    j["proposedAction"] = v.proposed_action ? json(*v.proposed_action) : json(nullptr);
    j["legalSuccessors"] = json::object();
    for (const auto& [q, succ] : v.legal_successors) j["legalSuccessors"][q] = succ;
    j["status"] = to_string(v.status);
    j["step"] = v.step;
    return j;
}

void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, const std::string& message, const json& extra = json::object()) {
    json body = extra;
    body["error"] = message;
    reply(res, status, body);
}

// Runs a handler, mapping library errors to HTTP statuses.
template <class F>
void guarded(httplib::Response& res, F&& f) {
    try {
        f();
    } catch (const SessionNotFound& e) {
        reply_error(res, 404, e.what());
    } catch (const InvalidSplit& e) {
        reply_error(res, 422, e.what(), json{{"state", e.state()}});
    } catch (const ParseError& e) {
        reply_error(res, 422, e.what(), json{{"line", e.line()}});
    } catch (const ValidationError& e) {
        reply_error(res, 422, e.what());
    } catch (const NotControllable& e) {
        reply_error(res, 422, e.what());
    } catch (const BudgetExceeded& e) {
        reply_error(res, 503, e.what());
    } catch (const json::exception& e) {
        reply_error(res, 400, std::string("malformed request body: ") + e.what());
    }
}

NamedSplit split_from(const json& body) {
    if (!body.is_object() || !body.contains("split") || !body["split"].is_object())
        throw ValidationError("request needs a 'split' object");
    NamedSplit out;
    for (const auto& [src, targets] : body["split"].items()) {
        if (!targets.is_object()) throw InvalidSplit(src, "state " + src + ": expected an object of successor counts");
        for (const auto& [dst, count] : targets.items()) {
            if (!count.is_number_unsigned())
                throw InvalidSplit(src, "state " + src + ": count for " + dst + " must be a nonnegative integer");
            out[src][dst] = count.get<std::uint32_t>();
        }
    }
    return out;
}

}  // namespace

std::string view_to_json(const SessionView& v) { return view_json(v).dump(); }

void install_routes(httplib::Server& server, SessionManager& sessions, const std::string& ui_dir) {
    server.Post("/api/sessions", [&sessions](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            json body = json::parse(req.body);
            if (!body.is_object() || !body.contains("nfa") || !body["nfa"].is_string())
                throw ValidationError("request needs an 'nfa' string");
            if (!body.contains("m") || !body["m"].is_number_unsigned())
                throw ValidationError("request needs a positive integer 'm'");
            reply(res, 201, view_json(sessions.create(body["nfa"].get<std::string>(), body["m"].get<std::uint32_t>())));
        });
    });
    server.Get(R"(/api/sessions/([0-9a-f]+))", [&sessions](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { reply(res, 200, view_json(sessions.state(req.matches[1]))); });
    });
    server.Post(R"(/api/sessions/([0-9a-f]+)/move)", [&sessions](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { reply(res, 200, view_json(sessions.move(req.matches[1], split_from(json::parse(req.body))))); });
    });
    server.Post(R"(/api/sessions/([0-9a-f]+)/undo)", [&sessions](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { reply(res, 200, view_json(sessions.undo(req.matches[1]))); });
    });
    if (!ui_dir.empty() && !server.set_mount_point("/", ui_dir))
        throw ValidationError("cannot serve UI bundle from '" + ui_dir + "'");
}

void serve(SessionManager& sessions, const std::string& host, int port, const std::string& ui_dir) {
    httplib::Server server;
    install_routes(server, sessions, ui_dir);
    if (!server.listen(host, port)) throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
}

}  // namespace popctl
