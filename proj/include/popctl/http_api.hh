// JSON-over-HTTP front end for SessionManager.

#pragma once

#include <string>

#include "popctl/session.hh"

namespace httplib {
class Server;
}

namespace popctl {

/// POST /api/sessions, GET /api/sessions/{id}, POST /api/sessions/{id}/move,
/// POST /api/sessions/{id}/undo. When ui_dir is nonempty it is served at "/".
void install_routes(httplib::Server& server, SessionManager& sessions, const std::string& ui_dir = "");

/// Blocks serving on host:port until the server is stopped.
void serve(SessionManager& sessions, const std::string& host, int port, const std::string& ui_dir);

std::string view_to_json(const SessionView& v);

}  // namespace popctl
