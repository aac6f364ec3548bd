#ifndef NLPLAN_HTTP_API_H_
#define NLPLAN_HTTP_API_H_

#include <string>

// Eigen must come before httplib: <resolv.h> defines a _res macro.
#include "nlplan/service.h"

#include <httplib.h>

namespace nlplan {

// JSON over HTTP:
//   POST /sessions                                 {config?}         -> {id}
//   POST /sessions/{id}/text                       {text, conllu?, category?} -> report
//   POST /sessions/{id}/objects                    {name, type}      -> report
//   GET  /sessions/{id}/domain                                       -> bundle
//   GET  /sessions/{id}/suggestions                                  -> pending suggestions
//   POST /sessions/{id}/suggestions/{sid}/accept|reject              -> report
//   GET  /sessions/{id}/code?target=sexpr|pddl                       -> text/plain
//   POST /spellcheck                               {text, session?}  -> {flags}
// Errors: {"error": {"code", "message"}} with 400, 404 or 409.
void register_routes(httplib::Server &server, Service &service);

// HTTP status for an error code.
int status_for(const std::string &error_code);

}  // namespace nlplan

#endif  // NLPLAN_HTTP_API_H_
