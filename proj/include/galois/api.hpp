#pragma once

// Transport-free HTTP API over a loaded workspace. Every response body is JSON
// carrying "schema_version"; errors are {"schema_version", "error", "status"}.
//
//   GET  /api/summary
//   GET  /api/attributes
//   GET  /api/strictness
//   GET  /api/lattice?match=ID[&subset=a,b|none][&lookback=N][&exclude_outcomes=1]
//   GET  /api/rules?match=ID[&gamma=G][&min_support=S][&subset=..][&lookback=N]
//   POST /api/attributes/evaluate  {attributes, match?, gamma?, lookback?, subset?}
//   POST /api/forecast             {match, attributes?, gamma?, lookback?, subset?, mode?, home_reduction?}

#include <map>
#include <string>

#include "galois/app.hpp"

namespace galois::api {

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

class Service {
 public:
  Service(app::Workspace workspace, app::RunConfig config);

  /// Safe to call concurrently; the workspace is never modified.
  Response handle(const Request& request) const;

  const app::Workspace& workspace() const noexcept { return workspace_; }

 private:
  app::Workspace workspace_;
  app::RunConfig config_;
};

}  // namespace galois::api
