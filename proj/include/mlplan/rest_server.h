#ifndef MLPLAN_REST_SERVER_H_
#define MLPLAN_REST_SERVER_H_

#include <memory>
#include <string>

#include <json.hpp>

#include "mlplan/service.h"

namespace httplib {
class Server;
}

namespace mlplan {

struct RestResponse {
  int status = 200;
  nlohmann::json body;
  bool mutated = false;  // the ledger changed
};

// Routes one request onto the service. Error bodies are
// {"error": <code>, "message": <text>}.
RestResponse Dispatch(ProvisioningService& service, const std::string& method,
                      const std::string& path, const std::string& body);

// HTTP/1.1 front end. When `state_file` is set, a snapshot is written there
// after every request that changed the ledger.
class RestServer {
 public:
  RestServer(ProvisioningService& service, std::string state_file = {});
  ~RestServer();

  // Blocks until Stop().
  bool Listen(const std::string& host, int port);
  // Binds an ephemeral port and returns it, or -1.
  int BindAnyPort(const std::string& host);
  bool ListenAfterBind();
  void Stop();

 private:
  ProvisioningService& service_;
  std::string state_file_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace mlplan

#endif  // MLPLAN_REST_SERVER_H_
