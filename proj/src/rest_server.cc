#include "mlplan/rest_server.h"

#include <httplib.h>

#include <chrono>
#include <mutex>

#include "mlplan/plan_io.h"

namespace mlplan {

using nlohmann::json;

namespace {

constexpr const char* kProvisionsPrefix = "/provisions/";

RestResponse ErrorResponse(int status, const std::string& code, const std::string& message) {
  return {status, {{"error", code}, {"message", message}}, false};
}

int StatusFor(const std::string& code) {
  if (code == kOfferExpired) return 410;
  if (code == kUnknownOffer || code == kUnknownRecord) return 404;
  return 400;
}

json ParseBody(const std::string& body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ServiceError(kBadRequest, "body must be a JSON object");
  return j;
}

}  // namespace

RestResponse Dispatch(ProvisioningService& service, const std::string& method,
                      const std::string& path, const std::string& body) {
  try {
    if (method == "GET" && path == "/topology/abstract-links") {
      json links = json::array();
      for (const AbstractLink& l : service.AbstractTopology()) links.push_back(ToJson(l));
      return {200, {{"links", links}}, false};
    }
    if (method == "POST" && path == "/paths/query") {
      const PathRequest req = ParsePathRequest(ParseBody(body));
      QueryResult r = service.QueryPath(req);
      if (!r.offer) return {409, {{"refused", true}, {"reason", r.reason}}, false};
      return {200, ToJson(*r.offer, std::chrono::steady_clock::now()), true};
    }
    if (path == "/provisions") {
      if (method == "POST") {
        const json j = ParseBody(body);
        if (!j.contains("offer_id") || !j.at("offer_id").is_string()) {
          throw ServiceError(kBadRequest, "missing offer_id");
        }
        return {201, ToJson(service.Provision(j.at("offer_id").get<std::string>())), true};
      }
      if (method == "GET") {
        json records = json::array();
        for (const ProvisionRecord& r : service.Records()) records.push_back(ToJson(r));
        return {200, {{"provisions", records}}, false};
      }
      return ErrorResponse(405, "method not allowed", method + " " + path);
    }
    if (path.rfind(kProvisionsPrefix, 0) == 0 && path.size() > std::string(kProvisionsPrefix).size()) {
      const std::string id = path.substr(std::string(kProvisionsPrefix).size());
      if (method == "GET") {
        auto rec = service.GetRecord(id);
        if (!rec) return ErrorResponse(404, kUnknownRecord, id);
        return {200, ToJson(*rec), false};
      }
      if (method == "DELETE") {
        const bool released = service.Release(id);
        return {200, {{"record_id", id}, {"released", released}, {"status", "released"}}, released};
      }
      return ErrorResponse(405, "method not allowed", method + " " + path);
    }
    if (path == "/topology/abstract-links" || path == "/paths/query") {
      return ErrorResponse(405, "method not allowed", method + " " + path);
    }
    return ErrorResponse(404, "not found", method + " " + path);
  } catch (const ServiceError& e) {
    return ErrorResponse(StatusFor(e.code()), e.code(), e.what());
  } catch (const Error& e) {
    return ErrorResponse(400, kBadRequest, e.what());
  }
}

RestServer::RestServer(ProvisioningService& service, std::string state_file)
    : service_(service), state_file_(std::move(state_file)), server_(std::make_unique<httplib::Server>()) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    RestResponse r = Dispatch(service_, req.method, req.path, req.body);
    if (r.mutated && !state_file_.empty()) {
      WriteTextFile(state_file_, DumpJson(service_.Snapshot()));
    }
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server_->Get(".*", handler);
  server_->Post(".*", handler);
  server_->Delete(".*", handler);
}

RestServer::~RestServer() = default;

bool RestServer::Listen(const std::string& host, int port) { return server_->listen(host, port); }

int RestServer::BindAnyPort(const std::string& host) { return server_->bind_to_any_port(host); }

bool RestServer::ListenAfterBind() { return server_->listen_after_bind(); }

void RestServer::Stop() { server_->stop(); }

}  // namespace mlplan
