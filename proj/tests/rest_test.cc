#include <gtest/gtest.h>

#include <httplib.h>

#include <filesystem>
#include <thread>

#include "mlplan/ingest.h"
#include "mlplan/rest_server.h"
#include "support/fixtures.h"

namespace mlplan {
namespace {

using nlohmann::json;

std::unique_ptr<ProvisioningService> Triangle() {
  return ProvisioningService::Fresh(fixtures::Triangle(), fixtures::TriangleCatalog());
}

std::string Query(double gbps) {
  return json{{"src", "A"}, {"dst", "C"}, {"bitrate_gbps", gbps}}.dump();
}

TEST(Dispatch, AbstractLinks) {
  auto svc = Triangle();
  const RestResponse r = Dispatch(*svc, "GET", "/topology/abstract-links", "");
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body.at("links").size(), svc->candidates().edges().size());
  EXPECT_FALSE(r.mutated);
}

TEST(Dispatch, QueryProvisionRelease) {
  auto svc = Triangle();
  const RestResponse q = Dispatch(*svc, "POST", "/paths/query", Query(60));
  ASSERT_EQ(q.status, 200) << q.body.dump();
  EXPECT_TRUE(q.mutated);
  const std::string offer = q.body.at("offer_id");

  const RestResponse p =
      Dispatch(*svc, "POST", "/provisions", json{{"offer_id", offer}}.dump());
  ASSERT_EQ(p.status, 201) << p.body.dump();
  const std::string rec = p.body.at("record_id");
  EXPECT_EQ(p.body.at("status"), "active");

  EXPECT_EQ(Dispatch(*svc, "GET", "/provisions/" + rec, "").body.at("record_id"), rec);
  EXPECT_EQ(Dispatch(*svc, "GET", "/provisions", "").body.at("provisions").size(), 1u);

  const RestResponse d1 = Dispatch(*svc, "DELETE", "/provisions/" + rec, "");
  EXPECT_EQ(d1.status, 200);
  EXPECT_EQ(d1.body.at("released"), true);
  const RestResponse d2 = Dispatch(*svc, "DELETE", "/provisions/" + rec, "");
  EXPECT_EQ(d2.status, 200);
  EXPECT_EQ(d2.body.at("released"), false);
  EXPECT_EQ(d2.body.at("status"), "released");
}

TEST(Dispatch, Refusal) {
  auto svc = Triangle();
  const RestResponse r = Dispatch(*svc, "POST", "/paths/query", Query(500));
  EXPECT_EQ(r.status, 409);
  EXPECT_EQ(r.body.at("refused"), true);
  EXPECT_EQ(r.body.at("reason"), "bitrate exceeds single lightpath capacity");
}

TEST(Dispatch, Errors) {
  auto svc = Triangle();
  EXPECT_EQ(Dispatch(*svc, "POST", "/paths/query", "{not json").status, 400);
  EXPECT_EQ(Dispatch(*svc, "POST", "/paths/query", json{{"src", "A"}}.dump()).status, 400);
  EXPECT_EQ(Dispatch(*svc, "POST", "/provisions", json{{"offer_id", "offer-9"}}.dump()).status, 404);
  EXPECT_EQ(Dispatch(*svc, "GET", "/provisions/prov-9", "").status, 404);
  EXPECT_EQ(Dispatch(*svc, "DELETE", "/provisions/prov-9", "").status, 404);
  EXPECT_EQ(Dispatch(*svc, "PUT", "/paths/query", "").status, 405);
  EXPECT_EQ(Dispatch(*svc, "GET", "/nowhere", "").status, 404);
  const RestResponse e = Dispatch(*svc, "GET", "/provisions/prov-9", "");
  EXPECT_EQ(e.body.at("error"), "unknown record");
}

TEST(Dispatch, ExpiredOffer) {
  auto now = std::make_shared<std::chrono::steady_clock::time_point>();
  ServiceOptions o;
  o.offer_ttl = std::chrono::seconds(1);
  auto svc = ProvisioningService::Fresh(fixtures::Triangle(), fixtures::TriangleCatalog(), o,
                                        [now] { return *now; });
  const std::string offer = Dispatch(*svc, "POST", "/paths/query", Query(60)).body.at("offer_id");
  *now += std::chrono::seconds(2);
  const RestResponse r = Dispatch(*svc, "POST", "/provisions", json{{"offer_id", offer}}.dump());
  EXPECT_EQ(r.status, 410);
  EXPECT_EQ(r.body.at("error"), "offer expired");
}

TEST(RestServer, LiveRoundTripWritesState) {
  auto svc = Triangle();
  const auto state = std::filesystem::temp_directory_path() / "mlplan_rest_test_state.json";
  std::filesystem::remove(state);
  RestServer server(*svc, state.string());
  const int port = server.BindAnyPort("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread th([&] { server.ListenAfterBind(); });

  httplib::Client cli("127.0.0.1", port);
  auto links = cli.Get("/topology/abstract-links");
  ASSERT_TRUE(links);
  EXPECT_EQ(links->status, 200);
  auto q = cli.Post("/paths/query", Query(60), "application/json");
  ASSERT_TRUE(q);
  ASSERT_EQ(q->status, 200);
  const std::string offer = json::parse(q->body).at("offer_id");
  auto p = cli.Post("/provisions", json{{"offer_id", offer}}.dump(), "application/json");
  ASSERT_TRUE(p);
  EXPECT_EQ(p->status, 201);
  server.Stop();
  th.join();

  ASSERT_TRUE(std::filesystem::exists(state));
  auto restored = ProvisioningService::Restore(fixtures::Triangle(), fixtures::TriangleCatalog(),
                                               ReadJsonFile(state.string()));
  EXPECT_EQ(restored->Records().size(), 1u);
  EXPECT_EQ(restored->Lightpaths(), svc->Lightpaths());
  std::filesystem::remove(state);
}

}  // namespace
}  // namespace mlplan
