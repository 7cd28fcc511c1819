#include "mlplan/commands.h"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "mlplan/bom.h"
#include "mlplan/grooming.h"
#include "mlplan/ingest.h"
#include "mlplan/plan_io.h"
#include "mlplan/planner.h"
#include "mlplan/render.h"
#include "mlplan/rest_server.h"
#include "mlplan/service.h"
#include "mlplan/synthetic.h"

namespace mlplan {

namespace {

struct InputArgs {
  std::string topology;
  std::string demands;
  std::string catalog;
  std::optional<double> threshold;
  std::optional<int> k_paths;
  std::optional<int> k_grooming;
  std::string grid;
  std::string spectrum_policy = "first-fit";
  std::string demand_order = "desc";
  bool single_pass = false;
  bool no_load_split = false;
  bool disable_overbuild = false;
};

void AddInputOptions(CLI::App* cmd, InputArgs& a, bool need_demands) {
  cmd->add_option("--topology", a.topology, "Topology JSON")->required();
  auto* d = cmd->add_option("--demands", a.demands, "Demand matrix JSON");
  if (need_demands) d->required();
  cmd->add_option("--catalog", a.catalog, "Equipment catalog JSON")->required();
  cmd->add_option("--grooming-threshold", a.threshold, "Grooming threshold in [0, 1]");
  cmd->add_option("--k-paths", a.k_paths, "Fiber routes per node pair");
  cmd->add_option("--k-grooming", a.k_grooming, "Grooming paths per demand");
  cmd->add_option("--grid", a.grid, "Override the catalog grid")
      ->check(CLI::IsMember({"fixed", "flex"}));
  cmd->add_option("--spectrum-policy", a.spectrum_policy, "Spectrum assignment policy")
      ->check(CLI::IsMember({"first-fit", "exact-fit"}));
  cmd->add_option("--demand-order", a.demand_order, "Demand processing order")
      ->check(CLI::IsMember({"desc", "asc", "input"}));
  cmd->add_flag("--single-pass", a.single_pass, "One grooming deletion round only");
  cmd->add_flag("--no-load-split", a.no_load_split,
                "Charge the full bitrate to every grooming path");
  cmd->add_flag("--disable-overbuild", a.disable_overbuild, "Never add fibers");
}

PlanOptions ToPlanOptions(const InputArgs& a) {
  PlanOptions o;
  o.grooming_threshold = a.threshold;
  o.k_paths = a.k_paths;
  o.k_grooming = a.k_grooming;
  if (!a.grid.empty()) o.grid = ParseGridKind(a.grid);
  o.policy = *ParseSpectrumPolicy(a.spectrum_policy);
  o.order = *ParseDemandOrder(a.demand_order);
  o.single_pass = a.single_pass;
  o.load_split = !a.no_load_split;
  o.overbuild = !a.disable_overbuild;
  return o;
}

struct Inputs {
  FiberGraph topology;
  std::vector<Demand> demands;
  Catalog catalog;
};

Inputs LoadInputs(const InputArgs& a) {
  Inputs in;
  in.topology = LoadTopology(a.topology);
  if (!a.demands.empty()) in.demands = LoadDemands(a.demands, in.topology);
  in.catalog = LoadCatalog(a.catalog);
  return in;
}

void ReportValidation(const ValidationError& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  for (const std::string& d : e.details()) err << "  " << d << "\n";
}

// Runs `body`, mapping library errors onto exit codes with a phase prefix.
template <typename F>
int Guard(const char* phase, std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << phase << ": ";
    ReportValidation(e, err);
    return kExitInvalid;
  } catch (const ParseError& e) {
    err << phase << ": error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Error& e) {
    err << phase << ": error: " << e.what() << "\n";
    return kExitError;
  }
}

std::atomic<RestServer*> g_server{nullptr};

void StopServer(int) {
  if (RestServer* s = g_server.load()) s->Stop();
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multilayer optical network planner"};
  app.require_subcommand(1);

  InputArgs plan_in;
  std::string plan_out = "plan.json";
  std::string plan_trace;
  std::string plan_bom;
  auto* plan = app.add_subcommand("plan", "Plan a network from topology, demands and catalog");
  AddInputOptions(plan, plan_in, true);
  plan->add_option("--out", plan_out, "Plan document path");
  plan->add_option("--trace", plan_trace, "Grooming decision trace CSV path");
  plan->add_option("--bom-csv", plan_bom, "Bill of material CSV path");

  InputArgs sweep_in;
  std::vector<double> thresholds;
  double from = 0.1;
  double to = 1.0;
  double step = 0.1;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Plan once per grooming threshold");
  AddInputOptions(sweep, sweep_in, true);
  sweep->add_option("--thresholds", thresholds, "Explicit threshold list")->delimiter(',');
  sweep->add_option("--from", from, "First threshold");
  sweep->add_option("--to", to, "Last threshold");
  sweep->add_option("--step", step, "Threshold step");
  sweep->add_option("--out", sweep_out, "CSV path (default stdout)");

  std::string render_plan;
  std::string render_csv;
  std::string render_text;
  auto* render = app.add_subcommand("render", "Wavelength allocation table of a plan");
  render->add_option("--plan", render_plan, "Plan document")->required();
  render->add_option("--csv", render_csv, "CSV output path");
  render->add_option("--text", render_text, "Text output path (default stdout)");

  InputArgs serve_in;
  std::string serve_plan;
  std::string serve_state;
  std::string host = "127.0.0.1";
  int port = 8080;
  double ttl_s = 60;
  bool expose_routes = false;
  auto* serve = app.add_subcommand("serve", "Run the provisioning service");
  AddInputOptions(serve, serve_in, false);
  serve->add_option("--plan", serve_plan, "Start from this plan's network state");
  serve->add_option("--state", serve_state, "Snapshot file, restored at start and kept current");
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--port", port, "Listen port");
  serve->add_option("--offer-ttl", ttl_s, "Offer lifetime in seconds");
  serve->add_flag("--expose-routes", expose_routes, "Include fiber routes in abstract links");

  RandomTopologyOptions gen;
  std::uint64_t seed = 1;
  int demand_count = 20;
  double min_gbps = 10;
  double max_gbps = 100;
  std::string out_dir = ".";
  auto* generate = app.add_subcommand("generate", "Write a random topology, demands and catalog");
  generate->add_option("--nodes", gen.nodes, "Node count");
  generate->add_option("--extra-links", gen.extra_link_fraction,
                       "Share of non-tree node pairs that get a link");
  generate->add_option("--seed", seed, "Random seed");
  generate->add_option("--demand-count", demand_count, "Number of demands");
  generate->add_option("--min-gbps", min_gbps, "Smallest demand");
  generate->add_option("--max-gbps", max_gbps, "Largest demand");
  generate->add_option("--out-dir", out_dir, "Directory for the three files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  if (*plan) {
    std::optional<Inputs> in;
    if (int rc = Guard("ingest", err, [&] { in = LoadInputs(plan_in); return 0; }); rc != 0) {
      return rc;
    }
    return Guard("plan", err, [&] {
      const PlanRun run = PlanNetwork(in->topology, in->demands, in->catalog, ToPlanOptions(plan_in));
      WriteTextFile(plan_out, DumpJson(PlanToJson(run.plan)));
      if (!plan_trace.empty()) WriteTextFile(plan_trace, GroomingTraceCsv(run.design.trace));
      if (!plan_bom.empty()) WriteTextFile(plan_bom, BomCsv(run.plan.bom));
      out << PlanSummary(run.plan);
      return run.plan.unserved.empty() ? kExitOk : kExitUnserved;
    });
  }

  if (*sweep) {
    std::optional<Inputs> in;
    if (int rc = Guard("ingest", err, [&] { in = LoadInputs(sweep_in); return 0; }); rc != 0) {
      return rc;
    }
    return Guard("sweep", err, [&] {
      const std::vector<double> ts = thresholds.empty() ? ThresholdRange(from, to, step) : thresholds;
      const std::string csv =
          SweepCsv(Sweep(in->topology, in->demands, in->catalog, ToPlanOptions(sweep_in), ts));
      if (sweep_out.empty()) {
        out << csv;
      } else {
        WriteTextFile(sweep_out, csv);
      }
      return kExitOk;
    });
  }

  if (*render) {
    return Guard("render", err, [&] {
      const AllocationTable table = BuildAllocationTable(LoadPlan(render_plan));
      if (!render_csv.empty()) WriteTextFile(render_csv, RenderCsv(table));
      if (render_text.empty()) {
        out << RenderText(table);
      } else {
        WriteTextFile(render_text, RenderText(table));
      }
      return kExitOk;
    });
  }

  if (*serve) {
    std::optional<Inputs> in;
    if (int rc = Guard("ingest", err, [&] { in = LoadInputs(serve_in); return 0; }); rc != 0) {
      return rc;
    }
    return Guard("service", err, [&] {
      ServiceOptions options;
      options.offer_ttl = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double>(ttl_s));
      options.expose_routes = expose_routes;
      const PlanOptions po = ToPlanOptions(serve_in);
      options.policy = po.policy;
      options.overbuild = po.overbuild;
      Catalog catalog = ApplyOptions(in->catalog, po);

      std::unique_ptr<ProvisioningService> svc;
      if (!serve_state.empty() && std::filesystem::exists(serve_state)) {
        svc = ProvisioningService::Restore(in->topology, catalog, ReadJsonFile(serve_state), options);
      } else if (!serve_plan.empty()) {
        svc = ProvisioningService::FromPlan(in->topology, catalog, LoadPlan(serve_plan), options);
      } else {
        svc = ProvisioningService::Fresh(in->topology, catalog, options);
      }
      RestServer server(*svc, serve_state);
      g_server.store(&server);
      std::signal(SIGINT, StopServer);
      std::signal(SIGTERM, StopServer);
      out << "listening on " << host << ":" << port << std::endl;
      const bool ok = server.Listen(host, port);
      g_server.store(nullptr);
      if (!ok) {
        err << "service: cannot listen on " << host << ":" << port << "\n";
        return kExitError;
      }
      return kExitOk;
    });
  }

  if (*generate) {
    return Guard("generate", err, [&] {
      const FiberGraph topology = RandomTopology(gen, seed);
      const auto demands = RandomDemands(topology, demand_count, min_gbps, max_gbps, seed + 1);
      const std::filesystem::path dir(out_dir);
      std::filesystem::create_directories(dir);
      WriteTextFile((dir / "topology.json").string(), DumpJson(TopologyToJson(topology)));
      WriteTextFile((dir / "demands.json").string(), DumpJson(DemandsToJson(demands)));
      WriteTextFile((dir / "catalog.json").string(), DumpJson(CatalogToJson(SimpleCatalog())));
      out << "wrote topology.json, demands.json and catalog.json to " << dir.string() << "\n";
      return kExitOk;
    });
  }
  return kExitError;
}

}  // namespace mlplan
