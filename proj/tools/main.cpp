#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "sheafnet/io.hpp"

namespace {

using namespace sheafnet;

struct CommonOpts {
  std::string network;
  std::string format = "structured-report";
  std::optional<double> threshold;
  std::optional<TimeStep> at_time;
  std::optional<std::string> window_text;
};

TimeWindow parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ParseError("window must look like t0:t1");
  }
  try {
    TimeWindow w{std::stoi(text.substr(0, colon)),
                 std::stoi(text.substr(colon + 1))};
    if (w.length() < 1) throw ParseError("window must satisfy t0 <= t1");
    return w;
  } catch (const std::invalid_argument&) {
    throw ParseError("window must look like t0:t1");
  }
}

std::uint64_t seed_from_env() {
  const char* raw = std::getenv("SHEAFNET_SEED");
  if (!raw) return 0;
  try {
    return std::stoull(raw);
  } catch (const std::exception&) {
    throw ParseError("SHEAFNET_SEED must be an unsigned integer");
  }
}

LoadedNetwork load(const CommonOpts& opts) {
  LoadedNetwork loaded = load_network(opts.network);
  if (opts.threshold) loaded.net.threshold = *opts.threshold;
  if (opts.window_text) loaded.window = parse_window(*opts.window_text);
  return loaded;
}

// A time-varying network needs an explicit timeslice or window; a static
// one is analyzed as a single complex.
std::optional<TimeStep> slice_time(const CommonOpts& opts,
                                   const LoadedNetwork& loaded) {
  if (opts.at_time) return opts.at_time;
  if (loaded.net.has_timed_signals() && !opts.window_text && !loaded.window) {
    throw InputError(
        "network has time-varying signals: pass --t or --window");
  }
  return std::nullopt;
}

int cmd_complex(const CommonOpts& opts) {
  LoadedNetwork loaded = load(opts);
  if (!opts.at_time && (opts.window_text || loaded.window) &&
      loaded.net.has_timed_signals()) {
    const TimeWindow w = opts.window_text ? parse_window(*opts.window_text)
                                          : *loaded.window;
    const TimeComplex tc = time_dependent_link_complex(loaded.net, w);
    if (opts.format != "structured-report") {
      throw InputError("graph-dot output covers single timeslices only");
    }
    report_time_complex(std::cout, opts.network, tc);
    return 0;
  }
  const std::optional<TimeStep> t = slice_time(opts, loaded);
  const SimplicialComplex X = link_complex(loaded.net, t);
  if (opts.format == "graph-dot") {
    dot_complex(std::cout, X);
  } else {
    report_complex(std::cout, opts.network, loaded.net, X, t);
  }
  return 0;
}

int cmd_sections(const CommonOpts& opts) {
  LoadedNetwork loaded = load(opts);
  const std::optional<TimeStep> t = slice_time(opts, loaded);
  if (loaded.net.nodes.empty()) {
    std::cout << "sheafnet report: sections\ninput: " << opts.network
              << "\nsections (0):\n";
    return 0;
  }
  auto X = std::make_shared<SimplicialComplex>(link_complex(loaded.net, t));
  const SetSheaf sheaf = activation_sheaf(X);
  const std::vector<ActSection> sections = enumerate_global_sections(sheaf);
  if (opts.format == "graph-dot") {
    dot_sections(std::cout, sheaf, sections);
  } else {
    report_sections(std::cout, opts.network, sheaf, sections);
  }
  return 0;
}

int cmd_cohomology(const CommonOpts& opts, int random_networks,
                   const std::string& dump_dir) {
  if (random_networks > 0) {
    const bool ok =
        report_random_cohomology(std::cout, seed_from_env(), random_networks);
    return ok ? 0 : 2;
  }
  LoadedNetwork loaded = load(opts);
  const std::optional<TimeStep> t = slice_time(opts, loaded);
  auto X = std::make_shared<SimplicialComplex>(link_complex(loaded.net, t));
  if (X->empty()) {
    std::cout << "sheafnet report: cohomology\ninput: " << opts.network
              << "\ncohomology dims:\nnode-count check: PASS (empty network)\n";
    return 0;
  }
  const VectorSheaf sheaf = vector_activation_sheaf(X);
  if (!dump_dir.empty()) dump_cochain_matrices(dump_dir, sheaf);
  const std::vector<int> dims = cohomology_dims(sheaf);
  report_cohomology(std::cout, opts.network, dims,
                    static_cast<int>(loaded.net.nodes.size()));
  bool pass = !dims.empty() && dims[0] == static_cast<int>(loaded.net.nodes.size());
  for (std::size_t k = 1; k < dims.size(); ++k) pass = pass && dims[k] == 0;
  return pass ? 0 : 2;
}

struct PayloadOpts {
  std::string schedule;
  int packet_dim = 1;
  int queue_len = 1;  // transmit queue slots; buffer length is one more
  std::string protocol = "forward-everything";
};

int cmd_simulate(const CommonOpts& opts, const PayloadOpts& popts, bool bound) {
  LoadedNetwork loaded = load(opts);
  const int buffer_len = popts.queue_len + 1;
  LoadedSchedule sched =
      load_schedule(popts.schedule, popts.packet_dim, buffer_len);
  TimeWindow window = sched.schedule.window();
  if (opts.window_text) {
    const TimeWindow w = parse_window(*opts.window_text);
    if (w.t0 != window.t0 || w.t1 != window.t1) {
      throw InputError("--window disagrees with the schedule's slices");
    }
  }
  const TimeComplex tc = time_dependent_link_complex(loaded.net, window);
  const PayloadSheaf ps(tc, popts.packet_dim, buffer_len,
                        ReceiveQueue(protocol_from_name(popts.protocol)));
  if (bound) {
    const VectorSheaf P = fixed_activation_subsheaf(ps, sched.schedule);
    report_bound(std::cout, ps, sched.schedule, throughput_bound(P));
  } else {
    const PayloadSection section =
        simulate(ps, sched.schedule, sched.initial, sched.injections);
    report_simulation(std::cout, ps, sched.schedule, section);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sheaf model of a single-channel CSMA/CD wireless network"};
  app.require_subcommand(1);

  CommonOpts common;
  PayloadOpts payload;
  int random_networks = 0;
  std::string dump_dir;

  auto add_common = [&](CLI::App* cmd, bool needs_network = true) {
    auto* net = cmd->add_option("--network", common.network,
                                "network description file (JSON)");
    if (needs_network) net->required();
    cmd->add_option("--format", common.format, "structured-report | graph-dot")
        ->check(CLI::IsMember({"structured-report", "graph-dot"}));
    cmd->add_option("--threshold", common.threshold,
                    "override the decode threshold");
    cmd->add_option("--t", common.at_time, "analyze the timeslice at t");
    cmd->add_option("--window", common.window_text, "time window t0:t1");
  };

  CLI::App* complex_cmd =
      app.add_subcommand("complex", "cells and facets of the link complex");
  add_common(complex_cmd);

  CLI::App* sections_cmd = app.add_subcommand(
      "sections", "interference-free transmitter sets with their regions");
  add_common(sections_cmd);

  CLI::App* cohomology_cmd = app.add_subcommand(
      "cohomology", "cohomology of the vector activation sheaf");
  add_common(cohomology_cmd, false);
  cohomology_cmd->add_option(
      "--random-networks", random_networks,
      "check the node-count identity on N seeded random disk networks");
  cohomology_cmd->add_option("--dump-matrices", dump_dir,
                             "write coboundary matrices as triplet files");

  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "drive queued packets over a schedule");
  add_common(simulate_cmd);
  simulate_cmd->add_option("--schedule", payload.schedule, "schedule file (JSON)")
      ->required();
  simulate_cmd->add_option("--packet-dim", payload.packet_dim,
                           "packet space dimension");
  simulate_cmd->add_option("--queue-len", payload.queue_len,
                           "transmit queue length (n - 1)");
  simulate_cmd->add_option("--protocol", payload.protocol,
                           "receive-queue protocol");

  CLI::App* bound_cmd = app.add_subcommand(
      "bound", "throughput upper bound for a transmission schedule");
  add_common(bound_cmd);
  bound_cmd->add_option("--schedule", payload.schedule, "schedule file (JSON)")
      ->required();
  bound_cmd->add_option("--packet-dim", payload.packet_dim,
                        "packet space dimension");
  bound_cmd->add_option("--queue-len", payload.queue_len,
                        "transmit queue length (n - 1)");
  bound_cmd->add_option("--protocol", payload.protocol,
                        "receive-queue protocol");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(complex_cmd)) return cmd_complex(common);
    if (app.got_subcommand(sections_cmd)) return cmd_sections(common);
    if (app.got_subcommand(cohomology_cmd)) {
      if (random_networks <= 0 && common.network.empty()) {
        throw sheafnet::InputError("pass --network or --random-networks");
      }
      return cmd_cohomology(common, random_networks, dump_dir);
    }
    if (app.got_subcommand(simulate_cmd)) {
      return cmd_simulate(common, payload, false);
    }
    if (app.got_subcommand(bound_cmd)) {
      return cmd_simulate(common, payload, true);
    }
  } catch (const sheafnet::ModelError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const sheafnet::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
