#include "sheafnet/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace sheafnet {

using nlohmann::json;

namespace {

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line number.
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') ++line;
    }
    throw ParseError(path + ":" + std::to_string(line) + ": " + e.what());
  }
}

[[noreturn]] void bad_field(const std::string& path, const std::string& field,
                            const std::string& what) {
  throw ParseError(path + ": field '" + field + "': " + what);
}

double number_field(const json& j, const std::string& path,
                    const std::string& field) {
  if (!j.contains(field) || !j[field].is_number()) {
    bad_field(path, field, "expected a number");
  }
  return j[field].get<double>();
}

Rat rat_from_json(const json& j, const std::string& path,
                  const std::string& field) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  bad_field(path, field, "packet entries must be integers or 'p/q' strings");
}

Packet packet_from_json(const json& j, const std::string& path, int packet_dim) {
  Packet p = Packet::zero(packet_dim);
  const json* payload = nullptr;
  if (j.is_array()) {
    payload = &j;
  } else if (j.is_object()) {
    if (j.contains("payload")) payload = &j["payload"];
    if (j.contains("destination") && !j["destination"].is_null()) {
      if (!j["destination"].is_number_integer()) {
        bad_field(path, "destination", "expected a node id");
      }
      p.destination = j["destination"].get<NodeId>();
    }
    if (j.contains("priority")) {
      const std::string prio = j["priority"].get<std::string>();
      if (prio == "HIGH") {
        p.priority = Priority::high;
      } else if (prio == "LOW") {
        p.priority = Priority::low;
      } else {
        bad_field(path, "priority", "expected LOW or HIGH");
      }
    }
  } else {
    bad_field(path, "packet", "expected an array or object");
  }
  if (payload) {
    if (!payload->is_array() ||
        static_cast<int>(payload->size()) != packet_dim) {
      bad_field(path, "payload",
                "expected " + std::to_string(packet_dim) + " entries");
    }
    for (int i = 0; i < packet_dim; ++i) {
      p.payload[i] = rat_from_json((*payload)[i], path, "payload");
    }
  }
  return p;
}

}  // namespace

Packet packet_from_json_text(const std::string& text, int packet_dim) {
  return packet_from_json(json::parse(text), "<inline>", packet_dim);
}

LoadedNetwork load_network(const std::string& path) {
  const json j = parse_file(path);
  if (!j.is_object()) throw ParseError(path + ": top level must be an object");
  LoadedNetwork out;

  if (j.contains("disk") && j.contains("signals")) {
    bad_field(path, "disk", "give either 'signals' or 'disk', not both");
  }

  if (j.contains("disk")) {
    const json& disk = j["disk"];
    double threshold = disk.contains("threshold")
                           ? number_field(disk, path, "threshold")
                           : 0.0;
    if (!disk.contains("positions") || !disk["positions"].is_object()) {
      bad_field(path, "positions", "expected an object of node -> [x, y]");
    }
    std::map<NodeId, std::array<double, 2>> positions;
    std::map<NodeId, double> radii;
    for (const auto& [key, value] : disk["positions"].items()) {
      if (!value.is_array() || value.size() != 2) {
        bad_field(path, "positions", "expected [x, y] for node " + key);
      }
      positions[std::stoi(key)] = {value[0].get<double>(),
                                   value[1].get<double>()};
    }
    if (disk.contains("radii")) {
      for (const auto& [key, value] : disk["radii"].items()) {
        radii[std::stoi(key)] = value.get<double>();
      }
    } else if (disk.contains("radius")) {
      for (const auto& [n, pos] : positions) {
        (void)pos;
        radii[n] = disk["radius"].get<double>();
      }
    } else {
      bad_field(path, "radii", "disk model needs 'radii' or 'radius'");
    }
    out.net = disk_signals(positions, radii, threshold);
  } else {
    if (!j.contains("nodes") || !j["nodes"].is_array()) {
      bad_field(path, "nodes", "expected an array of node ids");
    }
    for (const json& n : j["nodes"]) {
      if (!n.is_number_integer()) bad_field(path, "nodes", "node ids are integers");
      out.net.nodes.push_back(n.get<NodeId>());
    }
    out.net.threshold = number_field(j, path, "threshold");
    if (j.contains("signals")) {
      if (!j["signals"].is_array()) bad_field(path, "signals", "expected an array");
      for (const json& s : j["signals"]) {
        const NodeId from = s.contains("from") && s["from"].is_number_integer()
                                ? s["from"].get<NodeId>()
                                : (bad_field(path, "from", "expected a node id"), 0);
        const NodeId to = s.contains("to") && s["to"].is_number_integer()
                              ? s["to"].get<NodeId>()
                              : (bad_field(path, "to", "expected a node id"), 0);
        const double level = number_field(s, path, "level");
        if (s.contains("t")) {
          if (!s["t"].is_number_integer()) bad_field(path, "t", "expected an integer");
          out.net.timed_signal[{from, to, s["t"].get<TimeStep>()}] = level;
        } else {
          out.net.static_signal[{from, to}] = level;
        }
      }
    }
  }

  if (j.contains("window")) {
    const json& w = j["window"];
    if (!w.is_array() || w.size() != 2 || !w[0].is_number_integer() ||
        !w[1].is_number_integer()) {
      bad_field(path, "window", "expected [t0, t1]");
    }
    out.window = TimeWindow{w[0].get<TimeStep>(), w[1].get<TimeStep>()};
    if (out.window->length() < 1) bad_field(path, "window", "t1 must be >= t0");
  }
  out.net.validate();
  return out;
}

LoadedSchedule load_schedule(const std::string& path, int packet_dim,
                             int buffer_len) {
  const json j = parse_file(path);
  if (!j.is_object()) throw ParseError(path + ": top level must be an object");
  LoadedSchedule out;
  out.schedule.t0 = 0;
  if (j.contains("t0")) {
    if (!j["t0"].is_number_integer()) bad_field(path, "t0", "expected an integer");
    out.schedule.t0 = j["t0"].get<TimeStep>();
  }
  if (!j.contains("slices") || !j["slices"].is_array() || j["slices"].empty()) {
    bad_field(path, "slices", "expected a nonempty array of transmitter lists");
  }
  for (const json& slice : j["slices"]) {
    if (!slice.is_array()) bad_field(path, "slices", "each slice is an array");
    std::vector<NodeId> transmitters;
    for (const json& n : slice) {
      if (!n.is_number_integer()) bad_field(path, "slices", "node ids are integers");
      transmitters.push_back(n.get<NodeId>());
    }
    out.schedule.transmitters.push_back(std::move(transmitters));
  }

  if (j.contains("initial")) {
    if (!j["initial"].is_array()) bad_field(path, "initial", "expected an array");
    for (const json& entry : j["initial"]) {
      if (!entry.contains("node") || !entry["node"].is_number_integer()) {
        bad_field(path, "initial", "each entry needs a 'node'");
      }
      NodeState st;
      if (entry.contains("prev") && !entry["prev"].is_null()) {
        if (!entry["prev"].is_number_integer()) {
          bad_field(path, "prev", "expected a node id or null");
        }
        st.prev = entry["prev"].get<NodeId>();
      }
      if (entry.contains("cur")) {
        if (entry["cur"].is_null()) {
          st.cur = ActValue(std::nullopt);
        } else if (entry["cur"].is_number_integer()) {
          st.cur = ActValue(entry["cur"].get<NodeId>());
        } else {
          bad_field(path, "cur", "expected a node id or null");
        }
      }
      if (entry.contains("buffer")) {
        if (!entry["buffer"].is_array() ||
            static_cast<int>(entry["buffer"].size()) != buffer_len) {
          bad_field(path, "buffer",
                    "expected " + std::to_string(buffer_len) + " packets");
        }
        for (const json& pk : entry["buffer"]) {
          st.buffer.push_back(packet_from_json(pk, path, packet_dim));
        }
      }
      out.initial[entry["node"].get<NodeId>()] = std::move(st);
    }
  }

  if (j.contains("injections")) {
    if (!j["injections"].is_array()) bad_field(path, "injections", "expected an array");
    for (const json& entry : j["injections"]) {
      Injection inj;
      if (!entry.contains("node") || !entry["node"].is_number_integer()) {
        bad_field(path, "injections", "each entry needs a 'node'");
      }
      inj.node = entry["node"].get<NodeId>();
      if (!entry.contains("t") || !entry["t"].is_number_integer()) {
        bad_field(path, "injections", "each entry needs a 't'");
      }
      inj.t = entry["t"].get<TimeStep>();
      inj.slot = 2;
      if (entry.contains("slot")) {
        if (!entry["slot"].is_number_integer()) bad_field(path, "slot", "expected an integer");
        inj.slot = entry["slot"].get<int>();
      }
      if (!entry.contains("packet")) bad_field(path, "injections", "each entry needs a 'packet'");
      inj.packet = packet_from_json(entry["packet"], path, packet_dim);
      out.injections.push_back(std::move(inj));
    }
  }
  return out;
}

namespace {

void report_header(std::ostream& os, const std::string& command,
                   const std::string& source) {
  os << "sheafnet report: " << command << '\n';
  os << "input: " << source << '\n';
}

void print_cells(std::ostream& os, const SimplicialComplex& X) {
  os << "cells (" << X.num_cells() << "):\n";
  for (CellId c = 0; c < X.num_cells(); ++c) {
    os << "  " << X.cell(c) << '\n';
  }
}

}  // namespace

void report_complex(std::ostream& os, const std::string& source,
                    const NetworkDescription& net, const SimplicialComplex& X,
                    std::optional<TimeStep> t) {
  report_header(os, "complex", source);
  os << "nodes (" << net.nodes.size() << "):";
  std::vector<NodeId> sorted = net.nodes;
  std::sort(sorted.begin(), sorted.end());
  for (NodeId n : sorted) os << ' ' << n;
  os << '\n';
  os << "threshold: " << net.threshold << '\n';
  if (t) {
    os << "timeslice: t=" << *t << '\n';
  } else {
    os << "timeslice: static\n";
  }
  print_cells(os, X);
  const std::vector<CellId> f = facets(X);
  os << "facets (" << f.size() << "):\n";
  for (CellId id : f) {
    os << "  " << X.cell(id) << "  broadcast-resource members:";
    for (VertexId v : X.cell(id).vertices()) os << ' ' << v;
    os << '\n';
  }
}

void report_time_complex(std::ostream& os, const std::string& source,
                         const TimeComplex& tc) {
  report_header(os, "complex", source);
  const TimeWindow w = tc.window();
  os << "window: [" << w.t0 << ',' << w.t1 << "]\n";
  os << "nodes (" << tc.nodes().size() << "):";
  for (NodeId n : tc.nodes()) os << ' ' << n;
  os << '\n';
  const SimplicialComplex& X = tc.complex();
  os << "cells (" << X.num_cells() << "):\n";
  for (CellId c = 0; c < X.num_cells(); ++c) {
    os << "  " << tc.cell_label(c);
    if (tc.is_temporal_edge(c)) os << "  temporal";
    os << '\n';
  }
  const std::vector<CellId> f = facets(X);
  os << "facets (" << f.size() << "):\n";
  for (CellId id : f) os << "  " << tc.cell_label(id) << '\n';
  for (TimeStep t = w.t0; t <= w.t1; ++t) {
    const SimplicialComplex& slice = tc.slice(t);
    const std::vector<CellId> sf = facets(slice);
    os << "slice t=" << t << ": " << slice.num_cells() << " cells, facets:";
    for (CellId id : sf) os << ' ' << to_string(slice.cell(id));
    os << '\n';
  }
}

void report_sections(std::ostream& os, const std::string& source,
                     const SetSheaf& sheaf,
                     const std::vector<ActSection>& sections) {
  report_header(os, "sections", source);
  const SimplicialComplex& X = sheaf.base();
  os << "sections (" << sections.size() << "):\n";
  for (std::size_t i = 0; i < sections.size(); ++i) {
    const ActSection& s = sections[i];
    const std::vector<NodeId> tx = s.transmitters(X);
    os << "section " << i << ": transmitters:";
    if (tx.empty()) {
      os << " (none)";
    } else {
      for (NodeId n : tx) os << ' ' << n;
    }
    os << '\n';
    for (NodeId n : tx) {
      const CellSet region = active_region(sheaf, s, n);
      os << "  active region of " << n << " (" << region.size() << "):";
      for (CellId c : region) os << ' ' << to_string(X.cell(c));
      os << '\n';
      const CellSet roi = region_of_influence_node(sheaf, s, n);
      os << "  region of influence of " << n << " (" << roi.size() << "):";
      for (CellId c : roi) os << ' ' << to_string(X.cell(c));
      os << '\n';
    }
  }
}

void report_cohomology(std::ostream& os, const std::string& source,
                       const std::vector<int>& dims, int node_count) {
  report_header(os, "cohomology", source);
  os << "cohomology dims:";
  for (std::size_t k = 0; k < dims.size(); ++k) {
    os << " H^" << k << "=" << dims[k];
  }
  os << '\n';
  bool pass = !dims.empty() && dims[0] == node_count;
  for (std::size_t k = 1; k < dims.size(); ++k) pass = pass && dims[k] == 0;
  if (dims.empty()) pass = node_count == 0;
  os << "node-count check: " << (pass ? "PASS" : "FAIL") << " (H^0="
     << (dims.empty() ? 0 : dims[0]) << ", nodes=" << node_count
     << ", higher degrees " << (pass ? "zero" : "nonzero") << ")\n";
}

bool report_random_cohomology(std::ostream& os, std::uint64_t seed, int count) {
  os << "random disk networks: " << count << "  seed: " << seed << '\n';
  int passed = 0;
  for (int i = 0; i < count; ++i) {
    const NetworkDescription net = random_disk_network(seed + i);
    auto X = std::make_shared<SimplicialComplex>(link_complex(net));
    const std::vector<int> dims = cohomology_dims(vector_activation_sheaf(X));
    bool ok = !dims.empty() && dims[0] == static_cast<int>(net.nodes.size());
    for (std::size_t k = 1; k < dims.size(); ++k) ok = ok && dims[k] == 0;
    os << "  network " << i << ": nodes=" << net.nodes.size() << " H=[";
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (k) os << ',';
      os << dims[k];
    }
    os << "] " << (ok ? "PASS" : "FAIL") << '\n';
    if (ok) ++passed;
  }
  os << "summary: " << passed << '/' << count << " PASS\n";
  return passed == count;
}

void report_simulation(std::ostream& os, const PayloadSheaf& ps,
                       const Schedule& schedule,
                       const PayloadSection& section) {
  const TimeComplex& tc = ps.time_complex();
  os << "sheafnet report: simulate\n";
  os << "window: [" << tc.window().t0 << ',' << tc.window().t1 << "]\n";
  os << "protocol: " << ps.protocol().name() << "  packet-dim: "
     << ps.packet_dim() << "  buffer-len: " << ps.buffer_len() << '\n';
  for (std::size_t s = 0; s < schedule.transmitters.size(); ++s) {
    os << "slice t=" << schedule.t0 + static_cast<TimeStep>(s)
       << " transmitters:";
    if (schedule.transmitters[s].empty()) {
      os << " (none)";
    } else {
      for (NodeId n : schedule.transmitters[s]) os << ' ' << n;
    }
    os << '\n';
  }
  os << "trace (" << tc.complex().num_cells() << " cells):\n";
  for (CellId c = 0; c < tc.complex().num_cells(); ++c) {
    os << "  " << tc.cell_label(c) << " : " << to_string(section.value(c))
       << '\n';
  }
}

void report_bound(std::ostream& os, const PayloadSheaf& ps,
                  const Schedule& schedule, int bound) {
  const TimeComplex& tc = ps.time_complex();
  os << "sheafnet report: bound\n";
  os << "window: [" << tc.window().t0 << ',' << tc.window().t1 << "]\n";
  os << "protocol: " << ps.protocol().name() << "  packet-dim: "
     << ps.packet_dim() << "  buffer-len: " << ps.buffer_len() << '\n';
  for (std::size_t s = 0; s < schedule.transmitters.size(); ++s) {
    os << "slice t=" << schedule.t0 + static_cast<TimeStep>(s)
       << " transmitters:";
    if (schedule.transmitters[s].empty()) {
      os << " (none)";
    } else {
      for (NodeId n : schedule.transmitters[s]) os << ' ' << n;
    }
    os << '\n';
  }
  os << "throughput bound: " << bound << '\n';
}

void dot_complex(std::ostream& os, const SimplicialComplex& X) {
  os << "graph complex {\n  node [shape=circle];\n";
  for (CellId c : X.cells_of_dim(0)) {
    os << "  \"" << X.cell(c).vertices()[0] << "\";\n";
  }
  for (CellId c : X.cells_of_dim(1)) {
    const auto& v = X.cell(c).vertices();
    os << "  \"" << v[0] << "\" -- \"" << v[1] << "\";\n";
  }
  for (int k = 2; k <= X.dim(); ++k) {
    for (CellId c : X.cells_of_dim(k)) {
      os << "  // " << k << "-cell " << to_string(X.cell(c)) << "\n";
    }
  }
  os << "}\n";
}

void dot_sections(std::ostream& os, const SetSheaf& sheaf,
                  const std::vector<ActSection>& sections) {
  const SimplicialComplex& X = sheaf.base();
  for (std::size_t i = 0; i < sections.size(); ++i) {
    const ActSection& s = sections[i];
    os << "graph section_" << i << " {\n  node [shape=circle];\n";
    os << "  label=\"transmitters:";
    for (NodeId n : s.transmitters(X)) os << ' ' << n;
    os << "\";\n";
    for (CellId c : X.cells_of_dim(0)) {
      const VertexId v = X.cell(c).vertices()[0];
      os << "  \"" << v << "\" [label=\"" << v << ':'
         << to_string(s.value(c)) << '"';
      if (s.value(c).has_value()) os << ", style=filled";
      os << "];\n";
    }
    for (CellId c : X.cells_of_dim(1)) {
      const auto& v = X.cell(c).vertices();
      os << "  \"" << v[0] << "\" -- \"" << v[1] << "\" [label=\""
         << to_string(s.value(c)) << '"';
      if (s.value(c).has_value()) os << ", style=bold";
      os << "];\n";
    }
    for (int k = 2; k <= X.dim(); ++k) {
      for (CellId c : X.cells_of_dim(k)) {
        os << "  // " << k << "-cell " << to_string(X.cell(c)) << " : "
           << to_string(s.value(c)) << "\n";
      }
    }
    os << "}\n";
  }
}

void dump_cochain_matrices(const std::string& dir, const VectorSheaf& sheaf) {
  std::filesystem::create_directories(dir);
  const int top = sheaf.base().dim();
  for (int k = 0; k <= top; ++k) {
    const RatMatrix delta = coboundary(sheaf, k);
    std::ofstream out(dir + "/delta" + std::to_string(k) + ".txt");
    if (!out) throw InputError("cannot write under " + dir);
    write_triplets(out, delta);
  }
}

}  // namespace sheafnet
