#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sheafnet/netmodel.hpp"
#include "sheafnet/payload.hpp"
#include "sheafnet/sheaflin.hpp"
#include "sheafnet/temporal.hpp"

namespace sheafnet {

// Network and schedule files are JSON; the grammar is documented in the
// README. Parse problems surface as ParseError with a line or field hint.

struct LoadedNetwork {
  NetworkDescription net;
  std::optional<TimeWindow> window;
};

LoadedNetwork load_network(const std::string& path);

struct LoadedSchedule {
  Schedule schedule;
  std::map<NodeId, NodeState> initial;
  std::vector<Injection> injections;
};

LoadedSchedule load_schedule(const std::string& path, int packet_dim,
                             int buffer_len);

Packet packet_from_json_text(const std::string& text, int packet_dim);

// Deterministic plain-text reports.
void report_complex(std::ostream& os, const std::string& source,
                    const NetworkDescription& net, const SimplicialComplex& X,
                    std::optional<TimeStep> t);
void report_time_complex(std::ostream& os, const std::string& source,
                         const TimeComplex& tc);
void report_sections(std::ostream& os, const std::string& source,
                     const SetSheaf& sheaf,
                     const std::vector<ActSection>& sections);
void report_cohomology(std::ostream& os, const std::string& source,
                       const std::vector<int>& dims, int node_count);
/// Seeded batch check that the vector activation sheaf of a random disk
/// network has full-degree-zero cohomology only. Returns true when every
/// network passes.
bool report_random_cohomology(std::ostream& os, std::uint64_t seed, int count);
void report_simulation(std::ostream& os, const PayloadSheaf& ps,
                       const Schedule& schedule, const PayloadSection& section);
void report_bound(std::ostream& os, const PayloadSheaf& ps,
                  const Schedule& schedule, int bound);

// DOT exports of a complex, optionally overlaying sections.
void dot_complex(std::ostream& os, const SimplicialComplex& X);
void dot_sections(std::ostream& os, const SetSheaf& sheaf,
                  const std::vector<ActSection>& sections);

/// Writes each coboundary matrix as a sparse triplet file
/// (delta0.txt, delta1.txt, ...) under dir.
void dump_cochain_matrices(const std::string& dir, const VectorSheaf& sheaf);

}  // namespace sheafnet
