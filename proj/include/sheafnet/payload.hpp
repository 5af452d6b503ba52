#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sheafnet/activation.hpp"
#include "sheafnet/rational.hpp"
#include "sheafnet/sheaflin.hpp"
#include "sheafnet/temporal.hpp"

namespace sheafnet {

enum class Priority { low, high };

/// One queue slot. The payload is a rational vector in the packet space;
/// destination and priority ride along as metadata for the forwarding
/// protocols and are invisible to the linear-algebra view. A slot is empty
/// exactly when the payload is the zero vector and no destination is set.
struct Packet {
  std::vector<Rat> payload;
  std::optional<NodeId> destination;
  Priority priority = Priority::low;

  static Packet zero(int dim);
  static Packet scalar(const Rat& value);  // dimension-1 helper
  bool is_zero() const;

  friend bool operator==(const Packet& a, const Packet& b) {
    return a.payload == b.payload && a.destination == b.destination &&
           a.priority == b.priority;
  }
};

std::string to_string(const Packet& p);

/// The five built-in receive-queue protocols. A receive-queue function
/// maps the whole buffer (x_1 receive slot, x_2..x_n transmit queue) to
/// the next transmit queue; every one is a permutation of a subset of its
/// inputs padded with zeros.
enum class Protocol {
  forward_nothing,
  forward_everything,
  forward_with_queue_management,
  forward_for_others,
  forward_for_others_priority,
};

Protocol protocol_from_name(const std::string& name);  // UnknownProtocolError
std::string protocol_name(Protocol p);

/// Protocols whose queue update is a fixed linear projection; only these
/// admit the schedule-fixed vector subsheaf.
bool is_linear_protocol(Protocol p);

/// Applies the protocol to a buffer of length n >= 2, producing the next
/// transmit queue of length n - 1.
std::vector<Packet> receive_queue(Protocol p, NodeId self,
                                  const std::vector<Packet>& x);

using ReceiveQueueFn =
    std::function<std::vector<Packet>(NodeId, const std::vector<Packet>&)>;

/// True when every output slot of fn is either zero or a distinct input
/// slot's packet, across a deterministic grid of test buffers.
bool is_selection_with_permutation(const ReceiveQueueFn& fn, NodeId self,
                                   int buffer_len, int packet_dim);

/// Protocol selector held by a payload sheaf: a built-in protocol or a
/// registered custom receive-queue function. Custom functions are
/// validated as selections-with-permutation at registration.
class ReceiveQueue {
 public:
  ReceiveQueue(Protocol builtin);  // implicit on purpose
  static ReceiveQueue custom(std::string name, ReceiveQueueFn fn,
                             int buffer_len, int packet_dim);

  std::vector<Packet> operator()(NodeId self, const std::vector<Packet>& x) const;
  bool linear() const;
  const std::string& name() const { return name_; }
  std::optional<Protocol> builtin() const { return builtin_; }

 private:
  ReceiveQueue() = default;
  std::optional<Protocol> builtin_;
  ReceiveQueueFn fn_;
  std::string name_;
};

/// Switch between two packet inputs by a boolean state: z = 0 produces x,
/// z = 1 produces y.
Packet switching_map(bool z, const Packet& x, const Packet& y);

/// Stalk value of a data payload sheaf. Vertices carry two state slots
/// (previous and current transmitter) and the full buffer; temporal edges
/// carry one state slot and the queue remnant; slice cells of dimension
/// one and higher carry one state slot and the single packet on the
/// shared channel.
struct PayloadValue {
  std::vector<ActValue> states;
  std::vector<Packet> data;

  friend bool operator==(const PayloadValue& a, const PayloadValue& b) {
    return a.states == b.states && a.data == b.data;
  }
};

std::string to_string(const PayloadValue& v);

/// The data payload sheaf over a time-dependent link complex,
/// parameterized by the packet-space dimension, the buffer length n (the
/// transmit queue holds n - 1 packets) and the forwarding protocol.
///
/// Between timeslices, from the earlier vertex of a node a:
///   (a, x_2..x_{n-1}, 0)  when a transmits a nonzero tail,
///   (b, q(x))             when a hears b,
///   (bottom, x_2..x_n)    otherwise (idle, or transmitting nothing),
/// and from the later vertex, by the previous-state slot:
///   (a, x_3..x_n, 0) / (b, x_2..x_n) / (bottom, x_2..x_n).
///
/// Within a timeslice the state slot transforms exactly like the
/// activation sheaf, so the per-slice projection is a sheaf morphism onto
/// the activation sheaf: a vertex labeled with its own node puts the queue
/// tail on the cell, one labeled with a covering transmitter reproduces
/// its receive buffer, and anything else yields an idle cell with zero
/// data. Between cells of dimension one and higher the value is kept when
/// its state survives in the smaller stalk and collapses to idle-zero
/// otherwise.
class PayloadSheaf {
 public:
  PayloadSheaf(TimeComplex tc, int packet_dim, int buffer_len, ReceiveQueue q);

  const TimeComplex& time_complex() const { return tc_; }
  int packet_dim() const { return d_; }
  int buffer_len() const { return n_; }
  const ReceiveQueue& protocol() const { return q_; }

  /// Node part of the state set at a cell; bottom is implicit.
  const std::vector<NodeId>& state_set(CellId c) const;
  bool state_in_set(CellId c, const ActValue& v) const;
  int data_len(CellId c) const;
  bool value_in_stalk(CellId c, const PayloadValue& v) const;

  PayloadValue restrict_value(CellId c, CellId d, const PayloadValue& v) const;

  /// Cached activation sheaf of a timeslice, over the slice complex.
  const SetSheaf& slice_activation(TimeStep t) const;

 private:
  TimeComplex tc_;
  int d_ = 1;
  int n_ = 2;
  ReceiveQueue q_;
  std::vector<std::vector<NodeId>> states_;
  std::vector<SetSheaf> slice_act_;
};

PayloadSheaf payload_sheaf(TimeComplex tc, int packet_dim, int buffer_len,
                           ReceiveQueue q);

/// Total assignment of payload values to the cells of the time complex.
class PayloadSection {
 public:
  PayloadSection() = default;
  explicit PayloadSection(int num_cells);

  int num_cells() const { return static_cast<int>(values_.size()); }
  bool assigned(CellId c) const;
  const PayloadValue& value(CellId c) const;
  void set(CellId c, PayloadValue v);
  bool total() const;

 private:
  std::vector<PayloadValue> values_;
  std::vector<char> assigned_;
};

std::optional<std::string> payload_section_violation(const PayloadSheaf& ps,
                                                     const PayloadSection& s);
bool is_payload_section(const PayloadSheaf& ps, const PayloadSection& s);

/// The activation sheaf sitting inside the payload sheaf at timeslice t,
/// over the slice complex.
SetSheaf activation_subsheaf(const PayloadSheaf& ps, TimeStep t);

/// The per-cell stalk surjection onto the activation subsheaf: the current
/// state of a vertex, the single state slot of any other slice cell.
/// Rejects temporal edges, which belong to no timeslice.
ActValue activation_project(const PayloadSheaf& ps, CellId global_cell,
                            const PayloadValue& v);

/// The two state slots of one node's temporal thread form a 2-term
/// grouping sheaf valued in the node's adjacency set plus bottom.
GroupingSheaf node_thread_subsheaf(const PayloadSheaf& ps, NodeId node);

/// Per-timeslice transmitter choices; slice s covers timestep t0 + s.
struct Schedule {
  TimeStep t0 = 0;
  std::vector<std::vector<NodeId>> transmitters;

  TimeWindow window() const {
    return {t0, t0 + static_cast<TimeStep>(transmitters.size()) - 1};
  }
};

/// State of one node entering the window: previous transmitter slot,
/// optional current slot (checked against the schedule when present) and
/// the initial buffer x_1..x_n.
struct NodeState {
  ActValue prev;
  std::optional<ActValue> cur;
  std::vector<Packet> buffer;
};

/// Fills a free transmit slot (1-based buffer index in 2..n) at one
/// timestep. Slots are free at t0, and slot 2 is free right after the node
/// transmitted; anything else conflicts with the queue dynamics.
struct Injection {
  NodeId node = 0;
  TimeStep t = 0;
  int slot = 2;
  Packet packet;
};

/// Drives the payload sheaf over the whole window: expands the schedule
/// into activation sections per slice, propagates buffers through the
/// restriction maps, applies injections, and returns the resulting total
/// section after a full consistency check.
PayloadSection simulate(const PayloadSheaf& ps, const Schedule& schedule,
                        const std::map<NodeId, NodeState>& initial = {},
                        const std::vector<Injection>& injections = {});

/// The vector sheaf obtained by pinning every state slot to the schedule:
/// stalks D^n over vertices, D^{n-1} over temporal edges, D elsewhere,
/// all restrictions 0/1 projections. Requires a linear protocol.
VectorSheaf fixed_activation_subsheaf(const PayloadSheaf& ps,
                                      const Schedule& schedule);

/// dim H^0 of the schedule-fixed subsheaf: the throughput upper bound for
/// that transmission pattern.
int throughput_bound(const VectorSheaf& P);

}  // namespace sheafnet
