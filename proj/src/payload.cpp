#include "sheafnet/payload.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sheafnet {

Packet Packet::zero(int dim) {
  Packet p;
  p.payload.assign(dim, Rat(0));
  return p;
}

Packet Packet::scalar(const Rat& value) {
  Packet p;
  p.payload = {value};
  return p;
}

bool Packet::is_zero() const {
  if (destination.has_value()) return false;
  return std::all_of(payload.begin(), payload.end(),
                     [](const Rat& q) { return q == 0; });
}

std::string to_string(const Packet& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.payload.size(); ++i) {
    if (i) os << ',';
    os << p.payload[i];
  }
  os << ')';
  if (p.destination) os << "->" << *p.destination;
  if (p.priority == Priority::high) os << "!H";
  return os.str();
}

Protocol protocol_from_name(const std::string& name) {
  if (name == "forward-nothing") return Protocol::forward_nothing;
  if (name == "forward-everything") return Protocol::forward_everything;
  if (name == "forward-queue-management") {
    return Protocol::forward_with_queue_management;
  }
  if (name == "forward-for-others") return Protocol::forward_for_others;
  if (name == "forward-for-others-priority") {
    return Protocol::forward_for_others_priority;
  }
  throw UnknownProtocolError("unknown protocol: '" + name + "'");
}

std::string protocol_name(Protocol p) {
  switch (p) {
    case Protocol::forward_nothing:
      return "forward-nothing";
    case Protocol::forward_everything:
      return "forward-everything";
    case Protocol::forward_with_queue_management:
      return "forward-queue-management";
    case Protocol::forward_for_others:
      return "forward-for-others";
    case Protocol::forward_for_others_priority:
      return "forward-for-others-priority";
  }
  throw UnknownProtocolError("unknown protocol id");
}

bool is_linear_protocol(Protocol p) {
  return p == Protocol::forward_nothing || p == Protocol::forward_everything;
}

namespace {

// Transmit-queue slice x_2..x_n of the buffer.
std::vector<Packet> queue_part(const std::vector<Packet>& x) {
  return {x.begin() + 1, x.end()};
}

// x_1 placed into the last (highest-index) empty transmit slot; with a
// full queue the starting entry x_2 is dropped and replaced.
std::vector<Packet> queue_management_place(const std::vector<Packet>& x) {
  std::vector<Packet> out = queue_part(x);
  for (int i = static_cast<int>(out.size()) - 1; i >= 0; --i) {
    if (out[i].is_zero()) {
      out[i] = x[0];
      return out;
    }
  }
  out[0] = x[0];
  return out;
}

}  // namespace

std::vector<Packet> receive_queue(Protocol p, NodeId self,
                                  const std::vector<Packet>& x) {
  if (x.size() < 2) {
    throw InputError("receive queue needs a buffer of length at least 2");
  }
  const bool for_me = x[0].destination && *x[0].destination == self;
  switch (p) {
    case Protocol::forward_nothing:
      return queue_part(x);
    case Protocol::forward_everything: {
      std::vector<Packet> out = queue_part(x);
      out[0] = x[0];
      return out;
    }
    case Protocol::forward_with_queue_management:
      return queue_management_place(x);
    case Protocol::forward_for_others:
      return for_me ? queue_part(x) : queue_management_place(x);
    case Protocol::forward_for_others_priority: {
      if (for_me) return queue_part(x);
      if (x[0].priority == Priority::high) {
        // Jump to the end of the transmit queue, dropping the start.
        std::vector<Packet> out(x.begin() + 2, x.end());
        out.push_back(x[0]);
        return out;
      }
      return queue_management_place(x);
    }
  }
  throw UnknownProtocolError("unknown protocol id");
}

bool is_selection_with_permutation(const ReceiveQueueFn& fn, NodeId self,
                                   int buffer_len, int packet_dim) {
  if (buffer_len < 2) throw InputError("buffer length must be at least 2");
  // Deterministic grid: every 0/1 payload pattern in the first coordinate,
  // with distinct nonzero markers so the permutation is visible.
  const int n = buffer_len;
  std::vector<std::vector<Packet>> grid;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<Packet> x;
    for (int i = 0; i < n; ++i) {
      Packet p = Packet::zero(packet_dim);
      if (mask & (1u << i)) p.payload[0] = i + 1;
      x.push_back(std::move(p));
    }
    grid.push_back(std::move(x));
    // A variant addressed to self, to exercise destination branches.
    std::vector<Packet> y = grid.back();
    if (!y[0].is_zero()) {
      y[0].destination = self;
      grid.push_back(std::move(y));
    }
  }
  for (const auto& x : grid) {
    std::vector<Packet> out;
    try {
      out = fn(self, x);
    } catch (const std::exception&) {
      return false;
    }
    if (static_cast<int>(out.size()) != n - 1) return false;
    // Match nonzero outputs injectively to equal inputs (greedy works here
    // because grid inputs are pairwise distinct when nonzero).
    std::vector<char> used(n, 0);
    for (const Packet& o : out) {
      if (o.is_zero()) continue;
      bool matched = false;
      for (int i = 0; i < n; ++i) {
        if (!used[i] && x[i] == o) {
          used[i] = 1;
          matched = true;
          break;
        }
      }
      if (!matched) return false;
    }
  }
  return true;
}

ReceiveQueue::ReceiveQueue(Protocol builtin) {
  builtin_ = builtin;
  name_ = protocol_name(builtin);
}

ReceiveQueue ReceiveQueue::custom(std::string name, ReceiveQueueFn fn,
                                  int buffer_len, int packet_dim) {
  if (!fn) throw InputError("custom protocol needs a function");
  if (!is_selection_with_permutation(fn, 1, buffer_len, packet_dim)) {
    throw InvalidValueError(
        "custom protocol is not a selection-with-permutation of its inputs");
  }
  ReceiveQueue q;
  q.fn_ = std::move(fn);
  q.name_ = std::move(name);
  return q;
}

std::vector<Packet> ReceiveQueue::operator()(NodeId self,
                                             const std::vector<Packet>& x) const {
  if (builtin_) return receive_queue(*builtin_, self, x);
  return fn_(self, x);
}

bool ReceiveQueue::linear() const {
  return builtin_ && is_linear_protocol(*builtin_);
}

Packet switching_map(bool z, const Packet& x, const Packet& y) {
  if (x.payload.size() != y.payload.size()) {
    throw InputError("switching inputs must share a packet space");
  }
  return z ? y : x;
}

std::string to_string(const PayloadValue& v) {
  std::ostringstream os;
  os << "state (";
  for (std::size_t i = 0; i < v.states.size(); ++i) {
    if (i) os << ',';
    os << to_string(v.states[i]);
  }
  os << ") data (";
  for (std::size_t i = 0; i < v.data.size(); ++i) {
    if (i) os << ',';
    os << to_string(v.data[i]);
  }
  os << ')';
  return os.str();
}

PayloadSheaf::PayloadSheaf(TimeComplex tc, int packet_dim, int buffer_len,
                           ReceiveQueue q)
    : tc_(std::move(tc)), d_(packet_dim), n_(buffer_len), q_(std::move(q)) {
  if (d_ < 1) throw InputError("packet dimension must be at least 1");
  if (n_ < 2) throw InputError("buffer length must be at least 2");
  const SimplicialComplex& X = tc_.complex();
  if (X.empty()) throw InputError("payload sheaf needs a nonempty complex");

  const TimeWindow w = tc_.window();
  for (TimeStep t = w.t0; t <= w.t1; ++t) {
    slice_act_.push_back(activation_sheaf(tc_.slice_ptr(t)));
  }

  states_.resize(X.num_cells());
  for (CellId c = 0; c < X.num_cells(); ++c) {
    if (tc_.is_temporal_edge(c)) {
      const NodeId a = tc_.node_of(c);
      const TimeStep t = tc_.vertex_label(X.cell(c).vertices()[0]).second;
      std::set<NodeId> merged;
      for (TimeStep u : {t, t + 1}) {
        const SetSheaf& act = slice_act_[u - w.t0];
        const auto& stalk = act.stalk(act.base().id_of(Cell({a})));
        merged.insert(stalk.begin(), stalk.end());
      }
      states_[c].assign(merged.begin(), merged.end());
    } else {
      const TimeStep t = *tc_.slice_of(c);
      const SetSheaf& act = slice_act_[t - w.t0];
      states_[c] = act.stalk(tc_.global_cell_to_slice(c));
    }
  }
}

PayloadSheaf payload_sheaf(TimeComplex tc, int packet_dim, int buffer_len,
                           ReceiveQueue q) {
  return PayloadSheaf(std::move(tc), packet_dim, buffer_len, std::move(q));
}

const std::vector<NodeId>& PayloadSheaf::state_set(CellId c) const {
  tc_.complex().cell(c);
  return states_[c];
}

bool PayloadSheaf::state_in_set(CellId c, const ActValue& v) const {
  if (!v) return true;
  const auto& s = state_set(c);
  return std::binary_search(s.begin(), s.end(), *v);
}

int PayloadSheaf::data_len(CellId c) const {
  if (tc_.is_temporal_edge(c)) return n_ - 1;
  return tc_.complex().cell_dim(c) == 0 ? n_ : 1;
}

bool PayloadSheaf::value_in_stalk(CellId c, const PayloadValue& v) const {
  const std::size_t want_states =
      (!tc_.is_temporal_edge(c) && tc_.complex().cell_dim(c) == 0) ? 2 : 1;
  if (v.states.size() != want_states) return false;
  for (const ActValue& s : v.states) {
    if (!state_in_set(c, s)) return false;
  }
  if (static_cast<int>(v.data.size()) != data_len(c)) return false;
  for (const Packet& p : v.data) {
    if (static_cast<int>(p.payload.size()) != d_) return false;
  }
  return true;
}

const SetSheaf& PayloadSheaf::slice_activation(TimeStep t) const {
  if (!tc_.window().contains(t)) {
    throw OutOfWindowError("timestep " + std::to_string(t) +
                           " outside the window");
  }
  return slice_act_[t - tc_.window().t0];
}

namespace {

std::vector<Packet> slice_range(const std::vector<Packet>& x, int from,
                                int to_exclusive) {
  return {x.begin() + from, x.begin() + to_exclusive};
}

}  // namespace

PayloadValue PayloadSheaf::restrict_value(CellId c, CellId d,
                                          const PayloadValue& v) const {
  const SimplicialComplex& X = tc_.complex();
  if (!value_in_stalk(c, v)) {
    throw InvalidValueError("value outside the stalk at " + tc_.cell_label(c));
  }
  if (c == d) return v;
  if (!X.cell(c).is_face_of(X.cell(d))) {
    throw InvalidIncidenceError(tc_.cell_label(c) + " is not a face of " +
                                tc_.cell_label(d));
  }

  if (tc_.is_temporal_edge(d)) {
    // c is one of the two copies of node a.
    const NodeId a = tc_.node_of(d);
    const TimeStep edge_t = tc_.vertex_label(X.cell(d).vertices()[0]).second;
    const TimeStep c_t = *tc_.slice_of(c);
    const std::vector<Packet>& x = v.data;
    PayloadValue out;
    if (c_t == edge_t) {
      const ActValue& cur = v.states[1];
      if (cur && *cur == a && !x[n_ - 1].is_zero()) {
        out.states = {cur};
        out.data = slice_range(x, 1, n_ - 1);
        out.data.push_back(Packet::zero(d_));
      } else if (cur && *cur != a) {
        out.states = {cur};
        out.data = q_(a, x);
      } else {
        out.states = {std::nullopt};
        out.data = slice_range(x, 1, n_);
      }
    } else {
      const ActValue& prev = v.states[0];
      if (prev && *prev == a) {
        out.states = {prev};
        out.data = slice_range(x, 2, n_);
        out.data.push_back(Packet::zero(d_));
      } else {
        out.states = {prev};  // node id or bottom, queue kept whole
        out.data = slice_range(x, 1, n_);
      }
    }
    if (static_cast<int>(out.data.size()) != n_ - 1) {
      throw Error("internal: temporal restriction size mismatch");
    }
    return out;
  }

  if (X.cell_dim(c) == 0) {
    // Vertex of node a into a slice cell. The state slot follows the
    // activation restriction so the slice projection stays a morphism.
    const NodeId a = tc_.node_of(c);
    const ActValue& cur = v.states[1];
    PayloadValue out;
    if (cur && *cur == a) {
      out.states = {cur};
      out.data = {v.data[n_ - 1]};
    } else if (cur && state_in_set(d, cur)) {
      out.states = {cur};
      out.data = {v.data[0]};
    } else {
      out.states = {std::nullopt};
      out.data = {Packet::zero(d_)};
    }
    return out;
  }

  // Slice cell into a higher slice cell: keep the value when its state
  // survives, otherwise collapse to idle-zero. Bottom survives everywhere.
  const ActValue& m = v.states[0];
  if (!m) return v;
  if (state_in_set(d, m)) return v;
  return PayloadValue{{std::nullopt}, {Packet::zero(d_)}};
}

PayloadSection::PayloadSection(int num_cells)
    : values_(num_cells), assigned_(num_cells, 0) {}

bool PayloadSection::assigned(CellId c) const {
  return c >= 0 && c < num_cells() && assigned_[c];
}

const PayloadValue& PayloadSection::value(CellId c) const {
  if (!assigned(c)) {
    throw InputError("section has no value on cell id " + std::to_string(c));
  }
  return values_[c];
}

void PayloadSection::set(CellId c, PayloadValue v) {
  if (c < 0 || c >= num_cells()) {
    throw UnknownCellError("cell id out of range: " + std::to_string(c));
  }
  values_[c] = std::move(v);
  assigned_[c] = 1;
}

bool PayloadSection::total() const {
  return std::all_of(assigned_.begin(), assigned_.end(),
                     [](char a) { return a != 0; });
}

std::optional<std::string> payload_section_violation(const PayloadSheaf& ps,
                                                     const PayloadSection& s) {
  const SimplicialComplex& X = ps.time_complex().complex();
  if (s.num_cells() != X.num_cells() || !s.total()) {
    throw InputError("payload section must be total on all cells");
  }
  for (CellId c = 0; c < X.num_cells(); ++c) {
    if (!ps.value_in_stalk(c, s.value(c))) {
      return "value outside the stalk at " + ps.time_complex().cell_label(c);
    }
  }
  for (const auto& [c, d] : X.all_incidences()) {
    const PayloadValue got = ps.restrict_value(c, d, s.value(c));
    if (!(got == s.value(d))) {
      std::ostringstream os;
      os << "restriction " << ps.time_complex().cell_label(c) << " within "
         << ps.time_complex().cell_label(d) << " yields " << to_string(got)
         << " but the section assigns " << to_string(s.value(d));
      return os.str();
    }
  }
  return std::nullopt;
}

bool is_payload_section(const PayloadSheaf& ps, const PayloadSection& s) {
  return !payload_section_violation(ps, s).has_value();
}

SetSheaf activation_subsheaf(const PayloadSheaf& ps, TimeStep t) {
  const TimeComplex& tc = ps.time_complex();
  if (!tc.window().contains(t)) {
    throw OutOfWindowError("timestep " + std::to_string(t) +
                           " outside the window");
  }
  ComplexPtr slice = tc.slice_ptr(t);
  std::vector<std::vector<NodeId>> stalks(slice->num_cells());
  for (CellId sc = 0; sc < slice->num_cells(); ++sc) {
    stalks[sc] = ps.state_set(tc.slice_cell_to_global(t, sc));
  }
  return SetSheaf(std::move(slice), std::move(stalks));
}

ActValue activation_project(const PayloadSheaf& ps, CellId global_cell,
                            const PayloadValue& v) {
  const TimeComplex& tc = ps.time_complex();
  if (tc.is_temporal_edge(global_cell)) {
    throw InputError("temporal edges belong to no timeslice");
  }
  if (!ps.value_in_stalk(global_cell, v)) {
    throw InvalidValueError("value outside the stalk at " +
                            tc.cell_label(global_cell));
  }
  const bool vertex = tc.complex().cell_dim(global_cell) == 0;
  return vertex ? v.states[1] : v.states[0];
}

GroupingSheaf node_thread_subsheaf(const PayloadSheaf& ps, NodeId node) {
  const TimeComplex& tc = ps.time_complex();
  const TimeWindow w = tc.window();
  std::set<NodeId> alphabet;
  for (TimeStep t = w.t0; t <= w.t1; ++t) {
    const CellId vc = tc.complex().id_of(
        Cell({tc.vertex_id(node, t)}));
    const auto& s = ps.state_set(vc);
    alphabet.insert(s.begin(), s.end());
  }
  std::vector<std::string> labels = {"-"};
  for (NodeId n : alphabet) labels.push_back(std::to_string(n));
  return grouping_sheaf(2, static_cast<int>(labels.size()), w.length(),
                        std::move(labels));
}

namespace {

struct ExpandedSchedule {
  std::vector<ActSection> sections;  // per slice, over the slice complex
};

ExpandedSchedule expand_schedule(const PayloadSheaf& ps,
                                 const Schedule& schedule) {
  const TimeComplex& tc = ps.time_complex();
  const TimeWindow w = tc.window();
  if (schedule.t0 != w.t0 ||
      static_cast<int>(schedule.transmitters.size()) != w.length()) {
    throw InputError("schedule must cover the window exactly");
  }
  ExpandedSchedule out;
  for (int s = 0; s < w.length(); ++s) {
    const TimeStep t = w.t0 + s;
    const SetSheaf& act = ps.slice_activation(t);
    ExpansionResult result =
        expand_transmitter_set(act, schedule.transmitters[s]);
    if (!result.section) {
      std::ostringstream os;
      os << "interfering transmitters at t=" << t;
      if (result.conflict_cell) {
        os << ": cell " << act.base().cell(*result.conflict_cell)
           << " cannot be filled consistently";
      }
      throw InconsistentScheduleError(os.str());
    }
    out.sections.push_back(std::move(*result.section));
  }
  return out;
}

ActValue slice_value(const PayloadSheaf& ps, const ExpandedSchedule& es, int s,
                     CellId slice_cell) {
  (void)ps;
  return es.sections[s].value(slice_cell);
}

}  // namespace

PayloadSection simulate(const PayloadSheaf& ps, const Schedule& schedule,
                        const std::map<NodeId, NodeState>& initial,
                        const std::vector<Injection>& injections) {
  const TimeComplex& tc = ps.time_complex();
  const SimplicialComplex& X = tc.complex();
  const TimeWindow w = tc.window();
  const int n = ps.buffer_len();
  const int d = ps.packet_dim();
  const int slices = w.length();
  const std::vector<NodeId>& nodes = tc.nodes();

  ExpandedSchedule es = expand_schedule(ps, schedule);

  // Per (node, slice) states and buffers.
  std::map<NodeId, std::vector<ActValue>> cur, prev;
  std::map<NodeId, std::vector<std::vector<Packet>>> buf;
  for (NodeId a : nodes) {
    cur[a].resize(slices);
    prev[a].resize(slices);
    buf[a].assign(slices, std::vector<Packet>(n, Packet::zero(d)));
  }

  auto vertex_slice_id = [&](NodeId a, int s) {
    const SetSheaf& act = ps.slice_activation(w.t0 + s);
    return act.base().id_of(Cell({a}));
  };

  for (NodeId a : nodes) {
    for (int s = 0; s < slices; ++s) {
      cur[a][s] = es.sections[s].value(vertex_slice_id(a, s));
    }
  }

  // Injection bookkeeping: validated, then consumed slice by slice.
  std::map<std::pair<NodeId, TimeStep>, std::vector<Injection>> pending;
  for (const Injection& inj : injections) {
    if (std::find(nodes.begin(), nodes.end(), inj.node) == nodes.end()) {
      throw InputError("injection references an unknown node");
    }
    if (!w.contains(inj.t)) {
      throw OutOfWindowError("injection outside the window");
    }
    if (inj.slot < 2 || inj.slot > n) {
      throw InputError("injection slot must lie in 2..n");
    }
    if (static_cast<int>(inj.packet.payload.size()) != d) {
      throw InputError("injection packet has the wrong dimension");
    }
    pending[{inj.node, inj.t}].push_back(inj);
  }

  // Initial data at t0.
  for (NodeId a : nodes) {
    auto it = initial.find(a);
    if (it == initial.end()) {
      prev[a][0] = std::nullopt;
      continue;
    }
    const NodeState& st = it->second;
    const CellId vc = X.id_of(Cell({tc.vertex_id(a, w.t0)}));
    if (!ps.state_in_set(vc, st.prev)) {
      throw InconsistentScheduleError(
          "initial previous state of node " + std::to_string(a) +
          " is outside its stalk at t0");
    }
    prev[a][0] = st.prev;
    if (st.cur && !(*st.cur == cur[a][0])) {
      throw InconsistentScheduleError(
          "initial current state of node " + std::to_string(a) +
          " disagrees with the schedule at t0");
    }
    if (!st.buffer.empty()) {
      if (static_cast<int>(st.buffer.size()) != n) {
        throw InputError("initial buffer of node " + std::to_string(a) +
                         " must have length n");
      }
      for (const Packet& p : st.buffer) {
        if (static_cast<int>(p.payload.size()) != d) {
          throw InputError("initial packet has the wrong dimension");
        }
      }
      buf[a][0] = st.buffer;
    }
  }
  for (NodeId a : nodes) {
    auto it = pending.find({a, w.t0});
    if (it == pending.end()) continue;
    for (const Injection& inj : it->second) {
      Packet& slot = buf[a][0][inj.slot - 1];
      if (!slot.is_zero()) {
        throw InjectionConflictError("injection targets a nonzero slot of node " +
                                     std::to_string(a) + " at t0");
      }
      slot = inj.packet;
    }
  }

  auto force_receive_buffer = [&](int s) {
    // When a node hears m, its receive slot must equal the data m puts on
    // the shared cells, which is m's queue tail.
    for (NodeId a : nodes) {
      const ActValue& m = cur[a][s];
      if (m && *m != a) {
        const Packet forced = buf[*m][s][n - 1];
        Packet& x1 = buf[a][s][0];
        if (!(x1 == forced)) {
          if (!x1.is_zero()) {
            throw InconsistentScheduleError(
                "receive buffer of node " + std::to_string(a) + " at t=" +
                std::to_string(w.t0 + s) + " conflicts with the transmission");
          }
          x1 = forced;
        }
      }
    }
  };

  force_receive_buffer(0);

  // March through temporal edges.
  for (int s = 0; s + 1 < slices; ++s) {
    for (NodeId a : nodes) {
      const ActValue& m = cur[a][s];
      const std::vector<Packet>& x = buf[a][s];
      ActValue label;
      std::vector<Packet> carried;
      if (m && *m == a && !x[n - 1].is_zero()) {
        label = m;
        carried = slice_range(x, 1, n - 1);
        carried.push_back(Packet::zero(d));
      } else if (m && *m != a) {
        label = m;
        carried = ps.protocol()(a, x);
      } else {
        label = std::nullopt;
        carried = slice_range(x, 1, n);
      }

      const CellId next_vertex = X.id_of(Cell({tc.vertex_id(a, w.t0 + s + 1)}));
      if (!ps.state_in_set(next_vertex, label)) {
        throw InconsistentScheduleError(
            "node " + std::to_string(a) + " heard " + to_string(label) +
            " at t=" + std::to_string(w.t0 + s) +
            " but that state does not persist at t=" +
            std::to_string(w.t0 + s + 1));
      }
      prev[a][s + 1] = label;

      std::vector<Packet>& next = buf[a][s + 1];
      if (label && *label == a) {
        // carried = (x_2..x_{n-1}, 0); the queue advances and slot 2 opens.
        for (int i = 2; i < n; ++i) next[i] = carried[i - 2];
        next[1] = Packet::zero(d);
      } else {
        for (int i = 1; i < n; ++i) next[i] = carried[i - 1];
      }
      next[0] = Packet::zero(d);

      auto it = pending.find({a, w.t0 + s + 1});
      if (it != pending.end()) {
        for (const Injection& inj : it->second) {
          const bool free_slot = label && *label == a && inj.slot == 2;
          Packet& slot = next[inj.slot - 1];
          if (!free_slot) {
            if (!slot.is_zero()) {
              throw InjectionConflictError(
                  "injection targets a nonzero slot of node " +
                  std::to_string(a) + " at t=" + std::to_string(w.t0 + s + 1));
            }
            throw InjectionConflictError(
                "injection slot of node " + std::to_string(a) + " at t=" +
                std::to_string(w.t0 + s + 1) +
                " is determined by the queue dynamics");
          }
          slot = inj.packet;
        }
      }
    }
    force_receive_buffer(s + 1);
  }

  // Assemble the total section.
  PayloadSection out(X.num_cells());
  for (CellId c = 0; c < X.num_cells(); ++c) {
    if (tc.is_temporal_edge(c)) {
      const NodeId a = tc.node_of(c);
      const TimeStep t = tc.vertex_label(X.cell(c).vertices()[0]).second;
      const int s = t - w.t0;
      const CellId earlier = X.id_of(Cell({tc.vertex_id(a, t)}));
      PayloadValue vertex_value{{prev[a][s], cur[a][s]}, buf[a][s]};
      out.set(c, ps.restrict_value(earlier, c, vertex_value));
    } else if (X.cell_dim(c) == 0) {
      const auto [a, t] = tc.vertex_label(X.cell(c).vertices()[0]);
      const int s = t - w.t0;
      out.set(c, PayloadValue{{prev[a][s], cur[a][s]}, buf[a][s]});
    } else {
      const TimeStep t = *tc.slice_of(c);
      const int s = t - w.t0;
      const ActValue m = slice_value(ps, es, s, tc.global_cell_to_slice(c));
      Packet data = Packet::zero(d);
      if (m) data = buf[*m][s][n - 1];
      out.set(c, PayloadValue{{m}, {std::move(data)}});
    }
  }

  if (auto why = payload_section_violation(ps, out)) {
    throw InconsistentScheduleError("no consistent section: " + *why);
  }
  return out;
}

namespace {

// Row selectors over block coordinates, expanded by the packet dimension.
RatMatrix block_selector(const std::vector<int>& src_blocks, int in_blocks,
                         int d) {
  RatMatrix m(static_cast<int>(src_blocks.size()) * d, in_blocks * d);
  for (int j = 0; j < static_cast<int>(src_blocks.size()); ++j) {
    if (src_blocks[j] < 0) continue;  // zero row block
    for (int i = 0; i < d; ++i) {
      m.at(j * d + i, src_blocks[j] * d + i) = 1;
    }
  }
  return m;
}

}  // namespace

VectorSheaf fixed_activation_subsheaf(const PayloadSheaf& ps,
                                      const Schedule& schedule) {
  if (!ps.protocol().linear()) {
    throw NonlinearProtocolError(
        "protocol '" + ps.protocol().name() +
        "' is data dependent; the schedule-fixed subsheaf needs a linear one");
  }
  const TimeComplex& tc = ps.time_complex();
  const SimplicialComplex& X = tc.complex();
  const TimeWindow w = tc.window();
  const int n = ps.buffer_len();
  const int d = ps.packet_dim();
  const bool forward = ps.protocol().builtin() == Protocol::forward_everything;

  ExpandedSchedule es = expand_schedule(ps, schedule);

  auto vertex_state = [&](NodeId a, int s) {
    const SetSheaf& act = ps.slice_activation(w.t0 + s);
    return es.sections[s].value(act.base().id_of(Cell({a})));
  };

  // The previous-state trajectory is pinned from the schedule; it must be
  // expressible in the later stalk.
  for (NodeId a : tc.nodes()) {
    for (int s = 0; s + 1 < w.length(); ++s) {
      const ActValue m = vertex_state(a, s);
      const CellId next_vertex = X.id_of(Cell({tc.vertex_id(a, w.t0 + s + 1)}));
      if (!ps.state_in_set(next_vertex, m)) {
        throw InconsistentScheduleError(
            "scheduled state of node " + std::to_string(a) + " at t=" +
            std::to_string(w.t0 + s) + " does not persist at the next step");
      }
    }
  }

  std::vector<int> dims(X.num_cells());
  for (CellId c = 0; c < X.num_cells(); ++c) {
    dims[c] = ps.data_len(c) * d;
  }

  std::map<std::pair<CellId, CellId>, RatMatrix> restrictions;
  for (CellId dd = 0; dd < X.num_cells(); ++dd) {
    for (CellId c : X.faces(dd)) {
      RatMatrix m(0, 0);
      if (tc.is_temporal_edge(dd)) {
        const NodeId a = tc.node_of(dd);
        const TimeStep edge_t = tc.vertex_label(X.cell(dd).vertices()[0]).second;
        const TimeStep c_t = *tc.slice_of(c);
        const int s = edge_t - w.t0;
        const ActValue state = vertex_state(a, s);
        std::vector<int> blocks;
        if (c_t == edge_t) {
          if (state && *state == a) {
            for (int j = 0; j + 1 < n - 1; ++j) blocks.push_back(j + 1);
            blocks.push_back(-1);
          } else if (state) {
            if (forward) {
              blocks.push_back(0);
              for (int j = 1; j < n - 1; ++j) blocks.push_back(j + 1);
            } else {
              for (int j = 0; j < n - 1; ++j) blocks.push_back(j + 1);
            }
          } else {
            for (int j = 0; j < n - 1; ++j) blocks.push_back(j + 1);
          }
        } else {
          if (state && *state == a) {
            for (int j = 0; j + 1 < n - 1; ++j) blocks.push_back(j + 2);
            blocks.push_back(-1);
          } else {
            for (int j = 0; j < n - 1; ++j) blocks.push_back(j + 1);
          }
        }
        m = block_selector(blocks, n, d);
      } else if (X.cell_dim(c) == 0) {
        const NodeId a = tc.node_of(c);
        const TimeStep t = *tc.slice_of(dd);
        const int s = t - w.t0;
        const ActValue label = slice_value(ps, es, s, tc.global_cell_to_slice(dd));
        std::vector<int> blocks(1, -1);
        if (label && *label == a) {
          blocks[0] = n - 1;
        } else if (label) {
          blocks[0] = 0;
        }
        m = block_selector(blocks, n, d);
      } else {
        const TimeStep t = *tc.slice_of(dd);
        const int s = t - w.t0;
        const ActValue label_d =
            slice_value(ps, es, s, tc.global_cell_to_slice(dd));
        const ActValue label_c =
            slice_value(ps, es, s, tc.global_cell_to_slice(c));
        const bool keep = label_d.has_value() || !label_c.has_value();
        std::vector<int> blocks(1, keep ? 0 : -1);
        m = block_selector(blocks, 1, d);
      }
      restrictions.emplace(std::make_pair(c, dd), std::move(m));
    }
  }
  return VectorSheaf(tc.complex_ptr(), std::move(dims), std::move(restrictions));
}

int throughput_bound(const VectorSheaf& P) {
  return static_cast<int>(global_section_space(P).size());
}

}  // namespace sheafnet
