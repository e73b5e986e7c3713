#include "q2r/ps.hpp"

#include <ostream>

namespace q2r {

PSNetwork build_ps(const Q2RNetwork& net) {
  if (!net.has_bipartition()) throw std::invalid_argument("parallel simulator needs an (A, B) bipartition");
  if (auto report = validate_network(net); !report.ok()) {
    throw std::invalid_argument("invalid network: " + report.summary());
  }
  const std::size_t n = net.size();
  PSNetwork ps;
  ps.original_size = n;
  ps.alpha = net.max_degree() / 2;

  std::vector<Edge> edges;
  for (auto [u, v] : net.edges()) {
    edges.emplace_back(ps.i_node(u), ps.i_node(v));
    edges.emplace_back(ps.ge_node(u), ps.ge_node(v));
  }
  for (std::size_t i = 1; i <= ps.alpha; ++i) {
    for (std::size_t j = 1; j <= 4; ++j) {
      edges.emplace_back(ps.s_node(i, j), ps.s_node(i, j % 4 + 1));
      edges.emplace_back(ps.f_node(i, j), ps.f_node(i, j % 4 + 1));
    }
  }
  for (NodeId w = 0; w < n; ++w) {
    for (std::size_t i = 1; i <= net.degree(w) / 2; ++i) {
      for (NodeId node : {ps.i_node(w), ps.ge_node(w)}) {
        if (net.side(w) == Side::A) {
          edges.emplace_back(node, ps.s_node(i, 3));
          edges.emplace_back(node, ps.s_node(i, 4));
          edges.emplace_back(node, ps.f_node(i, 1));
          edges.emplace_back(node, ps.f_node(i, 4));
        } else {
          edges.emplace_back(node, ps.s_node(i, 1));
          edges.emplace_back(node, ps.s_node(i, 2));
          edges.emplace_back(node, ps.f_node(i, 2));
          edges.emplace_back(node, ps.f_node(i, 3));
        }
      }
    }
  }
  const std::size_t total = 2 * n + 8 * ps.alpha;
  ps.network = Q2RNetwork::from_edges(total, edges);

  ps.roles.resize(total);
  for (NodeId v = 0; v < n; ++v) {
    ps.roles[ps.i_node(v)] = {PsRole::I, v, 0};
    ps.roles[ps.ge_node(v)] = {PsRole::GE, v, 0};
  }
  for (std::uint32_t i = 1; i <= ps.alpha; ++i) {
    for (std::uint32_t j = 1; j <= 4; ++j) {
      ps.roles[ps.s_node(i, j)] = {PsRole::S, i, j};
      ps.roles[ps.f_node(i, j)] = {PsRole::F, i, j};
    }
  }
  return ps;
}

Configuration ps_initial(const PSNetwork& ps, const Configuration& x) {
  if (x.size() != ps.original_size) throw std::invalid_argument("configuration length mismatch");
  Configuration y(ps.network.size(), -1);
  for (NodeId v = 0; v < ps.original_size; ++v) {
    y.set(ps.i_node(v), x.spin(v));
    y.set(ps.ge_node(v), -x.spin(v));
  }
  for (std::size_t i = 1; i <= ps.alpha; ++i) {
    y.set(ps.s_node(i, 3), 1);
    y.set(ps.s_node(i, 4), 1);
  }
  return y;
}

Configuration ps_project(const PSNetwork& ps, const Configuration& state) {
  Configuration x(ps.original_size);
  for (NodeId v = 0; v < ps.original_size; ++v) x.set(v, state.spin(ps.i_node(v)));
  return x;
}

PsPhase half_step_phase(const PSNetwork& ps, const Configuration& state) {
  std::optional<PsPhase> phase;
  for (std::size_t i = 1; i <= ps.alpha; ++i) {
    int s1 = state.spin(ps.s_node(i, 1)), s2 = state.spin(ps.s_node(i, 2));
    int s3 = state.spin(ps.s_node(i, 3)), s4 = state.spin(ps.s_node(i, 4));
    PsPhase here;
    if (s1 == -1 && s2 == -1 && s3 == 1 && s4 == 1) {
      here = PsPhase::AActive;
    } else if (s1 == 1 && s2 == 1 && s3 == -1 && s4 == -1) {
      here = PsPhase::BActive;
    } else {
      throw std::invalid_argument("switching copy " + std::to_string(i) + " is not in a canonical state");
    }
    if (phase && *phase != here) throw std::invalid_argument("switching copies disagree on the phase");
    phase = here;
  }
  if (!phase) throw std::invalid_argument("parallel simulator has no switching copies");
  return *phase;
}

const char* to_string(PsCheck check) {
  switch (check) {
    case PsCheck::Projection: return "projection";
    case PsCheck::Mirror: return "mirror";
    case PsCheck::SCycle: return "switching 2-cycle";
    case PsCheck::FFixed: return "fixed component";
    case PsCheck::Alternation: return "A/B alternation";
  }
  return "?";
}

std::string PsReport::summary() const {
  if (ok()) return "pass (" + std::to_string(ps_steps) + " parallel steps)";
  return "fail: " + failure->message;
}

namespace {

std::string describe(const PSNetwork& ps, NodeId node) {
  const PsTag& t = ps.roles[node];
  std::string id = "node " + std::to_string(node + 1);
  switch (t.role) {
    case PsRole::I: return id + " (I " + std::to_string(t.a + 1) + ")";
    case PsRole::GE: return id + " (GE " + std::to_string(t.a + 1) + ")";
    case PsRole::S: return id + " (S " + std::to_string(t.a) + " " + std::to_string(t.b) + ")";
    case PsRole::F: return id + " (F " + std::to_string(t.a) + " " + std::to_string(t.b) + ")";
  }
  return id;
}

}  // namespace

PsReport verify_ps(const Q2RNetwork& net, const Configuration& x, std::uint64_t T) {
  PSNetwork ps = build_ps(net);
  return verify_ps(net, ps, x, ps_initial(ps, x), T);
}

PsReport verify_ps(const Q2RNetwork& net, const PSNetwork& ps, const Configuration& x,
                   const Configuration& ps_start, std::uint64_t T) {
  if (T < 1) throw std::invalid_argument("T must be at least 1");
  if (x.size() != net.size() || ps_start.size() != ps.network.size()) {
    throw std::invalid_argument("configuration length mismatch");
  }
  const std::size_t n = ps.original_size;
  auto sched = UpdateSchedule::two_block(net);
  Stepper original(net, sched);
  auto par = UpdateSchedule::parallel(ps.network.size());
  Stepper simulator(ps.network, par);

  PsReport report;
  auto fail = [&](PsCheck check, std::uint64_t k, NodeId node) {
    report.failure = PsFailure{check, k, node,
                               std::string(to_string(check)) + " violated at parallel step " +
                                   std::to_string(k) + ", " + describe(ps, node)};
  };

  const NodeId s_begin = static_cast<NodeId>(2 * n);
  const NodeId f_begin = static_cast<NodeId>(2 * n + 4 * ps.alpha);
  const NodeId end = static_cast<NodeId>(ps.network.size());
  Configuration y = x;
  Configuration z = ps_start;
  Configuration first_step;
  for (std::uint64_t k = 1; k <= 2 * T; ++k) {
    Configuration prev = z;
    simulator.step(z);
    report.ps_steps = k;

    // Steps leaving an even time update A and its mirror, the others B.
    const Side active = (k % 2 == 1) ? Side::A : Side::B;
    for (NodeId v = 0; v < n; ++v) {
      for (NodeId node : {ps.i_node(v), ps.ge_node(v)}) {
        if (z.up(node) != prev.up(node) && net.side(v) != active) {
          fail(PsCheck::Alternation, k, node);
          return report;
        }
      }
    }
    for (NodeId v = 0; v < n; ++v) {
      if (z.up(ps.i_node(v)) == z.up(ps.ge_node(v))) {
        fail(PsCheck::Mirror, k, ps.ge_node(v));
        return report;
      }
    }
    for (NodeId node = f_begin; node < end; ++node) {
      if (z.up(node) != ps_start.up(node)) {
        fail(PsCheck::FFixed, k, node);
        return report;
      }
    }
    if (k == 1) first_step = z;
    const Configuration& expect = (k % 2 == 0) ? ps_start : first_step;
    for (NodeId node = s_begin; node < f_begin; ++node) {
      bool bad = z.up(node) != expect.up(node);
      // The two states of the cycle must differ: every switching node flips.
      if (k == 1) bad = z.up(node) == ps_start.up(node);
      if (bad) {
        fail(PsCheck::SCycle, k, node);
        return report;
      }
    }
    if (k % 2 == 0) {
      original.step(y);
      for (NodeId v = 0; v < n; ++v) {
        if (z.up(ps.i_node(v)) != y.up(v)) {
          fail(PsCheck::Projection, k, ps.i_node(v));
          return report;
        }
      }
    }
  }
  return report;
}

void write_ps(std::ostream& os, const PSNetwork& ps) {
  write_network(os, ps.network);
  for (NodeId node = 0; node < ps.roles.size(); ++node) {
    const PsTag& t = ps.roles[node];
    os << "role " << node + 1 << ' ';
    switch (t.role) {
      case PsRole::I: os << "I " << t.a + 1; break;
      case PsRole::GE: os << "GE " << t.a + 1; break;
      case PsRole::S: os << "S " << t.a << ' ' << t.b; break;
      case PsRole::F: os << "F " << t.a << ' ' << t.b; break;
    }
    os << '\n';
  }
}

PSNetwork ps_from_document(const NetworkDocument& doc) {
  const std::size_t total = doc.network.size();
  if (doc.roles.size() != total) throw ParseError(0, "expected one role line per node");
  std::vector<std::optional<PsTag>> tags(total);
  std::size_t count[4] = {0, 0, 0, 0};
  for (const auto& line : doc.roles) {
    const auto& f = line.fields;
    auto num = [&](std::size_t k) -> std::uint32_t {
      try {
        return static_cast<std::uint32_t>(std::stoul(f.at(k)));
      } catch (const std::exception&) {
        throw ParseError(line.line, "malformed role line");
      }
    };
    if (f.size() < 3) throw ParseError(line.line, "malformed role line");
    std::uint32_t id = num(0);
    if (id < 1 || id > total || tags[id - 1]) throw ParseError(line.line, "bad or repeated role id");
    PsTag t;
    if (f[1] == "I" || f[1] == "GE") {
      if (f.size() != 3 || num(2) < 1) throw ParseError(line.line, "malformed role line");
      t = {f[1] == "I" ? PsRole::I : PsRole::GE, num(2) - 1, 0};
    } else if (f[1] == "S" || f[1] == "F") {
      if (f.size() != 4 || num(2) < 1 || num(3) < 1 || num(3) > 4) {
        throw ParseError(line.line, "malformed role line");
      }
      t = {f[1] == "S" ? PsRole::S : PsRole::F, num(2), num(3)};
    } else {
      throw ParseError(line.line, "unknown role '" + f[1] + "'");
    }
    ++count[static_cast<int>(t.role)];
    tags[id - 1] = t;
  }
  PSNetwork ps;
  ps.network = doc.network.without_bipartition();
  ps.original_size = count[0];
  ps.alpha = count[2] / 4;
  if (count[1] != count[0] || count[2] != count[3] || count[2] % 4 != 0 ||
      2 * ps.original_size + 8 * ps.alpha != total) {
    throw ParseError(0, "role lines do not describe a parallel simulator");
  }
  for (NodeId node = 0; node < total; ++node) ps.roles.push_back(*tags[node]);
  // The layout is positional; make sure every tag sits where it belongs.
  for (NodeId node = 0; node < total; ++node) {
    const PsTag& t = ps.roles[node];
    NodeId expected = 0;
    switch (t.role) {
      case PsRole::I: expected = ps.i_node(t.a); break;
      case PsRole::GE: expected = ps.ge_node(t.a); break;
      case PsRole::S: expected = ps.s_node(t.a, t.b); break;
      case PsRole::F: expected = ps.f_node(t.a, t.b); break;
    }
    if (expected != node) throw ParseError(0, "role of node " + std::to_string(node + 1) + " is out of place");
  }
  return ps;
}

}  // namespace q2r
