#include "q2r/acceptance.hpp"

#include <array>
#include <bit>
#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "q2r/circuit.hpp"
#include "q2r/compiler.hpp"
#include "q2r/dynamics.hpp"
#include "q2r/gadgets.hpp"
#include "q2r/pred.hpp"
#include "q2r/ps.hpp"
#include "q2r/topology.hpp"

namespace q2r {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail.str("");
    if (!pass) detail << "; ";
    pass = false;
    detail << why;
  }
};

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void budget(Outcome& out, Clock::time_point start, double limit) {
  double s = since(start);
  if (s >= limit) out.fail("took " + std::to_string(s) + " s, budget " + std::to_string(limit) + " s");
}

Configuration repeat(std::string_view unit, std::size_t n) {
  std::string s;
  while (s.size() < n) s += unit;
  return Configuration::from_string(s.substr(0, n));
}

Outcome ring_periods(const AcceptanceOptions&) {
  Outcome out;
  auto start = Clock::now();
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    auto ring = build_ring(p);
    auto report = find_period(ring.network, UpdateSchedule::two_block(ring.network), ring.canonical);
    if (report.cap_hit || report.period != p) {
      out.fail("p=" + std::to_string(p) + " gave period " + std::to_string(report.period));
    }
  }
  budget(out, start, 1.0);
  if (out.pass) out.detail << "periods 2,3,5,7,11,13 exact";
  return out;
}

Outcome two_cycle(const AcceptanceOptions&) {
  Outcome out;
  auto ring = build_ring(2);
  auto sched = UpdateSchedule::two_block(ring.network);
  auto a = Configuration::from_string("1000");
  auto b = step(ring.network, sched, a);
  auto back = step(ring.network, sched, b);
  if (b.to_string() != "1101") out.fail("1000 -> " + b.to_string());
  if (back != a) out.fail("1101 -> " + back.to_string());
  if (out.pass) out.detail << "1000 -> 1101 -> 1000";
  return out;
}

Outcome fixed_points(const AcceptanceOptions& opt) {
  Outcome out;
  auto start = Clock::now();
  for (std::uint64_t p : {2, 3, 5, 7}) {
    auto ring = build_ring(p);
    const std::size_t n = ring.network.size();
    auto found = brute_force_fixed_points(ring.network, UpdateSchedule::two_block(ring.network), opt.jobs);
    std::set<std::string> got, want{repeat("0", n).to_string(), repeat("1", n).to_string(),
                                     repeat("01", n).to_string(), repeat("10", n).to_string()};
    for (const auto& x : found) got.insert(x.to_string());
    if (got != want || found.size() != 4) {
      out.fail("p=" + std::to_string(p) + " has " + std::to_string(found.size()) + " fixed points");
    }
  }
  budget(out, start, 5.0);
  if (out.pass) out.detail << "exactly {0..0, 1..1, 0101.., 1010..} for p=2,3,5,7";
  return out;
}

Outcome composite_periods(const AcceptanceOptions&) {
  Outcome out;
  auto start = Clock::now();
  const std::vector<std::vector<std::uint64_t>> sets{{3, 5}, {3, 5, 7}, {3, 5, 7, 11}};
  for (const auto& primes : sets) {
    std::uint64_t expected = 1;
    for (auto p : primes) expected *= p;
    auto comp = build_composite(primes);
    const auto& net = comp.network;
    std::string label = "{";
    for (std::size_t i = 0; i < primes.size(); ++i) label += (i ? "," : "") + std::to_string(primes[i]);
    label += "}";

    auto report = validate_network(net);
    if (!report.ok() || !is_connected(net)) {
      out.fail(label + " fails validation: " + (report.ok() ? "disconnected" : report.summary()));
      continue;
    }
    auto sched = UpdateSchedule::two_block(net);
    auto period = find_period(net, sched, comp.canonical);
    if (period.cap_hit || period.period != expected) {
      out.fail(label + " period " + std::to_string(period.period) + ", expected " + std::to_string(expected));
    }
    auto ports = frozen_ports(comp);
    Stepper stepper(net, sched);
    Configuration x = comp.canonical;
    for (std::uint64_t t = 0; t <= expected; ++t) {
      if (t > 0) stepper.step(x);
      for (const auto& ps : ports) {
        if (x.spin(ps.node) != ps.spin) {
          out.fail(label + " port " + std::to_string(ps.node + 1) + " moved at t=" + std::to_string(t));
          t = expected;
          break;
        }
      }
    }
  }
  budget(out, start, 10.0);
  if (out.pass) out.detail << "periods 15, 105, 1155; valid, connected, ports frozen";
  return out;
}

Outcome energy_conservation(const AcceptanceOptions& opt) {
  Outcome out;
  std::mt19937_64 rng(opt.seed + 5);
  std::vector<Q2RNetwork> nets;
  for (int i = 0; i < 50; ++i) {
    std::size_t n = 4 + 2 * (rng() % 31);
    nets.push_back(random_bipartite_even(n, rng));
  }
  nets.push_back(build_torus(8, 8).network);
  std::size_t index = 0;
  for (const auto& net : nets) {
    ++index;
    Trajectory traj(net, UpdateSchedule::two_block(net), random_configuration(net.size(), rng), true);
    try {
      for (int t = 0; t < 10000; ++t) traj.advance();
    } catch (const EnergyAuditError& e) {
      out.fail("network " + std::to_string(index) + ": " + e.what());
    }
  }
  if (out.pass) out.detail << "51 networks x 10^4 steps, every half-step exact";
  return out;
}

Outcome reversibility(const AcceptanceOptions& opt) {
  Outcome out;
  std::mt19937_64 rng(opt.seed + 6);
  for (int i = 0; i < 10; ++i) {
    std::size_t n = (i == 0) ? 14 : 4 + 2 * (rng() % 6);
    auto net = random_bipartite_even(n, rng);
    auto sched = UpdateSchedule::two_block(net);
    const std::string label = "network " + std::to_string(i + 1) + " (n=" + std::to_string(n) + ")";
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t k = 0; k < total; ++k) {
      auto x = Configuration::from_index(n, k);
      if (inverse_step(net, sched, step(net, sched, x)) != x ||
          step(net, sched, inverse_step(net, sched, x)) != x) {
        out.fail(label + ": inverse mismatch at " + x.to_string());
        break;
      }
    }
    auto table = step_table(net, sched, opt.jobs);
    std::vector<char> hit(total, 0);
    bool injective = true;
    for (auto image : table) {
      if (hit[image]) injective = false;
      hit[image] = 1;
    }
    if (!injective) out.fail(label + ": step is not injective");
    // Walk every orbit once; a walk that ends anywhere but its start is a
    // transient.
    std::vector<char> seen(total, 0);
    for (std::uint64_t s = 0; s < total && out.pass; ++s) {
      if (seen[s]) continue;
      std::uint64_t k = s;
      do {
        seen[k] = 1;
        k = table[k];
      } while (!seen[k]);
      if (k != s) out.fail(label + ": orbit of " + std::to_string(s) + " has a transient");
    }
  }
  if (out.pass) out.detail << "10 networks, n<=14, inverse and injectivity exhaustive, no transients";
  return out;
}

Outcome gadget_certification(const AcceptanceOptions&) {
  Outcome out;
  std::size_t cases = 0;
  for (const auto& spec : all_gadgets()) {
    auto report = certify_gadget(spec);
    cases += report.cases;
    if (!report.ok()) out.fail(report.summary());
  }
  auto tampered = and_gadget();
  tampered.latency += 1;
  if (certify_gadget(tampered).ok()) out.fail("tampered AND latency was accepted");
  auto wire = wire_gadget(2);
  if (wire.fragment.size() != 7) out.fail("wire of two cells has " + std::to_string(wire.fragment.size()) + " nodes");
  auto orbit = wire_orbit(2);
  if (orbit.block_updates != 8) {
    out.fail("wire orbit has " + std::to_string(orbit.block_updates) + " block updates, expected 8");
  }
  if (out.pass) {
    out.detail << "WIRE AND XOR NOT OR CROSSOVER certified over " << cases
               << " input tuples; 7-node wire orbit 8 half-steps (" << orbit.steps << " steps)";
  }
  return out;
}

Outcome compiler_equivalence(const AcceptanceOptions& opt) {
  Outcome out;
  auto start = Clock::now();
  std::mt19937_64 rng(opt.seed + 8);
  std::size_t readouts = 0, preds = 0;
  for (int i = 0; i < 500 && out.pass; ++i) {
    const std::size_t depth = std::array<std::size_t, 3>{1, 3, 5}[rng() % 3];
    const std::size_t width = 2 + rng() % (30 / depth - 1);
    auto c = random_as2m_circuit(width, depth, rng);
    auto cc = compile_circuit(c);
    for (int k = 0; k < 2; ++k) {
      auto a = random_assignment(c, rng);
      auto want = evaluate_circuit(c, a);
      cc.initial = apply_assignment(cc, a);
      auto got = simulate_readouts(cc, cc.initial);
      for (const auto& [g, v] : got) {
        ++readouts;
        if (v != want.at(g)) {
          out.fail("circuit " + std::to_string(i) + " gate " + std::to_string(g) + " reads " +
                   std::to_string(v) + ", evaluator says " + std::to_string(want.at(g)));
          break;
        }
      }
      for (GateId o : c.outputs()) {
        ++preds;
        if (answer_pred(to_pred_instance(cc, o)) != want.at(o)) {
          out.fail("circuit " + std::to_string(i) + " PRED disagrees on output " + std::to_string(o));
          break;
        }
      }
    }
  }
  budget(out, start, 60.0);
  if (out.pass) out.detail << "500 circuits x 2 assignments: " << readouts << " readouts, " << preds << " PRED answers";
  return out;
}

Outcome parallel_simulator(const AcceptanceOptions& opt) {
  Outcome out;
  auto start = Clock::now();
  std::mt19937_64 rng(opt.seed + 9);
  std::vector<Q2RNetwork> nets;
  for (int i = 0; i < 100; ++i) nets.push_back(random_bipartite_even(4 + 2 * (rng() % 19), rng));
  nets.push_back(build_ring(3).network);
  nets.push_back(build_ring(5).network);
  ValidationOptions waive;
  waive.require_bipartite = false;
  std::size_t index = 0;
  for (const auto& net : nets) {
    ++index;
    auto ps = build_ps(net);
    const std::size_t expected = 2 * net.size() + 8 * (net.max_degree() / 2);
    if (ps.network.size() != expected) out.fail("network " + std::to_string(index) + " PS size mismatch");
    if (auto v = validate_network(ps.network, waive); !v.ok()) {
      out.fail("network " + std::to_string(index) + " PS invalid: " + v.summary());
    }
    auto x = random_configuration(net.size(), rng);
    auto report = verify_ps(net, ps, x, ps_initial(ps, x), 100);
    if (!report.ok()) out.fail("network " + std::to_string(index) + ": " + report.summary());
  }
  budget(out, start, 60.0);
  if (out.pass) out.detail << "102 networks, T=100, projection/mirror/S/F/alternation hold, size 2n+8a";
  return out;
}

Outcome fast_forward(const AcceptanceOptions&) {
  Outcome out;
  for (std::uint64_t p : {7, 13}) {
    auto ring = build_ring(p);
    auto sched = UpdateSchedule::two_block(ring.network);
    auto period = find_period(ring.network, sched, ring.canonical).period;
    for (std::uint64_t t : {std::uint64_t{1}, std::uint64_t{13}, std::uint64_t{10000}, std::uint64_t{1} << 20}) {
      FastForwardStats stats;
      auto fast = linear_fastforward(ring.network, sched, ring.canonical, t, &stats);
      // Long horizons are compared through the orbit period.
      std::uint64_t steps = t <= 10000 ? t : t % period;
      Configuration slow = ring.canonical;
      Stepper stepper(ring.network, sched);
      for (std::uint64_t k = 0; k < steps; ++k) stepper.step(slow);
      const std::string label = "p=" + std::to_string(p) + " t=" + std::to_string(t);
      if (fast != slow) out.fail(label + ": fast-forward differs from simulation");
      const auto expected_mults = static_cast<std::uint64_t>(std::bit_width(t) - 1);
      if (stats.multiplications != expected_mults) {
        out.fail(label + ": " + std::to_string(stats.multiplications) + " squarings, expected " +
                 std::to_string(expected_mults));
      }
    }
  }
  if (out.pass) out.detail << "p=7,13 at t=1,13,10^4,2^20 exact; squarings = floor(log2 t)";
  return out;
}

struct Entry {
  const char* name;
  std::function<Outcome(const AcceptanceOptions&)> run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {"prime-ring periods", ring_periods},
      {"p=2 two-cycle", two_cycle},
      {"fixed-point census", fixed_points},
      {"composite periods", composite_periods},
      {"energy conservation", energy_conservation},
      {"reversibility", reversibility},
      {"gadget certification", gadget_certification},
      {"compiler oracle equivalence", compiler_equivalence},
      {"parallel simulator", parallel_simulator},
      {"linear fast-forward", fast_forward},
  };
  return entries;
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("no criterion " + std::to_string(id));
  const Entry& e = registry()[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = e.name;
  auto start = Clock::now();
  try {
    Outcome o = e.run(options);
    r.pass = o.pass;
    r.detail = o.detail.str();
  } catch (const std::exception& ex) {
    r.pass = false;
    r.detail = std::string("exception: ") + ex.what();
  }
  r.seconds = since(start);
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriterionCount; ++id) results.push_back(run_criterion(id, options));
  return results;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << ' ' << (r.id < 10 ? " " : "") << r.id << ' ' << r.name << " ("
     << r.detail << ") [" << std::fixed;
  os.precision(2);
  os << r.seconds << " s]";
  return os.str();
}

}  // namespace q2r
