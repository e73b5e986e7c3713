// q2r: command-line front end. Exit codes: 0 ok/yes, 1 no/fail, 2 usage,
// 3 invalid input.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "q2r/acceptance.hpp"
#include "q2r/circuit.hpp"
#include "q2r/compiler.hpp"
#include "q2r/dynamics.hpp"
#include "q2r/gadgets.hpp"
#include "q2r/io.hpp"
#include "q2r/pred.hpp"
#include "q2r/ps.hpp"
#include "q2r/topology.hpp"

using json = nlohmann::json;
using namespace q2r;

namespace {

constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvalid = 3;

struct CliError : std::runtime_error {
  int code;
  CliError(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

std::string slurp(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw CliError(kExitUsage, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

NetworkDocument load_document(const std::string& path) {
  try {
    return parse_document(slurp(path));
  } catch (const ParseError& e) {
    throw CliError(kExitInvalid, (path.empty() || path == "-" ? std::string("<stdin>") : path) + ": " + e.what());
  }
}

void require_valid(const Q2RNetwork& net) {
  ValidationOptions opt;
  opt.require_bipartite = net.has_bipartition();
  auto report = validate_network(net, opt);
  if (!report.ok()) throw CliError(kExitInvalid, "invalid network:\n" + report.summary());
}

Configuration require_config(const NetworkDocument& doc, const std::string& config_path) {
  if (!config_path.empty()) {
    Configuration x;
    try {
      x = parse_configuration(slurp(config_path));
    } catch (const ParseError& e) {
      throw CliError(kExitInvalid, config_path + ": " + e.what());
    }
    if (x.size() != doc.network.size()) throw CliError(kExitInvalid, "configuration length mismatch");
    return x;
  }
  if (!doc.config) throw CliError(kExitUsage, "no configuration: add a 0/1 line or pass --config");
  return *doc.config;
}

UpdateSchedule pick_schedule(const Q2RNetwork& net, const std::string& name) {
  if (name == "auto") return default_schedule(net);
  if (name == "parallel") return UpdateSchedule::parallel(net.size());
  if (!net.has_bipartition()) throw CliError(kExitInvalid, "two-block schedule needs block A/B lines");
  return UpdateSchedule::two_block(net);
}

void emit_json(const json& j) { std::cout << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string file, config, schedule = "auto";
  std::uint64_t steps = 1;
  bool trace = false, audit = false, json = false;
};

int run_simulate(const SimulateArgs& a) {
  auto doc = load_document(a.file);
  require_valid(doc.network);
  auto sched = pick_schedule(doc.network, a.schedule);
  Trajectory traj(doc.network, sched, require_config(doc, a.config), a.audit);
  json steps = json::array();
  auto record = [&] {
    if (!a.trace && !a.audit) return;
    if (a.json) {
      json s{{"t", traj.time()}};
      if (a.trace) s["state"] = traj.state().to_string();
      if (a.audit) s["energy"] = traj.energy_value().value;
      steps.push_back(s);
      return;
    }
    std::cout << "t=" << traj.time();
    if (a.trace) std::cout << ' ' << traj.state().to_string();
    if (a.audit) std::cout << " E=" << traj.energy_value().value;
    std::cout << '\n';
  };
  record();
  try {
    for (std::uint64_t t = 0; t < a.steps; ++t) {
      traj.advance();
      record();
    }
  } catch (const EnergyAuditError& e) {
    std::cerr << "energy audit failed: " << e.what() << '\n';
    return kExitNo;
  }
  if (a.json) {
    json j{{"steps", a.steps}, {"final", traj.state().to_string()}};
    if (a.trace || a.audit) j["trace"] = steps;
    emit_json(j);
  } else {
    std::cout << traj.state().to_string() << '\n';
  }
  return 0;
}

struct PeriodArgs {
  std::string file, config, schedule = "auto", method = "auto";
  std::uint64_t cap = kDefaultPeriodCap;
  bool json = false;
};

int run_period(const PeriodArgs& a) {
  auto doc = load_document(a.file);
  require_valid(doc.network);
  auto sched = pick_schedule(doc.network, a.schedule);
  PeriodMethod m = a.method == "brent"          ? PeriodMethod::Brent
                   : a.method == "first-return" ? PeriodMethod::FirstReturn
                                                : PeriodMethod::Auto;
  auto r = find_period(doc.network, sched, require_config(doc, a.config), a.cap, m);
  if (a.json) {
    emit_json({{"period", r.period}, {"preperiod", r.preperiod}, {"cap_hit", r.cap_hit}});
  } else {
    std::cout << "period=" << r.period << " preperiod=" << r.preperiod
              << " cap_hit=" << (r.cap_hit ? "true" : "false") << '\n';
  }
  return 0;
}

void write_bundle(const Q2RNetwork& net, std::span<const PortSpin> ports, const Configuration& x) {
  write_network(std::cout, net);
  if (!ports.empty()) write_ports(std::cout, ports);
  write_configuration(std::cout, x);
}

int run_ring(std::uint64_t p, bool swapped) {
  RingNetwork ring;
  try {
    ring = build_ring(p, swapped);
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitUsage, e.what());
  }
  auto ports = frozen_ports(ring);
  write_bundle(ring.network, ports, ring.canonical);
  return 0;
}

int run_composite(const std::vector<std::uint64_t>& primes) {
  CompositeNetwork comp;
  try {
    comp = build_composite(primes);
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitUsage, e.what());
  }
  auto ports = frozen_ports(comp);
  write_bundle(comp.network, ports, comp.canonical);
  return 0;
}

int run_torus(std::size_t w, std::size_t h, bool random, std::uint64_t seed) {
  TorusNetwork torus;
  try {
    torus = build_torus(w, h);
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitUsage, e.what());
  }
  std::mt19937_64 rng(seed);
  Configuration x = random ? random_configuration(torus.network.size(), rng) : Configuration(torus.network.size());
  write_bundle(torus.network, {}, x);
  return 0;
}

int run_validate(const std::string& file, bool any_graph, bool json_out) {
  auto doc = load_document(file);
  ValidationOptions opt;
  opt.require_bipartite = !any_graph;
  auto report = validate_network(doc.network, opt);
  bool connected = is_connected(doc.network);
  if (json_out) {
    json v = json::array();
    for (const auto& x : report.violations) v.push_back(x.describe());
    emit_json({{"ok", report.ok()}, {"nodes", doc.network.size()}, {"edges", doc.network.edge_count()},
               {"connected", connected}, {"violations", v}});
  } else if (report.ok()) {
    std::cout << "ok nodes=" << doc.network.size() << " edges=" << doc.network.edge_count()
              << " connected=" << (connected ? "true" : "false") << '\n';
  } else {
    std::cout << report.summary() << '\n';
  }
  return report.ok() ? 0 : kExitInvalid;
}

Circuit load_circuit(const std::string& path) {
  try {
    return parse_circuit(slurp(path));
  } catch (const ParseError& e) {
    throw CliError(kExitInvalid, path + ": " + e.what());
  }
}

/// A path to an assignment file, or the assignment text itself.
Assignment load_assignment(const std::string& spec) {
  std::string text = spec.rfind("assign", 0) == 0 ? spec : slurp(spec);
  try {
    return parse_assignment(text);
  } catch (const ParseError& e) {
    throw CliError(kExitInvalid, "assignment: " + std::string(e.what()));
  }
}

int run_circuit(const std::string& file, const std::string& assign, bool relaxed, bool json_out) {
  Circuit c = load_circuit(file);
  auto report = validate_as2m(c, !relaxed);
  std::map<GateId, bool> values;
  if (!assign.empty()) {
    try {
      values = evaluate_circuit(c, load_assignment(assign));
    } catch (const std::invalid_argument& e) {
      throw CliError(kExitInvalid, e.what());
    }
  }
  if (json_out) {
    json v = json::array();
    for (const auto& x : report.violations) v.push_back(x.message);
    json j{{"as2m", report.ok()}, {"gates", c.gates().size()}, {"depth", c.depth()}, {"violations", v}};
    if (!values.empty()) {
      json vals = json::object();
      for (auto [g, b] : values) vals[std::to_string(g)] = b;
      j["values"] = vals;
    }
    emit_json(j);
  } else {
    std::cout << "as2m " << (report.ok() ? "ok" : "violated") << '\n';
    if (!report.ok()) std::cout << report.summary() << '\n';
    for (auto [g, b] : values) std::cout << "gate " << g << " = " << (b ? 1 : 0) << '\n';
  }
  return report.ok() ? 0 : kExitInvalid;
}

struct CompileArgs {
  std::string netlist, assign, output;
  std::int64_t gate = -1;
  bool json = false;
};

int run_compile(const CompileArgs& a) {
  Circuit c = load_circuit(a.netlist);
  if (c.outputs().empty()) throw CliError(kExitInvalid, "circuit has no outputs");
  GateId gate = a.gate < 0 ? c.outputs().front() : static_cast<GateId>(a.gate);
  CompiledCircuit cc;
  try {
    cc = compile_circuit(c, load_assignment(a.assign));
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitInvalid, e.what());
  }
  PredInstance inst;
  try {
    inst = to_pred_instance(cc, gate);
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitUsage, e.what());
  }
  if (a.output.empty() || a.output == "-") {
    if (!a.json) write_pred_instance(std::cout, inst);
  } else {
    std::ofstream out(a.output);
    if (!out) throw CliError(kExitUsage, "cannot write '" + a.output + "'");
    write_pred_instance(out, inst);
  }
  if (a.json) {
    json readouts = json::object();
    for (const auto& [g, r] : cc.readouts) readouts[std::to_string(g)] = {{"node", r.node + 1}, {"time", r.time}};
    emit_json({{"nodes", cc.network.size()},
               {"edges", cc.network.edge_count()},
               {"horizon", cc.horizon},
               {"gadget_nodes", cc.stats.gadget_nodes},
               {"padding_nodes", cc.stats.padding_nodes},
               {"readouts", readouts},
               {"pred", {{"gate", gate}, {"t", inst.t}, {"v", inst.v + 1}}}});
  }
  return 0;
}

int run_pred(const std::string& file, bool json_out) {
  auto doc = load_document(file);
  require_valid(doc.network);
  PredInstance inst;
  try {
    inst = pred_from_document(doc);
  } catch (const ParseError& e) {
    throw CliError(kExitInvalid, e.what());
  }
  bool yes = answer_pred(inst);
  if (json_out) {
    emit_json({{"answer", yes}, {"t", inst.t}, {"v", inst.v + 1}});
  } else {
    std::cout << (yes ? "yes" : "no") << '\n';
  }
  return yes ? 0 : kExitNo;
}

int run_ps_build(const std::string& file) {
  auto doc = load_document(file);
  PSNetwork ps;
  try {
    ps = build_ps(doc.network);
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitInvalid, e.what());
  }
  write_ps(std::cout, ps);
  if (doc.config) write_configuration(std::cout, ps_initial(ps, *doc.config));
  return 0;
}

int run_ps_verify(const std::string& file, std::uint64_t T, bool corrupt_s, bool json_out) {
  auto doc = load_document(file);
  if (!doc.config) throw CliError(kExitUsage, "ps verify needs a configuration line");
  PSNetwork ps;
  try {
    ps = build_ps(doc.network);
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitInvalid, e.what());
  }
  Configuration start = ps_initial(ps, *doc.config);
  if (corrupt_s) start.flip(ps.s_node(1, 1));
  auto r = verify_ps(doc.network, ps, *doc.config, start, T);
  if (json_out) {
    json j{{"pass", r.ok()}, {"ps_steps", r.ps_steps}, {"ps_nodes", ps.network.size()}, {"alpha", ps.alpha}};
    if (!r.ok()) {
      j["failure"] = {{"check", to_string(r.failure->check)},
                      {"ps_time", r.failure->ps_time},
                      {"node", r.failure->node + 1},
                      {"message", r.failure->message}};
    }
    emit_json(j);
  } else {
    std::cout << r.summary() << '\n';
  }
  return r.ok() ? 0 : kExitNo;
}

int run_certify(const std::string& tamper, bool json_out) {
  bool all_ok = true;
  json gadgets = json::array();
  bool matched = tamper.empty();
  for (auto spec : all_gadgets()) {
    if (!tamper.empty() && tamper == to_string(spec.kind)) {
      spec.latency += 1;
      matched = true;
    }
    auto r = certify_gadget(spec);
    all_ok = all_ok && r.ok();
    if (json_out) {
      json g{{"kind", to_string(spec.kind)}, {"pass", r.ok()}, {"cases", r.cases},
             {"latency", spec.latency}, {"nodes", spec.fragment.size()}};
      if (!r.ok()) g["failure"] = r.failures.front().message;
      gadgets.push_back(g);
    } else {
      std::cout << (r.ok() ? "PASS " : "FAIL ") << r.summary() << " (latency " << spec.latency << ", "
                << spec.fragment.size() << " nodes)\n";
    }
  }
  if (!matched) throw CliError(kExitUsage, "unknown gadget '" + tamper + "'");
  auto orbit = wire_orbit(2);
  if (json_out) {
    emit_json({{"pass", all_ok},
               {"gadgets", gadgets},
               {"wire", {{"nodes", wire_gadget(2).fragment.size()},
                         {"period_steps", orbit.steps},
                         {"period_block_updates", orbit.block_updates}}}});
  } else {
    std::cout << "wire: " << wire_gadget(2).fragment.size() << " nodes, orbit period " << orbit.steps
              << " steps = " << orbit.block_updates << " block updates\n";
  }
  return all_ok ? 0 : kExitNo;
}

int run_verify_all(const AcceptanceOptions& opt, int only, bool json_out) {
  std::vector<CriterionResult> results;
  if (only > 0) {
    if (only > kCriterionCount) throw CliError(kExitUsage, "no criterion " + std::to_string(only));
    results.push_back(run_criterion(only, opt));
  } else {
    for (int id = 1; id <= kCriterionCount; ++id) {
      results.push_back(run_criterion(id, opt));
      if (!json_out) std::cout << format_result(results.back()) << std::endl;
    }
  }
  bool ok = true;
  json arr = json::array();
  for (const auto& r : results) {
    ok = ok && r.pass;
    arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
    if (only > 0 && !json_out) std::cout << format_result(r) << '\n';
  }
  if (json_out) emit_json({{"pass", ok}, {"criteria", arr}});
  return ok ? 0 : kExitNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Q2R networks: dynamics, constructions, circuit compilation, parallel simulation"};
  app.require_subcommand(1);
  unsigned jobs = 1;
  std::uint64_t seed = 20240601;
  app.add_option("--jobs", jobs, "Worker threads for enumeration and acceptance sweeps")->check(CLI::Range(1, 64));
  app.add_option("--seed", seed, "Seed for randomized commands");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Run the dynamics and print the final configuration");
  c_sim->add_option("file", sim.file, "Network document (default: stdin)");
  c_sim->add_option("--config", sim.config, "Configuration file (overrides the document)");
  c_sim->add_option("--steps,-t", sim.steps, "Number of steps");
  c_sim->add_option("--schedule", sim.schedule)->check(CLI::IsMember({"auto", "two-block", "parallel"}));
  c_sim->add_flag("--trace", sim.trace, "Print the state after every step");
  c_sim->add_flag("--audit-energy", sim.audit, "Check energy at every half-step and print it");
  c_sim->add_flag("--json", sim.json);

  PeriodArgs per;
  auto* c_per = app.add_subcommand("period", "Measure period and preperiod of an orbit");
  c_per->add_option("file", per.file, "Network document (default: stdin)");
  c_per->add_option("--config", per.config);
  c_per->add_option("--cap", per.cap, "Maximum number of steps")->check(CLI::PositiveNumber);
  c_per->add_option("--schedule", per.schedule)->check(CLI::IsMember({"auto", "two-block", "parallel"}));
  c_per->add_option("--method", per.method)->check(CLI::IsMember({"auto", "first-return", "brent"}));
  c_per->add_flag("--json", per.json);

  std::uint64_t ring_p = 0;
  bool ring_swapped = false;
  auto* c_ring = app.add_subcommand("ring", "Prime ring with its canonical configuration");
  c_ring->add_option("p", ring_p)->required();
  c_ring->add_flag("--swapped", ring_swapped, "Put the even nodes in class A");

  std::vector<std::uint64_t> primes;
  auto* c_comp = app.add_subcommand("composite", "Coupled prime rings with period equal to the product");
  c_comp->add_option("primes", primes)->required();

  std::size_t tw = 0, th = 0;
  bool torus_random = false;
  auto* c_torus = app.add_subcommand("torus", "Checkerboard torus (all -1 unless --random)");
  c_torus->add_option("width", tw)->required();
  c_torus->add_option("height", th)->required();
  c_torus->add_flag("--random", torus_random, "Random configuration from --seed");

  std::string val_file;
  bool val_json = false, val_any = false;
  auto* c_val = app.add_subcommand("validate", "Check a network document");
  c_val->add_option("file", val_file);
  c_val->add_flag("--no-bipartite", val_any, "Waive the bipartite check (parallel simulator output)");
  c_val->add_flag("--json", val_json);

  std::string circ_file, circ_assign;
  bool circ_relaxed = false, circ_json = false;
  auto* c_circ = app.add_subcommand("circuit", "Check AS2MCVP form and evaluate a netlist");
  c_circ->add_option("netlist", circ_file)->required();
  c_circ->add_option("--assign", circ_assign, "Assignment file or 'assign ...' text");
  c_circ->add_flag("--relaxed", circ_relaxed, "Accept fanout 1 as the compiler does");
  c_circ->add_flag("--json", circ_json);

  CompileArgs comp;
  auto* c_compile = app.add_subcommand("compile", "Compile a circuit into a PRED instance");
  c_compile->add_option("netlist", comp.netlist)->required();
  c_compile->add_option("--assign", comp.assign, "Assignment file or 'assign ...' text")->required();
  c_compile->add_option("--gate", comp.gate, "Output gate (default: first output)");
  c_compile->add_option("-o,--output", comp.output, "Instance file (default: stdout)");
  c_compile->add_flag("--json", comp.json, "Print a layout report instead of the instance");

  std::string pred_file;
  bool pred_json = false;
  auto* c_pred = app.add_subcommand("pred", "Answer a PRED instance (exit 0 yes, 1 no)");
  c_pred->add_option("file", pred_file);
  c_pred->add_flag("--json", pred_json);

  auto* c_ps = app.add_subcommand("ps", "Parallel simulator");
  c_ps->require_subcommand(1);
  std::string psb_file;
  auto* c_psb = c_ps->add_subcommand("build", "Build the parallel simulator of a two-block network");
  c_psb->add_option("file", psb_file);
  std::string psv_file;
  std::uint64_t psv_steps = 20;
  bool psv_corrupt = false, psv_json = false;
  auto* c_psv = c_ps->add_subcommand("verify", "Check the two-steps-for-one simulation");
  c_psv->add_option("file", psv_file);
  c_psv->add_option("--steps,-T", psv_steps)->check(CLI::PositiveNumber);
  c_psv->add_flag("--corrupt-s", psv_corrupt, "Negative control: flip one switching node");
  c_psv->add_flag("--json", psv_json);

  std::string tamper;
  bool cert_json = false;
  auto* c_cert = app.add_subcommand("certify-gadgets", "Exhaustively certify the gadget set");
  c_cert->add_option("--tamper-latency", tamper, "Negative control: declare a wrong latency for this gadget");
  c_cert->add_flag("--json", cert_json);

  int only = 0;
  bool all_json = false;
  auto* c_all = app.add_subcommand("verify-all", "Run the acceptance suite");
  c_all->add_option("--only", only, "Run a single criterion");
  c_all->add_flag("--json", all_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*c_sim) return run_simulate(sim);
    if (*c_per) return run_period(per);
    if (*c_ring) return run_ring(ring_p, ring_swapped);
    if (*c_comp) return run_composite(primes);
    if (*c_torus) return run_torus(tw, th, torus_random, seed);
    if (*c_val) return run_validate(val_file, val_any, val_json);
    if (*c_circ) return run_circuit(circ_file, circ_assign, circ_relaxed, circ_json);
    if (*c_compile) return run_compile(comp);
    if (*c_pred) return run_pred(pred_file, pred_json);
    if (*c_psb) return run_ps_build(psb_file);
    if (*c_psv) return run_ps_verify(psv_file, psv_steps, psv_corrupt, psv_json);
    if (*c_cert) return run_certify(tamper, cert_json);
    if (*c_all) return run_verify_all({seed, jobs}, only, all_json);
  } catch (const CliError& e) {
    std::cerr << "q2r: " << e.what() << '\n';
    return e.code;
  } catch (const ScheduleError& e) {
    std::cerr << "q2r: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "q2r: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
