#include "q2r/dynamics.hpp"

#include <algorithm>
#include <thread>

namespace q2r {

Trajectory::Trajectory(const Q2RNetwork& net, const UpdateSchedule& sched, Configuration x0,
                       bool audit_energy)
    : sched_(sched), stepper_(net, sched_), x_(std::move(x0)), audit_(audit_energy) {
  if (x_.size() != net.size()) throw std::invalid_argument("initial configuration length mismatch");
}

const Configuration& Trajectory::advance() {
  if (!audit_) {
    stepper_.step(x_);
  } else {
    const auto& net = stepper_.network();
    EnergyValue before = q2r::energy(net, x_);
    for (std::size_t b = 0; b < stepper_.schedule().block_count(); ++b) {
      stepper_.half_step(x_, b);
      EnergyValue after = q2r::energy(net, x_);
      if (after != before) {
        throw EnergyAuditError("energy changed from " + std::to_string(before.value) + " to " +
                               std::to_string(after.value) + " at step " + std::to_string(t_ + 1) +
                               ", block " + std::to_string(b + 1));
      }
    }
  }
  ++t_;
  return x_;
}

namespace {

PeriodReport first_return(Stepper& stepper, const Configuration& x0, std::uint64_t cap) {
  Configuration x = x0;
  for (std::uint64_t t = 1; t <= cap; ++t) {
    stepper.step(x);
    if (x == x0) return {t, 0, false};
  }
  return {0, 0, true};
}

PeriodReport brent(Stepper& stepper, const Configuration& x0, std::uint64_t cap) {
  std::uint64_t power = 1;
  std::uint64_t lam = 1;
  std::uint64_t steps = 1;
  Configuration tortoise = x0;
  Configuration hare = x0;
  stepper.step(hare);
  while (tortoise != hare) {
    if (steps >= cap) return {0, 0, true};
    if (power == lam) {
      tortoise = hare;
      power *= 2;
      lam = 0;
    }
    stepper.step(hare);
    ++lam;
    ++steps;
  }

  tortoise = x0;
  hare = x0;
  for (std::uint64_t i = 0; i < lam; ++i) stepper.step(hare);
  std::uint64_t mu = 0;
  while (tortoise != hare) {
    if (mu >= cap) return {0, 0, true};
    stepper.step(tortoise);
    stepper.step(hare);
    ++mu;
  }
  return {lam, mu, false};
}

template <typename Fn>
void parallel_range(std::uint64_t total, unsigned jobs, Fn&& fn) {
  jobs = std::max(1U, std::min<unsigned>(jobs, 64));
  if (jobs == 1 || total < 4096) {
    fn(std::uint64_t{0}, total, 0U);
    return;
  }
  std::vector<std::thread> workers;
  std::uint64_t chunk = (total + jobs - 1) / jobs;
  for (unsigned j = 0; j < jobs; ++j) {
    std::uint64_t lo = j * chunk;
    std::uint64_t hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([&fn, lo, hi, j] { fn(lo, hi, j); });
  }
  for (auto& w : workers) w.join();
}

void require_small(const Q2RNetwork& net, std::size_t limit, const char* what) {
  if (net.size() > limit) {
    throw std::invalid_argument(std::string(what) + " is limited to n <= " + std::to_string(limit) +
                                " (got " + std::to_string(net.size()) + ")");
  }
}

}  // namespace

PeriodReport find_period(const Q2RNetwork& net, const UpdateSchedule& sched,
                         const Configuration& x0, std::uint64_t cap, PeriodMethod method) {
  if (cap < 1) throw std::invalid_argument("period cap must be at least 1");
  if (x0.size() != net.size()) throw std::invalid_argument("configuration length mismatch");
  Stepper stepper(net, sched);
  if (method == PeriodMethod::Auto) {
    method = is_reversible(net, sched) ? PeriodMethod::FirstReturn : PeriodMethod::Brent;
  }
  return method == PeriodMethod::FirstReturn ? first_return(stepper, x0, cap)
                                             : brent(stepper, x0, cap);
}

bool assert_no_transient(const Q2RNetwork& net, const UpdateSchedule& sched,
                         const Configuration& x0, std::uint64_t cap) {
  auto report = find_period(net, sched, x0, cap, PeriodMethod::Brent);
  return !report.cap_hit && report.preperiod == 0;
}

std::vector<std::uint32_t> step_table(const Q2RNetwork& net, const UpdateSchedule& sched,
                                      unsigned jobs) {
  require_small(net, kMaxBijectivityEnumeration, "step_table");
  check_schedule(net, sched);
  const std::size_t n = net.size();
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<std::uint32_t> table(total);
  parallel_range(total, jobs, [&](std::uint64_t lo, std::uint64_t hi, unsigned) {
    Stepper stepper(net, sched);
    for (std::uint64_t i = lo; i < hi; ++i) {
      Configuration x = Configuration::from_index(n, i);
      stepper.step(x);
      table[i] = static_cast<std::uint32_t>(x.to_index());
    }
  });
  return table;
}

std::vector<Configuration> brute_force_fixed_points(const Q2RNetwork& net, const UpdateSchedule& sched,
                                                    unsigned jobs) {
  require_small(net, kMaxFixedPointEnumeration, "fixed-point enumeration");
  check_schedule(net, sched);
  const std::size_t n = net.size();
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<std::vector<std::uint64_t>> found(std::max(1U, std::min<unsigned>(jobs, 64)));
  parallel_range(total, jobs, [&](std::uint64_t lo, std::uint64_t hi, unsigned slot) {
    Stepper stepper(net, sched);
    for (std::uint64_t i = lo; i < hi; ++i) {
      Configuration x = Configuration::from_index(n, i);
      stepper.step(x);
      if (x.to_index() == i) found[slot].push_back(i);
    }
  });
  std::vector<std::uint64_t> merged;
  for (auto& f : found) merged.insert(merged.end(), f.begin(), f.end());
  std::sort(merged.begin(), merged.end());
  std::vector<Configuration> out;
  out.reserve(merged.size());
  for (auto i : merged) out.push_back(Configuration::from_index(n, i));
  return out;
}

bool brute_force_bijectivity(const Q2RNetwork& net, const UpdateSchedule& sched, unsigned jobs) {
  auto table = step_table(net, sched, jobs);
  std::vector<char> hit(table.size(), 0);
  for (auto image : table) {
    if (hit[image]) return false;
    hit[image] = 1;
  }
  return true;
}

LinearStepMatrix linear_step_matrix(const Q2RNetwork& net, const UpdateSchedule& sched) {
  check_schedule(net, sched);
  const std::size_t n = net.size();
  for (NodeId v = 0; v < n; ++v) {
    if (net.degree(v) != 2) {
      throw std::invalid_argument("linear fast-forward needs every node of degree 2; node " +
                                  std::to_string(v + 1) + " has degree " +
                                  std::to_string(net.degree(v)));
    }
  }
  Gf2Matrix total = Gf2Matrix::identity(n);
  for (const auto& block : sched.blocks()) {
    if (!is_independent(net, block)) {
      throw ScheduleError("linear fast-forward needs independent blocks");
    }
    // In 0/1 encoding a degree-2 node flips iff its neighbours differ:
    // x_i' = x_i + x_l + x_r over GF(2).
    Gf2Matrix half = Gf2Matrix::identity(n);
    for (NodeId i : block) {
      for (NodeId j : net.neighbors(i)) half.toggle(i, j);
    }
    total = half * total;
  }
  return {std::move(total)};
}

Configuration linear_fastforward(const Q2RNetwork& net, const UpdateSchedule& sched,
                                 const Configuration& x0, std::uint64_t t, FastForwardStats* stats) {
  if (x0.size() != net.size()) throw std::invalid_argument("configuration length mismatch");
  Gf2Matrix base = linear_step_matrix(net, sched).matrix;
  FastForwardStats local;
  Configuration x = x0;
  while (t > 0) {
    if (t & 1U) x = base.apply(x);
    t >>= 1;
    if (t > 0) {
      base = base * base;
      ++local.multiplications;
    }
  }
  if (stats) *stats = local;
  return x;
}

}  // namespace q2r
