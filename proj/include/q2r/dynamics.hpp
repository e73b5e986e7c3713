#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "q2r/core.hpp"
#include "q2r/gf2.hpp"

namespace q2r {

inline constexpr std::uint64_t kDefaultPeriodCap = std::uint64_t{1} << 26;

/// Thrown when a trajectory audit observes an energy change.
class EnergyAuditError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Streams x^0, x^1, ... holding only the current state. With auditing on,
/// every half-step is checked for exact energy conservation (meaningful for
/// independent blocks only). The schedule is copied; the network must
/// outlive the trajectory.
class Trajectory {
 public:
  Trajectory(const Q2RNetwork& net, const UpdateSchedule& sched, Configuration x0,
             bool audit_energy = false);

  const Configuration& state() const { return x_; }
  std::uint64_t time() const { return t_; }
  const Configuration& advance();
  EnergyValue energy_value() const { return q2r::energy(stepper_.network(), x_); }

 private:
  UpdateSchedule sched_;
  Stepper stepper_;
  Configuration x_;
  std::uint64_t t_ = 0;
  bool audit_;
};

struct PeriodReport {
  std::uint64_t period = 0;
  std::uint64_t preperiod = 0;
  bool cap_hit = false;

  bool operator==(const PeriodReport&) const = default;
};

enum class PeriodMethod { Auto, FirstReturn, Brent };

/// Minimal period of the orbit of x0. `cap` bounds the number of steps.
/// Auto uses first return for reversible schedules and Brent otherwise.
PeriodReport find_period(const Q2RNetwork& net, const UpdateSchedule& sched,
                         const Configuration& x0, std::uint64_t cap = kDefaultPeriodCap,
                         PeriodMethod method = PeriodMethod::Auto);

/// True iff x0 lies on a pure cycle found within `cap` steps.
bool assert_no_transient(const Q2RNetwork& net, const UpdateSchedule& sched,
                         const Configuration& x0, std::uint64_t cap = kDefaultPeriodCap);

inline constexpr std::size_t kMaxFixedPointEnumeration = 24;
inline constexpr std::size_t kMaxBijectivityEnumeration = 20;

/// Every x with step(x) = x, in increasing index order. n <= 24.
std::vector<Configuration> brute_force_fixed_points(const Q2RNetwork& net, const UpdateSchedule& sched,
                                                    unsigned jobs = 1);

/// Whether step is injective over all 2^n configurations. n <= 20.
bool brute_force_bijectivity(const Q2RNetwork& net, const UpdateSchedule& sched, unsigned jobs = 1);

/// Image table of step over all 2^n configurations (index encoding).
std::vector<std::uint32_t> step_table(const Q2RNetwork& net, const UpdateSchedule& sched,
                                      unsigned jobs = 1);

/// One scheduled step of a degree-2 network as a GF(2) matrix acting on the
/// 0/1 encoding (1 <=> +1). Rule 150 is linear, so there is no affine part.
struct LinearStepMatrix {
  Gf2Matrix matrix;
};

LinearStepMatrix linear_step_matrix(const Q2RNetwork& net, const UpdateSchedule& sched);

struct FastForwardStats {
  std::uint64_t multiplications = 0;
};

/// State after t steps via square-and-multiply on the step matrix.
Configuration linear_fastforward(const Q2RNetwork& net, const UpdateSchedule& sched,
                                 const Configuration& x0, std::uint64_t t,
                                 FastForwardStats* stats = nullptr);

}  // namespace q2r
