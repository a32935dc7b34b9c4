#pragma once
// Gates on the odd-parity qubit spanned by |1_1 0_2>, |0_1 1_2>, and square
// wave chemical-potential protocols that realise them on the lattice.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mbs/bdg.hpp"
#include "mbs/chain.hpp"
#include "mbs/errors.hpp"

namespace mbs {

struct QubitGate {
  Eigen::Matrix2cd matrix = Eigen::Matrix2cd::Identity();
};

/// exp(-i (epsilon t / 2) sigma_x).
QubitGate gate_u0n(double epsilon, double t);
/// exp(i pi/4 sigma_z).
QubitGate gate_braid();
/// gates[0] is applied first: result = gates[n-1] ... gates[0].
QubitGate compose(const std::vector<QubitGate>& gates);
/// |tr(U^dag V)| / 2.
double fidelity(const QubitGate& u, const QubitGate& v);
/// max |U^dag U - I|.
double unitarity_residual(const QubitGate& u);

enum class StageKind { couple, decouple, braid };
std::string_view to_string(StageKind k);

struct ProtocolStep {
  StageKind stage = StageKind::couple;
  double duration = 0.0;
  std::optional<double> mu_c;   // defaults to mu_low (couple) / mu_high (decouple)
  std::optional<double> angle;  // couple only: target rotation, replaces duration
  double hold = 0.0;            // couple only: high-voltage time after the pulse
};

struct Protocol {
  std::vector<ProtocolStep> steps;
};

/// {"steps":[{"stage":"couple"|"decouple"|"braid","duration":..,"mu_c":..,"angle":..,"hold":..}]}
Protocol parse_protocol(std::string_view json_text);
Protocol load_protocol(const std::filesystem::path& path);

struct ScheduleStage {
  enum class Kind { lattice, braid } kind = Kind::lattice;
  double mu_c = 0.0;
  double duration = 0.0;
  bool coupling = false;  // low-voltage pulse
  int step = 0;           // originating protocol step
  std::optional<BdgMatrix> matrix;
};

struct Schedule {
  ChainConfig base;
  double mu_low = 0.0;
  double mu_high = 0.0;
  double eps_low = 0.0;
  double eps_high = 0.0;
  std::vector<ScheduleStage> stages;
};

/// Rotation angle per unit (eps t); the lattice calibration gives c = 2, and a
/// Majorana pair split by eps rotates by eps t.
constexpr double kRabiCalibration = 2.0;
/// eps(mu_high) / eps(mu_low) must not exceed this.
constexpr double kDecouplingRatio = 1e-3;
constexpr double kLeakageLimit = 0.05;

/// Each couple step becomes (low pulse, high hold); decouple steps become a
/// single high stage; braid steps become ideal-unitary markers.
/// Throws InsufficientDecoupling.
Schedule schedule_protocol(const Protocol& protocol, const ChainConfig& base, double mu_low, double mu_high);

struct StageReport {
  int stage = 0;
  ScheduleStage::Kind kind = ScheduleStage::Kind::lattice;
  double mu_c = 0.0;
  double duration = 0.0;
  double epsilon = 0.0;
  double theta_pred = 0.0;
  double theta_sim = 0.0;
  double leakage = 0.0;
};

struct ProtocolReport {
  std::vector<StageReport> stages;
  double theta_pred = 0.0;  // summed over lattice stages
  double theta_sim = 0.0;
  double relative_deviation = 0.0;
  double max_leakage = 0.0;
  QubitGate predicted;
  QubitGate simulated;
  double gate_fidelity = 1.0;
};

class LeakageError : public Error {
 public:
  explicit LeakageError(ProtocolReport report, const std::string& message)
      : Error(ErrorKind::ZeroSectorLeakage, message), report_(std::move(report)) {}
  const ProtocolReport& report() const noexcept { return report_; }

 private:
  ProtocolReport report_;
};

/// Evolves each lattice stage exactly, projects the propagator onto the four
/// Majorana modes of the mu_high chain and reads the inner-pair rotation
/// angle from the nearest orthogonal matrix. Throws LeakageError when any
/// stage ends with more than kLeakageLimit outside the sector.
ProtocolReport validate_protocol(const Schedule& schedule);

std::string report_json(const ProtocolReport& report);

}  // namespace mbs
