#include "mbs/qubit.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "mbs/csv.hpp"
#include "mbs/dynamics.hpp"

namespace mbs {

using cplx = std::complex<double>;
using nlohmann::json;

QubitGate gate_u0n(double epsilon, double t) {
  const double half = 0.5 * epsilon * t;
  QubitGate g;
  g.matrix << std::cos(half), cplx(0.0, -std::sin(half)), cplx(0.0, -std::sin(half)), std::cos(half);
  return g;
}

QubitGate gate_braid() {
  const double q = std::numbers::pi / 4.0;
  QubitGate g;
  g.matrix << std::polar(1.0, q), 0.0, 0.0, std::polar(1.0, -q);
  return g;
}

QubitGate compose(const std::vector<QubitGate>& gates) {
  if (gates.empty()) throw Error(ErrorKind::InvalidArgument, "compose needs at least one gate");
  QubitGate out = gates.front();
  for (std::size_t i = 1; i < gates.size(); ++i) out.matrix = gates[i].matrix * out.matrix;
  return out;
}

double fidelity(const QubitGate& u, const QubitGate& v) {
  return std::min(1.0, 0.5 * std::abs((u.matrix.adjoint() * v.matrix).trace()));
}

double unitarity_residual(const QubitGate& u) {
  return (u.matrix.adjoint() * u.matrix - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

std::string_view to_string(StageKind k) {
  switch (k) {
    case StageKind::couple: return "couple";
    case StageKind::decouple: return "decouple";
    case StageKind::braid: return "braid";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------

namespace {

double number(const json& step, const char* key, std::size_t index) {
  const json& v = step.at(key);
  if (!v.is_number()) {
    throw Error(ErrorKind::ParseError,
                "steps[" + std::to_string(index) + "]." + key + " must be a number, got " + v.dump());
  }
  return v.get<double>();
}

}  // namespace

Protocol parse_protocol(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!root.is_object() || !root.contains("steps")) throw Error(ErrorKind::SchemaError, "missing field \"steps\"");
  if (!root["steps"].is_array()) throw Error(ErrorKind::ParseError, "\"steps\" must be an array");

  Protocol p;
  std::size_t index = 0;
  for (const json& s : root["steps"]) {
    if (!s.is_object() || !s.contains("stage")) {
      throw Error(ErrorKind::SchemaError, "steps[" + std::to_string(index) + "] needs a \"stage\"");
    }
    const std::string stage = s["stage"].is_string() ? s["stage"].get<std::string>() : "";
    ProtocolStep step;
    if (stage == "couple") step.stage = StageKind::couple;
    else if (stage == "decouple") step.stage = StageKind::decouple;
    else if (stage == "braid") step.stage = StageKind::braid;
    else throw Error(ErrorKind::ParseError, "steps[" + std::to_string(index) + "].stage: unknown stage " + s["stage"].dump());

    if (s.contains("duration")) step.duration = number(s, "duration", index);
    if (s.contains("mu_c")) step.mu_c = number(s, "mu_c", index);
    if (s.contains("angle")) step.angle = number(s, "angle", index);
    if (s.contains("hold")) step.hold = number(s, "hold", index);
    if (step.stage != StageKind::braid && !s.contains("duration") && !step.angle) {
      throw Error(ErrorKind::SchemaError, "steps[" + std::to_string(index) + "] needs \"duration\" or \"angle\"");
    }
    if (step.angle && step.stage != StageKind::couple) {
      throw Error(ErrorKind::ParseError, "steps[" + std::to_string(index) + "]: \"angle\" only applies to couple");
    }
    if (step.duration < 0.0 || step.hold < 0.0) {
      throw Error(ErrorKind::InvalidArgument, "steps[" + std::to_string(index) + "]: durations must be >= 0");
    }
    p.steps.push_back(step);
    ++index;
  }
  return p;
}

Protocol load_protocol(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_protocol(buffer.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.message());
  }
}

// ---------------------------------------------------------------------------

namespace {

ChainConfig with_mu(ChainConfig c, double mu) {
  c.center.base.mu = mu;
  return c;
}

}  // namespace

Schedule schedule_protocol(const Protocol& protocol, const ChainConfig& base, double mu_low, double mu_high) {
  Schedule s;
  s.base = base;
  s.mu_low = mu_low;
  s.mu_high = mu_high;
  s.eps_low = numeric_coupling(with_mu(base, mu_low));
  s.eps_high = numeric_coupling(with_mu(base, mu_high));
  if (!(s.eps_high <= kDecouplingRatio * s.eps_low)) {
    std::ostringstream msg;
    msg << "eps(mu_high = " << mu_high << ") = " << s.eps_high << " is not below " << kDecouplingRatio
        << " x eps(mu_low = " << mu_low << ") = " << s.eps_low;
    throw Error(ErrorKind::InsufficientDecoupling, msg.str());
  }

  auto lattice = [&](double mu, double duration, bool coupling, int step) {
    ScheduleStage st;
    st.kind = ScheduleStage::Kind::lattice;
    st.mu_c = mu;
    st.duration = duration;
    st.coupling = coupling;
    st.step = step;
    st.matrix = build_bdg(validate(with_mu(base, mu)));
    return st;
  };

  for (std::size_t i = 0; i < protocol.steps.size(); ++i) {
    const ProtocolStep& p = protocol.steps[i];
    const int step = static_cast<int>(i);
    switch (p.stage) {
      case StageKind::couple: {
        const double mu = p.mu_c.value_or(mu_low);
        double duration = p.duration;
        if (p.angle) {
          const double eps = mu == mu_low ? s.eps_low : numeric_coupling(with_mu(base, mu));
          duration = std::abs(*p.angle) / (0.5 * kRabiCalibration * eps);
        }
        s.stages.push_back(lattice(mu, duration, true, step));
        s.stages.push_back(lattice(mu_high, p.hold, false, step));
        break;
      }
      case StageKind::decouple:
        s.stages.push_back(lattice(p.mu_c.value_or(mu_high), p.duration, false, step));
        break;
      case StageKind::braid: {
        ScheduleStage st;
        st.kind = ScheduleStage::Kind::braid;
        st.step = step;
        s.stages.push_back(st);
        break;
      }
    }
  }
  return s;
}

namespace {

// Nearest rotation to the inner 2x2 block, as an angle.
double inner_angle(const Eigen::Matrix4d& p) {
  const Eigen::Matrix2d b = p.block<2, 2>(1, 1);
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Matrix2d r = svd.matrixU() * svd.matrixV().transpose();
  return std::atan2(r(1, 0), r(0, 0));
}

double leakage(const Eigen::Matrix4d& p) {
  double worst = 0.0;
  for (int j = 0; j < 4; ++j) worst = std::max(worst, 1.0 - p.col(j).squaredNorm());
  return std::max(0.0, worst);
}

}  // namespace

ProtocolReport validate_protocol(const Schedule& schedule) {
  ProtocolReport report;
  const ValidatedConfig high = validate(with_mu(schedule.base, schedule.mu_high));
  if (!high.left_at_sweet_spot() || !high.right_at_sweet_spot()) {
    throw Error(ErrorKind::NoZeroSector, "protocol validation needs sweet-spot outer segments");
  }
  const Eigen::MatrixXcd q = majorana_basis(diagonalize(build_bdg(high)));
  if (q.cols() != 4) throw Error(ErrorKind::NoZeroSector, "protocol validation needs an open chain");

  std::vector<QubitGate> predicted;
  std::vector<QubitGate> simulated;
  for (std::size_t i = 0; i < schedule.stages.size(); ++i) {
    const ScheduleStage& st = schedule.stages[i];
    StageReport r;
    r.stage = static_cast<int>(i);
    r.kind = st.kind;
    if (st.kind == ScheduleStage::Kind::braid) {
      predicted.push_back(gate_braid());
      simulated.push_back(gate_braid());
      report.stages.push_back(r);
      continue;
    }
    r.mu_c = st.mu_c;
    r.duration = st.duration;
    const SpectrumResult spec = diagonalize(*st.matrix);
    r.epsilon = extract_coupling(spec);

    const Eigen::MatrixXcd hp = q.adjoint() * st.matrix->matrix * q;
    const double coupling = hp(2, 1).imag();
    const double sign = coupling < 0.0 ? -1.0 : 1.0;
    r.theta_pred = sign * 0.5 * kRabiCalibration * r.epsilon * st.duration;

    // Sample finely enough that consecutive angles differ by < pi/4, then unwrap.
    const double rate = 0.5 * kRabiCalibration * std::max(r.epsilon, std::abs(coupling));
    const int pieces = std::max(1, static_cast<int>(std::ceil(rate * st.duration / (std::numbers::pi / 4.0))));
    double theta = 0.0;
    double previous = 0.0;
    Eigen::Matrix4d p = Eigen::Matrix4d::Identity();
    for (int k = 1; k <= pieces; ++k) {
      const Eigen::MatrixXcd w = static_propagator(spec, st.duration * k / pieces);
      p = (q.adjoint() * w * q).real();
      const double a = inner_angle(p);
      double d = a - previous;
      d -= 2.0 * std::numbers::pi * std::round(d / (2.0 * std::numbers::pi));
      theta += d;
      previous = a;
    }
    r.theta_sim = theta;
    r.leakage = leakage(p);

    predicted.push_back(gate_u0n(r.theta_pred, 1.0));
    simulated.push_back(gate_u0n(r.theta_sim, 1.0));
    report.theta_pred += r.theta_pred;
    report.theta_sim += r.theta_sim;
    report.max_leakage = std::max(report.max_leakage, r.leakage);
    report.stages.push_back(r);
  }

  if (!predicted.empty()) {
    report.predicted = compose(predicted);
    report.simulated = compose(simulated);
  }
  report.gate_fidelity = fidelity(report.predicted, report.simulated);
  report.relative_deviation =
      report.theta_pred != 0.0 ? std::abs(report.theta_sim - report.theta_pred) / std::abs(report.theta_pred)
                               : std::abs(report.theta_sim);

  if (report.max_leakage > kLeakageLimit) {
    std::ostringstream msg;
    msg << "population " << report.max_leakage << " left the four-mode zero sector (limit " << kLeakageLimit << ")";
    throw LeakageError(report, msg.str());
  }
  return report;
}

namespace {

json gate_json(const QubitGate& g) {
  json rows = json::array();
  for (int i = 0; i < 2; ++i) {
    json row = json::array();
    for (int j = 0; j < 2; ++j) row.push_back({round12(g.matrix(i, j).real()), round12(g.matrix(i, j).imag())});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string report_json(const ProtocolReport& report) {
  json stages = json::array();
  for (const StageReport& s : report.stages) {
    json j{{"stage", s.stage}, {"kind", s.kind == ScheduleStage::Kind::braid ? "braid" : "lattice"}};
    if (s.kind == ScheduleStage::Kind::lattice) {
      j["mu_c"] = round12(s.mu_c);
      j["duration"] = round12(s.duration);
      j["epsilon"] = round12(s.epsilon);
      j["theta_pred"] = round12(s.theta_pred);
      j["theta_sim"] = round12(s.theta_sim);
      j["leakage"] = round12(s.leakage);
    }
    stages.push_back(j);
  }
  json root{{"theta_pred", round12(report.theta_pred)},
            {"theta_sim", round12(report.theta_sim)},
            {"relative_deviation", round12(report.relative_deviation)},
            {"leakage", round12(report.max_leakage)},
            {"fidelity", round12(report.gate_fidelity)},
            {"predicted_gate", gate_json(report.predicted)},
            {"simulated_gate", gate_json(report.simulated)},
            {"stages", stages}};
  return root.dump(2) + "\n";
}

}  // namespace mbs
