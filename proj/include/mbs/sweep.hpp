#pragma once
// Parameter sweeps over a base configuration, evaluated point by point with
// any mix of lattice and analytic methods.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbs/chain.hpp"
#include "mbs/kernels.hpp"

namespace mbs {

/// Set a field by dotted path ("center.mu", "junction.t1", "center.length",
/// ...). "a+b" sets both fields to the same value.
void set_parameter(ChainConfig& config, std::string_view path, double value);

enum class SweepMethod { numeric, numeric_periodic, eq12, longrange, ksum };
std::string_view to_string(SweepMethod m);
SweepMethod sweep_method_from_string(std::string_view s);

struct SweepAxis {
  std::string param;
  double from = 0.0;
  double to = 1.0;
  int steps = 2;
};

struct SweepSpec {
  SweepAxis axis;
  std::optional<SweepAxis> second;  // grid mode
  std::vector<SweepMethod> methods{SweepMethod::numeric};
  double zero_threshold = 1e-8;
};

struct SweepRow {
  double value = 0.0;
  double value2 = 0.0;
  SweepMethod method = SweepMethod::numeric;
  std::string label;  // method name as emitted
  double epsilon = 0.0;
  std::optional<double> coherence_length;
  std::string error;  // error kind, empty on success
};

/// from..to inclusive. Throws InvalidArgument for steps < 2 or from == to.
std::vector<double> linspace(const SweepAxis& axis);

/// Rows ordered by (value, value2, method) exactly as listed in the spec,
/// whatever the execution mode. Failures become NaN rows carrying the kind.
std::vector<SweepRow> run_sweep(const ChainConfig& base, const SweepSpec& spec, Exec exec = Exec::parallel);

/// Evaluate one method on one config, same conventions as run_sweep.
SweepRow evaluate_point(const ChainConfig& config, SweepMethod method, double zero_threshold = 1e-8);

/// "sweep_param,value,method,epsilon,coherence_length,error"; grid mode
/// inserts "sweep_param2,value2" after value.
std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows);

}  // namespace mbs
