#include "mbs/sweep.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mbs/analytic.hpp"
#include "mbs/bdg.hpp"
#include "mbs/csv.hpp"
#include "mbs/errors.hpp"

namespace mbs {

namespace {

void set_one(ChainConfig& c, std::string_view path, double value) {
  auto length = [&](int& field) {
    if (std::floor(value) != value) {
      throw Error(ErrorKind::InvalidArgument, std::string(path) + " needs an integer value");
    }
    field = static_cast<int>(value);
  };
  auto segment = [&](SegmentParams& s, std::string_view field) -> bool {
    if (field == "mu") s.mu = value;
    else if (field == "t") s.t = value;
    else if (field == "delta") s.delta = value;
    else if (field == "length") length(s.length);
    else return false;
    return true;
  };

  const auto dot = path.find('.');
  if (dot == std::string_view::npos) {
    throw Error(ErrorKind::InvalidArgument, "parameter path must look like section.field, got " + std::string(path));
  }
  const std::string_view section = path.substr(0, dot);
  const std::string_view field = path.substr(dot + 1);
  bool ok = false;
  if (section == "left") {
    ok = segment(c.left, field);
  } else if (section == "right") {
    ok = segment(c.right, field);
  } else if (section == "center") {
    ok = segment(c.center.base, field);
    if (!ok && field == "t2") ok = (c.center.t2 = value, true);
    if (!ok && field == "delta2") ok = (c.center.delta2 = value, true);
  } else if (section == "junction") {
    JunctionParams& j = c.junction;
    if (field == "t1") ok = (j.t1 = value, true);
    else if (field == "t2") ok = (j.t2 = value, true);
    else if (field == "t1p") ok = (j.t1p = value, true);
    else if (field == "t2p") ok = (j.t2p = value, true);
    else if (field == "delta1") ok = (j.delta1 = value, true);
    else if (field == "delta2") ok = (j.delta2 = value, true);
  }
  if (!ok) throw Error(ErrorKind::InvalidArgument, "unknown parameter path " + std::string(path));
}

}  // namespace

void set_parameter(ChainConfig& config, std::string_view path, double value) {
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = path.find('+', start);
    set_one(config, path.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start),
            value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
}

std::string_view to_string(SweepMethod m) {
  switch (m) {
    case SweepMethod::numeric: return "numeric";
    case SweepMethod::numeric_periodic: return "numeric_periodic";
    case SweepMethod::eq12: return "eq12";
    case SweepMethod::longrange: return "longrange";
    case SweepMethod::ksum: return "ksum";
  }
  return "unknown";
}

SweepMethod sweep_method_from_string(std::string_view s) {
  for (SweepMethod m : {SweepMethod::numeric, SweepMethod::numeric_periodic, SweepMethod::eq12,
                        SweepMethod::longrange, SweepMethod::ksum}) {
    if (to_string(m) == s) return m;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown sweep method " + std::string(s));
}

std::vector<double> linspace(const SweepAxis& a) {
  if (a.steps < 2) throw Error(ErrorKind::InvalidArgument, "sweep needs steps >= 2");
  if (a.from == a.to) throw Error(ErrorKind::InvalidArgument, "sweep needs from != to");
  std::vector<double> v(a.steps);
  for (int i = 0; i < a.steps; ++i) v[i] = a.from + (a.to - a.from) * i / (a.steps - 1);
  v.back() = a.to;
  return v;
}

SweepRow evaluate_point(const ChainConfig& config, SweepMethod method, double zero_threshold) {
  SweepRow row;
  row.method = method;
  row.label = std::string(to_string(method));
  try {
    switch (method) {
      case SweepMethod::numeric:
      case SweepMethod::numeric_periodic: {
        ChainConfig c = config;
        if (method == SweepMethod::numeric_periodic) c.boundary = Boundary::periodic;
        row.epsilon = numeric_coupling(c, zero_threshold);
        break;
      }
      case SweepMethod::eq12: {
        const CouplingEstimate e = lattice_prediction(config, CouplingMethod::eq12);
        row.label = std::string(to_string(e.method));
        row.epsilon = e.epsilon;
        row.coherence_length = e.coherence_length;
        break;
      }
      case SweepMethod::longrange:
        row.epsilon = lattice_prediction(config, CouplingMethod::longrange_residue).epsilon;
        break;
      case SweepMethod::ksum: {
        const CouplingEstimate e = lattice_prediction(config, CouplingMethod::sw_ksum);
        row.epsilon = e.epsilon;
        break;
      }
    }
    if (method != SweepMethod::numeric && method != SweepMethod::numeric_periodic && !row.coherence_length) {
      const SegmentParams& c = config.center.base;
      try {
        row.coherence_length = coherence_length(c.mu, c.t, c.delta);
      } catch (const Error&) {
      }
    }
  } catch (const Error& e) {
    row.epsilon = std::numeric_limits<double>::quiet_NaN();
    row.coherence_length.reset();
    row.error = std::string(to_string(e.kind()));
  }
  return row;
}

std::vector<SweepRow> run_sweep(const ChainConfig& base, const SweepSpec& spec, Exec exec) {
  if (spec.methods.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs at least one method");
  const std::vector<double> v1 = linspace(spec.axis);
  const std::vector<double> v2 = spec.second ? linspace(*spec.second) : std::vector<double>{0.0};
  const long n1 = static_cast<long>(v1.size());
  const long n2 = static_cast<long>(v2.size());
  const long nm = static_cast<long>(spec.methods.size());
  const long total = n1 * n2 * nm;

  // Parameter paths are checked up front so a typo fails the whole sweep
  // instead of turning every row into an error row.
  {
    ChainConfig probe = base;
    for (double v : v1) set_parameter(probe, spec.axis.param, v);
    if (spec.second) {
      for (double v : v2) set_parameter(probe, spec.second->param, v);
    }
  }

  std::vector<SweepRow> rows(total);
  auto one = [&](long idx) {
    const long m = idx % nm;
    const long b = (idx / nm) % n2;
    const long a = idx / (nm * n2);
    ChainConfig c = base;
    set_parameter(c, spec.axis.param, v1[a]);
    if (spec.second) set_parameter(c, spec.second->param, v2[b]);
    SweepRow row = evaluate_point(c, spec.methods[m], spec.zero_threshold);
    row.value = v1[a];
    row.value2 = v2[b];
    rows[idx] = std::move(row);
  };
  if (exec == Exec::serial) {
    for (long i = 0; i < total; ++i) one(i);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < total; ++i) one(i);
  }
  return rows;
}

namespace {

std::string field(const std::string& s) {
  return s.find(',') == std::string::npos ? s : '"' + s + '"';
}

}  // namespace

std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "sweep_param,value";
  if (spec.second) out << ",sweep_param2,value2";
  out << ",method,epsilon,coherence_length,error\n";
  for (const SweepRow& r : rows) {
    out << field(spec.axis.param) << ',' << format_double(r.value);
    if (spec.second) out << ',' << field(spec.second->param) << ',' << format_double(r.value2);
    out << ',' << r.label << ',' << format_double(r.epsilon) << ','
        << (r.coherence_length ? format_double(*r.coherence_length) : std::string("nan")) << ',' << r.error
        << '\n';
  }
  return out.str();
}

}  // namespace mbs
