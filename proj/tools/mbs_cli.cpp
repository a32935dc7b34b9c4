// mbs: command-line front end for the Majorana coupling library.
//
// Exit codes: 0 ok, 1 other failure, 2 configuration error, 3 no zero sector,
// 4 norm drift, 5 zero-sector leakage.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mbs/analytic.hpp"
#include "mbs/bdg.hpp"
#include "mbs/chain.hpp"
#include "mbs/csv.hpp"
#include "mbs/dynamics.hpp"
#include "mbs/errors.hpp"
#include "mbs/floquet.hpp"
#include "mbs/qubit.hpp"
#include "mbs/sweep.hpp"

namespace {

using namespace mbs;

struct Globals {
  std::string config;
  std::string out;
  std::string boundary;
  bool seedless = false;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonPositiveLength:
    case ErrorKind::NegativeAmplitude:
    case ErrorKind::InvalidConfig:
    case ErrorKind::ParseError:
    case ErrorKind::SchemaError:
      return 2;
    case ErrorKind::NoZeroSector: return 3;
    case ErrorKind::NormDrift: return 4;
    case ErrorKind::ZeroSectorLeakage: return 5;
    default: return 1;
  }
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

ChainConfig load(const Globals& g) {
  if (g.config.empty()) throw Error(ErrorKind::InvalidArgument, "--config is required");
  ChainConfig c = load_config(g.config);
  if (!g.boundary.empty()) c.boundary = boundary_from_string(g.boundary);
  return c;
}

ValidatedConfig checked(const ChainConfig& c, AmplitudeSigns signs = AmplitudeSigns::nonnegative) {
  ValidatedConfig v = validate(c, signs);
  for (const auto& w : v.warnings()) std::cerr << "warning: " << w << '\n';
  return v;
}

void append_rabi(std::ostream& out, const EvolutionTrace& trace) {
  try {
    const RabiEstimate r = extract_rabi_frequency(trace);
    out << "# omega_rabi," << format_double(r.omega_rabi) << ",confidence," << format_double(r.confidence) << '\n';
  } catch (const LowConfidenceError& e) {
    std::cerr << "warning: " << e.what() << '\n';
    out << "# omega_rabi," << format_double(e.estimate().omega_rabi) << ",confidence,"
        << format_double(e.estimate().confidence) << '\n';
  } catch (const Error& e) {
    std::cerr << "warning: " << e.what() << '\n';
    out << "# omega_rabi,nan,confidence,nan\n";
  }
}

// --- spectrum ---------------------------------------------------------------

struct SpectrumArgs {
  double threshold = 1e-8;
  std::string modes;
};

int run_spectrum(const Globals& g, const SpectrumArgs& a) {
  const ValidatedConfig v = checked(load(g));
  const SpectrumResult s = diagonalize(build_bdg(v), a.threshold);
  Output out(g.out);
  write_spectrum_csv(out.stream(), s);
  const double eps = extract_coupling(s);  // NoZeroSector after the spectrum is out
  const int n = s.sites;
  const int count = s.boundary == Boundary::periodic ? 2 : 4;
  out.stream() << "# epsilon," << format_double(eps <= a.threshold ? 0.0 : eps) << '\n';
  out.stream() << "# zero_sector";
  for (int i = n - count / 2; i < n + count / 2; ++i) out.stream() << ',' << i;
  out.stream() << '\n';
  if (!a.modes.empty()) {
    std::ofstream m(a.modes);
    if (!m) throw Error(ErrorKind::InvalidArgument, "cannot write " + a.modes);
    write_modes_csv(m, majorana_wavefunctions(s), v.first_site());
  }
  return 0;
}

// --- sweep ------------------------------------------------------------------

struct SweepArgs {
  std::string param;
  std::string grid;
  double from = 0.0, to = 1.0;
  int steps = 2;
  std::optional<double> from2, to2;
  std::optional<int> steps2;
  std::string methods = "numeric";
  double threshold = 1e-8;
  bool serial = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int run_sweep_cmd(const Globals& g, const SweepArgs& a) {
  const ChainConfig base = load(g);
  checked(base);
  SweepSpec spec;
  spec.zero_threshold = a.threshold;
  if (!a.grid.empty()) {
    const auto axes = split(a.grid, ',');
    if (axes.size() != 2) throw Error(ErrorKind::InvalidArgument, "--grid takes two parameter paths: p1,p2");
    spec.axis = {axes[0], a.from, a.to, a.steps};
    spec.second = SweepAxis{axes[1], a.from2.value_or(a.from), a.to2.value_or(a.to), a.steps2.value_or(a.steps)};
  } else {
    if (a.param.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs --param or --grid");
    spec.axis = {a.param, a.from, a.to, a.steps};
  }
  spec.methods.clear();
  for (const auto& m : split(a.methods, ',')) spec.methods.push_back(sweep_method_from_string(m));
  const auto rows = run_sweep(base, spec, a.serial ? Exec::serial : Exec::parallel);
  Output out(g.out);
  out.stream() << sweep_csv(spec, rows);
  return 0;
}

// --- evolve / floquet -------------------------------------------------------

struct EvolveArgs {
  double t_max = 100.0;
  double dt = 0.1;
  int site = -1;
  std::optional<double> mu0;
  std::optional<double> omega;
  std::optional<double> j0_target;
  std::string observable = "overlap";
  std::string mode = "direct";
  int record_every = 1;
  bool rabi = false;
};

bool wants_sites(const EvolveArgs& a) {
  if (a.observable == "sites") return true;
  if (a.observable == "overlap") return false;
  throw Error(ErrorKind::InvalidArgument, "--observable must be overlap or sites");
}

EvolutionTrace driven(const ValidatedConfig& v, const DriveParams& d, const EvolveArgs& a) {
  DrivenOptions o;
  o.record_every = a.record_every;
  o.populations = wants_sites(a);
  return evolve_driven(v, d, initial_majorana_state(v, a.site), a.t_max, a.dt, o);
}

int run_evolve(const Globals& g, const EvolveArgs& a) {
  const ValidatedConfig v = checked(load(g));
  EvolutionTrace trace;
  if (a.mu0 || a.omega) {
    if (!a.mu0 || !a.omega) throw Error(ErrorKind::InvalidArgument, "--drive-mu0 and --drive-omega go together");
    trace = driven(v, {*a.mu0, *a.omega}, a);
  } else {
    std::vector<double> times = uniform_times(a.t_max, a.dt);
    std::vector<double> kept;
    for (std::size_t j = 0; j < times.size(); j += a.record_every) kept.push_back(times[j]);
    trace = evolve_static(build_bdg(v), initial_majorana_state(v, a.site), kept, wants_sites(a));
  }
  Output out(g.out);
  write_trace_csv(out.stream(), trace);
  if (a.rabi) append_rabi(out.stream(), trace);
  return 0;
}

int run_floquet(const Globals& g, EvolveArgs a) {
  const ChainConfig base = load(g);
  const ValidatedConfig v = checked(base);
  if (!a.omega) throw Error(ErrorKind::InvalidArgument, "floquet needs --drive-omega");
  if (a.j0_target) {
    if (a.mu0) throw Error(ErrorKind::InvalidArgument, "give either --drive-mu0 or --j0-target");
    a.mu0 = invert_j0(*a.j0_target) * *a.omega;
    std::cerr << "info: mu0 = " << format_double(*a.mu0) << " (mu0/omega = " << format_double(*a.mu0 / *a.omega)
              << ")\n";
  }
  if (!a.mu0) throw Error(ErrorKind::InvalidArgument, "floquet needs --drive-mu0 or --j0-target");
  const DriveParams drive{*a.mu0, *a.omega};
  const EffectiveConfig eff = effective_config(base, drive);
  if (!eff.high_frequency) {
    std::cerr << "warning: omega = " << format_double(drive.omega)
              << " is below 10 x max(mu_c, t_c, delta_c); the effective description may be poor\n";
  }

  EvolutionTrace trace;
  if (a.mode == "direct") {
    trace = driven(v, drive, a);
  } else if (a.mode == "effective") {
    // Same snapped time grid as the direct run so the two overlay.
    const double period = 2.0 * std::numbers::pi / drive.omega;
    if (a.dt > period / 20.0 * (1.0 + 1e-12)) {
      throw Error(ErrorKind::StepTooLarge, "dt exceeds T/20 for the requested drive");
    }
    const double dt = period / std::ceil(period / a.dt - 1e-9);
    std::vector<double> times;
    const std::vector<double> all = uniform_times(a.t_max, dt);
    for (std::size_t j = 0; j < all.size(); j += a.record_every) times.push_back(all[j]);
    const ValidatedConfig ev = eff.validated();
    trace = evolve_static(build_bdg(ev), initial_majorana_state(ev, a.site), times, wants_sites(a));
  } else {
    throw Error(ErrorKind::InvalidArgument, "--mode must be direct or effective");
  }
  Output out(g.out);
  write_trace_csv(out.stream(), trace);
  if (a.rabi) append_rabi(out.stream(), trace);
  return 0;
}

// --- gates ------------------------------------------------------------------

struct GatesArgs {
  std::string protocol;
  double mu_low = 2.5;
  double mu_high = 10.0;
};

int run_gates(const Globals& g, const GatesArgs& a) {
  const ChainConfig base = load(g);
  checked(base);
  const Protocol p = load_protocol(a.protocol);
  const Schedule s = schedule_protocol(p, base, a.mu_low, a.mu_high);
  Output out(g.out);
  try {
    out.stream() << report_json(validate_protocol(s));
  } catch (const LeakageError& e) {
    out.stream() << report_json(e.report());
    throw;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majorana coupling across a trivial Kitaev segment"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "Chain configuration (JSON)");
  app.add_option("--out", g.out, "Output file (default stdout)");
  app.add_option("--boundary", g.boundary, "Override the boundary condition")->check(CLI::IsMember({"open", "periodic"}));
  app.add_flag("--seedless", g.seedless, "Reserved: nothing here uses random numbers")->disable_flag_override();

  SpectrumArgs spec_args;
  auto* spectrum = app.add_subcommand("spectrum", "BdG spectrum, coupling and zero sector");
  spectrum->add_option("--threshold", spec_args.threshold, "Zero-energy threshold");
  spectrum->add_option("--modes", spec_args.modes, "Write Majorana mode weights to this CSV");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Coupling versus one or two parameters");
  sweep->add_option("--param", sweep_args.param, "Parameter path, e.g. center.mu (a+b sets both)");
  sweep->add_option("--grid", sweep_args.grid, "Two parameter paths p1,p2 for a grid sweep");
  sweep->add_option("--from", sweep_args.from)->required();
  sweep->add_option("--to", sweep_args.to)->required();
  sweep->add_option("--steps", sweep_args.steps)->required();
  sweep->add_option("--from2", sweep_args.from2);
  sweep->add_option("--to2", sweep_args.to2);
  sweep->add_option("--steps2", sweep_args.steps2);
  sweep->add_option("--methods", sweep_args.methods, "numeric,numeric_periodic,eq12,longrange,ksum");
  sweep->add_option("--threshold", sweep_args.threshold, "Zero-energy threshold");
  sweep->add_flag("--serial", sweep_args.serial, "Evaluate points on one thread");

  EvolveArgs evolve_args;
  auto add_evolution = [](CLI::App* cmd, EvolveArgs& a) {
    cmd->add_option("--t-max", a.t_max);
    cmd->add_option("--dt", a.dt);
    cmd->add_option("--site", a.site, "Site of the initial Majorana (default -1)");
    cmd->add_option("--drive-mu0", a.mu0);
    cmd->add_option("--drive-omega", a.omega);
    cmd->add_option("--observable", a.observable, "overlap or sites");
    cmd->add_option("--record-every", a.record_every, "Keep every k-th time step");
    cmd->add_flag("--rabi", a.rabi, "Append the Rabi frequency estimate");
  };
  auto* evolve = app.add_subcommand("evolve", "Time evolution of a Majorana state");
  add_evolution(evolve, evolve_args);

  EvolveArgs floquet_args;
  auto* floquet = app.add_subcommand("floquet", "Driven centre: direct or high-frequency effective evolution");
  add_evolution(floquet, floquet_args);
  floquet->add_option("--mode", floquet_args.mode, "direct or effective");
  floquet->add_option("--j0-target", floquet_args.j0_target, "Choose mu0 so that J0(mu0/omega) hits this value");

  GatesArgs gates_args;
  auto* gates = app.add_subcommand("gates", "Validate a square-wave gate protocol on the lattice");
  gates->add_option("--protocol", gates_args.protocol)->required();
  gates->add_option("--mu-low", gates_args.mu_low);
  gates->add_option("--mu-high", gates_args.mu_high);

  int zero_index = 1;
  auto* bessel = app.add_subcommand("bessel-zero", "n-th positive zero of J0");
  bessel->add_option("--n", zero_index)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*spectrum) return run_spectrum(g, spec_args);
    if (*sweep) return run_sweep_cmd(g, sweep_args);
    if (*evolve) return run_evolve(g, evolve_args);
    if (*floquet) return run_floquet(g, floquet_args);
    if (*gates) return run_gates(g, gates_args);
    if (*bessel) {
      Output out(g.out);
      out.stream() << format_double(bessel_j0_zero(zero_index)) << '\n';
      return 0;
    }
  } catch (const ConfigError& e) {
    for (const auto& v : e.violations()) {
      std::cerr << "error: " << to_string(v.kind) << ": " << v.field << ": " << v.message << '\n';
    }
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
