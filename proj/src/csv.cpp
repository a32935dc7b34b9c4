#include "mbs/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace mbs {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_double(x).c_str(), nullptr);
}

void write_spectrum_csv(std::ostream& out, const SpectrumResult& s) {
  out << "index,eigenvalue\n";
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    out << i << ',' << format_double(s.eigenvalues(i)) << '\n';
  }
}

void write_modes_csv(std::ostream& out, const std::vector<MajoranaMode>& modes, int first_site) {
  out << "site,weight,mode_id\n";
  for (std::size_t m = 0; m < modes.size(); ++m) {
    for (std::size_t i = 0; i < modes[m].site_weights.size(); ++i) {
      out << first_site + static_cast<int>(i) << ',' << format_double(modes[m].site_weights[i]) << ',' << m << '\n';
    }
  }
}

void write_trace_csv(std::ostream& out, const EvolutionTrace& trace) {
  out << "time,overlap,norm";
  const Eigen::Index sites = trace.site_populations.cols();
  for (Eigen::Index i = 0; i < sites; ++i) out << ",site_" << trace.first_site + i;
  out << '\n';
  for (std::size_t j = 0; j < trace.times.size(); ++j) {
    out << format_double(trace.times[j]) << ',' << format_double(trace.overlap[j]) << ','
        << format_double(trace.norms[j]);
    for (Eigen::Index i = 0; i < sites; ++i) out << ',' << format_double(trace.site_populations(j, i));
    out << '\n';
  }
}

}  // namespace mbs
