#pragma once
// Plain-text emitters. Every number goes through format_double so repeated
// runs are byte-identical.

#include <ostream>
#include <string>

#include "mbs/bdg.hpp"
#include "mbs/dynamics.hpp"

namespace mbs {

/// %.12g; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double x);
/// x rounded to 12 significant digits.
double round12(double x);

/// "index,eigenvalue"
void write_spectrum_csv(std::ostream& out, const SpectrumResult& s);
/// "site,weight,mode_id" with signed site labels (left segment negative).
void write_modes_csv(std::ostream& out, const std::vector<MajoranaMode>& modes, int first_site);
/// "time,overlap,norm[,site_-N1,...,site_N2]"
void write_trace_csv(std::ostream& out, const EvolutionTrace& trace);

}  // namespace mbs
