#pragma once
// Three-segment Kitaev chain: a topological left segment, a (trivial)
// central segment and a topological right segment, joined by junction bonds.
//
// Site labels follow the physical layout: the left segment occupies
// -N1..-1, the centre 0..N and the right segment N+1..N2. Internally sites
// are addressed through the order-preserving map g(n) = n + N1 onto
// 0..site_count()-1. All energies are in units of the central
// nearest-neighbour hopping; hbar = 1.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mbs {

struct SegmentParams {
  double mu = 0.0;
  double t = 0.0;
  double delta = 0.0;
  int length = 0;

  bool operator==(const SegmentParams&) const = default;
};

/// Central segment; t2/delta2 add next-nearest-neighbour hopping and pairing.
struct CenterParams {
  SegmentParams base;
  double t2 = 0.0;
  double delta2 = 0.0;

  bool operator==(const CenterParams&) const = default;
};

/// Bonds joining the segments. t1/delta1 couple sites -1 and 0, t2/delta2
/// couple N and N+1; t1p couples -1 to 1 and t2p couples N-1 to N+1.
struct JunctionParams {
  double t1 = 0.0;
  double t2 = 0.0;
  double t1p = 0.0;
  double t2p = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;

  bool operator==(const JunctionParams&) const = default;
};

enum class Boundary { open, periodic };

std::string_view to_string(Boundary b);
Boundary boundary_from_string(std::string_view s);

struct ChainConfig {
  SegmentParams left;
  CenterParams center;
  SegmentParams right;
  JunctionParams junction;
  Boundary boundary = Boundary::open;

  bool operator==(const ChainConfig&) const = default;
};

/// Periodic drive mu0 cos(omega t) on every central site.
struct DriveParams {
  double mu0 = 0.0;
  double omega = 1.0;
};

/// mu = 0 and delta = t: Majorana end modes sit on single sites.
bool at_sweet_spot(const SegmentParams& s, double tol = 1e-12);

/// Amplitude sign policy. The Floquet-renormalised configuration is the one
/// place where Bessel factors can flip the sign of an amplitude.
enum class AmplitudeSigns { nonnegative, signed_allowed };

class ValidatedConfig {
 public:
  const ChainConfig& config() const noexcept { return config_; }

  int site_count() const noexcept { return site_count_; }
  int left_length() const noexcept { return config_.left.length; }
  /// Number of central bonds; the centre spans sites 0..N.
  int center_bonds() const noexcept { return config_.center.base.length - 1; }
  int first_site() const noexcept { return -config_.left.length; }
  int last_site() const noexcept { return center_bonds() + config_.right.length; }

  bool contains(int site) const noexcept { return site >= first_site() && site <= last_site(); }
  /// g(n) = n + N1. Throws SiteOutOfRange outside -N1..N2.
  int index_of(int site) const;
  int site_of(int index) const noexcept { return index - config_.left.length; }

  bool left_at_sweet_spot() const noexcept { return left_sweet_; }
  bool right_at_sweet_spot() const noexcept { return right_sweet_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  friend ValidatedConfig validate(const ChainConfig&, AmplitudeSigns);

  ChainConfig config_;
  int site_count_ = 0;
  bool left_sweet_ = false;
  bool right_sweet_ = false;
  std::vector<std::string> warnings_;
};

/// Throws ConfigError listing every violation. Off-sweet-spot outer segments
/// only produce warnings.
ValidatedConfig validate(const ChainConfig& config,
                         AmplitudeSigns signs = AmplitudeSigns::nonnegative);

/// JSON ingestion. Missing optional fields take their defaults
/// (t1p = t2p = delta1 = delta2 = 0, center.t2 = center.delta2 = 0,
/// boundary = open). Throws ParseError / SchemaError.
ChainConfig parse_config(std::string_view json_text);
ChainConfig load_config(const std::filesystem::path& path);
std::string dump_config(const ChainConfig& config);
void save_config(const ChainConfig& config, const std::filesystem::path& path);

}  // namespace mbs
