#pragma once

#include <string>
#include <variant>

#include "radiant/error.hpp"

namespace radiant {

struct Euclidean {
  int d = 3;
};

/// Harmonic NA group with p = dim v, q = dim z. Only the radial structure is
/// modelled, so any p >= 1, q >= 0 with p + q >= 2 is accepted.
struct DamekRicci {
  int p = 2;
  int q = 1;
};

class Space {
 public:
  Space(Euclidean e);
  Space(DamekRicci dr);

  static Space euclidean(int d) { return Space(Euclidean{d}); }
  static Space damek_ricci(int p, int q) { return Space(DamekRicci{p, q}); }
  /// "euclid:d" or "dr:p,q".
  static Space parse(const std::string& spec);

  bool is_euclidean() const { return std::holds_alternative<Euclidean>(kind_); }
  bool is_damek_ricci() const { return std::holds_alternative<DamekRicci>(kind_); }
  const Euclidean& euclid() const { return std::get<Euclidean>(kind_); }
  const DamekRicci& dr() const { return std::get<DamekRicci>(kind_); }

  /// Topological dimension: d, or p+q+1.
  int n() const;
  /// Homogeneous dimension p/2 + q; zero for Euclidean spaces.
  double Q() const;

  std::string spec() const;
  bool operator==(const Space& other) const;

 private:
  std::variant<Euclidean, DamekRicci> kind_;
};

double volume_density(const Space& space, double r);
double log_volume_density(const Space& space, double r);

/// First-order coefficient of the radial Laplacian, A'(r)/A(r).
double radial_drift(const Space& space, double r);
/// Damek-Ricci drift in the p/2 coth(r/2) + q coth(r) form; Euclidean falls back to radial_drift.
double radial_drift_alt(const Space& space, double r);

/// Area of the unit sphere in R^n.
double sphere_area(const Space& space);
double sphere_area(int n);

struct HeatBoundParams {
  Space space;
  double t;
  double r;
};

/// Comparison function t^{-3/2}(1+r)(1+(1+r)/t)^{(n-3)/2} exp(-Q^2 t/4 - Q r/2 - r^2/(4t))
/// bracketing the Damek-Ricci heat kernel up to constants.
double heat_kernel_bound(const HeatBoundParams& params);
double log_heat_kernel_bound(const HeatBoundParams& params);

}  // namespace radiant
