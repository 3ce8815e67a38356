#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "radiant/numerics.hpp"

namespace radiant {

/// Radial coefficient p(r) >= 0 together with what is known about its tail.
struct RadialWeight {
  ScalarFn fn;
  TailModel tail;
  std::string spec;

  double operator()(double r) const { return fn(r); }

  static RadialWeight constant(double value = 1.0);
  /// e^{-rate r}
  static RadialWeight exponential(double rate);
  /// (1+r)^exponent
  static RadialWeight power(double exponent);
  /// Tabulated on [r0, r1]; beyond r1 the last value is held.
  static RadialWeight table(RadialFunction values);
  /// "constant[:v]", "exp:rate", "power:exponent". Tables are built by the caller.
  static RadialWeight parse(const std::string& spec);
};

struct Psi {
  ScalarFn fn;
  std::string spec;
  /// Exponent when psi is t^gamma (linear: 1, sqrt: 0.5, zero: 0); empty for tables.
  std::optional<double> gamma;

  double operator()(double t) const { return fn(t); }

  static Psi linear();
  static Psi sqrt();
  static Psi power(double gamma);
  static Psi zero();
  /// Tabulated on [0, t1], zero for t <= 0 and linearly extrapolated past t1.
  static Psi table(RadialFunction values);
  /// "linear", "sqrt", "power:gamma", "zero".
  static Psi parse(const std::string& spec);
};

struct SublinearFlag {
  bool holds = false;
  double c = 1.0;
};

struct HypothesisFlags {
  bool h1_kato_local = false;
  bool h2_increasing = false;
  bool h3_zero_for_nonpositive = false;
  bool h4_concave = false;
  SublinearFlag h1prime;

  static HypothesisFlags all_sublinear(double c = 1.0) { return {true, true, true, true, {true, c}}; }
};

using PhiFn = std::function<double(double r, double t)>;

class Nonlinearity {
 public:
  struct Separable {
    RadialWeight p;
    Psi psi;
  };
  struct General {
    PhiFn phi;
    TailModel tail;        // tail of r -> phi(r, c)
    ScalarFn bound;        // p-type majorant for the sublinear check; may be empty
    std::string spec;
  };

  /// Flags are inferred: H1 from local boundedness of the built-in weights,
  /// H2/H3 always, H4 and H1' iff gamma <= 1.
  static Nonlinearity separable(RadialWeight p, Psi psi);
  static Nonlinearity separable(RadialWeight p, Psi psi, HypothesisFlags flags);
  static Nonlinearity general(PhiFn phi, HypothesisFlags flags, TailModel tail = {}, ScalarFn bound = {},
                              std::string spec = "general");
  static Nonlinearity zero();

  double operator()(double r, double t) const;
  /// Majorant p used by the H1' check: p for separable, the declared bound or phi(r,1) otherwise.
  double weight(double r) const;

  bool is_separable() const { return std::holds_alternative<Separable>(kind_); }
  const Separable& as_separable() const { return std::get<Separable>(kind_); }
  const General& as_general() const { return std::get<General>(kind_); }
  const HypothesisFlags& flags() const { return flags_; }
  Nonlinearity with_flags(HypothesisFlags flags) const;
  /// Tail of r -> phi(r, c), as declared.
  TailModel tail() const;
  std::string spec() const;

 private:
  std::variant<Separable, General> kind_;
  HypothesisFlags flags_;

  Nonlinearity(std::variant<Separable, General> kind, HypothesisFlags flags)
      : kind_(std::move(kind)), flags_(flags) {}
};

}  // namespace radiant
