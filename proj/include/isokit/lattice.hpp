#pragma once

#include <array>
#include <cstdint>

#include "isokit/geom.hpp"
#include "isokit/rational.hpp"

namespace isokit {

/// Primitive integer direction, first nonzero component positive.
class LatticeDirection {
 public:
  /// Divides out the gcd and fixes the sign; PreconditionError for 0.
  LatticeDirection(std::int64_t a, std::int64_t b, std::int64_t c);

  const std::array<std::int64_t, 3>& u() const { return u_; }
  std::int64_t operator[](int i) const { return u_[i]; }
  bool operator==(const LatticeDirection&) const = default;
  auto operator<=>(const LatticeDirection&) const = default;

 private:
  std::array<std::int64_t, 3> u_;
};

/// Lattice B Z^3 with B a rational matrix (columns are the basis vectors).
class LatticeBasis {
 public:
  /// SingularLattice if det B == 0.
  explicit LatticeBasis(const Mat3q& B);
  static LatticeBasis integer();

  const Mat3q& matrix() const { return B_; }
  /// |det B|
  const Rational& covolume() const { return covolume_; }

 private:
  Mat3q B_;
  Rational covolume_;
};

/// Exact polytope for lattice work: rational input is returned as is, float
/// input is converted coordinate by coordinate (every double is a rational).
Polytope exact_copy(const Polytope& P);

/// max <u, v> - min <u, v> over the vertices, exact.
Rational exact_width_in_direction(const Polytope& P, const LatticeDirection& u);
double width_in_direction(const Polytope& P, const LatticeDirection& u);

struct LatticeWidth {
  Rational omega;
  LatticeDirection direction{1, 0, 0};
  /// Integer box searched, |u_i| <= extent[i].
  std::array<std::int64_t, 3> extent{};
  std::size_t candidates = 0;  // primitive canonical directions evaluated
};

/// Exact minimum of the width over nonzero integer directions. Candidates
/// are confined to the integer box around the ellipsoid u^T M^{-1} u <= 3 W0^2
/// where M is the minimal ellipsoid of P - P and W0 the smallest coordinate
/// width: since P - P contains that ellipsoid shrunk by sqrt 3, no direction
/// outside can beat W0. Among minimizers the lexicographically largest
/// direction wins, so the unit cube reports (1, 0, 0).
LatticeWidth lattice_width(const Polytope& P);

/// omega >= 1. For float-mode input this throws ModeError when
/// |omega - 1| < 1e-9, where the answer depends on rounding of the input.
bool is_nonseparable_unit_lattice(const Polytope& P);

/// Vol(P) / d(lattice).
double density(const Polytope& P, const LatticeBasis& B);
Rational exact_density(const Polytope& P, const LatticeBasis& B);

struct WidthVolumeReport {
  Rational omega;
  LatticeDirection direction{1, 0, 0};
  Rational volume;
  Rational bound;  // omega^3 / 12
  Rational slack;  // volume - bound
  bool satisfied = true;
  bool nonseparable = false;
};

/// Vol(P) >= omega(P)^3 / 12, evaluated exactly.
WidthVolumeReport verify_width_volume_corollary(const Polytope& P);

/// For Lambda = Z^3 and the normalizer T of P:
///   Vol(P) >= (sqrt 2 / 12) Diam(TP)^3 / |det T|, and, when P is
///   non-separable, that middle term is at least 1/12.
struct CorollaryChain {
  double volume = 0.0;
  double middle = 0.0;
  bool nonseparable = false;
  bool first_holds = false;   // volume >= middle - 1e-6
  bool second_holds = false;  // middle >= 1/12 - 1e-6 (checked only when nonseparable)
};
CorollaryChain corollary_chain(const Polytope& P, double tol = 1e-9);

}  // namespace isokit
