#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dispersia {

struct Provenance {
  enum class Kind { fibonacci, frolov, explicit_set };
  Kind kind = Kind::explicit_set;
  int n = 0;     // fibonacci index
  int d = 0;     // frolov dimension
  double a = 0;  // frolov dilation
  std::string to_string() const;
  static Provenance parse(const std::string& tag);
};

// Finite point set in the half-open unit cube [0,1)^d.
struct PointSet {
  int d = 0;
  std::vector<std::vector<double>> points;
  Provenance provenance;
  std::size_t size() const { return points.size(); }
};

// Lattice generator for the norm-form construction: row j of A is
// (1, xi_j, xi_j^2, ..., xi_j^{d-1}) where the xi_j are the real roots of
// prod_{j=1..d}(x - (2j-1)) - 1.  The product of the linear forms
// L_j(m) = (A m)_j is then a nonzero integer for every integer m != 0.
struct FrolovLattice {
  int d = 0;
  std::vector<std::vector<double>> A;
  std::vector<std::vector<double>> Ainv_T;  // (A^{-1})^T
  double detA = 0;
  double a = 0;  // dilation; 0 = unset
  std::vector<double> roots;

  // value of prod_j L_j(m); an integer up to roundoff
  double norm_form(const std::vector<long long>& m) const;
};

struct FrequencySet {
  enum class Shape { hyperbolic, rectangle, shell, lattice_L };
  Shape shape = Shape::hyperbolic;
  int d = 0;
  std::vector<long long> params;
  std::vector<std::vector<long long>> vectors;  // sorted lexicographically
};

// Integer dual-lattice vectors m together with their images y = a*A*m
// falling inside the dyadic shell rho(s).
struct DualShell {
  std::vector<int> s;
  std::vector<std::vector<long long>> m;
  std::vector<std::vector<double>> y;
  std::size_t size() const { return m.size(); }
};

// Fibonacci numbers with b_0 = b_1 = 1.  Throws std::overflow_error for n > 90.
long long fibonacci_number(int n);

// The b_n points (mu/b_n mod 1, (mu*b_{n-1} mod b_n)/b_n), mu = 1..b_n.
// Coordinates are exact multiples of 1/b_n computed in integer arithmetic.
PointSet fibonacci_set(int n);

// Norm-form lattice generator for 2 <= d <= 5 (a left unset).
FrolovLattice frolov_matrix(int d);

// All points (A^{-1})^T m / a inside [0,1)^d, sorted lexicographically.
// extra_padding widens the enumeration box (completeness checks).
PointSet frolov_set(const FrolovLattice& lat, double a, int extra_padding = 0);

// Gamma(N): prod_j max(|k_j|,1) <= N.
FrequencySet hyperbolic_cross(long long N, int d);

// R(s): |k_j| < 2^{s_j}.
FrequencySet dyadic_rectangle(const std::vector<int>& s);

// rho(s): [2^{s_j - 1}] <= |k_j| < 2^{s_j}.
FrequencySet dyadic_shell(const std::vector<int>& s);

// L(n) intersected with the window |k_j| <= window:
// k_1 + b_{n-1} k_2 = 0 (mod b_n).
FrequencySet fibonacci_dual_lattice(int n, long long window, bool include_zero);

DualShell dual_lattice_in_shell(const FrolovLattice& lat, double a,
                                const std::vector<int>& s);

}  // namespace dispersia
