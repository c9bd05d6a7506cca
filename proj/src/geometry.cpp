#include "dispersia/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "dispersia/errors.hpp"

namespace dispersia {

std::string Provenance::to_string() const {
  char buf[64];
  switch (kind) {
    case Kind::fibonacci:
      std::snprintf(buf, sizeof(buf), "fibonacci(%d)", n);
      return buf;
    case Kind::frolov:
      std::snprintf(buf, sizeof(buf), "frolov(%d,%.17g)", d, a);
      return buf;
    default:
      return "explicit";
  }
}

Provenance Provenance::parse(const std::string& tag) {
  Provenance p;
  if (tag.rfind("fibonacci(", 0) == 0) {
    p.kind = Kind::fibonacci;
    p.n = std::atoi(tag.c_str() + 10);
  } else if (tag.rfind("frolov(", 0) == 0) {
    p.kind = Kind::frolov;
    std::sscanf(tag.c_str(), "frolov(%d,%lg)", &p.d, &p.a);
  }
  return p;
}

long long fibonacci_number(int n) {
  if (n < 0) throw std::invalid_argument("fibonacci_number: n must be >= 0");
  if (n > 90) throw std::overflow_error("fibonacci_number: b_n exceeds 64 bits for n > 90");
  long long a = 1, b = 1;  // b_0, b_1
  for (int i = 2; i <= n; ++i) {
    long long c = a + b;
    a = b;
    b = c;
  }
  return b;
}

namespace {

long long mulmod(long long x, long long y, long long mod) {
  return static_cast<long long>(static_cast<__int128>(x) * y % mod);
}

}  // namespace

PointSet fibonacci_set(int n) {
  if (n < 2) throw std::invalid_argument("fibonacci_set: n must be >= 2");
  const long long bn = fibonacci_number(n);
  const long long bn1 = fibonacci_number(n - 1);
  PointSet T;
  T.d = 2;
  T.provenance.kind = Provenance::Kind::fibonacci;
  T.provenance.n = n;
  T.points.reserve(static_cast<std::size_t>(bn));
  for (long long mu = 1; mu <= bn; ++mu) {
    long long x = mu % bn;
    long long y = mulmod(mu, bn1, bn);
    T.points.push_back({static_cast<double>(x) / static_cast<double>(bn),
                        static_cast<double>(y) / static_cast<double>(bn)});
  }
  return T;
}

namespace {

// coefficients of prod_{j=1..d}(x - (2j-1)) - 1, lowest degree first
std::vector<double> frolov_poly(int d) {
  std::vector<double> c{1.0};
  for (int j = 1; j <= d; ++j) {
    std::vector<double> next(c.size() + 1, 0.0);
    double root = 2.0 * j - 1.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= root * c[i];
    }
    c = std::move(next);
  }
  c[0] -= 1.0;
  return c;
}

double poly_eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

double poly_deriv_eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 1;) v = v * x + static_cast<double>(i) * c[i];
  return v;
}

// Gauss-Jordan with partial pivoting; fine for d <= 5.
std::vector<std::vector<double>> invert(std::vector<std::vector<double>> M) {
  const int n = static_cast<int>(M.size());
  std::vector<std::vector<double>> I(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) I[i][i] = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    std::swap(M[piv], M[col]);
    std::swap(I[piv], I[col]);
    if (M[col][col] == 0.0) throw std::runtime_error("invert: singular matrix");
    double inv = 1.0 / M[col][col];
    for (int c = 0; c < n; ++c) {
      M[col][c] *= inv;
      I[col][c] *= inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = M[r][col];
      if (f == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        M[r][c] -= f * M[col][c];
        I[r][c] -= f * I[col][c];
      }
    }
  }
  return I;
}

}  // namespace

double FrolovLattice::norm_form(const std::vector<long long>& m) const {
  double prod = 1.0;
  for (int j = 0; j < d; ++j) {
    double lj = 0.0;
    for (int i = 0; i < d; ++i) lj += A[j][i] * static_cast<double>(m[i]);
    prod *= lj;
  }
  return prod;
}

FrolovLattice frolov_matrix(int d) {
  if (d < 2 || d > 5) throw std::invalid_argument("frolov_matrix: 2 <= d <= 5");
  const std::vector<double> P = frolov_poly(d);

  // The d simple real roots sit near the odd integers 1,3,...,2d-1.
  // Bracket by sign changes on a fine grid, then bisect and polish.
  std::vector<double> roots;
  double lo = -1.0, hi = 2.0 * d + 1.0;
  double prev_x = lo, prev_v = poly_eval(P, lo);
  const int grid = 4096;
  for (int g = 1; g <= grid && static_cast<int>(roots.size()) < d; ++g) {
    double x = lo + (hi - lo) * g / grid;
    double v = poly_eval(P, x);
    if (v == 0.0) {
      roots.push_back(x);
    } else if (prev_v * v < 0.0) {
      double a = prev_x, b = x;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b);
        double vm = poly_eval(P, mid);
        if (vm == 0.0) {
          a = b = mid;
          break;
        }
        if (vm * prev_v < 0.0)
          b = mid;
        else
          a = mid;
      }
      double r = 0.5 * (a + b);
      for (int it = 0; it < 50; ++it) {
        double f = poly_eval(P, r);
        double fp = poly_deriv_eval(P, r);
        if (fp == 0.0) break;
        double step = f / fp;
        r -= step;
        if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(r))) break;
      }
      roots.push_back(r);
    }
    prev_x = x;
    prev_v = v;
  }
  if (static_cast<int>(roots.size()) != d)
    throw std::runtime_error("frolov_matrix: failed to isolate all real roots");
  std::sort(roots.begin(), roots.end());
  for (double r : roots) {
    if (std::abs(poly_eval(P, r)) > 1e-13 * std::max(1.0, std::abs(poly_deriv_eval(P, r))))
      throw std::runtime_error("frolov_matrix: root residual above tolerance");
  }

  FrolovLattice lat;
  lat.d = d;
  lat.roots = roots;
  lat.A.assign(d, std::vector<double>(d, 0.0));
  for (int j = 0; j < d; ++j) {
    double p = 1.0;
    for (int i = 0; i < d; ++i) {
      lat.A[j][i] = p;
      p *= roots[j];
    }
  }
  double det = 1.0;  // Vandermonde
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) det *= roots[j] - roots[i];
  lat.detA = det;

  auto Ainv = invert(lat.A);
  lat.Ainv_T.assign(d, std::vector<double>(d, 0.0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) lat.Ainv_T[i][j] = Ainv[j][i];

  // construction sanity: A * A^{-1} = I, and the norm form is a nonzero
  // integer on a few small vectors
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) s += lat.A[i][k] * Ainv[k][j];
      if (std::abs(s - (i == j ? 1.0 : 0.0)) > 1e-12)
        throw std::runtime_error("frolov_matrix: inverse check failed");
    }
  }
  std::vector<long long> m(d, 0);
  for (int i = 0; i < d; ++i) {
    for (long long val : {1LL, -1LL, 2LL}) {
      m.assign(d, 0);
      m[i] = val;
      if (std::abs(lat.norm_form(m)) < 1.0 - 1e-9)
        throw std::runtime_error("frolov_matrix: norm-form check failed");
    }
  }
  return lat;
}

PointSet frolov_set(const FrolovLattice& lat, double a, int extra_padding) {
  if (!(a > 1.0)) throw std::invalid_argument("frolov_set: a must be > 1");
  if (a > 50.0) throw budget_error("frolov_set: a above enumeration budget (50)");
  const int d = lat.d;

  // m = a * A^T y over y in [0,1]^d gives the exact integer box; pad for
  // floating-point safety.
  std::vector<long long> mlo(d), mhi(d);
  double count = 1.0;
  for (int i = 0; i < d; ++i) {
    double lo = 0.0, hi = 0.0;
    for (int j = 0; j < d; ++j) {
      double c = a * lat.A[j][i];
      lo += std::min(c, 0.0);
      hi += std::max(c, 0.0);
    }
    int pad = 1 + extra_padding;
    mlo[i] = static_cast<long long>(std::floor(lo)) - pad;
    mhi[i] = static_cast<long long>(std::ceil(hi)) + pad;
    count *= static_cast<double>(mhi[i] - mlo[i] + 1);
  }
  if (count > 1e9) throw budget_error("frolov_set: enumeration box exceeds 1e9 candidates");

  PointSet T;
  T.d = d;
  T.provenance.kind = Provenance::Kind::frolov;
  T.provenance.d = d;
  T.provenance.a = a;

  std::vector<long long> m(d, 0);
  std::vector<double> y(d, 0.0);
  auto recurse = [&](auto&& self, int axis) -> void {
    if (axis == d) {
      for (int i = 0; i < d; ++i) {
        double yi = 0.0;
        for (int j = 0; j < d; ++j) yi += lat.Ainv_T[i][j] * static_cast<double>(m[j]);
        y[i] = yi / a;
        if (!(y[i] >= 0.0 && y[i] < 1.0)) return;
      }
      T.points.push_back(y);
      return;
    }
    for (long long v = mlo[axis]; v <= mhi[axis]; ++v) {
      m[axis] = v;
      self(self, axis + 1);
    }
  };
  recurse(recurse, 0);
  std::sort(T.points.begin(), T.points.end());
  return T;
}

namespace {

void sort_vectors(FrequencySet& F) {
  std::sort(F.vectors.begin(), F.vectors.end());
}

}  // namespace

FrequencySet hyperbolic_cross(long long N, int d) {
  if (N < 1 || d < 1) throw std::invalid_argument("hyperbolic_cross: N >= 1, d >= 1");
  FrequencySet F;
  F.shape = FrequencySet::Shape::hyperbolic;
  F.d = d;
  F.params = {N};
  // rough size guard: |Gamma(N)| <= (2N+1) * (4 ln(2N))^{d-1} * N in the worst case;
  // use the cheap overestimate (2N+1)^d only for small d
  double overestimate = std::pow(2.0 * static_cast<double>(N) + 1.0, std::min(d, 2)) *
                        std::pow(4.0 * std::log2(2.0 * static_cast<double>(N) + 2.0),
                                 std::max(d - 2, 0));
  if (overestimate > 1e8) throw budget_error("hyperbolic_cross: budget exceeded");

  std::vector<long long> k(d, 0);
  auto recurse = [&](auto&& self, int axis, long long prod) -> void {
    if (axis == d) {
      F.vectors.push_back(k);
      return;
    }
    for (long long v = -N; v <= N; ++v) {
      long long p = prod * std::max(std::llabs(v), 1LL);
      if (p > N) continue;
      k[axis] = v;
      self(self, axis + 1, p);
    }
  };
  recurse(recurse, 0, 1);
  sort_vectors(F);
  if (static_cast<double>(F.vectors.size()) > 1e8)
    throw budget_error("hyperbolic_cross: budget exceeded");
  return F;
}

FrequencySet dyadic_rectangle(const std::vector<int>& s) {
  FrequencySet F;
  F.shape = FrequencySet::Shape::rectangle;
  F.d = static_cast<int>(s.size());
  double count = 1.0;
  for (int sj : s) {
    if (sj < 0 || sj > 30) throw std::invalid_argument("dyadic_rectangle: 0 <= s_j <= 30");
    F.params.push_back(sj);
    count *= 2.0 * ((1LL << sj) - 1) + 1.0;
  }
  if (count > 1e8) throw budget_error("dyadic_rectangle: budget exceeded");
  std::vector<long long> k(F.d, 0);
  auto recurse = [&](auto&& self, int axis) -> void {
    if (axis == F.d) {
      F.vectors.push_back(k);
      return;
    }
    long long bound = (1LL << s[axis]) - 1;
    for (long long v = -bound; v <= bound; ++v) {
      k[axis] = v;
      self(self, axis + 1);
    }
  };
  recurse(recurse, 0);
  sort_vectors(F);
  return F;
}

FrequencySet dyadic_shell(const std::vector<int>& s) {
  FrequencySet F;
  F.shape = FrequencySet::Shape::shell;
  F.d = static_cast<int>(s.size());
  double count = 1.0;
  for (int sj : s) {
    if (sj < 0 || sj > 30) throw std::invalid_argument("dyadic_shell: 0 <= s_j <= 30");
    F.params.push_back(sj);
    count *= static_cast<double>(1LL << sj);
  }
  if (count > 1e8) throw budget_error("dyadic_shell: budget exceeded");
  std::vector<long long> k(F.d, 0);
  auto recurse = [&](auto&& self, int axis) -> void {
    if (axis == F.d) {
      F.vectors.push_back(k);
      return;
    }
    long long hi = (1LL << s[axis]) - 1;              // |k| < 2^{s}
    long long lo = s[axis] == 0 ? 0 : 1LL << (s[axis] - 1);  // [2^{s-1}] <= |k|
    for (long long v = -hi; v <= hi; ++v) {
      if (std::llabs(v) < lo) continue;
      k[axis] = v;
      self(self, axis + 1);
    }
  };
  recurse(recurse, 0);
  sort_vectors(F);
  return F;
}

FrequencySet fibonacci_dual_lattice(int n, long long window, bool include_zero) {
  if (window < 0) throw std::invalid_argument("fibonacci_dual_lattice: window >= 0");
  const long long bn = fibonacci_number(n);
  const long long bn1 = fibonacci_number(n - 1);
  if (static_cast<double>(window) * static_cast<double>(window) > 2.5e7 &&
      4.0 * static_cast<double>(window) * (static_cast<double>(window) / bn + 1.0) > 1e8)
    throw budget_error("fibonacci_dual_lattice: budget exceeded");

  FrequencySet F;
  F.shape = FrequencySet::Shape::lattice_L;
  F.d = 2;
  F.params = {n, window};
  for (long long k2 = -window; k2 <= window; ++k2) {
    // k1 = -b_{n-1} k2 (mod b_n)
    long long r = -mulmod(((k2 % bn) + bn) % bn, bn1 % bn, bn);
    r = ((r % bn) + bn) % bn;
    long long start = r - bn * ((r + window) / bn);
    for (long long k1 = start; k1 <= window; k1 += bn) {
      if (k1 < -window) continue;
      if (!include_zero && k1 == 0 && k2 == 0) continue;
      F.vectors.push_back({k1, k2});
    }
  }
  sort_vectors(F);
  return F;
}

DualShell dual_lattice_in_shell(const FrolovLattice& lat, double a,
                                const std::vector<int>& s) {
  const int d = lat.d;
  if (static_cast<int>(s.size()) != d)
    throw std::invalid_argument("dual_lattice_in_shell: dimension mismatch");
  int v = 0;
  for (int sj : s) v += sj;
  if (v > 40) throw budget_error("dual_lattice_in_shell: ||s||_1 above budget (40)");

  // shell bounds in y-space
  std::vector<double> ylo(d), yhi(d);
  for (int j = 0; j < d; ++j) {
    yhi[j] = std::pow(2.0, s[j]);
    ylo[j] = s[j] == 0 ? 0.0 : std::pow(2.0, s[j] - 1);
  }

  // per-axis outer bound |m_i| <= R_i from m = (a A)^{-1} y over the
  // bounding box |y_j| <= 2^{s_j}, padded by the row l1 norm
  std::vector<std::vector<double>> AinvT_over_a(d, std::vector<double>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) AinvT_over_a[i][j] = lat.Ainv_T[i][j] / a;
  // (aA)^{-1} = A^{-1}/a; row i of A^{-1} is column i of Ainv_T
  std::vector<double> R(d, 0.0);
  for (int i = 0; i < d; ++i) {
    double rownorm = 0.0;
    for (int j = 0; j < d; ++j) rownorm += std::abs(AinvT_over_a[j][i]) * yhi[j];
    R[i] = rownorm + std::ceil(rownorm == 0.0 ? 1.0 : 0.0) + std::ceil(
               [&] {
                 double l1 = 0.0;
                 for (int j = 0; j < d; ++j) l1 += std::abs(AinvT_over_a[j][i]);
                 return l1;
               }());
  }

  DualShell out;
  out.s = s;
  std::vector<long long> m(d, 0);
  std::vector<double> partial(d, 0.0);  // partial[j] = a * sum_{t<axis} A[j][t] m_t

  // Enumerate axis by axis.  For each y-constraint j the unfixed tail is
  // bounded through the outer ranges R, which yields an interval for the
  // next coordinate; the last level is exact.
  auto recurse = [&](auto&& self, int axis) -> void {
    if (axis == d) {
      bool inside = true;
      std::vector<double> y(d);
      for (int j = 0; j < d; ++j) {
        y[j] = partial[j];
        double ab = std::abs(y[j]);
        if (!(ab >= ylo[j] && ab < yhi[j])) {
          inside = false;
          break;
        }
      }
      if (inside) {
        out.m.push_back(m);
        out.y.push_back(y);
      }
      return;
    }
    double lo = -R[axis] - 1.0, hi = R[axis] + 1.0;
    for (int j = 0; j < d; ++j) {
      double c = a * lat.A[j][axis];
      if (c == 0.0) continue;
      double tail = 0.0;
      for (int t = axis + 1; t < d; ++t) tail += std::abs(a * lat.A[j][t]) * (R[t] + 1.0);
      // need |partial_j + c*m_axis + tail_term| <= yhi_j  with |tail_term| <= tail
      double blo = (-yhi[j] - tail - partial[j]) / c;
      double bhi = (yhi[j] + tail - partial[j]) / c;
      if (blo > bhi) std::swap(blo, bhi);
      lo = std::max(lo, blo);
      hi = std::min(hi, bhi);
    }
    long long from = static_cast<long long>(std::ceil(lo - 1e-9));
    long long to = static_cast<long long>(std::floor(hi + 1e-9));
    for (long long val = from; val <= to; ++val) {
      m[axis] = val;
      for (int j = 0; j < d; ++j) partial[j] += a * lat.A[j][axis] * static_cast<double>(val);
      self(self, axis + 1);
      for (int j = 0; j < d; ++j) partial[j] -= a * lat.A[j][axis] * static_cast<double>(val);
    }
  };
  recurse(recurse, 0);

  // deterministic order
  std::vector<std::size_t> idx(out.m.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t l, std::size_t r) { return out.m[l] < out.m[r]; });
  DualShell sorted;
  sorted.s = s;
  for (std::size_t i : idx) {
    sorted.m.push_back(out.m[i]);
    sorted.y.push_back(out.y[i]);
  }
  return sorted;
}

}  // namespace dispersia
