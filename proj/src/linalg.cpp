#include "ojaregret/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ojaregret/errors.hpp"

namespace ojaregret {

namespace {

constexpr double kOrthoTol = 1e-12;
constexpr double kUnitTol = 1e-12;

void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw ValidationError(std::string(what) + " contains a non-finite entry");
    }
  }
}

}  // namespace

SymmetricMatrix::SymmetricMatrix(std::size_t dim, std::vector<double> row_major)
    : dim_(dim), entries_(std::move(row_major)) {
  if (dim_ == 0) throw DimensionError("SymmetricMatrix requires dim >= 1");
  if (entries_.size() != dim_ * dim_) {
    throw DimensionError("SymmetricMatrix entry count does not match dim*dim");
  }
  require_finite(entries_, "SymmetricMatrix");
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const double s = 0.5 * (entries_[i * dim_ + j] + entries_[j * dim_ + i]);
      entries_[i * dim_ + j] = s;
      entries_[j * dim_ + i] = s;
    }
  }
}

SymmetricMatrix SymmetricMatrix::zero(std::size_t n) {
  return SymmetricMatrix(n, std::vector<double>(n * n, 0.0));
}

SymmetricMatrix SymmetricMatrix::identity(std::size_t n) {
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return SymmetricMatrix(n, std::move(e));
}

SymmetricMatrix SymmetricMatrix::diagonal(const std::vector<double>& d) {
  const std::size_t n = d.size();
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = d[i];
  return SymmetricMatrix(n, std::move(e));
}

SymmetricMatrix SymmetricMatrix::outer(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<double> e(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = v[i] * v[j];
  return SymmetricMatrix(n, std::move(e));
}

SymmetricMatrix& SymmetricMatrix::add_scaled(const SymmetricMatrix& other,
                                             double c) {
  if (other.dim_ != dim_) throw DimensionError("add_scaled: dimension mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k)
    entries_[k] += c * other.entries_[k];
  return *this;
}

SymmetricMatrix SymmetricMatrix::scaled(double c) const {
  std::vector<double> e(entries_);
  for (double& x : e) x *= c;
  return SymmetricMatrix(dim_, std::move(e));
}

std::vector<double> matvec(const SymmetricMatrix& a,
                           const std::vector<double>& x) {
  const std::size_t n = a.dim();
  if (x.size() != n) throw DimensionError("matvec: dimension mismatch");
  std::vector<double> y(n, 0.0);
  const double* e = a.entries().data();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    const double* row = e + i * n;
    for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

double quad_form(const SymmetricMatrix& a, const std::vector<double>& z) {
  return dot(z, matvec(a, z));
}

double frobenius_norm(const SymmetricMatrix& a) {
  double s = 0.0;
  for (double x : a.entries()) s += x * x;
  return std::sqrt(s);
}

double commutator_frobenius(const SymmetricMatrix& a,
                            const SymmetricMatrix& b) {
  const std::size_t n = a.dim();
  if (b.dim() != n)
    throw DimensionError("commutator_frobenius: dimension mismatch");
  double s = 0.0;
  const double* ea = a.entries().data();
  const double* eb = b.entries().data();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double ab = 0.0, ba = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        ab += ea[i * n + k] * eb[k * n + j];
        ba += eb[i * n + k] * ea[k * n + j];
      }
      const double d = ab - ba;
      s += d * d;
    }
  }
  return std::sqrt(s);
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DimensionError("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(const std::vector<double>& x) { return std::sqrt(dot(x, x)); }

UnitVector::UnitVector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DimensionError("UnitVector requires dim >= 1");
  require_finite(coords_, "UnitVector");
  if (std::abs(norm2(coords_) - 1.0) > kUnitTol) {
    throw ValidationError("UnitVector norm deviates from 1 by more than 1e-12");
  }
}

UnitVector UnitVector::normalized(std::vector<double> v) {
  if (v.empty()) throw DimensionError("UnitVector requires dim >= 1");
  require_finite(v, "UnitVector");
  const double n = norm2(v);
  if (n == 0.0) throw ValidationError("cannot normalize the zero vector");
  for (double& x : v) x /= n;
  return UnitVector(std::move(v), Unchecked{});
}

OrthonormalBasis::OrthonormalBasis(std::vector<std::vector<double>> columns)
    : columns_(std::move(columns)) {
  const std::size_t n = columns_.size();
  if (n == 0) throw DimensionError("OrthonormalBasis requires dim >= 1");
  for (const auto& c : columns_) {
    if (c.size() != n)
      throw DimensionError("OrthonormalBasis columns must have length dim");
    require_finite(c, "OrthonormalBasis");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(norm2(columns_[i]) - 1.0) > kUnitTol) {
      throw ValidationError("basis column " + std::to_string(i) +
                            " is not unit within 1e-12");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(dot(columns_[i], columns_[j])) > kOrthoTol) {
        throw ValidationError("basis columns " + std::to_string(i) + "," +
                              std::to_string(j) +
                              " are not orthogonal within 1e-12");
      }
    }
  }
}

OrthonormalBasis OrthonormalBasis::identity(std::size_t n) {
  std::vector<std::vector<double>> cols(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) cols[i][i] = 1.0;
  return OrthonormalBasis(std::move(cols));
}

std::vector<double> OrthonormalBasis::overlaps(
    const std::vector<double>& x) const {
  if (x.size() != dim())
    throw DimensionError("overlaps: dimension mismatch");
  std::vector<double> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = dot(columns_[i], x);
  return out;
}

CommutingFamily::CommutingFamily(OrthonormalBasis basis,
                                 std::vector<std::vector<double>> eigenvalues)
    : basis_(std::move(basis)), eigenvalues_(std::move(eigenvalues)) {
  for (std::size_t t = 0; t < eigenvalues_.size(); ++t) {
    const auto& lam = eigenvalues_[t];
    if (lam.size() != basis_.dim()) {
      throw DimensionError("eigenvalue vector " + std::to_string(t) +
                           " does not match the basis dimension");
    }
    require_finite(lam, "CommutingFamily eigenvalues");
    for (double x : lam) {
      if (std::abs(x) > 1.0) {
        throw ValidationError(
            "eigenvalue magnitude above 1 in round " + std::to_string(t));
      }
    }
  }
}

const std::vector<double>& CommutingFamily::eigenvalues(std::size_t t) const {
  if (t >= eigenvalues_.size())
    throw IndexError("round index " + std::to_string(t) + " out of range");
  return eigenvalues_[t];
}

SymmetricMatrix materialize(const CommutingFamily& family, std::size_t t) {
  const auto& lam = family.eigenvalues(t);
  const std::size_t n = family.dim();
  std::vector<double> e(n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (lam[k] == 0.0) continue;
    const auto& v = family.basis().column(k);
    for (std::size_t i = 0; i < n; ++i) {
      const double li = lam[k] * v[i];
      for (std::size_t j = 0; j < n; ++j) e[i * n + j] += li * v[j];
    }
  }
  return SymmetricMatrix(n, std::move(e));
}

UnitVector random_unit_vector(std::size_t n, Rng& rng) {
  if (n == 0) throw DimensionError("random_unit_vector requires n >= 1");
  std::vector<double> v(n);
  double s;
  do {
    for (double& x : v) x = rng.normal();
    s = norm2(v);
  } while (s == 0.0);
  for (double& x : v) x /= s;
  return UnitVector(std::move(v));
}

OrthonormalBasis random_orthonormal_basis(std::size_t n, Rng& rng) {
  if (n == 0) throw DimensionError("random_orthonormal_basis requires n >= 1");
  std::vector<std::vector<double>> cols;
  cols.reserve(n);
  while (cols.size() < n) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.normal();
    // Two Gram-Schmidt passes keep the overlaps at machine precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& c : cols) {
        const double p = dot(c, v);
        for (std::size_t i = 0; i < n; ++i) v[i] -= p * c[i];
      }
    }
    const double s = norm2(v);
    if (s < 1e-8) continue;  // degenerate draw, resample
    for (double& x : v) x /= s;
    cols.push_back(std::move(v));
  }
  return OrthonormalBasis(std::move(cols));
}

CommutingFamily random_commuting_family(std::size_t n, std::size_t rounds,
                                        Rng& rng) {
  OrthonormalBasis basis = random_orthonormal_basis(n, rng);
  std::vector<std::vector<double>> lams(rounds, std::vector<double>(n));
  for (auto& lam : lams)
    for (double& x : lam) x = rng.uniform(-1.0, 1.0);
  return CommutingFamily(std::move(basis), std::move(lams));
}

SymmetricMatrix random_symmetric(std::size_t n, Rng& rng) {
  std::vector<double> e(n * n);
  for (double& x : e) x = rng.normal();
  return SymmetricMatrix(n, std::move(e));  // ctor symmetrizes
}

EigenDecomposition eigendecompose(const SymmetricMatrix& a) {
  const std::size_t n = a.dim();
  if (n > kJacobiDimCap) {
    throw SizeError(
        "eigendecompose is capped at n <= 512; use power_method_baseline or "
        "spectral_norm for larger matrices");
  }
  std::vector<double> m(a.entries());
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const double scale = std::max(1.0, frobenius_norm(a));
  const double tol = 1e-14 * scale;
  const int max_sweeps = 64;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += m[p * n + q] * m[p * n + q];
    if (std::sqrt(2.0 * off) <= tol) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = m[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0 ? 1.0 : -1.0) /
              (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = m[p * n + p];
        const double aqq = m[q * n + q];
        m[p * n + p] = app - t * apq;
        m[q * n + q] = aqq + t * apq;
        m[p * n + q] = 0.0;
        m[q * n + p] = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = m[r * n + p];
            const double arq = m[r * n + q];
            m[r * n + p] = arp - s * (arq + tau * arp);
            m[p * n + r] = m[r * n + p];
            m[r * n + q] = arq + s * (arp - tau * arq);
            m[q * n + r] = m[r * n + q];
          }
          const double vrp = v[r * n + p];
          const double vrq = v[r * n + q];
          v[r * n + p] = vrp - s * (vrq + tau * vrp);
          v[r * n + q] = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return m[i * n + i] > m[j * n + j];
  });

  std::vector<double> eigenvalues(n);
  std::vector<std::vector<double>> columns(n, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    eigenvalues[k] = m[src * n + src];
    for (std::size_t r = 0; r < n; ++r) columns[k][r] = v[r * n + src];
  }
  return EigenDecomposition{std::move(eigenvalues),
                            OrthonormalBasis(std::move(columns))};
}

namespace {

// Relative-tolerance power iteration on A^2; only path for n above the cap.
double spectral_norm_power(const SymmetricMatrix& a) {
  const std::size_t n = a.dim();
  Rng rng(0x5EED5EEDULL);
  std::vector<double> x = random_unit_vector(n, rng).coords();
  double prev = 0.0;
  for (int it = 0; it < 100000; ++it) {
    std::vector<double> y = matvec(a, matvec(a, x));
    const double ny = norm2(y);
    if (ny == 0.0) return 0.0;
    for (std::size_t i = 0; i < n; ++i) y[i] /= ny;
    const double est = dot(y, matvec(a, matvec(a, y)));  // ~ ||A||^2
    if (it > 0 && std::abs(est - prev) <= 1e-8 * std::max(est, 1e-300)) {
      return std::sqrt(std::max(0.0, est));
    }
    prev = est;
    x = std::move(y);
  }
  return std::sqrt(std::max(0.0, prev));
}

}  // namespace

double spectral_norm(const SymmetricMatrix& a) {
  if (a.dim() <= kJacobiDimCap) {
    const auto eig = eigendecompose(a);
    return std::max(std::abs(eig.eigenvalues.front()),
                    std::abs(eig.eigenvalues.back()));
  }
  return spectral_norm_power(a);
}

SymmetricMatrix normalize_spectral(const SymmetricMatrix& a) {
  const double s = spectral_norm(a);
  if (s == 0.0) return a;
  return a.scaled(1.0 / s);
}

}  // namespace ojaregret
