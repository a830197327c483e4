#pragma once

#include <cstddef>
#include <vector>

#include "ojaregret/rng.hpp"

namespace ojaregret {

// Dense real symmetric matrix. Construction symmetrizes via (M + M^T)/2 so
// entries(i,j) == entries(j,i) holds exactly under floating point.
class SymmetricMatrix {
 public:
  SymmetricMatrix(std::size_t dim, std::vector<double> row_major);

  static SymmetricMatrix zero(std::size_t n);
  static SymmetricMatrix identity(std::size_t n);
  static SymmetricMatrix diagonal(const std::vector<double>& d);
  // Rank-one v v^T.
  static SymmetricMatrix outer(const std::vector<double>& v);

  std::size_t dim() const { return dim_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * dim_ + j];
  }
  const std::vector<double>& entries() const { return entries_; }

  // In-place this += c * other.
  SymmetricMatrix& add_scaled(const SymmetricMatrix& other, double c);
  SymmetricMatrix scaled(double c) const;

 private:
  std::size_t dim_;
  std::vector<double> entries_;
};

std::vector<double> matvec(const SymmetricMatrix& a, const std::vector<double>& x);
// z^T A z.
double quad_form(const SymmetricMatrix& a, const std::vector<double>& z);
double frobenius_norm(const SymmetricMatrix& a);
// ||AB - BA||_F, the commutation witness.
double commutator_frobenius(const SymmetricMatrix& a, const SymmetricMatrix& b);

double dot(const std::vector<double>& x, const std::vector<double>& y);
double norm2(const std::vector<double>& x);

// Euclidean unit vector; the constructor validates ||coords||_2 = 1 within
// 1e-12, normalized() rescales an arbitrary nonzero vector.
class UnitVector {
 public:
  explicit UnitVector(std::vector<double> coords);
  static UnitVector normalized(std::vector<double> v);

  std::size_t dim() const { return coords_.size(); }
  const std::vector<double>& coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

 private:
  struct Unchecked {};
  UnitVector(std::vector<double> coords, Unchecked) : coords_(std::move(coords)) {}
  std::vector<double> coords_;
};

// Complete orthonormal basis of R^n, stored column by column. Validated at
// construction: unit columns and pairwise overlaps within 1e-12.
class OrthonormalBasis {
 public:
  explicit OrthonormalBasis(std::vector<std::vector<double>> columns);
  static OrthonormalBasis identity(std::size_t n);

  std::size_t dim() const { return columns_.size(); }
  const std::vector<double>& column(std::size_t i) const { return columns_[i]; }
  // V^T x, the coordinates of x in this basis.
  std::vector<double> overlaps(const std::vector<double>& x) const;

 private:
  std::vector<std::vector<double>> columns_;
};

// Shared orthonormal eigenbasis plus one eigenvalue vector per round. Every
// eigenvalue vector satisfies ||lambda_t||_inf <= 1, so each materialized
// matrix has spectral norm at most 1.
class CommutingFamily {
 public:
  CommutingFamily(OrthonormalBasis basis,
                  std::vector<std::vector<double>> eigenvalues);

  std::size_t dim() const { return basis_.dim(); }
  std::size_t rounds() const { return eigenvalues_.size(); }
  const OrthonormalBasis& basis() const { return basis_; }
  const std::vector<double>& eigenvalues(std::size_t t) const;
  const std::vector<std::vector<double>>& all_eigenvalues() const {
    return eigenvalues_;
  }

 private:
  OrthonormalBasis basis_;
  std::vector<std::vector<double>> eigenvalues_;
};

// sum_i lambda_t(i) v_i v_i^T for round t (0-based).
SymmetricMatrix materialize(const CommutingFamily& family, std::size_t t);

UnitVector random_unit_vector(std::size_t n, Rng& rng);
OrthonormalBasis random_orthonormal_basis(std::size_t n, Rng& rng);
// Random basis with eigenvalues uniform in [-1, 1].
CommutingFamily random_commuting_family(std::size_t n, std::size_t rounds,
                                        Rng& rng);
// Gaussian symmetric matrix, unnormalized.
SymmetricMatrix random_symmetric(std::size_t n, Rng& rng);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // descending
  OrthonormalBasis basis;           // column i pairs with eigenvalues[i]
};

// Cyclic Jacobi sweeps; desk-scale ground-truth oracle, capped at n <= 512.
// Reconstruction error ||A - V diag(w) V^T||_F stays below 1e-9 * n.
EigenDecomposition eigendecompose(const SymmetricMatrix& a);

inline constexpr std::size_t kJacobiDimCap = 512;

// max |eigenvalue|. Jacobi oracle for n <= 512, power iteration on A^2 to
// relative tolerance 1e-8 above the cap.
double spectral_norm(const SymmetricMatrix& a);
// A / ||A||_2; the zero matrix is returned unchanged.
SymmetricMatrix normalize_spectral(const SymmetricMatrix& a);

}  // namespace ojaregret
