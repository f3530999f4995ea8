#pragma once

#include <array>
#include <iomanip>
#include <sstream>

#include "kinalg/algebra.hpp"

namespace kinalg {

/// A matrix commutator left the span of the ten basis generators.
struct NotInSpanError : Error {
  using Error::Error;
};

/// 5x5 matrix over exact rationals.
class Mat5 {
 public:
  Mat5() = default;

  Rational& at(int i, int j) { return m_[i][j]; }
  const Rational& at(int i, int j) const { return m_[i][j]; }

  static Mat5 zero() { return Mat5(); }

  friend Mat5 operator+(const Mat5& a, const Mat5& b) {
    Mat5 out;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) out.m_[i][j] = a.m_[i][j] + b.m_[i][j];
    return out;
  }
  friend Mat5 operator-(const Mat5& a, const Mat5& b) {
    Mat5 out;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) out.m_[i][j] = a.m_[i][j] - b.m_[i][j];
    return out;
  }
  friend Mat5 operator*(const Mat5& a, const Mat5& b) {
    Mat5 out;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        Rational acc;
        for (int k = 0; k < 5; ++k) acc += a.m_[i][k] * b.m_[k][j];
        out.m_[i][j] = acc;
      }
    return out;
  }
  friend Mat5 operator*(const Rational& s, const Mat5& a) {
    Mat5 out;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) out.m_[i][j] = s * a.m_[i][j];
    return out;
  }
  Mat5 operator-() const { return Rational(-1) * *this; }

  Mat5 transposed() const {
    Mat5 out;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) out.m_[j][i] = m_[i][j];
    return out;
  }

  bool is_zero() const {
    for (auto& row : m_)
      for (auto& v : row)
        if (!v.is_zero()) return false;
    return true;
  }

  friend bool operator==(const Mat5&, const Mat5&) = default;

  std::string str() const {
    std::ostringstream os;
    for (int i = 0; i < 5; ++i) {
      os << "[";
      for (int j = 0; j < 5; ++j) os << std::setw(6) << m_[i][j].str() << (j < 4 ? " " : "");
      os << "]\n";
    }
    return os.str();
  }

 private:
  std::array<std::array<Rational, 5>, 5> m_{};
};

inline Mat5 commutator(const Mat5& a, const Mat5& b) { return a * b - b * a; }

/// eta_+- = diag(1, 1, 1, -1, +-1).
inline Mat5 metric(int sign) {
  Mat5 eta;
  eta.at(0, 0) = eta.at(1, 1) = eta.at(2, 2) = 1;
  eta.at(3, 3) = -1;
  eta.at(4, 4) = sign >= 0 ? 1 : -1;
  return eta;
}

/// The isometry condition tX eta + eta X = 0.
inline bool satisfies_isometry(const Mat5& x, int sign) {
  Mat5 eta = metric(sign);
  return (x.transposed() * eta + eta * x).is_zero();
}

using GeneratorMatrices = std::array<Mat5, kGeneratorCount>;

/// The ten basis matrices {J_k, A_k, B_k, Gamma} of O_+-(5), indexed in the
/// standard generator order (A in the boost slot, B in the translation
/// slot, Gamma in the H slot).
inline GeneratorMatrices build_matrix_generators(int sign) {
  GeneratorMatrices g;
  int s5 = sign >= 0 ? 1 : -1;
  for (int k = 0; k < 3; ++k) {
    Mat5 jk;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) jk.at(i, j) = epsilon3(i, k, j);
    g[k] = jk;

    Mat5 ak;
    ak.at(k, 3) = 1;
    ak.at(3, k) = 1;
    g[3 + k] = ak;

    Mat5 bk;
    bk.at(k, 4) = 1;
    bk.at(4, k) = -s5;
    g[6 + k] = bk;
  }
  Mat5 gamma;
  gamma.at(3, 4) = 1;
  gamma.at(4, 3) = s5;
  g[9] = gamma;
  return g;
}

/// Expands m in the span of the ten generators by exact Gaussian
/// elimination; throws NotInSpanError when no expansion exists.
inline std::array<Rational, kGeneratorCount> expand_in_basis(const GeneratorMatrices& gens,
                                                             const Mat5& m) {
  // Augmented system over the 25 matrix entries.
  constexpr int kRows = 25, kCols = kGeneratorCount;
  std::array<std::array<Rational, kCols + 1>, kRows> a{};
  for (int e = 0; e < kRows; ++e) {
    for (int g = 0; g < kCols; ++g) a[e][g] = gens[g].at(e / 5, e % 5);
    a[e][kCols] = m.at(e / 5, e % 5);
  }
  std::array<int, kCols> pivot_row;
  pivot_row.fill(-1);
  int rank = 0;
  for (int col = 0; col < kCols; ++col) {
    int sel = -1;
    for (int row = rank; row < kRows; ++row)
      if (!a[row][col].is_zero()) {
        sel = row;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[sel], a[rank]);
    Rational inv = Rational(1) / a[rank][col];
    for (int j = col; j <= kCols; ++j) a[rank][j] *= inv;
    for (int row = 0; row < kRows; ++row) {
      if (row == rank || a[row][col].is_zero()) continue;
      Rational f = a[row][col];
      for (int j = col; j <= kCols; ++j) a[row][j] -= f * a[rank][j];
    }
    pivot_row[col] = rank;
    ++rank;
  }
  for (int row = rank; row < kRows; ++row)
    if (!a[row][kCols].is_zero())
      throw NotInSpanError("matrix has no expansion in the generator basis");
  std::array<Rational, kCols> coeffs{};
  for (int col = 0; col < kCols; ++col)
    if (pivot_row[col] >= 0) coeffs[col] = a[pivot_row[col]][kCols];
  return coeffs;
}

/// All pairwise commutators XY - YX expanded in the generator basis.
inline NumericStructure commutator_table(const GeneratorMatrices& gens) {
  NumericStructure table;
  auto order = all_generators();
  for (int i = 0; i < kGeneratorCount; ++i)
    for (int j = i + 1; j < kGeneratorCount; ++j) {
      auto coeffs = expand_in_basis(gens, commutator(gens[i], gens[j]));
      for (int k = 0; k < kGeneratorCount; ++k)
        if (!coeffs[k].is_zero()) table[{order[i], order[j], order[k]}] = coeffs[k];
    }
  return table;
}

/// K_i = A_i/c, P_i = B_i/r, H = Gamma/tau.
inline GeneratorMatrices rescale_generators(const GeneratorMatrices& gens, const Rational& c,
                                            const Rational& r, const Rational& tau) {
  if (c.sign() <= 0 || r.sign() <= 0 || tau.sign() <= 0)
    throw Error("rescale_generators needs positive parameters");
  GeneratorMatrices out = gens;
  for (int k = 0; k < 3; ++k) {
    out[3 + k] = (Rational(1) / c) * gens[3 + k];
    out[6 + k] = (Rational(1) / r) * gens[6 + k];
  }
  out[9] = (Rational(1) / tau) * gens[9];
  return out;
}

/// Linear first-order differential operators x -> u.x realizing O_+-(5).
///
/// Such operators commute anti-homomorphically ([V_u, V_v] = V_{vu - uv}),
/// so the orientation convention is fixed once by requiring
/// [A_i, B_j] = +Gamma delta_ij to hold among the realizations: the
/// coefficient matrices are the negatives of the basis matrices, and under
/// the operator commutator every bracket of the matrix table holds exactly.
struct DiffOpRealization {
  std::array<Mat5, kGeneratorCount> coeff;
  int sign = 1;
};

inline DiffOpRealization vector_field_realization(int sign) {
  DiffOpRealization real;
  real.sign = sign >= 0 ? 1 : -1;
  GeneratorMatrices gens = build_matrix_generators(sign);
  for (int i = 0; i < kGeneratorCount; ++i) real.coeff[i] = -gens[i];
  return real;
}

/// Commutator of two linear vector fields on their coefficient matrices.
inline Mat5 operator_commutator(const Mat5& u, const Mat5& v) { return v * u - u * v; }

/// The operator commutator table of the realization, expanded in the
/// realization's own coefficient matrices.
inline NumericStructure realization_commutator_table(const DiffOpRealization& real) {
  NumericStructure table;
  auto order = all_generators();
  for (int i = 0; i < kGeneratorCount; ++i)
    for (int j = i + 1; j < kGeneratorCount; ++j) {
      auto coeffs = expand_in_basis(real.coeff, operator_commutator(real.coeff[i], real.coeff[j]));
      for (int k = 0; k < kGeneratorCount; ++k)
        if (!coeffs[k].is_zero()) table[{order[i], order[j], order[k]}] = coeffs[k];
    }
  return table;
}

}  // namespace kinalg
