#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "kinalg/coeff.hpp"

namespace kinalg {

/// The ten generators, in fixed index order. The B slot holds the inertial
/// transformations: written K in the kinematical basis, Q = K/m in the
/// dynamical one.
enum class Generator : int { J1 = 0, J2, J3, B1, B2, B3, P1, P2, P3, H };

inline constexpr int kGeneratorCount = 10;

inline constexpr std::array<Generator, kGeneratorCount> all_generators() {
  return {Generator::J1, Generator::J2, Generator::J3, Generator::B1, Generator::B2,
          Generator::B3, Generator::P1, Generator::P2, Generator::P3, Generator::H};
}

enum class Sector { rotation, boost, translation, time };

inline Sector sector_of(Generator g) {
  int i = static_cast<int>(g);
  if (i < 3) return Sector::rotation;
  if (i < 6) return Sector::boost;
  if (i < 9) return Sector::translation;
  return Sector::time;
}

/// 0-based index within the generator's vector triple (J/B/P); 0 for H.
inline int triple_index(Generator g) { return static_cast<int>(g) % 3; }

inline Generator rotation(int i) { return static_cast<Generator>(i); }
inline Generator boost(int i) { return static_cast<Generator>(3 + i); }
inline Generator translation(int i) { return static_cast<Generator>(6 + i); }

inline std::string generator_name(Generator g, ParamBasis basis) {
  Sector s = sector_of(g);
  if (s == Sector::time) return "H";
  char idx = static_cast<char>('1' + triple_index(g));
  char head = s == Sector::rotation ? 'J'
              : s == Sector::translation ? 'P'
              : (basis == ParamBasis::kinematical ? 'K' : 'Q');
  return std::string(1, head) + idx;
}

inline std::optional<Generator> parse_generator(const std::string& name) {
  if (name == "H") return Generator::H;
  if (name.size() != 2 || name[1] < '1' || name[1] > '3') return std::nullopt;
  int i = name[1] - '1';
  switch (name[0]) {
    case 'J': return rotation(i);
    case 'K': case 'Q': return boost(i);
    case 'P': return translation(i);
    default: return std::nullopt;
  }
}

/// Levi-Civita symbol on indices 0..2.
inline int epsilon3(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return (j - i + 3) % 3 == 1 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Labels
// ---------------------------------------------------------------------------

/// The twelve kinematical Lie algebras.
enum class AlgebraLabel : int { dSp = 0, dSm, P, NHp, NHm, Pp, Pm, G, Gp, Gm, C, S };

/// The eight families (the cube's vertices); +/- pairs collapsed.
enum class AlgebraFamily : int { dS = 0, P, NH, Ppm, G, Gpm, C, S };

inline constexpr std::array<AlgebraLabel, 12> all_labels() {
  return {AlgebraLabel::dSp, AlgebraLabel::dSm, AlgebraLabel::P,  AlgebraLabel::NHp,
          AlgebraLabel::NHm, AlgebraLabel::Pp,  AlgebraLabel::Pm, AlgebraLabel::G,
          AlgebraLabel::Gp,  AlgebraLabel::Gm,  AlgebraLabel::C,  AlgebraLabel::S};
}

inline constexpr std::array<AlgebraFamily, 8> all_families() {
  return {AlgebraFamily::dS, AlgebraFamily::P,   AlgebraFamily::NH, AlgebraFamily::Ppm,
          AlgebraFamily::G,  AlgebraFamily::Gpm, AlgebraFamily::C,  AlgebraFamily::S};
}

inline const char* label_name(AlgebraLabel l) {
  switch (l) {
    case AlgebraLabel::dSp: return "dS+";
    case AlgebraLabel::dSm: return "dS-";
    case AlgebraLabel::P: return "P";
    case AlgebraLabel::NHp: return "NH+";
    case AlgebraLabel::NHm: return "NH-";
    case AlgebraLabel::Pp: return "P+";
    case AlgebraLabel::Pm: return "P-";
    case AlgebraLabel::G: return "G";
    case AlgebraLabel::Gp: return "G+";
    case AlgebraLabel::Gm: return "G-";
    case AlgebraLabel::C: return "C";
    case AlgebraLabel::S: return "S";
  }
  return "?";
}

inline const char* family_name(AlgebraFamily f) {
  switch (f) {
    case AlgebraFamily::dS: return "dS±";
    case AlgebraFamily::P: return "P";
    case AlgebraFamily::NH: return "NH±";
    case AlgebraFamily::Ppm: return "P±";
    case AlgebraFamily::G: return "G";
    case AlgebraFamily::Gpm: return "G±";
    case AlgebraFamily::C: return "C";
    case AlgebraFamily::S: return "S";
  }
  return "?";
}

inline const char* family_full_name(AlgebraFamily f) {
  switch (f) {
    case AlgebraFamily::dS: return "de Sitter";
    case AlgebraFamily::P: return "Poincare";
    case AlgebraFamily::NH: return "Newton-Hooke";
    case AlgebraFamily::Ppm: return "Para-Poincare";
    case AlgebraFamily::G: return "Galilei";
    case AlgebraFamily::Gpm: return "Para-Galilei";
    case AlgebraFamily::C: return "Carroll";
    case AlgebraFamily::S: return "Static";
  }
  return "?";
}

inline AlgebraFamily family_of(AlgebraLabel l) {
  switch (l) {
    case AlgebraLabel::dSp: case AlgebraLabel::dSm: return AlgebraFamily::dS;
    case AlgebraLabel::P: return AlgebraFamily::P;
    case AlgebraLabel::NHp: case AlgebraLabel::NHm: return AlgebraFamily::NH;
    case AlgebraLabel::Pp: case AlgebraLabel::Pm: return AlgebraFamily::Ppm;
    case AlgebraLabel::G: return AlgebraFamily::G;
    case AlgebraLabel::Gp: case AlgebraLabel::Gm: return AlgebraFamily::Gpm;
    case AlgebraLabel::C: return AlgebraFamily::C;
    case AlgebraLabel::S: return AlgebraFamily::S;
  }
  return AlgebraFamily::S;
}

/// +1/-1 for signed families, nullopt for P, G, C, S.
inline std::optional<int> label_sign(AlgebraLabel l) {
  switch (l) {
    case AlgebraLabel::dSp: case AlgebraLabel::NHp: case AlgebraLabel::Pp:
    case AlgebraLabel::Gp: return 1;
    case AlgebraLabel::dSm: case AlgebraLabel::NHm: case AlgebraLabel::Pm:
    case AlgebraLabel::Gm: return -1;
    default: return std::nullopt;
  }
}

inline bool family_signed(AlgebraFamily f) {
  return f == AlgebraFamily::dS || f == AlgebraFamily::NH || f == AlgebraFamily::Ppm ||
         f == AlgebraFamily::Gpm;
}

inline AlgebraLabel label_of(AlgebraFamily f, int sign = 1) {
  switch (f) {
    case AlgebraFamily::dS: return sign >= 0 ? AlgebraLabel::dSp : AlgebraLabel::dSm;
    case AlgebraFamily::P: return AlgebraLabel::P;
    case AlgebraFamily::NH: return sign >= 0 ? AlgebraLabel::NHp : AlgebraLabel::NHm;
    case AlgebraFamily::Ppm: return sign >= 0 ? AlgebraLabel::Pp : AlgebraLabel::Pm;
    case AlgebraFamily::G: return AlgebraLabel::G;
    case AlgebraFamily::Gpm: return sign >= 0 ? AlgebraLabel::Gp : AlgebraLabel::Gm;
    case AlgebraFamily::C: return AlgebraLabel::C;
    case AlgebraFamily::S: return AlgebraLabel::S;
  }
  return AlgebraLabel::S;
}

inline std::optional<AlgebraLabel> parse_label(const std::string& s) {
  for (AlgebraLabel l : all_labels())
    if (s == label_name(l)) return l;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// The unscaled subspace is not a subalgebra (or the split cuts through the
/// rotation structure), so the Inonu-Wigner limit does not exist.
struct NotSubalgebraError : Error {
  using Error::Error;
};

/// A structure constant has positive degree in the diverging parameters;
/// the contraction is undefined.
struct DivergenceError : Error {
  using Error::Error;
};

/// The tensor matches none of the twelve template rows.
struct UnrecognizedAlgebraError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// LieAlgebra
// ---------------------------------------------------------------------------

struct Term {
  Generator gen;
  Coefficient coeff;
  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term&, const Term&) = default;
};

/// Finite combination of generators with Coefficient weights. Canonical:
/// sorted, like monomials merged, zero terms dropped.
using LinearCombination = std::vector<Term>;

inline LinearCombination canonicalize(LinearCombination terms) {
  std::map<std::pair<Generator, ParamMono>, Rational> acc;
  for (auto& t : terms) {
    if (t.coeff.is_zero()) continue;
    acc[{t.gen, t.coeff.mono()}] += t.coeff.scale();
  }
  LinearCombination out;
  for (auto& [key, scale] : acc) {
    if (scale.is_zero()) continue;
    out.push_back({key.first, Coefficient::from_mono(scale, key.second)});
  }
  return out;
}

/// (x, y, target) -> numeric structure constant, keys with x < y.
using NumericStructure = std::map<std::tuple<Generator, Generator, Generator>, Rational>;

/// A 10-generator structure-constant tensor over exact Coefficients.
/// Antisymmetry is implicit: brackets are stored for ordered pairs x < y.
/// The family sign s is carried symbolically in the coefficients; the tag
/// sign() records which member of a +/- family the tensor denotes.
class LieAlgebra {
 public:
  explicit LieAlgebra(ParamBasis basis) : basis_(basis) {}

  const std::string& label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }
  ParamBasis basis() const { return basis_; }
  std::optional<int> sign() const { return sign_; }
  void set_sign(std::optional<int> s) { sign_ = s; }

  const std::map<std::pair<Generator, Generator>, LinearCombination>& structure() const {
    return structure_;
  }

  /// Adds coeff * target to the bracket [x, y] (flipping sign if x > y).
  void add_bracket(Generator x, Generator y, Generator target, Coefficient coeff) {
    if (x == y || coeff.is_zero()) return;
    if (coeff.basis() && *coeff.basis() != basis_)
      throw MixedBasisError("coefficient basis does not match the algebra basis");
    if (static_cast<int>(x) > static_cast<int>(y)) {
      std::swap(x, y);
      coeff = -coeff;
    }
    auto& terms = structure_[{x, y}];
    terms.push_back({target, std::move(coeff)});
    terms = canonicalize(std::move(terms));
    if (terms.empty()) structure_.erase({x, y});
  }

  /// Replaces the bracket [x, y] wholesale (test/ingestion hook).
  void set_bracket(Generator x, Generator y, LinearCombination terms) {
    bool flip = static_cast<int>(x) > static_cast<int>(y);
    if (flip) std::swap(x, y);
    if (flip)
      for (auto& t : terms) t.coeff = -t.coeff;
    terms = canonicalize(std::move(terms));
    if (terms.empty())
      structure_.erase({x, y});
    else
      structure_[{x, y}] = std::move(terms);
  }

  /// Terms of [x, y] with antisymmetry applied; empty when the bracket is 0.
  LinearCombination terms(Generator x, Generator y) const {
    if (x == y) return {};
    bool flip = static_cast<int>(x) > static_cast<int>(y);
    if (flip) std::swap(x, y);
    auto it = structure_.find({x, y});
    if (it == structure_.end()) return {};
    LinearCombination out = it->second;
    if (flip)
      for (auto& t : out) t.coeff = -t.coeff;
    return out;
  }

  /// The coefficient of `target` in [x, y]; zero if absent. Throws
  /// UnlikeMonomialsError if the component is a sum of unlike monomials.
  Coefficient coefficient(Generator x, Generator y, Generator target) const {
    Coefficient acc = Coefficient::zero();
    for (auto& t : terms(x, y))
      if (t.gen == target) acc = acc + t.coeff;
    return acc;
  }

  /// Bilinear antisymmetric extension of the structure tensor.
  LinearCombination bracket(const LinearCombination& x, const LinearCombination& y) const {
    LinearCombination out;
    for (auto& tx : x)
      for (auto& ty : y)
        for (auto& tz : terms(tx.gen, ty.gen))
          out.push_back({tz.gen, tx.coeff * ty.coeff * tz.coeff});
    return canonicalize(std::move(out));
  }

  /// Clears the sign tag when no coefficient mentions s.
  void normalize_sign_tag() {
    for (auto& [key, terms] : structure_)
      for (auto& t : terms)
        if (t.coeff.sign_power()) return;
    sign_.reset();
  }

  /// Substitutes s := sign() into every coefficient (requires the tag).
  LieAlgebra substituted() const {
    LieAlgebra out(basis_);
    out.label_ = label_;
    for (auto& [key, terms] : structure_)
      for (auto& t : terms) {
        Coefficient c = t.coeff;
        if (c.sign_power()) {
          if (!sign_) throw Error("cannot substitute the family sign: tensor has no sign tag");
          c = c.substitute_sign(*sign_);
        }
        out.add_bracket(key.first, key.second, t.gen, c);
      }
    return out;
  }

  /// Exact numeric evaluation of every structure constant.
  NumericStructure evaluate(const std::map<Param, Rational>& values) const {
    int sgn = sign_.value_or(1);
    NumericStructure out;
    for (auto& [key, terms] : structure_)
      for (auto& t : terms) {
        Rational v = t.coeff.eval(values, sgn);
        auto k = std::make_tuple(key.first, key.second, t.gen);
        auto [it, fresh] = out.emplace(k, v);
        if (!fresh) it->second += v;
        if (it->second.is_zero()) out.erase(it);
      }
    return out;
  }

  /// Structure, basis and sign tag equality; the label is metadata.
  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.basis_ == b.basis_ && a.sign_ == b.sign_ && a.structure_ == b.structure_;
  }

 private:
  std::string label_;
  ParamBasis basis_;
  std::optional<int> sign_;
  std::map<std::pair<Generator, Generator>, LinearCombination> structure_;
};

// ---------------------------------------------------------------------------
// Rotation sector
// ---------------------------------------------------------------------------

/// [J_i,J_j] = J_k eps^k_ij, [J_i,B_j] = B_k eps^k_ij, [J_i,P_j] = P_k eps^k_ij,
/// [J_i,H] = 0 — shared by every kinematical Lie algebra.
inline void add_rotation_sector(LieAlgebra& alg) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i >= j) continue;
      for (int k = 0; k < 3; ++k)
        alg.add_bracket(rotation(i), rotation(j), rotation(k),
                        Coefficient::of(epsilon3(k, i, j)));
    }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        int e = epsilon3(k, i, j);
        if (!e) continue;
        alg.add_bracket(rotation(i), boost(j), boost(k), Coefficient::of(e));
        alg.add_bracket(rotation(i), translation(j), translation(k), Coefficient::of(e));
      }
}

inline bool rotation_sector_intact(const LieAlgebra& alg) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) {
        LinearCombination jj;
        for (int k = 0; k < 3; ++k)
          if (int e = epsilon3(k, i, j))
            jj.push_back({rotation(k), Coefficient::of(e)});
        if (alg.terms(rotation(i), rotation(j)) != canonicalize(std::move(jj))) return false;
      }
      LinearCombination jb, jp;
      for (int k = 0; k < 3; ++k)
        if (int e = epsilon3(k, i, j)) {
          jb.push_back({boost(k), Coefficient::of(e)});
          jp.push_back({translation(k), Coefficient::of(e)});
        }
      if (alg.terms(rotation(i), boost(j)) != canonicalize(std::move(jb))) return false;
      if (alg.terms(rotation(i), translation(j)) != canonicalize(std::move(jp))) return false;
    }
    if (!alg.terms(rotation(i), Generator::H).empty()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Templates (Tables I and II)
// ---------------------------------------------------------------------------

/// Which written form of a template to build. `standard` is the printed
/// table row (kinematical rows carry the r = c*tau constrained
/// coefficients); `unconstrained` keeps the pre-constraint ratios of the
/// pseudo-orthogonal rescaling and is only meaningful kinematically.
enum class Form { standard, unconstrained };

namespace detail {

/// The five non-rotation bracket families of a table row:
/// [B_i,H] = bh P_i, [B_i,B_j] = bb J_k eps, [B_i,P_j] = bp H delta,
/// [P_i,P_j] = pp J_k eps, [P_i,H] = ph B_i.
struct FamilyRow {
  Coefficient bh, bb, bp, pp, ph;
};

inline void add_family_row(LieAlgebra& alg, const FamilyRow& row) {
  for (int i = 0; i < 3; ++i) {
    alg.add_bracket(boost(i), Generator::H, translation(i), row.bh);
    alg.add_bracket(translation(i), Generator::H, boost(i), row.ph);
    alg.add_bracket(boost(i), translation(i), Generator::H, row.bp);
    for (int j = i + 1; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (int e = epsilon3(k, i, j)) {
          alg.add_bracket(boost(i), boost(j), rotation(k), Rational(e) * row.bb);
          alg.add_bracket(translation(i), translation(j), rotation(k), Rational(e) * row.pp);
        }
  }
}

inline FamilyRow table_row(AlgebraFamily f, ParamBasis basis) {
  using P = Param;
  auto one = Coefficient::of(1);
  auto zero = Coefficient::zero();
  Coefficient bh, bb, bp, pp, ph;
  if (basis == ParamBasis::dynamical) {
    auto inv_m = Coefficient::monomial(1, {{P::m, HalfInt::whole(-1)}});
    auto neg_inv_mE = Coefficient::monomial(-1, {{P::m, HalfInt::whole(-1)}, {P::E0, HalfInt::whole(-1)}});
    auto inv_E = Coefficient::monomial(1, {{P::E0, HalfInt::whole(-1)}});
    auto s_inv_CE = Coefficient::monomial(1, {{P::C, HalfInt::whole(-1)}, {P::E0, HalfInt::whole(-1)}}, 1);
    auto s_inv_C = Coefficient::monomial(1, {{P::C, HalfInt::whole(-1)}}, 1);
    switch (f) {
      case AlgebraFamily::dS: return {inv_m, neg_inv_mE, inv_E, s_inv_CE, s_inv_C};
      case AlgebraFamily::P: return {inv_m, neg_inv_mE, inv_E, zero, zero};
      case AlgebraFamily::NH: return {inv_m, zero, zero, zero, s_inv_C};
      case AlgebraFamily::Ppm: return {zero, zero, inv_E, s_inv_CE, s_inv_C};
      case AlgebraFamily::G: return {inv_m, zero, zero, zero, zero};
      case AlgebraFamily::Gpm: return {zero, zero, zero, zero, s_inv_C};
      case AlgebraFamily::C: return {zero, zero, inv_E, zero, zero};
      case AlgebraFamily::S: return {zero, zero, zero, zero, zero};
    }
  } else {
    auto neg_inv_c2 = Coefficient::monomial(-1, {{P::c, HalfInt::whole(-2)}});
    auto inv_c2 = Coefficient::monomial(1, {{P::c, HalfInt::whole(-2)}});
    auto s_inv_r2 = Coefficient::monomial(1, {{P::r, HalfInt::whole(-2)}}, 1);
    auto s_inv_t2 = Coefficient::monomial(1, {{P::tau, HalfInt::whole(-2)}}, 1);
    switch (f) {
      case AlgebraFamily::dS: return {one, neg_inv_c2, inv_c2, s_inv_r2, s_inv_t2};
      case AlgebraFamily::P: return {one, neg_inv_c2, inv_c2, zero, zero};
      case AlgebraFamily::NH: return {one, zero, zero, zero, s_inv_t2};
      case AlgebraFamily::Ppm: return {zero, zero, inv_c2, s_inv_r2, s_inv_t2};
      case AlgebraFamily::G: return {one, zero, zero, zero, zero};
      case AlgebraFamily::Gpm: return {zero, zero, zero, zero, s_inv_t2};
      case AlgebraFamily::C: return {zero, zero, inv_c2, zero, zero};
      case AlgebraFamily::S: return {zero, zero, zero, zero, zero};
    }
  }
  return {bh, bb, bp, pp, ph};
}

/// Pre-constraint de Sitter row: [K,H] = (r/ct)P, [K,K] = -(1/c^2)J eps,
/// [K,P] = (t/cr)H delta, [P,P] = +-(1/r^2)J eps, [P,H] = +-(c/rt)K.
inline FamilyRow unconstrained_ds_row() {
  using P = Param;
  auto w = [](int e) { return HalfInt::whole(e); };
  return {
      Coefficient::monomial(1, {{P::c, w(-1)}, {P::r, w(1)}, {P::tau, w(-1)}}),
      Coefficient::monomial(-1, {{P::c, w(-2)}}),
      Coefficient::monomial(1, {{P::c, w(-1)}, {P::r, w(-1)}, {P::tau, w(1)}}),
      Coefficient::monomial(1, {{P::r, w(-2)}}, 1),
      Coefficient::monomial(1, {{P::c, w(1)}, {P::r, w(-1)}, {P::tau, w(-1)}}, 1),
  };
}

}  // namespace detail

class JacobiResidual;
JacobiResidual jacobi_residual(const LieAlgebra& alg);
LieAlgebra contract_limit(const LieAlgebra& alg, const std::set<Param>& diverging);

/// Builds the template tensor for a table row. Kinematical `standard` rows
/// carry the r = c*tau constrained coefficients exactly as printed;
/// `unconstrained` gives the pre-constraint forms (the de Sitter row
/// directly, its descendants by the matching joint limits).
inline LieAlgebra build_algebra(AlgebraLabel label, ParamBasis basis,
                                Form form = Form::standard) {
  if (form == Form::unconstrained && basis != ParamBasis::kinematical)
    throw Error("unconstrained form exists only in the kinematical basis");
  LieAlgebra alg(basis);
  add_rotation_sector(alg);
  if (form == Form::standard) {
    detail::add_family_row(alg, detail::table_row(family_of(label), basis));
    alg.set_sign(label_sign(label));
    alg.normalize_sign_tag();
    alg.set_label(label_name(label));
    return alg;
  }
  detail::add_family_row(alg, detail::unconstrained_ds_row());
  alg.set_sign(label_sign(label).value_or(1));
  alg.set_label(label_name(label));
  // Descend from dS by the joint kinematical limits that define the family.
  using PS = std::set<Param>;
  const PS speed_space{Param::c, Param::r};
  const PS speed_time{Param::c, Param::tau};
  const PS space_time{Param::r, Param::tau};
  std::vector<PS> chain;
  switch (family_of(label)) {
    case AlgebraFamily::dS: break;
    case AlgebraFamily::NH: chain = {speed_space}; break;
    case AlgebraFamily::Ppm: chain = {speed_time}; break;
    case AlgebraFamily::P: chain = {space_time}; break;
    case AlgebraFamily::G: chain = {speed_space, space_time}; break;
    case AlgebraFamily::Gpm: chain = {speed_space, speed_time}; break;
    case AlgebraFamily::C: chain = {space_time, speed_time}; break;
    case AlgebraFamily::S: chain = {speed_space, speed_time, space_time}; break;
  }
  for (auto& lim : chain) alg = contract_limit(alg, lim);
  alg.set_sign(label_sign(label));
  alg.normalize_sign_tag();
  alg.set_label(label_name(label));
  return alg;
}

// ---------------------------------------------------------------------------
// Jacobi identity
// ---------------------------------------------------------------------------

/// One non-canceling term of [x,[y,z]] + [y,[z,x]] + [z,[x,y]].
struct JacobiViolation {
  Generator x, y, z, target;
  Coefficient coeff;
};

/// The list of non-canceling Jacobi terms; empty iff the identity holds.
class JacobiResidual {
 public:
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<JacobiViolation>& terms() const { return terms_; }
  void add(JacobiViolation v) { terms_.push_back(std::move(v)); }

 private:
  std::vector<JacobiViolation> terms_;
};

/// Exact Jacobi check over all 120 unordered generator triples. In the
/// kinematical basis the cancellation is taken modulo the constraint
/// r = c*tau (the printed Table I rows satisfy Jacobi only on the
/// constraint surface); dynamical tensors cancel verbatim.
inline JacobiResidual jacobi_residual(const LieAlgebra& alg) {
  bool kin = alg.basis() == ParamBasis::kinematical;
  JacobiResidual residual;
  auto gens = all_generators();
  for (int a = 0; a < kGeneratorCount; ++a)
    for (int b = a + 1; b < kGeneratorCount; ++b)
      for (int c = b + 1; c < kGeneratorCount; ++c) {
        Generator x = gens[a], y = gens[b], z = gens[c];
        std::map<std::pair<Generator, ParamMono>, Rational> acc;
        auto accumulate = [&](Generator u, Generator v, Generator w) {
          for (auto& inner : alg.terms(v, w))
            for (auto& outer : alg.terms(u, inner.gen)) {
              Coefficient term = inner.coeff * outer.coeff;
              if (kin) term = term.apply_constraint();
              acc[{outer.gen, term.mono()}] += term.scale();
            }
        };
        accumulate(x, y, z);
        accumulate(y, z, x);
        accumulate(z, x, y);
        for (auto& [key, scale] : acc)
          if (!scale.is_zero())
            residual.add({x, y, z, key.first, Coefficient::from_mono(scale, key.second)});
      }
  return residual;
}

// ---------------------------------------------------------------------------
// Contractions
// ---------------------------------------------------------------------------

/// The generators spanning the unscaled subspace H; the complement P is
/// scaled by epsilon and becomes abelian in the limit.
struct SubspaceSplit {
  std::set<Generator> unscaled;

  bool in_h(Generator g) const { return unscaled.count(g) != 0; }
  static SubspaceSplit spanning(std::initializer_list<Generator> gens) {
    return SubspaceSplit{std::set<Generator>(gens)};
  }
};

/// Inonu-Wigner contraction with respect to the subalgebra H: Y_a = X_a on
/// H, Y_alpha = eps X_alpha on the complement, eps -> 0. Requires H to be a
/// subalgebra (no divergent term) and the split to leave the rotation
/// sector intact, so the result is again a kinematical tensor.
inline LieAlgebra iw_contract(const LieAlgebra& alg, const SubspaceSplit& split) {
  for (auto& [key, terms] : alg.structure()) {
    auto [x, y] = key;
    if (split.in_h(x) && split.in_h(y))
      for (auto& t : terms)
        if (!split.in_h(t.gen))
          throw NotSubalgebraError(std::string("H is not a subalgebra: [") +
                                   generator_name(x, alg.basis()) + "," +
                                   generator_name(y, alg.basis()) + "] leaves the span");
  }
  LieAlgebra out(alg.basis());
  out.set_sign(alg.sign());
  for (auto& [key, terms] : alg.structure()) {
    auto [x, y] = key;
    bool hx = split.in_h(x), hy = split.in_h(y);
    if (hx && hy) {
      for (auto& t : terms) out.add_bracket(x, y, t.gen, t.coeff);
    } else if (hx != hy) {
      for (auto& t : terms)
        if (!split.in_h(t.gen)) out.add_bracket(x, y, t.gen, t.coeff);
    }
  }
  if (!rotation_sector_intact(out))
    throw NotSubalgebraError("the split cuts through the rotation structure");
  if (!jacobi_residual(out).empty())
    throw Error("internal: Inonu-Wigner contraction broke the Jacobi identity");
  out.normalize_sign_tag();
  return out;
}

/// Parameter-limit contraction: drops every structure constant of negative
/// degree in the diverging parameters, keeps degree zero verbatim, and is
/// undefined (DivergenceError) on positive degree.
inline LieAlgebra contract_limit(const LieAlgebra& alg, const std::set<Param>& diverging) {
  for (Param p : diverging)
    if (basis_of(p) != alg.basis())
      throw MixedBasisError(std::string("parameter ") + param_name(p) +
                            " is not in the algebra's basis");
  LieAlgebra out(alg.basis());
  out.set_sign(alg.sign());
  for (auto& [key, terms] : alg.structure())
    for (auto& t : terms) {
      HalfInt d = t.coeff.limit_degree(diverging);
      if (d.halves() > 0)
        throw DivergenceError("structure constant " + t.coeff.str() +
                              " diverges in the requested limit");
      if (d.halves() == 0) out.add_bracket(key.first, key.second, t.gen, t.coeff);
    }
  if (!jacobi_residual(out).empty())
    throw Error("internal: parameter limit broke the Jacobi identity");
  out.normalize_sign_tag();
  return out;
}

// ---------------------------------------------------------------------------
// Basis change (K <-> Q = K/m)
// ---------------------------------------------------------------------------

namespace detail {

inline LieAlgebra change_basis(const LieAlgebra& alg, ParamBasis target) {
  if (alg.basis() == target) return alg;
  LieAlgebra out(target);
  out.set_label(alg.label());
  out.set_sign(alg.sign());
  for (auto& [key, terms] : alg.structure())
    for (auto& t : terms) {
      int boosts = (sector_of(t.gen) == Sector::boost ? 1 : 0) -
                   (sector_of(key.first) == Sector::boost ? 1 : 0) -
                   (sector_of(key.second) == Sector::boost ? 1 : 0);
      if (target == ParamBasis::kinematical) boosts = -boosts;
      Coefficient c = t.coeff;
      if (target == ParamBasis::kinematical && boosts != 0)
        c = c * Coefficient::monomial(1, {{Param::m, HalfInt::whole(boosts)}});
      c = c.convert_basis(target);
      if (target == ParamBasis::dynamical && boosts != 0)
        c = c * Coefficient::monomial(1, {{Param::m, HalfInt::whole(boosts)}});
      out.add_bracket(key.first, key.second, t.gen, c);
    }
  out.normalize_sign_tag();
  return out;
}

}  // namespace detail

/// Rewrites a kinematical tensor over (m, C, E0) with Q = K/m in the boost
/// slot. Monomials equal under r = c*tau convert identically.
inline LieAlgebra to_dynamical(const LieAlgebra& alg) {
  return detail::change_basis(alg, ParamBasis::dynamical);
}

/// Eliminates r from every structure constant via r = c*tau. Table I rows
/// and the pre-constraint forms of the pseudo-orthogonal rescaling become
/// equal under this normalization.
inline LieAlgebra apply_constraint(const LieAlgebra& alg) {
  LieAlgebra out(alg.basis());
  out.set_label(alg.label());
  out.set_sign(alg.sign());
  for (auto& [key, terms] : alg.structure())
    for (auto& t : terms)
      out.add_bracket(key.first, key.second, t.gen, t.coeff.apply_constraint());
  return out;
}

/// Inverse of to_dynamical; lands on the r-eliminated (constrained) form.
inline LieAlgebra to_kinematical(const LieAlgebra& alg) {
  return detail::change_basis(alg, ParamBasis::kinematical);
}

// ---------------------------------------------------------------------------
// Identification
// ---------------------------------------------------------------------------

namespace detail {

// Sign pattern (bh, bb, bp, pp, ph) of each template row; entries -1/0/+1.
inline std::array<int, 5> label_pattern(AlgebraLabel l) {
  int s = label_sign(l).value_or(0);
  switch (family_of(l)) {
    case AlgebraFamily::dS: return {1, -1, 1, s, s};
    case AlgebraFamily::P: return {1, -1, 1, 0, 0};
    case AlgebraFamily::NH: return {1, 0, 0, 0, s};
    case AlgebraFamily::Ppm: return {0, 0, 1, s, s};
    case AlgebraFamily::G: return {1, 0, 0, 0, 0};
    case AlgebraFamily::Gpm: return {0, 0, 0, 0, s};
    case AlgebraFamily::C: return {0, 0, 1, 0, 0};
    case AlgebraFamily::S: return {0, 0, 0, 0, 0};
  }
  return {0, 0, 0, 0, 0};
}

/// Merges one observed component into the family coefficient, requiring all
/// components to agree exactly.
inline bool merge_component(std::optional<Coefficient>& found, const Coefficient& c) {
  if (!found) {
    found = c;
    return true;
  }
  return *found == c;
}

/// [first_i, H] = coeff * expect_i for i = 1..3, nothing else.
template <typename First, typename Expect>
std::optional<Coefficient> extract_h_family(const LieAlgebra& alg, First first, Expect expect) {
  std::optional<Coefficient> found;
  for (int i = 0; i < 3; ++i) {
    auto terms = alg.terms(first(i), Generator::H);
    if (terms.empty()) {
      if (!merge_component(found, Coefficient::zero())) return std::nullopt;
      continue;
    }
    if (terms.size() != 1 || terms[0].gen != expect(i)) return std::nullopt;
    if (!merge_component(found, terms[0].coeff)) return std::nullopt;
  }
  return found;
}

/// [B_i, P_j] = coeff * H delta_ij; off-diagonal components must vanish.
inline std::optional<Coefficient> extract_delta_family(const LieAlgebra& alg) {
  std::optional<Coefficient> found;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      auto terms = alg.terms(boost(i), translation(j));
      if (i != j) {
        if (!terms.empty()) return std::nullopt;
        continue;
      }
      if (terms.empty()) {
        if (!merge_component(found, Coefficient::zero())) return std::nullopt;
        continue;
      }
      if (terms.size() != 1 || terms[0].gen != Generator::H) return std::nullopt;
      if (!merge_component(found, terms[0].coeff)) return std::nullopt;
    }
  return found;
}

/// [v_i, v_j] = coeff * J_k eps^k_ij over the ordered pairs of one triple.
template <typename V>
std::optional<Coefficient> extract_eps_family(const LieAlgebra& alg, V v) {
  std::optional<Coefficient> found;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      int k = 3 - i - j;
      auto terms = alg.terms(v(i), v(j));
      if (terms.empty()) {
        if (!merge_component(found, Coefficient::zero())) return std::nullopt;
        continue;
      }
      if (terms.size() != 1 || terms[0].gen != rotation(k)) return std::nullopt;
      Coefficient c = Rational(epsilon3(k, i, j)) * terms[0].coeff;
      if (!merge_component(found, c)) return std::nullopt;
    }
  return found;
}

inline std::optional<std::array<Coefficient, 5>> extract_families(const LieAlgebra& alg) {
  auto bh = extract_h_family(alg, [](int i) { return boost(i); },
                             [](int i) { return translation(i); });
  auto ph = extract_h_family(alg, [](int i) { return translation(i); },
                             [](int i) { return boost(i); });
  auto bp = extract_delta_family(alg);
  auto bb = extract_eps_family(alg, [](int i) { return boost(i); });
  auto pp = extract_eps_family(alg, [](int i) { return translation(i); });
  if (!bh || !bb || !bp || !pp || !ph) return std::nullopt;
  return std::array<Coefficient, 5>{*bh, *bb, *bp, *pp, *ph};
}

inline std::optional<AlgebraLabel> match_pattern(const std::array<Coefficient, 5>& fams,
                                                 int sign_substitution) {
  std::array<int, 5> pattern{};
  for (int k = 0; k < 5; ++k) {
    const Coefficient& c = fams[k];
    int sgn = c.scale().sign();
    if (c.sign_power()) sgn *= sign_substitution;
    pattern[k] = sgn;
  }
  for (AlgebraLabel l : all_labels())
    if (label_pattern(l) == pattern) return l;
  return std::nullopt;
}

}  // namespace detail

/// Matches the zero/non-zero pattern and signs of the five non-rotation
/// bracket families against the twelve template rows. Positive parameter
/// magnitudes are basis-normalization data and are ignored; signs are not.
/// A symbolic family sign is resolved through the tensor's sign tag.
inline AlgebraLabel identify(const LieAlgebra& alg) {
  if (!rotation_sector_intact(alg))
    throw UnrecognizedAlgebraError("rotation sector differs from the kinematical form");
  auto fams = detail::extract_families(alg);
  if (!fams) throw UnrecognizedAlgebraError("bracket families do not fit any template shape");
  bool has_symbolic = false;
  for (auto& c : *fams)
    if (c.sign_power()) has_symbolic = true;
  if (has_symbolic && !alg.sign()) {
    auto plus = detail::match_pattern(*fams, 1);
    auto minus = detail::match_pattern(*fams, -1);
    if (plus && minus && *plus == *minus) return *plus;
    throw UnrecognizedAlgebraError(
        "tensor carries the symbolic family sign s but has no sign tag to resolve it");
  }
  auto label = detail::match_pattern(*fams, alg.sign().value_or(1));
  if (!label) throw UnrecognizedAlgebraError("sign pattern matches none of the twelve rows");
  return *label;
}

// ---------------------------------------------------------------------------
// Contraction graph (the cube)
// ---------------------------------------------------------------------------

struct ContractionEdge {
  AlgebraFamily from, to;
  Param param;
  friend bool operator==(const ContractionEdge&, const ContractionEdge&) = default;
  friend std::strong_ordering operator<=>(const ContractionEdge&, const ContractionEdge&) = default;
};

struct LabelEdge {
  AlgebraLabel from, to;
  Param param;
  friend bool operator==(const LabelEdge&, const LabelEdge&) = default;
  friend std::strong_ordering operator<=>(const LabelEdge&, const LabelEdge&) = default;
};

struct ContractionGraph {
  std::array<AlgebraFamily, 8> nodes = all_families();
  std::vector<ContractionEdge> edges;        // 12, one per family arrow
  std::vector<LabelEdge> label_edges;        // the arrows instantiated per sign
};

inline const char* edge_color(Param p) {
  switch (p) {
    case Param::m: return "green";
    case Param::E0: return "red";
    case Param::C: return "blue";
    default: return "black";
  }
}

inline const char* limit_name(Param p) {
  switch (p) {
    case Param::m: return "m→∞";
    case Param::E0: return "E0→∞";
    case Param::C: return "C→∞";
    default: return "?";
  }
}

/// Applies the three single-parameter limits to every template and records
/// each limit that lands on a different algebra: the twelve arrows of the
/// contraction cube (green m, red E0, blue C).
inline ContractionGraph contraction_graph() {
  ContractionGraph graph;
  std::set<ContractionEdge> edges;
  for (Param p : {Param::m, Param::E0, Param::C})
    for (AlgebraLabel l : all_labels()) {
      LieAlgebra contracted = contract_limit(build_algebra(l, ParamBasis::dynamical), {p});
      AlgebraLabel target = identify(contracted);
      if (target == l) continue;
      graph.label_edges.push_back({l, target, p});
      edges.insert({family_of(l), family_of(target), p});
    }
  graph.edges.assign(edges.begin(), edges.end());
  std::sort(graph.edges.begin(), graph.edges.end(),
            [](const ContractionEdge& a, const ContractionEdge& b) {
              auto rank = [](Param p) { return p == Param::m ? 0 : (p == Param::E0 ? 1 : 2); };
              return std::tuple(rank(a.param), a.from, a.to) <
                     std::tuple(rank(b.param), b.from, b.to);
            });
  std::sort(graph.label_edges.begin(), graph.label_edges.end(),
            [](const LabelEdge& a, const LabelEdge& b) {
              auto rank = [](Param p) { return p == Param::m ? 0 : (p == Param::E0 ? 1 : 2); };
              return std::tuple(rank(a.param), a.from, a.to) <
                     std::tuple(rank(b.param), b.from, b.to);
            });
  return graph;
}

}  // namespace kinalg
