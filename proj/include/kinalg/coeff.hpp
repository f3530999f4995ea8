#pragma once

#include <array>
#include <compare>
#include <cstdlib>
#include <initializer_list>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kinalg/rational.hpp"

namespace kinalg {

/// The two parameter triples an algebra can be written in.
enum class ParamBasis { kinematical, dynamical };

/// The six structure-constant parameters: speed c, radius r and period tau
/// (kinematical, constrained by r = c*tau), or mass m, compliance C and
/// energy E0 (dynamical, related by c^2 = E0/m, tau^2 = m*C, r^2 = C*E0).
enum class Param : int { c = 0, r = 1, tau = 2, m = 3, C = 4, E0 = 5 };

inline ParamBasis basis_of(Param p) {
  return static_cast<int>(p) <= static_cast<int>(Param::tau) ? ParamBasis::kinematical
                                                             : ParamBasis::dynamical;
}

inline const char* param_name(Param p) {
  switch (p) {
    case Param::c: return "c";
    case Param::r: return "r";
    case Param::tau: return "tau";
    case Param::m: return "m";
    case Param::C: return "C";
    case Param::E0: return "E0";
  }
  return "?";
}

inline const char* basis_name(ParamBasis b) {
  return b == ParamBasis::kinematical ? "kinematical" : "dynamical";
}

/// A coefficient mixes symbols from both parameter bases, or a conversion
/// between bases is undefined for the given monomial.
struct MixedBasisError : Error {
  using Error::Error;
};

/// Sum of coefficients with different parameter monomials. Structure
/// constants are single monomials, so this signals corrupted input.
struct UnlikeMonomialsError : Error {
  using Error::Error;
};

/// Exact half-integer, stored as twice its value. The basis-conversion
/// relations (square roots) are the only source of halves.
class HalfInt {
 public:
  constexpr HalfInt() : halves_(0) {}
  static constexpr HalfInt whole(int n) { return HalfInt(2 * n); }
  static constexpr HalfInt of_halves(int h) { return HalfInt(h); }

  int halves() const { return halves_; }
  bool is_zero() const { return halves_ == 0; }
  bool is_integer() const { return halves_ % 2 == 0; }
  bool is_negative() const { return halves_ < 0; }
  int whole_part() const { return halves_ / 2; }  // valid when is_integer()

  friend HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(a.halves_ + b.halves_); }
  friend HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(a.halves_ - b.halves_); }
  HalfInt operator-() const { return HalfInt(-halves_); }
  friend bool operator==(HalfInt a, HalfInt b) = default;
  friend std::strong_ordering operator<=>(HalfInt a, HalfInt b) = default;

  Rational as_rational() const { return Rational(halves_, 2); }

  /// "2", "-1", "1/2", "-3/2"
  std::string str() const {
    if (is_integer()) return std::to_string(halves_ / 2);
    return std::to_string(halves_) + "/2";
  }

 private:
  explicit constexpr HalfInt(int halves) : halves_(halves) {}
  int halves_;
};

/// A parameter monomial together with a power of the family sign s (s^2 = 1).
/// Exponents are sorted by parameter and never zero.
struct ParamMono {
  std::vector<std::pair<Param, HalfInt>> exps;
  int sign_power = 0;  // 0 or 1

  friend bool operator==(const ParamMono&, const ParamMono&) = default;
  friend std::strong_ordering operator<=>(const ParamMono& a, const ParamMono& b) {
    if (auto c = a.sign_power <=> b.sign_power; c != 0) return c;
    return a.exps <=> b.exps;
  }
};

/// An exact rational multiple of a parameter monomial, optionally carrying
/// one power of the family sign s. Coefficients are single monomials; sums
/// of unlike monomials are rejected (UnlikeMonomialsError).
class Coefficient {
 public:
  Coefficient() = default;  // zero

  static Coefficient zero() { return Coefficient(); }
  static Coefficient of(Rational scale) {
    Coefficient c;
    c.scale_ = scale;
    return c;
  }
  static Coefficient monomial(Rational scale,
                              std::initializer_list<std::pair<Param, HalfInt>> exps,
                              int sign_power = 0) {
    Coefficient c;
    c.scale_ = scale;
    for (auto& e : exps) c.mono_.exps.push_back(e);
    c.mono_.sign_power = sign_power;
    c.canonicalize();
    return c;
  }
  static Coefficient from_mono(Rational scale, ParamMono mono) {
    Coefficient c;
    c.scale_ = scale;
    c.mono_ = std::move(mono);
    c.canonicalize();
    return c;
  }

  /// this * p^e
  Coefficient with(Param p, HalfInt e) const {
    Coefficient c = *this;
    c.mono_.exps.emplace_back(p, e);
    c.canonicalize();
    return c;
  }
  /// this * s
  Coefficient with_sign() const {
    Coefficient c = *this;
    c.mono_.sign_power ^= 1;
    c.canonicalize();
    return c;
  }

  const Rational& scale() const { return scale_; }
  const ParamMono& mono() const { return mono_; }
  int sign_power() const { return mono_.sign_power; }
  bool is_zero() const { return scale_.is_zero(); }
  bool is_parameter_free() const { return mono_.exps.empty(); }

  HalfInt exponent(Param p) const {
    for (auto& [q, e] : mono_.exps)
      if (q == p) return e;
    return HalfInt();
  }

  /// The basis the exponents live in; nullopt for parameter-free values.
  std::optional<ParamBasis> basis() const {
    if (mono_.exps.empty()) return std::nullopt;
    return basis_of(mono_.exps.front().first);
  }

  bool like_monomial(const Coefficient& o) const { return mono_ == o.mono_; }

  friend Coefficient operator*(const Coefficient& a, const Coefficient& b) {
    if (a.basis() && b.basis() && *a.basis() != *b.basis())
      throw MixedBasisError("cannot multiply coefficients from different parameter bases");
    Coefficient c;
    c.scale_ = a.scale_ * b.scale_;
    c.mono_.exps = a.mono_.exps;
    for (auto& e : b.mono_.exps) c.mono_.exps.push_back(e);
    c.mono_.sign_power = a.mono_.sign_power + b.mono_.sign_power;  // reduced mod 2 below
    c.canonicalize();
    return c;
  }

  friend Coefficient operator+(const Coefficient& a, const Coefficient& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.mono_ != b.mono_)
      throw UnlikeMonomialsError("cannot add coefficients with unlike monomials: " + a.str() +
                                 " + " + b.str());
    Coefficient c;
    c.scale_ = a.scale_ + b.scale_;
    c.mono_ = a.mono_;
    c.canonicalize();
    return c;
  }
  friend Coefficient operator-(const Coefficient& a, const Coefficient& b) { return a + (-b); }

  Coefficient operator-() const {
    Coefficient c = *this;
    c.scale_ = -c.scale_;
    return c;
  }
  friend Coefficient operator*(const Rational& r, const Coefficient& c) {
    Coefficient out = c;
    out.scale_ = r * out.scale_;
    out.canonicalize();
    return out;
  }

  friend bool operator==(const Coefficient&, const Coefficient&) = default;
  friend std::strong_ordering operator<=>(const Coefficient& a, const Coefficient& b) {
    if (auto c = a.mono_ <=> b.mono_; c != 0) return c;
    return a.scale_ <=> b.scale_;
  }

  /// Sum of exponents over the diverging parameters. Negative: the
  /// coefficient vanishes in the limit; zero: it survives unchanged;
  /// positive: it diverges.
  HalfInt limit_degree(const std::set<Param>& diverging) const {
    HalfInt d;
    for (auto& [p, e] : mono_.exps)
      if (diverging.count(p)) d = d + e;
    return d;
  }

  /// Substitute s := sgn (sgn = +1 or -1); afterwards sign_power == 0.
  Coefficient substitute_sign(int sgn) const {
    Coefficient c = *this;
    if (c.mono_.sign_power && sgn < 0) c.scale_ = -c.scale_;
    c.mono_.sign_power = 0;
    c.canonicalize();
    return c;
  }

  /// Eliminate r via the constraint r = c*tau. Identity on r-free input.
  Coefficient apply_constraint() const {
    if (basis() == ParamBasis::dynamical)
      throw MixedBasisError("apply_constraint expects a kinematical coefficient");
    HalfInt er = exponent(Param::r);
    if (er.is_zero()) return *this;
    Coefficient c = Coefficient::of(scale_);
    c.mono_.sign_power = mono_.sign_power;
    c.mono_.exps.emplace_back(Param::c, exponent(Param::c) + er);
    c.mono_.exps.emplace_back(Param::tau, exponent(Param::tau) + er);
    c.canonicalize();
    return c;
  }

  /// Change parameter basis via c^2 = E0/m, tau^2 = m*C, r^2 = C*E0.
  ///
  /// Kinematical -> dynamical substitutes c = (E0/m)^(1/2), r = (C*E0)^(1/2),
  /// tau = (m*C)^(1/2); monomials equal under r = c*tau map to the same
  /// image. Dynamical -> kinematical is defined when the m-exponent balances
  /// as e_m = e_C - e_E0 (then m^(b-d) C^b E0^d = (mC)^b (E0/m)^d =
  /// tau^2b c^2d); a residual mass power has no kinematical expression and
  /// raises MixedBasisError. Round trips are the identity on r-free
  /// kinematical monomials and on balanced dynamical monomials.
  Coefficient convert_basis(ParamBasis target) const {
    if (is_parameter_free()) return *this;
    if (basis() == target) return *this;
    Coefficient out = Coefficient::of(scale_);
    out.mono_.sign_power = mono_.sign_power;
    if (target == ParamBasis::dynamical) {
      int hc = exponent(Param::c).halves();
      int hr = exponent(Param::r).halves();
      int ht = exponent(Param::tau).halves();
      // e_m = (e_tau - e_c)/2, e_C = (e_r + e_tau)/2, e_E0 = (e_c + e_r)/2
      int hm = ht - hc, hC = hr + ht, hE = hc + hr;
      if (hm % 2 || hC % 2 || hE % 2)
        throw MixedBasisError("conversion of " + str() +
                              " would need exponents of denominator 4");
      out.mono_.exps.emplace_back(Param::m, HalfInt::of_halves(hm / 2));
      out.mono_.exps.emplace_back(Param::C, HalfInt::of_halves(hC / 2));
      out.mono_.exps.emplace_back(Param::E0, HalfInt::of_halves(hE / 2));
    } else {
      HalfInt em = exponent(Param::m);
      HalfInt eC = exponent(Param::C);
      HalfInt eE = exponent(Param::E0);
      if (em != eC - eE)
        throw MixedBasisError("no kinematical expression for " + str() +
                              ": residual mass power");
      out.mono_.exps.emplace_back(Param::c, HalfInt::of_halves(2 * eE.halves()));
      out.mono_.exps.emplace_back(Param::tau, HalfInt::of_halves(2 * eC.halves()));
    }
    out.canonicalize();
    return out;
  }

  /// Exact evaluation at positive rational parameter values with s = sgn.
  /// Half-integer exponents require the corresponding value^exponent*2 to be
  /// a perfect rational square.
  Rational eval(const std::map<Param, Rational>& values, int sgn = 1) const {
    Rational v = scale_;
    if (mono_.sign_power && sgn < 0) v = -v;
    for (auto& [p, e] : mono_.exps) {
      auto it = values.find(p);
      if (it == values.end())
        throw Error(std::string("no value given for parameter ") + param_name(p));
      if (e.is_integer()) {
        v *= Rational::pow(it->second, e.whole_part());
      } else {
        auto sq = Rational::pow(it->second, e.halves()).sqrt_exact();
        if (!sq) throw Error("exact evaluation of a half-integer power needs a square value");
        v *= *sq;
      }
    }
    return v;
  }

  double eval_double(const std::map<Param, double>& values, int sgn = 1) const {
    double v = scale_.to_double();
    if (mono_.sign_power && sgn < 0) v = -v;
    for (auto& [p, e] : mono_.exps) {
      auto it = values.find(p);
      if (it == values.end())
        throw Error(std::string("no value given for parameter ") + param_name(p));
      v *= std::pow(it->second, e.halves() / 2.0);
    }
    return v;
  }

  /// Text form "<num>/<den> * c^<e> r^<e> tau^<e> * s^<k>" with unit factors
  /// omitted: "0/1", "1/1", "c^-2", "1/2 * m^-1", "C^-1 E0^-1 * s^1".
  std::string str() const {
    if (is_zero()) return "0/1";
    std::string params;
    for (auto& [p, e] : mono_.exps) {
      if (!params.empty()) params += ' ';
      params += param_name(p);
      params += '^';
      params += e.str();
    }
    std::string out;
    bool unit_scale = scale_.is_one();
    bool have_tail = !params.empty() || mono_.sign_power;
    if (!unit_scale || !have_tail) {
      out = std::to_string(scale_.num()) + "/" + std::to_string(scale_.den());
    }
    if (!params.empty()) {
      if (!out.empty()) out += " * ";
      out += params;
    }
    if (mono_.sign_power) {
      if (!out.empty()) out += " * ";
      out += "s^1";
    }
    return out;
  }

  /// Inverse of str(). Throws Error on malformed input.
  static Coefficient parse(const std::string& text);

 private:
  void canonicalize() {
    mono_.sign_power &= 1;
    if (scale_.is_zero()) {
      mono_.exps.clear();
      mono_.sign_power = 0;
      return;
    }
    std::map<Param, HalfInt> merged;
    for (auto& [p, e] : mono_.exps) {
      auto [it, fresh] = merged.emplace(p, e);
      if (!fresh) it->second = it->second + e;
    }
    mono_.exps.clear();
    std::optional<ParamBasis> b;
    for (auto& [p, e] : merged) {
      if (e.is_zero()) continue;
      if (b && *b != basis_of(p))
        throw MixedBasisError("coefficient mixes kinematical and dynamical parameters");
      b = basis_of(p);
      mono_.exps.emplace_back(p, e);
    }
  }

  Rational scale_;
  ParamMono mono_;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = s.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + sep.size();
  }
}

inline long parse_long(const std::string& s) {
  std::size_t used = 0;
  long v = std::stol(s, &used);
  if (used != s.size()) throw Error("malformed integer '" + s + "'");
  return v;
}

inline HalfInt parse_halfint(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return HalfInt::whole(static_cast<int>(parse_long(s)));
  if (s.substr(slash + 1) != "2") throw Error("malformed exponent '" + s + "'");
  return HalfInt::of_halves(static_cast<int>(parse_long(s.substr(0, slash))));
}

inline std::optional<Param> param_by_name(const std::string& n) {
  for (Param p : {Param::c, Param::r, Param::tau, Param::m, Param::C, Param::E0})
    if (n == param_name(p)) return p;
  return std::nullopt;
}

}  // namespace detail

inline Coefficient Coefficient::parse(const std::string& text) {
  if (text.empty()) throw Error("empty coefficient text");
  Rational scale(1);
  ParamMono mono;
  bool saw_scale = false;
  for (const std::string& chunk : detail::split(text, " * ")) {
    if (chunk.empty()) throw Error("malformed coefficient '" + text + "'");
    if (chunk == "s^1") {
      mono.sign_power ^= 1;
      continue;
    }
    if (chunk[0] == '-' || (chunk[0] >= '0' && chunk[0] <= '9')) {
      if (saw_scale) throw Error("two scale factors in '" + text + "'");
      saw_scale = true;
      auto slash = chunk.find('/');
      if (slash == std::string::npos) {
        scale = Rational(detail::parse_long(chunk));
      } else {
        scale = Rational(detail::parse_long(chunk.substr(0, slash)),
                         detail::parse_long(chunk.substr(slash + 1)));
      }
      continue;
    }
    for (const std::string& factor : detail::split(chunk, " ")) {
      auto caret = factor.find('^');
      if (caret == std::string::npos) throw Error("malformed factor '" + factor + "'");
      auto p = detail::param_by_name(factor.substr(0, caret));
      if (!p) throw Error("unknown parameter '" + factor.substr(0, caret) + "'");
      mono.exps.emplace_back(*p, detail::parse_halfint(factor.substr(caret + 1)));
    }
  }
  return Coefficient::from_mono(scale, std::move(mono));
}

}  // namespace kinalg
