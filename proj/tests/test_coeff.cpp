#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "kinalg/coeff.hpp"

using namespace kinalg;

namespace {

Coefficient mono(Rational scale, std::initializer_list<std::pair<Param, int>> exps,
                 int sign_power = 0) {
  Coefficient c = Coefficient::of(scale);
  for (auto& [p, e] : exps) c = c.with(p, HalfInt::whole(e));
  if (sign_power) c = c.with_sign();
  return c;
}

/// Random coefficient with integer exponents in the given basis.
Coefficient random_coeff(std::mt19937_64& rng, ParamBasis basis, bool allow_sign = true) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4), exp(-3, 3), flag(0, 1);
  int n = num(rng);
  if (n == 0) n = 1;
  Coefficient c = Coefficient::of(Rational(n, den(rng)));
  auto params = basis == ParamBasis::kinematical
                    ? std::array<Param, 3>{Param::c, Param::r, Param::tau}
                    : std::array<Param, 3>{Param::m, Param::C, Param::E0};
  for (Param p : params) c = c.with(p, HalfInt::whole(exp(rng)));
  if (allow_sign && flag(rng)) c = c.with_sign();
  return c;
}

}  // namespace

TEST_CASE("coefficient canonical form") {
  auto zero = mono(0, {{Param::c, -2}});
  REQUIRE(zero.is_zero());
  REQUIRE(zero == Coefficient::zero());
  REQUIRE(zero.sign_power() == 0);

  auto c = mono(1, {{Param::c, 2}}).with(Param::c, HalfInt::whole(-2));
  REQUIRE(c == Coefficient::of(1));

  REQUIRE_THROWS_AS(mono(1, {{Param::c, 1}, {Param::m, 1}}), MixedBasisError);
}

TEST_CASE("coeff_mul follows monomial arithmetic") {
  // (1, {c:-2}) x (1, {c:-2}) -> (1, {c:-4})
  auto inv_c2 = mono(1, {{Param::c, -2}});
  REQUIRE(inv_c2 * inv_c2 == mono(1, {{Param::c, -4}}));

  // (1/2, {m:-1}) x (2, {E0:-1}) -> (1, {m:-1, E0:-1})
  REQUIRE(mono(Rational(1, 2), {{Param::m, -1}}) * mono(2, {{Param::E0, -1}}) ==
          mono(1, {{Param::m, -1}, {Param::E0, -1}}));

  // s * s = 1
  auto s = mono(1, {}, 1);
  REQUIRE(s * s == Coefficient::of(1));

  REQUIRE_THROWS_AS(mono(1, {{Param::c, 1}}) * mono(1, {{Param::m, 1}}), MixedBasisError);
}

TEST_CASE("coeff_add requires like monomials") {
  auto a = mono(1, {{Param::C, -1}});
  REQUIRE((a + (-a)).is_zero());
  REQUIRE(mono(1, {{Param::m, -1}}) + Coefficient::zero() == mono(1, {{Param::m, -1}}));
  REQUIRE_THROWS_AS(mono(1, {{Param::m, -1}}) + mono(1, {{Param::E0, -1}}),
                    UnlikeMonomialsError);
}

TEST_CASE("convert_basis: the three defining relations") {
  // 1/c^2 -> m/E0
  REQUIRE(mono(1, {{Param::c, -2}}).convert_basis(ParamBasis::dynamical) ==
          mono(1, {{Param::m, 1}, {Param::E0, -1}}));
  // tau/(c r) -> m/E0
  REQUIRE(mono(1, {{Param::tau, 1}, {Param::c, -1}, {Param::r, -1}})
              .convert_basis(ParamBasis::dynamical) ==
          mono(1, {{Param::m, 1}, {Param::E0, -1}}));
  // r/(c tau) -> 1
  REQUIRE(mono(1, {{Param::r, 1}, {Param::c, -1}, {Param::tau, -1}})
              .convert_basis(ParamBasis::dynamical) == Coefficient::of(1));
  // scale and sign ride along
  REQUIRE(mono(Rational(-3, 2), {{Param::tau, -2}}, 1).convert_basis(ParamBasis::dynamical) ==
          mono(Rational(-3, 2), {{Param::m, -1}, {Param::C, -1}}, 1));
}

TEST_CASE("convert_basis: dynamical to kinematical") {
  // m/E0 -> 1/c^2
  REQUIRE(mono(1, {{Param::m, 1}, {Param::E0, -1}}).convert_basis(ParamBasis::kinematical) ==
          mono(1, {{Param::c, -2}}));
  // 1/(m C) -> 1/tau^2
  REQUIRE(mono(1, {{Param::m, -1}, {Param::C, -1}}).convert_basis(ParamBasis::kinematical) ==
          mono(1, {{Param::tau, -2}}));
  // 1/(C E0) -> 1/(c^2 tau^2), the r-eliminated form of 1/r^2
  REQUIRE(mono(1, {{Param::C, -1}, {Param::E0, -1}}).convert_basis(ParamBasis::kinematical) ==
          mono(1, {{Param::c, -2}, {Param::tau, -2}}));
  // a residual mass power has no kinematical expression
  REQUIRE_THROWS_AS(mono(1, {{Param::m, -1}}).convert_basis(ParamBasis::kinematical),
                    MixedBasisError);
}

TEST_CASE("convert_basis round trips") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    // r-free kinematical monomials convert losslessly
    Coefficient kin = random_coeff(rng, ParamBasis::kinematical);
    kin = kin.with(Param::r, -kin.exponent(Param::r));  // strip r
    auto through = kin.convert_basis(ParamBasis::dynamical).convert_basis(ParamBasis::kinematical);
    REQUIRE(through == kin);

    // balanced dynamical monomials convert losslessly
    Coefficient dyn = random_coeff(rng, ParamBasis::dynamical);
    HalfInt balance = dyn.exponent(Param::C) - dyn.exponent(Param::E0);
    dyn = dyn.with(Param::m, balance - dyn.exponent(Param::m));
    auto back = dyn.convert_basis(ParamBasis::kinematical).convert_basis(ParamBasis::dynamical);
    REQUIRE(back == dyn);
  }
}

TEST_CASE("conversion of an r monomial collapses along r = c tau") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    Coefficient kin = random_coeff(rng, ParamBasis::kinematical);
    auto through = kin.convert_basis(ParamBasis::dynamical).convert_basis(ParamBasis::kinematical);
    REQUIRE(through == kin.apply_constraint());
  }
}

TEST_CASE("limit_degree") {
  REQUIRE(mono(1, {{Param::c, -2}}).limit_degree({Param::c, Param::r}) == HalfInt::whole(-2));
  REQUIRE(mono(1, {{Param::r, 1}, {Param::c, -1}, {Param::tau, -1}})
              .limit_degree({Param::c, Param::r}) == HalfInt::whole(0));
  REQUIRE(mono(1, {{Param::C, -1}}, 1).limit_degree({Param::E0}) == HalfInt::whole(0));
}

TEST_CASE("limit_degree is additive under multiplication") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 500; ++i) {
    Coefficient a = random_coeff(rng, ParamBasis::dynamical);
    Coefficient b = random_coeff(rng, ParamBasis::dynamical);
    for (auto diverging : {std::set<Param>{Param::m}, std::set<Param>{Param::m, Param::E0},
                           std::set<Param>{Param::C, Param::E0}}) {
      REQUIRE((a * b).limit_degree(diverging) ==
              a.limit_degree(diverging) + b.limit_degree(diverging));
    }
  }
}

TEST_CASE("apply_constraint eliminates r") {
  // tau/(c r) -> 1/c^2
  REQUIRE(mono(1, {{Param::tau, 1}, {Param::c, -1}, {Param::r, -1}}).apply_constraint() ==
          mono(1, {{Param::c, -2}}));
  // c/(r tau) -> 1/tau^2
  REQUIRE(mono(1, {{Param::c, 1}, {Param::r, -1}, {Param::tau, -1}}).apply_constraint() ==
          mono(1, {{Param::tau, -2}}));
  // no r present: identity
  REQUIRE(mono(1, {{Param::c, -2}}).apply_constraint() == mono(1, {{Param::c, -2}}));
  // idempotent
  auto a = mono(Rational(2, 3), {{Param::r, -2}, {Param::tau, 1}}, 1);
  REQUIRE(a.apply_constraint().apply_constraint() == a.apply_constraint());
}

TEST_CASE("apply_constraint preserves the value on the constraint surface") {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> base(1, 6);
  for (int i = 0; i < 200; ++i) {
    Coefficient a = random_coeff(rng, ParamBasis::kinematical);
    // Square values keep half-integer powers exact; r = c * tau.
    Rational c(base(rng) * base(rng)), tau(base(rng) * base(rng));
    std::map<Param, Rational> at{{Param::c, c}, {Param::tau, tau}, {Param::r, c * tau}};
    for (int sgn : {1, -1}) REQUIRE(a.eval(at, sgn) == a.apply_constraint().eval(at, sgn));
  }
}

TEST_CASE("multiplication is associative and commutative") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Coefficient a = random_coeff(rng, ParamBasis::kinematical);
    Coefficient b = random_coeff(rng, ParamBasis::kinematical);
    Coefficient c = random_coeff(rng, ParamBasis::kinematical);
    REQUIRE(a * b == b * a);
    REQUIRE((a * b) * c == a * (b * c));
  }
}

TEST_CASE("sign substitution") {
  auto s_over_C = mono(1, {{Param::C, -1}}, 1);
  REQUIRE(s_over_C.substitute_sign(1) == mono(1, {{Param::C, -1}}));
  REQUIRE(s_over_C.substitute_sign(-1) == mono(-1, {{Param::C, -1}}));
  REQUIRE(mono(2, {}).substitute_sign(-1) == mono(2, {}));
}

TEST_CASE("exact evaluation") {
  auto a = mono(Rational(3, 2), {{Param::c, -2}});
  REQUIRE(a.eval({{Param::c, Rational(2)}}) == Rational(3, 8));
  auto half = Coefficient::of(1).with(Param::c, HalfInt::of_halves(1));
  REQUIRE(half.eval({{Param::c, Rational(9, 4)}}) == Rational(3, 2));
  REQUIRE_THROWS_AS(half.eval({{Param::c, Rational(2)}}), Error);
  REQUIRE_THROWS_AS(a.eval({}), Error);
}
