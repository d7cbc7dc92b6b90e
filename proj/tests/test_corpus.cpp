#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "effopt/experiments.hpp"
#include "effopt/f1.hpp"
#include "effopt/f2.hpp"
#include "oracles.hpp"

using namespace effopt;

namespace {

GStarParams gstar_half() { return {SequenceSpec::standard(Rat(1, 2)), 53}; }

F2Params f2_default() { return {gstar_half(), Rat(1, 10)}; }

Dyadic rand_in(SplitMix64& rng, const Dyadic& lo, const Dyadic& hi) {
  return random_dyadic(rng, lo, hi);
}

bool rat_in(const Interval& enc, const Rat& v) {
  return to_rat(enc.lo()) <= v && v <= to_rat(enc.hi());
}

}  // namespace

TEST_CASE("f1 evaluates the printed values") {
  CHECK(f1_eval(Dyadic(0), Dyadic(0)).is_zero());
  CHECK(f1_eval(Dyadic(2), Dyadic(1)) == *Dyadic::parse("7/2"));
  CHECK(f1_eval(Dyadic(0), Dyadic(-2)) == Dyadic(3));
  // both branches meeting at the x1 = -1 seam give 1
  CHECK(f1_eval(Dyadic(-1), Dyadic(1)) == Dyadic(1));
  CHECK(f1_eval(*Dyadic::parse("-33/32"), Dyadic(1)) >
        f1_eval(Dyadic(-1), Dyadic(1)));
}

TEST_CASE("f1 branch continuity on 1000 seam points") {
  SplitMix64 rng(11);
  Dyadic eps = Dyadic::pow2(-40);
  for (int i = 0; i < 1000; ++i) {
    Dyadic t = rand_in(rng, Dyadic(-2), Dyadic(2));
    // x1 seams: value approached from both sides differs by at most slope*eps
    for (Dyadic seam : {Dyadic(-1), Dyadic(1)}) {
      Dyadic gap =
          (f1_eval(seam + eps, t) - f1_eval(seam - eps, t)).abs();
      CHECK(gap <= Dyadic(8) * eps);
    }
    // x2 seam at 0: the two half-plane formulas agree exactly on the axis
    CHECK((f1_eval(t, Dyadic(0)) -
           (t > Dyadic(1) ? t - Dyadic(1)
                          : (t < Dyadic(-1) ? -t - Dyadic(1) : Dyadic(0))))
              .is_zero());
  }
}

TEST_CASE("f1 nonnegativity and strict dominance on the rect") {
  SplitMix64 rng(12);
  for (int i = 0; i < 10000; ++i) {
    Dyadic x1 = rand_in(rng, Dyadic(-2), Dyadic(2));
    Dyadic x2 = rand_in(rng, Dyadic(-2), Dyadic(2));
    Dyadic v = f1_eval(x1, x2);
    CHECK(v.sign() >= 0);
    if (!x2.is_zero()) CHECK(v > f1_eval(x1, Dyadic(0)));
  }
}

TEST_CASE("f1 coordinate midpoint convexity along 1000 segments") {
  SplitMix64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    Dyadic fix = rand_in(rng, Dyadic(-2), Dyadic(2));
    Dyadic a = rand_in(rng, Dyadic(-2), Dyadic(2));
    Dyadic b = rand_in(rng, Dyadic(-2), Dyadic(2));
    Dyadic mid = (a + b).mul_pow2(-1);
    bool along_x1 = (i & 1) == 0;
    auto f = [&](const Dyadic& y) {
      return along_x1 ? f1_eval(y, fix) : f1_eval(fix, y);
    };
    CHECK(f(mid).mul_pow2(1) <= f(a) + f(b));
  }
}

TEST_CASE("f1 partial derivatives at spec points") {
  CHECK(f1_partial(Dyadic(0), Dyadic(1), 0).value() == *Dyadic::parse("1/2"));
  CHECK(f1_partial(Dyadic(2), Dyadic(0), 0).value() == Dyadic(1));
  OneSided s = f1_partial(Dyadic(0), Dyadic(0), 1);
  CHECK(s.seam());
  CHECK(s.left == *Dyadic::parse("-3/2"));
  CHECK(s.right == *Dyadic::parse("3/2"));
  OneSided seam1 = f1_partial(Dyadic(1), Dyadic(1), 0);
  CHECK(seam1.seam());
  CHECK(seam1.left == *Dyadic::parse("1/2"));
  CHECK(seam1.right == *Dyadic::parse("3/2"));
  CHECK_THROWS_AS(seam1.value(), std::logic_error);
}

TEST_CASE("gstar is exactly zero on the flat segment") {
  GStarParams p = gstar_half();
  for (int n : {1, 5, 40}) {
    Interval v = gstar_eval(p, *Dyadic::parse("1/4"), n);
    CHECK(v.is_point());
    CHECK(v.lo().is_zero());
  }
  Interval at_limit = gstar_eval(p, *Dyadic::parse("-1/2"), 10);
  CHECK(at_limit.lo().is_zero());
  CHECK(at_limit.is_point());
}

TEST_CASE("gstar(2) encloses 39/28 and is tight at depth 53") {
  GStarParams p = gstar_half();
  Interval v = gstar_eval(p, Dyadic(2), 53);
  CHECK(rat_in(v, Rat(39, 28)));
  CHECK(v.width() <= Dyadic::pow2(-30));
  auto oracle = oracles::gstar_series(p.seq, Rat(2), 60);
  CHECK(to_rat(v.lo()) <= oracle.hi);
  CHECK(oracle.lo <= to_rat(v.hi()));
}

TEST_CASE("gstar evenness is exact") {
  SplitMix64 rng(21);
  GStarParams p{SequenceSpec::standard(Rat(1, 20)), 53};
  for (int i = 0; i < 200; ++i) {
    Dyadic x = rand_in(rng, Dyadic(-3), Dyadic(3));
    Interval a = gstar_eval(p, x, 40), b = gstar_eval(p, -x, 40);
    CHECK(a.lo() == b.lo());
    CHECK(a.hi() == b.hi());
  }
}

TEST_CASE("gstar derivative closed form and certification") {
  GStarParams p = gstar_half();
  SlopeEnclosure d = gstar_deriv(p, Dyadic(-2), 40);
  CHECK(d.cert == SlopeCert::certified);
  CHECK(d.piece == 1);
  CHECK(rat_in(d.value, Rat(-7, 3)));  // 2*(-2) + 5/3

  // slope coefficients c1(1) = 2 and c1(2) = 1 show up as the slope of the
  // enclosure across nearby points inside one piece
  auto piece_slope = [&](const char* xa, const char* xb) -> Rat {
    Dyadic a = *Dyadic::parse(xa), b = *Dyadic::parse(xb);
    Interval da = gstar_deriv(p, a, 40).value, db = gstar_deriv(p, b, 40).value;
    return Rat((to_rat(da.lo()) - to_rat(db.lo())) / (to_rat(a) - to_rat(b)));
  };
  CHECK(abs(piece_slope("5/2", "9/4") - 2) < Rat(1, 1000));    // piece 1
  CHECK(abs(piece_slope("7/8", "13/16") - 1) < Rat(1, 1000));  // piece 2

  SlopeEnclosure flat = gstar_deriv(p, *Dyadic::parse("1/4"), 40);
  CHECK(flat.cert == SlopeCert::certified);
  CHECK(flat.piece == 0);
  CHECK(flat.value.is_point());
  CHECK(flat.value.lo().is_zero());
}

TEST_CASE("gstar derivative piece bracketing at sequence points") {
  GStarParams p = gstar_half();
  // xi_2 = 3/4 belongs to piece 3's closure (right endpoint of piece 3)...
  SlopeEnclosure at_xi2 = gstar_deriv(p, *Dyadic::parse("3/4"), 40);
  CHECK(at_xi2.piece == 3);
  // value just above xi_2 lands in piece 2 and the derivative is continuous
  SlopeEnclosure above = gstar_deriv(p, *Dyadic::parse("49/64"), 40);
  CHECK(above.piece == 2);
  CHECK(to_rat(above.value.hi()) >= to_rat(at_xi2.value.lo()));
}

TEST_CASE("plateau sequences certify only outside the hidden band") {
  GStarParams p{SequenceSpec::plateau(Rat(1, 2), 16), 53};
  // public base: certified zero
  SlopeEnclosure inside = gstar_deriv(p, *Dyadic::parse("1/2"), 40, 8);
  CHECK(inside.cert == SlopeCert::certified);
  CHECK(inside.value.lo().is_zero());
  // above every probed term: certified piece
  SlopeEnclosure beyond = gstar_deriv(p, Dyadic(1), 40, 8);
  CHECK(beyond.cert == SlopeCert::certified);
  // between base and the deepest probe: honest one-sided hull around zero
  Dyadic probe_band = *Dyadic::parse("1/2") + Dyadic::pow2(-7);
  SlopeEnclosure band = gstar_deriv(p, probe_band, 40, 5);
  CHECK(band.cert == SlopeCert::one_sided);
  CHECK(band.value.contains(Dyadic(0)));
  // the hull covers the true slope: compare with a deep-probe certified run
  SlopeEnclosure truth = gstar_deriv(p, probe_band, 60, 64);
  CHECK(truth.cert == SlopeCert::certified);
  CHECK(band.value.lo() <= truth.value.lo());
  CHECK(truth.value.hi() <= band.value.hi());
}

TEST_CASE("derivative property suite for three xi values") {
  for (const Rat& xi : {Rat(1, 20), Rat(1, 2), Rat(15, 16)}) {
    GStarParams p{SequenceSpec::standard(xi), 53};
    // zero on the flat segment, evenness handled above; slope bound and
    // monotonicity of the derivative on a grid
    Interval prev;
    bool have_prev = false;
    Dyadic step = *Dyadic::parse("1/64");
    Dyadic prev_x;
    for (Dyadic x = Dyadic(-3); x <= Dyadic(3); x += step) {
      Interval d = gstar_deriv(p, x, 53).value;
      if (have_prev) {
        // monotone nondecreasing within enclosure slack
        CHECK(d.hi() >= prev.lo());
        // difference quotient bounded by 2 within slack
        Rat lhs = to_rat(d.lo()) - to_rat(prev.hi());
        Rat rhs = 2 * (to_rat(x) - to_rat(prev_x));
        CHECK(lhs <= rhs);
      }
      prev = d;
      prev_x = x;
      have_prev = true;
    }
  }
}

TEST_CASE("finite differences of gstar match the closed-form derivative") {
  GStarParams p = gstar_half();
  for (int he : {6, 8, 10}) {
    Dyadic h = Dyadic::pow2(-he);
    for (Dyadic x : {*Dyadic::parse("-9/8"), *Dyadic::parse("3/4"),
                     *Dyadic::parse("13/8"), *Dyadic::parse("-2")}) {
      Interval fp = gstar_eval(p, x + h, 60), fm = gstar_eval(p, x - h, 60);
      Interval d = gstar_deriv(p, x, 60).value;
      // |fd - d| <= h * (max slope 2) + enclosure slack
      Rat fd_lo = (to_rat(fp.lo()) - to_rat(fm.hi())) / (2 * to_rat(h));
      Rat fd_hi = (to_rat(fp.hi()) - to_rat(fm.lo())) / (2 * to_rat(h));
      Rat allowance = 2 * to_rat(h) + to_rat(d.width()) + to_rat(fp.width()) +
                      to_rat(fm.width());
      CHECK(fd_hi >= to_rat(d.lo()) - allowance);
      CHECK(fd_lo <= to_rat(d.hi()) + allowance);
    }
  }
}

TEST_CASE("f2 evaluation at spec points") {
  F2Params p = f2_default();
  // u vanishes on the axis: f2(x1, 0) encloses gstar(x1) and nothing more
  for (Dyadic x1 : {Dyadic(0), *Dyadic::parse("5/4"), Dyadic(-2)}) {
    Interval a = f2_eval(p, x1, Dyadic(0), 48);
    auto oracle = oracles::gstar_series(p.gstar.seq, to_rat(x1), 70);
    CHECK(to_rat(a.lo()) <= oracle.hi);
    CHECK(oracle.lo <= to_rat(a.hi()));
    CHECK(a.width() <= Dyadic::pow2(-40));
  }
  Interval one = f2_eval(p, Dyadic(0), Dyadic(1), 48);
  CHECK(one.contains(Dyadic(1)));

  // 39/28 + e^(1/5)
  Interval v = f2_eval(p, Dyadic(2), Dyadic(1), 60);
  auto e02 = oracles::exp_series(Rat(1, 5), 60);
  Rat lo = Rat(39, 28) + e02.lo, hi = Rat(39, 28) + e02.hi;
  CHECK(to_rat(v.lo()) <= lo);
  CHECK(hi <= to_rat(v.hi()));
}

TEST_CASE("f2 partial in x1 at spec points") {
  F2Params p = f2_default();
  SlopeEnclosure flat = f2_partial_x1(p, *Dyadic::parse("1/4"), Dyadic(0), 48);
  CHECK(flat.value.is_point());
  CHECK(flat.value.lo().is_zero());

  // -7/3 + (1/10) e^(-1/5)
  SlopeEnclosure d = f2_partial_x1(p, Dyadic(-2), Dyadic(1), 60);
  auto em02 = oracles::exp_series(Rat(-1, 5), 60);
  Rat lo = Rat(-7, 3) + em02.lo / 10, hi = Rat(-7, 3) + em02.hi / 10;
  CHECK(to_rat(d.value.lo()) <= lo);
  CHECK(hi <= to_rat(d.value.hi()));

  // sign-change bracket for the x2 = 1 slice
  CHECK(f2_partial_x1(p, Dyadic(-2), Dyadic(1), 60).value.hi().sign() < 0);
  CHECK(f2_partial_x1(p, *Dyadic::parse("-1/2"), Dyadic(1), 60).value.lo().sign() > 0);
}

TEST_CASE("f2 is smooth across the x2 axis") {
  F2Params p = f2_default();
  Dyadic x1 = *Dyadic::parse("3/2");
  Dyadic prev_mag;
  for (int k = 2; k <= 12; k += 2) {
    Dyadic h = Dyadic::pow2(-k);
    Interval up = f2_partial_x2(p, x1, h, 50);
    Interval dn = f2_partial_x2(p, x1, -h, 50);
    Dyadic mag_up = up.lo().abs() > up.hi().abs() ? up.lo().abs() : up.hi().abs();
    Dyadic mag_dn = dn.lo().abs() > dn.hi().abs() ? dn.lo().abs() : dn.hi().abs();
    Dyadic mag = mag_up > mag_dn ? mag_up : mag_dn;
    if (k > 2) CHECK(mag < prev_mag);
    prev_mag = mag;
  }
  CHECK(f2_partial_x2(p, x1, Dyadic(0), 50).is_point());
}

TEST_CASE("sequence validation") {
  CHECK_THROWS_AS(SequenceSpec::standard(Rat(0)), std::invalid_argument);
  CHECK_THROWS_AS(SequenceSpec::standard(Rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(SequenceSpec::plateau(Rat(1, 2), 0), std::invalid_argument);
  F2Params bad{gstar_half(), Rat(0)};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("sequences decrease strictly far past the hidden index") {
  SequenceSpec p = SequenceSpec::plateau(Rat(1, 2), 12);
  for (int n = 1; n <= 12 + 64; ++n) CHECK(p.term(n + 1) < p.term(n));
  SequenceSpec s = SequenceSpec::standard(Rat(1, 20));
  for (int n = 1; n <= 64; ++n) CHECK(s.term(n + 1) < s.term(n));
}
