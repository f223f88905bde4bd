#include <cmath>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <gtest/gtest.h>

#include "fracheat/error.hpp"
#include "fracheat/mittag_leffler.hpp"
#include "ml_oracle.hpp"

using namespace fracheat;

namespace {

constexpr double kPi = std::numbers::pi;

// 80-digit mpmath series sums (tests/oracles/ml_reference.py).
struct Frozen {
  double alpha, beta, z, value;
};
const Frozen kFrozen[] = {
    {0.5, 1.0, -1.0, 0.42758357615580700441},
    {1.5, 1.0, -50.0, -0.0045783851058392779913},
    {1.9, 1.0, -30.0, 0.60804777800201280522},
    {0.8, 1.0, -12.0, 0.020268165216948834128},
    {0.3, 1.0, -3.0, 0.21180263319643578203},
    {1.2, 2.0, -40.0, 0.021648395485594675182},
    {1.7, 1.3, -80.0, 0.0099513505201312460557},
    {0.6, 0.4, -7.0, -0.019961688330887387572},
    {1.999999, 1.0, -30.0, 0.69241981371060991413},
    {1.0001, 1.0, -20.0, -5.5933043092097723781e-6},
    {0.9999, 2.0, -15.0, 0.066669494102195909065},
};

double expect_code(ErrorCode code, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
    return 0.0;
  }
  ADD_FAILURE() << "expected " << to_string(code);
  return 0.0;
}

// Left side of the Laplace pair with the n-th derivative taken in the argument.
double laplace_lhs(MLParams p, int n, double c, int sign, double s) {
  boost::math::quadrature::exp_sinh<double> q;
  auto f = [&](double t) {
    if (t == 0.0) return 0.0;
    const double z = sign * c * std::pow(t, p.alpha);
    const double e = n == 0 ? ml_eval(p, z).value : ml_derivative(p, z);
    return std::exp(-s * t) * std::pow(t, p.alpha * n + p.beta - 1.0) * e;
  };
  return q.integrate(f, 1e-12);
}

}  // namespace

TEST(MittagLeffler, FrozenHighPrecisionValues) {
  for (const auto& f : kFrozen) {
    const MLEvalResult r = ml_eval({f.alpha, f.beta}, f.z);
    EXPECT_NEAR(r.value, f.value, 1e-12) << "alpha=" << f.alpha << " beta=" << f.beta << " z=" << f.z << " via "
                                         << to_string(r.method);
  }
}

TEST(MittagLeffler, SeriesExamples) {
  EXPECT_NEAR(ml_series({1.0, 1.0}, -1.0, 1e-14).value, std::exp(-1.0), 1e-14);
  EXPECT_DOUBLE_EQ(ml_series({0.5, 1.0}, 0.0, 1e-14).value, 1.0);
  const MLEvalResult r = ml_series({0.5, 1.0}, -1.0, 1e-12);
  EXPECT_NEAR(r.value, 0.42758357615580700441, 1e-12);
  EXPECT_GT(r.terms_used, 0);
  EXPECT_LE(r.est_abs_error, 1e-12);
}

TEST(MittagLeffler, SeriesIsDeterministic) {
  const MLEvalResult a = ml_series({0.7, 1.3}, -4.2, 1e-12);
  const MLEvalResult b = ml_series({0.7, 1.3}, -4.2, 1e-12);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.terms_used, b.terms_used);
}

TEST(MittagLeffler, SeriesTermCap) {
  expect_code(ErrorCode::TermCapExceeded, [] { ml_series({0.3, 1.0}, -40.0, 1e-10); });
}

TEST(MittagLeffler, AsymptoticExamples) {
  const MLEvalResult c = ml_asymptotic_neg({2.0, 1.0}, kPi * kPi);
  EXPECT_NEAR(c.value, -1.0, std::max(c.est_abs_error, 1e-12));

  const MLEvalResult a = ml_asymptotic_neg({1.5, 1.0}, 50.0);
  EXPECT_LE(std::fabs(a.value - (-0.0045783851058392779913)), a.est_abs_error);

  const MLEvalResult l = ml_asymptotic_neg({0.5, 1.0}, 100.0);
  const double lead = 1.0 / (std::tgamma(0.5) * 100.0);
  EXPECT_NEAR(l.value, 5.6419e-3, 1e-2 * 5.6419e-3);
  EXPECT_NEAR(l.value, lead, 1e-2 * lead);
}

TEST(MittagLeffler, AsymptoticOutOfRegime) {
  expect_code(ErrorCode::OutOfRegime, [] { ml_asymptotic_neg({1.5, 1.0}, 0.5); });
}

TEST(MittagLeffler, AsymptoticSkipsPoleTerms) {
  // beta - alpha n hits 0, -1, ... for alpha = 1, beta = 2: those terms vanish
  const MLEvalResult r = ml_asymptotic_neg({1.0, 2.0}, 40.0);
  EXPECT_NEAR(r.value, (1.0 - std::exp(-40.0)) / 40.0, 1e-12);
}

TEST(MittagLeffler, EvalExamples) {
  EXPECT_NEAR(mittag_leffler(1.0, 1.0, -4.0), std::exp(-4.0), 1e-14);
  EXPECT_NEAR(mittag_leffler(1e-3, 1.0, -4.0), 0.2, 5e-3);
  EXPECT_NEAR(mittag_leffler(1.9, 1.0, -30.0), 0.60804777800201280522, 1e-8);
}

TEST(MittagLeffler, EvalRejectsOrder) {
  expect_code(ErrorCode::UnsupportedOrder, [] { ml_eval({2.5, 1.0}, -1.0); });
  expect_code(ErrorCode::UnsupportedOrder, [] { ml_eval({0.0, 1.0}, -1.0); });
  expect_code(ErrorCode::InvalidArgument, [] { ml_eval({1.0, 0.0}, -1.0); });
}

TEST(MittagLeffler, DerivativeExamples) {
  EXPECT_NEAR(ml_derivative({1.0, 1.0}, -1.0), std::exp(-1.0), 1e-13);
  const double h = 1e-5;
  const double fd = (mittag_leffler(1.5, 2.0, -2.0 + h) - mittag_leffler(1.5, 2.0, -2.0 - h)) / (2 * h);
  EXPECT_NEAR(ml_derivative({1.5, 2.0}, -2.0), fd, 1e-6);
  for (double a : {0.3, 1.0, 1.7}) {
    for (double b : {0.5, 1.0, 2.2}) EXPECT_NEAR(ml_derivative({a, b}, 0.0), 1.0 / std::tgamma(a + b), 1e-14);
  }
}

TEST(MittagLeffler, ZeroExamples) {
  EXPECT_NEAR(ml_zero_smallest(2.0), kPi / 2.0, 1e-8);
  const double eps = 0.05;
  const double x = ml_zero_smallest(1.0 + eps);
  const double estimate = std::log(2.0 / eps);
  EXPECT_GT(x, estimate / 2.0);
  EXPECT_LT(x, estimate * 2.0);
  EXPECT_NEAR(x, 3.7214961549255015663, 1e-8);

  const double z = ml_zero_smallest(1.5);
  EXPECT_NEAR(z, 1.6452288706517796904, 1e-8);
  EXPECT_GT(oracle::ml_series(1.5, 1.0, -std::pow(z - 1e-6, 1.5)), 0.0);
  EXPECT_LT(oracle::ml_series(1.5, 1.0, -std::pow(z + 1e-6, 1.5)), 0.0);
}

TEST(MittagLeffler, NoZeroAtOrBelowOne) {
  expect_code(ErrorCode::NoZero, [] { ml_zero_smallest(1.0); });
  expect_code(ErrorCode::NoZero, [] { ml_zero_smallest(0.6); });
}

TEST(MittagLeffler, LaplacePairExamples) {
  EXPECT_NEAR(ml_laplace_pair({1.0, 1.0}, 0, 1.0, -1, 2.0), 1.0 / 3.0, 1e-15);

  const double p08 = std::pow(1.5, -0.2) / (std::pow(1.5, 0.8) + 1.0);
  EXPECT_NEAR(ml_laplace_pair({0.8, 1.0}, 0, 1.0, -1, 1.5), p08, 1e-14);
  EXPECT_NEAR(laplace_lhs({0.8, 1.0}, 0, 1.0, -1, 1.5), p08, 1e-6 * p08);

  const double p15 = std::pow(3.0, -0.5) / std::pow(std::pow(3.0, 1.5) + 2.0, 2);
  EXPECT_NEAR(ml_laplace_pair({1.5, 2.0}, 1, 2.0, -1, 3.0), p15, 1e-15);
  EXPECT_NEAR(laplace_lhs({1.5, 2.0}, 1, 2.0, -1, 3.0), p15, 1e-6 * p15);
}

TEST(MittagLeffler, LaplacePairDivergent) {
  expect_code(ErrorCode::DivergentTransform, [] { ml_laplace_pair({1.0, 1.0}, 0, 4.0, +1, 2.0); });
  expect_code(ErrorCode::DivergentTransform, [] { ml_laplace_pair({1.0, 1.0}, 0, 1.0, -1, -1.0); });
}

// ---- properties ----

TEST(MittagLefflerProperty, PositiveAndDecreasingBelowOrderOne) {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> ua(1e-3, 1.0), ux(0.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double a = ua(rng);
    double x1 = ux(rng), x2 = ux(rng);
    if (x1 > x2) std::swap(x1, x2);
    if (x2 - x1 < 1e-6) x2 = x1 + 1e-3;
    const double e1 = mittag_leffler(a, 1.0, -x1);
    const double e2 = mittag_leffler(a, 1.0, -x2);
    EXPECT_GT(e1, e2) << "alpha=" << a << " x1=" << x1 << " x2=" << x2;
    EXPECT_GT(e2, 0.0) << "alpha=" << a << " x=" << x2;
  }
}

TEST(MittagLefflerProperty, Recurrence) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ua(0.1, 2.0), ub(0.2, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double a = ua(rng), b = ub(rng);
    const double z = -std::uniform_real_distribution<double>(0.0, ml::switch_radius(a))(rng);
    const double lhs = mittag_leffler(a, b, z) - b * mittag_leffler(a, b + 1.0, z) - a * z * ml_derivative({a, b + 1.0}, z);
    EXPECT_LE(std::fabs(lhs), 1e-8) << "alpha=" << a << " beta=" << b << " z=" << z;
  }
}

TEST(MittagLefflerProperty, ValueAtZero) {
  for (double a : {0.05, 0.5, 1.0, 1.3, 2.0}) {
    for (double b : {0.3, 1.0, 1.5, 2.0, 4.5}) EXPECT_EQ(mittag_leffler(a, b, 0.0), 1.0 / std::tgamma(b));
  }
}

TEST(MittagLefflerProperty, ReductionIdentities) {
  for (double x = 0.0; x <= 20.0; x += 0.05) {
    EXPECT_NEAR(mittag_leffler(1.0, 1.0, -x), std::exp(-x), 1e-10);
    EXPECT_NEAR(mittag_leffler(1.0, 1.0, x / 4.0), std::exp(x / 4.0), 1e-10 * std::exp(x / 4.0));
    EXPECT_NEAR(mittag_leffler(2.0, 1.0, -x * x), std::cos(x), 1e-10);
  }
}

TEST(MittagLefflerProperty, SeriesAndAsymptoticAgreeInOverlap) {
  int compared = 0;
  for (double a : {0.3, 0.5, 0.8, 1.2, 1.5, 1.8}) {
    const double r = ml::switch_radius(a);
    for (double x = 0.8 * r; x <= 1.2 * r; x += 0.05 * r) {
      MLEvalResult s, as;
      try {
        s = ml_series({a, 1.0}, -x, 1e-12);
      } catch (const Error&) {
        continue;
      }
      as = ml_asymptotic_neg({a, 1.0}, x);
      EXPECT_LE(std::fabs(s.value - as.value), s.est_abs_error + as.est_abs_error)
          << "alpha=" << a << " x=" << x;
      ++compared;
    }
  }
  EXPECT_GT(compared, 10);
}

TEST(MittagLefflerProperty, ContinuousAcrossSwitchRadius) {
  for (double a : {0.2, 0.5, 0.9, 1.1, 1.5, 1.9}) {
    const double r = ml::switch_radius(a);
    const double lo = mittag_leffler(a, 1.0, -r * (1 - 1e-13));
    const double hi = mittag_leffler(a, 1.0, -r * (1 + 1e-13));
    EXPECT_LE(std::fabs(lo - hi), 10 * ml::kSeriesTarget) << "alpha=" << a;
  }
}

TEST(MittagLefflerProperty, DerivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ua(0.2, 2.0), ub(0.5, 2.5), uz(-60.0, 0.0);
  for (int i = 0; i < 100; ++i) {
    const double a = ua(rng), b = ub(rng), z = uz(rng);
    const double h = 1e-5 * std::max(1.0, std::fabs(z));
    const double fd = (mittag_leffler(a, b, z + h) - mittag_leffler(a, b, z - h)) / (2 * h);
    const double d = ml_derivative({a, b}, z);
    EXPECT_LE(std::fabs(d - fd), 1e-6 * (1 + std::fabs(d))) << "alpha=" << a << " beta=" << b << " z=" << z;
  }
}

TEST(MittagLefflerProperty, MatchesExtendedPrecisionSeries) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ua(0.25, 2.0), ub(0.5, 2.5), uu(0.0, 1.0);
  for (int i = 0; i < 60; ++i) {
    const double a = ua(rng), b = ub(rng);
    const double x = std::pow(45.0 * uu(rng), a);  // keeps x^(1/a) <= 45 for the oracle
    const double ref = oracle::ml_series(a, b, -x);
    EXPECT_NEAR(mittag_leffler(a, b, -x), ref, 1e-10) << "alpha=" << a << " beta=" << b << " x=" << x;
  }
}

TEST(MittagLefflerProperty, ConcurrentCallsAgreeWithSerial) {
  std::vector<double> zs;
  for (int i = 0; i < 400; ++i) zs.push_back(-0.25 * i);
  std::vector<double> serial;
  for (double z : zs) serial.push_back(mittag_leffler(0.65, 1.0, z));
  std::vector<std::vector<double>> out(8, std::vector<double>(zs.size()));
  std::vector<std::thread> pool;
  for (int t = 0; t < 8; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = 0; i < zs.size(); ++i) out[t][i] = mittag_leffler(0.65, 1.0, zs[i]);
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& o : out) EXPECT_EQ(o, serial);
}
