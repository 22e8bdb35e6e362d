#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "sic/bit_pattern.hpp"
#include "sic/combinatorics.hpp"
#include "sic/isotropic.hpp"
#include "sic/rng.hpp"

using namespace sic;

namespace {

// A random valid P-basis vector: nonnegative per-pattern probabilities
// normalized so sum_k C(n,k) p_k = 1.
std::vector<double> random_p(std::uint32_t n, SplitMix64& rng) {
  std::vector<double> p(n + 1);
  quad total = 0;
  for (std::uint32_t k = 0; k <= n; ++k) {
    p[k] = rng.next_double();
    total += binomial_q(n, k) * quad(p[k]);
  }
  for (auto& v : p) v = static_cast<double>(quad(v) / total);
  return p;
}

}  // namespace

TEST_CASE("binomial closed form") {
  const auto d = IsotropicDistribution::from_binomial(8, 0.5);
  CHECK(d.basis() == Basis::F);
  CHECK(d.coeff(7) == Catch::Approx(0.5).margin(1e-15));
  CHECK(d.coeff(6) == Catch::Approx(0.25).margin(1e-15));
  CHECK(d.coeff(8) == 1.0);

  SECTION("q=1 concentrates on the zero pattern") {
    const auto z = IsotropicDistribution::from_binomial(4, 1.0);
    for (std::uint32_t m = 0; m <= 4; ++m) CHECK(z.coeff(m) == 1.0);
  }

  SECTION("q=1/2 is uniform over patterns") {
    const auto u = IsotropicDistribution::from_binomial(4, 0.5)
                       .to_basis(Basis::P);
    for (std::uint32_t m = 0; m <= 4; ++m)
      CHECK(u.coeff(m) == Catch::Approx(0.0625).margin(1e-15));
  }

  CHECK_THROWS_AS(IsotropicDistribution::from_binomial(4, 1.5),
                  std::invalid_argument);
}

TEST_CASE("fixed-weight closed form") {
  const auto d = IsotropicDistribution::from_fixed_weight(4, 2);
  CHECK(d.coeff(3) == Catch::Approx(0.5).margin(1e-15));
  CHECK(d.coeff(1) == 0.0);

  // Equivalent form C(m,w)/C(n,w): both count weight-w patterns inside a
  // weight-m mask.
  for (std::uint32_t n : {6u, 11u, 20u})
    for (std::uint32_t w = 0; w <= n; ++w) {
      const auto fw = IsotropicDistribution::from_fixed_weight(n, w);
      for (std::uint32_t m = w; m <= n; ++m)
        CHECK(fw.coeff(m) ==
              Catch::Approx(static_cast<double>(binomial_q(m, w) /
                                                binomial_q(n, w)))
                  .margin(1e-14));
    }

  SECTION("G and P views") {
    const auto g = d.to_basis(Basis::G);
    CHECK(g.coeff(1) == Catch::Approx(0.5).margin(1e-14));  // C(2,1)/C(4,1)
    const auto p = d.to_basis(Basis::P);
    CHECK(p.coeff(2) == Catch::Approx(1.0 / 6).margin(1e-14));
    CHECK(p.coeff(0) == Catch::Approx(0.0).margin(1e-14));
    CHECK(p.coeff(3) == Catch::Approx(0.0).margin(1e-14));
  }

  SECTION("w=0 is the zero-pattern point mass") {
    const auto z = IsotropicDistribution::from_fixed_weight(5, 0);
    for (std::uint32_t m = 0; m <= 5; ++m) CHECK(z.coeff(m) == 1.0);
    const auto g = z.to_basis(Basis::G);
    CHECK(g.coeff(0) == 1.0);
    for (std::uint32_t m = 1; m <= 5; ++m)
      CHECK(g.coeff(m) == Catch::Approx(0.0).margin(1e-15));
  }

  CHECK_THROWS_AS(IsotropicDistribution::from_fixed_weight(4, 5),
                  std::invalid_argument);
}

TEST_CASE("construction validates basis invariants") {
  CHECK_THROWS_AS(
      IsotropicDistribution(2, Basis::P, std::vector<double>{0.5, -0.1, 0.1}),
      std::invalid_argument);
  // Sums to 0.5, not 1.
  CHECK_THROWS_AS(
      IsotropicDistribution(2, Basis::P, std::vector<double>{0.1, 0.1, 0.1}),
      std::invalid_argument);
  // Not monotone.
  CHECK_THROWS_AS(
      IsotropicDistribution(2, Basis::F, std::vector<double>{0.5, 0.4, 1.0}),
      std::invalid_argument);
  // F_n != 1.
  CHECK_THROWS_AS(
      IsotropicDistribution(2, Basis::F, std::vector<double>{0.1, 0.2, 0.9}),
      std::invalid_argument);
  // G_0 != 1.
  CHECK_THROWS_AS(
      IsotropicDistribution(2, Basis::G, std::vector<double>{0.9, 0.5, 0.1}),
      std::invalid_argument);
  // Wrong coefficient count.
  CHECK_THROWS_AS(
      IsotropicDistribution(3, Basis::F, std::vector<double>{0.5, 1.0}),
      std::invalid_argument);

  SECTION("relaxed tolerance admits noisy empirical coefficients") {
    const std::vector<double> noisy{0.5001, 0.4999, 1.0};
    CHECK_THROWS_AS(IsotropicDistribution(2, Basis::F, noisy),
                    std::invalid_argument);
    CHECK_NOTHROW(IsotropicDistribution(2, Basis::F, noisy, 1e-3));
  }
}

TEST_CASE("direct enumeration oracle for F and G") {
  // For n <= 10, sum P(pattern) over all 2^n patterns directly.
  SplitMix64 rng(2025);
  for (std::uint32_t n : {3u, 7u, 10u}) {
    const auto p = random_p(n, rng);
    const IsotropicDistribution d(n, Basis::P, p);
    const auto F = d.to_basis(Basis::F);
    const auto G = d.to_basis(Basis::G);

    BitPattern mask(n);
    for (std::uint32_t a = 0; a <= n; ++a) {
      if (a > 0) mask.set(a - 1);  // prefix mask of weight a
      double below = 0, above = 0;
      for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
        BitPattern x(n);
        for (std::uint32_t i = 0; i < n; ++i)
          if ((bits >> i) & 1u) x.set(i);
        if (x.covered_by(mask)) below += p[x.weight()];
        if (mask.covered_by(x)) above += p[x.weight()];
      }
      CHECK(F.coeff(a) == Catch::Approx(below).margin(1e-12));
      CHECK(G.coeff(a) == Catch::Approx(above).margin(1e-12));
    }
  }
}

TEST_CASE("basis roundtrips are the identity") {
  SplitMix64 rng(4242);
  for (std::uint32_t n : {1u, 2u, 5u, 17u, 32u, 64u}) {
    const auto p = random_p(n, rng);
    const IsotropicDistribution d(n, Basis::P, p);

    // All paths back to P.
    const auto via_f = d.to_basis(Basis::F).to_basis(Basis::P);
    const auto via_g = d.to_basis(Basis::G).to_basis(Basis::P);
    const auto via_fg =
        d.to_basis(Basis::F).to_basis(Basis::G).to_basis(Basis::P);
    const auto via_gf =
        d.to_basis(Basis::G).to_basis(Basis::F).to_basis(Basis::P);
    // Chains through both alternate bases round to double twice, and the
    // alternating binomial sums amplify that rounding as n grows; single
    // hops stay at 1e-12 everywhere, chains only up to n = 32.
    const double chain_margin = n <= 32 ? 1e-12 : 1e-9;
    for (std::uint32_t k = 0; k <= n; ++k) {
      CHECK(via_f.coeff(k) == Catch::Approx(p[k]).margin(1e-12));
      CHECK(via_g.coeff(k) == Catch::Approx(p[k]).margin(1e-12));
      CHECK(via_fg.coeff(k) == Catch::Approx(p[k]).margin(chain_margin));
      CHECK(via_gf.coeff(k) == Catch::Approx(p[k]).margin(chain_margin));
    }

    // to_basis to the current basis is a copy.
    const auto same = d.to_basis(Basis::P);
    for (std::uint32_t k = 0; k <= n; ++k) CHECK(same.coeff(k) == p[k]);
  }
}

TEST_CASE("generating function identities") {
  SplitMix64 rng(99);
  for (std::uint32_t n : {2u, 8u, 32u}) {
    const auto p = random_p(n, rng);
    const IsotropicDistribution d(n, Basis::P, p);

    CHECK(d.gf_f(1.0) == Catch::Approx(1.0).margin(1e-12));

    for (double t : {0.25, 0.5, 1.0, 2.0}) {
      const double f_pushed =
          std::pow(1.0 + t, double(n)) * d.gf_f(t / (1.0 + t));
      const double rel = std::max(1.0, std::abs(f_pushed));
      CHECK(d.gf_F(t) == Catch::Approx(f_pushed).margin(1e-10 * rel));

      const double g_pushed = std::pow(t, double(n)) * d.gf_f((1.0 + t) / t);
      const double relg = std::max(1.0, std::abs(g_pushed));
      CHECK(d.gf_G(t) == Catch::Approx(g_pushed).margin(1e-10 * relg));

      const double g_from_f =
          (n % 2 == 0 ? 1.0 : -1.0) * d.gf_F(-1.0 - t);
      CHECK(d.gf_G(t) == Catch::Approx(g_from_f).margin(1e-10 * relg));
    }
  }

  SECTION("fixed weight has a monomial pattern gf") {
    const auto d = IsotropicDistribution::from_fixed_weight(9, 4);
    for (double t : {0.3, 0.7, 2.0})
      CHECK(d.gf_f(t) == Catch::Approx(std::pow(t, 4.0)).epsilon(1e-12));
  }

  SECTION("binomial gf is the binomial theorem") {
    const auto d = IsotropicDistribution::from_binomial(8, 0.3);
    CHECK(d.gf_f(2.0) ==
          Catch::Approx(std::pow(0.3 + 0.7 * 2.0, 8.0)).epsilon(1e-12));
  }
}

TEST_CASE("moments from factorial moments") {
  SECTION("fixed weight is deterministic") {
    const auto m = IsotropicDistribution::from_fixed_weight(12, 5).moments();
    CHECK(m.mu1 == Catch::Approx(5.0).margin(1e-12));
    CHECK(m.mu2 == Catch::Approx(25.0).margin(1e-10));
    CHECK(m.mu3 == Catch::Approx(125.0).margin(1e-9));
    CHECK(m.variance == Catch::Approx(0.0).margin(1e-10));
  }

  SECTION("binomial variance is nq(1-q)") {
    for (double q : {0.2, 0.5, 0.9}) {
      const auto m = IsotropicDistribution::from_binomial(16, q).moments();
      CHECK(m.mu1 == Catch::Approx(16 * (1 - q)).epsilon(1e-12));
      CHECK(m.variance == Catch::Approx(16 * q * (1 - q)).epsilon(1e-10));
    }
  }

  SECTION("raw moments match the weight distribution") {
    SplitMix64 rng(5);
    for (std::uint32_t n : {3u, 9u, 24u}) {
      const auto p = random_p(n, rng);
      const IsotropicDistribution d(n, Basis::P, p);
      const auto wd = d.weight_distribution();
      double m1 = 0, m2 = 0, m3 = 0;
      for (std::uint32_t k = 0; k <= n; ++k) {
        m1 += double(k) * wd[k];
        m2 += double(k) * k * wd[k];
        m3 += double(k) * k * k * wd[k];
      }
      const auto m = d.moments();
      CHECK(m.mu1 == Catch::Approx(m1).margin(1e-10));
      CHECK(m.mu2 == Catch::Approx(m2).margin(1e-9));
      CHECK(m.mu3 == Catch::Approx(m3).margin(1e-8));
      CHECK(m.variance == Catch::Approx(m2 - m1 * m1).margin(1e-9));
    }
  }
}

TEST_CASE("variance identity and inequality") {
  SplitMix64 rng(314);
  for (std::uint32_t n : {2u, 6u, 32u}) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto p = random_p(n, rng);
      const IsotropicDistribution d(n, Basis::P, p);
      const auto F = d.to_basis(Basis::F);
      const double f1 = F.coeff(n - 1);
      const double f2 = n >= 2 ? F.coeff(n - 2) : 1.0;

      // var = n [F_{n-1} - n F_{n-1}^2 + (n-1) F_{n-2}]
      const double var_from_f =
          double(n) * (f1 - double(n) * f1 * f1 + double(n - 1) * f2);
      CHECK(d.moments().variance ==
            Catch::Approx(var_from_f).margin(1e-9));

      // F_{n-2} >= (n-1)^{-1} (n F_{n-1} - 1) F_{n-1}
      const double bound = (double(n) * f1 - 1.0) * f1 / double(n - 1);
      CHECK(f2 >= bound - 1e-12);
    }
  }

  SECTION("tight for fixed weight") {
    for (std::uint32_t w : {0u, 3u, 7u, 12u}) {
      const auto F = IsotropicDistribution::from_fixed_weight(12, w);
      const double f1 = F.coeff(11), f2 = F.coeff(10);
      const double bound = (12.0 * f1 - 1.0) * f1 / 11.0;
      CHECK(f2 == Catch::Approx(bound).margin(1e-12));
    }
  }
}

TEST_CASE("complement duality swaps F and G") {
  // If pbar_k := p_{n-k} (bit-complemented distribution), then
  // Fbar_a = G_{n-a}: a complemented pattern fits under a mask exactly when
  // the original covers the complement mask.
  SplitMix64 rng(8);
  const std::uint32_t n = 13;
  const auto p = random_p(n, rng);
  std::vector<double> pbar(p.rbegin(), p.rend());

  const auto orig = IsotropicDistribution(n, Basis::P, p).to_basis(Basis::G);
  const auto comp = IsotropicDistribution(n, Basis::P, pbar).to_basis(Basis::F);
  for (std::uint32_t a = 0; a <= n; ++a)
    CHECK(comp.coeff(a) == Catch::Approx(orig.coeff(n - a)).margin(1e-12));
}
