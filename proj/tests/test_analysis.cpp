#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <vector>

#include "sic/analysis.hpp"
#include "sic/codegen.hpp"
#include "sic/rng.hpp"

using namespace sic;

TEST_CASE("signature distribution composes through the source gf") {
  const auto code = IsotropicDistribution::from_binomial(8, 0.5);

  SECTION("fixed-weight source of r words") {
    const auto target =
        target_distribution(SourceModel::fixed_weight(10, 2), code);
    CHECK(target.coeff(7) == Catch::Approx(0.25).margin(1e-14));
    // Binomial with parameter q^r, coefficient-wise.
    const auto expect = IsotropicDistribution::from_binomial(8, 0.25);
    for (std::uint32_t m = 0; m <= 8; ++m)
      CHECK(target.coeff(m) == Catch::Approx(expect.coeff(m)).margin(1e-13));
  }

  SECTION("single-word source passes the code through") {
    const auto target =
        target_distribution(SourceModel::fixed_weight(5, 1), code);
    for (std::uint32_t m = 0; m <= 8; ++m)
      CHECK(target.coeff(m) == Catch::Approx(code.coeff(m)).margin(1e-14));
  }

  SECTION("single coefficient accessor agrees") {
    const auto src = SourceModel::independent_bits({0.2, 0.7, 0.4});
    const auto target = target_distribution(src, code);
    for (std::uint32_t m = 0; m <= 8; ++m)
      CHECK(target_coeff_F(src, code, m) ==
            Catch::Approx(target.coeff(m)).margin(1e-14));
  }
}

TEST_CASE("signature moments from the top three coefficients") {
  SECTION("consistent with the full distribution") {
    const auto code = IsotropicDistribution::from_fixed_weight(24, 6);
    const std::vector<SourceModel> sources = {
        SourceModel::fixed_weight(12, 3),
        SourceModel::independent_bits({0.3, 0.9, 0.2, 0.5}),
        SourceModel::empirical(3, std::vector<double>{0.2, 0.3, 0.4, 0.1}),
    };
    for (const auto& src : sources) {
      const auto fast = target_moments(src, code);
      const auto full = target_distribution(src, code).moments();
      CHECK(fast.mu1 == Catch::Approx(full.mu1).margin(1e-10));
      CHECK(fast.mu2 == Catch::Approx(full.mu2).margin(1e-10));
      CHECK(fast.mu3 == Catch::Approx(full.mu3).margin(1e-9));
      CHECK(fast.variance == Catch::Approx(full.variance).margin(1e-10));
    }
  }

  SECTION("binomial codes give variance n q^r (1-q^r)") {
    const std::uint32_t n = 16, r = 4;
    const double q = 0.9, qr = std::pow(q, 4.0);
    const auto m = target_moments(SourceModel::fixed_weight(8, r),
                                  IsotropicDistribution::from_binomial(n, q));
    CHECK(m.mu1 == Catch::Approx(n * (1 - qr)).epsilon(1e-12));
    CHECK(m.variance == Catch::Approx(n * qr * (1 - qr)).epsilon(1e-10));
  }

  SECTION("empty source encodes nothing") {
    const auto m = target_moments(SourceModel::fixed_weight(8, 0),
                                  IsotropicDistribution::from_binomial(16, 0.9));
    CHECK(m.mu1 == Catch::Approx(0.0).margin(1e-12));
    CHECK(m.variance == Catch::Approx(0.0).margin(1e-10));
  }

  SECTION("large n stays finite and sane") {
    const auto m =
        target_moments(SourceModel::fixed_weight(100, 16),
                       spec_coefficients(CodeSpec::fixed_weight(1024, 43)));
    CHECK(m.mu1 > 0);
    CHECK(m.mu1 < 1024);
    CHECK(m.variance > 0);
  }
}

TEST_CASE("false-drop closed form for binomial codes") {
  const double q = std::sqrt(0.8);
  const double theta = false_drop_binomial(32, 8, 2, q);
  // (1-q^8)(1-q^2)+q^2 = 0.91808; 0.91808^32.
  CHECK(theta == Catch::Approx(std::pow(0.91808, 32.0)).epsilon(1e-10));
  CHECK(ln_false_drop_binomial(32, 8, 2, q) ==
        Catch::Approx(32.0 * std::log(0.91808)).epsilon(1e-10));

  SECTION("degenerate substitutions") {
    // q^s = 1 (s = 0): every record screens in.
    CHECK(false_drop_binomial(16, 4, 0, 0.7) == Catch::Approx(1.0));
    // q -> 0: record signature is all ones, covers anything.
    CHECK(false_drop_binomial(16, 4, 2, 0.0) == Catch::Approx(1.0));
    CHECK_THROWS_AS(false_drop_binomial(16, 0, 2, 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(false_drop_binomial(16, 4, 2, 1.5),
                    std::invalid_argument);
  }

  SECTION("log form survives large n") {
    const double ln_theta = ln_false_drop_binomial(65536, 100, 10, 0.99);
    CHECK(std::isfinite(ln_theta));
    CHECK(false_drop_binomial(65536, 100, 10, 0.99) == 0.0);  // underflow
  }
}

TEST_CASE("optimal q minimizes the false-drop rate") {
  CHECK(optimal_q_binomial(8, 2) ==
        Catch::Approx(std::sqrt(0.8)).epsilon(1e-15));
  CHECK(optimal_q_binomial(5, 5) == Catch::Approx(std::pow(0.5, 0.2)));

  SECTION("grid search confirms the minimizer") {
    const std::uint32_t n = 32, r = 8, s = 2;
    const double qstar = optimal_q_binomial(r, s);
    const double best = ln_false_drop_binomial(n, r, s, qstar);
    for (double q = 0.001; q < 1.0; q += 0.001)
      CHECK(best <= ln_false_drop_binomial(n, r, s, q) + 1e-12);
  }

  SECTION("long records saturate q^r near 1/e") {
    const double q = optimal_q_binomial(1000, 1);
    CHECK(std::pow(q, 1000.0) ==
          Catch::Approx(std::exp(-1.0)).epsilon(1e-3));
  }
}

TEST_CASE("required length sizing") {
  CHECK(required_length(100, 3, 0.01) == 418);
  CHECK(required_length(8, 8, std::exp(-1.0)) == 3);  // ceil(e)
  // As theta_max approaches 1 the requirement collapses.
  CHECK(required_length(10, 2, 0.999999) <= 1);
  CHECK_THROWS_AS(required_length(10, 2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(required_length(10, 2, 1.0), std::invalid_argument);

  SECTION("exact adjustment reaches the goal") {
    const std::uint32_t n_exact = required_length_exact(100, 3, 0.01);
    CHECK(n_exact == 422);
    const double q = optimal_q_binomial(100, 3);
    CHECK(false_drop_binomial(n_exact, 100, 3, q) <= 0.01);
    CHECK(false_drop_binomial(n_exact - 1, 100, 3, q) > 0.01);
  }
}

TEST_CASE("fixed-weight false-drop approximation") {
  // w = round(n ln2 / r) puts q^r near 1/2.
  const std::uint32_t n = 512, r = 32, s = 4, w = 11;
  const double q = 1.0 - double(w) / n;
  const double expect =
      double(n) * (1.0 - std::pow(q, double(s))) * std::log1p(-std::pow(q, double(r)));
  CHECK(ln_false_drop_fixed_weight(n, r, s, w) ==
        Catch::Approx(expect).epsilon(1e-14));
  CHECK(ln_false_drop_fixed_weight(n, r, s, w) ==
        Catch::Approx(-29.45114).epsilon(1e-5));

  SECTION("q^r = 1/2 collapses to -n(1-q^s) ln 2") {
    // n=1024, w=43: q = 0.958008, q^16 = 0.50368... close to the design
    // point; use the identity form directly at q^r exactly 1/2 instead.
    const double qq = std::pow(0.5, 1.0 / 16);
    const std::uint32_t nn = 1024;
    const std::uint32_t ww =
        static_cast<std::uint32_t>(std::round(nn * (1 - qq)));
    CHECK(ww == 43);
    const double ln_theta = ln_false_drop_fixed_weight(nn, 16, 4, ww);
    const double q43 = 1.0 - 43.0 / 1024;
    const double rough =
        -double(nn) * (1 - std::pow(q43, 4.0)) * std::log(2.0);
    CHECK(ln_theta == Catch::Approx(rough).epsilon(0.02));
  }

  SECTION("weight-0 words encode nothing") {
    CHECK(ln_false_drop_fixed_weight(16, 2, 0, 0) == 0.0);
    CHECK(std::isinf(ln_false_drop_fixed_weight(16, 2, 3, 0)));
  }
}

TEST_CASE("fixed-weight exact variance vs asymptotic bracket") {
  // Exact: from F_{n-2} = q^r ((nq-1)/(n-1))^r with q = 1 - w/n.
  const std::uint32_t n = 1024, r = 16, w = 43;
  const double q = 1.0 - double(w) / n;
  const double f1 = std::pow(q, double(r));
  const double f2 =
      std::pow(q, double(r)) * std::pow((n * q - 1) / (n - 1.0), double(r));
  const double exact =
      double(n) * (f1 - double(n) * f1 * f1 + double(n - 1) * f2);

  const auto m = target_moments(SourceModel::fixed_weight(r, r),
                                spec_coefficients(CodeSpec::fixed_weight(n, w)));
  CHECK(m.variance == Catch::Approx(exact).epsilon(1e-10));

  const double approx = fixed_weight_variance_approx(n, r, w);
  CHECK(std::abs(m.variance - approx) / m.variance < 0.05);

  SECTION("fixed weight never beats binomial variance the wrong way") {
    // At matched q = 1 - w/n, fixed-weight target variance <= binomial's.
    for (std::uint32_t wv : {11u, 26u, 43u, 80u}) {
      const double qv = 1.0 - double(wv) / n;
      const auto fixed =
          target_moments(SourceModel::fixed_weight(r, r),
                         spec_coefficients(CodeSpec::fixed_weight(n, wv)));
      const auto binom =
          target_moments(SourceModel::fixed_weight(r, r),
                         spec_coefficients(CodeSpec::binomial(n, qv)));
      CHECK(fixed.variance <= binom.variance + 1e-9);
    }
  }
}

TEST_CASE("expected candidate counts") {
  SECTION("zero-weight query matches everything") {
    const auto target = IsotropicDistribution::from_binomial(12, 0.7);
    CHECK(expected_candidates(target, 0, 500) == Catch::Approx(500.0));
  }

  SECTION("binomial target gives db (1-q)^m") {
    const auto target = IsotropicDistribution::from_binomial(12, 0.7);
    for (std::uint32_t m : {1u, 4u, 9u})
      CHECK(expected_candidates(target, m, 1000) ==
            Catch::Approx(1000 * std::pow(0.3, double(m))).epsilon(1e-10));
  }

  SECTION("toy index enumeration") {
    // Six stored patterns of n=6; count covers of each query weight
    // directly and compare with the histogram overload.
    const std::vector<BitPattern> stored = {
        BitPattern::from_string("110000"), BitPattern::from_string("111000"),
        BitPattern::from_string("000111"), BitPattern::from_string("101010"),
        BitPattern::from_string("111110"), BitPattern::from_string("010101"),
    };
    std::vector<double> masses(7, 0.0);
    for (const auto& p : stored) masses[p.weight()] += 1.0 / stored.size();

    for (std::uint32_t qw = 0; qw <= 6; ++qw) {
      // Average cover count over all C(6,qw) query masks of weight qw.
      std::uint64_t covers = 0, n_masks = 0;
      // Enumerate weight-qw masks over 6 bits.
      for (std::uint32_t bits = 0; bits < 64; ++bits) {
        if (std::popcount(bits) != int(qw)) continue;
        ++n_masks;
        BitPattern mask(6);
        for (std::uint32_t i = 0; i < 6; ++i)
          if ((bits >> i) & 1u) mask.set(i);
        for (const auto& p : stored) covers += mask.covered_by(p);
      }
      const double expect = double(covers) / double(n_masks);
      CHECK(expected_candidates(6, masses, qw, stored.size()) ==
            Catch::Approx(expect).margin(1e-12));
    }
  }

  SECTION("conversion overload agrees with the histogram overload") {
    const auto target = IsotropicDistribution::from_fixed_weight(20, 8);
    const auto masses = target.weight_distribution();
    for (std::uint32_t qw : {0u, 5u, 8u, 13u})
      CHECK(expected_candidates(target, qw, 100) ==
            Catch::Approx(expected_candidates(20, masses, qw, 100))
                .margin(1e-9));
  }
}

TEST_CASE("false drop between arbitrary signature distributions") {
  // Equal fixed-weight record/query targets of full weight always cover.
  const auto full = IsotropicDistribution::from_fixed_weight(10, 10);
  CHECK(false_drop_general(full, full) == Catch::Approx(1.0).margin(1e-12));

  SECTION("matches the binomial closed form") {
    const std::uint32_t n = 32, r = 8, s = 2;
    const double q = std::sqrt(0.8);
    const auto rec = IsotropicDistribution::from_binomial(n, std::pow(q, double(r)));
    const auto qry = IsotropicDistribution::from_binomial(n, std::pow(q, double(s)));
    CHECK(false_drop_general(rec, qry) ==
          Catch::Approx(false_drop_binomial(n, r, s, q)).epsilon(1e-9));
  }

  SECTION("guards its exactness domain") {
    const auto big = IsotropicDistribution::from_binomial(128, 0.9);
    CHECK_THROWS_AS(false_drop_general(big, big), std::invalid_argument);
    const auto other = IsotropicDistribution::from_binomial(16, 0.9);
    CHECK_THROWS_AS(false_drop_general(big, other), std::invalid_argument);
  }
}

TEST_CASE("cover probability given weights") {
  CHECK(cover_probability_given_weights(8, 5, 2) ==
        Catch::Approx(static_cast<double>(binomial_u64(6, 3)) /
                      static_cast<double>(binomial_u64(8, 5)))
            .epsilon(1e-14));
  CHECK(cover_probability_given_weights(8, 3, 5) == 0.0);
  CHECK(cover_probability_given_weights(8, 8, 3) == 1.0);

  // Large-n log path continuity across the exact boundary.
  const double exact64 = cover_probability_given_weights(64, 30, 4);
  const double ratio = static_cast<double>(binomial_q(60, 26) / binomial_q(64, 30));
  CHECK(exact64 == Catch::Approx(ratio).epsilon(1e-12));
  const double log_path = cover_probability_given_weights(512, 100, 7);
  CHECK(log_path > 0);
  CHECK(log_path < 1);
  CHECK(log_path ==
        Catch::Approx(std::exp(ln_binomial(505, 93) - ln_binomial(512, 100)))
            .epsilon(1e-12));
}

TEST_CASE("design reports assemble the right numbers") {
  const auto rep = report_binomial(32, 8, 2, std::sqrt(0.8));
  CHECK(rep.scheme == "binomial");
  CHECK(rep.theta.value() == Catch::Approx(0.0649).margin(2e-4));
  CHECK_FALSE(rep.theta_is_approximation);
  CHECK(rep.target_mean == Catch::Approx(32 * (1 - 0.4096)).epsilon(1e-10));

  const auto fixed = report_fixed_weight(512, 32, 4, 11);
  CHECK(fixed.scheme == "fixed-weight");
  CHECK(fixed.theta_is_approximation);
  CHECK(fixed.ln_theta.value() == Catch::Approx(-29.45114).epsilon(1e-5));

  const auto sized = report_required_length(100, 3, 0.01);
  CHECK(sized.required_n.value() == 418);
  CHECK(sized.adjusted_n.value() == 422);
  CHECK(sized.n == 422);
  CHECK(sized.theta.value() <= 0.01);
}
