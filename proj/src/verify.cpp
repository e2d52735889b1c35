#include "zonovol/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "zonovol/combinatorics.hpp"
#include "zonovol/linalg.hpp"
#include "zonovol/regions.hpp"
#include "zonovol/volume_generic.hpp"
#include "zonovol/volume_spectral.hpp"

namespace zonovol {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Mixed tolerance: relative for O(1)-or-larger values, absolute below.
bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::vector<double> random_ascending(Rng& rng, int n, double lo, double hi,
                                     double min_gap) {
  std::vector<double> lams(n);
  for (;;) {
    for (double& l : lams) l = uniform(rng, lo, hi);
    std::sort(lams.begin(), lams.end());
    bool ok = true;
    for (int i = 0; i + 1 < n; ++i) {
      if (lams[i + 1] - lams[i] < min_gap) ok = false;
    }
    if (ok) return lams;
  }
}

Eigen::MatrixXd random_entries(Rng& rng, int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = uniform(rng, -1.0, 1.0);
  }
  return m;
}

Eigen::MatrixXd random_invertible(Rng& rng, int n, double min_abs_det) {
  for (;;) {
    Eigen::MatrixXd m = random_entries(rng, n, n);
    if (std::abs(determinant(RealMatrix(m))) >= min_abs_det) return m;
  }
}

// Random system with a prescribed well-separated positive real spectrum
// and input gains bounded away from zero in every eigendirection.
SystemModel random_spectral_model(Rng& rng, int n) {
  for (;;) {
    const std::vector<double> lams = random_ascending(rng, n, 0.2, 1.6, 0.05);
    const Eigen::MatrixXd V = random_invertible(rng, n, 0.3);
    Eigen::VectorXd diag(n);
    for (int i = 0; i < n; ++i) diag[i] = lams[i];
    const Eigen::MatrixXd A =
        V * diag.asDiagonal() *
        V.partialPivLu().solve(Eigen::MatrixXd::Identity(n, n));
    Eigen::VectorXd u(n);
    for (int i = 0; i < n; ++i) {
      u[i] = (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0) *
             uniform(rng, 0.5, 1.5);
    }
    const Eigen::MatrixXd B = V * u;
    SystemModel model("random", RealMatrix(A), RealMatrix(B));
    try {
      const Spectrum sp = eig_real_distinct(model);
      if (sp.condition_estimate > 1e6) continue;
    } catch (const SpectralUnsupported&) {
      continue;
    }
    return model;
  }
}

SystemModel random_generic_model(Rng& rng, int n, int r) {
  return SystemModel("random", RealMatrix(random_entries(rng, n, n)),
                     RealMatrix(random_entries(rng, n, r)));
}

std::string describe(int n, int r, int horizon, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "n=%d r=%d N=%d values %.12g vs %.12g", n, r, horizon, a, b);
  return buf;
}

class PropertyRun {
public:
  explicit PropertyRun(std::string name) { outcome_.name = std::move(name); }

  void check(bool ok, const std::string& detail) {
    ++outcome_.checks;
    if (!ok) {
      ++outcome_.failures;
      if (outcome_.first_failure.empty()) outcome_.first_failure = detail;
    }
  }

  PropertyOutcome take() { return std::move(outcome_); }

private:
  PropertyOutcome outcome_;
};

PropertyOutcome prop_exact_matches_recursive(Rng& rng,
                                             const VerifyOptions& opts) {
  PropertyRun run("exact-matches-recursive");
  for (int n = opts.dim_lo; n <= opts.dim_hi; ++n) {
    for (int t = 0; t < opts.trials; ++t) {
      const int r = 1 + t % 2;
      const SystemModel model = random_generic_model(rng, n, r);
      const int first = (n + r - 1) / r;
      const int horizon = uniform_int(rng, first, first + 5);
      const double exact =
          volume_exact(controllability_matrix(model, horizon)).volume;
      const double rec = volume_recursive(model, horizon).volume;
      run.check(close(exact, rec, 1e-9), describe(n, r, horizon, exact, rec));
    }
  }
  return run.take();
}

PropertyOutcome prop_spectral_matches_exact(Rng& rng,
                                            const VerifyOptions& opts) {
  PropertyRun run("spectral-matches-exact");
  for (int n = opts.dim_lo; n <= opts.dim_hi; ++n) {
    for (int t = 0; t < opts.trials; ++t) {
      const SystemModel model = random_spectral_model(rng, n);
      const int horizon = uniform_int(rng, n, n + 8);
      const double exact =
          volume_exact(controllability_matrix(model, horizon)).volume;
      const double sp = volume_spectral(model, horizon).volume;
      const double rec = volume_recursive(model, horizon).volume;
      run.check(close(exact, sp, 1e-8),
                "spectral " + describe(n, 1, horizon, exact, sp));
      run.check(close(exact, rec, 1e-9),
                "recursive " + describe(n, 1, horizon, exact, rec));
    }
  }
  return run.take();
}

PropertyOutcome prop_power_det_positive(Rng& rng, const VerifyOptions& opts) {
  PropertyRun run("ascending-power-determinant-positive");
  for (int t = 0; t < opts.fuzz_instances; ++t) {
    // Eigenvalue gaps and exponent spread are bounded below and above so
    // that the true determinant stays clear of double-precision rounding
    // noise; clustered inputs would need exact arithmetic to resolve.
    const int n = uniform_int(rng, 1, 6);
    std::vector<double> lams(n);
    double lam = uniform(rng, 0.25, 0.85);
    for (int i = 0; i < n; ++i) {
      lams[i] = lam;
      lam += uniform(rng, 0.05, 0.22);
    }
    std::vector<int> ks(n);
    int k = uniform_int(rng, 0, 5);
    for (int i = 0; i < n; ++i) {
      ks[i] = k;
      k += uniform_int(rng, 1, 3);
    }
    const double det = quasi_vandermonde(lams, ks);
    std::ostringstream detail;
    detail << "n=" << n << " det=" << det;
    run.check(det > 0.0, detail.str());
  }
  return run.take();
}

PropertyOutcome prop_monotone_in_horizon(Rng& rng, const VerifyOptions& opts) {
  PropertyRun run("volume-monotone-in-horizon");
  for (int n = opts.dim_lo; n <= opts.dim_hi; ++n) {
    for (int t = 0; t < opts.trials; ++t) {
      const int r = 1 + t % 2;
      const SystemModel model = random_generic_model(rng, n, r);
      const int first = (n + r - 1) / r;
      double prev = 0.0;
      for (int horizon = first; horizon <= first + 5; ++horizon) {
        const double v =
            volume_exact(controllability_matrix(model, horizon)).volume;
        run.check(v >= prev * (1.0 - 1e-12),
                  describe(n, r, horizon, prev, v));
        prev = v;
      }
    }
  }
  return run.take();
}

PropertyOutcome prop_covariant_under_maps(Rng& rng,
                                          const VerifyOptions& opts) {
  PropertyRun run("volume-covariant-under-linear-maps");
  for (int n = opts.dim_lo; n <= opts.dim_hi; ++n) {
    for (int t = 0; t < opts.trials; ++t) {
      const int m = n + t % 5;
      const Eigen::MatrixXd Z = random_entries(rng, n, m);
      const Eigen::MatrixXd T = random_invertible(rng, n, 0.05);
      const double direct = volume_exact(RealMatrix(T * Z)).volume;
      const double scaled = std::abs(determinant(RealMatrix(T))) *
                            volume_exact(RealMatrix(Z)).volume;
      run.check(close(direct, scaled, 1e-8), describe(n, m, 0, direct, scaled));
    }
  }
  return run.take();
}

PropertyOutcome prop_table_converges(Rng& rng, const VerifyOptions& opts) {
  PropertyRun run("table-converges-to-limit");
  for (int n = opts.dim_lo; n <= opts.dim_hi; ++n) {
    for (int t = 0; t < opts.trials; ++t) {
      const std::vector<double> lams =
          random_ascending(rng, n, 0.05, 0.92, 0.01);
      const double limit = volume_infinite(lams);
      SpectralTable table(lams);
      bool monotone = true;
      bool bounded = true;
      double prev = 0.0;
      int step = 0;
      while (step < 5000) {
        table.advance();
        ++step;
        const double v = table.full_value();
        if (v < prev * (1.0 - 1e-12)) monotone = false;
        if (v > limit * (1.0 + 1e-9) + 1e-12) bounded = false;
        prev = v;
        if (limit - v <= 1e-6 * limit) break;
      }
      std::ostringstream detail;
      detail << "n=" << n << " limit=" << limit << " reached=" << prev
             << " steps=" << step;
      run.check(monotone, "monotonicity: " + detail.str());
      run.check(bounded, "bound: " + detail.str());
      run.check(limit - prev <= 1e-6 * limit, "convergence: " + detail.str());
    }
  }
  return run.take();
}

PropertyOutcome prop_work_counters(Rng& rng, const VerifyOptions& opts) {
  PropertyRun run("work-counters");
  for (int n = opts.dim_lo; n <= opts.dim_hi; ++n) {
    for (int t = 0; t < opts.trials; ++t) {
      const int m = n + t % 6;
      const Eigen::MatrixXd Z = random_entries(rng, n, m);
      const VolumeResult res = volume_exact(RealMatrix(Z));
      std::ostringstream detail;
      detail << "n=" << n << " m=" << m << " n_d=" << res.det_count;
      run.check(res.det_count == binomial(m, n), "selection count: " + detail.str());

      // Step cost becomes horizon-independent once every subset is active.
      const std::vector<double> lams =
          random_ascending(rng, n, 0.2, 1.5, 0.02);
      SpectralTable table(lams);
      table.advance_to(n);
      const std::uint64_t before = table.mult_count();
      table.advance();
      const std::uint64_t cost1 = table.mult_count() - before;
      table.advance();
      const std::uint64_t cost2 = table.mult_count() - before - cost1;
      const std::uint64_t expected =
          static_cast<std::uint64_t>(n) * (std::uint64_t{1} << (n - 1)) + n;
      std::ostringstream counts;
      counts << "n=" << n << " cost1=" << cost1 << " cost2=" << cost2;
      run.check(cost1 == expected && cost2 == expected,
                "step cost: " + counts.str());
    }
  }
  return run.take();
}

PropertyOutcome prop_rejects_bad_arguments(const VerifyOptions&) {
  PropertyRun run("rejects-bad-arguments");

  auto expect = [&run](const char* what, auto&& fn) {
    bool ok = false;
    try {
      fn();
    } catch (const ContractViolation&) {
      ok = true;
    } catch (const DomainError&) {
      ok = true;
    } catch (const SpectralUnsupported&) {
      ok = true;
    } catch (const SingularMatrixError&) {
      ok = true;
    } catch (const DimensionError&) {
      ok = true;
    }
    run.check(ok, std::string("expected rejection: ") + what);
  };

  expect("descending eigenvalues", [] {
    const double lams[] = {1.2, 0.7};
    const int ks[] = {0, 1};
    quasi_vandermonde(lams, ks);
  });
  expect("eigenvalue on the unit circle", [] {
    const double lams[] = {0.5, 1.0};
    volume_infinite(lams);
  });
  expect("complex spectrum", [] {
    eig_real_distinct(RealMatrix{{0.0, -1.0}, {1.0, 0.0}});
  });
  expect("repeated spectrum", [] {
    eig_real_distinct(RealMatrix{{1.0, 0.0}, {0.0, 1.0}});
  });
  expect("negative spectrum", [] {
    eig_real_distinct(RealMatrix{{-1.0, 0.0}, {0.0, 2.0}});
  });
  expect("singular state matrix", [] {
    const SystemModel m("s", RealMatrix{{1.0, 2.0}, {2.0, 4.0}},
                        RealMatrix{{1.0}, {0.0}});
    controllable_volume(m, 3);
  });
  expect("overlapping label ranges", [] {
    CrossStream({TupleSet::theta(0, 1, 1, 1), TupleSet::theta(1, 2, 1, 1)});
  });
  expect("zero horizon", [] {
    const SystemModel m("s", RealMatrix{{2.0}}, RealMatrix{{1.0}});
    reachable_volume(m, 0);
  });

  return run.take();
}

}  // namespace

long long VerifyReport::total_checks() const {
  long long sum = 0;
  for (const auto& p : properties) sum += p.checks;
  return sum;
}

long long VerifyReport::total_failures() const {
  long long sum = 0;
  for (const auto& p : properties) sum += p.failures;
  return sum;
}

VerifyReport run_verification(const VerifyOptions& opts) {
  if (opts.dim_lo < 1 || opts.dim_hi > 5 || opts.dim_lo > opts.dim_hi) {
    throw ContractViolation("dimensions must satisfy 1 <= lo <= hi <= 5, got " +
                            std::to_string(opts.dim_lo) + ".." +
                            std::to_string(opts.dim_hi));
  }
  if (opts.trials < 1) {
    throw ContractViolation("trials must be at least 1, got " +
                            std::to_string(opts.trials));
  }
  if (opts.fuzz_instances < 0) {
    throw ContractViolation("fuzz instance count must be nonnegative");
  }

  Rng rng(opts.seed);
  VerifyReport report;
  report.properties.push_back(prop_exact_matches_recursive(rng, opts));
  report.properties.push_back(prop_spectral_matches_exact(rng, opts));
  report.properties.push_back(prop_power_det_positive(rng, opts));
  report.properties.push_back(prop_monotone_in_horizon(rng, opts));
  report.properties.push_back(prop_covariant_under_maps(rng, opts));
  report.properties.push_back(prop_table_converges(rng, opts));
  report.properties.push_back(prop_work_counters(rng, opts));
  report.properties.push_back(prop_rejects_bad_arguments(opts));
  return report;
}

}  // namespace zonovol
