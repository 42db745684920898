// Acceptance gate: one PASS/FAIL line per criterion, with supporting detail
// lines underneath. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "rgamss/baselines.hpp"
#include "rgamss/cli.hpp"
#include "rgamss/gof.hpp"
#include "rgamss/sampler.hpp"
#include "rgamss/specfun.hpp"
#include "test_support.hpp"

using namespace rgamss;

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<double> kLadder = {1e-4, 0.01, 0.1, 0.5};

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct ZDraws {
  std::vector<double> z;
  SamplerStats stats;
};

ZDraws draw_z(double alpha, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
  const EnvelopeParams p = envelope_params(ShapeParam{alpha});
  UniformSource src(seed, stream);
  ZDraws out;
  out.z.resize(n);
  for (double& v : out.z) v = sample_z(p, src, out.stats);
  return out;
}

double exp1_cdf(double x) { return x > 0.0 ? -std::expm1(-x) : 0.0; }

Outcome acceptance_rate_reproduction() {
  Outcome o;
  for (double a : kLadder) {
    const auto start = Clock::now();
    const ZDraws d = draw_z(a, 1'000'000, kDefaultSeed, 100);
    const double secs = seconds_since(start);
    const double r = acceptance_rate(ShapeParam{a}).exact;
    const double trials = static_cast<double>(d.stats.proposals);
    const double observed = d.stats.accept_rate();
    const double se = std::sqrt(r * (1 - r) / trials);
    o.check(std::abs(observed - r) <= 4 * se,
            fmt("alpha=%g observed=%.7f r=%.7f |diff|/SE=%.1f (Gamma(1+alpha)*r=%.7f)", a, observed,
                r, std::abs(observed - r) / se, acceptance_probability(ShapeParam{a})));
    o.check(secs < 10.0, fmt("alpha=%g runtime %.2fs < 10s", a, secs));
  }
  return o;
}

Outcome near_unit_efficiency() {
  Outcome o;
  const double a = 1e-6;
  const double theory = 1.0 / acceptance_rate(ShapeParam{a}).exact;
  o.check(theory <= 1.000002, fmt("theoretical proposals/accept 1/r = %.9f <= 1.000002", theory));
  const ZDraws d = draw_z(a, 1'000'000, kDefaultSeed, 101);
  o.check(d.stats.proposals_per_accept() <= 1.0001,
          fmt("empirical proposals/accept = %.7f <= 1.0001", d.stats.proposals_per_accept()));
  return o;
}

Outcome approximation_quality() {
  Outcome o;
  for (double a : {0.001, 0.01, 0.1}) {
    const AcceptanceRate r = acceptance_rate(ShapeParam{a});
    o.check(std::abs(r.exact - r.approx) <= a * a,
            fmt("alpha=%g |r - (1 - alpha/e)| = %.3e <= %.3e", a, std::abs(r.exact - r.approx), a * a));
  }
  return o;
}

Outcome exact_distribution() {
  Outcome o;
  for (double a : kLadder) {
    const ShapeParam shape{a};
    const ZDraws d = draw_z(a, 100'000, kDefaultSeed, 102);
    const auto ks = gof::ks_test(d.z, [shape](double x) { return gof::exact_cdf_z(x, shape); });
    o.check(ks.p_value > 0.01, fmt("alpha=%g D=%.5f p=%.4f > 0.01", a, ks.statistic, ks.p_value));
  }
  const ShapeParam shape{0.01};
  int rejections = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ZDraws d = draw_z(0.01, 100'000, kDefaultSeed + 1000 + seed, 0);
    rejections += gof::ks_test(d.z, [shape](double x) { return gof::exact_cdf_z(x, shape); }).p_value < 0.05;
  }
  o.check(rejections <= 2, fmt("alpha=0.01, 20 fresh seeds: %d rejections at 5%% (<= 2)", rejections));
  return o;
}

Outcome exponential_limit() {
  Outcome o;
  const std::vector<double> ladder = {0.2, 0.1, 0.01, 0.001};
  std::vector<double> ks;
  std::vector<double> cf;
  const auto grid = gof::default_t_grid();
  for (double a : ladder) {
    ks.push_back(gof::ks_test(draw_z(a, 1'000'000, kDefaultSeed, 103).z, exp1_cdf).statistic);
    cf.push_back(gof::cf_limit_check(ShapeParam{a}, grid));
  }
  for (std::size_t i = 0; i + 1 < ladder.size(); ++i) {
    o.check(ks[i] > ks[i + 1], fmt("KS vs Exp(1): alpha=%g %.5f > alpha=%g %.5f", ladder[i], ks[i],
                                   ladder[i + 1], ks[i + 1]));
    o.check(cf[i] > cf[i + 1], fmt("CF error: alpha=%g %.3e > alpha=%g %.3e", ladder[i], cf[i],
                                   ladder[i + 1], cf[i + 1]));
  }
  const double tiny = gof::cf_limit_check(ShapeParam{1e-8}, grid);
  o.check(tiny < 1e-6, fmt("CF error at alpha=1e-8: %.3e < 1e-6", tiny));
  return o;
}

Outcome moment_identities() {
  Outcome o;
  for (double a : kLadder) {
    const gof::MomentCheck m = gof::moment_check(draw_z(a, 1'000'000, kDefaultSeed, 104).z, ShapeParam{a});
    o.check(std::abs(m.mean_discrepancy) < 4 && std::abs(m.var_discrepancy) < 4,
            fmt("alpha=%g mean %.6f vs %.6f (z=%.2f), var %.6f vs %.6f (z=%.2f)", a, m.mean_observed,
                m.mean_theory, m.mean_discrepancy, m.var_observed, m.var_theory, m.var_discrepancy));
  }
  return o;
}

Outcome underflow_demonstration() {
  Outcome o;
  const ShapeParam shape{0.001};
  UniformSource src(kDefaultSeed, 105);
  constexpr int n = 100'000;
  int zeros = 0;
  for (int i = 0; i < n; ++i) zeros += baselines::ahrens_dieter_gs(shape, src) == 0.0;
  const double predicted = 1.0 - gof::exact_cdf_z(0.001 * 708.396, shape);
  const double se = std::sqrt(predicted * (1 - predicted) / n);
  const double share = static_cast<double>(zeros) / n;
  o.check(std::abs(share - predicted) <= 4 * se,
          fmt("Ahrens-Dieter zeros at alpha=0.001: %.5f vs predicted %.5f (|diff|/SE=%.2f)", share,
              predicted, std::abs(share - predicted) / se));
  const ZDraws d = draw_z(1e-6, 1'000'000, kDefaultSeed, 106);
  std::size_t finite = 0;
  for (double z : d.z) finite += std::isfinite(-z / 1e-6);
  o.check(finite == d.z.size(), fmt("rgamss log Y finite at alpha=1e-6: %zu / %zu", finite, d.z.size()));
  return o;
}

Outcome envelope_domination() {
  Outcome o;
  for (double a : {1e-6, 1e-3, 0.1, 0.5, 0.9}) {
    const EnvelopeParams p = envelope_params(ShapeParam{a});
    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 100; ++k) worst = std::max(worst, log_accept_ratio(-10.0 * a * k / 100.0, p));
    for (int k = 0; k <= 200; ++k) worst = std::max(worst, log_accept_ratio(0.1 * k, p));
    o.check(worst <= 0.0, fmt("alpha=%g max log ratio on grid = %.3e <= 0", a, worst));
    const double left = log_accept_ratio(-1e-12 * a, p);
    const double right = log_accept_ratio(50.0, p);
    o.check(left >= -1e-9 && right >= -1e-9,
            fmt("alpha=%g ratio at 0- = %.3e, at z=50 = %.3e (>= -1e-9)", a, left, right));
  }
  return o;
}

Outcome special_functions() {
  using namespace specfun;
  using rgamss::testing::Golden;
  using rgamss::testing::rel_err;
  Outcome o;
  const auto start = Clock::now();
  const Golden& g = Golden::instance();

  double worst = 0.0;
  for (const auto& [in, v] : g.all("log_gamma")) worst = std::max(worst, rel_err(log_gamma(std::stod(in)), std::stod(v)));
  o.check(worst <= 1e-13, fmt("log_gamma golden grid max rel err %.2e <= 1e-13", worst));
  o.check(log_gamma(1.0) == 0.0 && log_gamma(2.0) == 0.0, "log_gamma(1) = log_gamma(2) = 0");

  worst = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double x = std::pow(10.0, -6.0 + 8.0 * k / 63.0);
    worst = std::max(worst, rel_err(std::exp(log_gamma(x + 1)) / std::exp(log_gamma(x)), x));
  }
  o.check(worst <= 1e-10, fmt("functional equation max rel err %.2e <= 1e-10", worst));

  worst = 0.0;
  for (const auto& [in, v] : g.all("log_gamma_complex")) {
    const auto comma = in.find(',');
    const Complex z{std::stod(in.substr(0, comma)), std::stod(in.substr(comma + 1))};
    worst = std::max(worst, std::abs(std::exp(log_gamma_complex(z) - g.complex_value("log_gamma_complex", in)) - 1.0));
  }
  o.check(worst <= 1e-10, fmt("log_gamma_complex golden max rel err of Gamma %.2e <= 1e-10", worst));
  const Complex c1 = log_gamma_complex({0.3, 2.0});
  const Complex c2 = log_gamma_complex({0.3, -2.0});
  o.check(c1 == std::conj(c2), "log_gamma_complex conjugation symmetry");
  worst = 0.0;
  for (double x : {1e-6, 0.01, 0.5, 1.0, 1.7, 3.0, 9.0}) worst = std::max(worst, std::abs(log_gamma_complex({x, 0.0}).real() - log_gamma(x)));
  o.check(worst <= 1e-12, fmt("log_gamma_complex on real axis max abs err %.2e <= 1e-12", worst));

  worst = 0.0;
  for (const auto& [in, v] : g.all("digamma")) worst = std::max(worst, std::abs(digamma(std::stod(in)) - std::stod(v)));
  o.check(worst <= 1e-12, fmt("digamma golden grid max abs err %.2e <= 1e-12", worst));
  worst = 0.0;
  for (double x : {1e-5, 0.1, 0.9}) worst = std::max(worst, std::abs(digamma(x) + 1 / x - digamma(x + 1)));
  o.check(worst <= 1e-12, fmt("digamma recurrence max residual %.2e <= 1e-12", worst));

  worst = 0.0;
  for (const auto& [in, v] : g.all("trigamma")) worst = std::max(worst, rel_err(trigamma(std::stod(in)), std::stod(v)));
  o.check(worst <= 1e-10, fmt("trigamma golden grid max rel err %.2e <= 1e-10", worst));
  worst = 0.0;
  for (double x : {1e-5, 0.1, 0.9}) worst = std::max(worst, std::abs(trigamma(x) - 1 / (x * x) - trigamma(x + 1)) / trigamma(x));
  o.check(worst <= 1e-10, fmt("trigamma recurrence max rel residual %.2e <= 1e-10", worst));
  o.check(std::abs(1e-8 * trigamma(1e-4) - 1.0) <= 2e-4, "x^2 trigamma(x) -> 1 at x = 1e-4");

  const double h = 1e-5;
  for (double x : {0.01, 0.1, 1.0, 10.0}) {
    const double d1 = std::abs(digamma(x) - (log_gamma(x + h) - log_gamma(x - h)) / (2 * h));
    o.check(d1 <= 1e-5, fmt("digamma vs FD of log_gamma at x=%g: %.2e <= 1e-5", x, d1));
    const double d2 = std::abs(trigamma(x) - (digamma(x + h) - digamma(x - h)) / (2 * h));
    o.check(d2 <= 1e-4, fmt("trigamma vs FD of digamma at x=%g: %.2e <= 1e-4", x, d2));
  }

  worst = 0.0;
  for (const auto& [in, v] : g.all("reg_inc_gamma_upper")) {
    const auto comma = in.find(',');
    worst = std::max(worst, std::abs(reg_inc_gamma_upper(std::stod(in.substr(0, comma)), std::stod(in.substr(comma + 1))) - std::stod(v)));
  }
  o.check(worst <= 1e-12, fmt("Q(a,x) quadrature golden max abs err %.2e <= 1e-12", worst));
  worst = 0.0;
  for (double x : {0.0, 0.5, 3.0}) worst = std::max(worst, std::abs(reg_inc_gamma_upper(1.0, x) - std::exp(-x)));
  o.check(worst <= 1e-12, fmt("Q(1,x) = exp(-x) max abs err %.2e", worst));
  worst = 0.0;
  bool monotone = true;
  for (int i = 0; i < 20; ++i) {
    const double a = std::pow(10.0, -4.0 + 5.7 * i / 19.0);
    double previous = 1.0;
    for (int j = 0; j < 20; ++j) {
      const IncGamma v = reg_inc_gamma(a, std::pow(10.0, -6.0 + 8.0 * j / 19.0));
      worst = std::max(worst, std::abs(v.lower + v.upper - 1.0));
      monotone = monotone && v.upper <= previous;
      previous = v.upper;
    }
  }
  o.check(worst <= 1e-14 && monotone, fmt("P + Q = 1 on 20x20 grid (max %.2e), Q monotone in x", worst));

  const double secs = seconds_since(start);
  o.check(secs < 5.0, fmt("special-function suite runtime %.3fs < 5s", secs));
  return o;
}

Outcome determinism() {
  Outcome o;
  auto run = [](const char* workers) {
    const char* argv[] = {"rgamss", "sample", "--alpha", "0.01", "--n", "300000", "--seed", "11",
                          "--workers", workers};
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(10, argv, out, err);
    return std::pair{code, out.str()};
  };
  const auto a = run("1");
  const auto b = run("1");
  const auto c = run("4");
  o.check(a.first == 0 && b.first == 0 && c.first == 0, "sample exits 0");
  o.check(a.second == b.second, fmt("repeated runs byte-identical (%zu bytes)", a.second.size()));
  o.check(a.second == c.second, "workers 1 vs 4 byte-identical");
  return o;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> criteria = {
      {"1 acceptance rate equals r(alpha) = 1/(1+w)", acceptance_rate_reproduction},
      {"2 near-unit efficiency at alpha = 1e-6", near_unit_efficiency},
      {"3 |r - (1 - alpha/e)| <= alpha^2", approximation_quality},
      {"4 KS against the exact law of Z", exact_distribution},
      {"5 convergence to Exp(1): KS and CF ladders", exponential_limit},
      {"6 moment identities for Z", moment_identities},
      {"7 natural-scale underflow vs log-scale output", underflow_demonstration},
      {"8 envelope domination and tightness", envelope_domination},
      {"9 special-function suite", special_functions},
      {"10 CLI sample determinism", determinism},
  };
  const auto start = Clock::now();
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    const Outcome outcome = c.run();
    std::printf("[%s] criterion %s (%.2fs)\n", outcome.pass ? "PASS" : "FAIL", c.name, seconds_since(t0));
    for (const auto& line : outcome.details) std::printf("         %s\n", line.c_str());
    failed += outcome.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed in %.1fs\n", static_cast<int>(criteria.size()) - failed,
              criteria.size(), seconds_since(start));
  return failed == 0 ? 0 : 1;
}
