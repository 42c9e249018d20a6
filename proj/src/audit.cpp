// Copyright 2026 The dpkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpkit/audit.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "dpkit/rng.hpp"
#include "dpkit/stats.hpp"
#include "dpkit/synth.hpp"

namespace dpkit {

namespace {

// Seed streams. Every randomized quantity derives from
// (master seed, stream, index); see rng.hpp.
constexpr std::uint64_t kStreamPairs = 10;
constexpr std::uint64_t kStreamDraws = 1000;
constexpr std::uint64_t kStreamTrialData = 30;
constexpr std::uint64_t kStreamAdversary = 3000;
constexpr std::uint64_t kStreamAlgorithm = 4000;
constexpr std::uint64_t kStreamBaseline = 100;
constexpr std::uint64_t kStreamBenchData = 200;
constexpr std::uint64_t kStreamBenchMech = 5000;

constexpr double kZHat = 5.0;        // CI width for the epsilon estimate
constexpr double kZ999 = 3.2905267314918945;  // 99.9% two-sided
constexpr double kZCheck = 2.5758293035489004;  // 99%

std::string jsonNumber(double v) {
  if (!std::isfinite(v)) return v > 0 ? "\"inf\"" : (v < 0 ? "\"-inf\"" : "\"nan\"");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string jsonEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

}  // namespace

void ExperimentReport::put(const std::string& key, double value) {
  metrics.emplace_back(key, value);
}

double ExperimentReport::metric(const std::string& key) const {
  for (const auto& [k, v] : metrics)
    if (k == key) return v;
  throw ParameterError("no such metric: " + key);
}

void ExperimentReport::check(const std::string& name, double value,
                             double threshold, bool pass) {
  checks.push_back(CheckResult{name, value, threshold, pass});
}

bool ExperimentReport::allPass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string ExperimentReport::toJson() const {
  std::ostringstream os;
  os << "{\n  \"scenario\": \"" << jsonEscape(scenario) << "\",\n";
  os << "  \"master_seed\": " << masterSeed << ",\n";
  os << "  \"metrics\": {";
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    if (i) os << ",";
    os << "\n    \"" << jsonEscape(metrics[i].first)
       << "\": " << jsonNumber(metrics[i].second);
  }
  os << (metrics.empty() ? "" : "\n  ") << "},\n  \"checks\": [";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (i) os << ",";
    os << "\n    {\"name\": \"" << jsonEscape(checks[i].name)
       << "\", \"value\": " << jsonNumber(checks[i].value)
       << ", \"threshold\": " << jsonNumber(checks[i].threshold)
       << ", \"pass\": " << (checks[i].pass ? "true" : "false") << "}";
  }
  os << (checks.empty() ? "" : "\n  ") << "],\n";
  os << "  \"all_pass\": " << (allPass() ? "true" : "false") << "\n}\n";
  return os.str();
}

ExperimentReport auditDp(const DiscreteMechanism& mech,
                         const NeighborGenerator& gen, double epsilon,
                         std::size_t samples, std::size_t pairs,
                         std::uint64_t seed) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  if (samples < 10000) throw ParameterError("DP audit needs at least 1e4 samples");
  if (pairs < 1) throw ParameterError("DP audit needs at least one pair");
  if (mech.outcomes == 0)
    throw AuditUnsupportedError("mechanism must declare a finite outcome space");
  Stopwatch clock;

  double epsHat = 0.0;
  std::size_t slackViolations = 0;
  std::size_t eventsChecked = 0;

  for (std::size_t p = 0; p < pairs; ++p) {
    const auto [s1, s2] = gen(deriveSeed(seed, kStreamPairs, p));
    const auto draw1 = mech.prepare(s1);
    const auto draw2 = mech.prepare(s2);

    std::vector<std::uint32_t> out1(samples), out2(samples);
    const auto m = static_cast<std::int64_t>(samples);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < m; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      out1[idx] = static_cast<std::uint32_t>(
          draw1(deriveSeed(seed, kStreamDraws + 2 * p, idx)));
      out2[idx] = static_cast<std::uint32_t>(
          draw2(deriveSeed(seed, kStreamDraws + 2 * p + 1, idx)));
    }
    std::vector<std::size_t> hist1(mech.outcomes, 0), hist2(mech.outcomes, 0);
    for (std::uint32_t o : out1) ++hist1[o];
    for (std::uint32_t o : out2) ++hist2[o];

    const double eEps = std::exp(epsilon);
    for (std::size_t o = 0; o < mech.outcomes; ++o) {
      const std::size_t a = hist1[o], b = hist2[o];
      if (a == 0 && b == 0) continue;
      ++eventsChecked;
      for (int dir = 0; dir < 2; ++dir) {
        const std::size_t num = dir == 0 ? a : b;
        const std::size_t den = dir == 0 ? b : a;
        const double lo = wilsonLower(num, samples, kZHat);
        const double hi = wilsonUpper(den, samples, kZHat);
        if (lo > 0.0) epsHat = std::max(epsHat, std::log(lo / hi));
        // Raw-ratio check with the 99.9% CI slack.
        if (num > 0 && den > 0) {
          const double pn = static_cast<double>(num) / static_cast<double>(samples);
          const double pd = static_cast<double>(den) / static_cast<double>(samples);
          const double slack =
              kZ999 * (std::sqrt(pn * (1.0 - pn) / static_cast<double>(samples)) / pn +
                       std::sqrt(pd * (1.0 - pd) / static_cast<double>(samples)) / pd);
          if (pn / pd > eEps * (1.0 + slack)) ++slackViolations;
        }
      }
    }
  }

  ExperimentReport rep;
  rep.scenario = "audit-dp";
  rep.masterSeed = seed;
  rep.put("epsilon", epsilon);
  rep.put("samples", static_cast<double>(samples));
  rep.put("pairs", static_cast<double>(pairs));
  rep.put("epsilon_hat", epsHat);
  rep.put("events_checked", static_cast<double>(eventsChecked));
  rep.put("slack_violations", static_cast<double>(slackViolations));
  rep.check("epsilon_hat <= epsilon", epsHat, epsilon, epsHat <= epsilon);
  rep.wallClockSec = clock.seconds();
  return rep;
}

ExperimentReport auditRobustness(const SeededEstimator& alg,
                                 const DataGenerator& gen, const Vec& trueMu,
                                 const Loss& loss,
                                 const RobustnessProfile& profile,
                                 const std::vector<Adversary>& adversaries,
                                 std::size_t trials, std::uint64_t seed) {
  profile.validate();
  if (trials < 100) throw ParameterError("robustness audit needs >= 100 trials");
  Stopwatch clock;

  std::vector<double> worst(trials, 0.0);
  const auto m = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t t = 0; t < m; ++t) {
    const auto idx = static_cast<std::size_t>(t);
    const Dataset clean = gen(deriveSeed(seed, kStreamTrialData, idx));
    const std::size_t budget = corruptionBudget(clean.size(), profile.tau);
    double w = 0.0;
    if (adversaries.empty() || budget == 0) {
      const Vec est = clean.empty()
                          ? Vec{}
                          : alg(clean, deriveSeed(seed, kStreamAlgorithm, idx));
      w = loss(est, trueMu);
    } else {
      for (std::size_t a = 0; a < adversaries.size(); ++a) {
        const Dataset corrupted =
            corrupt(clean, budget, adversaries[a],
                    deriveSeed(seed, kStreamAdversary + a, idx));
        const Vec est =
            alg(corrupted, deriveSeed(seed, kStreamAlgorithm + a + 1, idx));
        w = std::max(w, loss(est, trueMu));
      }
    }
    worst[idx] = w;
  }

  std::size_t failures = 0;
  for (double w : worst)
    if (w > profile.alpha) ++failures;
  const double failRate = static_cast<double>(failures) / static_cast<double>(trials);
  const double failLower = wilsonLower(failures, trials, kZCheck);
  const double alphaHat = quantileUpper(worst, 1.0 - profile.beta);

  ExperimentReport rep;
  rep.scenario = "audit-robust";
  rep.masterSeed = seed;
  rep.put("trials", static_cast<double>(trials));
  rep.put("tau", profile.tau);
  rep.put("alpha_claimed", profile.alpha);
  rep.put("beta", profile.beta);
  rep.put("failure_rate", failRate);
  rep.put("failure_rate_ci_lower", failLower);
  rep.put("audited_alpha", alphaHat);
  rep.check("failure rate consistent with beta", failLower, profile.beta,
            failLower <= profile.beta);
  rep.wallClockSec = clock.seconds();
  return rep;
}

namespace {

// (1-beta)-quantile of the clean projected-median error: the default alpha0
// (the baseline error without corruptions or privacy).
double baselineAlpha0(const BenchScenario& sc, std::size_t n, std::uint64_t seed) {
  std::vector<double> errors(sc.cleanSims);
  RobustEstimatorSpec med;
  med.kind = EstimatorKind::ProjectedMedian;
  med.radius = sc.radius;
  const auto m = static_cast<std::int64_t>(sc.cleanSims);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < m; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const Dataset s = genGaussianSpherical(
        n, {sc.mu}, sc.sigma, deriveSeed(seed, kStreamBaseline + n, idx));
    errors[idx] = std::abs(estimate(med, s)[0] - sc.mu);
  }
  return quantileUpper(std::move(errors), 1.0 - sc.beta);
}

struct QuantileBand {
  double value;
  double lo;
  double hi;
};

// Empirical quantile with an order-statistic confidence band.
QuantileBand quantileWithBand(std::vector<double> values, double q, double z) {
  std::sort(values.begin(), values.end());
  const auto T = static_cast<double>(values.size());
  const double rank = std::ceil(q * T);
  const double half = z * std::sqrt(T * q * (1.0 - q));
  auto at = [&](double r) {
    const auto i = static_cast<std::size_t>(
        std::min(T, std::max(1.0, std::round(r))));
    return values[i - 1];
  };
  return QuantileBand{at(rank), at(rank - half), at(rank + half)};
}

}  // namespace

BenchResult benchAccuracy(const BenchScenario& sc,
                          const std::vector<std::size_t>& ns,
                          const std::vector<double>& epsilons,
                          std::size_t trials, std::uint64_t seed) {
  if (trials < 200) throw ParameterError("benchmark needs >= 200 trials per cell");
  if (ns.empty() || epsilons.empty()) throw ParameterError("empty benchmark grid");
  Stopwatch clock;

  BenchResult result;
  result.report.scenario = "bench-accuracy";
  result.report.masterSeed = seed;

  std::vector<double> alpha0(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i)
    alpha0[i] = baselineAlpha0(sc, ns[i], seed);

  const LenOracle oracle = LenOracle::medianAnalytic(sc.radius);
  std::vector<double> cellQuantile(ns.size() * epsilons.size());
  std::vector<QuantileBand> cellBand(ns.size() * epsilons.size());

  for (std::size_t ei = 0; ei < epsilons.size(); ++ei) {
    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
      const std::size_t cell = ei * ns.size() + ni;
      const std::size_t n = ns[ni];
      const double eps = epsilons[ei];

      MechanismConfig config;
      config.budget.epsilon = eps;
      config.rho = alpha0[ni];
      config.gridStep = alpha0[ni] / 2.0;
      config.range = OutputRange{sc.radius, 1};
      config.beta = sc.beta;

      std::vector<double> errors(trials);
      const auto m = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic)
      for (std::int64_t t = 0; t < m; ++t) {
        const auto idx = static_cast<std::size_t>(t);
        const std::uint64_t dataSeed =
            deriveSeed(seed, kStreamBenchData + cell, idx);
        const Dataset s = genGaussianSpherical(n, {sc.mu}, sc.sigma, dataSeed);
        const MechanismOutput out = smoothInvMech(
            s, config, oracle, deriveSeed(seed, kStreamBenchMech + cell, idx),
            Exec::Serial);
        errors[idx] = std::abs((*out.value)[0] - sc.mu);
      }
      for (std::size_t t = 0; t < trials; ++t)
        result.rows.push_back(BenchRow{
            ns[ni], eps, t, errors[t], deriveSeed(seed, kStreamBenchData + cell, t)});
      cellQuantile[cell] = quantileUpper(errors, 1.0 - sc.beta);
      cellBand[cell] = quantileWithBand(std::move(errors), 1.0 - sc.beta, kZCheck);

      std::ostringstream key;
      key << "q" << (1.0 - sc.beta) << "_n" << n << "_eps" << eps;
      result.report.put(key.str(), cellQuantile[cell]);
    }
  }

  // Two-term least squares of the per-cell quantiles against the shapes
  // sqrt(d/n) and d log(Rn/d)/(n eps), d = 1.
  double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0, sCC = 0, bC = 0;
  for (std::size_t ei = 0; ei < epsilons.size(); ++ei) {
    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
      const std::size_t cell = ei * ns.size() + ni;
      const double n = static_cast<double>(ns[ni]);
      const double f1 = std::sqrt(1.0 / n);
      const double f2 = std::log(sc.radius * n) / (n * epsilons[ei]);
      const double y = cellQuantile[cell];
      s11 += f1 * f1;
      s12 += f1 * f2;
      s22 += f2 * f2;
      b1 += f1 * y;
      b2 += f2 * y;
      const double s = f1 + f2;
      sCC += s * s;
      bC += s * y;
    }
  }
  const double det = s11 * s22 - s12 * s12;
  const double c1 = det != 0.0 ? (b1 * s22 - b2 * s12) / det : 0.0;
  const double c2 = det != 0.0 ? (b2 * s11 - b1 * s12) / det : 0.0;
  const double cSingle = sCC != 0.0 ? bC / sCC : 0.0;
  result.report.put("fit_c1_sqrt_d_over_n", c1);
  result.report.put("fit_c2_dlog_term", c2);
  result.report.put("fit_single_constant", cSingle);

  double maxRatio = 0.0, minRatio = std::numeric_limits<double>::infinity();
  for (std::size_t ei = 0; ei < epsilons.size(); ++ei) {
    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
      const std::size_t cell = ei * ns.size() + ni;
      const double n = static_cast<double>(ns[ni]);
      const double shape =
          std::sqrt(1.0 / n) + std::log(sc.radius * n) / (n * epsilons[ei]);
      const double r = cellQuantile[cell] / (cSingle * shape);
      maxRatio = std::max(maxRatio, r);
      minRatio = std::min(minRatio, r);
    }
  }
  result.report.put("fit_max_ratio", maxRatio);
  result.report.put("fit_min_ratio", minRatio);

  // Trend: quantile error nonincreasing in n along each epsilon row, up to
  // confidence-band overlap.
  for (std::size_t ei = 0; ei < epsilons.size(); ++ei) {
    for (std::size_t ni = 0; ni + 1 < ns.size(); ++ni) {
      const auto& prev = cellBand[ei * ns.size() + ni];
      const auto& next = cellBand[ei * ns.size() + ni + 1];
      std::ostringstream name;
      name << "trend eps=" << epsilons[ei] << " n " << ns[ni] << "->" << ns[ni + 1];
      result.report.check(name.str(), next.lo, prev.hi, next.lo <= prev.hi);
    }
  }
  result.report.put("row_count", static_cast<double>(result.rows.size()));
  result.report.check("row count == grid * trials",
                      static_cast<double>(result.rows.size()),
                      static_cast<double>(ns.size() * epsilons.size() * trials),
                      result.rows.size() == ns.size() * epsilons.size() * trials);
  result.report.wallClockSec = clock.seconds();
  return result;
}

void writeBenchCsv(const std::vector<BenchRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot open output file: " + path);
  out << "n,epsilon,trial,error,seed\n";
  char buf[64];
  for (const auto& r : rows) {
    out << r.n << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", r.epsilon);
    out << buf << ',' << r.trial << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", r.error);
    out << buf << ',' << r.seed << '\n';
  }
}

ExperimentReport equivalenceExperiment(std::size_t n, double epsilon,
                                       std::size_t trials, std::uint64_t seed) {
  if (n < 2) throw ParameterError("n must be at least 2");
  const double logn = std::log(static_cast<double>(n));
  if (!(epsilon >= 4.0 * logn / static_cast<double>(n)))
    throw ScenarioError("equivalence experiment requires epsilon >= 4 log(n)/n");
  Stopwatch clock;

  BenchScenario sc;
  sc.mu = 0.3;  // 1-d bounded-mean scenario, |mu| <= 1
  sc.sigma = 1.0;
  sc.radius = 2.0;
  sc.beta = 0.05;
  const double tau = logn / (static_cast<double>(n) * epsilon);

  // Robust side: audited worst-adversary error of the projected median.
  RobustEstimatorSpec med;
  med.kind = EstimatorKind::ProjectedMedian;
  med.radius = sc.radius;
  RobustnessProfile profile;
  profile.tau = tau;
  profile.beta = sc.beta;
  profile.alpha = 2.0 * sc.radius;  // vacuous; only the quantile is used
  const std::vector<Adversary> suite = {
      Adversary::replaceWithConstant({10.0 * sc.radius}),
      Adversary::replaceWithConstant({-10.0 * sc.radius}),
  };
  const auto gen = [&](std::uint64_t s) {
    return genGaussianSpherical(n, {sc.mu}, sc.sigma, s);
  };
  const ExperimentReport robRep = auditRobustness(
      [&](const Dataset& d, std::uint64_t) { return estimate(med, d); }, gen,
      {sc.mu}, Loss::euclidean(), profile, suite, trials, deriveSeed(seed, 1, 0));
  const double alphaRob = robRep.metric("audited_alpha");

  // Private side: quantile error of the transformed mechanism.
  const double alpha0 = baselineAlpha0(sc, n, deriveSeed(seed, 2, 0));
  MechanismConfig config;
  config.budget.epsilon = epsilon;
  config.rho = alpha0;
  config.gridStep = alpha0 / 2.0;
  config.range = OutputRange{sc.radius, 1};
  config.beta = sc.beta;
  const LenOracle oracle = LenOracle::medianAnalytic(sc.radius);

  std::vector<double> errors(trials);
  const auto m = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t t = 0; t < m; ++t) {
    const auto idx = static_cast<std::size_t>(t);
    const Dataset s = genGaussianSpherical(
        n, {sc.mu}, sc.sigma, deriveSeed(seed, 3, idx));
    const MechanismOutput out =
        smoothInvMech(s, config, oracle, deriveSeed(seed, 4, idx), Exec::Serial);
    errors[idx] = std::abs((*out.value)[0] - sc.mu);
  }
  const double alphaPriv = quantileUpper(std::move(errors), 1.0 - sc.beta);
  const double ratio = alphaPriv / alphaRob;

  ExperimentReport rep;
  rep.scenario = "equivalence";
  rep.masterSeed = seed;
  rep.put("n", static_cast<double>(n));
  rep.put("epsilon", epsilon);
  rep.put("tau", tau);
  rep.put("trials", static_cast<double>(trials));
  rep.put("alpha_rob", alphaRob);
  rep.put("alpha_priv", alphaPriv);
  rep.put("ratio", ratio);
  rep.check("ratio within [1/8, 8]", ratio, 8.0, ratio >= 0.125 && ratio <= 8.0);
  rep.wallClockSec = clock.seconds();
  return rep;
}

DiscreteMechanism randomizedResponseMechanism(double epsilon) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  DiscreteMechanism m;
  m.outcomes = 2;
  const double pKeep = std::exp(epsilon) / (1.0 + std::exp(epsilon));
  m.prepare = [pKeep](const Dataset& data) {
    if (data.size() != 1 || data.dim() != 1)
      throw AuditUnsupportedError("randomized response expects a single bit record");
    const bool bit = data.at(0, 0) > 0.5;
    return [pKeep, bit](std::uint64_t s) -> std::size_t {
      SplitMix64 rng(s);
      const bool keep = rng.nextUniform() < pKeep;
      return static_cast<std::size_t>(keep ? bit : !bit);
    };
  };
  return m;
}

std::pair<Dataset, Dataset> randomizedResponsePair() {
  return {Dataset::fromValues({0.0}), Dataset::fromValues({1.0})};
}

DiscreteMechanism medianMechanismForAudit(const MechanismConfig& config) {
  config.validate();
  auto oracle = std::make_shared<LenOracle>(
      LenOracle::medianAnalytic(config.range.radius));
  auto grid = std::make_shared<LatticeGrid>(mechanismLattice(config, *oracle));
  DiscreteMechanism m;
  m.outcomes = grid->size();
  m.prepare = [config, oracle, grid](const Dataset& data) {
    auto field = std::make_shared<ScoreField>(
        buildScoreField(*oracle, data, *grid, config.rho, Exec::Parallel));
    auto sampler = std::make_shared<FieldSampler>(*field, config.budget.epsilon);
    return [field, sampler, grid](std::uint64_t s) -> std::size_t {
      const MechanismOutput out = sampler->sample(s);
      return *grid->indexOfPoint(*out.value);
    };
  };
  return m;
}

}  // namespace dpkit
