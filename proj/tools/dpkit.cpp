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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpkit/audit.hpp"
#include "dpkit/rng.hpp"
#include "dpkit/synth.hpp"
#include "json.hpp"

namespace {

using dpkit::Vec;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitCriterionFailure = 1;
constexpr int kExitUsage = 2;

// Flat `key = value` config support: the file's pairs become long options
// inserted ahead of the user's flags, and every option takes the last value
// given, so the command line overrides the file.
std::vector<std::string> expandConfig(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::string configPath;
  for (std::size_t i = 1; i < args.size();) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      configPath = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      configPath = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  if (configPath.empty()) return args;

  std::ifstream in(configPath);
  if (!in) throw dpkit::ParameterError("cannot open config file: " + configPath);
  std::vector<std::string> fileTokens;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string t) {
      const auto a = t.find_first_not_of(" \t\r");
      const auto b = t.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string{} : t.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    if (value == "true") {
      fileTokens.push_back("--" + key);
    } else if (value != "false") {
      fileTokens.push_back("--" + key);
      fileTokens.push_back(value);
    }
  }
  // Insert the file's tokens right after the subcommand name.
  std::size_t insertAt = args.size();
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (!args[i].empty() && args[i][0] != '-') {
      insertAt = i + 1;
      break;
    }
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(insertAt),
              fileTokens.begin(), fileTokens.end());
  return args;
}

void writeOut(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw dpkit::ParameterError("cannot open output file: " + path);
  out << text;
}

// Options shared by every subcommand that builds a catalog estimator.
struct EstimatorOptions {
  std::string kind = "median";
  double radius = 10.0;
  int dim = 1;
  double fraction = 0.1;
  double gridRes = 0.1;
  int k = 1;
  double tau = 0.0;
  double beta = 0.05;
  double alpha = 0.0;
  double maxTau = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--estimator", kind,
                    "median | trimmed-mean | tukey-grid | topk-mean")
        ->capture_default_str();
    cmd->add_option("--radius", radius, "output ball radius R")
        ->capture_default_str();
    cmd->add_option("--dim", dim, "record dimension d")->capture_default_str();
    cmd->add_option("--fraction", fraction, "trim fraction (trimmed-mean)")
        ->capture_default_str();
    cmd->add_option("--grid-res", gridRes, "grid cell width w")
        ->capture_default_str();
    cmd->add_option("--k", k, "sparsity (topk-mean)")->capture_default_str();
    cmd->add_option("--tau", tau, "claimed corruption fraction");
    cmd->add_option("--beta", beta, "failure probability")->capture_default_str();
    cmd->add_option("--alpha", alpha, "claimed error bound");
    cmd->add_option("--max-tau", maxTau, "profile validity gate on tau")
        ->capture_default_str();
  }

  dpkit::RobustEstimatorSpec spec() const {
    dpkit::RobustEstimatorSpec s;
    if (kind == "median") {
      s.kind = dpkit::EstimatorKind::ProjectedMedian;
    } else if (kind == "trimmed-mean") {
      s.kind = dpkit::EstimatorKind::TrimmedMean;
    } else if (kind == "tukey-grid") {
      s.kind = dpkit::EstimatorKind::TukeyMedianGrid;
    } else if (kind == "topk-mean") {
      s.kind = dpkit::EstimatorKind::TopKSparseMean;
    } else {
      throw CLI::ValidationError("--estimator", "unknown estimator: " + kind);
    }
    s.radius = radius;
    s.dim = dim;
    s.trimFraction = fraction;
    s.gridResolution = gridRes;
    s.sparsity = k;
    s.profile = dpkit::RobustnessProfile{tau, beta, alpha};
    s.profileMaxTau = maxTau;
    return s;
  }
};

json mechanismOutputJson(const dpkit::MechanismOutput& out) {
  json j;
  if (out.isBottom()) {
    j["value"] = nullptr;
  } else {
    j["value"] = *out.value;
  }
  j["bot"] = out.isBottom();
  j["score"] = out.score == dpkit::kScoreInf ? -1 : out.score;
  j["support_cells"] = out.supportCells;
  j["seed"] = out.seed;
  if (out.noisyDistance)
    j["noisy_distance"] = std::isfinite(*out.noisyDistance)
                              ? json(*out.noisyDistance)
                              : json("inf");
  return j;
}

int reportExit(const dpkit::ExperimentReport& rep, const std::string& output) {
  writeOut(rep.toJson(), output);
  return rep.allPass() ? kExitOk : kExitCriterionFailure;
}

std::vector<dpkit::Adversary> adversarySuite(const std::string& names,
                                             const dpkit::RobustEstimatorSpec& spec) {
  std::vector<dpkit::Adversary> suite;
  std::stringstream ss(names);
  std::string name;
  while (std::getline(ss, name, ',')) {
    const double far = 10.0 * spec.radius;
    if (name == "const-high") {
      suite.push_back(dpkit::Adversary::replaceWithConstant(
          Vec(static_cast<std::size_t>(spec.dim), far)));
    } else if (name == "const-low") {
      suite.push_back(dpkit::Adversary::replaceWithConstant(
          Vec(static_cast<std::size_t>(spec.dim), -far)));
    } else if (name == "shift") {
      suite.push_back(dpkit::Adversary::shiftToExtreme(
          Vec(static_cast<std::size_t>(spec.dim), 1.0), far));
    } else if (name == "greedy") {
      suite.push_back(dpkit::Adversary::greedyWorstCase(
          dpkit::estimatorFn(spec), spec.radius));
    } else {
      throw CLI::ValidationError("--adversaries", "unknown adversary: " + name);
    }
  }
  if (suite.empty())
    throw CLI::ValidationError("--adversaries", "adversary list is empty");
  return suite;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private estimation from robust estimators"};
  app.require_subcommand(1);

  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string configDummy;
  auto addConfig = [&configDummy](CLI::App* cmd) {
    // Consumed by expandConfig() before parsing; registered for --help only.
    cmd->add_option("--config", configDummy,
                    "flat key = value file; command-line flags override");
  };

  // ----- gen -----
  auto* gen = app.add_subcommand("gen", "generate a Gaussian dataset CSV");
  std::size_t genN = 100;
  int genDim = 1;
  std::vector<double> genMu;
  double genSigma = 1.0;
  std::uint64_t genSeed = 0;
  std::string genOut;
  gen->add_option("--n", genN, "number of records")->capture_default_str();
  gen->add_option("--dim", genDim, "record dimension")->capture_default_str();
  gen->add_option("--mu", genMu, "mean vector (comma-separated)")
      ->delimiter(',');
  gen->add_option("--sigma", genSigma, "isotropic standard deviation")
      ->capture_default_str();
  gen->add_option("--seed", genSeed, "master seed")->envname("DPKIT_SEED");
  gen->add_option("--output", genOut, "output CSV path")->required();
  addConfig(gen);

  // ----- estimate -----
  auto* est = app.add_subcommand("estimate", "run a robust estimator on a CSV");
  EstimatorOptions estOpts;
  estOpts.attach(est);
  std::string estInput, estOutput;
  bool estHeader = false;
  est->add_option("--input", estInput, "dataset CSV")->required();
  est->add_flag("--header", estHeader, "skip one header line");
  est->add_option("--output", estOutput, "output JSON path (default stdout)");
  addConfig(est);

  // ----- oracle -----
  auto* orc = app.add_subcommand("oracle", "compute a score field CSV");
  EstimatorOptions orcOpts;
  orcOpts.attach(orc);
  std::string orcInput, orcOutput, orcVariant = "smooth";
  bool orcHeader = false;
  double orcRho = 0.0;
  int orcKTrunc = 0;
  orc->add_option("--input", orcInput, "dataset CSV")->required();
  orc->add_flag("--header", orcHeader, "skip one header line");
  orc->add_option("--rho", orcRho, "smoothing radius")->capture_default_str();
  orc->add_option("--k-trunc", orcKTrunc, "truncation threshold (0 = none)");
  orc->add_option("--variant", orcVariant, "smooth | truncated | sparse")
      ->capture_default_str();
  orc->add_option("--output", orcOutput, "output CSV path")->required();
  addConfig(orc);

  // ----- calibrate -----
  auto* cal = app.add_subcommand("calibrate", "assemble a transformation");
  EstimatorOptions calOpts;
  calOpts.attach(cal);
  double calEps = 1.0, calDelta = 0.0, calAlpha0 = 0.0, calGridRes = 0.0;
  std::size_t calN = 0;
  std::string calMode = "pure", calOutput;
  cal->add_option("--epsilon", calEps, "privacy budget epsilon")->required();
  cal->add_option("--delta", calDelta, "privacy budget delta")
      ->capture_default_str();
  cal->add_option("--alpha0", calAlpha0, "smoothing target alpha0")->required();
  cal->add_option("--n", calN, "dataset size")->required();
  cal->add_option("--mode", calMode, "pure | approx")->capture_default_str();
  cal->add_option("--mech-grid-res", calGridRes,
                  "mechanism grid step (default rho/2)");
  cal->add_option("--output", calOutput, "output JSON path (default stdout)");
  addConfig(cal);

  // ----- run -----
  auto* run = app.add_subcommand("run", "draw from a private mechanism");
  EstimatorOptions runOpts;
  runOpts.attach(run);
  double runEps = 1.0, runDelta = 0.0, runRho = 0.0, runGridRes = 0.0;
  int runKTrunc = 0;
  bool runPtr = false, runHeader = false;
  std::uint64_t runSeed = 0;
  std::string runInput, runOutput;
  run->add_option("--epsilon", runEps, "privacy budget epsilon")->required();
  run->add_option("--delta", runDelta, "privacy budget delta")
      ->capture_default_str();
  run->add_option("--rho", runRho, "smoothing radius (smooth/truncated)");
  run->add_option("--mech-grid-res", runGridRes,
                  "mechanism grid step (default rho/2)");
  run->add_option("--k-trunc", runKTrunc, "truncation threshold (0 = none)");
  run->add_flag("--ptr", runPtr,
                "full propose-test-release pipeline (uses --tau/--alpha/--beta)");
  run->add_option("--seed", runSeed, "master seed")->envname("DPKIT_SEED");
  run->add_option("--input", runInput, "dataset CSV")->required();
  run->add_flag("--header", runHeader, "skip one header line");
  run->add_option("--output", runOutput, "output JSON path (default stdout)");
  addConfig(run);

  // ----- audit-dp -----
  auto* adp = app.add_subcommand("audit-dp", "empirical DP audit");
  std::string adpScenario = "randomized-response", adpOutput;
  double adpEps = 1.0, adpRho = 0.5, adpGridRes = 0.25, adpRadius = 2.0;
  std::size_t adpSamples = 100000, adpPairs = 1, adpN = 7;
  std::uint64_t adpSeed = 0;
  adp->add_option("--scenario", adpScenario, "randomized-response | median-mech")
      ->capture_default_str();
  adp->add_option("--epsilon", adpEps, "epsilon under audit")
      ->capture_default_str();
  adp->add_option("--samples", adpSamples, "draws per side")
      ->capture_default_str();
  adp->add_option("--pairs", adpPairs, "neighbor pairs")->capture_default_str();
  adp->add_option("--n", adpN, "dataset size (median-mech)")
      ->capture_default_str();
  adp->add_option("--rho", adpRho, "smoothing radius (median-mech)")
      ->capture_default_str();
  adp->add_option("--grid-res", adpGridRes, "grid step (median-mech)")
      ->capture_default_str();
  adp->add_option("--radius", adpRadius, "output radius (median-mech)")
      ->capture_default_str();
  adp->add_option("--seed", adpSeed, "master seed")->envname("DPKIT_SEED");
  adp->add_option("--output", adpOutput, "output JSON path (default stdout)");
  addConfig(adp);

  // ----- audit-robust -----
  auto* arb = app.add_subcommand("audit-robust", "empirical robustness audit");
  EstimatorOptions arbOpts;
  arbOpts.attach(arb);
  std::size_t arbN = 101, arbTrials = 200;
  double arbMu = 0.0, arbSigma = 1.0;
  std::string arbAdversaries = "const-high,const-low", arbOutput;
  std::uint64_t arbSeed = 0;
  arb->add_option("--n", arbN, "records per trial")->capture_default_str();
  arb->add_option("--mu", arbMu, "true location")->capture_default_str();
  arb->add_option("--sigma", arbSigma, "data standard deviation")
      ->capture_default_str();
  arb->add_option("--trials", arbTrials, "Monte-Carlo trials")
      ->capture_default_str();
  arb->add_option("--adversaries", arbAdversaries,
                  "comma list: const-high,const-low,shift,greedy")
      ->capture_default_str();
  arb->add_option("--seed", arbSeed, "master seed")->envname("DPKIT_SEED");
  arb->add_option("--output", arbOutput, "output JSON path (default stdout)");
  addConfig(arb);

  // ----- bench -----
  auto* ben = app.add_subcommand("bench", "accuracy benchmark over (n, eps)");
  std::vector<std::size_t> benNs = {200, 800};
  std::vector<double> benEps = {0.5, 1.0};
  std::size_t benTrials = 200;
  double benMu = 0.5, benSigma = 1.0, benRadius = 10.0, benBeta = 0.05;
  std::string benCsv, benReport;
  std::uint64_t benSeed = 0;
  ben->add_option("--grid-n", benNs, "dataset sizes")->delimiter(',');
  ben->add_option("--grid-eps", benEps, "epsilon values")->delimiter(',');
  ben->add_option("--trials", benTrials, "trials per cell")
      ->capture_default_str();
  ben->add_option("--mu", benMu, "true location")->capture_default_str();
  ben->add_option("--sigma", benSigma, "data standard deviation")
      ->capture_default_str();
  ben->add_option("--radius", benRadius, "output radius")->capture_default_str();
  ben->add_option("--beta", benBeta, "quantile level 1-beta")
      ->capture_default_str();
  ben->add_option("--seed", benSeed, "master seed")->envname("DPKIT_SEED");
  ben->add_option("--output", benCsv, "per-trial CSV path")->required();
  ben->add_option("--report", benReport, "report JSON path (default stdout)");
  addConfig(ben);

  // ----- equivalence -----
  auto* eqv = app.add_subcommand("equivalence",
                                 "private-vs-robust error ratio experiment");
  std::size_t eqvN = 2000, eqvTrials = 200;
  double eqvEps = 1.0;
  std::uint64_t eqvSeed = 0;
  std::string eqvOutput;
  eqv->add_option("--n", eqvN, "dataset size")->capture_default_str();
  eqv->add_option("--epsilon", eqvEps, "privacy budget")->capture_default_str();
  eqv->add_option("--trials", eqvTrials, "Monte-Carlo trials")
      ->capture_default_str();
  eqv->add_option("--seed", eqvSeed, "master seed")->envname("DPKIT_SEED");
  eqv->add_option("--output", eqvOutput, "output JSON path (default stdout)");
  addConfig(eqv);

  try {
    std::vector<std::string> args = expandConfig(argc, argv);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    reversed.pop_back();  // drop the program name
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*gen) {
      if (genMu.empty()) genMu.assign(static_cast<std::size_t>(genDim), 0.0);
      if (static_cast<int>(genMu.size()) != genDim)
        throw dpkit::ParameterError("--mu length must match --dim");
      const dpkit::Dataset data =
          dpkit::genGaussianSpherical(genN, genMu, genSigma, genSeed);
      dpkit::writeCsv(data, genOut);
      return kExitOk;
    }

    if (*est) {
      const dpkit::Dataset data = dpkit::readCsv(estInput, estHeader);
      const Vec value = dpkit::estimate(estOpts.spec(), data);
      json j;
      j["estimator"] = estOpts.kind;
      j["value"] = value;
      writeOut(j.dump(2), estOutput);
      return kExitOk;
    }

    if (*orc) {
      const dpkit::Dataset data = dpkit::readCsv(orcInput, orcHeader);
      const dpkit::RobustEstimatorSpec spec = orcOpts.spec();
      const dpkit::LenOracle oracle = dpkit::autoOracle(spec, data);
      dpkit::LatticeGrid grid =
          oracle.kind() == dpkit::LenOracle::Kind::SparseMeanAnalytic
              ? dpkit::sparseNeighborhoodLattice(spec.dim, orcOpts.gridRes,
                                                 spec.radius, spec.sparsity,
                                                 orcRho)
              : dpkit::ballLattice(spec.dim, orcOpts.gridRes,
                                   spec.radius +
                                       std::max(orcRho, orcOpts.gridRes));
      dpkit::ScoreField field =
          dpkit::buildScoreField(oracle, data, grid, orcRho);
      if (orcVariant == "truncated") {
        if (orcKTrunc < 1)
          throw dpkit::ConfigError("--variant truncated needs --k-trunc >= 1");
        field = dpkit::withTruncation(std::move(field), orcKTrunc);
      } else if (orcVariant == "sparse") {
        field = dpkit::withSparsityGate(std::move(field), spec.sparsity);
      } else if (orcVariant != "smooth") {
        throw dpkit::ParameterError("unknown --variant: " + orcVariant);
      }
      dpkit::writeScoreFieldCsv(field, orcOutput);
      return kExitOk;
    }

    if (*cal) {
      const dpkit::RobustEstimatorSpec spec = calOpts.spec();
      const auto mode = calMode == "approx" ? dpkit::TransformMode::Approx
                                            : dpkit::TransformMode::Pure;
      const dpkit::CalibrationResult res =
          dpkit::robustToPrivate(spec, dpkit::PrivacyBudget{calEps, calDelta},
                                 calAlpha0, mode, calN, calGridRes);
      json j;
      j["valid"] = res.valid;
      j["reason"] = res.reason;
      j["tau_star"] = res.tauStar;
      j["claimed_error"] = res.claimedError;
      j["variant"] = res.variant == dpkit::ScoreVariant::Smooth      ? "smooth"
                     : res.variant == dpkit::ScoreVariant::Truncated ? "truncated"
                                                                     : "sparse";
      if (res.valid) {
        j["rho"] = res.config.rho;
        j["grid_res"] = res.config.gridStep;
        j["K"] = res.K;
        if (mode == dpkit::TransformMode::Approx) {
          j["B"] = res.config.modulusBound;
          j["threshold"] =
              2.0 * std::log(1.0 / std::min(calDelta, res.config.beta)) / calEps;
        }
      }
      writeOut(j.dump(2), calOutput);
      return kExitOk;
    }

    if (*run) {
      const dpkit::Dataset data = dpkit::readCsv(runInput, runHeader);
      dpkit::RobustEstimatorSpec spec = runOpts.spec();
      dpkit::MechanismConfig config;
      config.budget = dpkit::PrivacyBudget{runEps, runDelta};
      config.range = spec.range();
      config.beta = runOpts.beta;
      dpkit::MechanismOutput out;
      if (runPtr) {
        config.modulusBound = 2.0 * spec.profile.alpha;
        config.rho = 2.0 * config.modulusBound;
        config.gridStep = runGridRes > 0 ? runGridRes : config.rho / 2.0;
        config.truncationK =
            runKTrunc >= 1
                ? runKTrunc
                : static_cast<int>(std::floor(
                      static_cast<double>(data.size()) * spec.profile.tau / 2.0)) -
                      1;
        out = dpkit::ptrPipeline(data, spec, config, runSeed);
      } else {
        if (!(runRho > 0.0))
          throw dpkit::ConfigError("--rho must be positive for this mechanism");
        config.rho = runRho;
        config.gridStep = runGridRes > 0 ? runGridRes : runRho / 2.0;
        const dpkit::LenOracle oracle = dpkit::autoOracle(spec, data);
        if (runKTrunc >= 1) {
          config.truncationK = runKTrunc;
          out = dpkit::truncatedInvMech(data, config, oracle, runSeed);
        } else if (spec.kind == dpkit::EstimatorKind::TopKSparseMean) {
          const dpkit::ScoreField field = dpkit::buildMechanismField(
              data, config, oracle, dpkit::ScoreVariant::Sparse);
          out = dpkit::expMechFinite(field, runEps, runSeed);
          out.seed = runSeed;
        } else {
          out = dpkit::smoothInvMech(data, config, oracle, runSeed);
        }
      }
      writeOut(mechanismOutputJson(out).dump(2), runOutput);
      return kExitOk;
    }

    if (*adp) {
      dpkit::ExperimentReport rep;
      if (adpScenario == "randomized-response") {
        rep = dpkit::auditDp(
            dpkit::randomizedResponseMechanism(adpEps),
            [](std::uint64_t) { return dpkit::randomizedResponsePair(); },
            adpEps, adpSamples, adpPairs, adpSeed);
      } else if (adpScenario == "median-mech") {
        dpkit::MechanismConfig config;
        config.budget.epsilon = adpEps;
        config.rho = adpRho;
        config.gridStep = adpGridRes;
        config.range = dpkit::OutputRange{adpRadius, 1};
        const std::size_t n = adpN;
        const double radius = adpRadius;
        const dpkit::NeighborGenerator gen = [n, radius](std::uint64_t s) {
          dpkit::SplitMix64 rng(s);
          std::vector<double> values;
          for (double v = -radius; v <= radius; v += radius / 4.0)
            values.push_back(v);
          std::vector<double> data(n);
          for (double& x : data) x = values[rng.nextU64() % values.size()];
          dpkit::Dataset a = dpkit::Dataset::fromValues(data);
          dpkit::Dataset b = a;
          b.at(rng.nextU64() % n, 0) = values[rng.nextU64() % values.size()];
          return std::make_pair(a, b);
        };
        rep = dpkit::auditDp(dpkit::medianMechanismForAudit(config), gen,
                             adpEps, adpSamples, adpPairs, adpSeed);
      } else {
        throw dpkit::ParameterError("unknown --scenario: " + adpScenario);
      }
      return reportExit(rep, adpOutput);
    }

    if (*arb) {
      const dpkit::RobustEstimatorSpec spec = arbOpts.spec();
      const std::size_t n = arbN;
      const double mu = arbMu, sigma = arbSigma;
      const int dim = spec.dim;
      const dpkit::DataGenerator gen = [n, mu, sigma, dim](std::uint64_t s) {
        return dpkit::genGaussianSpherical(
            n, Vec(static_cast<std::size_t>(dim), mu), sigma, s);
      };
      const dpkit::ExperimentReport rep = dpkit::auditRobustness(
          [&spec](const dpkit::Dataset& d, std::uint64_t) {
            return dpkit::estimate(spec, d);
          },
          gen, Vec(static_cast<std::size_t>(dim), mu), dpkit::Loss::euclidean(),
          spec.profile, adversarySuite(arbAdversaries, spec), arbTrials, arbSeed);
      return reportExit(rep, arbOutput);
    }

    if (*ben) {
      dpkit::BenchScenario sc;
      sc.mu = benMu;
      sc.sigma = benSigma;
      sc.radius = benRadius;
      sc.beta = benBeta;
      const dpkit::BenchResult res =
          dpkit::benchAccuracy(sc, benNs, benEps, benTrials, benSeed);
      dpkit::writeBenchCsv(res.rows, benCsv);
      return reportExit(res.report, benReport);
    }

    if (*eqv) {
      const dpkit::ExperimentReport rep =
          dpkit::equivalenceExperiment(eqvN, eqvEps, eqvTrials, eqvSeed);
      return reportExit(rep, eqvOutput);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
