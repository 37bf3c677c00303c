#include "commands.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>

#include <CLI11.hpp>

#include "isokit/admissible.hpp"
#include "isokit/bounds.hpp"
#include "isokit/certifier.hpp"
#include "isokit/error.hpp"
#include "isokit/io.hpp"
#include "isokit/john.hpp"
#include "isokit/kernels.hpp"
#include "isokit/lattice.hpp"
#include "isokit/parallel.hpp"

namespace isokit::cli {
namespace {

struct Config {
  double tol = 1e-9;
  std::uint64_t seed = 42;
  std::size_t restarts = 64;
  double grid_step = 0.05;
  std::optional<std::string> mode;

  void validate() const {
    if (!(tol > 0)) throw ConfigError("--tol must be positive");
    if (!(grid_step > 0 && grid_step <= 0.25)) throw ConfigError("--grid-step must lie in (0, 0.25]");
    if (restarts == 0) throw ConfigError("--restarts must be at least 1");
  }

  NumberMode number_mode(NumberMode fallback) const {
    if (!mode) return fallback;
    if (*mode == "rational") return NumberMode::rational;
    if (*mode == "float") return NumberMode::floating;
    throw ConfigError("--mode must be rational or float");
  }
};

const double kIdqBound = std::sqrt(2.0) / 12.0;

CommandResult emit(const Json& doc, int code) { return {code, doc.dump(2) + "\n"}; }

CommandResult cmd_normalize(const Config& cfg, const std::string& path) {
  const Polytope P = read_polytope_file(path, cfg.number_mode(NumberMode::floating));
  const NormalizationResult r = normalize(P, cfg.tol);
  Json out = to_json(r);
  const bool ok = r.idq >= kIdqBound - 10 * cfg.tol;
  out["bound"] = kIdqBound;
  out["ok"] = ok;
  return emit(out, ok ? kOk : kBoundViolation);
}

CommandResult cmd_width(const Config& cfg, const std::string& path) {
  const Polytope P = read_polytope_file(path, cfg.number_mode(NumberMode::rational));
  const WidthVolumeReport r = verify_width_volume_corollary(P);
  return emit(to_json(r), r.satisfied ? kOk : kBoundViolation);
}

CommandResult cmd_verify_lemmas(const Config& cfg) {
  const LemmaGridReport report = grid_verify_all(cfg.grid_step);
  Json out = to_json(report);

  const LambdaVector half = LambdaVector::uniform();
  const LambdaVector triple({0.4, 0.4, 0.4, 0.6, 0.6, 0.6});
  const LambdaVector zero({0.0, 0.6, 0.6, 0.6, 0.6, 0.6});
  const auto tight = [](const BoundCheck& c, const LambdaVector& L) {
    return Json{{"value", c.value}, {"bound", c.bound},
                {"lambda", std::vector<double>(L.values().begin(), L.values().end())}};
  };
  out["tight"] = {{"pair_drop", tight(pair_drop_sum(half, 2, 3, 1, 4), half)},
                  {"triple_drop", tight(triple_drop_sum(triple, 1, 2, 3), triple)},
                  {"zero_lambda_drop", tight(zero_lambda_drop(zero, 2, 3), zero)},
                  {"weighted_sum", tight(weighted_sum(half), half)}};
  return emit(out, report.violation_count == 0 ? kOk : kBoundViolation);
}

CommandResult cmd_certify(const Config& cfg, std::size_t samples, std::size_t zero_samples) {
  const CertifySummary main = certify_random(samples, cfg.seed, cfg.restarts, cfg.tol);
  Json out = to_json(main);
  bool ok = main.violations.empty() && std::abs(main.witness_value - 2.0) <= 1e-9;
  if (zero_samples > 0) {
    const CertifySummary zero = certify_random(zero_samples, cfg.seed, cfg.restarts, cfg.tol, true);
    out["zero_first"] = to_json(zero);
    ok = ok && zero.violations.empty();
  }
  return emit(out, ok ? kOk : kBoundViolation);
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

// Peculiar sets for random feasible magnitudes against a bank of weights.
Json peculiar_sweep(const Config& cfg, std::size_t pairs, std::size_t lambdas, bool& ok) {
  std::array<std::vector<double>, 6> bank;
  for (auto& col : bank) col.resize(lambdas);
  for (std::size_t k = 0; k < lambdas; ++k) {
    const auto l = sample_lambda(cfg.seed, k, false);
    for (int t = 0; t < 6; ++t) bank[t][k] = l[t];
  }
  kernels::LambdaColumns cols;
  for (int t = 0; t < 6; ++t) cols.lambda[t] = bank[t];

  struct Row {
    bool relations = true;
    double max_objective = 0.0;
    std::size_t over = 0;
  };
  std::vector<Row> rows(pairs);
  parallel_for(pairs, [&](std::size_t i) {
    auto rng = stream(cfg.seed, 1, i);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double p = 0.0;
    while (p == 0.0) p = 1.0 - unit(rng);  // (0, 1]
    const double q = 1.0 - p * unit(rng);  // [1 - p, 1]
    const AdmissibleSet A = peculiar_from(p, q, static_cast<unsigned>(i));
    std::vector<double> out(lambdas);
    kernels::objective_batch(A.squares(), cols, out);
    Row& row = rows[i];
    row.relations = check_relations(A, 1e-9) && A.max_abs() <= 1.0 + 1e-12;
    for (double v : out) {
      row.max_objective = std::max(row.max_objective, v);
      if (v > 2.0 + 1e-9) ++row.over;
    }
  });

  std::size_t relation_failures = 0, over = 0;
  double max_objective = 0.0;
  for (const auto& r : rows) {
    relation_failures += !r.relations;
    over += r.over;
    max_objective = std::max(max_objective, r.max_objective);
  }
  ok = ok && relation_failures == 0 && over == 0;
  return {{"pairs", pairs},
          {"lambdas", lambdas},
          {"relation_failures", relation_failures},
          {"max_objective", max_objective},
          {"objective_violations", over}};
}

// Uniform points of the box [1/2, 3/4]^2, which contains the region, kept
// while they fall inside it. Double-precision failures are re-decided in
// exact arithmetic before counting as violations.
Json omega_sweep(const Config& cfg, std::size_t points, bool& ok) {
  constexpr std::size_t kBatch = 1 << 16;
  const Rational limit(9, 16);
  std::vector<double> xs(kBatch), ys(kBatch), sq(kBatch);
  std::vector<std::uint8_t> flags(kBatch);
  std::size_t inside = 0, drawn = 0, image_violations = 0, square_violations = 0, exact_rechecks = 0;
  double max_square = 0.0;
  for (std::uint64_t batch = 0; inside < points; ++batch) {
    auto rng = stream(cfg.seed, 2, batch);
    std::uniform_real_distribution<double> coord(0.5, 0.75);
    for (std::size_t i = 0; i < kBatch; ++i) xs[i] = coord(rng), ys[i] = coord(rng);
    kernels::omega_batch(xs, ys, flags, sq);
    for (std::size_t i = 0; i < kBatch && inside < points; ++i) {
      ++drawn;
      if (!(flags[i] & kernels::kInOmega)) continue;
      ++inside;
      max_square = std::max(max_square, sq[i]);
      const bool image_bad = !(flags[i] & kernels::kImageInOmega);
      const bool square_bad = sq[i] > 9.0 / 16.0 + 1e-12;
      if (!image_bad && !square_bad) continue;
      ++exact_rechecks;
      const Rational x(xs[i]), y(ys[i]);
      if (!omega_contains(x, y)) continue;  // not in the region after all
      if (image_bad) {
        const auto [gx, gy] = g_map(x, y);
        if (!omega_contains(gx, gy)) ++image_violations;
      }
      if (square_bad && five_square_max(x, y) > limit) ++square_violations;
    }
  }
  ok = ok && image_violations == 0 && square_violations == 0;
  return {{"points", inside},
          {"drawn", drawn},
          {"image_violations", image_violations},
          {"max_five_square", max_square},
          {"square_bound", 9.0 / 16.0},
          {"square_violations", square_violations},
          {"exact_rechecks", exact_rechecks}};
}

CommandResult cmd_peculiar(const Config& cfg, std::size_t pairs, std::size_t lambdas, std::size_t omega_points) {
  bool ok = true;
  Json out = peculiar_sweep(cfg, pairs, lambdas, ok);
  out["omega"] = omega_sweep(cfg, omega_points, ok);
  return emit(out, ok ? kOk : kBoundViolation);
}

int exit_code_for(const Error& e) {
  // Failures that signal a numerical fault rather than bad input.
  for (const char* k : {"NoConvergence", "TooFewContacts", "NoDecomposition", "NoSignAssignment", "InvariantError"}) {
    if (e.kind() == k) return kBoundViolation;
  }
  return kInputError;
}

CommandResult error_result(const std::string& kind, const std::string& message, int code) {
  return emit({{"error", kind}, {"message", message}}, code);
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"Normalization, lemma and lattice checks for convex polytopes in R^3", "isokit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_flag("-h,--help");

  Config cfg;
  app.add_option("--tol", cfg.tol, "solver / contact tolerance")->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--restarts", cfg.restarts, "restarts per weight vector")->capture_default_str();
  app.add_option("--grid-step", cfg.grid_step, "weight grid step")->capture_default_str();
  app.add_option("--mode", cfg.mode, "rational or float");

  std::string path;
  auto* normalize_cmd = app.add_subcommand("normalize", "normalizing map and isodiametric quotient");
  normalize_cmd->add_option("polytope", path, "polytope JSON file")->required();
  auto* width_cmd = app.add_subcommand("width", "lattice width against volume");
  width_cmd->add_option("polytope", path, "polytope JSON file")->required();
  auto* lemmas_cmd = app.add_subcommand("verify-lemmas", "grid check of the weight-product bounds");

  std::size_t samples = 1000, zero_samples = 0;
  auto* certify_cmd = app.add_subcommand("certify", "random-weight certification of the ceiling 2");
  certify_cmd->add_option("--samples", samples, "weight vectors")->capture_default_str();
  certify_cmd->add_option("--zero-samples", zero_samples, "extra weight vectors with lambda_1 = 0")
      ->capture_default_str();

  std::size_t pairs = 10000, lambdas = 1000, omega_points = 1000000;
  auto* peculiar_cmd = app.add_subcommand("peculiar", "peculiar sets and the region sweep");
  peculiar_cmd->add_option("--samples", pairs, "magnitude pairs")->capture_default_str();
  peculiar_cmd->add_option("--lambdas", lambdas, "weight vectors per pair")->capture_default_str();
  peculiar_cmd->add_option("--omega-points", omega_points, "region sample size")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {kOk, app.help()};
  } catch (const CLI::ParseError& e) {
    return error_result("ConfigError", e.what(), kInputError);
  }

  try {
    cfg.validate();
    if (*normalize_cmd) return cmd_normalize(cfg, path);
    if (*width_cmd) return cmd_width(cfg, path);
    if (*lemmas_cmd) return cmd_verify_lemmas(cfg);
    if (*certify_cmd) return cmd_certify(cfg, samples, zero_samples);
    if (*peculiar_cmd) return cmd_peculiar(cfg, pairs, lambdas, omega_points);
  } catch (const Error& e) {
    return error_result(e.kind(), e.what(), exit_code_for(e));
  }
  return error_result("ConfigError", "no subcommand", kInputError);
}

}  // namespace isokit::cli
