#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "driveshaft/driveline.hpp"

namespace driveshaft {

/// Bit string, one byte per bit (values 0/1), most significant bit first
/// within each gene.
using Chromosome = std::vector<std::uint8_t>;

std::string chromosome_hex(const Chromosome& bits);

struct GeneBounds {
  double lo = 0.0;
  double hi = 0.0;
};

/// Binary layout of a candidate: q gene groups of (angle, ply count,
/// material), then support stiffness, mean radius and nominal speed genes.
struct EncodingSpec {
  int group_count = 0;  // q
  int bit_alpha = 2;    // 2 -> {-45,0,45,90}, 3 -> 22.5-degree steps
  int bit_n = 1;        // ply count gene: value = index + 1
  int bit_mat = 0;      // 0 -> single material, 1 -> two materials
  int bit_ke = 0;       // 0 -> k_e fixed at its lower bound
  int bit_rm = 3;
  int bit_omega = 3;
  std::vector<std::string> materials;  // size 1 (bit_mat=0) or 2 (bit_mat=1)
  GeneBounds ke_bounds;
  GeneBounds rm_bounds;     // m
  GeneBounds omega_bounds;  // rev/min

  int length() const {
    return group_count * (bit_alpha + bit_n + bit_mat) + bit_ke + bit_rm +
           bit_omega;
  }
};

/// Decoded gene values prior to laminate expansion.
struct DecodedDesign {
  std::vector<PlyGroup> groups;
  double k_e = 0.0;
  double mean_radius = 0.0;
  double omega_rpm = 0.0;
};

/// Reads genes in order; integer genes index the angle/count/material tables,
/// bounded reals map linearly over [lo, hi] with 2^bits - 1 steps.
/// Throws std::invalid_argument when the bit count does not match the spec.
DecodedDesign decode(const Chromosome& bits, const EncodingSpec& spec);

/// Windowing: subtracts the population minimum from every fitness.
std::vector<double> window_scale(const std::vector<double>& fitnesses);

enum class MutationMode { PerIndividual, PerBit };

struct GaParams {
  int population_size = 300;
  double crossover_prob = 0.9;
  double mutation_prob = 0.1;
  int elites = 2;
  int max_generations = 100;
  std::uint64_t rng_seed = 0;
  MutationMode mutation_mode = MutationMode::PerIndividual;
  int crossover_points = 1;
  int threads = 1;              // fitness evaluation parallelism
  double time_budget_s = 0.0;   // 0 disables the wall-clock stop
};

/// What the evaluator reports for one chromosome.
struct EvaluatedDesign {
  double fitness = 0.0;
  double shaft_mass = 0.0;  // kg, one tube
  bool feasible = false;
};

using Evaluator = std::function<EvaluatedDesign(const Chromosome&)>;

struct GenerationRecord {
  int generation = 0;
  double best_fitness = 0.0;
  double best_mass = 0.0;
  bool best_feasible = false;
  Chromosome best;
  // Running minimum over feasible individuals seen so far; +inf when none.
  double best_feasible_mass_so_far = 0.0;
};

struct EvolveResult {
  Chromosome best;
  EvaluatedDesign best_eval;
  std::vector<GenerationRecord> history;
  // Lightest feasible individual encountered, if any.
  bool has_feasible = false;
  Chromosome best_feasible;
  double best_feasible_mass = 0.0;
  int best_feasible_generation = -1;
};

/// Early-stop hook checked after each generation record.
using StopCondition = std::function<bool(const GenerationRecord&)>;

/// Seeded generational loop: evaluate, keep elites, windowed
/// fitness-proportionate selection, crossover, mutation (elites exempt).
/// Randomness comes from per-generation substreams of the master seed, so
/// evaluation parallelism cannot perturb the draw order. Ties in ranking are
/// broken by lexicographic chromosome order for determinism.
EvolveResult evolve(const GaParams& params, int chromosome_length,
                    const Evaluator& evaluator,
                    const StopCondition& stop = {});

/// Scenario binding: decodes, analyzes and scores candidates, caching
/// evaluations by packed chromosome (thread-safe).
class ScenarioEvaluator {
 public:
  ScenarioEvaluator(EncodingSpec encoding, DrivelineConfig driveline,
                    ReserveFactors factors, MaterialCatalog catalog);

  EvaluatedDesign operator()(const Chromosome& bits) const;

  /// Decoded-to-design plumbing shared with reporting.
  ShaftDesign make_design(const Chromosome& bits) const;

  const EncodingSpec& encoding() const { return encoding_; }
  const DrivelineConfig& driveline() const { return driveline_; }
  const ReserveFactors& factors() const { return factors_; }

 private:
  EncodingSpec encoding_;
  DrivelineConfig driveline_;
  ReserveFactors factors_;
  MaterialCatalog catalog_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

}  // namespace driveshaft
