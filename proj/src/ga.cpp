#include "driveshaft/ga.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace driveshaft {

namespace {

constexpr double kAngles2[4] = {-45.0, 0.0, 45.0, 90.0};
constexpr double kAngles3[8] = {-67.5, -45.0, -22.5, 0.0,
                                22.5,  45.0,  67.5,  90.0};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent generator per algorithm phase: tag 0 seeds the initial
/// population, tag g+1 the generation-g variation operators. Parallel fitness
/// evaluation never touches these streams.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t tag) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(tag)));
}

int read_gene(const Chromosome& bits, std::size_t& pos, int nbits) {
  int v = 0;
  for (int k = 0; k < nbits; ++k) {
    v = (v << 1) | bits[pos + static_cast<std::size_t>(k)];
  }
  pos += static_cast<std::size_t>(nbits);
  return v;
}

double linear_gene(int idx, int nbits, const GeneBounds& b) {
  if (nbits == 0) return b.lo;
  return b.lo + idx * (b.hi - b.lo) / ((1 << nbits) - 1);
}

bool lex_less(const Chromosome& a, const Chromosome& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Fitness-proportionate draw over the windowed weights via the cumulative
/// distribution; a zero-sum window degenerates to a uniform draw.
class SelectionWheel {
 public:
  explicit SelectionWheel(const std::vector<double>& scaled) {
    cumulative_.resize(scaled.size());
    double run = 0.0;
    for (std::size_t i = 0; i < scaled.size(); ++i) {
      run += scaled[i];
      cumulative_[i] = run;
    }
    total_ = run;
  }

  std::size_t draw(std::mt19937_64& rng) const {
    if (total_ <= 0.0) {
      std::uniform_int_distribution<std::size_t> d(0, cumulative_.size() - 1);
      return d(rng);
    }
    std::uniform_real_distribution<double> d(0.0, total_);
    const double u = d(rng);
    const auto it =
        std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const std::size_t idx =
        static_cast<std::size_t>(it - cumulative_.begin());
    return std::min(idx, cumulative_.size() - 1);
  }

 private:
  std::vector<double> cumulative_;
  double total_ = 0.0;
};

}  // namespace

std::string chromosome_hex(const Chromosome& bits) {
  static const char* digits = "0123456789abcdef";
  const std::size_t n = bits.size();
  const std::size_t width = (n + 3) / 4;
  std::string out(width, '0');
  // Big-endian nibbles, zero-padded at the most significant end.
  std::size_t bit = n;
  for (std::size_t d = width; d-- > 0 && bit > 0;) {
    int nib = 0;
    for (int k = 0; k < 4 && bit > 0; ++k) {
      --bit;
      nib |= bits[bit] << k;
    }
    out[d] = digits[nib];
  }
  return out;
}

DecodedDesign decode(const Chromosome& bits, const EncodingSpec& spec) {
  if (static_cast<int>(bits.size()) != spec.length()) {
    throw std::invalid_argument("chromosome length does not match encoding");
  }
  const int mats_needed = spec.bit_mat == 0 ? 1 : (1 << spec.bit_mat);
  if (static_cast<int>(spec.materials.size()) < mats_needed) {
    throw std::invalid_argument("encoding needs more materials than provided");
  }
  DecodedDesign out;
  std::size_t pos = 0;
  for (int g = 0; g < spec.group_count; ++g) {
    const int ai = read_gene(bits, pos, spec.bit_alpha);
    const double angle =
        (spec.bit_alpha == 3) ? kAngles3[ai] : kAngles2[ai];
    const int count = read_gene(bits, pos, spec.bit_n) + 1;
    const int mi = spec.bit_mat ? read_gene(bits, pos, spec.bit_mat) : 0;
    out.groups.push_back(
        {angle, spec.materials[static_cast<std::size_t>(mi)], count});
  }
  out.k_e = linear_gene(read_gene(bits, pos, spec.bit_ke), spec.bit_ke,
                        spec.ke_bounds);
  out.mean_radius = linear_gene(read_gene(bits, pos, spec.bit_rm), spec.bit_rm,
                                spec.rm_bounds);
  out.omega_rpm = linear_gene(read_gene(bits, pos, spec.bit_omega),
                              spec.bit_omega, spec.omega_bounds);
  return out;
}

std::vector<double> window_scale(const std::vector<double>& fitnesses) {
  if (fitnesses.empty()) {
    throw std::invalid_argument("window_scale needs a nonempty population");
  }
  const double lo = *std::min_element(fitnesses.begin(), fitnesses.end());
  std::vector<double> out(fitnesses.size());
  for (std::size_t i = 0; i < fitnesses.size(); ++i) {
    out[i] = fitnesses[i] - lo;
  }
  return out;
}

EvolveResult evolve(const GaParams& params, int chromosome_length,
                    const Evaluator& evaluator, const StopCondition& stop) {
  if (params.population_size < 1 || chromosome_length < 2) {
    throw std::invalid_argument("population and chromosome must be nonempty");
  }
  if (params.elites < 0 || params.elites >= params.population_size) {
    throw std::invalid_argument("elites must be fewer than the population");
  }
  const std::size_t pop = static_cast<std::size_t>(params.population_size);
  const std::size_t len = static_cast<std::size_t>(chromosome_length);
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<Chromosome> population(pop, Chromosome(len, 0));
  {
    auto rng = substream(params.rng_seed, 0);
    std::uniform_int_distribution<int> bit(0, 1);
    for (auto& ind : population) {
      for (auto& b : ind) b = static_cast<std::uint8_t>(bit(rng));
    }
  }

  std::vector<EvaluatedDesign> evals(pop);
  auto evaluate_all = [&]() {
    const int workers =
        std::max(1, std::min(params.threads, params.population_size));
    if (workers == 1) {
      for (std::size_t i = 0; i < pop; ++i) evals[i] = evaluator(population[i]);
      return;
    }
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&, w]() {
        for (std::size_t i = static_cast<std::size_t>(w); i < pop;
             i += static_cast<std::size_t>(workers)) {
          evals[i] = evaluator(population[i]);
        }
      });
    }
    for (auto& t : threads) t.join();
  };

  EvolveResult result;
  result.best_feasible_mass = std::numeric_limits<double>::infinity();
  double best_fitness = -std::numeric_limits<double>::infinity();

  for (int gen = 0; gen < params.max_generations; ++gen) {
    evaluate_all();

    std::vector<std::size_t> order(pop);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (evals[a].fitness != evals[b].fitness) {
        return evals[a].fitness > evals[b].fitness;
      }
      return lex_less(population[a], population[b]);
    });

    const std::size_t top = order.front();
    if (evals[top].fitness > best_fitness ||
        (evals[top].fitness == best_fitness &&
         lex_less(population[top], result.best))) {
      best_fitness = evals[top].fitness;
      result.best = population[top];
      result.best_eval = evals[top];
    }
    for (std::size_t i = 0; i < pop; ++i) {
      if (evals[i].feasible &&
          evals[i].shaft_mass < result.best_feasible_mass) {
        result.best_feasible_mass = evals[i].shaft_mass;
        result.best_feasible = population[i];
        result.best_feasible_generation = gen;
        result.has_feasible = true;
      }
    }

    GenerationRecord record;
    record.generation = gen;
    record.best_fitness = evals[top].fitness;
    record.best_mass = evals[top].shaft_mass;
    record.best_feasible = evals[top].feasible;
    record.best = population[top];
    record.best_feasible_mass_so_far = result.best_feasible_mass;
    result.history.push_back(record);

    if (stop && stop(record)) break;
    if (params.time_budget_s > 0.0) {
      const std::chrono::duration<double> elapsed =
          std::chrono::steady_clock::now() - t0;
      if (elapsed.count() > params.time_budget_s) break;
    }
    if (gen == params.max_generations - 1) break;

    auto rng = substream(params.rng_seed, static_cast<std::uint64_t>(gen) + 1);
    std::vector<double> fitnesses(pop);
    for (std::size_t i = 0; i < pop; ++i) fitnesses[i] = evals[i].fitness;
    const SelectionWheel wheel(window_scale(fitnesses));

    std::vector<Chromosome> next;
    next.reserve(pop);
    for (int e = 0; e < params.elites; ++e) {
      next.push_back(population[order[static_cast<std::size_t>(e)]]);
    }
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> cut_point(1, len - 1);
    while (next.size() < pop) {
      Chromosome a = population[wheel.draw(rng)];
      Chromosome b = population[wheel.draw(rng)];
      if (coin(rng) < params.crossover_prob) {
        for (int k = 0; k < std::max(1, params.crossover_points); ++k) {
          const std::size_t cut = cut_point(rng);
          for (std::size_t i = cut; i < len; ++i) std::swap(a[i], b[i]);
        }
      }
      next.push_back(std::move(a));
      if (next.size() < pop) next.push_back(std::move(b));
    }
    population = std::move(next);

    if (params.mutation_mode == MutationMode::PerIndividual) {
      std::uniform_int_distribution<std::size_t> pick(0, len - 1);
      for (std::size_t i = static_cast<std::size_t>(params.elites); i < pop;
           ++i) {
        if (coin(rng) < params.mutation_prob) {
          population[i][pick(rng)] ^= 1;
        }
      }
    } else {
      for (std::size_t i = static_cast<std::size_t>(params.elites); i < pop;
           ++i) {
        for (auto& b : population[i]) {
          if (coin(rng) < params.mutation_prob) b ^= 1;
        }
      }
    }
  }
  return result;
}

struct ScenarioEvaluator::Cache {
  std::mutex mutex;
  std::unordered_map<std::string, EvaluatedDesign> fits;
};

ScenarioEvaluator::ScenarioEvaluator(EncodingSpec encoding,
                                     DrivelineConfig driveline,
                                     ReserveFactors factors,
                                     MaterialCatalog catalog)
    : encoding_(std::move(encoding)),
      driveline_(std::move(driveline)),
      factors_(factors),
      catalog_(std::move(catalog)),
      cache_(std::make_shared<Cache>()) {}

ShaftDesign ScenarioEvaluator::make_design(const Chromosome& bits) const {
  const DecodedDesign d = decode(bits, encoding_);
  ShaftDesign design;
  design.sequence = expand(d.groups, catalog_);
  design.mean_radius = d.mean_radius;
  design.support_stiffness = d.k_e;
  design.omega_rpm = d.omega_rpm;
  return design;
}

EvaluatedDesign ScenarioEvaluator::operator()(const Chromosome& bits) const {
  std::string key(bits.begin(), bits.end());
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    const auto it = cache_->fits.find(key);
    if (it != cache_->fits.end()) return it->second;
  }
  const ShaftAnalysis analysis = analyze_design(make_design(bits), driveline_);
  const ConstraintReport report =
      evaluate_constraints(analysis, driveline_, factors_);
  EvaluatedDesign out;
  out.fitness = fitness(analysis.shaft_mass_kg, report);
  out.shaft_mass = analysis.shaft_mass_kg;
  out.feasible = report.feasible;
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->fits.emplace(std::move(key), out);
  return out;
}

}  // namespace driveshaft
