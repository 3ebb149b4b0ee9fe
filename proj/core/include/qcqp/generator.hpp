#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcqp/graphs.hpp"
#include "qcqp/instance.hpp"
#include "qcqp/rng.hpp"

namespace qcqp::gen {

// Graph-structured families sit at the end so the random pool can exclude
// them for very small n (their constructions need n >= 4).
enum class Family {
  DiagOrderedOnes,
  DiagRandomOnes,
  DiagRandomRandnums,
  RandomSymmetric,
  Spd,
  EigOnes,
  EigRandom,
  RankOneConvex,
  RankOneConcave,
  Hollow,
  Bipartite,
  Tree,
  Planar,
  Chordal,
};

constexpr int kFamilyCount = 14;
constexpr int kNonGraphFamilyCount = 10;

std::string_view family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);
bool is_graph_family(Family f);

class InvalidFamilySpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FamilySpec {
  Family family = Family::RandomSymmetric;
  std::optional<int> n_prime;  // negative-eigenvalue count, drawn if absent
};

struct GenConfig {
  int n = 5;
  int m = 1;
  int N = 8;
  std::uint64_t master_seed = 0;
};

// One symmetric n x n matrix from the given family, consuming draws from rng
// in a fixed order.
Matrix gen_matrix(const FamilySpec& spec, int n, RngStream& rng);

// Graph constructions behind the four structured families, before edge
// weights are attached. All need n >= 4.
graphs::SupportGraph random_tree(int n, RngStream& rng);
graphs::SupportGraph random_bipartite(int n, RngStream& rng);
graphs::SupportGraph random_planar(int n, RngStream& rng);
graphs::SupportGraph random_chordal(int n, RngStream& rng);

// Instance idx (0-based) of the batch; independent of all other indices, so
// gen_instance_batch(cfg)[idx] == gen_single_instance(cfg, idx) bit for bit.
QcqpInstance gen_single_instance(const GenConfig& cfg, int idx);

std::vector<QcqpInstance> gen_instance_batch(const GenConfig& cfg, int workers = 1);

}  // namespace qcqp::gen
