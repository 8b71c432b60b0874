#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "graphirl/encoder.hpp"

namespace graphirl {

struct TccConfig {
  int frames_per_seq = 90;
  int batch_pairs = 1;  // pairs per iteration, derived from the batch size of 2
  double lr = 1e-5;
  double weight_decay = 1e-5;
  int iterations = 12000;
  double temperature = 0.1;  // cycle-back softmax temperature
  uint64_t seed = 0;
  int embed_dim = 128;
  int hidden_dim = 128;
  bool temper_alpha = false;     // also temper the soft-NN softmax
  bool zero_interaction = false;  // freeze phi_in at zero (ablation)

  double alpha_temperature() const { return temper_alpha ? temperature : 1.0; }
  void validate() const;
};

TccConfig tcc_config_from_json(const nlohmann::json& doc);
nlohmann::json tcc_config_to_json(const TccConfig& cfg);

// Soft nearest neighbour of a query among the frames of another sequence:
// alpha is a softmax over negative squared distances, nu the alpha-weighted
// average embedding.
struct SoftNnResult {
  Matrix nu;
  Matrix alpha;
};
SoftNnResult soft_nn(const Matrix& query, const std::vector<Matrix>& s_j,
                     double alpha_temperature = 1.0);

// Cycle-back distribution of nu over the source sequence, its expected
// frame index mu, and the squared index error against the source frame n.
struct CycleBackResult {
  double loss = 0.0;
  Matrix beta;
  double mu = 0.0;
};
CycleBackResult cycle_back(const Matrix& nu, const std::vector<Matrix>& s_i, int n,
                           double temperature);

// Full alignment record for one source frame.
struct AlignmentTerms {
  Matrix alpha;
  Matrix nu;
  Matrix beta;
  double mu = 0.0;
};

// One direction: mean over the frames of s_i of the cycle-back loss through
// s_j. The training objective averages both directions.
double tcc_pair_loss(const std::vector<Matrix>& s_i, const std::vector<Matrix>& s_j,
                     double temperature, double alpha_temperature = 1.0);
double tcc_bidirectional_loss(const std::vector<Matrix>& s_i, const std::vector<Matrix>& s_j,
                              double temperature, double alpha_temperature = 1.0);

// Tape builders mirroring the plain evaluation exactly.
NodeId tcc_pair_loss(Tape& tape, const std::vector<NodeId>& s_i,
                     const std::vector<NodeId>& s_j, double temperature,
                     double alpha_temperature = 1.0);
NodeId tcc_bidirectional_loss(Tape& tape, const std::vector<NodeId>& s_i,
                              const std::vector<NodeId>& s_j, double temperature,
                              double alpha_temperature = 1.0);

struct IterationMetric {
  int iteration = 0;
  double loss = 0.0;
  double wall_ms = 0.0;
};

struct TrainResult {
  EncoderParams encoder;
  std::vector<IterationMetric> metrics;
};

// Alignment training: each iteration samples two distinct demonstrations,
// subsamples both to frames_per_seq, encodes them, and takes one Adam step
// on the bidirectional cycle-back loss. Deterministic given cfg.seed.
TrainResult train_reward_model(const TrajectoryDataset& ds, const TccConfig& cfg);

void write_metrics_csv(const std::vector<IterationMetric>& metrics, const TccConfig& cfg,
                       const std::string& path);

}  // namespace graphirl
