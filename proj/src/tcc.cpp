#include "graphirl/tcc.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <string>

#include "graphirl/adam.hpp"
#include "graphirl/errors.hpp"
#include "graphirl/rng.hpp"

namespace graphirl {

using nlohmann::json;

void TccConfig::validate() const {
  if (frames_per_seq < 2) throw ContractError("tcc config: frames_per_seq must be >= 2");
  if (temperature <= 0.0) throw ContractError("tcc config: temperature must be > 0");
  if (iterations < 0) throw ContractError("tcc config: iterations must be >= 0");
  if (batch_pairs < 1) throw ContractError("tcc config: batch_pairs must be >= 1");
  if (lr <= 0.0) throw ContractError("tcc config: lr must be > 0");
  if (weight_decay < 0.0) throw ContractError("tcc config: weight_decay must be >= 0");
  if (embed_dim < 1 || hidden_dim < 1) throw ContractError("tcc config: dims must be >= 1");
}

TccConfig tcc_config_from_json(const json& doc) {
  TccConfig cfg;
  try {
    if (doc.contains("frames_per_seq")) cfg.frames_per_seq = doc["frames_per_seq"].get<int>();
    if (doc.contains("batch_pairs")) cfg.batch_pairs = doc["batch_pairs"].get<int>();
    if (doc.contains("lr")) cfg.lr = doc["lr"].get<double>();
    if (doc.contains("weight_decay")) cfg.weight_decay = doc["weight_decay"].get<double>();
    if (doc.contains("iterations")) cfg.iterations = doc["iterations"].get<int>();
    if (doc.contains("temperature")) cfg.temperature = doc["temperature"].get<double>();
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<uint64_t>();
    if (doc.contains("embed_dim")) cfg.embed_dim = doc["embed_dim"].get<int>();
    if (doc.contains("hidden_dim")) cfg.hidden_dim = doc["hidden_dim"].get<int>();
    if (doc.contains("temper_alpha")) cfg.temper_alpha = doc["temper_alpha"].get<bool>();
    if (doc.contains("zero_interaction"))
      cfg.zero_interaction = doc["zero_interaction"].get<bool>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("tcc config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

json tcc_config_to_json(const TccConfig& cfg) {
  json doc;
  doc["frames_per_seq"] = cfg.frames_per_seq;
  doc["batch_pairs"] = cfg.batch_pairs;
  doc["lr"] = cfg.lr;
  doc["weight_decay"] = cfg.weight_decay;
  doc["iterations"] = cfg.iterations;
  doc["temperature"] = cfg.temperature;
  doc["seed"] = cfg.seed;
  doc["embed_dim"] = cfg.embed_dim;
  doc["hidden_dim"] = cfg.hidden_dim;
  doc["temper_alpha"] = cfg.temper_alpha;
  doc["zero_interaction"] = cfg.zero_interaction;
  return doc;
}

SoftNnResult soft_nn(const Matrix& query, const std::vector<Matrix>& s_j,
                     double alpha_temperature) {
  if (s_j.empty()) throw ContractError("soft_nn: empty sequence");
  const int len = static_cast<int>(s_j.size());
  Matrix logits = Matrix::vector(len);
  for (int k = 0; k < len; ++k) logits.data[k] = -squared_distance(query, s_j[k]);

  SoftNnResult out;
  softmax_forward(logits, alpha_temperature, out.alpha);
  out.nu = s_j[0];
  for (double& v : out.nu.data) v *= out.alpha.data[0];
  for (int k = 1; k < len; ++k) {
    for (size_t i = 0; i < out.nu.size(); ++i) {
      out.nu.data[i] += out.alpha.data[k] * s_j[k].data[i];
    }
  }
  return out;
}

CycleBackResult cycle_back(const Matrix& nu, const std::vector<Matrix>& s_i, int n,
                           double temperature) {
  if (s_i.empty()) throw ContractError("cycle_back: empty sequence");
  if (temperature <= 0.0) throw ContractError("cycle_back: temperature must be > 0");
  const int len = static_cast<int>(s_i.size());
  if (n < 0 || n >= len) throw ContractError("cycle_back: frame index out of range");

  Matrix logits = Matrix::vector(len);
  for (int k = 0; k < len; ++k) logits.data[k] = -squared_distance(nu, s_i[k]);

  CycleBackResult out;
  softmax_forward(logits, temperature, out.beta);
  double mu = 0.0;
  for (int k = 0; k < len; ++k) mu += out.beta.data[k] * static_cast<double>(k);
  out.mu = mu;
  const double d = mu - static_cast<double>(n);
  out.loss = d * d;
  return out;
}

double tcc_pair_loss(const std::vector<Matrix>& s_i, const std::vector<Matrix>& s_j,
                     double temperature, double alpha_temperature) {
  if (s_i.empty() || s_j.empty()) throw ContractError("tcc_pair_loss: empty sequence");
  double sum = 0.0;
  for (int n = 0; n < static_cast<int>(s_i.size()); ++n) {
    const SoftNnResult nn = soft_nn(s_i[n], s_j, alpha_temperature);
    sum += cycle_back(nn.nu, s_i, n, temperature).loss;
  }
  return sum * (1.0 / static_cast<double>(s_i.size()));
}

double tcc_bidirectional_loss(const std::vector<Matrix>& s_i, const std::vector<Matrix>& s_j,
                              double temperature, double alpha_temperature) {
  const double fwd = tcc_pair_loss(s_i, s_j, temperature, alpha_temperature);
  const double bwd = tcc_pair_loss(s_j, s_i, temperature, alpha_temperature);
  return (fwd + bwd) * (1.0 / 2.0);
}

NodeId tcc_pair_loss(Tape& tape, const std::vector<NodeId>& s_i,
                     const std::vector<NodeId>& s_j, double temperature,
                     double alpha_temperature) {
  if (s_i.empty() || s_j.empty()) throw ContractError("tcc_pair_loss: empty sequence");

  Matrix index_values = Matrix::vector(static_cast<int>(s_i.size()));
  for (int k = 0; k < index_values.rows; ++k) index_values.data[k] = static_cast<double>(k);
  const NodeId indices = tape.constant(index_values);

  std::vector<NodeId> frame_losses;
  frame_losses.reserve(s_i.size());
  for (int n = 0; n < static_cast<int>(s_i.size()); ++n) {
    std::vector<NodeId> neg_dists;
    neg_dists.reserve(s_j.size());
    for (NodeId frame : s_j) neg_dists.push_back(tape.sq_dist(s_i[n], frame));
    const NodeId alpha =
        tape.softmax(tape.scale(tape.stack(neg_dists), -1.0), alpha_temperature);
    const NodeId nu = tape.lincomb(alpha, s_j);

    std::vector<NodeId> cycle_dists;
    cycle_dists.reserve(s_i.size());
    for (NodeId frame : s_i) cycle_dists.push_back(tape.sq_dist(nu, frame));
    const NodeId beta = tape.softmax(tape.scale(tape.stack(cycle_dists), -1.0), temperature);
    const NodeId mu = tape.dot(beta, indices);
    frame_losses.push_back(tape.square(tape.add_const(mu, -static_cast<double>(n))));
  }
  return tape.mean_list(frame_losses);
}

NodeId tcc_bidirectional_loss(Tape& tape, const std::vector<NodeId>& s_i,
                              const std::vector<NodeId>& s_j, double temperature,
                              double alpha_temperature) {
  const NodeId fwd = tcc_pair_loss(tape, s_i, s_j, temperature, alpha_temperature);
  const NodeId bwd = tcc_pair_loss(tape, s_j, s_i, temperature, alpha_temperature);
  return tape.mean_list({fwd, bwd});
}

TrainResult train_reward_model(const TrajectoryDataset& ds, const TccConfig& cfg) {
  cfg.validate();
  if (ds.demo_count() < 2) {
    throw ContractError("train_reward_model: need at least 2 demonstrations, got " +
                        std::to_string(ds.demo_count()));
  }
  for (const Demonstration& demo : ds.demos) validate_demo(demo, ds.roster_size());

  Rng rng(cfg.seed);
  TrainResult result;
  result.encoder = EncoderParams::init(ds.roster_size(), cfg.hidden_dim, cfg.embed_dim, rng);
  if (cfg.zero_interaction) result.encoder.zero_interaction();

  std::vector<Matrix*> params = result.encoder.all_params();
  AdamState opt = AdamState::init(
      {params.begin(), params.end()}, cfg.lr, cfg.weight_decay);

  result.metrics.reserve(cfg.iterations);
  Tape tape;
  for (int iter = 0; iter < cfg.iterations; ++iter) {
    const auto t0 = std::chrono::steady_clock::now();

    tape.reset();
    const EncoderNodes enc = bind_encoder(tape, result.encoder);
    std::vector<NodeId> losses;
    losses.reserve(cfg.batch_pairs);
    for (int b = 0; b < cfg.batch_pairs; ++b) {
      const int n = ds.demo_count();
      const int i = static_cast<int>(rng.uniform_index(n));
      int j = static_cast<int>(rng.uniform_index(n - 1));
      if (j >= i) ++j;
      const Demonstration demo_i =
          subsample_frames(ds.demos[i], cfg.frames_per_seq, rng.next_u64());
      const Demonstration demo_j =
          subsample_frames(ds.demos[j], cfg.frames_per_seq, rng.next_u64());
      const std::vector<NodeId> seq_i = encode_sequence(tape, enc, demo_i);
      const std::vector<NodeId> seq_j = encode_sequence(tape, enc, demo_j);
      losses.push_back(
          tcc_bidirectional_loss(tape, seq_i, seq_j, cfg.temperature,
                                 cfg.alpha_temperature()));
    }
    const NodeId loss = losses.size() == 1 ? losses[0] : tape.mean_list(losses);

    const double loss_value = tape.value(loss).data[0];
    if (!std::isfinite(loss_value)) {
      throw NumericError("train_reward_model: non-finite loss at iteration " +
                         std::to_string(iter));
    }

    tape.backward(loss);
    std::vector<NodeId> pnodes = param_nodes(enc);
    std::vector<Matrix> grads;
    grads.reserve(pnodes.size());
    for (NodeId id : pnodes) grads.push_back(tape.grad(id));
    if (cfg.zero_interaction) {
      for (size_t k = 4; k < 8; ++k) grads[k].fill(0.0);  // phi_in block
    }
    std::vector<const Matrix*> grad_ptrs;
    grad_ptrs.reserve(grads.size());
    for (const Matrix& g : grads) grad_ptrs.push_back(&g);
    adam_step(params, grad_ptrs, opt);

    const auto t1 = std::chrono::steady_clock::now();
    const double wall_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 - t0).count();
    result.metrics.push_back(IterationMetric{iter, loss_value, wall_ms});
  }
  return result;
}

void write_metrics_csv(const std::vector<IterationMetric>& metrics, const TccConfig& cfg,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write metrics file: " + path);
  out << "# config: " << tcc_config_to_json(cfg).dump() << "\n";
  out << "iteration,loss,wall_ms\n";
  for (const IterationMetric& m : metrics) {
    out << m.iteration << "," << m.loss << "," << m.wall_ms << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace graphirl
