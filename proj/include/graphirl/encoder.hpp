#pragma once

#include <vector>

#include "graphirl/data.hpp"
#include "graphirl/mlp.hpp"

namespace graphirl {

// Spatial interaction encoder. Per object: a self embedding phi_s(o_i), an
// interaction embedding summed over ordered pairs phi_in(concat(o_i, o_j))
// for j != i, and an aggregate phi_agg(self + interaction). The frame
// embedding is the mean of the aggregated object embeddings.
struct EncoderParams {
  MlpParams phi_s;    // (4+m) -> embed
  MlpParams phi_in;   // 2(4+m) -> embed
  MlpParams phi_agg;  // embed -> embed

  int feature_dim() const { return phi_s.in_dim(); }
  int roster_size() const { return feature_dim() - 4; }
  int embed_dim() const { return phi_agg.out_dim(); }
  int hidden_dim() const { return phi_s.hidden_dim(); }

  static EncoderParams init(int roster_size, int hidden_dim, int embed_dim, Rng& rng);

  // Fixed order: phi_s{w1,b1,w2,b2}, phi_in{...}, phi_agg{...}.
  std::vector<Matrix*> all_params();
  std::vector<const Matrix*> all_params() const;

  void zero_interaction();  // interaction-free ablation
};

Matrix encode_frame(const EncoderParams& p, const FrameGraph& fg);
std::vector<Matrix> encode_sequence(const EncoderParams& p, const Demonstration& demo);

struct EncoderNodes {
  MlpNodes phi_s, phi_in, phi_agg;
  int feature_dim = 0;
  int embed_dim = 0;
};

EncoderNodes bind_encoder(Tape& tape, const EncoderParams& p);
NodeId encode_frame(Tape& tape, const EncoderNodes& enc, const FrameGraph& fg);
std::vector<NodeId> encode_sequence(Tape& tape, const EncoderNodes& enc,
                                    const Demonstration& demo);

// Node ids in the same order as EncoderParams::all_params().
std::vector<NodeId> param_nodes(const EncoderNodes& enc);

}  // namespace graphirl
