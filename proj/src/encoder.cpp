#include "graphirl/encoder.hpp"

#include <string>

#include "graphirl/errors.hpp"

namespace graphirl {

EncoderParams EncoderParams::init(int roster_size, int hidden_dim, int embed_dim, Rng& rng) {
  const int feat = 4 + roster_size;
  EncoderParams p;
  p.phi_s = MlpParams::init(feat, hidden_dim, embed_dim, rng);
  p.phi_in = MlpParams::init(2 * feat, hidden_dim, embed_dim, rng);
  p.phi_agg = MlpParams::init(embed_dim, hidden_dim, embed_dim, rng);
  return p;
}

std::vector<Matrix*> EncoderParams::all_params() {
  return {&phi_s.w1, &phi_s.b1, &phi_s.w2, &phi_s.b2, &phi_in.w1, &phi_in.b1,
          &phi_in.w2, &phi_in.b2, &phi_agg.w1, &phi_agg.b1, &phi_agg.w2, &phi_agg.b2};
}

std::vector<const Matrix*> EncoderParams::all_params() const {
  return {&phi_s.w1, &phi_s.b1, &phi_s.w2, &phi_s.b2, &phi_in.w1, &phi_in.b1,
          &phi_in.w2, &phi_in.b2, &phi_agg.w1, &phi_agg.b1, &phi_agg.w2, &phi_agg.b2};
}

void EncoderParams::zero_interaction() {
  phi_in.w1.fill(0.0);
  phi_in.b1.fill(0.0);
  phi_in.w2.fill(0.0);
  phi_in.b2.fill(0.0);
}

static void check_feature_dim(const EncoderParams& p, const FrameGraph& fg) {
  for (const ObjectFeature& of : fg.objects) {
    if (static_cast<int>(of.values.size()) != p.feature_dim()) {
      throw ShapeError("encode_frame: feature length " + std::to_string(of.values.size()) +
                       " does not match encoder input dim " + std::to_string(p.feature_dim()));
    }
  }
}

Matrix encode_frame(const EncoderParams& p, const FrameGraph& fg) {
  if (fg.objects.empty()) throw ContractError("encode_frame: empty frame");
  check_feature_dim(p, fg);

  const int m = fg.object_count();
  const int feat = p.feature_dim();
  std::vector<Matrix> feats(m);
  for (int i = 0; i < m; ++i) feats[i] = fg.objects[i].to_matrix();

  Matrix psi = Matrix::vector(p.embed_dim());
  Matrix pair = Matrix::vector(2 * feat);
  for (int i = 0; i < m; ++i) {
    Matrix f_self = mlp_forward(p.phi_s, feats[i]);
    Matrix f_inter = Matrix::vector(p.embed_dim());
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      for (int k = 0; k < feat; ++k) {
        pair.data[k] = feats[i].data[k];
        pair.data[feat + k] = feats[j].data[k];
      }
      const Matrix fij = mlp_forward(p.phi_in, pair);
      for (size_t k = 0; k < f_inter.size(); ++k) f_inter.data[k] += fij.data[k];
    }
    if (m > 1) {
      for (size_t k = 0; k < f_self.size(); ++k) f_self.data[k] += f_inter.data[k];
    }
    const Matrix agg = mlp_forward(p.phi_agg, f_self);
    for (size_t k = 0; k < psi.size(); ++k) psi.data[k] += agg.data[k];
  }
  const double inv_m = 1.0 / static_cast<double>(m);
  for (double& v : psi.data) v *= inv_m;
  return psi;
}

std::vector<Matrix> encode_sequence(const EncoderParams& p, const Demonstration& demo) {
  std::vector<Matrix> out;
  out.reserve(demo.frames.size());
  for (const FrameGraph& fg : demo.frames) out.push_back(encode_frame(p, fg));
  return out;
}

EncoderNodes bind_encoder(Tape& tape, const EncoderParams& p) {
  EncoderNodes enc;
  enc.phi_s = bind_mlp(tape, p.phi_s);
  enc.phi_in = bind_mlp(tape, p.phi_in);
  enc.phi_agg = bind_mlp(tape, p.phi_agg);
  enc.feature_dim = p.feature_dim();
  enc.embed_dim = p.embed_dim();
  return enc;
}

NodeId encode_frame(Tape& tape, const EncoderNodes& enc, const FrameGraph& fg) {
  if (fg.objects.empty()) throw ContractError("encode_frame: empty frame");
  const int m = fg.object_count();
  std::vector<NodeId> feats(m);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(fg.objects[i].values.size()) != enc.feature_dim) {
      throw ShapeError("encode_frame: feature length does not match encoder input dim");
    }
    feats[i] = tape.constant(fg.objects[i].to_matrix());
  }

  std::vector<NodeId> per_object;
  per_object.reserve(m);
  for (int i = 0; i < m; ++i) {
    NodeId f_o = mlp_forward(tape, enc.phi_s, feats[i]);
    if (m > 1) {
      std::vector<NodeId> interactions;
      interactions.reserve(m - 1);
      for (int j = 0; j < m; ++j) {
        if (j == i) continue;
        interactions.push_back(
            mlp_forward(tape, enc.phi_in, tape.concat(feats[i], feats[j])));
      }
      f_o = tape.add(f_o, tape.sum_list(interactions));
    }
    per_object.push_back(mlp_forward(tape, enc.phi_agg, f_o));
  }
  return tape.mean_list(per_object);
}

std::vector<NodeId> encode_sequence(Tape& tape, const EncoderNodes& enc,
                                    const Demonstration& demo) {
  std::vector<NodeId> out;
  out.reserve(demo.frames.size());
  for (const FrameGraph& fg : demo.frames) out.push_back(encode_frame(tape, enc, fg));
  return out;
}

std::vector<NodeId> param_nodes(const EncoderNodes& enc) {
  return {enc.phi_s.w1,   enc.phi_s.b1,   enc.phi_s.w2,   enc.phi_s.b2,
          enc.phi_in.w1,  enc.phi_in.b1,  enc.phi_in.w2,  enc.phi_in.b2,
          enc.phi_agg.w1, enc.phi_agg.b1, enc.phi_agg.w2, enc.phi_agg.b2};
}

}  // namespace graphirl
