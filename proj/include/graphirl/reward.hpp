#pragma once

#include "graphirl/encoder.hpp"

namespace graphirl {

// Frozen encoder turned into a dense reward: r(o) = -||psi(o) - g||^2 / c,
// with g the mean final-frame embedding of the demonstrations and c the
// average squared embedding distance between each demo's first and last
// frames. Range is (-inf, 0].
struct RewardModel {
  EncoderParams encoder;
  Matrix g;
  double c = 1.0;
};

Matrix compute_goal_embedding(const EncoderParams& enc, const TrajectoryDataset& ds);
double compute_scale(const EncoderParams& enc, const TrajectoryDataset& ds);

RewardModel build_reward_model(const EncoderParams& enc, const TrajectoryDataset& ds);

double reward(const RewardModel& rm, const FrameGraph& fg);

}  // namespace graphirl
