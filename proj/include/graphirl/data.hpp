#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "graphirl/matrix.hpp"

namespace graphirl {

// Axis-aligned box, coordinates normalized to [0,1] fractions of the frame.
struct BoundingBox {
  double x1 = 0.0, y1 = 0.0, x2 = 0.0, y2 = 0.0;

  double cx() const { return 0.5 * (x1 + x2); }
  double cy() const { return 0.5 * (y1 + y2); }
};

// Per-object feature: [x1, y1, x2, y2, d_1 .. d_m] where d_k is the
// centroid distance to roster object k (d_self = 0). Length is 4 + m.
struct ObjectFeature {
  std::vector<double> values;

  Matrix to_matrix() const;
};

// One frame as a fully connected object graph; relations are implicit
// (all ordered pairs i != j). Object order follows the dataset roster.
struct FrameGraph {
  std::vector<ObjectFeature> objects;

  int object_count() const { return static_cast<int>(objects.size()); }
};

struct Demonstration {
  std::string id;
  std::vector<FrameGraph> frames;
  nlohmann::json meta = nlohmann::json::object();

  int frame_count() const { return static_cast<int>(frames.size()); }
};

struct TrajectoryDataset {
  std::vector<std::string> roster;
  std::vector<Demonstration> demos;

  int roster_size() const { return static_cast<int>(roster.size()); }
  int demo_count() const { return static_cast<int>(demos.size()); }
};

// Corners plus pairwise centroid distances, in roster order.
FrameGraph featurize_frame(const std::vector<BoundingBox>& boxes);

// Keeps first and last frames, draws the remaining k-2 uniformly without
// replacement, and emits them in temporal order. No-op when the demo is
// already short enough.
Demonstration subsample_frames(const Demonstration& demo, int k, uint64_t seed);

// demo must have >= 2 frames and a constant object count equal to roster_size
void validate_demo(const Demonstration& demo, int roster_size);

// JSON Lines: a header line {"roster": [...]} followed by one demonstration
// object per line. Save/load round-trips a dataset exactly.
TrajectoryDataset load_dataset(const std::string& path);
void save_dataset(const TrajectoryDataset& ds, const std::string& path);

}  // namespace graphirl
