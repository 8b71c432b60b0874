#include "graphirl/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "graphirl/errors.hpp"
#include "graphirl/rng.hpp"

namespace graphirl {

using nlohmann::json;

Matrix ObjectFeature::to_matrix() const {
  Matrix m = Matrix::vector(static_cast<int>(values.size()));
  m.data = values;
  return m;
}

FrameGraph featurize_frame(const std::vector<BoundingBox>& boxes) {
  if (boxes.empty()) throw ContractError("featurize_frame: empty box list");
  for (size_t i = 0; i < boxes.size(); ++i) {
    const BoundingBox& b = boxes[i];
    const bool in_range = b.x1 >= 0.0 && b.y1 >= 0.0 && b.x2 <= 1.0 && b.y2 <= 1.0;
    if (!in_range || b.x1 > b.x2 || b.y1 > b.y2) {
      throw ValidationError("featurize_frame: box " + std::to_string(i) +
                            " has out-of-range or inverted coordinates");
    }
  }
  const size_t m = boxes.size();
  FrameGraph fg;
  fg.objects.resize(m);
  for (size_t i = 0; i < m; ++i) {
    std::vector<double>& f = fg.objects[i].values;
    f.reserve(4 + m);
    f.push_back(boxes[i].x1);
    f.push_back(boxes[i].y1);
    f.push_back(boxes[i].x2);
    f.push_back(boxes[i].y2);
    for (size_t j = 0; j < m; ++j) {
      const double dx = boxes[i].cx() - boxes[j].cx();
      const double dy = boxes[i].cy() - boxes[j].cy();
      f.push_back(i == j ? 0.0 : std::sqrt(dx * dx + dy * dy));
    }
  }
  return fg;
}

Demonstration subsample_frames(const Demonstration& demo, int k, uint64_t seed) {
  if (k < 2) throw ContractError("subsample_frames: k must be >= 2");
  const int n = demo.frame_count();
  if (n <= k) return demo;

  // partial Fisher-Yates over the interior indices
  std::vector<int> interior(static_cast<size_t>(n) - 2);
  for (int i = 0; i < n - 2; ++i) interior[i] = i + 1;
  Rng rng(seed);
  const int take = k - 2;
  for (int i = 0; i < take; ++i) {
    const int j = i + static_cast<int>(rng.uniform_index(interior.size() - i));
    std::swap(interior[i], interior[j]);
  }

  std::vector<int> picked;
  picked.reserve(k);
  picked.push_back(0);
  picked.insert(picked.end(), interior.begin(), interior.begin() + take);
  picked.push_back(n - 1);
  std::sort(picked.begin(), picked.end());

  Demonstration out;
  out.id = demo.id;
  out.meta = demo.meta;
  out.frames.reserve(k);
  for (int idx : picked) out.frames.push_back(demo.frames[idx]);
  return out;
}

void validate_demo(const Demonstration& demo, int roster_size) {
  if (demo.frame_count() < 2) {
    throw ValidationError("demo '" + demo.id + "': needs at least 2 frames");
  }
  for (const FrameGraph& fg : demo.frames) {
    if (fg.object_count() != roster_size) {
      throw ValidationError("demo '" + demo.id + "': frame has " +
                            std::to_string(fg.object_count()) + " objects, roster has " +
                            std::to_string(roster_size));
    }
    for (const ObjectFeature& of : fg.objects) {
      if (of.values.size() != static_cast<size_t>(4 + roster_size)) {
        throw ValidationError("demo '" + demo.id + "': feature length != 4+m");
      }
      for (double v : of.values) {
        if (!std::isfinite(v)) {
          throw ValidationError("demo '" + demo.id + "': non-finite feature value");
        }
      }
    }
  }
}

static std::vector<BoundingBox> boxes_from_json(const json& frame) {
  std::vector<BoundingBox> boxes;
  for (const json& b : frame.at("boxes")) {
    if (!b.is_array() || b.size() != 4) {
      throw ValidationError("box entry must be a [x1,y1,x2,y2] array");
    }
    boxes.push_back(BoundingBox{b[0].get<double>(), b[1].get<double>(), b[2].get<double>(),
                                b[3].get<double>()});
  }
  return boxes;
}

TrajectoryDataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset file: " + path);

  TrajectoryDataset ds;
  std::string line;
  int line_no = 0;
  bool have_header = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }

    if (!have_header) {
      if (!doc.contains("roster") || !doc["roster"].is_array() || doc["roster"].empty()) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected header line with non-empty \"roster\"");
      }
      for (const json& name : doc["roster"]) ds.roster.push_back(name.get<std::string>());
      have_header = true;
      continue;
    }

    Demonstration demo;
    try {
      demo.id = doc.at("id").get<std::string>();
      if (doc.contains("meta")) demo.meta = doc["meta"];
      for (const json& frame : doc.at("frames")) {
        std::vector<BoundingBox> boxes = boxes_from_json(frame);
        if (static_cast<int>(boxes.size()) != ds.roster_size()) {
          throw ValidationError("demo '" + demo.id + "': frame has " +
                                std::to_string(boxes.size()) + " boxes, roster has " +
                                std::to_string(ds.roster_size()));
        }
        demo.frames.push_back(featurize_frame(boxes));
      }
    } catch (const json::exception& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    validate_demo(demo, ds.roster_size());
    ds.demos.push_back(std::move(demo));
  }

  if (!have_header) throw ParseError("dataset file is empty: " + path);
  return ds;
}

void save_dataset(const TrajectoryDataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write dataset file: " + path);

  json header;
  header["roster"] = ds.roster;
  out << header.dump() << "\n";

  for (const Demonstration& demo : ds.demos) {
    json doc;
    doc["id"] = demo.id;
    json frames = json::array();
    for (const FrameGraph& fg : demo.frames) {
      json boxes = json::array();
      for (const ObjectFeature& of : fg.objects) {
        boxes.push_back({of.values[0], of.values[1], of.values[2], of.values[3]});
      }
      frames.push_back(json{{"boxes", boxes}});
    }
    doc["frames"] = frames;
    doc["meta"] = demo.meta;
    out << doc.dump() << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace graphirl
