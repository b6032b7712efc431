#pragma once

#include <string>
#include <vector>

namespace errp {

// 61-channel active-electrode layout (10-10 system, AFz reserved for ground).
// Positions are approximate 2D head-plane coordinates in head-radius units,
// x toward the right ear, y toward the nasion. Only relative distances are
// used (template spatial falloff, background mixing), not absolute geometry.
struct Electrode {
  std::string name;
  double x;
  double y;
};

class Montage {
 public:
  static const Montage& standard61();

  int size() const { return static_cast<int>(electrodes_.size()); }
  const std::vector<Electrode>& electrodes() const { return electrodes_; }
  const Electrode& at(int idx) const { return electrodes_.at(idx); }

  // Index of a channel by name; throws if absent.
  int index_of(const std::string& name) const;

  double distance(int a, int b) const;

  // Median nearest-neighbor distance; the "electrode spacing" unit used by
  // spatial falloff constants.
  double spacing() const { return spacing_; }

  std::vector<std::string> names() const;

 private:
  explicit Montage(std::vector<Electrode> e);
  std::vector<Electrode> electrodes_;
  double spacing_{0.0};
};

}  // namespace errp
