#include "errp/montage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace errp {

namespace {

std::vector<Electrode> standard61_table() {
  return {
      {"Fp1", -0.31, 0.95},  {"Fpz", 0.00, 1.00},   {"Fp2", 0.31, 0.95},
      {"AF7", -0.59, 0.81},  {"AF3", -0.33, 0.78},  {"AF4", 0.33, 0.78},
      {"AF8", 0.59, 0.81},
      {"F7", -0.81, 0.59},   {"F5", -0.63, 0.56},   {"F3", -0.43, 0.54},
      {"F1", -0.22, 0.52},   {"Fz", 0.00, 0.50},    {"F2", 0.22, 0.52},
      {"F4", 0.43, 0.54},    {"F6", 0.63, 0.56},    {"F8", 0.81, 0.59},
      {"FT7", -0.95, 0.31},  {"FC5", -0.72, 0.28},  {"FC3", -0.49, 0.27},
      {"FC1", -0.25, 0.26},  {"FCz", 0.00, 0.25},   {"FC2", 0.25, 0.26},
      {"FC4", 0.49, 0.27},   {"FC6", 0.72, 0.28},   {"FT8", 0.95, 0.31},
      {"T7", -1.00, 0.00},   {"C5", -0.75, 0.00},   {"C3", -0.50, 0.00},
      {"C1", -0.25, 0.00},   {"Cz", 0.00, 0.00},    {"C2", 0.25, 0.00},
      {"C4", 0.50, 0.00},    {"C6", 0.75, 0.00},    {"T8", 1.00, 0.00},
      {"TP7", -0.95, -0.31}, {"CP5", -0.72, -0.28}, {"CP3", -0.49, -0.27},
      {"CP1", -0.25, -0.26}, {"CPz", 0.00, -0.25},  {"CP2", 0.25, -0.26},
      {"CP4", 0.49, -0.27},  {"CP6", 0.72, -0.28},  {"TP8", 0.95, -0.31},
      {"P7", -0.81, -0.59},  {"P5", -0.63, -0.56},  {"P3", -0.43, -0.54},
      {"P1", -0.22, -0.52},  {"Pz", 0.00, -0.50},   {"P2", 0.22, -0.52},
      {"P4", 0.43, -0.54},   {"P6", 0.63, -0.56},   {"P8", 0.81, -0.59},
      {"PO7", -0.59, -0.81}, {"PO3", -0.33, -0.78}, {"POz", 0.00, -0.75},
      {"PO4", 0.33, -0.78},  {"PO8", 0.59, -0.81},
      {"O1", -0.31, -0.95},  {"Oz", 0.00, -1.00},   {"O2", 0.31, -0.95},
      {"Iz", 0.00, -1.15},
  };
}

}  // namespace

Montage::Montage(std::vector<Electrode> e) : electrodes_(std::move(e)) {
  std::vector<double> nearest;
  nearest.reserve(electrodes_.size());
  for (size_t i = 0; i < electrodes_.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < electrodes_.size(); ++j) {
      if (i == j) continue;
      best = std::min(best, distance(static_cast<int>(i), static_cast<int>(j)));
    }
    nearest.push_back(best);
  }
  std::sort(nearest.begin(), nearest.end());
  spacing_ = nearest[nearest.size() / 2];
}

const Montage& Montage::standard61() {
  static const Montage m(standard61_table());
  return m;
}

int Montage::index_of(const std::string& name) const {
  for (size_t i = 0; i < electrodes_.size(); ++i)
    if (electrodes_[i].name == name) return static_cast<int>(i);
  throw std::out_of_range("Montage: unknown channel " + name);
}

double Montage::distance(int a, int b) const {
  const auto& ea = electrodes_.at(a);
  const auto& eb = electrodes_.at(b);
  return std::hypot(ea.x - eb.x, ea.y - eb.y);
}

std::vector<std::string> Montage::names() const {
  std::vector<std::string> out;
  out.reserve(electrodes_.size());
  for (const auto& e : electrodes_) out.push_back(e.name);
  return out;
}

}  // namespace errp
