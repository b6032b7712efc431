#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace errp {

// Multichannel sample block, rows = channels, columns = time (microvolts).
using SampleBlock = Eigen::MatrixXd;

enum class Label { correct = 0, error = 1 };

inline const char* label_name(Label l) { return l == Label::error ? "error" : "correct"; }

enum class Target { left = 0, right = 1 };

inline const char* target_name(Target t) { return t == Target::left ? "left" : "right"; }

// One fixed-length classification window cut from a filtered recording.
struct Epoch {
  Eigen::MatrixXd data;       // channels x samples, microvolts
  Label label{Label::correct};
  double onset_time{0.0};     // seconds, onset this epoch was cut around
  int participant_id{-1};
  int trial_id{-1};

  int channels() const { return static_cast<int>(data.rows()); }
  int samples() const { return static_cast<int>(data.cols()); }
};

// Canonical feature order: channel-major, i.e. feature index = ch * samples + t.
inline Eigen::VectorXd flatten_epoch(const Eigen::Ref<const Eigen::MatrixXd>& data) {
  Eigen::VectorXd out(data.size());
  const int ns = static_cast<int>(data.cols());
  for (int ch = 0; ch < data.rows(); ++ch)
    out.segment(static_cast<Eigen::Index>(ch) * ns, ns) = data.row(ch).transpose();
  return out;
}

inline Eigen::MatrixXd unflatten_epoch(const Eigen::Ref<const Eigen::VectorXd>& flat,
                                       int channels, int samples) {
  if (flat.size() != static_cast<Eigen::Index>(channels) * samples)
    throw std::invalid_argument("unflatten_epoch: size mismatch");
  Eigen::MatrixXd out(channels, samples);
  for (int ch = 0; ch < channels; ++ch)
    out.row(ch) = flat.segment(static_cast<Eigen::Index>(ch) * samples, samples).transpose();
  return out;
}

}  // namespace errp
