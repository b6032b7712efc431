#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <vector>

namespace errp::dsp {

// Bandpass description. `order` is the order of each band edge: the designed
// filter cascades an order-N highpass at low_cut with an order-N lowpass at
// high_cut, giving a 2N-pole bandpass. This is the convention used for the
// default "order 4" 1-10 Hz filter throughout the pipeline.
struct FilterSpec {
  double low_cut_hz{1.0};
  double high_cut_hz{10.0};
  int order{4};
  double sample_rate_hz{500.0};

  void validate() const;
};

// One second-order section, direct form coefficients with a0 normalized to 1.
struct Biquad {
  double b0, b1, b2;
  double a1, a2;
};

using SosCascade = std::vector<Biquad>;

// Butterworth bandpass as highpass(low_cut) + lowpass(high_cut) second-order
// sections, bilinear transform with frequency pre-warping. Highpass sections
// carry exact (1,-2,1) numerators and lowpass sections exact (1,2,1) scaled
// numerators, so the cascade gain is exactly 0 at DC and at Nyquist.
SosCascade design_butterworth_bandpass(const FilterSpec& spec);

// Magnitude response of a designed cascade at frequency f (Hz).
double sos_magnitude(const SosCascade& sos, double f_hz, double sample_rate_hz);

// Streaming state for applying one cascade to a fixed number of channels.
// Direct form II transposed, two delay slots per section per channel.
class FilterState {
 public:
  FilterState(SosCascade sos, int channels);

  int channels() const { return channels_; }
  const SosCascade& sections() const { return sos_; }

  void reset();

  // Filters a chunk (channels x samples) in one pass, advancing the state.
  // Output values depend only on the sample sequence, never on how it was
  // chunked: feeding the same stream in any partition is bit-identical.
  Eigen::MatrixXd process(const Eigen::Ref<const Eigen::MatrixXd>& chunk);

  // In-place variant used on large buffers.
  void process_in_place(Eigen::Ref<Eigen::MatrixXd> chunk);

 private:
  SosCascade sos_;
  int channels_{0};
  // Layout: state_[(section * channels + channel) * 2 + slot]
  std::vector<double> state_;
};

// Forward-backward (zero-phase) bandpass of a whole recording. The signal is
// odd-reflect padded by 3 * order samples at each end, filtered forward and
// backward, and the result symmetrized over both traversal orders so that
// time reversal of the input reverses the output exactly.
Eigen::MatrixXd apply_zero_phase(const Eigen::Ref<const Eigen::MatrixXd>& signal,
                                 const FilterSpec& spec);

// Hook for an artifact-removal stage running between raw acquisition and the
// bandpass filter (e.g. ocular subspace subtraction). Identity by default.
using ArtifactRemoval = std::function<Eigen::MatrixXd(const Eigen::Ref<const Eigen::MatrixXd>&)>;

inline ArtifactRemoval passthrough_artifact_removal() {
  return [](const Eigen::Ref<const Eigen::MatrixXd>& x) { return Eigen::MatrixXd(x); };
}

}  // namespace errp::dsp
