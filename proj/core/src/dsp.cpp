#include "errp/dsp.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace errp::dsp {

namespace {

constexpr double kPi = std::numbers::pi;

// Left-half-plane Butterworth prototype poles for unit cutoff, as conjugate
// pair representatives (positive imaginary part). Odd orders add a real pole.
struct Prototype {
  std::vector<std::complex<double>> pairs;
  bool has_real_pole{false};
};

Prototype butterworth_prototype(int order) {
  Prototype p;
  for (int k = 1; k <= order / 2; ++k) {
    const double theta = kPi * (2.0 * k - 1.0) / (2.0 * order);
    // pole = -sin(theta) + i cos(theta), |pole| = 1
    p.pairs.emplace_back(-std::sin(theta), std::cos(theta));
  }
  p.has_real_pole = (order % 2) != 0;
  return p;
}

std::complex<double> bilinear_pole(std::complex<double> s_pole, double fs2) {
  return (fs2 + s_pole) / (fs2 - s_pole);
}

enum class EdgeKind { lowpass, highpass };

// Designs the order-N lowpass or highpass half of the cascade. Numerators are
// written as exact integer patterns times a gain so the stopband zeros stay
// exact: lowpass (1, 2, 1) with zeros at z = -1, highpass (1, -2, 1) with
// zeros at z = +1.
void design_edge(EdgeKind kind, double cutoff_hz, int order, double fs, SosCascade& out) {
  const double fs2 = 2.0 * fs;
  const double warped = fs2 * std::tan(kPi * cutoff_hz / fs);
  const Prototype proto = butterworth_prototype(order);

  for (const auto& sp : proto.pairs) {
    const std::complex<double> s_pole =
        kind == EdgeKind::lowpass ? warped * sp : warped / sp;
    const std::complex<double> zp = bilinear_pole(s_pole, fs2);
    Biquad q;
    q.a1 = -2.0 * zp.real();
    q.a2 = std::norm(zp);
    if (kind == EdgeKind::lowpass) {
      const double g = (1.0 + q.a1 + q.a2) / 4.0;  // unit gain at DC
      q.b0 = g;
      q.b1 = 2.0 * g;
      q.b2 = g;
    } else {
      const double g = (1.0 - q.a1 + q.a2) / 4.0;  // unit gain at Nyquist
      q.b0 = g;
      q.b1 = -2.0 * g;
      q.b2 = g;
    }
    out.push_back(q);
  }

  if (proto.has_real_pole) {
    // Real prototype pole at s = -1; realized as a degenerate section with
    // a2 = b2 = 0 and a single zero at the stopband edge.
    const double s_pole = kind == EdgeKind::lowpass ? -warped : -(warped / 1.0);
    const double zp = (fs2 + s_pole) / (fs2 - s_pole);
    Biquad q;
    q.a1 = -zp;
    q.a2 = 0.0;
    if (kind == EdgeKind::lowpass) {
      const double g = (1.0 + q.a1) / 2.0;
      q.b0 = g;
      q.b1 = g;
      q.b2 = 0.0;
    } else {
      const double g = (1.0 - q.a1) / 2.0;
      q.b0 = g;
      q.b1 = -g;
      q.b2 = 0.0;
    }
    out.push_back(q);
  }
}

}  // namespace

void FilterSpec::validate() const {
  if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("FilterSpec: sample rate must be positive");
  if (!(low_cut_hz > 0.0)) throw std::invalid_argument("FilterSpec: low cut must be positive");
  if (!(low_cut_hz < high_cut_hz))
    throw std::invalid_argument("FilterSpec: low cut must be below high cut");
  if (!(high_cut_hz < sample_rate_hz / 2.0))
    throw std::invalid_argument("FilterSpec: high cut must be below Nyquist");
  if (order < 1) throw std::invalid_argument("FilterSpec: order must be >= 1");
}

SosCascade design_butterworth_bandpass(const FilterSpec& spec) {
  spec.validate();
  SosCascade sos;
  design_edge(EdgeKind::highpass, spec.low_cut_hz, spec.order, spec.sample_rate_hz, sos);
  design_edge(EdgeKind::lowpass, spec.high_cut_hz, spec.order, spec.sample_rate_hz, sos);
  for (const auto& q : sos) {
    if (!std::isfinite(q.b0) || !std::isfinite(q.b1) || !std::isfinite(q.b2) ||
        !std::isfinite(q.a1) || !std::isfinite(q.a2))
      throw std::runtime_error("design_butterworth_bandpass: non-finite coefficients");
  }
  return sos;
}

double sos_magnitude(const SosCascade& sos, double f_hz, double sample_rate_hz) {
  const double w = 2.0 * kPi * f_hz / sample_rate_hz;
  const std::complex<double> z1 = std::polar(1.0, -w);   // z^-1
  const std::complex<double> z2 = std::polar(1.0, -2 * w);
  std::complex<double> h{1.0, 0.0};
  for (const auto& q : sos)
    h *= (q.b0 + q.b1 * z1 + q.b2 * z2) / (1.0 + q.a1 * z1 + q.a2 * z2);
  return std::abs(h);
}

FilterState::FilterState(SosCascade sos, int channels)
    : sos_(std::move(sos)), channels_(channels) {
  if (channels_ <= 0) throw std::invalid_argument("FilterState: channels must be positive");
  state_.assign(sos_.size() * static_cast<size_t>(channels_) * 2, 0.0);
}

void FilterState::reset() { std::fill(state_.begin(), state_.end(), 0.0); }

Eigen::MatrixXd FilterState::process(const Eigen::Ref<const Eigen::MatrixXd>& chunk) {
  Eigen::MatrixXd out = chunk;
  process_in_place(out);
  return out;
}

void FilterState::process_in_place(Eigen::Ref<Eigen::MatrixXd> chunk) {
  if (chunk.rows() != channels_)
    throw std::invalid_argument("FilterState: channel count mismatch");
  const Eigen::Index n = chunk.cols();
  for (size_t s = 0; s < sos_.size(); ++s) {
    const Biquad q = sos_[s];
    for (int ch = 0; ch < channels_; ++ch) {
      double* w = &state_[(s * channels_ + ch) * 2];
      double w0 = w[0], w1 = w[1];
      for (Eigen::Index t = 0; t < n; ++t) {
        const double x = chunk(ch, t);
        const double y = q.b0 * x + w0;
        w0 = q.b1 * x - q.a1 * y + w1;
        w1 = q.b2 * x - q.a2 * y;
        chunk(ch, t) = y;
      }
      w[0] = w0;
      w[1] = w1;
    }
  }
}

namespace {

// Odd reflection padding and one forward-backward pass.
Eigen::MatrixXd filtfilt_once(const Eigen::Ref<const Eigen::MatrixXd>& signal,
                              const SosCascade& sos, int pad) {
  const Eigen::Index ch = signal.rows();
  const Eigen::Index n = signal.cols();
  Eigen::MatrixXd ext(ch, n + 2 * pad);
  ext.middleCols(pad, n) = signal;
  for (int j = 0; j < pad; ++j) {
    ext.col(pad - 1 - j) = 2.0 * signal.col(0) - signal.col(j + 1);
    ext.col(pad + n + j) = 2.0 * signal.col(n - 1) - signal.col(n - 2 - j);
  }

  FilterState forward(sos, static_cast<int>(ch));
  forward.process_in_place(ext);
  ext = ext.rowwise().reverse().eval();
  forward.reset();
  forward.process_in_place(ext);
  ext = ext.rowwise().reverse().eval();
  return ext.middleCols(pad, n);
}

}  // namespace

Eigen::MatrixXd apply_zero_phase(const Eigen::Ref<const Eigen::MatrixXd>& signal,
                                 const FilterSpec& spec) {
  const int pad = 3 * spec.order;
  if (signal.cols() <= static_cast<Eigen::Index>(pad))
    throw std::invalid_argument("apply_zero_phase: signal shorter than 3 * order");
  const SosCascade sos = design_butterworth_bandpass(spec);

  // Symmetrize over the two traversal orders: the average of filtfilt(x) and
  // reverse(filtfilt(reverse(x))) commutes with time reversal exactly, which
  // a single forward-backward pass does not (its edge transients are
  // asymmetric between left and right).
  const Eigen::MatrixXd a = filtfilt_once(signal, sos, pad);
  const Eigen::MatrixXd b =
      filtfilt_once(signal.rowwise().reverse(), sos, pad).rowwise().reverse();
  return 0.5 * (a + b);
}

}  // namespace errp::dsp
