#include "errp/detector.hpp"

#include <memory>
#include <stdexcept>
#include <utility>

namespace errp::detector {

std::vector<int> apply_detection_rule(std::span<const double> probabilities,
                                      const DetectionRule& rule) {
  std::vector<int> out;
  RuleState state(rule);
  for (size_t i = 0; i < probabilities.size(); ++i)
    if (state.step(probabilities[i])) out.push_back(static_cast<int>(i));
  return out;
}

bool RuleState::step(double p_error) {
  if (p_error > rule_.tau) {
    ++run_length_;
    if (run_length_ >= rule_.consecutive && armed_) {
      if (rule_.single_event_per_run) armed_ = false;
      return true;
    }
    return false;
  }
  run_length_ = 0;
  armed_ = true;
  return false;
}

void RuleState::reset() {
  run_length_ = 0;
  armed_ = true;
}

WindowScorer make_model_scorer(const classifier::GenericModel& model) {
  auto collapsed = std::make_shared<classifier::GenericModel::Collapsed>(model.collapse());
  return [collapsed](const Eigen::Ref<const Eigen::VectorXd>& flat) {
    return classifier::logistic(collapsed->spatiotemporal.dot(flat) + collapsed->offset);
  };
}

AsyncDetector::AsyncDetector(const classifier::GenericModel& model)
    : AsyncDetector(
          DetectorParams{
              model.channels,
              model.filter.sample_rate_hz,
              model.window_samples(),
              model.leap_samples(),
              DetectionRule{model.tau, 2, true},
              dsp::design_butterworth_bandpass(model.filter),
          },
          make_model_scorer(model)) {}

AsyncDetector::AsyncDetector(DetectorParams params, WindowScorer scorer)
    : params_(std::move(params)),
      scorer_(std::move(scorer)),
      filter_state_(params_.filter, params_.channels),
      rule_state_(params_.rule) {
  if (params_.window_samples <= 0 || params_.leap_samples <= 0)
    throw std::invalid_argument("AsyncDetector: window/leap must be positive");
  init_buffers();
}

void AsyncDetector::init_buffers() {
  capacity_ = params_.window_samples + params_.leap_samples;
  ring_.setZero(params_.channels, capacity_);
  scratch_.setZero(static_cast<Eigen::Index>(params_.channels) * params_.window_samples);
  total_samples_ = 0;
  next_window_end_ = params_.window_samples;
  windows_emitted_ = 0;
}

void AsyncDetector::reset() {
  filter_state_.reset();
  rule_state_.reset();
  ring_.setZero();
  total_samples_ = 0;
  next_window_end_ = params_.window_samples;
  windows_emitted_ = 0;
  emitted_.clear();
}

double AsyncDetector::score_current_window() {
  const int w = params_.window_samples;
  const int64_t start = next_window_end_ - w;
  for (int t = 0; t < w; ++t) {
    const int col = static_cast<int>((start + t) % capacity_);
    for (int ch = 0; ch < params_.channels; ++ch)
      scratch_[static_cast<Eigen::Index>(ch) * w + t] = ring_(ch, col);
  }
  return scorer_(scratch_);
}

DetectorOutput AsyncDetector::push(const Eigen::Ref<const Eigen::MatrixXd>& chunk) {
  if (chunk.rows() != params_.channels)
    throw std::invalid_argument("AsyncDetector: channel count mismatch");

  DetectorOutput out;
  const Eigen::MatrixXd filtered = filter_state_.process(chunk);
  for (Eigen::Index i = 0; i < filtered.cols(); ++i) {
    ring_.col(static_cast<int>(total_samples_ % capacity_)) = filtered.col(i);
    ++total_samples_;
    if (total_samples_ == next_window_end_) {
      const double p = score_current_window();
      const double t_end = static_cast<double>(next_window_end_) / params_.sample_rate_hz;
      out.probabilities.push_back({t_end, p});
      ++windows_emitted_;
      if (rule_state_.step(p)) {
        out.events.push_back({t_end, p});
        emitted_.push_back({t_end, p});
      }
      next_window_end_ += params_.leap_samples;
    }
  }
  return out;
}

}  // namespace errp::detector
