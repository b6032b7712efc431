#include "errp/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace errp {

int Config::epoch_samples() const {
  return static_cast<int>(std::lround(epoch_length_s * sample_rate_hz));
}

int Config::window_samples() const {
  return static_cast<int>(std::lround(window_length_s * sample_rate_hz));
}

int Config::leap_samples() const {
  return static_cast<int>(std::lround(window_leap_s * sample_rate_hz));
}

int Config::feature_dim() const { return channels * epoch_samples(); }

int Config::tau_grid_size() const {
  return static_cast<int>(std::lround(1.0 / tau_grid_step)) + 1;
}

dsp::FilterSpec Config::filter_spec() const {
  return {filter_low_hz, filter_high_hz, filter_order, sample_rate_hz};
}

void Config::validate() const {
  filter_spec().validate();
  if (channels <= 0) throw std::invalid_argument("config: channels must be positive");
  if (epoch_length_s <= 0 || window_length_s <= 0 || window_leap_s <= 0)
    throw std::invalid_argument("config: epoch/window lengths must be positive");
  if (pca_variance_target <= 0 || pca_variance_target > 1)
    throw std::invalid_argument("config: pca variance target must be in (0, 1]");
  if (outlier_fraction < 0 || outlier_fraction >= 0.5)
    throw std::invalid_argument("config: outlier fraction must be in [0, 0.5)");
  if (initial_tau < 0 || initial_tau > 1)
    throw std::invalid_argument("config: initial tau must be in [0, 1]");
  if (error_trials_per_block > trials_per_block)
    throw std::invalid_argument("config: more error trials than trials per block");
  if (eval_first_block < 1 || eval_last_block > blocks_per_session ||
      eval_first_block > eval_last_block)
    throw std::invalid_argument("config: bad evaluation block range");
  if (error_distance_min_cm > error_distance_max_cm || robot_speed_cm_s <= 0)
    throw std::invalid_argument("config: bad error distance / robot speed");
  if (cv_folds < 2 || cv_repetitions < 1)
    throw std::invalid_argument("config: bad cross-validation shape");
}

namespace {

struct Field {
  std::function<std::string(const Config&)> get;
  std::function<void(Config&, const std::string&)> set;
};

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double parse_double(const std::string& s) {
  size_t pos = 0;
  const double v = std::stod(s, &pos);
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos != s.size()) throw std::invalid_argument("config: bad number '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  size_t pos = 0;
  const int v = std::stoi(s, &pos);
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos != s.size()) throw std::invalid_argument("config: bad integer '" + s + "'");
  return v;
}

const std::map<std::string, Field>& field_table() {
#define ERRP_DOUBLE_FIELD(name)                                        \
  {#name, Field{[](const Config& c) { return fmt_double(c.name); },    \
                [](Config& c, const std::string& s) { c.name = parse_double(s); }}}
#define ERRP_INT_FIELD(name)                                           \
  {#name, Field{[](const Config& c) { return std::to_string(c.name); },\
                [](Config& c, const std::string& s) { c.name = parse_int(s); }}}
  static const std::map<std::string, Field> table = {
      ERRP_DOUBLE_FIELD(sample_rate_hz),
      ERRP_INT_FIELD(channels),
      ERRP_DOUBLE_FIELD(filter_low_hz),
      ERRP_DOUBLE_FIELD(filter_high_hz),
      ERRP_INT_FIELD(filter_order),
      ERRP_DOUBLE_FIELD(epoch_offset_s),
      ERRP_DOUBLE_FIELD(epoch_length_s),
      ERRP_DOUBLE_FIELD(pca_variance_target),
      ERRP_DOUBLE_FIELD(outlier_fraction),
      ERRP_DOUBLE_FIELD(window_length_s),
      ERRP_DOUBLE_FIELD(window_leap_s),
      ERRP_INT_FIELD(consecutive_windows),
      ERRP_DOUBLE_FIELD(initial_tau),
      ERRP_DOUBLE_FIELD(tau_grid_step),
      ERRP_INT_FIELD(smoothing_window),
      ERRP_INT_FIELD(adaptation_blocks),
      ERRP_DOUBLE_FIELD(tp_window_s),
      ERRP_DOUBLE_FIELD(far_interval_s),
      ERRP_INT_FIELD(blocks_per_session),
      ERRP_INT_FIELD(trials_per_block),
      ERRP_INT_FIELD(error_trials_per_block),
      ERRP_INT_FIELD(max_consecutive_errors),
      ERRP_INT_FIELD(max_consecutive_same_target),
      ERRP_INT_FIELD(eval_first_block),
      ERRP_INT_FIELD(eval_last_block),
      ERRP_DOUBLE_FIELD(robot_speed_cm_s),
      ERRP_DOUBLE_FIELD(error_distance_min_cm),
      ERRP_DOUBLE_FIELD(error_distance_max_cm),
      ERRP_DOUBLE_FIELD(marker_delay_s),
      ERRP_DOUBLE_FIELD(trial_timeout_s),
      ERRP_DOUBLE_FIELD(trial_extension_s),
      ERRP_DOUBLE_FIELD(correct_duration_mean_s),
      ERRP_DOUBLE_FIELD(correct_duration_sd_s),
      ERRP_DOUBLE_FIELD(correct_duration_min_s),
      ERRP_DOUBLE_FIELD(regain_duration_mean_s),
      ERRP_DOUBLE_FIELD(regain_duration_sd_s),
      ERRP_DOUBLE_FIELD(inter_trial_gap_s),
      ERRP_DOUBLE_FIELD(template_neg_peak_uv),
      ERRP_DOUBLE_FIELD(template_neg_latency_s),
      ERRP_DOUBLE_FIELD(template_pos_peak_uv),
      ERRP_DOUBLE_FIELD(template_pos_latency_s),
      ERRP_DOUBLE_FIELD(template_lobe_sd_s),
      ERRP_DOUBLE_FIELD(template_space_constant_spacings),
      ERRP_DOUBLE_FIELD(noise_level_uv),
      ERRP_DOUBLE_FIELD(noise_white_fraction),
      ERRP_INT_FIELD(noise_spatial_rank),
      ERRP_INT_FIELD(permutations_online),
      ERRP_INT_FIELD(permutations_cv),
      ERRP_INT_FIELD(cv_repetitions),
      ERRP_INT_FIELD(cv_folds),
      ERRP_DOUBLE_FIELD(erp_alpha),
      ERRP_INT_FIELD(training_participants),
      ERRP_INT_FIELD(training_blocks_per_participant),
  };
#undef ERRP_DOUBLE_FIELD
#undef ERRP_INT_FIELD
  return table;
}

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

Config parse_config_text(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = field_table().find(key);
    if (it == field_table().end())
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    it->second.set(cfg, value);
  }
  cfg.validate();
  return cfg;
}

std::string config_to_text(const Config& cfg) {
  std::ostringstream os;
  for (const auto& [key, field] : field_table())
    os << key << " = " << field.get(cfg) << "\n";
  return os.str();
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void save_config(const Config& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config file: " + path);
  out << config_to_text(cfg);
}

}  // namespace errp
