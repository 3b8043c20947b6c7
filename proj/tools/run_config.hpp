#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cochlea/asymptotics.hpp"
#include "cochlea/cochlea_params.hpp"
#include "cochlea/field.hpp"
#include "cochlea/geometry.hpp"
#include "cochlea/incident.hpp"

namespace cochlea::app {

struct Grid {
  double min = 0.0;
  double max = 0.0;
  std::size_t points = 0;

  std::vector<double> values() const;  ///< evenly spaced, both ends included
};

struct LineSpec {
  std::size_t points = 1000;
  double margin = 0.1;  ///< in array lengths, each side
};

struct RunConfig {
  nlohmann::json geometry = nlohmann::json::object();
  int truncation = 3;
  ResonanceSearch search;
  bool refine = true;  ///< full-system verification of every resonance
  DiskQuadrature quadrature;
  IncidentWave incident = IncidentWave::pulse(0.01, 1.0);

  struct Modes {
    LineSpec line;
    std::size_t grid_x = 240;
    std::size_t grid_y = 60;
    double grid_margin = 0.1;
  } modes;

  Grid sweep{0.0000625, 0.025, 400};

  struct Decompose {
    Grid omegas{0.0000625, 0.025, 400};
    Grid carriers{0.0000625, 0.025, 400};
  } decompose;

  struct Wave {
    std::string excitation = "uniform";  ///< uniform | pulse
    double pulse_duration = 0.1;
    double pulse_omega_in = 0.01;
    double t_max = 3000.0;
    std::size_t time_points = 400;
    LineSpec line{400, 0.05};
  } wave;

  struct Tonotopy {
    LineSpec line{2000, 0.1};
    bool automatic = true;
    std::vector<std::size_t> exclude;  ///< 1-based mode numbers
  } tonotopy;

  CochleaInputs params;

  /// Debug output: the assembled operators at one real frequency, written by
  /// the resonances command.
  struct Dump {
    bool operators = false;
    double omega = 0.01;
  } dump;

  /// The config as read, with every default filled in.
  nlohmann::json echo() const;
};

/// Throws ConfigError naming the offending field.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

}  // namespace cochlea::app
