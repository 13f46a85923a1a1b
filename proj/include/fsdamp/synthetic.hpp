#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fsdamp/dynamics.hpp"
#include "fsdamp/model.hpp"

namespace fsdamp {

/// Planar shear building, story 1 at the base. One damper per story acting on
/// the story drift; drift rows are the same story drifts.
struct ShearFrameSpec {
  std::vector<double> masses;      // [ton]
  std::vector<double> stiffnesses; // [kN/m]
  double zeta = 0.05;              // Rayleigh ratio on modes 1 and 2
  double d_allow = 0.035;          // [m]
};

StructuralModel make_shear_frame(const ShearFrameSpec& spec);

/// Deterministic broadband record: a trapezoid-enveloped sum of sinusoids with
/// seeded phases, scaled to the requested peak acceleration.
struct SyntheticRecordSpec {
  std::string name = "synthetic";
  double duration = 20.0;
  double dt = 0.01;
  double pga = 3.0;            // [m/s^2]
  double f_low = 0.5;          // [Hz]
  double f_high = 8.0;         // [Hz]
  int components = 40;
  double rise = 2.0;           // [s]
  double decay_start = 12.0;   // [s]
  std::uint32_t seed = 1;
};

GroundMotion make_synthetic_record(const SyntheticRecordSpec& spec);

}  // namespace fsdamp
