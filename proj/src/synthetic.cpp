#include "fsdamp/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace fsdamp {

StructuralModel make_shear_frame(const ShearFrameSpec& spec) {
  const Index n = static_cast<Index>(spec.masses.size());
  if (n == 0 || spec.stiffnesses.size() != spec.masses.size())
    throw std::invalid_argument("shear frame needs one mass and one stiffness per story");
  StructuralModel m;
  m.mass = Matrix::Zero(n, n);
  m.stiffness = Matrix::Zero(n, n);
  m.drift_transform = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    m.mass(i, i) = spec.masses[static_cast<std::size_t>(i)];
    const double k = spec.stiffnesses[static_cast<std::size_t>(i)];
    m.stiffness(i, i) += k;
    m.drift_transform(i, i) = 1.0;
    if (i > 0) {
      m.stiffness(i - 1, i - 1) += k;
      m.stiffness(i - 1, i) -= k;
      m.stiffness(i, i - 1) -= k;
      m.drift_transform(i, i - 1) = -1.0;
    }
  }
  m.influence = Vector::Ones(n);
  m.d_allow = Vector::Constant(n, spec.d_allow);
  for (Index i = 0; i < n; ++i) m.damper_transforms.push_back(m.drift_transform.row(i));
  m.inherent_damping = Matrix::Zero(n, n);
  if (spec.zeta > 0.0) {
    m.inherent_damping = n == 1 ? Matrix(2.0 * spec.zeta * std::sqrt(m.stiffness(0, 0) / m.mass(0, 0)) * m.mass)
                                : build_rayleigh_from_modes(m, spec.zeta);
  }
  m.validate();
  return m;
}

GroundMotion make_synthetic_record(const SyntheticRecordSpec& spec) {
  if (!(spec.dt > 0.0) || !(spec.duration > spec.dt) || spec.components < 1)
    throw std::invalid_argument("synthetic record needs dt > 0, duration > dt, components >= 1");
  std::mt19937 rng(spec.seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const Index steps = static_cast<Index>(std::llround(spec.duration / spec.dt));
  std::vector<double> freq, amp, ph;
  for (int k = 0; k < spec.components; ++k) {
    // Log-spaced frequencies, flat amplitude spectrum.
    const double f = spec.f_low * std::pow(spec.f_high / spec.f_low,
                                           spec.components == 1 ? 0.0 : double(k) / (spec.components - 1));
    freq.push_back(2.0 * std::numbers::pi * f);
    amp.push_back(1.0);
    ph.push_back(phase(rng));
  }
  GroundMotion gm;
  gm.name = spec.name;
  gm.dt = spec.dt;
  gm.accel.resize(steps + 1);
  for (Index i = 0; i <= steps; ++i) {
    const double t = spec.dt * static_cast<double>(i);
    double env = 1.0;
    if (t < spec.rise) env = t / spec.rise;
    if (t > spec.decay_start) env = std::exp(-(t - spec.decay_start) / 2.0);
    double s = 0.0;
    for (std::size_t k = 0; k < freq.size(); ++k) s += amp[k] * std::sin(freq[k] * t + ph[k]);
    gm.accel(i) = env * s;
  }
  const double peak = gm.accel.cwiseAbs().maxCoeff();
  if (peak > 0.0) gm.accel *= spec.pga / peak;
  return gm;
}

}  // namespace fsdamp
