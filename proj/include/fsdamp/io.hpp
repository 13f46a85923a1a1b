#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "fsdamp/dynamics.hpp"
#include "fsdamp/model.hpp"

namespace fsdamp {

/// Malformed or inconsistent user input. The message names the file, the
/// field and, where known, the line.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a JSON model document:
///
///   n_dof            integer
///   mass, stiffness  n_dof x n_dof, nested rows or flat row-major   [ton], [kN/m]
///   inherent_damping optional matrix [kNs/m], or
///   rayleigh         optional {"zeta": 0.05}: fit to the two lowest modes
///   influence        n_dof vector
///   drift_transform  N_drifts x n_dof matrix (rows of length n_dof)
///   d_allow          N_drifts vector or a single number [m]
///   dampers          [{"row": [...]} | {"rows": [[...], ...]}, ...]
///
/// The result is validated; failures throw InputError.
StructuralModel parse_model_text(const std::string& text, const std::string& source = "<model>");
StructuralModel parse_model(const std::filesystem::path& path);

/// Writes a model in the format read by parse_model (inherent damping explicit).
std::string model_to_json(const StructuralModel& model);
void write_model(const StructuralModel& model, const std::filesystem::path& path);

enum class AccelUnits { m_per_s2, g };

inline constexpr double kStandardGravity = 9.80665;

/// Reads a record either as two columns "time accel" with uniform spacing or
/// as a "dt=<s>" header followed by one acceleration per line. Blank lines and
/// lines starting with '#' are skipped; commas are accepted as separators.
GroundMotion parse_ground_motion_text(const std::string& text, const std::string& name,
                                      AccelUnits units = AccelUnits::m_per_s2);
GroundMotion parse_ground_motion(const std::filesystem::path& path,
                                 AccelUnits units = AccelUnits::m_per_s2);

void write_ground_motion(const GroundMotion& gm, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Design file: one normalized variable per line (or comma/space separated).
Vector parse_design_text(const std::string& text, Index n_dampers, const std::string& source);

}  // namespace fsdamp
