#include "fsdamp/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace fsdamp {

using nlohmann::json;

namespace {

// Line of the first occurrence of "key" in the document, 0 if absent.
int line_of_key(const std::string& text, const std::string& key) {
  const auto pos = text.find("\"" + key + "\"");
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

class ModelReader {
 public:
  ModelReader(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    std::ostringstream msg;
    msg << source_;
    if (const int line = line_of_key(text_, key); line > 0) msg << ":" << line;
    msg << ": field '" << key << "': " << what;
    throw InputError(msg.str());
  }

  const json& field(const json& doc, const std::string& key) const {
    if (!doc.contains(key)) fail(key, "missing");
    return doc.at(key);
  }

  double number(const json& j, const std::string& key) const {
    if (!j.is_number()) fail(key, "expected a number");
    return j.get<double>();
  }

  Vector vector(const json& j, const std::string& key, Index expected = -1) const {
    if (!j.is_array()) fail(key, "expected an array of numbers");
    Vector v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = number(j[i], key);
    if (expected >= 0 && v.size() != expected)
      fail(key, "expected " + std::to_string(expected) + " entries, got " + std::to_string(v.size()));
    return v;
  }

  // Nested rows or a flat row-major array. `rows < 0` infers the row count.
  Matrix matrix(const json& j, const std::string& key, Index rows, Index cols) const {
    if (!j.is_array()) fail(key, "expected a matrix");
    if (!j.empty() && j[0].is_array()) {
      const Index r = static_cast<Index>(j.size());
      if (rows >= 0 && r != rows)
        fail(key, "expected " + std::to_string(rows) + " rows, got " + std::to_string(r));
      Matrix m(r, cols);
      for (Index i = 0; i < r; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols)
          fail(key, "row " + std::to_string(i + 1) + " must have " + std::to_string(cols) +
                        " columns");
        for (Index c = 0; c < cols; ++c) m(i, c) = number(row[static_cast<std::size_t>(c)], key);
      }
      return m;
    }
    const Index count = static_cast<Index>(j.size());
    if (cols == 0 || count % cols != 0 || (rows >= 0 && count != rows * cols))
      fail(key, "flat matrix has " + std::to_string(count) + " entries, which does not fit " +
                    std::to_string(cols) + " columns");
    const Index r = count / cols;
    Matrix m(r, cols);
    for (Index i = 0; i < r; ++i)
      for (Index c = 0; c < cols; ++c)
        m(i, c) = number(j[static_cast<std::size_t>(i * cols + c)], key);
    return m;
  }

  StructuralModel read() const {
    json doc;
    try {
      doc = json::parse(text_);
    } catch (const json::parse_error& e) {
      const auto offset = std::min<std::size_t>(e.byte, text_.size());
      const int line = 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<long>(offset), '\n'));
      throw InputError(source_ + ":" + std::to_string(line) + ": malformed JSON: " + e.what());
    }
    if (!doc.is_object()) throw InputError(source_ + ": model document must be a JSON object");

    const json& nd = field(doc, "n_dof");
    if (!nd.is_number_integer() || nd.get<long>() < 1) fail("n_dof", "expected a positive integer");
    const Index n = nd.get<Index>();

    StructuralModel m;
    m.mass = matrix(field(doc, "mass"), "mass", n, n);
    m.stiffness = matrix(field(doc, "stiffness"), "stiffness", n, n);
    m.influence = vector(field(doc, "influence"), "influence", n);
    m.drift_transform = matrix(field(doc, "drift_transform"), "drift_transform", -1, n);

    const json& da = field(doc, "d_allow");
    if (da.is_number()) {
      m.d_allow = Vector::Constant(m.drift_transform.rows(), da.get<double>());
    } else {
      m.d_allow = vector(da, "d_allow", m.drift_transform.rows());
    }

    const json& dampers = field(doc, "dampers");
    if (!dampers.is_array()) fail("dampers", "expected an array of damper objects");
    for (std::size_t i = 0; i < dampers.size(); ++i) {
      const json& d = dampers[i];
      const std::string label = "dampers[" + std::to_string(i) + "]";
      if (d.contains("row")) {
        m.damper_transforms.push_back(vector(d.at("row"), "row", n).transpose());
      } else if (d.contains("rows")) {
        m.damper_transforms.push_back(matrix(d.at("rows"), "rows", -1, n));
      } else {
        fail("dampers", label + " needs 'row' or 'rows'");
      }
    }

    if (doc.contains("inherent_damping") && doc.contains("rayleigh"))
      fail("rayleigh", "give either inherent_damping or rayleigh, not both");
    if (doc.contains("inherent_damping")) {
      m.inherent_damping = matrix(doc.at("inherent_damping"), "inherent_damping", n, n);
    } else {
      m.inherent_damping = Matrix::Zero(n, n);
    }

    try {
      // Validate before any modal analysis so a bad mass matrix is reported as such.
      m.validate();
      if (doc.contains("rayleigh")) {
        const json& r = doc.at("rayleigh");
        if (!r.is_object() || !r.contains("zeta")) fail("rayleigh", "expected {\"zeta\": <ratio>}");
        m.inherent_damping = build_rayleigh_from_modes(m, number(r.at("zeta"), "zeta"));
      }
    } catch (const InputError&) {
      throw;
    } catch (const std::exception& e) {
      const std::string msg = e.what();
      if (msg.rfind("damper ", 0) == 0) fail("dampers", msg);
      for (const char* key : {"mass", "stiffness", "inherent_damping", "influence",
                              "drift_transform", "d_allow"})
        if (msg.rfind(key, 0) == 0) fail(key, msg);
      fail(doc.contains("rayleigh") ? "rayleigh" : "n_dof", msg);
    }
    return m;
  }

 private:
  const std::string& text_;
  std::string source_;
};

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json vector_json(const Vector& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::string s = line;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::replace(s.begin(), s.end(), '\t', ' ');
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double to_double(const std::string& tok, const std::string& source, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw InputError(source + ":" + std::to_string(line) + ": not a number: '" + tok + "'");
  }
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot write file");
  out << text;
}

StructuralModel parse_model_text(const std::string& text, const std::string& source) {
  return ModelReader(text, source).read();
}

StructuralModel parse_model(const std::filesystem::path& path) {
  return parse_model_text(read_text_file(path), path.string());
}

std::string model_to_json(const StructuralModel& model) {
  json doc;
  doc["units"] = "kN, m, s, ton";
  doc["n_dof"] = model.n_dof();
  doc["mass"] = matrix_json(model.mass);
  doc["stiffness"] = matrix_json(model.stiffness);
  doc["inherent_damping"] = matrix_json(model.inherent_damping);
  doc["influence"] = vector_json(model.influence);
  doc["drift_transform"] = matrix_json(model.drift_transform);
  doc["d_allow"] = vector_json(model.d_allow);
  json dampers = json::array();
  for (const Matrix& t : model.damper_transforms) {
    json d;
    if (t.rows() == 1) {
      d["row"] = vector_json(t.row(0).transpose());
    } else {
      d["rows"] = matrix_json(t);
    }
    dampers.push_back(d);
  }
  doc["dampers"] = dampers;
  return doc.dump(2) + "\n";
}

void write_model(const StructuralModel& model, const std::filesystem::path& path) {
  write_text_file(path, model_to_json(model));
}

GroundMotion parse_ground_motion_text(const std::string& text, const std::string& name,
                                      AccelUnits units) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  double header_dt = -1.0;
  std::vector<double> times;
  std::vector<double> values;
  int columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::string trimmed = line.substr(first);
    if (trimmed.rfind("dt", 0) == 0 && trimmed.find('=') != std::string::npos) {
      if (!values.empty()) throw InputError(name + ":" + std::to_string(line_no) + ": dt header after data");
      auto value = trimmed.substr(trimmed.find('=') + 1);
      const auto f = split_fields(value);
      if (f.size() != 1) throw InputError(name + ":" + std::to_string(line_no) + ": malformed dt header");
      header_dt = to_double(f[0], name, line_no);
      continue;
    }
    const auto fields = split_fields(trimmed);
    const int expected = header_dt > 0.0 ? 1 : 2;
    if (columns == 0) columns = static_cast<int>(fields.size());
    if (static_cast<int>(fields.size()) != expected || columns != expected)
      throw InputError(name + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(expected) + (expected == 1 ? " column" : " columns (time, acceleration)"));
    if (expected == 2) {
      times.push_back(to_double(fields[0], name, line_no));
      values.push_back(to_double(fields[1], name, line_no));
    } else {
      values.push_back(to_double(fields[0], name, line_no));
    }
  }
  if (values.size() < 2) throw InputError(name + ": ground motion needs at least two samples");

  GroundMotion gm;
  gm.name = name;
  if (header_dt > 0.0) {
    gm.dt = header_dt;
  } else if (header_dt == -1.0) {
    gm.dt = times[1] - times[0];
    if (!(gm.dt > 0.0)) throw InputError(name + ": time column must increase");
    for (std::size_t i = 1; i < times.size(); ++i) {
      const double expected_t = times[0] + static_cast<double>(i) * gm.dt;
      if (std::abs(times[i] - expected_t) > 1e-6 * std::max(1.0, std::abs(expected_t)))
        throw InputError(name + ": time column is not uniformly spaced near t = " +
                         std::to_string(times[i]));
    }
  } else {
    throw InputError(name + ": dt must be positive");
  }
  gm.accel.resize(static_cast<Index>(values.size()));
  const double factor = units == AccelUnits::g ? kStandardGravity : 1.0;
  for (std::size_t i = 0; i < values.size(); ++i) gm.accel(static_cast<Index>(i)) = factor * values[i];
  return gm;
}

GroundMotion parse_ground_motion(const std::filesystem::path& path, AccelUnits units) {
  return parse_ground_motion_text(read_text_file(path), path.stem().string(), units);
}

void write_ground_motion(const GroundMotion& gm, const std::filesystem::path& path) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "# " << gm.name << ", acceleration in m/s^2\n";
  out << "dt=" << gm.dt << "\n";
  for (Index i = 0; i < gm.accel.size(); ++i) out << gm.scale * gm.accel(i) << "\n";
  write_text_file(path, out.str());
}

Vector parse_design_text(const std::string& text, Index n_dampers, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::vector<double> values;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    for (const auto& tok : split_fields(line)) values.push_back(to_double(tok, source, line_no));
  }
  if (static_cast<Index>(values.size()) != n_dampers)
    throw InputError(source + ": expected " + std::to_string(n_dampers) + " design values, got " +
                     std::to_string(values.size()));
  Vector x(n_dampers);
  for (Index i = 0; i < n_dampers; ++i) {
    x(i) = values[static_cast<std::size_t>(i)];
    if (!(x(i) >= 0.0 && x(i) <= 1.0)) throw InputError(source + ": design values must lie in [0, 1]");
  }
  return x;
}

}  // namespace fsdamp
