#include "hetmos/checkpoint.hpp"

#include <json.hpp>

#include <algorithm>

#include "hetmos/errors.hpp"
#include "hetmos/io_util.hpp"

namespace hetmos {
namespace {

using nlohmann::json;

json matrix_to_json(const Matrix<double>& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vector<double>& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Matrix<double> matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw CheckpointError(where + ": expected a non-empty nested array");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  Matrix<double> m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw CheckpointError(where + ": ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) throw CheckpointError(where + ": non-numeric entry");
      m(r, c) = v.get<double>();
    }
  }
  return m;
}

Vector<double> vector_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw CheckpointError(where + ": expected an array");
  Vector<double> v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw CheckpointError(where + ": non-numeric entry");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

json arch_to_json(const ArchConfig& a) {
  return json{{"input_dim", a.input_dim},
              {"trunk_dims", a.trunk_dims},
              {"head_hidden_dim", a.head_hidden_dim},
              {"dropout_p", a.dropout_p},
              {"activation", to_string(a.activation)}};
}

ArchConfig arch_from_json(const json& j) {
  ArchConfig a;
  try {
    a.input_dim = j.at("input_dim").get<int>();
    a.trunk_dims = j.at("trunk_dims").get<std::vector<int>>();
    a.head_hidden_dim = j.at("head_hidden_dim").get<int>();
    a.dropout_p = j.at("dropout_p").get<double>();
    a.activation = activation_from_string(j.at("activation").get<std::string>());
  } catch (const json::exception& e) {
    throw CheckpointError(std::string("invalid arch block: ") + e.what());
  }
  a.validate();
  return a;
}

// Byte offset -> "line L, column C" for parse diagnostics.
std::string line_context(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

std::string checkpoint_to_string(const Checkpoint& ckpt) {
  const auto& p = ckpt.model.params;
  json weights, biases;
  weights["trunk"] = json::array();
  biases["trunk"] = json::array();
  for (const auto& layer : p.trunk) {
    weights["trunk"].push_back(matrix_to_json(layer.weight));
    biases["trunk"].push_back(vector_to_json(layer.bias));
  }
  auto head = [&](const char* name, const Head<double>& h) {
    weights[name] = json::array({matrix_to_json(h.hidden.weight), matrix_to_json(h.out.weight)});
    biases[name] = json::array({vector_to_json(h.hidden.bias), vector_to_json(h.out.bias)});
  };
  head("score_head", p.score);
  head("logvar_head", p.logvar);

  json doc{{"format_version", kCheckpointFormatVersion},
           {"arch", arch_to_json(ckpt.model.arch)},
           {"weights", std::move(weights)},
           {"biases", std::move(biases)},
           {"rng_seed_used", ckpt.model.rng_seed_used}};
  if (ckpt.calibration_r) doc["calibration_r"] = *ckpt.calibration_r;
  return doc.dump(2) + "\n";
}

Checkpoint checkpoint_from_string(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": malformed checkpoint at " + line_context(text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(source + ": checkpoint must be a JSON object");
  if (!doc.contains("format_version") || !doc["format_version"].is_number_integer())
    throw VersionError(source + ": missing format_version");
  const int version = doc["format_version"].get<int>();
  if (version != kCheckpointFormatVersion)
    throw VersionError(source + ": unsupported format_version " + std::to_string(version) + " (expected " +
                       std::to_string(kCheckpointFormatVersion) + ")");
  if (!doc.contains("arch")) throw CheckpointError(source + ": missing arch");
  if (!doc.contains("weights") || !doc.contains("biases"))
    throw CheckpointError(source + ": checkpoint carries no trained weights");

  Checkpoint ckpt;
  ckpt.model.arch = arch_from_json(doc["arch"]);
  const auto& w = doc["weights"];
  const auto& b = doc["biases"];
  try {
    const auto& wt = w.at("trunk");
    const auto& bt = b.at("trunk");
    if (wt.size() != bt.size()) throw CheckpointError(source + ": trunk weights and biases differ in depth");
    for (std::size_t i = 0; i < wt.size(); ++i)
      ckpt.model.params.trunk.push_back({matrix_from_json(wt[i], source + " trunk weight"),
                                         vector_from_json(bt[i], source + " trunk bias")});
    auto head = [&](const char* name, Head<double>& h) {
      const auto& hw = w.at(name);
      const auto& hb = b.at(name);
      if (hw.size() != 2 || hb.size() != 2) throw CheckpointError(source + ": head '" + name + "' needs two layers");
      h.hidden = {matrix_from_json(hw[0], source + " " + name), vector_from_json(hb[0], source + " " + name)};
      h.out = {matrix_from_json(hw[1], source + " " + name), vector_from_json(hb[1], source + " " + name)};
    };
    head("score_head", ckpt.model.params.score);
    head("logvar_head", ckpt.model.params.logvar);
    ckpt.model.rng_seed_used = doc.at("rng_seed_used").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw CheckpointError(source + ": " + e.what());
  }
  if (doc.contains("calibration_r")) {
    const double r = doc["calibration_r"].get<double>();
    if (!(r > 0.0)) throw CheckpointError(source + ": calibration_r must be positive");
    ckpt.calibration_r = r;
  }
  try {
    check_params(ckpt.model);
  } catch (const Error& e) {
    throw CheckpointError(source + ": " + e.what());
  }
  return ckpt;
}

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  write_file_atomic(path, checkpoint_to_string(ckpt));
}

Checkpoint load_checkpoint(const std::string& path) { return checkpoint_from_string(read_file(path), path); }

}  // namespace hetmos
