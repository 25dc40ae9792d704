#include "sptmbqc/mps.hpp"

#include "json.hpp"

namespace sptmbqc {

namespace {

using nlohmann::json;

constexpr const char* kSchemaPrefix = "sptmbqc.tensor/";
constexpr int kSchemaVersion = 1;

json mat_to_json(const Mat& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      data.push_back({m(r, c).real(), m(r, c).imag()});
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Mat mat_from_json(const json& j) {
  const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (rows < 0 || cols < 0 ||
      data.size() != static_cast<size_t>(rows) * static_cast<size_t>(cols))
    throw ValidationError("matrix entry count mismatch");
  Mat m(rows, cols);
  size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c, ++k)
      m(r, c) = cx(data[k].at(0).get<double>(), data[k].at(1).get<double>());
  return m;
}

int parse_schema(const std::string& tag) {
  const std::string prefix(kSchemaPrefix);
  if (tag.rfind(prefix, 0) != 0)
    throw ValidationError("unrecognized schema tag: " + tag);
  const int version = std::stoi(tag.substr(prefix.size()));
  if (version > kSchemaVersion)
    throw ValidationError("input written by a newer format version: " + tag);
  return version;
}

}  // namespace

std::string tensor_to_json(const MPSTensor& t) {
  json j;
  j["schema"] = kSchemaPrefix + std::to_string(kSchemaVersion);
  j["phys_dim"] = t.phys_dim;
  j["logical_dim"] = t.logical_dim;
  j["junk_dim"] = t.junk_dim;
  j["group_orders"] = t.symmetry_group.orders;
  j["matrices"] = json::array();
  for (const Mat& m : t.matrices) j["matrices"].push_back(mat_to_json(m));
  if (t.factorization) {
    json f;
    f["logical"] = json::array();
    f["junk"] = json::array();
    for (const Mat& m : t.factorization->logical) f["logical"].push_back(mat_to_json(m));
    for (const Mat& m : t.factorization->junk) f["junk"].push_back(mat_to_json(m));
    j["factorization"] = std::move(f);
  }
  if (!t.wire_basis_labels.empty()) {
    j["wire_basis_labels"] = json::array();
    for (const Character& chi : t.wire_basis_labels)
      j["wire_basis_labels"].push_back(chi.exponents);
  }
  return j.dump(2);
}

MPSTensor tensor_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed tensor JSON: ") + e.what());
  }
  try {
    parse_schema(j.at("schema").get<std::string>());
    MPSTensor t;
    t.phys_dim = j.at("phys_dim").get<long long>();
    t.logical_dim = j.at("logical_dim").get<long long>();
    t.junk_dim = j.at("junk_dim").get<long long>();
    t.symmetry_group =
        FiniteAbelianGroup{j.at("group_orders").get<std::vector<long long>>()};
    for (const auto& m : j.at("matrices")) t.matrices.push_back(mat_from_json(m));
    if (j.contains("factorization")) {
      MPSTensor::Factorization f;
      for (const auto& m : j["factorization"].at("logical"))
        f.logical.push_back(mat_from_json(m));
      for (const auto& m : j["factorization"].at("junk"))
        f.junk.push_back(mat_from_json(m));
      t.factorization = std::move(f);
    }
    if (j.contains("wire_basis_labels")) {
      for (const auto& e : j["wire_basis_labels"])
        t.wire_basis_labels.push_back(Character{e.get<std::vector<long long>>()});
    }
    validate_tensor(t);
    return t;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("tensor JSON missing fields: ") + e.what());
  }
}

}  // namespace sptmbqc
