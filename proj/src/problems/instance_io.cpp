#include "relmirror/problems/instance_io.hpp"

#include <fstream>

namespace relmirror {

using nlohmann::json;

json vector_to_json(const Vector& v) { return to_std(v); }

Vector vector_from_json(const json& doc) {
  if (!doc.is_array()) throw InvalidInput("expected an array of numbers");
  Vector out(static_cast<Index>(doc.size()));
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (!doc[i].is_number()) throw InvalidInput("expected an array of numbers");
    out[static_cast<Index>(i)] = doc[i].get<double>();
  }
  return out;
}

json matrix_to_json(const Matrix& a) {
  json rows = json::array();
  for (Index i = 0; i < a.rows(); ++i) rows.push_back(vector_to_json(a.row(i).transpose()));
  return rows;
}

Matrix matrix_from_json(const json& doc) {
  if (!doc.is_array() || doc.empty()) throw InvalidInput("expected a nonempty array of rows");
  const Index rows = static_cast<Index>(doc.size());
  const Vector first = vector_from_json(doc[0]);
  Matrix out(rows, first.size());
  for (Index i = 0; i < rows; ++i) {
    const Vector r = vector_from_json(doc[static_cast<std::size_t>(i)]);
    if (r.size() != first.size()) throw InvalidInput("ragged matrix rows");
    out.row(i) = r.transpose();
  }
  return out;
}

json instance_to_json(const SvmInstance& inst) {
  return {{"kind", "svm"},
          {"n", inst.sample_count()},
          {"m", inst.dimension()},
          {"lambda", inst.lambda()},
          {"features", matrix_to_json(inst.features())},
          {"labels", vector_to_json(inst.labels())}};
}

json instance_to_json(const IepInstance& inst) {
  json pieces = json::array();
  for (const Quadratic& q : inst.quadratics()) {
    pieces.push_back({{"A", matrix_to_json(q.a)}, {"b", vector_to_json(q.b)}, {"c", q.c}});
  }
  return {{"kind", "iep"}, {"n", inst.piece_count()}, {"m", inst.dimension()}, {"quadratics", pieces}};
}

json instance_to_json(const Instance& inst) {
  return std::visit([](const auto& i) { return instance_to_json(i); }, inst);
}

Instance instance_from_json(const json& doc) {
  try {
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "svm") {
      return SvmInstance(matrix_from_json(doc.at("features")), vector_from_json(doc.at("labels")),
                         doc.at("lambda").get<double>());
    }
    if (kind == "iep") {
      std::vector<Quadratic> pieces;
      for (const json& q : doc.at("quadratics")) {
        pieces.push_back({matrix_from_json(q.at("A")), vector_from_json(q.at("b")),
                          q.at("c").get<double>()});
      }
      return IepInstance(std::move(pieces));
    }
    throw InvalidInput("unknown instance kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("instance document: ") + e.what());
  }
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
  return instance_from_json(doc);
}

}  // namespace relmirror
