#include <wavebound/y_problem.hpp>

#include <Eigen/QR>
#include <json.hpp>

#include <set>

namespace wavebound {

void NetworkSpec::validate() const {
  if (nodes < 2) throw DomainError("network needs at least two nodes");
  if (edges.empty()) throw DomainError("network has no edges");
  bool has_source = false;
  for (const auto& e : edges) {
    if (e.from < 0 || e.from >= nodes || e.to < 0 || e.to >= nodes) throw DomainError("edge endpoint out of range");
    if (e.from == e.to) throw DomainError("self-loop edges are not allowed");
    if (e.kind == EdgeKind::source) has_source = true;
    if (e.kind == EdgeKind::impedance && std::abs(e.impedance) == 0.0)
      throw DomainError("impedance edges must have nonzero impedance");
  }
  if (!has_source) throw DomainError("network needs at least one source edge");
  Eigen::FullPivLU<MatrixXr> lu(incidence());
  if (lu.rank() != nodes - 1) throw DomainError("network is not connected");
}

MatrixXr NetworkSpec::incidence() const {
  MatrixXr m = MatrixXr::Zero(nodes, static_cast<Eigen::Index>(edges.size()));
  for (std::size_t k = 0; k < edges.size(); ++k) {
    m(edges[k].from, k) = 1.0;
    m(edges[k].to, k) = -1.0;
  }
  return m;
}

std::vector<int> NetworkSpec::source_edges() const {
  std::vector<int> out;
  for (std::size_t k = 0; k < edges.size(); ++k)
    if (edges[k].kind == EdgeKind::source) out.push_back(static_cast<int>(k));
  return out;
}

YProblemInstance network_to_instance(const NetworkSpec& spec) {
  spec.validate();
  const Eigen::Index m = static_cast<Eigen::Index>(spec.edges.size());
  const MatrixXc mt = spec.incidence().transpose().cast<Complex>();
  Eigen::ColPivHouseholderQR<MatrixXc> qr(mt);
  const MatrixXc q = qr.householderQ() * MatrixXc::Identity(m, m);
  MatrixXc qe = q.leftCols(qr.rank());

  const auto sources = spec.source_edges();
  MatrixXc qv = MatrixXc::Zero(m, static_cast<Eigen::Index>(sources.size()));
  for (std::size_t k = 0; k < sources.size(); ++k) qv(sources[k], k) = 1.0;
  VectorXc admittance = VectorXc::Zero(m);
  for (Eigen::Index k = 0; k < m; ++k)
    if (spec.edges[k].kind == EdgeKind::impedance) admittance(k) = 1.0 / spec.edges[k].impedance;
  return YProblemInstance(std::move(qe), std::move(qv), admittance.asDiagonal());
}

NetworkSpec network_from_json(const std::string& text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("network JSON: ") + e.what());
  }
  auto reject_unknown = [](const json& obj, const std::set<std::string>& allowed, const char* where) {
    if (!obj.is_object()) throw DomainError(std::string("network JSON: ") + where + " must be an object");
    for (const auto& item : obj.items())
      if (!allowed.count(item.key()))
        throw DomainError(std::string("network JSON: unknown key '") + item.key() + "' in " + where);
  };
  try {
    reject_unknown(doc, {"nodes", "edges"}, "network");
    NetworkSpec spec;
    spec.nodes = doc.at("nodes").get<int>();
    for (const auto& e : doc.at("edges")) {
      reject_unknown(e, {"from", "to", "kind", "impedance"}, "edge");
      NetworkEdge edge;
      edge.from = e.at("from").get<int>();
      edge.to = e.at("to").get<int>();
      const std::string kind = e.at("kind").get<std::string>();
      if (kind == "source") {
        edge.kind = EdgeKind::source;
        if (e.contains("impedance")) throw DomainError("network JSON: source edges carry no impedance");
      } else if (kind == "impedance") {
        edge.kind = EdgeKind::impedance;
        const auto& z = e.at("impedance");
        edge.impedance = z.is_array() ? Complex(z.at(0).get<Real>(), z.at(1).get<Real>()) : Complex(z.get<Real>());
      } else {
        throw DomainError("network JSON: edge kind must be 'source' or 'impedance'");
      }
      spec.edges.push_back(edge);
    }
    spec.validate();
    return spec;
  } catch (const json::exception& e) {
    throw DomainError(std::string("network JSON: ") + e.what());
  }
}

}  // namespace wavebound
