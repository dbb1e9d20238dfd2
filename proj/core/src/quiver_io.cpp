#include "holodet/quiver_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace holodet {

using nlohmann::json;

namespace {

BigRational parse_real(const json& v, const std::string& where) {
  if (v.is_number_integer()) return BigRational(v.get<long long>());
  if (v.is_number_unsigned()) return BigRational::parse(std::to_string(v.get<unsigned long long>()));
  if (v.is_number_float()) {
    double d = v.get<double>();
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, d);
    return BigRational::parse(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
  }
  if (v.is_string()) {
    try {
      return BigRational::parse(v.get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  throw ValidationError(where + ": expected a number or a \"num/den\" string");
}

struct ScalarReader {
  IndeterminateSet* symbols;

  MultiPoly operator()(const json& v, const std::string& where) const {
    if (v.is_object()) {
      if (!v.contains("sym") || !v["sym"].is_string() || v["sym"].get<std::string>().empty()) {
        throw ValidationError(where + ": symbolic scalars are written {\"sym\": name}");
      }
      return MultiPoly::variable(symbols->add(v["sym"].get<std::string>()));
    }
    if (v.is_array()) {
      if (v.size() != 2) throw ValidationError(where + ": complex scalars are [re, im]");
      return MultiPoly(GaussianRational(parse_real(v[0], where), parse_real(v[1], where)));
    }
    return MultiPoly(GaussianRational(parse_real(v, where)));
  }
};

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ValidationError(where + ": missing \"" + key + "\"");
  return obj[key];
}

int require_int(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number_integer()) throw ValidationError(where + ": \"" + key + "\" must be an integer");
  return v.get<int>();
}

std::string edge_id(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ValidationError(where + ": edge ids are strings");
}

template <class F>
Matrix<MultiPoly> read_matrix(const json& v, const std::string& where, F&& scalar) {
  if (!v.is_array() || v.empty()) throw ValidationError(where + ": matrix must be a nonempty array of rows");
  const std::size_t rows = v.size();
  std::size_t cols = 0;
  std::vector<MultiPoly> entries;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array() || v[i].empty()) throw ValidationError(where + ": matrix rows must be nonempty arrays");
    if (i == 0) cols = v[i].size();
    if (v[i].size() != cols) throw ValidationError(where + ": ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) {
      entries.push_back(scalar(v[i][j], where + " entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"));
    }
  }
  return Matrix<MultiPoly>(rows, cols, std::move(entries));
}

Matrix<GaussianRational> constant_matrix(const Matrix<MultiPoly>& m, const std::string& where) {
  return m.map<GaussianRational>([&](const MultiPoly& p) {
    if (!p.is_constant()) throw ValidationError(where + ": distribution matrices must be numeric");
    return p.constant_term();
  });
}

json rational_json(const BigRational& r) {
  if (r.is_integer()) {
    const mpz_class& n = r.raw().get_num();
    if (n.fits_slong_p()) return json(n.get_si());
  }
  return json(r.to_string());
}

json gaussian_json(const GaussianRational& g) { return json::array({rational_json(g.re()), rational_json(g.im())}); }

template <class F>
json write_instance(const Quiver& q, const std::vector<int>& ranks, std::size_t edges, F&& entry_of) {
  json doc;
  doc["p"] = q.vertex_count();
  doc["ranks"] = ranks;
  json arr = json::array();
  for (std::size_t e = 0; e < edges; ++e) {
    const Edge& ed = q.edge(static_cast<int>(e));
    json je;
    je["id"] = ed.id;
    je["src"] = ed.src + 1;
    je["tgt"] = ed.tgt + 1;
    auto [weight, matrix] = entry_of(e);
    je["weight"] = std::move(weight);
    je["matrix"] = std::move(matrix);
    arr.push_back(std::move(je));
  }
  doc["edges"] = std::move(arr);
  if (q.has_involution()) {
    json inv = json::array();
    for (const auto& [a, b] : q.involution()) inv.push_back(json::array({q.edge(a).id, q.edge(b).id}));
    doc["involution"] = std::move(inv);
  }
  return doc;
}

}  // namespace

InstanceDocument parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("instance file must hold a JSON object");
  InstanceDocument out;
  ScalarReader scalar{&out.symbols};

  const int p = require_int(doc, "p", "instance");
  const json& jr = require(doc, "ranks", "instance");
  if (!jr.is_array()) throw ValidationError("instance: \"ranks\" must be an array");
  std::vector<int> ranks;
  for (const auto& r : jr) {
    if (!r.is_number_integer()) throw ValidationError("instance: ranks must be integers");
    ranks.push_back(r.get<int>());
  }
  const json& je = require(doc, "edges", "instance");
  if (!je.is_array()) throw ValidationError("instance: \"edges\" must be an array");

  std::vector<Edge> edges;
  for (std::size_t k = 0; k < je.size(); ++k) {
    const json& e = je[k];
    std::string where = "edge #" + std::to_string(k + 1);
    if (!e.is_object()) throw ValidationError(where + ": must be an object");
    Edge ed;
    ed.id = edge_id(require(e, "id", where), where);
    where = "edge " + ed.id;
    ed.src = require_int(e, "src", where) - 1;
    ed.tgt = require_int(e, "tgt", where) - 1;
    edges.push_back(std::move(ed));
  }
  // Weight symbols are registered before matrix symbols.
  EdgeWeights<MultiPoly> weights;
  for (std::size_t k = 0; k < je.size(); ++k) {
    std::string where = "edge " + edges[k].id;
    weights.push_back(scalar(require(je[k], "weight", where), where + " weight"));
  }
  std::vector<Matrix<MultiPoly>> mats;
  for (std::size_t k = 0; k < je.size(); ++k) {
    std::string where = "edge " + edges[k].id;
    mats.push_back(read_matrix(require(je[k], "matrix", where), where + " matrix", scalar));
  }

  std::vector<std::pair<int, int>> involution;
  auto index_of = [&](const std::string& id) -> int {
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (edges[e].id == id) return static_cast<int>(e);
    }
    throw ValidationError("unknown edge id '" + id + "'");
  };
  if (doc.contains("involution")) {
    const json& ji = doc["involution"];
    if (!ji.is_array()) throw ValidationError("instance: \"involution\" must be an array of id pairs");
    for (const auto& pair : ji) {
      if (!pair.is_array() || pair.size() != 2) throw ValidationError("instance: involution entries are [idA, idB]");
      involution.emplace_back(index_of(edge_id(pair[0], "involution")), index_of(edge_id(pair[1], "involution")));
    }
  }

  out.instance.quiver = Quiver(p, std::move(edges), std::move(involution));
  out.instance.rep.ranks = std::move(ranks);
  out.instance.rep.matrices = std::move(mats);
  out.instance.weights = std::move(weights);
  require_valid(out.instance);

  if (doc.contains("distribution")) {
    const json& jd = doc["distribution"];
    if (!jd.is_object()) throw ValidationError("instance: \"distribution\" maps edge ids to outcome lists");
    RepresentationLaw law;
    for (const auto& [id, outcomes] : jd.items()) {
      int e = out.instance.quiver.edge_index(id);
      std::string where = "distribution of edge " + id;
      if (!outcomes.is_array() || outcomes.empty()) throw ValidationError(where + ": needs a nonempty outcome list");
      EdgeLaw el;
      for (const auto& o : outcomes) {
        if (!o.is_object()) throw ValidationError(where + ": outcomes are {\"prob\", \"matrix\"} objects");
        BigRational prob = parse_real(require(o, "prob", where), where + " prob");
        auto m = read_matrix(require(o, "matrix", where), where + " matrix", [&](const json& v, const std::string& w) {
          if (v.is_object()) throw ValidationError(w + ": distribution matrices must be numeric");
          return ScalarReader{&out.symbols}(v, w);
        });
        el.outcomes.emplace_back(std::move(prob), constant_matrix(m, where));
      }
      law.emplace(e, std::move(el));
    }
    out.distribution = std::move(law);
  }
  return out;
}

InstanceDocument read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string instance_to_json(const Instance<GaussianRational>& inst, int indent) {
  auto doc = write_instance(inst.quiver, inst.rep.ranks, inst.weights.size(), [&](std::size_t e) {
    const GaussianRational& w = inst.weights[e];
    json weight = w.is_real() ? rational_json(w.re()) : gaussian_json(w);
    json rows = json::array();
    const auto& m = inst.rep.matrices[e];
    for (std::size_t i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(gaussian_json(m(i, j)));
      rows.push_back(std::move(row));
    }
    return std::pair{std::move(weight), std::move(rows)};
  });
  return doc.dump(indent);
}

std::string instance_to_json(const Instance<MultiPoly>& inst, const IndeterminateSet& symbols, int indent) {
  auto scalar = [&](const MultiPoly& p) -> json {
    if (p.is_constant()) return gaussian_json(p.constant_term());
    if (p.terms().size() == 1 && p.total_degree() == 1) {
      const auto& [exps, coeff] = *p.terms().begin();
      if (coeff == GaussianRational(1)) return json{{"sym", symbols.name(p.width() - 1)}};
    }
    throw ValidationError("only constants and bare symbols can be written to an instance file");
  };
  auto doc = write_instance(inst.quiver, inst.rep.ranks, inst.weights.size(), [&](std::size_t e) {
    json rows = json::array();
    const auto& m = inst.rep.matrices[e];
    for (std::size_t i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar(m(i, j)));
      rows.push_back(std::move(row));
    }
    return std::pair{scalar(inst.weights[e]), std::move(rows)};
  });
  return doc.dump(indent);
}

}  // namespace holodet
