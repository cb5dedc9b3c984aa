#include "relfix/instance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace relfix {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const json& member(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

std::string text_or(const json& j, const char* key, const std::string& fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_string()) fail(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

double number(const json& j, const std::string& context) {
  if (!j.is_number()) fail("expected a number in " + context);
  return j.get<double>();
}

ComparisonFunction parse_phi(const json& j) {
  if (!j.is_object()) fail("phi spec must be an object");
  const std::string family = member(j, "family").get<std::string>();
  try {
    if (family == "linear") return ComparisonFunction::linear(number(member(j, "k"), "phi.k"));
    if (family == "power")
      return ComparisonFunction::power(number(member(j, "c"), "phi.c"),
                                       number(member(j, "p"), "phi.p"));
    if (family == "table") {
      std::vector<std::pair<double, double>> knots;
      for (const auto& row : member(j, "knots"))
        knots.emplace_back(number(row.at(0), "phi.knots"), number(row.at(1), "phi.knots"));
      return ComparisonFunction::table(std::move(knots));
    }
  } catch (const std::invalid_argument& e) {
    fail(std::string("invalid phi spec: ") + e.what());
  } catch (const PhiCertificationError& e) {
    fail(std::string("invalid phi spec: ") + e.what());
  }
  fail("unknown phi family '" + family + "'");
}

json phi_to_json(const json& original) { return original; }

struct ParsedContraction {
  ImplicitRelation implicit;
  std::optional<ExplicitCondition> explicit_form;
  json canonical;
};

ParsedContraction parse_contraction(const json& j) {
  if (!j.is_object()) fail("contraction spec must be an object");
  const std::string kind = member(j, "kind").get<std::string>();
  try {
    if (kind == "catalog") {
      const std::string id_text = member(j, "id").get<std::string>();
      const auto id = catalog_id_from_string(id_text);
      if (!id) fail("unknown catalog id '" + id_text + "'");
      Params params;
      if (auto it = j.find("params"); it != j.end())
        for (const auto& [key, value] : it->items()) params[key] = number(value, "params");
      std::optional<ComparisonFunction> varphi;
      if (auto it = j.find("phi"); it != j.end()) varphi = parse_phi(*it);
      json canonical{{"kind", "catalog"}, {"id", id_text}};
      if (!params.empty()) canonical["params"] = params;
      if (auto it = j.find("phi"); it != j.end()) canonical["phi"] = phi_to_json(*it);
      return {make_catalog(*id, params, varphi), std::nullopt, canonical};
    }
    if (kind == "corollary3") {
      if (!member(j, "id").is_number_integer()) fail("corollary3 id must be an integer");
      const int id = member(j, "id").get<int>();
      Params params;
      if (auto it = j.find("params"); it != j.end())
        for (const auto& [key, value] : it->items()) params[key] = number(value, "params");
      std::optional<ComparisonFunction> varphi;
      if (auto it = j.find("phi"); it != j.end()) varphi = parse_phi(*it);
      ExplicitCondition cond = make_explicit_condition(id, params, varphi);
      json canonical{{"kind", "corollary3"}, {"id", id}};
      if (!params.empty()) canonical["params"] = params;
      if (auto it = j.find("phi"); it != j.end()) canonical["phi"] = phi_to_json(*it);
      ImplicitRelation implicit = cond.implicit;
      return {std::move(implicit), std::move(cond), canonical};
    }
    if (kind == "linear") {
      const auto& coeffs = member(j, "coefficients");
      if (!coeffs.is_array() || coeffs.size() != 6)
        fail("linear contraction needs exactly six coefficients");
      std::array<double, 6> c{};
      for (std::size_t i = 0; i < 6; ++i) c[i] = number(coeffs.at(i), "coefficients");
      json canonical{{"kind", "linear"}, {"coefficients", c}};
      return {make_linear_combination(c), std::nullopt, canonical};
    }
    if (kind == "quotient-ratio") {
      ComparisonFunction varphi = parse_phi(member(j, "phi"));
      json canonical{{"kind", "quotient-ratio"}, {"phi", phi_to_json(member(j, "phi"))}};
      return {make_quotient_ratio(varphi), std::nullopt, canonical};
    }
  } catch (const std::invalid_argument& e) {
    fail(std::string("invalid contraction spec: ") + e.what());
  } catch (const PhiCertificationError& e) {
    fail(std::string("invalid contraction spec: ") + e.what());
  }
  fail("unknown contraction kind '" + kind + "'");
}

FiniteInstance parse_finite(const json& j) {
  const json& space_j = member(j, "space");
  std::vector<std::string> labels;
  for (const auto& l : member(space_j, "labels")) {
    if (!l.is_string()) fail("labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  const std::size_t n = labels.size();
  if (n == 0) fail("space needs at least one label");

  auto index_of = [&labels](const std::string& label) -> std::size_t {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return i;
    fail("unknown label '" + label + "'");
  };

  std::vector<std::size_t> subspace;
  for (const auto& l : member(j, "subspace")) subspace.push_back(index_of(l.get<std::string>()));

  std::optional<std::vector<double>> coordinates;
  std::vector<double> matrix;
  if (auto it = space_j.find("coordinates"); it != space_j.end()) {
    coordinates.emplace();
    for (const auto& c : *it) coordinates->push_back(number(c, "coordinates"));
    if (coordinates->size() != n) fail("coordinate count does not match label count");
  } else if (auto mt = space_j.find("matrix"); mt != space_j.end()) {
    if (!mt->is_array() || mt->size() != n) fail("matrix must have one row per label");
    for (const auto& row : *mt) {
      if (!row.is_array() || row.size() != n) fail("matrix rows must have one entry per label");
      for (const auto& cell : row) matrix.push_back(number(cell, "matrix"));
    }
  } else {
    fail("space needs either 'coordinates' or 'matrix'");
  }

  FiniteMetricSpace space =
      coordinates
          ? FiniteMetricSpace::from_coordinates(labels, *coordinates, subspace)
          : FiniteMetricSpace(labels, std::move(matrix), subspace);
  if (const auto violation = validate_metric(space))
    fail("distance matrix is not a metric: " + violation->describe());

  std::vector<IndexPair> edges;
  for (const auto& e : member(j, "relation")) {
    if (!e.is_array() || e.size() != 2) fail("relation edges must be label pairs");
    edges.emplace_back(index_of(e.at(0).get<std::string>()),
                       index_of(e.at(1).get<std::string>()));
  }
  if (edges.empty()) fail("relation must have a non-empty edge set");
  Relation relation(n, edges);

  const json& maps = member(j, "maps");
  auto parse_map = [&](const char* key) {
    const json& table = member(maps, key);
    SelfMap m(n, 0);
    std::vector<char> seen(n, 0);
    for (const auto& [from, to] : table.items()) {
      const std::size_t i = index_of(from);
      m[i] = index_of(to.get<std::string>());
      seen[i] = 1;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (!seen[i]) fail(std::string("map ") + key + " is not total: missing '" + labels[i] + "'");
    return m;
  };
  MappingPair pair(parse_map("T"), parse_map("g"));

  ParsedContraction contraction = parse_contraction(member(j, "contraction"));

  SolverOptions options;
  json options_json = json::object();
  if (auto it = j.find("options"); it != j.end()) {
    if (auto x0 = it->find("x0"); x0 != it->end()) {
      options.x0 = index_of(x0->get<std::string>());
      options_json["x0"] = x0->get<std::string>();
    }
    if (auto tol = it->find("tol"); tol != it->end())
      options.tol = number(*tol, "options.tol");
    if (auto mi = it->find("max_iter"); mi != it->end()) {
      if (!mi->is_number_integer()) fail("options.max_iter must be an integer");
      options.max_iter = mi->get<std::size_t>();
    }
    if (auto req = it->find("require"); req != it->end()) {
      const auto rank = rank_from_string(req->get<std::string>());
      if (!rank) fail("unknown conclusion rank '" + req->get<std::string>() + "'");
      options.require = *rank;
    }
  }
  options_json["tol"] = options.tol;
  options_json["max_iter"] = options.max_iter;
  options_json["require"] = to_string(options.require);

  // Canonical form: normalized components, alphabetical keys.
  json canonical;
  canonical["mode"] = "finite";
  canonical["name"] = text_or(j, "name", "");
  if (auto c = text_or(j, "comment", ""); !c.empty()) canonical["comment"] = c;
  canonical["space"]["labels"] = labels;
  if (coordinates) {
    canonical["space"]["coordinates"] = *coordinates;
  } else {
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) rows[i][k] = space.distance(i, k);
    canonical["space"]["matrix"] = rows;
  }
  {
    std::vector<std::string> sub_labels;
    for (std::size_t i : subspace) sub_labels.push_back(labels[i]);
    canonical["subspace"] = sub_labels;
    std::vector<std::vector<std::string>> edge_labels;
    for (const auto& [a, b] : relation.edges())
      edge_labels.push_back({labels[a], labels[b]});
    canonical["relation"] = edge_labels;
    json t_map = json::object(), g_map = json::object();
    for (std::size_t i = 0; i < n; ++i) {
      t_map[labels[i]] = labels[pair.t_of(i)];
      g_map[labels[i]] = labels[pair.g_of(i)];
    }
    canonical["maps"]["T"] = t_map;
    canonical["maps"]["g"] = g_map;
  }
  canonical["contraction"] = contraction.canonical;
  canonical["options"] = options_json;

  return FiniteInstance{text_or(j, "name", "unnamed"),
                        text_or(j, "comment", ""),
                        std::move(space),
                        std::move(relation),
                        std::move(pair),
                        std::move(contraction.implicit),
                        std::move(contraction.explicit_form),
                        options,
                        canonical.dump(2) + "\n"};
}

UrysohnInstance parse_urysohn(const json& j) {
  UrysohnProblem problem;
  problem.name = text_or(j, "name", "urysohn");

  const json& kernel = member(j, "kernel");
  const std::string kernel_id = member(kernel, "id").get<std::string>();
  const double lambda = number(member(kernel, "lambda"), "kernel.lambda");
  if (kernel_id == "linear") {
    problem.kernel = [lambda](double, double, double u) { return lambda * u; };
    problem.kernel_t_dependent = false;
  } else if (kernel_id == "sin") {
    problem.kernel = [lambda](double, double, double u) { return lambda * std::sin(u); };
    problem.kernel_t_dependent = false;
  } else {
    fail("unknown kernel id '" + kernel_id + "'");
  }

  const json& alpha = member(j, "alpha");
  json alpha_canonical;
  if (auto poly = alpha.find("poly"); poly != alpha.end()) {
    std::vector<double> coeffs;
    for (const auto& c : *poly) coeffs.push_back(number(c, "alpha.poly"));
    problem.alpha = [coeffs](double t) {
      double acc = 0.0;
      for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * t + coeffs[i];
      return acc;
    };
    alpha_canonical["poly"] = coeffs;
  } else {
    fail("alpha needs a 'poly' coefficient list");
  }

  const json& g_spec = member(j, "g");
  const std::string g_id = member(g_spec, "id").get<std::string>();
  json g_canonical{{"id", g_id}};
  if (g_id == "identity") {
    // defaults already identity
  } else if (g_id == "scale") {
    const double a = number(member(g_spec, "a"), "g.a");
    if (a == 0.0) fail("g scale factor must be non-zero");
    problem.g = [a](double u) { return a * u; };
    problem.g_inverse = [a](double u) { return u / a; };
    problem.g_is_identity = false;
    g_canonical["a"] = a;
  } else {
    fail("unknown g id '" + g_id + "'");
  }
  // g composed with its inverse must act as the identity on probe values.
  for (double probe : {-1.0, 0.0, 0.5, 2.0})
    if (std::fabs(problem.g(problem.g_inverse(probe)) - probe) > 1e-10)
      fail("g-inverse does not invert g at probe " + std::to_string(probe));

  const json& eta = member(j, "eta");
  const std::string eta_id = member(eta, "id").get<std::string>();
  if (eta_id == "always") {
    problem.eta = [](double, double) { return -1.0; };
  } else if (eta_id == "leq") {
    problem.eta = [](double a, double b) { return a - b; };
  } else {
    fail("unknown eta id '" + eta_id + "'");
  }

  problem.phi = parse_phi(member(j, "phi"));
  problem.horizon = number(member(j, "horizon"), "horizon");
  if (!(problem.horizon > 0.0)) fail("horizon must be positive");
  if (!member(j, "grid").is_number_integer()) fail("grid must be an integer");
  problem.grid_size = member(j, "grid").get<std::size_t>();
  if (problem.grid_size < 1) fail("grid must be at least 1");

  if (auto a = j.find("assertions"); a != j.end())
    if (auto h3 = a->find("h3"); h3 != a->end()) problem.h3_asserted = h3->get<bool>();

  UrysohnOptions options;
  if (auto it = j.find("options"); it != j.end()) {
    if (auto tol = it->find("tol"); tol != it->end()) options.tol = number(*tol, "options.tol");
    if (auto mi = it->find("max_iter"); mi != it->end()) {
      if (!mi->is_number_integer()) fail("options.max_iter must be an integer");
      options.max_iter = mi->get<std::size_t>();
    }
  }

  json canonical;
  canonical["mode"] = "urysohn";
  canonical["name"] = problem.name;
  if (auto c = text_or(j, "comment", ""); !c.empty()) canonical["comment"] = c;
  canonical["kernel"] = {{"id", kernel_id}, {"lambda", lambda}};
  canonical["alpha"] = alpha_canonical;
  canonical["g"] = g_canonical;
  canonical["eta"] = {{"id", eta_id}};
  canonical["phi"] = member(j, "phi");
  canonical["horizon"] = problem.horizon;
  canonical["grid"] = problem.grid_size;
  canonical["assertions"] = {{"h3", problem.h3_asserted}};
  canonical["options"] = {{"tol", options.tol}, {"max_iter", options.max_iter}};

  return UrysohnInstance{problem.name, text_or(j, "comment", ""), std::move(problem), options,
                         canonical.dump(2) + "\n"};
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("instance must be a JSON object");
  const std::string mode = text_or(j, "mode", "finite");
  try {
    if (mode == "finite") return parse_finite(j);
    if (mode == "urysohn") return parse_urysohn(j);
  } catch (const ParseError&) {
    throw;
  } catch (const json::exception& e) {
    fail(std::string("malformed instance: ") + e.what());
  } catch (const std::exception& e) {
    fail(std::string("invalid instance: ") + e.what());
  }
  fail("unknown mode '" + mode + "'");
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

std::string canonical_json(const Instance& instance) {
  if (const auto* f = std::get_if<FiniteInstance>(&instance)) return f->canonical_text;
  return std::get<UrysohnInstance>(instance).canonical_text;
}

std::string instance_digest(const Instance& instance) {
  const std::string text = canonical_json(instance);
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[hash & 0xf];
    hash >>= 4;
  }
  return out;
}

}  // namespace relfix
