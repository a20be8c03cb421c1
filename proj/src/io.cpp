#include "nilkill/io.hpp"

#include <fstream>
#include <sstream>

#include "nilkill/errors.hpp"

namespace nilkill {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError("algebra file: " + what); }

int read_index(const Json& v, int n, const char* what) {
  if (!v.is_number_integer()) fail(std::string(what) + " must be an integer");
  const auto i = v.get<std::int64_t>();
  if (i < 0 || i >= n) fail(std::string(what) + " " + std::to_string(i) + " out of range");
  return static_cast<int>(i);
}

double read_number(const Json& v, const char* what) {
  if (!v.is_number()) fail(std::string(what) + " must be a number");
  return v.get<double>();
}

}  // namespace

Json algebra_to_json(const MetricLieAlgebra& algebra) {
  const int n = algebra.dim();
  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["name"] = algebra.name;
  doc["dim"] = n;
  doc["basis"] = algebra.basis_names;
  Json brackets = Json::array();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double c = algebra.structure(i, j, k);
        if (c != 0.0) brackets.push_back(Json::array({i, j, k, c}));
      }
  doc["brackets"] = brackets;
  if (algebra.gram == Matrix::Identity(n, n)) {
    doc["metric"] = {{"identity", true}};
  } else {
    Json rows = Json::array();
    for (int i = 0; i < n; ++i) {
      Json row = Json::array();
      for (int j = 0; j < n; ++j) row.push_back(algebra.gram(i, j));
      rows.push_back(row);
    }
    doc["metric"] = {{"gram", rows}};
  }
  return doc;
}

static MetricLieAlgebra parse_algebra(const Json& doc) {
  if (!doc.is_object()) fail("top level must be an object");
  if (doc.contains("schema") && doc["schema"] != kSchemaVersion) fail("unsupported schema version");
  if (!doc.contains("dim")) fail("missing \"dim\"");
  if (!doc["dim"].is_number_integer() || doc["dim"].get<std::int64_t>() < 0 ||
      doc["dim"].get<std::int64_t>() > kMaxFormDim) {
    fail("\"dim\" must be an integer in [0, " + std::to_string(kMaxFormDim) + "]");
  }
  const int n = doc["dim"].get<int>();

  MetricLieAlgebra out;
  out.name = doc.value("name", std::string("algebra"));
  if (doc.contains("basis")) {
    if (!doc["basis"].is_array() || static_cast<int>(doc["basis"].size()) != n) {
      fail("\"basis\" must list dim names");
    }
    for (const auto& b : doc["basis"]) {
      if (!b.is_string()) fail("basis names must be strings");
      out.basis_names.push_back(b.get<std::string>());
    }
  } else {
    for (int i = 0; i < n; ++i) out.basis_names.push_back("b" + std::to_string(i));
  }

  out.structure = StructureConstants(n);
  const Json brackets = doc.value("brackets", Json::array());
  if (!brackets.is_array()) fail("\"brackets\" must be an array");
  for (const auto& entry : brackets) {
    if (!entry.is_array() || entry.size() != 4) fail("bracket entries are [i, j, k, c]");
    const int i = read_index(entry[0], n, "bracket index");
    const int j = read_index(entry[1], n, "bracket index");
    const int k = read_index(entry[2], n, "bracket index");
    const double c = read_number(entry[3], "bracket coefficient");
    if (i >= j) fail("bracket entries need i < j");
    if (out.structure(i, j, k) != 0.0) fail("bracket entry listed twice");
    out.structure.set_bracket(i, j, k, c);
  }

  if (!doc.contains("metric")) fail("missing \"metric\"");
  const Json& metric = doc["metric"];
  if (!metric.is_object()) fail("\"metric\" must be an object");
  if (metric.contains("identity")) {
    if (metric["identity"] != true) fail("\"identity\" must be true");
    out.gram = Matrix::Identity(n, n);
  } else if (metric.contains("gram")) {
    const Json& rows = metric["gram"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) fail("gram must be dim x dim");
    out.gram.resize(n, n);
    for (int i = 0; i < n; ++i) {
      if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n) fail("gram must be dim x dim");
      for (int j = 0; j < n; ++j) out.gram(i, j) = read_number(rows[i][j], "gram entry");
    }
  } else {
    fail("\"metric\" needs \"identity\" or \"gram\"");
  }
  return out;
}

MetricLieAlgebra algebra_from_json(const Json& doc) {
  try {
    return parse_algebra(doc);
  } catch (const Json::exception& e) {
    fail(e.what());
  }
}

MetricLieAlgebra load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
  return algebra_from_json(doc);
}

void save_algebra_file(const MetricLieAlgebra& algebra, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << algebra_to_json(algebra).dump(2) << "\n";
}

Json form_to_json(const Form& form, double tol) {
  Json doc;
  doc["dim"] = form.dim();
  doc["degree"] = form.degree();
  Json terms = Json::array();
  for (const Form::Term& t : form.terms(tol)) terms.push_back({{"indices", t.indices}, {"coeff", t.coeff}});
  doc["terms"] = terms;
  return doc;
}

static Form parse_form(const Json& doc) {
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("degree")) {
    throw ParseError("form: needs \"dim\" and \"degree\"");
  }
  const int n = doc["dim"].get<int>();
  const int k = doc["degree"].get<int>();
  if (n < 0 || n > kMaxFormDim || k < 0 || k > n) throw ParseError("form: bad dim or degree");
  Form out(n, k);
  for (const auto& term : doc.value("terms", Json::array())) {
    const auto idx = term.at("indices").get<std::vector<int>>();
    if (static_cast<int>(idx.size()) != k) throw ParseError("form: tuple length differs from degree");
    for (size_t a = 0; a < idx.size(); ++a) {
      if (idx[a] < 0 || idx[a] >= n) throw ParseError("form: index out of range");
      if (a > 0 && idx[a] <= idx[a - 1]) throw ParseError("form: tuples must be increasing");
    }
    out.coeff(indices_mask(idx)) = term.at("coeff").get<double>();
  }
  return out;
}

Form form_from_json(const Json& doc) {
  try {
    return parse_form(doc);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("form: ") + e.what());
  }
}

Json decomposition_to_json(const Decomposition& decomposition) {
  const KillingDimensions dims = killing_dimensions(decomposition);
  Json factors = Json::array();
  for (const FactorReport& f : decomposition.factors) {
    factors.push_back({{"dim", f.dim()},
                       {"dims_vz", Json::array({f.dim_v(), f.dim_z()})},
                       {"complex", f.has_complex_structure},
                       {"nat_reductive", f.naturally_reductive}});
  }
  Json doc;
  doc["d"] = decomposition.d();
  doc["factors"] = factors;
  doc["dimK2"] = dims.dim_k2;
  doc["dimK3"] = dims.dim_k3;
  return doc;
}

Json killing_summary_json(const KillingSpace& space, const std::vector<int>& per_factor) {
  Json doc;
  doc["degree"] = space.degree;
  doc["dim"] = space.dim();
  doc["method"] = to_string(space.method);
  doc["per_factor"] = per_factor;
  return doc;
}

}  // namespace nilkill
