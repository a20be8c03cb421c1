#include "nilkill/cli.hpp"

#include <algorithm>
#include <optional>

#include "CLI11.hpp"
#include "nilkill/catalog.hpp"
#include "nilkill/errors.hpp"
#include "nilkill/killing.hpp"
#include "nilkill/random.hpp"
#include "nilkill/structure.hpp"

namespace nilkill {

namespace {

struct RunConfig {
  std::string input;
  double tol = kDefaultTol;
  bool json = false;
  std::string method = "auto";
  int degree = 0;
  std::uint64_t seed = 0;
  bool random_metric = false;
  CatalogParams params;
  std::string catalog_name;
};

// Thrown when a verification inside a command fails; carries the report.
struct Mismatch {
  Json report;
};

bool is_scalar(const Json& v) { return !v.is_structured(); }

bool is_flat(const Json& v) {
  if (is_scalar(v)) return true;
  if (v.is_array()) return std::all_of(v.begin(), v.end(), is_scalar);
  return false;
}

std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string flat_text(const Json& v) {
  if (is_scalar(v)) return scalar_text(v);
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_text(v[i]);
  return s + "]";
}

bool is_record(const Json& v) {
  return v.is_object() && std::all_of(v.begin(), v.end(), is_flat);
}

void render(const Json& v, std::ostream& out, int indent) {
  const std::string pad(indent, ' ');
  if (v.is_object()) {
    for (const auto& [key, value] : v.items()) {
      if (is_flat(value)) {
        out << pad << key << ": " << flat_text(value) << "\n";
      } else {
        out << pad << key << ":\n";
        render(value, out, indent + 2);
      }
    }
  } else if (v.is_array()) {
    for (const auto& item : v) {
      if (is_record(item)) {
        out << pad << "-";
        for (const auto& [key, value] : item.items()) out << " " << key << "=" << flat_text(value);
        out << "\n";
      } else if (is_flat(item)) {
        out << pad << "- " << flat_text(item) << "\n";
      } else {
        out << pad << "-\n";
        render(item, out, indent + 2);
      }
    }
  } else {
    out << pad << scalar_text(v) << "\n";
  }
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json header(const std::string& command) {
  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["command"] = command;
  return doc;
}

MetricLieAlgebra load_input(const RunConfig& cfg) {
  MetricLieAlgebra algebra;
  const std::string prefix = "catalog:";
  if (cfg.input.rfind(prefix, 0) == 0) {
    algebra = build_catalog(cfg.input.substr(prefix.size()), cfg.params);
  } else {
    algebra = load_algebra_file(cfg.input);
  }
  if (cfg.random_metric) {
    Rng rng(cfg.seed);
    algebra = with_random_metric(algebra, rng);
  }
  const ValidationReport report = validate(algebra, cfg.tol);
  if (!report.ok()) {
    std::string msg = "invalid algebra '" + algebra.name + "':";
    for (const auto& v : report.violations) msg += "\n  " + v;
    throw InvalidAlgebra(msg);
  }
  return algebra;
}

Json factor_list(const Decomposition& dec) { return decomposition_to_json(dec)["factors"]; }

Json cmd_analyze(const RunConfig& cfg) {
  const MetricLieAlgebra algebra = load_input(cfg);
  const Decomposition dec = decompose(algebra, cfg.tol);
  const KillingDimensions dims = killing_dimensions(dec);
  const AdaptedFrame& f = dec.ambient;

  std::vector<double> eig;
  if (f.dim_z() > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(j_trace_form(f), Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) eig.push_back(solver.eigenvalues()(i));
  }

  Json doc = header("analyze");
  doc["algebra"] = algebra.name;
  doc["n"] = f.dim();
  doc["dim_v"] = f.dim_v();
  doc["dim_z"] = f.dim_z();
  doc["d"] = dims.d;
  doc["factors"] = factor_list(dec);
  doc["dimK2"] = dims.dim_k2;
  doc["dimK3"] = dims.dim_k3;
  doc["r2"] = dims.r2;
  doc["r3"] = dims.r3;
  doc["j_trace_eigenvalues"] = eig;
  return doc;
}

Json cmd_decompose(const RunConfig& cfg) {
  const MetricLieAlgebra algebra = load_input(cfg);
  const Decomposition dec = decompose(algebra, cfg.tol);
  Json doc = header("decompose");
  doc["algebra"] = algebra.name;
  const Json body = decomposition_to_json(dec);
  for (const auto& [key, value] : body.items()) doc[key] = value;
  return doc;
}

Json space_json(const AdaptedFrame& frame, const KillingSpace& space,
                const std::vector<int>& per_factor, double tol) {
  Json doc = killing_summary_json(space, per_factor);
  double residual = 0.0;
  Json forms = Json::array();
  for (const Form& w : space.basis) {
    residual = std::max(residual, killing_residual(frame, w, tol));
    forms.push_back(form_to_json(w, 1e-14));
  }
  doc["max_residual"] = residual;
  doc["forms"] = forms;
  return doc;
}

Json cmd_killing(const RunConfig& cfg) {
  const MetricLieAlgebra algebra = load_input(cfg);
  const int k = cfg.degree;
  if (k < 1 || k > algebra.dim()) {
    throw InvalidInput("--degree must lie in [1, " + std::to_string(algebra.dim()) + "]");
  }
  std::string method = cfg.method;
  if (method == "auto") method = (k == 2 || k == 3) ? "both" : "brute";
  if (method != "brute" && k != 2 && k != 3) {
    throw InvalidInput("the structured solver covers degrees 2 and 3 only");
  }

  const Decomposition dec = decompose(algebra, cfg.tol);
  const AdaptedFrame& frame = dec.ambient;

  Json doc = header("killing");
  doc["algebra"] = algebra.name;
  doc["degree"] = k;
  doc["method"] = method;
  doc["frame"] = matrix_json(frame.frame);

  std::optional<KillingSpace> brute;
  std::optional<KillingSpace> structured;
  Json results = Json::array();
  if (method == "brute" || method == "both") {
    brute = killing_nullspace_brute(frame, k, cfg.tol);
    brute->algebra_ref = algebra.name;
    results.push_back(space_json(frame, *brute, {}, cfg.tol));
  }
  if (method == "structured" || method == "both") {
    std::vector<int> per_factor;
    if (k == 2) {
      Killing2Result r = solve_killing2(dec, cfg.tol);
      structured = r.space;
      per_factor = r.per_factor;
    } else {
      Killing3Result r = solve_killing3(dec, cfg.tol);
      structured = r.space;
      per_factor = r.per_factor;
    }
    results.push_back(space_json(frame, *structured, per_factor, cfg.tol));
  }
  doc["results"] = results;

  if (brute && structured) {
    const double residual = span_distance(brute->basis_matrix(), structured->basis_matrix());
    const bool agree = brute->dim() == structured->dim() && residual <= 10.0 * cfg.tol;
    doc["brute_dim"] = brute->dim();
    doc["structured_dim"] = structured->dim();
    doc["projection_residual"] = std::isfinite(residual) ? Json(residual) : Json(nullptr);
    doc["agree"] = agree;
    if (!agree) throw Mismatch{doc};
  }
  return doc;
}

Json cmd_catalog_list() {
  Json doc = header("catalog list");
  Json entries = Json::array();
  for (const std::string& name : catalog_names()) {
    entries.push_back({{"name", name}, {"description", catalog_description(name)}});
  }
  doc["entries"] = entries;
  return doc;
}

Json table_rows(const std::vector<CatalogEntry>& list, double tol, bool& mismatch) {
  Json rows = Json::array();
  for (const CatalogEntry& e : list) {
    Json row;
    row["p"] = e.p;
    row["label"] = e.label;
    if (e.construction_external) {
      row["status"] = "skipped";
      rows.push_back(row);
      continue;
    }
    const MetricLieAlgebra algebra = e.build();
    const Decomposition dec = decompose(algebra, tol);
    const KillingDimensions dims = killing_dimensions(dec);
    const int brute2 = killing_nullspace_brute(dec.ambient, 2, tol).dim();
    const int brute3 = killing_nullspace_brute(dec.ambient, 3, tol).dim();
    const bool ok = dims.dim_k2 == e.expected->dim_k2 && dims.dim_k3 == e.expected->dim_k3 &&
                    brute2 == dims.dim_k2 && brute3 == dims.dim_k3;
    mismatch |= !ok;
    row["status"] = ok ? "ok" : "mismatch";
    row["expected_dimK2"] = e.expected->dim_k2;
    row["expected_dimK3"] = e.expected->dim_k3;
    row["dimK2"] = dims.dim_k2;
    row["dimK3"] = dims.dim_k3;
    row["brute_dimK2"] = brute2;
    row["brute_dimK3"] = brute3;
    row["d"] = dims.d;
    row["r2"] = dims.r2;
    row["r3"] = dims.r3;
    rows.push_back(row);
  }
  return rows;
}

Json cmd_tables(const RunConfig& cfg) {
  const ClassificationLists lists = classification_lists();
  bool mismatch = false;
  Json doc = header("tables");
  doc["tol"] = cfg.tol;
  doc["killing2"] = table_rows(lists.killing2, cfg.tol, mismatch);
  doc["killing3"] = table_rows(lists.killing3, cfg.tol, mismatch);
  doc["all_match"] = !mismatch;
  if (mismatch) throw Mismatch{doc};
  return doc;
}

void emit(const Json& doc, bool json, std::ostream& out) {
  if (json) {
    out << doc.dump(2) << "\n";
  } else {
    render_text(doc, out);
  }
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--tol", cfg.tol, "relative rank tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--json", cfg.json, "machine-readable output");
}

void add_input(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("input", cfg.input, "algebra JSON file or catalog:<name>")->required();
  cmd->add_option("--lambda", cfg.params.lambda, "catalog parameter lambda")->capture_default_str();
  cmd->add_option("--l", cfg.params.l, "catalog parameter l")->capture_default_str();
  cmd->add_option("--d", cfg.params.d, "catalog parameter d")->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "seed for --random-metric")->capture_default_str();
  cmd->add_flag("--random-metric", cfg.random_metric, "replace the metric by a seeded random one");
}

}  // namespace

void render_text(const Json& report, std::ostream& out) { render(report, out, 0); }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Killing forms on 2-step nilpotent metric Lie algebras", "nilkill"};
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand("analyze", "decomposition, factor flags and Killing dimensions");
  add_input(analyze, cfg);
  add_common(analyze, cfg);

  auto* killing = app.add_subcommand("killing", "Killing forms of one degree");
  add_input(killing, cfg);
  add_common(killing, cfg);
  killing->add_option("--degree", cfg.degree, "form degree")->required();
  killing->add_option("--method", cfg.method, "brute, structured, both or auto")
      ->check(CLI::IsMember({"auto", "brute", "structured", "both"}))
      ->capture_default_str();

  auto* decomp = app.add_subcommand("decompose", "abelian factor and irreducible factors");
  add_input(decomp, cfg);
  add_common(decomp, cfg);

  auto* catalog = app.add_subcommand("catalog", "built-in algebras");
  catalog->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "list catalog names");
  add_common(list, cfg);
  auto* show = catalog->add_subcommand("show", "print an algebra in the file format");
  show->add_option("name", cfg.catalog_name, "catalog name")->required();
  show->add_option("--lambda", cfg.params.lambda, "catalog parameter lambda");
  show->add_option("--l", cfg.params.l, "catalog parameter l");
  show->add_option("--d", cfg.params.d, "catalog parameter d");

  auto* tables = app.add_subcommand("tables", "recompute the classification tables");
  add_common(tables, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    Json doc;
    if (analyze->parsed()) {
      doc = cmd_analyze(cfg);
    } else if (killing->parsed()) {
      doc = cmd_killing(cfg);
    } else if (decomp->parsed()) {
      doc = cmd_decompose(cfg);
    } else if (list->parsed()) {
      doc = cmd_catalog_list();
    } else if (show->parsed()) {
      out << algebra_to_json(build_catalog(cfg.catalog_name, cfg.params)).dump(2) << "\n";
      return kExitOk;
    } else if (tables->parsed()) {
      doc = cmd_tables(cfg);
    }
    emit(doc, cfg.json, out);
    return kExitOk;
  } catch (const Mismatch& m) {
    emit(m.report, cfg.json, out);
    err << "error: results disagree\n";
    return kExitMismatch;
  } catch (const InvalidAlgebra& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const NumericalRankFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const DecompositionAmbiguous& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace nilkill
