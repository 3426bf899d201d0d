#include "boxnc/dispatch.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "boxnc/inequalities.hpp"
#include "boxnc/represent.hpp"

namespace boxnc {

namespace {

using nlohmann::json;

Box box_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("axes")) {
    fail(ErrorCode::invalid_argument, "box document needs an \"axes\" array");
  }
  std::vector<Interval> axes;
  for (const auto& axis : doc.at("axes")) {
    Interval iv;
    if (axis.contains("lo")) iv.lo = axis.at("lo").get<double>();
    if (axis.contains("hi")) iv.hi = axis.at("hi").get<double>();
    axes.push_back(iv);
  }
  return Box(std::move(axes));
}

MultiIndex order_from_json(const json& doc) {
  return MultiIndex(doc.get<std::vector<int>>());
}

std::vector<double> atom_location(const json& doc) {
  if (doc.is_number()) return {doc.get<double>()};
  return doc.get<std::vector<double>>();
}

DiscreteSignedMeasure measure_from_json(const json& doc) {
  if (doc.contains("binomial")) {
    const auto& b = doc.at("binomial");
    return DiscreteSignedMeasure::binomial(b.at("n").get<int>(), b.at("p").get<double>());
  }
  if (!doc.contains("atoms")) {
    fail(ErrorCode::invalid_argument, "measure document needs \"atoms\" or \"binomial\"");
  }
  std::vector<Atom> atoms;
  int dim = doc.contains("dim") ? doc.at("dim").get<int>() : -1;
  for (const auto& item : doc.at("atoms")) {
    Atom a;
    a.location = atom_location(item.at("x"));
    a.weight = item.at("w").get<double>();
    if (dim < 0) dim = static_cast<int>(a.location.size());
    atoms.push_back(std::move(a));
  }
  if (dim < 0) dim = 1;  // empty atom list: the zero measure, default 1-d
  return DiscreteSignedMeasure::from_atoms(dim, std::move(atoms));
}

json measure_to_json(const DiscreteSignedMeasure& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms()) atoms.push_back({{"x", a.location}, {"w", a.weight}});
  return {{"dim", m.dim()}, {"atoms", atoms}};
}

Marginal marginal_from_json(const json& doc, int resolution_default) {
  if (doc.contains("uniform")) {
    const auto& u = doc.at("uniform");
    const int m = u.contains("m") ? u.at("m").get<int>() : resolution_default;
    return Marginal::from_uniform(u.at("a").get<double>(), u.at("b").get<double>(), m);
  }
  if (doc.contains("point")) return Marginal::point_mass(doc.at("point").get<double>());
  return Marginal::from_atoms(measure_from_json(doc));
}

std::vector<std::vector<double>> node_lists_from_json(const json& doc) {
  return doc.get<std::vector<std::vector<double>>>();
}

PointSystem system_from_json(const json& doc) {
  return PointSystem(node_lists_from_json(doc));
}

json system_to_json(const PointSystem& s) {
  json out = json::array();
  for (const auto& tuple : s.nodes()) out.push_back(tuple);
  return out;
}

std::vector<int> axis_order_from_json(const json& doc, int dim) {
  std::vector<int> order = doc.get<std::vector<int>>();
  for (int& a : order) {
    if (a < 1 || a > dim) {
      fail(ErrorCode::invalid_argument, "axis_order entries are 1-based axis indices");
    }
    a -= 1;
  }
  return order;
}

RepresentationSpec repspec_from_json(const json& doc) {
  const MultiIndex n = order_from_json(doc.at("n"));
  RepresentationSpec spec(n, doc.at("alpha").get<std::vector<double>>(),
                          doc.contains("box") ? box_from_json(doc.at("box"))
                                              : Box::unbounded(n.dim()));
  if (doc.contains("w") && !doc.at("w").is_null()) {
    const auto& w = doc.at("w");
    FunctionSpec f = FunctionSpec::from_json(w.at("f"), n.dim());
    spec.w = grid_interpolant(f, node_lists_from_json(w.at("nodes")));
  }
  if (doc.contains("canonical")) spec.canonical = doc.at("canonical").get<bool>();
  if (doc.contains("parts")) {
    for (const auto& [key, value] : doc.at("parts").items()) {
      spec.parts.emplace_back(key, measure_from_json(value));
    }
    std::sort(spec.parts.begin(), spec.parts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  spec.validate();
  return spec;
}

FV1Function fv1_from_json(const json& doc) {
  FunctionSpec smooth = doc.contains("smooth") && !doc.at("smooth").is_null()
                            ? FunctionSpec::from_json(doc.at("smooth"), 1)
                            : FunctionSpec::constant(1, 0.0);
  std::vector<Jump> jumps;
  if (doc.contains("jumps")) {
    for (const auto& item : doc.at("jumps")) {
      Jump j;
      j.at = item.at("t").get<double>();
      if (item.contains("left")) j.left = item.at("left").get<double>();
      if (item.contains("right")) j.right = item.at("right").get<double>();
      jumps.push_back(j);
    }
  }
  return FV1Function(std::move(smooth), std::move(jumps));
}

TensorFVFunction tensor_from_json(const json& doc) {
  const int dim = doc.at("dim").get<int>();
  std::vector<TensorFVFunction::Term> terms;
  for (const auto& item : doc.at("terms")) {
    TensorFVFunction::Term term;
    term.coefficient = item.contains("c") ? item.at("c").get<double>() : 1.0;
    for (const auto& factor : item.at("factors")) term.factors.push_back(fv1_from_json(factor));
    terms.push_back(std::move(term));
  }
  return TensorFVFunction(dim, std::move(terms));
}

json subset_to_json(unsigned mask, int dim) {
  json out = json::array();
  for (int i = 0; i < dim; ++i) {
    if (mask & (1u << i)) out.push_back(i + 1);
  }
  return out;
}

json verdict_to_json(const OrderVerdict& v) {
  json out;
  out["holds"] = v.holds;
  out["failed_condition"] = v.failed_condition;
  if (v.failed_axis) out["axis"] = *v.failed_axis + 1;
  if (v.failed_moment_k) out["moment_k"] = *v.failed_moment_k;
  if (v.witness_u) out["witness_u"] = *v.witness_u;
  if (v.witness_point) out["witness_point"] = *v.witness_point;
  if (!v.holds) out["witness_value"] = v.witness_value;
  if (!v.factor_classes.empty()) {
    json classes = json::array();
    for (const auto& c : v.factor_classes) {
      classes.push_back({{"kind", c.kind == SignClass::Kind::nonneg   ? "nonneg"
                                  : c.kind == SignClass::Kind::nonpos ? "nonpos"
                                                                      : "mixed"},
                         {"min", {{"u", c.min_arg}, {"value", c.min_value}}},
                         {"max", {{"u", c.max_arg}, {"value", c.max_value}}}});
    }
    out["factor_classes"] = classes;
  }
  return out;
}

json sign_class_to_json(const SignClass& c) {
  return {{"kind", c.kind == SignClass::Kind::nonneg   ? "nonneg"
                   : c.kind == SignClass::Kind::nonpos ? "nonpos"
                                                       : "mixed"},
          {"min", {{"u", c.min_arg}, {"value", c.min_value}}},
          {"max", {{"u", c.max_arg}, {"value", c.max_value}}}};
}

struct Effective {
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int trials = 500;
  int resolution = 8;
};

Effective effective_options(const RunOptions& options) {
  Effective e;
  if (options.seed) e.seed = *options.seed;
  if (options.tol) e.tol = *options.tol;
  if (options.trials) e.trials = *options.trials;
  if (options.resolution) e.resolution = *options.resolution;
  return e;
}

CertifyOptions certify_options_from(const json& input, const Effective& eff) {
  CertifyOptions opts;
  opts.seed = eff.seed;
  opts.tol = eff.tol;
  opts.trials = eff.trials;
  if (input.contains("sampler")) {
    const std::string s = input.at("sampler").get<std::string>();
    if (s == "grid") {
      opts.sampler = SamplerKind::grid;
    } else if (s == "random") {
      opts.sampler = SamplerKind::random;
    } else {
      fail(ErrorCode::invalid_argument, "sampler must be \"random\" or \"grid\"");
    }
  }
  if (input.contains("grid")) opts.grid = node_lists_from_json(input.at("grid"));
  if (input.contains("min_separation")) {
    opts.min_separation = input.at("min_separation").get<double>();
  }
  return opts;
}

json certificate_to_json(const ConvexityCertificate& cert) {
  json out;
  out["verdict"] = cert.refuted ? "refuted" : "certified-on-samples";
  out["trials"] = cert.trials;
  out["min_value"] = cert.min_value;
  if (cert.witness) out["witness"] = system_to_json(*cert.witness);
  return out;
}

json gap_to_json(const GapReport& report, int dim) {
  json terms = json::array();
  for (const auto& [mask, value] : report.subset_terms) {
    terms.push_back({{"subset", subset_to_json(mask, dim)}, {"expectation", value}});
  }
  return {{"value", report.value},
          {"holds", report.holds},
          {"subset_terms", terms},
          {"resolution", report.resolution}};
}

std::vector<std::vector<double>> probes_from_json(const json& input, const char* key) {
  if (!input.contains(key)) return {};
  return input.at(key).get<std::vector<std::vector<double>>>();
}

// --- command handlers; each returns the exit code and fills result ---

int cmd_divdiff(const json& input, const Effective&, json& result) {
  const json& points = input.at("points");
  PointSystem system = system_from_json(points);
  const int d = system.dim();
  FunctionSpec f = FunctionSpec::from_json(input.at("f"), d);
  if (input.contains("box")) {
    std::vector<int> orders;
    for (const auto& tuple : system.nodes()) {
      orders.push_back(static_cast<int>(tuple.size()) - 1);
    }
    validate_point_system(system, box_from_json(input.at("box")), MultiIndex(orders));
  }
  std::vector<int> axis_order;
  if (input.contains("axis_order")) axis_order = axis_order_from_json(input.at("axis_order"), d);

  const std::string method =
      input.contains("method") ? input.at("method").get<std::string>() : "both";
  if (method == "recursive" || method == "both") {
    result["recursive"] = divdiff_multi(system, f, DdMethod::recursive, axis_order);
  }
  if (method == "expanded" || method == "both") {
    const ExpandedValue ev = divdiff_multi_expanded(system, f);
    result["expanded"] = ev.value;
    result["max_term"] = ev.max_term;
  }
  if (method != "recursive" && method != "expanded" && method != "both") {
    fail(ErrorCode::invalid_argument, "method must be recursive, expanded, or both");
  }
  result["value"] = result.contains("expanded") ? result["expanded"] : result["recursive"];
  return 0;
}

int cmd_certify(const json& input, const Effective& eff, json& result) {
  const MultiIndex n = order_from_json(input.at("n"));
  const Box box = box_from_json(input.at("box"));
  FunctionSpec f = FunctionSpec::from_json(input.at("f"), n.dim());
  const ConvexityCertificate cert =
      certify_box_convexity(f, n, box, certify_options_from(input, eff));
  result = certificate_to_json(cert);
  return cert.refuted ? 1 : 0;
}

int cmd_interpolate(const json& input, const Effective&, json& result) {
  const auto nodes = node_lists_from_json(input.at("nodes"));
  const int d = static_cast<int>(nodes.size());
  FunctionSpec f = FunctionSpec::from_json(input.at("f"), d);
  const PseudoPolynomial w = grid_interpolant(f, nodes);
  result["degree"] = w.degree();
  json probes = json::array();
  for (const auto& x : probes_from_json(input, "probes")) {
    probes.push_back({{"x", x}, {"w", w.evaluate(x)}, {"f", f(x)}});
  }
  result["probes"] = probes;
  return 0;
}

int cmd_regularize(const json& input, const Effective&, json& result) {
  const MultiIndex n = order_from_json(input.at("n"));
  FunctionSpec f = FunctionSpec::from_json(input.at("f"), n.dim());
  const Regularization reg = regularize(f, n, node_lists_from_json(input.at("nodes")));
  result["degree"] = reg.interpolant.degree();
  json probes = json::array();
  for (const auto& x : probes_from_json(input, "probes")) {
    probes.push_back(
        {{"x", x}, {"residual", reg.residual(x)}, {"w", reg.interpolant.evaluate(x)}});
  }
  result["probes"] = probes;
  return 0;
}

int cmd_order(const json& input, const Effective&, json& result) {
  const DiscreteSignedMeasure x = measure_from_json(input.at("x"));
  const DiscreteSignedMeasure y = measure_from_json(input.at("y"));
  const int n = input.at("n").get<int>();
  OrderCheckOptions opts;
  if (input.contains("grid_density")) {
    opts.extra_probes_per_piece = input.at("grid_density").get<int>();
  }
  const OrderVerdict verdict = check_nconvex_order(x, y, n, opts);
  result = verdict_to_json(verdict);
  return verdict.holds ? 0 : 1;
}

int cmd_box_order(const json& input, const Effective&, json& result) {
  const std::string mode = input.at("mode").get<std::string>();
  const MultiIndex n = order_from_json(input.at("n"));
  OrderVerdict verdict;
  if (mode == "product") {
    std::vector<DiscreteSignedMeasure> factors;
    for (const auto& f : input.at("factors")) factors.push_back(measure_from_json(f));
    verdict = check_box_order_product(factors, n);
  } else if (mode == "joint") {
    const DiscreteSignedMeasure px = measure_from_json(input.at("x"));
    const DiscreteSignedMeasure py = measure_from_json(input.at("y"));
    std::vector<std::vector<double>> u_axes;
    if (input.contains("u_grid")) {
      u_axes = node_lists_from_json(input.at("u_grid"));
    } else {
      u_axes = default_u_axes(px, py);
    }
    verdict = check_box_order_joint(px, py, n, u_axes);
  } else {
    fail(ErrorCode::invalid_argument, "box-order mode must be \"product\" or \"joint\"");
  }
  result = verdict_to_json(verdict);
  return verdict.holds ? 0 : 1;
}

int cmd_hh(const json& input, const Effective& eff, json& result) {
  const auto a = input.at("a").get<std::vector<double>>();
  const auto b = input.at("b").get<std::vector<double>>();
  FunctionSpec f = FunctionSpec::from_json(input.at("f"), static_cast<int>(a.size()));
  const std::string which =
      input.contains("which") ? input.at("which").get<std::string>() : "first";
  HermiteHadamardKind kind;
  if (which == "first") {
    kind = HermiteHadamardKind::first;
  } else if (which == "second") {
    kind = HermiteHadamardKind::second;
  } else {
    fail(ErrorCode::invalid_argument, "which must be \"first\" or \"second\"");
  }
  const double tol = input.contains("gap_tol") ? input.at("gap_tol").get<double>() : 1e-8;
  const GapReport report = hh_check(f, a, b, kind, eff.resolution, tol);
  result = gap_to_json(report, f.arity());
  return report.holds ? 0 : 1;
}

int cmd_jensen(const json& input, const Effective& eff, json& result) {
  std::vector<Marginal> marginals;
  for (const auto& m : input.at("marginals")) {
    marginals.push_back(marginal_from_json(m, eff.resolution));
  }
  FunctionSpec f = FunctionSpec::from_json(input.at("f"), static_cast<int>(marginals.size()));
  const double tol = input.contains("gap_tol") ? input.at("gap_tol").get<double>() : 1e-8;
  const GapReport report = jensen_gap(f, marginals, eff.resolution, tol);
  result = gap_to_json(report, f.arity());
  return report.holds ? 0 : 1;
}

int cmd_rasa(const json& input, const Effective&, json& result) {
  const MultiIndex n = order_from_json(input.at("n"));
  std::vector<DiscreteSignedMeasure> mu, nu;
  for (const auto& m : input.at("mu")) mu.push_back(measure_from_json(m));
  for (const auto& m : input.at("nu")) nu.push_back(measure_from_json(m));
  std::vector<std::vector<double>> a_grid;
  if (input.contains("a_grid")) a_grid = node_lists_from_json(input.at("a_grid"));
  const RasaReport report = rasa_check(mu, nu, n, a_grid);
  result["holds"] = report.holds;
  result["failed_condition"] = report.failed_condition;
  json factors = json::array();
  for (const auto& factor : report.factors) {
    json values = json::array();
    for (const auto& [a, v] : factor.values) values.push_back({{"A", a}, {"value", v}});
    factors.push_back({{"power", measure_to_json(factor.power)},
                       {"sign", sign_class_to_json(factor.sign)},
                       {"values", values}});
  }
  result["factors"] = factors;
  return report.holds ? 0 : 1;
}

int cmd_synth(const json& input, const Effective&, json& result) {
  const RepresentationSpec spec = repspec_from_json(input.at("spec"));
  const FunctionSpec f = synthesize(spec);
  json probes = json::array();
  for (const auto& x : probes_from_json(input, "probes")) {
    probes.push_back({{"x", x}, {"value", f(x)}});
  }
  result["probes"] = probes;
  result["n"] = spec.n.entries();
  result["alpha"] = spec.alpha;
  return 0;
}

int cmd_extract_measure(const json& input, const Effective&, json& result) {
  const RepresentationSpec spec = repspec_from_json(input.at("spec"));
  const ExtractionResult extraction =
      roundtrip_extract(spec, node_lists_from_json(input.at("cuts")));
  json cells = json::array();
  for (const auto& cell : extraction.cells) {
    cells.push_back({{"lo", cell.lo}, {"hi", cell.hi}, {"mass", cell.mass}});
  }
  result["cells"] = cells;
  result["recovered"] = measure_to_json(extraction.recovered);
  return 0;
}

int cmd_decompose(const json& input, const Effective&, json& result) {
  if (input.contains("fv1")) {
    const FV1Function f = fv1_from_json(input.at("fv1"));
    const double alpha = input.at("alpha").get<double>();
    const FV1Parts parts = fv1_decompose(f, alpha);
    json probe_rows = json::array();
    if (input.contains("probes")) {
      for (const auto& x : input.at("probes").get<std::vector<double>>()) {
        probe_rows.push_back({{"x", x},
                              {"f", f(x)},
                              {"left_jump_part", parts.left_continuous(x)},
                              {"right_jump_part", parts.right_continuous(x)},
                              {"continuous_part", parts.continuous(x)}});
      }
    }
    result["probes"] = probe_rows;
    return 0;
  }
  const TensorFVFunction f = tensor_from_json(input.at("tensor"));
  const auto alpha = input.at("alpha").get<std::vector<double>>();
  const auto parts = tensor_decompose(f, alpha);
  json rows = json::array();
  for (const auto& x : probes_from_json(input, "probes")) {
    json row;
    row["x"] = x;
    row["f"] = f.evaluate(x);
    json by_label;
    for (const auto& [label, part] : parts) by_label[label] = part.evaluate(x);
    row["parts"] = by_label;
    rows.push_back(row);
  }
  result["probes"] = rows;
  return 0;
}

int cmd_strong(const json& input, const Effective& eff, json& result) {
  const MultiIndex n = order_from_json(input.at("n"));
  const Box box = box_from_json(input.at("box"));
  FunctionSpec f = FunctionSpec::from_json(input.at("f"), n.dim());
  const double modulus = input.at("C").get<double>();
  const ConvexityCertificate cert =
      strongly_convex_check(f, modulus, n, box, certify_options_from(input, eff));
  result = certificate_to_json(cert);
  result["modulus"] = modulus;
  return cert.refuted ? 1 : 0;
}

const char* statement_for(const std::string& command) {
  if (command == "divdiff") return "multiple divided difference evaluation";
  if (command == "certify") return "box-convexity certification on sampled point systems";
  if (command == "interpolate") return "pseudo-polynomial grid interpolant";
  if (command == "regularize") return "interpolant residual vanishing on node hyperplanes";
  if (command == "order") return "n-convex stochastic order between discrete laws";
  if (command == "box-order") return "box convex order between discrete laws";
  if (command == "hh") return "Hermite-Hadamard alternating mixture gap";
  if (command == "jensen") return "Jensen alternating mixture gap";
  if (command == "rasa") return "Rasa convolution-power product positivity";
  if (command == "synth") return "synthesis from an integral representation";
  if (command == "extract-measure") return "representing-measure recovery by rectangle masses";
  if (command == "decompose") return "jump/continuous decomposition";
  if (command == "strong") return "strong box-convexity with explicit modulus";
  return "";
}

}  // namespace

int run_command(const std::string& command, const json& input, const RunOptions& options,
                json& report) {
  const Effective eff = effective_options(options);
  report = json::object();
  report["command"] = command;
  report["config"] = {{"seed", eff.seed},
                      {"tol", eff.tol},
                      {"trials", eff.trials},
                      {"resolution", eff.resolution},
                      {"statement", statement_for(command)}};
  json result = json::object();
  int code = 0;
  if (command == "divdiff") {
    code = cmd_divdiff(input, eff, result);
  } else if (command == "certify") {
    code = cmd_certify(input, eff, result);
  } else if (command == "interpolate") {
    code = cmd_interpolate(input, eff, result);
  } else if (command == "regularize") {
    code = cmd_regularize(input, eff, result);
  } else if (command == "order") {
    code = cmd_order(input, eff, result);
  } else if (command == "box-order") {
    code = cmd_box_order(input, eff, result);
  } else if (command == "hh") {
    code = cmd_hh(input, eff, result);
  } else if (command == "jensen") {
    code = cmd_jensen(input, eff, result);
  } else if (command == "rasa") {
    code = cmd_rasa(input, eff, result);
  } else if (command == "synth") {
    code = cmd_synth(input, eff, result);
  } else if (command == "extract-measure") {
    code = cmd_extract_measure(input, eff, result);
  } else if (command == "decompose") {
    code = cmd_decompose(input, eff, result);
  } else if (command == "strong") {
    code = cmd_strong(input, eff, result);
  } else {
    fail(ErrorCode::invalid_argument, "unknown command '" + command + "'");
  }
  report["result"] = result;
  return code;
}

int run_command_text(const std::string& command, const std::string& input_text,
                     const RunOptions& options, std::string& report_text) {
  json report;
  int code = 0;
  try {
    json input;
    try {
      input = json::parse(input_text);
    } catch (const json::parse_error& e) {
      fail(ErrorCode::parse_error, e.what());
    }
    code = run_command(command, input, options, report);
  } catch (const Error& e) {
    const Effective eff = effective_options(options);
    report = json::object();
    report["command"] = command;
    report["config"] = {{"seed", eff.seed},
                        {"tol", eff.tol},
                        {"trials", eff.trials},
                        {"resolution", eff.resolution},
                        {"statement", statement_for(command)}};
    report["error"] = {{"kind", error_code_name(e.code())}, {"message", e.what()}};
    code = 2;
  } catch (const json::exception& e) {
    report = json::object();
    report["command"] = command;
    report["error"] = {{"kind", "invalid_argument"}, {"message", e.what()}};
    code = 2;
  }
  report_text = report.dump(2);
  report_text.push_back('\n');
  return code;
}

}  // namespace boxnc
