// Command-line front end: classify, construct, transform, witness, bounds, falsify.
//
// Exit codes: 0 = ran, 2 = invalid input, 3 = precondition of a construction violated.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cas/channels.hpp"
#include "cas/criteria.hpp"
#include "cas/io.hpp"
#include "cas/oracles.hpp"
#include "cas/states.hpp"
#include "cas/witnesses.hpp"

namespace {

using cas::io::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitPrecondition = 3;

struct Global {
  std::uint64_t seed = 1;
  std::optional<double> tol_override;
  std::string output;
  bool json_stdout = false;

  double tol() const { return tol_override.value_or(cas::kBoundaryTol); }
};

struct LoadedInput {
  cas::io::StateFile state;
  std::string digest;
};

LoadedInput load_input(const std::string& path) {
  const std::string bytes = cas::io::read_file(path);
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw cas::Error(cas::ErrorCode::InvalidArgument, "'" + path + "' is not valid JSON");
  }
  return {cas::io::state_from_json(j), cas::io::digest(bytes)};
}

cas::DensityMatrix as_density_matrix(const cas::io::StateFile& f) {
  if (f.matrix) return *f.matrix;
  return cas::DensityMatrix::diagonal(f.dims, f.spectrum->values());
}

json envelope(const Global& g) {
  return json{{"tool", cas::io::kToolName}, {"version", cas::io::kToolVersion}, {"seed", g.seed}};
}

void emit(const Global& g, const json& structured, const std::string& summary) {
  if (!g.output.empty()) cas::io::write_file(g.output, cas::io::dump(structured));
  if (g.json_stdout)
    std::cout << cas::io::dump(structured);
  else
    std::cout << summary;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::string verdict_line(const cas::CriterionVerdict& v) {
  std::ostringstream os;
  os << "  " << std::left << std::setw(20) << v.name << std::setw(14) << cas::to_string(v.status);
  for (const auto& [k, x] : v.computed) os << ' ' << k << '=' << fmt(x);
  if (!v.reason.empty()) os << " (" << v.reason << ')';
  os << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// classify

struct ClassifyArgs {
  std::string input;
  bool compare = false;
};

json comparison_table(const cas::Dims& dims, const cas::Spectrum& input, double tol,
                      std::string& text) {
  std::vector<std::pair<std::string, cas::Spectrum>> rows;
  rows.emplace_back("input", input);
  const cas::NamedStateParams params{dims[0], dims[1], 0.0};
  auto add = [&](cas::NamedState name) {
    rows.emplace_back(cas::to_string(name), cas::spectrum(cas::make_named_state(name, params)));
  };
  add(cas::NamedState::MaximallyMixed);
  add(cas::NamedState::BoundaryState);
  if (dims[0] == 2 && dims[1] == 2) {
    add(cas::NamedState::SeedState);
    add(cas::NamedState::Werner);
  } else {
    std::vector<double> edge(static_cast<std::size_t>(dims.total()), 1.0 / (dims.total() - 1));
    edge.back() = 0.0;
    rows.emplace_back("rank_deficient_uniform", cas::Spectrum(edge, dims));
  }
  if (dims[0] != dims[1]) {
    const cas::NamedStateParams ordered{std::min(dims[0], dims[1]), std::max(dims[0], dims[1]), 0.0};
    rows.emplace_back("rho_tilde",
                      cas::Spectrum(cas::spectrum(cas::make_named_state(cas::NamedState::RhoTilde, ordered)).values(),
                                    dims));
  }
  add(cas::NamedState::PhiPlus);

  json table = json::array();
  std::ostringstream os;
  os << "\ncomparison (D = detected, - = not detected, n/a = inapplicable)\n";
  bool header = false;
  for (const auto& [label, s] : rows) {
    const cas::CriterionReport r = cas::classify(s, tol);
    if (!header) {
      os << "  " << std::left << std::setw(24) << "state";
      for (const auto& v : r.verdicts) os << std::setw(20) << v.name;
      os << '\n';
      header = true;
    }
    os << "  " << std::left << std::setw(24) << label;
    json row{{"state", label}, {"verdicts", json::object()}};
    for (const auto& v : r.verdicts) {
      const char* mark = v.status == cas::Status::Detected      ? "D"
                         : v.status == cas::Status::NotDetected ? "-"
                                                                : "n/a";
      os << std::setw(20) << mark;
      row["verdicts"][v.name] = cas::to_string(v.status);
    }
    os << '\n';
    table.push_back(std::move(row));
  }
  text += os.str();
  return table;
}

int run_classify(const Global& g, const ClassifyArgs& a) {
  const LoadedInput in = load_input(a.input);
  const cas::Spectrum s = in.state.eigenvalues();
  const cas::CriterionReport report = cas::classify(s, g.tol());

  json out = envelope(g);
  out["command"] = "classify";
  out["input_digest"] = in.digest;
  out["report"] = cas::io::report_to_json(report);

  std::ostringstream os;
  os << "input " << a.input << " (" << in.digest << ")\n";
  os << "dims " << s.dims().to_string() << "  spectral ratio " << fmt(cas::spectral_ratio(s))
     << "  purity " << fmt(cas::purity(s)) << '\n';
  for (const auto& v : report.verdicts) os << verdict_line(v);
  std::string text = os.str();
  if (a.compare) out["comparison"] = comparison_table(s.dims(), s, g.tol(), text);
  emit(g, out, text);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// construct

struct ConstructArgs {
  std::string name;
  int d_a = 2;
  int d_b = 2;
  double t = 0.0;
  std::vector<double> values;
  int copies = 1;
};

int run_construct(const Global& g, const ConstructArgs& a) {
  std::optional<cas::DensityMatrix> rho;
  if (a.name == "diagonal") {
    if (a.values.empty())
      throw cas::Error(cas::ErrorCode::InvalidArgument, "construct diagonal: --values is required");
    rho.emplace(cas::DensityMatrix::diagonal(cas::Dims::bipartite(a.d_a, a.d_b), a.values));
  } else {
    rho.emplace(cas::make_named_state(cas::parse_named_state(a.name),
                                      cas::NamedStateParams{a.d_a, a.d_b, a.t}));
  }
  if (a.copies < 1) throw cas::Error(cas::ErrorCode::InvalidArgument, "--copies must be >= 1");
  const cas::DensityMatrix base = *rho;
  for (int i = 1; i < a.copies; ++i) rho.emplace(cas::tensor_product(*rho, base));

  const std::string text = cas::io::dump(cas::io::state_to_json(*rho));
  if (!g.output.empty())
    cas::io::write_file(g.output, text);
  else
    std::cout << text;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// transform

struct TransformArgs {
  std::string rho;
  std::string sigma;
  std::optional<double> c;
  bool entangle = false;
};

int run_transform(const Global& g, const TransformArgs& a) {
  const cas::DensityMatrix rho = as_density_matrix(load_input(a.rho).state);
  std::optional<cas::DensityMatrix> sigma;
  cas::Transformation tr{cas::depolarizing_map(rho.dims()), {}};
  std::optional<double> t;

  try {
    if (a.entangle) {
      if (a.c) throw cas::Error(cas::ErrorCode::InvalidArgument, "--c is not used with --entangle");
      cas::EntanglementProtocol p = cas::entangle_from(rho);
      sigma.emplace(p.target);
      t = p.t;
      tr = cas::Transformation{std::move(p.map), std::move(p.plan)};
    } else {
      if (a.sigma.empty())
        throw cas::Error(cas::ErrorCode::InvalidArgument, "transform: a target state is required");
      sigma.emplace(as_density_matrix(load_input(a.sigma).state));
      tr = cas::construct_transformation(rho, *sigma, a.c);
    }
  } catch (const cas::Error& e) {
    if (e.code() == cas::ErrorCode::RatioTooSmall || e.code() == cas::ErrorCode::InputIsCas) {
      std::cerr << "cas transform: " << e.what() << '\n';
      std::cerr << "  R(rho)   = " << fmt(cas::spectral_ratio(cas::spectrum(rho))) << '\n';
      if (sigma) std::cerr << "  R(sigma) = " << fmt(cas::spectral_ratio(cas::spectrum(*sigma))) << '\n';
      return kExitPrecondition;
    }
    throw;
  }

  const int d = rho.dim();
  const double q = cas::validate_map(tr.map);
  const cas::MapOutput on_identity = cas::apply_map(tr.map, cas::Matrix::Identity(d, d));
  const double unitality_residual =
      (on_identity.output - q * cas::Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  const cas::MapOutput out = cas::apply_map(tr.map, rho);
  const cas::DensityMatrix produced = out.normalized(rho.dims());
  const double output_residual = (produced.matrix() - sigma->matrix()).cwiseAbs().maxCoeff();
  const bool monotone = cas::verify_ratio_monotone(tr.map, rho);

  json res = envelope(g);
  res["command"] = "transform";
  res["instrument"] = cas::io::map_to_json(tr.map);
  res["unitality_factor"] = q;
  res["plan"] = cas::io::plan_to_json(tr.plan);
  res["success_prob"] = out.success_prob;
  res["target"] = cas::io::state_to_json(*sigma);
  json verification{{"unitality_residual", unitality_residual},
                    {"output_residual", output_residual},
                    {"ratio_monotone", monotone},
                    {"ratio_rho", cas::spectral_ratio(cas::spectrum(rho))},
                    {"ratio_output", cas::spectral_ratio(cas::spectrum(produced))}};
  if (rho.dims().is_bipartite()) verification["output_pt_min_eigenvalue"] = cas::ppt_min_eigenvalue(produced);
  if (t) res["t"] = *t;
  res["verification"] = verification;

  std::ostringstream os;
  os << "stochastic unital map with " << tr.map.branches().size() << " branches, q = " << fmt(q) << '\n';
  if (tr.plan.depolarizing) os << "target is maximally mixed: depolarizing channel\n";
  else
    os << "alpha " << fmt(tr.plan.alpha) << "  beta " << fmt(tr.plan.beta) << "  k " << fmt(tr.plan.k)
       << "  c " << fmt(tr.plan.c) << "  theta " << fmt(tr.plan.theta)
       << (tr.plan.singular_input ? "  (singular input)" : "") << '\n';
  if (t) os << "target omega_t with t = " << fmt(*t) << '\n';
  os << "success probability " << fmt(out.success_prob) << '\n';
  os << "unitality residual " << unitality_residual << "  output residual " << output_residual
     << "  ratio monotone " << (monotone ? "yes" : "NO") << '\n';
  if (verification.contains("output_pt_min_eigenvalue"))
    os << "output min PT eigenvalue " << fmt(verification["output_pt_min_eigenvalue"].get<double>()) << '\n';
  emit(g, res, os.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// witness

struct WitnessArgs {
  std::string kind = "ppt";
  std::string from;
  int d_a = 2;
  int d_b = 2;
  std::string evaluate_path;
  bool seesaw = false;
  int restarts = 32;
  int iters = 100;
};

int run_witness(const Global& g, const WitnessArgs& a) {
  std::optional<cas::Witness> w;
  std::string kind = a.kind;
  if (!a.from.empty()) {
    json j = json::parse(cas::io::read_file(a.from));
    // Accept both a bare witness and a full witness report.
    if (j.is_object() && j.contains("witness")) j = j["witness"];
    w.emplace(cas::io::witness_from_json(j));
    kind = j.value("kind", std::string("file"));
  } else if (a.kind == "ppt") {
    w.emplace(cas::make_ppt_witness(cas::Dims::bipartite(a.d_a, a.d_b)));
  } else if (a.kind == "separating") {
    w.emplace(cas::make_separating_witness(a.d_a, a.d_b));
  } else {
    throw cas::Error(cas::ErrorCode::InvalidArgument, "unknown witness kind '" + a.kind + "'");
  }

  json res = envelope(g);
  res["command"] = "witness";
  res["witness"] = cas::io::witness_to_json(*w, kind);
  const double norm = cas::trace_norm(*w);
  const int d = w->dims().min_local();
  res["trace_norm"] = norm;
  res["trace_norm_bound"] = d * std::abs(w->trace());

  std::ostringstream os;
  os << kind << " witness on " << w->dims().to_string() << ": trace " << fmt(w->trace())
     << "  trace norm " << fmt(norm) << "  (block-positive bound " << fmt(d * std::abs(w->trace())) << ")\n";
  if (kind == "separating" && a.from.empty()) {
    const cas::SeparationCondition c = cas::separation_condition(a.d_a, a.d_b);
    res["separation_condition"] = {{"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds()}};
    os << "separation condition " << fmt(c.lhs) << " > " << fmt(c.rhs) << ": "
       << (c.holds() ? "holds" : "fails") << '\n';
  }
  if (!a.evaluate_path.empty()) {
    const cas::DensityMatrix rho = as_density_matrix(load_input(a.evaluate_path).state);
    const double value = cas::evaluate(*w, rho);
    res["evaluation"] = {{"state", a.evaluate_path}, {"value", value}};
    os << "Tr(W rho) = " << fmt(value) << (value < -cas::kNptTol ? "  (detected)" : "") << '\n';
  }
  if (a.seesaw) {
    const double m = cas::min_product_expectation(*w, a.restarts, a.iters, g.seed);
    res["min_product_expectation"] = {{"value", m}, {"restarts", a.restarts}, {"iters", a.iters}};
    os << "min over product states (see-saw, " << a.restarts << " restarts) " << fmt(m) << '\n';
  }
  emit(g, res, os.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsArgs {
  std::optional<double> ratio;
  bool copies_flag = false;
  std::optional<double> copies_ratio;
  std::optional<double> h_norm;
  std::optional<int> l;
  double k_b = 1.0;
  std::optional<double> purity;
  int d_a = 0;
  int d_b = 0;
  std::optional<int> d;
};

int run_bounds(const Global& g, const BoundsArgs& a) {
  json res = envelope(g);
  res["command"] = "bounds";
  std::ostringstream os;
  bool any = false;

  if (a.copies_flag) {
    const std::optional<double> r = a.copies_ratio ? a.copies_ratio : a.ratio;
    if (!r) throw cas::Error(cas::ErrorCode::InvalidArgument, "--copies needs a ratio (value or --ratio)");
    const int n = cas::copy_bound(*r);
    res["copies"] = {{"ratio", *r}, {"bound", cas::copy_bound_real(*r)}, {"n", n}};
    os << "copies: R = " << fmt(*r) << "  ln(R+2 sqrt R)/ln R = " << fmt(cas::copy_bound_real(*r))
       << "  ->  n = " << n << '\n';
    any = true;
  }
  if (a.h_norm || a.l) {
    if (!a.h_norm || !a.l) throw cas::Error(cas::ErrorCode::InvalidArgument, "--h-norm and --l go together");
    const double t = cas::gibbs_threshold(*a.h_norm, *a.l, a.k_b);
    res["gibbs"] = {{"h_norm", *a.h_norm}, {"l", *a.l}, {"k_b", a.k_b}, {"temperature", t}};
    os << "gibbs: ||H|| = " << fmt(*a.h_norm) << "  l = " << *a.l << "  k_B = " << fmt(a.k_b)
       << "  ->  T* = " << fmt(t) << '\n';
    any = true;
  }
  if (a.ratio && a.d) {
    if (*a.d < 2) throw cas::Error(cas::ErrorCode::InvalidArgument, "--d must be >= 2");
    const double threshold = static_cast<double>(*a.d + 1) / (*a.d - 1);
    const bool ok = *a.ratio <= threshold + g.tol();
    res["ratio"] = {{"ratio", *a.ratio}, {"d", *a.d}, {"threshold", threshold}, {"cas", ok}};
    os << "ratio: R = " << fmt(*a.ratio) << "  threshold (d+1)/(d-1) = " << fmt(threshold) << "  ->  "
       << (ok ? "completely absolutely separable" : "not CAS") << '\n';
    any = true;
  }
  if (a.purity) {
    const cas::Dims dims = cas::Dims::bipartite(a.d_a, a.d_b);
    json verdicts = json::array();
    os << "purity " << fmt(*a.purity) << " on " << dims.to_string() << '\n';
    for (const auto& v : cas::purity_bound_report(*a.purity, dims, g.tol())) {
      verdicts.push_back(cas::io::verdict_to_json(v));
      os << verdict_line(v);
    }
    res["purity"] = verdicts;
    any = true;
  }
  if (!any)
    throw cas::Error(cas::ErrorCode::InvalidArgument,
                     "bounds: nothing requested (use --copies, --h-norm/--l, --ratio/--d or --purity)");
  emit(g, res, os.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// falsify

struct FalsifyArgs {
  std::string input;
  std::int64_t samples = 10000;
  int d_a = 0;
  int d_b = 0;
  bool serial = false;
};

int run_falsify(const Global& g, const FalsifyArgs& a) {
  const LoadedInput in = load_input(a.input);
  const cas::Spectrum s = in.state.eigenvalues();
  const cas::Dims dims = (a.d_a > 0 || a.d_b > 0) ? cas::Dims::bipartite(a.d_a, a.d_b) : s.dims();
  const cas::FalsificationResult r = a.serial ? cas::as_falsify_search_serial(s, dims, a.samples, g.seed)
                                              : cas::as_falsify_search(s, dims, a.samples, g.seed);
  json res = envelope(g);
  res["command"] = "falsify";
  res["input_digest"] = in.digest;
  res["dims"] = dims.locals();
  res["result"] = cas::io::falsification_to_json(r, g.seed, a.samples);

  std::ostringstream os;
  if (r.found)
    os << "found: unitary seed " << r.unitary_seed << " gives min PT eigenvalue " << fmt(r.min_pt_eigenvalue)
       << " after " << r.samples_used << " samples (seed " << g.seed << ")\n";
  else
    os << "not found in " << r.samples_used << " samples (seed " << g.seed << "); min PT eigenvalue "
       << fmt(r.min_pt_eigenvalue) << " -- inconclusive\n";
  emit(g, res, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral separability toolkit: criteria, witnesses and stochastic unital channels"};
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--seed", g.seed, "Seed for randomized commands");
  app.add_option("--tol-override", g.tol_override, "Boundary tolerance for criteria (discouraged)");
  app.add_option("--output", g.output, "Write the structured result to this path");
  app.add_flag("--json", g.json_stdout, "Print the structured result instead of the summary");

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "Run every spectral criterion on a state file");
  classify->add_option("input", ca.input, "State file")->required();
  classify->add_flag("--compare-criteria", ca.compare, "Append a criteria-vs-named-states table");

  ConstructArgs co;
  auto* construct = app.add_subcommand("construct", "Write a named state to a state file");
  construct->add_option("name", co.name,
                        "maximally_mixed | seed_state | werner | phi_plus | omega_t | rho_tilde | "
                        "boundary_state | diagonal")
      ->required();
  construct->add_option("--da", co.d_a, "Local dimension of A");
  construct->add_option("--db", co.d_b, "Local dimension of B");
  construct->add_option("--t", co.t, "omega_t parameter");
  construct->add_option("--values", co.values, "Diagonal entries for 'diagonal'")->delimiter(',');
  construct->add_option("--copies", co.copies, "Tensor power of the constructed state");

  TransformArgs ta;
  auto* transform = app.add_subcommand("transform", "Synthesize a stochastic unital map rho -> sigma");
  transform->add_option("rho", ta.rho, "Input state file")->required();
  transform->add_option("sigma", ta.sigma, "Target state file");
  transform->add_option("--c", ta.c, "Measurement scale c in (0, 1/(1+k)]");
  transform->add_flag("--entangle", ta.entangle, "Target the entangled omega_t reachable from rho");

  WitnessArgs wa;
  auto* witness = app.add_subcommand("witness", "Build or load a witness; evaluate it, check block positivity");
  witness->add_option("--kind", wa.kind, "ppt | separating");
  witness->add_option("--from", wa.from, "Load a witness file instead of building one");
  witness->add_option("--da", wa.d_a, "Local dimension of A");
  witness->add_option("--db", wa.d_b, "Local dimension of B");
  witness->add_option("--evaluate", wa.evaluate_path, "State file to evaluate Tr(W rho) on");
  witness->add_flag("--seesaw", wa.seesaw, "Minimize over product states by alternating minimization");
  witness->add_option("--restarts", wa.restarts, "See-saw restarts");
  witness->add_option("--iters", wa.iters, "See-saw iterations per restart");

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Closed-form bounds");
  bounds->add_option("--ratio", ba.ratio, "Spectral ratio R");
  std::string copies_value;
  bounds->add_option("--copies", copies_value, "Copies needed to leave the AS set (ratio optional)")
      ->expected(0, 1);
  bounds->add_option("--h-norm", ba.h_norm, "||H||_inf of a Hamiltonian");
  bounds->add_option("--l", ba.l, "Bipartition side dimension l");
  bounds->add_option("--kb", ba.k_b, "Boltzmann constant (default 1)");
  bounds->add_option("--purity", ba.purity, "Purity Tr rho^2 to test against purity bounds");
  bounds->add_option("--da", ba.d_a, "Local dimension of A (with --purity)");
  bounds->add_option("--db", ba.d_b, "Local dimension of B (with --purity)");
  bounds->add_option("--d", ba.d, "Smaller local dimension (with --ratio)");

  FalsifyArgs fa;
  auto* falsify = app.add_subcommand("falsify", "Search Haar-random unitaries for an NPT rotation");
  falsify->add_option("input", fa.input, "State file")->required();
  falsify->add_option("--samples", fa.samples, "Number of Haar samples");
  falsify->add_option("--da", fa.d_a, "Override the bipartition: side A");
  falsify->add_option("--db", fa.d_b, "Override the bipartition: side B");
  falsify->add_flag("--serial", fa.serial, "Use the serial reference kernel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (bounds->parsed() && bounds->count("--copies") > 0) {
      ba.copies_flag = true;
      if (!copies_value.empty()) {
        std::size_t used = 0;
        ba.copies_ratio = std::stod(copies_value, &used);
        if (used != copies_value.size())
          throw cas::Error(cas::ErrorCode::InvalidArgument, "--copies: '" + copies_value + "' is not a number");
      }
    }
    if (*classify) return run_classify(g, ca);
    if (*construct) return run_construct(g, co);
    if (*transform) return run_transform(g, ta);
    if (*witness) return run_witness(g, wa);
    if (*bounds) return run_bounds(g, ba);
    if (*falsify) return run_falsify(g, fa);
  } catch (const cas::Error& e) {
    std::cerr << "cas: " << cas::to_string(e.code()) << ": " << e.what() << '\n';
    return e.code() == cas::ErrorCode::RatioTooSmall || e.code() == cas::ErrorCode::InputIsCas ||
                   e.code() == cas::ErrorCode::CannotComplete
               ? kExitPrecondition
               : kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "cas: invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (...) {
    std::cerr << "cas: invalid input\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
