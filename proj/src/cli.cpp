#include "lapsep/cli.hpp"

#include <chrono>
#include <future>
#include <optional>
#include <ostream>
#include <semaphore>

#include <CLI11.hpp>
#include <json.hpp>

#include "lapsep/generate.hpp"
#include "lapsep/io.hpp"
#include "lapsep/separability.hpp"

namespace lapsep::cli {

namespace {

using nlohmann::json;

constexpr int kExitSeparable = 0;
constexpr int kExitEntangled = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitInvalid = 3;

struct LoadedDensity {
  RealMatrix matrix;
  TensorShape shape;
  FileKind kind = FileKind::Matrix;
};

LoadedDensity load_density(const std::string& path, const std::string& format) {
  std::string text = read_text_file(path);
  FileKind kind;
  if (format == "matrix")
    kind = FileKind::Matrix;
  else if (format == "graph")
    kind = FileKind::Graph;
  else
    kind = detect_file_kind(text);

  LoadedDensity ld;
  ld.kind = kind;
  switch (kind) {
    case FileKind::Matrix: {
      MatrixFileContent mc = parse_matrix_file(text);
      ld.matrix = std::move(mc.matrix);
      ld.shape = mc.shape;
      break;
    }
    case FileKind::Graph: {
      WeightedGraph g = parse_graph_file(text);
      ld.shape = g.shape();
      ld.matrix = laplacian_density(g);
      break;
    }
    case FileKind::Decomposition:
      throw Error(Errc::ParseError, "'" + path + "' is a decomposition file, expected a density matrix or graph");
  }
  return ld;
}

int verdict_exit_code(const Verdict& v) {
  switch (v.kind) {
    case VerdictKind::Separable:
    case VerdictKind::SeparableNonConstructive:
      return kExitSeparable;
    case VerdictKind::Entangled:
      return kExitEntangled;
    case VerdictKind::Unknown:
      return kExitUnknown;
    case VerdictKind::Invalid:
      return kExitInvalid;
  }
  return kExitInvalid;
}

std::string verdict_headline(const Verdict& v) {
  switch (v.kind) {
    case VerdictKind::Separable:
      return "Separable (rule " + std::string(rule_name(v.rule)) + "), " +
             std::to_string(v.decomposition->terms.size()) + " terms";
    case VerdictKind::SeparableNonConstructive:
      return "Separable (rule " + std::string(rule_name(v.rule)) + "), non-constructive";
    case VerdictKind::Entangled:
      return "Entangled (rule " + std::string(rule_name(v.rule)) + "), witness eigenvalue " +
             format_double(v.witness ? v.witness->eigenvalue : 0.0);
    case VerdictKind::Unknown:
      return "Unknown";
    case VerdictKind::Invalid:
      return "Invalid: " + v.reason;
  }
  return "Invalid";
}

json membership_json(const ClassReport& r) {
  return json{{"S", r.in_S},           {"S1", r.in_S1},
              {"S1_0", r.in_S1_0},     {"V", r.in_V},
              {"V1", r.in_V1},         {"valid_density", r.is_valid_density},
              {"zero_row_sums", r.zero_row_sums}};
}

json verdict_json(const Verdict& v, const std::string& input, double tol, double elapsed_ms) {
  json j{{"input", input},
         {"verdict", verdict_kind_name(v.kind)},
         {"rule", rule_name(v.rule)},
         {"exit", verdict_exit_code(v)},
         {"tol", tol},
         {"elapsed_ms", elapsed_ms},
         {"membership", membership_json(v.membership)},
         {"pt_min_eigenvalue", v.diagnostics.pt_min_eigenvalue},
         {"row_sum_deviation", v.diagnostics.row_sum_deviation}};
  if (v.witness) j["witness_eigenvalue"] = v.witness->eigenvalue;
  if (v.decomposition) {
    j["terms"] = v.decomposition->terms.size();
    j["reconstruction_error"] = v.diagnostics.reconstruction_error;
    j["weight_sum"] = v.diagnostics.weight_sum;
  }
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

void print_verdict_text(std::ostream& out, const Verdict& v, const std::string& input,
                        TensorShape shape, double elapsed_ms) {
  out << verdict_headline(v) << '\n';
  out << "  input: " << input << " (p=" << shape.p << " q=" << shape.q << " n=" << shape.dim()
      << ")\n";
  out << "  class: S1=" << v.membership.in_S1 << " S1^0=" << v.membership.in_S1_0
      << " V1=" << v.membership.in_V1 << " density=" << v.membership.is_valid_density << '\n';
  out << "  pT min eigenvalue: " << format_double(v.diagnostics.pt_min_eigenvalue)
      << ", row-sum deviation: " << format_double(v.diagnostics.row_sum_deviation) << '\n';
  out << "  elapsed_ms: " << elapsed_ms << '\n';
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct ClassifyOutcome {
  Verdict verdict;
  TensorShape shape{};
  double elapsed_ms = 0.0;
  std::string error;  // load/parse failure
};

ClassifyOutcome classify_one(const std::string& path, const std::string& format, double tol) {
  ClassifyOutcome oc;
  auto t0 = std::chrono::steady_clock::now();
  try {
    LoadedDensity ld = load_density(path, format);
    oc.shape = ld.shape;
    oc.verdict = classify(ld.matrix, ld.shape, tol);
  } catch (const Error& e) {
    oc.error = e.what();
  }
  oc.elapsed_ms = ms_since(t0);
  return oc;
}

int cmd_classify(const std::vector<std::string>& inputs, const std::string& format, double tol,
                 bool as_json, int jobs, std::ostream& out, std::ostream& err) {
  std::vector<ClassifyOutcome> outcomes(inputs.size());
  if (jobs > 1 && inputs.size() > 1) {
    std::counting_semaphore<> gate(jobs);
    std::vector<std::future<ClassifyOutcome>> futures;
    futures.reserve(inputs.size());
    for (const std::string& path : inputs)
      futures.push_back(std::async(std::launch::async, [&gate, path, format, tol] {
        gate.acquire();
        ClassifyOutcome oc = classify_one(path, format, tol);
        gate.release();
        return oc;
      }));
    for (size_t i = 0; i < futures.size(); ++i) outcomes[i] = futures[i].get();
  } else {
    for (size_t i = 0; i < inputs.size(); ++i) outcomes[i] = classify_one(inputs[i], format, tol);
  }

  int exit_code = 0;
  json all = json::array();
  for (size_t i = 0; i < inputs.size(); ++i) {
    const ClassifyOutcome& oc = outcomes[i];
    if (!oc.error.empty()) {
      if (as_json)
        all.push_back(json{{"input", inputs[i]}, {"error", oc.error}, {"exit", kExitInvalid}});
      else
        err << inputs[i] << ": " << oc.error << '\n';
      exit_code = std::max(exit_code, kExitInvalid);
      continue;
    }
    if (as_json)
      all.push_back(verdict_json(oc.verdict, inputs[i], tol, oc.elapsed_ms));
    else
      print_verdict_text(out, oc.verdict, inputs[i], oc.shape, oc.elapsed_ms);
    exit_code = std::max(exit_code, verdict_exit_code(oc.verdict));
  }
  if (as_json) out << (all.size() == 1 ? all.front() : all).dump(2) << '\n';
  return exit_code;
}

int cmd_decompose(const std::string& input, const std::string& out_path,
                  const std::string& format, double tol, bool as_json, std::ostream& out,
                  std::ostream& err) {
  auto t0 = std::chrono::steady_clock::now();
  LoadedDensity ld = load_density(input, format);
  Verdict v = classify(ld.matrix, ld.shape, tol);

  if (v.kind != VerdictKind::Separable) {
    int code = verdict_exit_code(v);
    if (v.kind == VerdictKind::SeparableNonConstructive) {
      // Separable by the low-dimension rule, but there is no decomposition
      // to write; report as undecided for this command.
      code = kExitUnknown;
    }
    if (as_json) {
      json j = verdict_json(v, input, tol, ms_since(t0));
      j["exit"] = code;
      out << j.dump(2) << '\n';
    } else {
      err << "no constructive decomposition: " << verdict_headline(v) << '\n';
    }
    return code;
  }

  write_text_file(out_path, write_decomposition_file(*v.decomposition));
  ProductDecomposition reread = parse_decomposition_file(read_text_file(out_path));
  VerifyResult vr = verify_decomposition(ld.matrix, reread, tol);
  if (!vr.valid) {
    err << "internal error: written decomposition failed verification (max error "
        << format_double(vr.max_error) << ")\n";
    return kExitInvalid;
  }
  if (as_json) {
    json j = verdict_json(v, input, tol, ms_since(t0));
    j["artifacts"] = json::array({out_path});
    j["reread_max_error"] = vr.max_error;
    out << j.dump(2) << '\n';
  } else {
    out << verdict_headline(v) << '\n';
    out << "  wrote " << out_path << " (re-read and verified, max error "
        << format_double(vr.max_error) << ")\n";
  }
  return kExitSeparable;
}

int cmd_verify(const std::string& matrix_input, const std::string& decomp_input,
               const std::string& format, double tol, bool as_json, std::ostream& out,
               std::ostream& err) {
  LoadedDensity ld = load_density(matrix_input, format);
  ProductDecomposition d = parse_decomposition_file(read_text_file(decomp_input));
  if (d.shape != ld.shape)
    throw Error(Errc::ShapeMismatch, "matrix is (" + std::to_string(ld.shape.p) + "," +
                                         std::to_string(ld.shape.q) + ") but decomposition is (" +
                                         std::to_string(d.shape.p) + "," +
                                         std::to_string(d.shape.q) + ")");
  VerifyResult vr = verify_decomposition(ld.matrix, d, tol);
  if (as_json) {
    out << json{{"valid", vr.valid},
                {"max_error", vr.max_error},
                {"weight_sum", vr.weight_sum},
                {"terms", d.terms.size()},
                {"tol", tol}}
               .dump(2)
        << '\n';
  } else {
    (vr.valid ? out : err) << (vr.valid ? "valid" : "invalid") << ": max error "
                           << format_double(vr.max_error) << ", weight sum "
                           << format_double(vr.weight_sum) << ", " << d.terms.size()
                           << " terms\n";
  }
  return vr.valid ? 0 : 1;
}

int cmd_ptranspose(const std::string& input, const std::string& out_path,
                   const std::string& format, std::ostream& out) {
  LoadedDensity ld = load_density(input, format);
  RealMatrix pt = partial_transpose(ld.matrix, ld.shape);
  write_text_file(out_path, write_matrix_file(pt, ld.shape));
  out << "wrote " << out_path << '\n';
  return 0;
}

int cmd_witness(const std::string& input, const std::string& format, double tol, bool as_json,
                std::ostream& out) {
  LoadedDensity ld = load_density(input, format);
  std::optional<Witness> w = entanglement_witness(ld.matrix, ld.shape, tol);
  if (as_json) {
    json j{{"input", input}, {"tol", tol}};
    if (w) {
      j["witness_eigenvalue"] = w->eigenvalue;
      json vec = json::array();
      for (const cplx& x : w->vector) {
        vec.push_back(x.real());
        vec.push_back(x.imag());
      }
      j["witness_vector"] = vec;
    } else {
      j["witness_eigenvalue"] = nullptr;
    }
    out << j.dump(2) << '\n';
    return 0;
  }
  if (!w) {
    out << "none\n";
    return 0;
  }
  out << "witness eigenvalue " << format_double(w->eigenvalue) << '\n';
  out << "witness vector:";
  for (const cplx& x : w->vector)
    out << ' ' << format_double(x.real()) << ' ' << format_double(x.imag());
  out << '\n';
  return 0;
}

// Extracts the weighted graph of a generalized Laplacian (negated
// off-diagonal entries).
WeightedGraph graph_from_laplacian(const RealMatrix& a, TensorShape shape) {
  std::vector<GraphEdge> edges;
  int n = a.size();
  for (int k = 1; k <= n; ++k)
    for (int l = k + 1; l <= n; ++l)
      if (a(k - 1, l - 1) < -1e-12)
        edges.push_back({unflatten(shape, k), unflatten(shape, l), -a(k - 1, l - 1)});
  return WeightedGraph(shape, std::move(edges));
}

int cmd_gen(const std::string& klass_name, int p, int q, uint64_t seed,
            const std::string& kind, const std::string& out_path, double tol, bool as_json,
            std::ostream& out, std::ostream& err) {
  TensorShape shape{p, q};
  InstanceClass klass = klass_name == "s10"  ? InstanceClass::S10
                        : klass_name == "s1" ? InstanceClass::S1
                                             : InstanceClass::V1;
  Rng rng(seed);
  std::vector<std::string> artifacts;
  std::string summary;

  if (kind == "separable") {
    RealMatrix a = gen_separable(klass, shape, rng);
    Verdict v = classify(a, shape, tol);
    if (v.kind != VerdictKind::Separable) {
      err << "generator postcondition failed: " << verdict_headline(v) << '\n';
      return kExitInvalid;
    }
    if (klass == InstanceClass::S10)
      write_text_file(out_path, write_graph_file(graph_from_laplacian(a, shape)));
    else
      write_text_file(out_path, write_matrix_file(a, shape));
    std::string sidecar = out_path + ".decomp";
    write_text_file(sidecar, write_decomposition_file(*v.decomposition));
    artifacts = {out_path, sidecar};
    summary = verdict_headline(v);
  } else if (kind == "entangled") {
    if (p < 2 || q < 2) {
      err << "entangled instances need p >= 2 and q >= 2\n";
      return kExitInvalid;
    }
    std::optional<Verdict> v;
    for (int attempt = 0; attempt < 50 && !v; ++attempt) {
      WeightedGraph star = gen_entangled_star(shape, rng);
      if (klass == InstanceClass::V1) {
        // Nonnegative variant: degrees on the diagonal plus the adjacency.
        RealMatrix adj = adjacency(star);
        std::vector<double> deg = degrees(star);
        double trace = 0.0;
        for (double d : deg) trace += d;
        RealMatrix a = adj;
        for (int i = 0; i < a.size(); ++i) a(i, i) += deg[i];
        a *= 1.0 / trace;
        Verdict cand = classify(a, shape, tol);
        if (cand.kind == VerdictKind::Entangled) {
          write_text_file(out_path, write_matrix_file(a, shape));
          v = std::move(cand);
        }
      } else {
        Verdict cand = classify(laplacian_density(star), shape, tol);
        if (cand.kind == VerdictKind::Entangled) {
          write_text_file(out_path, write_graph_file(star));
          v = std::move(cand);
        }
      }
    }
    if (!v) {
      err << "failed to draw an entangled instance\n";
      return kExitInvalid;
    }
    artifacts = {out_path};
    summary = verdict_headline(*v);
  } else {  // random
    if (klass == InstanceClass::S10) {
      WeightedGraph g = gen_random_graph(shape, rng);
      write_text_file(out_path, write_graph_file(g));
      ClassReport r = classify_membership(laplacian_density(g), tol);
      if (!r.in_S1_0) {
        err << "generator postcondition failed: instance not in S1^0\n";
        return kExitInvalid;
      }
      summary = "random S1^0 instance";
    } else {
      RealMatrix a = gen_random_member(klass, shape, rng);
      ClassReport r = classify_membership(a, tol);
      bool ok = (klass == InstanceClass::S1) ? r.in_S1 : r.in_V1;
      if (!ok) {
        err << "generator postcondition failed: instance not in " << klass_name << '\n';
        return kExitInvalid;
      }
      write_text_file(out_path, write_matrix_file(a, shape));
      summary = "random " + klass_name + " instance";
    }
    artifacts = {out_path};
  }

  if (as_json) {
    out << json{{"class", klass_name}, {"kind", kind},     {"p", p},
                {"q", q},              {"seed", seed},     {"artifacts", artifacts},
                {"summary", summary}}
               .dump(2)
        << '\n';
  } else {
    out << summary << '\n';
    for (const std::string& a : artifacts) out << "  wrote " << a << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"separability analysis for graph-Laplacian and nonnegative density matrices"};
  app.require_subcommand(1);

  double tol = 1e-9;
  bool as_json = false;
  std::string format = "auto";
  app.add_option("--tol", tol, "tolerance (default 1e-9)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--json", as_json, "structured JSON report");
  app.add_option("--format", format, "input kind (default: inferred from header)")
      ->check(CLI::IsMember({"auto", "matrix", "graph"}));

  auto* classify_cmd = app.add_subcommand("classify", "decide separability of an instance");
  std::vector<std::string> classify_inputs;
  int jobs = 1;
  classify_cmd->add_option("inputs", classify_inputs, "matrix or graph files")->required();
  classify_cmd->add_option("--jobs", jobs, "classify files concurrently")
      ->check(CLI::Range(1, 256));

  auto* decompose_cmd = app.add_subcommand("decompose", "write a product decomposition");
  std::string decompose_input, decompose_out;
  decompose_cmd->add_option("input", decompose_input)->required();
  decompose_cmd->add_option("-o,--output", decompose_out, "decomposition file")->required();

  auto* verify_cmd = app.add_subcommand("verify", "check a decomposition against a matrix");
  std::string verify_matrix, verify_decomp;
  verify_cmd->add_option("matrix", verify_matrix)->required();
  verify_cmd->add_option("decomposition", verify_decomp)->required();

  auto* pt_cmd = app.add_subcommand("ptranspose", "write the partial transpose");
  std::string pt_input, pt_out;
  pt_cmd->add_option("input", pt_input)->required();
  pt_cmd->add_option("-o,--output", pt_out, "matrix file")->required();

  auto* witness_cmd = app.add_subcommand("witness", "minimum eigenpair of the partial transpose");
  std::string witness_input;
  witness_cmd->add_option("input", witness_input)->required();

  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  std::string gen_class, gen_kind = "random", gen_out;
  int gen_p = 2, gen_q = 2;
  uint64_t gen_seed = 1;
  gen_cmd->add_option("--class", gen_class, "s10, s1 or v1")
      ->required()
      ->check(CLI::IsMember({"s10", "s1", "v1"}));
  gen_cmd->add_option("--p", gen_p, "row factor dimension")->required()->check(CLI::Range(1, 64));
  gen_cmd->add_option("--q", gen_q, "column factor dimension")
      ->required()
      ->check(CLI::Range(1, 64));
  gen_cmd->add_option("--seed", gen_seed, "PRNG seed")->capture_default_str();
  gen_cmd->add_option("--kind", gen_kind, "separable, entangled or random")
      ->check(CLI::IsMember({"separable", "entangled", "random"}))
      ->capture_default_str();
  gen_cmd->add_option("-o,--output", gen_out, "instance file")->required();

  // Let --tol/--json/--format appear after the subcommand as well.
  for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  std::vector<const char*> argv;
  argv.push_back("lapsep");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    if (classify_cmd->parsed())
      return cmd_classify(classify_inputs, format, tol, as_json, jobs, out, err);
    if (decompose_cmd->parsed())
      return cmd_decompose(decompose_input, decompose_out, format, tol, as_json, out, err);
    if (verify_cmd->parsed())
      return cmd_verify(verify_matrix, verify_decomp, format, tol, as_json, out, err);
    if (pt_cmd->parsed()) return cmd_ptranspose(pt_input, pt_out, format, out);
    if (witness_cmd->parsed()) return cmd_witness(witness_input, format, tol, as_json, out);
    if (gen_cmd->parsed())
      return cmd_gen(gen_class, gen_p, gen_q, gen_seed, gen_kind, gen_out, tol, as_json, out,
                     err);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  err << "no subcommand\n";
  return kExitInvalid;
}

}  // namespace lapsep::cli
