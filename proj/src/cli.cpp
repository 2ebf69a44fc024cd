#include "forge/cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "forge/equation.hpp"
#include "forge/io.hpp"
#include "forge/kernel.hpp"
#include "forge/vnp.hpp"

namespace forge {

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) throw Error("SHA-256 failed");
  std::ostringstream out;
  for (unsigned i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int{md[i]};
  return out.str();
}

namespace {

struct Context {
  std::ostream& out;
  std::ostream& err;
  Parallelism par;
  Json params = Json::object();
  Json seeds = Json::array();
  Json inputs = Json::object();
  Json outputs = Json::object();
  Json warnings = Json::array();

  Json load(const std::string& path) {
    const std::string text = read_text_file(path);
    inputs[path] = sha256_hex(text);
    return parse_json(text);
  }

  void save(const std::string& path, const Json& j) {
    const std::string text = dump(j);
    write_text_file(path, text);
    outputs[path] = sha256_hex(text);
  }

  void warn(const std::string& what) {
    err << "warning: " << what << "\n";
    warnings.push_back(what);
  }
};

unsigned default_threads() {
  if (const char* env = std::getenv("FORGE_THREADS")) {
    try {
      const unsigned long v = std::stoul(env);
      if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw InvalidArgument(std::string("FORGE_THREADS must be an integer in [1, 1024], got '") + env + "'");
  }
  return 1;
}

std::vector<Constant> parse_constants(const std::string& list) {
  std::vector<Constant> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    out.push_back(constant_from_json(Json(item)));
  }
  return out;
}

Json file_ref(Context& ctx, const std::string& path) {
  return {{"path", path}, {"sha256", ctx.inputs.value(path, sha256_hex(read_text_file(path)))}};
}

// ---- class -----------------------------------------------------------------

struct ClassOpts {
  ClassParams params;
  std::string constants;
  std::string out;
};

int cmd_class(Context& ctx, ClassOpts& o) {
  if (!o.constants.empty()) o.params.constants = parse_constants(o.constants);
  validate_class_params(o.params);
  ctx.params = params_to_json(o.params);
  Json j;
  std::size_t members = 0;
  std::uint64_t circuits = 0;
  if (o.params.mode == "ff") {
    const auto cls = enumerate_definable_ff(o.params, ctx.par);
    j = class_to_json(cls);
    members = cls.members.size();
    circuits = cls.circuits;
  } else {
    const auto cls = enumerate_definable_int(o.params, ctx.par);
    j = class_to_json(cls);
    members = cls.members.size();
    circuits = cls.circuits;
  }
  ctx.save(o.out, j);
  ctx.out << "class: " << members << " members from " << circuits << " circuits (N = "
          << MonomialOrder(o.params.n, o.params.d).size() << ")\n";
  return 0;
}

// ---- hs build ----------------------------------------------------------------

struct HsOpts {
  std::string cls;
  std::string strategy = "greedy";
  std::uint64_t t = 0;
  std::uint64_t seed = 0;
  std::uint64_t grid_bound = 0;
  std::string out;
};

template <class Class, class Build, class Enc>
HittingSet build_hs(Context& ctx, const Class& cls, const HsOpts& o, Build build, Enc enc) {
  try {
    auto [hs, counterexample] = build();
    if (counterexample) {
      ctx.err << "counterexample: " << dump(enc(cls.members[*counterexample]));
      throw PropertyViolation("random hitting set of size " + std::to_string(o.t) + " misses class member " +
                              std::to_string(*counterexample));
    }
    return hs;
  } catch (const GridInsufficient& e) {
    ctx.err << "counterexample: " << dump(enc(cls.members[e.member()]));
    throw;
  }
}

int cmd_hs(Context& ctx, const HsOpts& o) {
  if (o.strategy != "greedy" && o.strategy != "random")
    throw InvalidArgument("strategy must be 'greedy' or 'random', got '" + o.strategy + "'");
  if (o.strategy == "random" && o.t == 0) throw InvalidArgument("random strategy needs --t >= 1");
  const auto loaded = class_from_json(ctx.load(o.cls));
  ctx.params = {{"strategy", o.strategy}, {"t", o.t}, {"grid_bound", o.grid_bound}};
  ctx.seeds.push_back(o.seed);
  HittingSet hs;
  std::uint64_t bound = 0;
  std::string bound_name;
  if (const auto* cls = std::get_if<FieldClass>(&loaded)) {
    if (o.grid_bound) throw InvalidArgument("--grid-bound applies to integer classes only");
    const auto K = FieldSpec::make(cls->params.p, cls->params.r);
    hs = build_hs(
        ctx, *cls, o,
        [&]() -> RandomHittingResult {
          if (o.strategy == "random") return random_hitting_set(*cls, K, o.t, o.seed, ctx.par);
          return {greedy_hitting_set(*cls, K, ctx.par, o.seed), std::nullopt};
        },
        [&](const FieldVector& f) { return coeffs_to_json(f, cls->params.p); });
    hs.verified = !verify_hitting_set(hs, *cls, ctx.par);
    bound = cls->params.m ? definable_hitting_set_size_bound(cls->params.s) : hitting_set_size_bound(cls->params.n, cls->params.s);
    bound_name = cls->params.m ? "ceil(2s(3 log s + 4))" : "ceil(2s(log n + 2 log s + 4))";
  } else {
    const auto& icls = std::get<IntClass>(loaded);
    const std::uint64_t B = o.grid_bound ? o.grid_bound
                            : icls.params.m ? vnp_grid_bound(icls.params.s, icls.params.d)
                                            : vp_grid_bound(icls.params.s, icls.params.d);
    hs = build_hs(
        ctx, icls, o,
        [&]() -> RandomHittingResult {
          if (o.strategy == "random") return random_hitting_set(icls, B, o.t, o.seed, ctx.par);
          return {greedy_hitting_set(icls, B, ctx.par, o.seed), std::nullopt};
        },
        [](const IntVector& f) { return coeffs_to_json(f); });
    hs.verified = !verify_hitting_set(hs, icls, ctx.par);
  }
  if (!hs.verified) throw PropertyViolation("hitting set failed verification");
  ctx.save(o.out, hitting_set_to_json(hs));
  ctx.out << "hitting set: |H| = " << hs.points.size();
  if (bound) ctx.out << " (bound " << bound_name << " = " << bound << ")";
  if (hs.mode == "int") ctx.out << " over [" << hs.grid_bound << "]^" << hs.n;
  ctx.out << "\n";
  if (bound && o.strategy == "greedy" && hs.points.size() > bound)
    throw PropertyViolation("greedy hitting set exceeds the size bound");
  return 0;
}

// ---- eq ----------------------------------------------------------------------

struct EqOpts {
  std::string hs;
  std::string out;
  std::string circuit;
};

Json equation_manifest_ff(const EquationFF& eq) {
  return {{"kind", "equation"},
          {"mode", "ff"},
          {"field", field_to_json(eq.F)},
          {"ext", field_to_json(eq.K)},
          {"n", eq.hs.n},
          {"d", eq.hs.d},
          {"N", eq.order.size()},
          {"hs_size", eq.hs.points.size()},
          {"factor_count", eq.factor_count()},
          {"formal_degree", eq.formal_degree()},
          {"degree_bound", eq.degree_bound()}};
}

Json equation_manifest_int(const EquationInt& eq) {
  return {{"kind", "equation"},
          {"mode", "int"},
          {"grid_bound", eq.B},
          {"n", eq.hs.n},
          {"d", eq.hs.d},
          {"N", eq.order.size()},
          {"hs_size", eq.hs.points.size()},
          {"M", to_string(eq.M)},
          {"ell", eq.ell},
          {"R", eq.R},
          {"factor_count", eq.factor_count()},
          {"linear_factor_count", eq.linear_factor_count()},
          {"formal_degree", eq.formal_degree()},
          {"degree_bound", eq.coarse_degree_bound()}};
}

int cmd_eq(Context& ctx, const EqOpts& o, const std::string& mode) {
  const HittingSet hs = hitting_set_from_json(ctx.load(o.hs));
  if (hs.mode != mode) throw InvalidArgument("build-" + mode + " needs a '" + mode + "' hitting set, got '" + hs.mode + "'");
  Json manifest;
  Circuit compiled;
  if (mode == "ff") {
    const auto eq = build_equation_ff(hs);
    manifest = equation_manifest_ff(eq);
    if (!o.circuit.empty()) compiled = compile_equation_ff(eq);
  } else {
    const auto eq = build_equation_int(hs);
    manifest = equation_manifest_int(eq);
    if (!o.circuit.empty()) compiled = compile_equation_int(eq);
  }
  manifest["hs"] = file_ref(ctx, o.hs);
  if (!o.circuit.empty()) {
    ctx.save(o.circuit, circuit_to_json(compiled));
    manifest["circuit"] = {{"path", o.circuit}, {"sha256", ctx.outputs[o.circuit]}, {"gates", compiled.size()}};
  }
  ctx.save(o.out, manifest);
  ctx.out << "equation (" << mode << "): N = " << manifest["N"] << ", |H| = " << hs.points.size()
          << ", factors = " << manifest["factor_count"] << ", formal degree = " << manifest["formal_degree"]
          << ", degree bound = " << manifest["degree_bound"];
  if (mode == "int") ctx.out << ", M = " << to_string(BigInt(manifest["M"].get<std::string>())) << ", ell = "
                             << manifest["ell"] << ", R = " << manifest["R"];
  ctx.out << "\n";
  return 0;
}

// ---- witness -----------------------------------------------------------------

struct WitnessOpts {
  std::string hs;
  std::string mode;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_witness(Context& ctx, const WitnessOpts& o) {
  const HittingSet hs = hitting_set_from_json(ctx.load(o.hs));
  if (!o.mode.empty() && o.mode != hs.mode)
    throw InvalidArgument("--mode " + o.mode + " does not match the hitting set mode " + hs.mode);
  ctx.seeds.push_back(o.seed);
  Json j;
  if (hs.mode == "ff") {
    const auto kb = kernel_basis_ff(eval_matrix_ff(hs));
    if (kb.basis.empty()) throw NotFound("evaluation matrix has a trivial kernel");
    j = coeffs_to_json(field_vector(hs.order(), sample_kernel(kb, o.seed)), hs.base_p);
    j["provenance"] = {{"source", "kernel"}, {"hs", file_ref(ctx, o.hs)}, {"seed", o.seed},
                       {"kernel_dimension", kb.basis.size()}};
    ctx.out << "witness: kernel sample (dim ker = " << kb.basis.size() << ", rank = " << kb.rank << ")\n";
  } else {
    const auto eq = build_equation_int(hs);
    const auto res = siegel_search(eval_matrix_int(hs), eq.M, ctx.par);
    if (!res.h)
      throw NotFound("no {-1,0,1} kernel vector on the first " + std::to_string(res.prefix) + " coordinates" +
                     (res.pigeonhole ? "" : " (pigeonhole condition 2^N > (2M+1)^|H| fails)"));
    j = coeffs_to_json(int_vector(hs.order(), *res.h));
    j["provenance"] = {{"source", "siegel"}, {"hs", file_ref(ctx, o.hs)}, {"seed", o.seed},
                       {"pigeonhole", res.pigeonhole}, {"prefix", res.prefix}};
    ctx.out << "witness: Siegel vector (pigeonhole " << (res.pigeonhole ? "holds" : "fails") << ", searched "
            << res.prefix << " of " << eq.order.size() << " coordinates)\n";
  }
  ctx.save(o.out, j);
  return 0;
}

// ---- verify ------------------------------------------------------------------

struct VerifyOpts {
  std::string eq;
  std::string cls;
  std::vector<std::string> witnesses;
  std::string report;
  bool exact = false;
};

int cmd_verify(Context& ctx, const VerifyOpts& o) {
  const Json manifest = ctx.load(o.eq);
  if (manifest.value("kind", "") != "equation") throw InvalidArgument("'" + o.eq + "' is not an equation manifest");
  const Json& ref = manifest.at("hs");
  const std::string hs_path = ref.at("path").get<std::string>();
  const Json hs_json = ctx.load(hs_path);
  if (ctx.inputs[hs_path] != ref.at("sha256").get<std::string>())
    throw InvalidArgument("hitting set '" + hs_path + "' changed since the equation was built");
  const HittingSet hs = hitting_set_from_json(hs_json);
  const auto loaded = class_from_json(ctx.load(o.cls));
  const std::string mode = manifest.at("mode").get<std::string>();
  if (mode != hs.mode) throw InvalidArgument("equation and hitting set modes differ");

  Json report{{"kind", "verify_report"}, {"mode", mode}, {"equation", o.eq}, {"class", o.cls}};
  report["degree"] = {{"formal_degree", manifest.at("formal_degree")}, {"degree_bound", manifest.at("degree_bound")}};
  bool ok = true;
  Json failures = Json::array();
  Json witnesses = Json::array();
  std::size_t members = 0;

  if (mode == "ff") {
    const auto* cls = std::get_if<FieldClass>(&loaded);
    if (!cls) throw InvalidArgument("finite-field equation with an integer class");
    if (cls->order != hs.order() || cls->params.p != hs.base_p)
      throw InvalidArgument("class order or base field differs from the equation's");
    const auto eq = build_equation_ff(hs);
    members = cls->members.size();
    for (const auto& f : cls->members) {
      const auto v = eval_equation_ff(eq, f);
      if (!eq.F.is_zero(v.value)) {
        ok = false;
        if (failures.size() < 5) failures.push_back(coeffs_to_json(f, hs.base_p));
      }
    }
    for (const auto& path : o.witnesses) {
      const auto w = field_vector_from_json(ctx.load(path), hs.base_p);
      if (w.order != eq.order) throw InvalidArgument("witness '" + path + "' uses a different monomial order");
      const auto v = eval_equation_ff(eq, w);
      const bool nonzero = !eq.F.is_zero(v.value);
      ok = ok && nonzero;
      witnesses.push_back({{"path", path}, {"value", v.value.packed}, {"reason", v.reason}, {"nonzero", nonzero}});
    }
  } else {
    const auto* cls = std::get_if<IntClass>(&loaded);
    if (!cls) throw InvalidArgument("integer equation with a finite-field class");
    if (cls->order != hs.order()) throw InvalidArgument("class order differs from the equation's");
    const auto eq = build_equation_int(hs);
    members = cls->members.size();
    for (const auto& f : cls->members) {
      if (!is_delta(f)) throw InvalidArgument("class member outside {-1, 0, 1}");
      const auto v = eval_equation_int_verdict(eq, f);
      bool zero = v.zero;
      if (o.exact && (eval_equation_int_exact(eq, f) == 0) != zero) {
        ok = false;
        ctx.warn("exact evaluator disagrees with the verdict");
      }
      if (!zero) {
        ok = false;
        if (failures.size() < 5) failures.push_back(coeffs_to_json(f));
      }
    }
    for (const auto& path : o.witnesses) {
      const auto w = int_vector_from_json(ctx.load(path));
      if (w.order != eq.order) throw InvalidArgument("witness '" + path + "' uses a different monomial order");
      if (!is_delta(w)) throw InvalidArgument("witness '" + path + "' has coefficients outside {-1, 0, 1}");
      const auto v = eval_equation_int_verdict(eq, w);
      ok = ok && !v.zero;
      Json entry{{"path", path}, {"nonzero", !v.zero}, {"reason", v.reason}};
      if (o.exact) entry["value_bits"] = value_bits(abs(eval_equation_int_exact(eq, w)));
      witnesses.push_back(entry);
    }
  }
  if (o.witnesses.empty()) ctx.warn("no witness supplied; usefulness sweep only");
  report["usefulness"] = {{"members", members}, {"failures", failures}, {"all_zero", failures.empty()}};
  report["witnesses"] = witnesses;
  report["warnings"] = ctx.warnings;
  report["verdict"] = ok ? "PASS" : "FAIL";
  if (!o.report.empty())
    ctx.save(o.report, report);
  else
    ctx.out << dump(report);
  ctx.out << "verify: " << (ok ? "PASS" : "FAIL") << " (" << members << " members, " << o.witnesses.size()
          << " witnesses)\n";
  if (!ok) throw PropertyViolation("equation failed verification");
  return 0;
}

// ---- vnp demo ----------------------------------------------------------------

struct VnpOpts {
  std::string mode = "ff";
  std::uint32_t p = 2;
  std::uint32_t r = 4;
  std::uint32_t n = 2;
  std::uint32_t d = 3;
  std::uint32_t m = 2;
  std::uint64_t seed = 0;
  std::uint64_t samples = 10;
  std::string out_dir;
};

int cmd_vnp(Context& ctx, const VnpOpts& o) {
  ClassParams params;
  params.mode = o.mode;
  params.p = o.p;
  params.r = o.r;
  params.n = o.n;
  params.d = o.d;
  params.m = o.m;
  params.s = o.n + o.m;
  params.delta = o.mode == "int";
  validate_class_params(params);
  ctx.params = params_to_json(params);
  ctx.seeds.push_back(o.seed);
  std::filesystem::path dir(o.out_dir);
  auto maybe_save = [&](const std::string& name, const Json& j) {
    if (!o.out_dir.empty()) ctx.save((dir / name).string(), j);
  };
  if (!o.out_dir.empty()) std::filesystem::create_directories(dir);

  Json summary{{"kind", "vnp_demo"}, {"params", params_to_json(params)}};
  bool ok = true;
  if (o.mode == "ff") {
    const auto cls = enumerate_definable_ff(params, ctx.par);
    maybe_save("class.json", class_to_json(cls));
    const auto hs = vnp_hitting_set(cls, "greedy", 0, o.seed, ctx.par);
    maybe_save("hs.json", hitting_set_to_json(hs));
    const auto eq = build_equation_ff(hs);
    maybe_save("equation.json", equation_manifest_ff(eq));
    std::size_t zero = 0;
    for (const auto& f : cls.members) zero += eq.F.is_zero(eval_equation_ff(eq, f).value);
    const auto kb = kernel_basis_ff(eval_matrix_ff(hs));
    std::size_t hits = 0;
    for (std::uint64_t k = 0; k < o.samples && !kb.basis.empty(); ++k) {
      const auto w = field_vector(eq.order, sample_kernel(kb, o.seed + k));
      hits += eval_equation_ff(eq, w).value == eq.F.one();
      if (k == 0) maybe_save("witness.json", coeffs_to_json(w, o.p));
    }
    ok = zero == cls.members.size() && hits == o.samples;
    summary["class_size"] = cls.members.size();
    summary["circuits"] = cls.circuits;
    summary["hs_size"] = hs.points.size();
    summary["hs_bound"] = definable_hitting_set_size_bound(params.s);
    summary["equation"] = equation_manifest_ff(eq);
    summary["usefulness_zero"] = zero;
    summary["kernel_dimension"] = kb.basis.size();
    summary["witness_hits"] = hits;
  } else {
    const auto cls = enumerate_definable_int(params, ctx.par);
    maybe_save("class.json", class_to_json(cls));
    const auto hs = vnp_hitting_set(cls, "greedy", 0, o.seed, ctx.par);
    maybe_save("hs.json", hitting_set_to_json(hs));
    const auto eq = build_equation_int(hs);
    maybe_save("equation.json", equation_manifest_int(eq));
    std::size_t zero = 0;
    for (const auto& f : cls.members) zero += eval_equation_int_verdict(eq, f).zero;
    const auto res = siegel_search(eval_matrix_int(hs), eq.M, ctx.par);
    bool witness_ok = false;
    if (res.h) {
      const auto w = int_vector(eq.order, *res.h);
      witness_ok = !eval_equation_int_verdict(eq, w).zero;
      maybe_save("witness.json", coeffs_to_json(w));
    }
    ok = zero == cls.members.size() && (witness_ok || !res.pigeonhole);
    if (!res.h) ctx.warn("no Siegel witness found");
    summary["class_size"] = cls.members.size();
    summary["circuits"] = cls.circuits;
    summary["hs_size"] = hs.points.size();
    summary["grid_bound"] = hs.grid_bound;
    summary["equation"] = equation_manifest_int(eq);
    summary["usefulness_zero"] = zero;
    summary["pigeonhole"] = res.pigeonhole;
    summary["witness_nonzero"] = witness_ok;
  }
  summary["verdict"] = ok ? "PASS" : "FAIL";
  ctx.out << dump(summary);
  if (!ok) throw PropertyViolation("definable pipeline failed");
  return 0;
}

// ---- dispatch ----------------------------------------------------------------

int exit_code_for(const std::exception_ptr& e, std::ostream& err) {
  try {
    std::rethrow_exception(e);
  } catch (const PropertyViolation& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  } catch (const InvalidArgument& ex) {
    err << "invalid input: " << ex.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& ex) {
    err << "budget exceeded: " << ex.what() << "\n";
    return 2;
  } catch (const Json::exception& ex) {
    err << "invalid input: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"forge: equations for small-circuit classes", "forge"};
  app.require_subcommand(1);
  unsigned threads = 0;
  std::string manifest;
  app.add_option("--threads", threads, "worker threads (default: FORGE_THREADS or 1)")->check(CLI::Range(1u, 1024u));
  app.add_option("--manifest", manifest, "write an experiment manifest to this file");

  ClassOpts class_opts;
  auto* c_class = app.add_subcommand("class", "enumerate a polynomial class");
  c_class->add_option("--mode", class_opts.params.mode, "ff or int")->required()->check(CLI::IsMember({"ff", "int"}));
  c_class->add_option("--p", class_opts.params.p, "characteristic of the base field");
  c_class->add_option("--r", class_opts.params.r, "extension degree of K");
  c_class->add_option("--n", class_opts.params.n, "number of variables")->required();
  c_class->add_option("--d", class_opts.params.d, "degree bound")->required();
  c_class->add_option("--s", class_opts.params.s, "circuit size")->required();
  c_class->add_option("--m", class_opts.params.m, "summation variables (definable class)");
  c_class->add_flag("--delta", class_opts.params.delta, "keep only {-1,0,1} coefficient vectors");
  c_class->add_option("--constants", class_opts.constants, "comma-separated constant menu");
  c_class->add_option("--out", class_opts.out, "class file")->required();

  HsOpts hs_opts;
  auto* c_hs = app.add_subcommand("hs", "hitting sets");
  c_hs->require_subcommand(1);
  auto* c_hs_build = c_hs->add_subcommand("build", "build a hitting set for a class file");
  c_hs_build->add_option("--class", hs_opts.cls, "class file")->required();
  c_hs_build->add_option("--strategy", hs_opts.strategy, "greedy or random");
  c_hs_build->add_option("--t", hs_opts.t, "number of random points");
  c_hs_build->add_option("--seed", hs_opts.seed, "random seed");
  c_hs_build->add_option("--grid-bound", hs_opts.grid_bound, "integer grid [B]^n");
  c_hs_build->add_option("--out", hs_opts.out, "hitting-set file")->required();

  EqOpts eq_opts;
  auto* c_eq = app.add_subcommand("eq", "equations");
  c_eq->require_subcommand(1);
  auto* c_eq_ff = c_eq->add_subcommand("build-ff", "finite-field equation");
  auto* c_eq_int = c_eq->add_subcommand("build-int", "integer equation");
  for (auto* sub : {c_eq_ff, c_eq_int}) {
    sub->add_option("--hs", eq_opts.hs, "hitting-set file")->required();
    sub->add_option("--out", eq_opts.out, "equation manifest")->required();
    sub->add_option("--circuit", eq_opts.circuit, "also write the compiled circuit");
  }

  WitnessOpts w_opts;
  auto* c_witness = app.add_subcommand("witness", "find a vector on which the equation is nonzero");
  c_witness->add_option("--hs", w_opts.hs, "hitting-set file")->required();
  c_witness->add_option("--mode", w_opts.mode, "ff or int (default: from the hitting set)");
  c_witness->add_option("--seed", w_opts.seed, "kernel sampling seed");
  c_witness->add_option("--out", w_opts.out, "witness file")->required();

  VerifyOpts v_opts;
  auto* c_verify = app.add_subcommand("verify", "check usefulness and witnesses");
  c_verify->add_option("--eq", v_opts.eq, "equation manifest")->required();
  c_verify->add_option("--class", v_opts.cls, "class file")->required();
  c_verify->add_option("--witness", v_opts.witnesses, "witness file (repeatable)");
  c_verify->add_option("--report", v_opts.report, "write the report here instead of stdout");
  c_verify->add_flag("--exact", v_opts.exact, "also run the exact integer evaluator");

  VnpOpts vnp_opts;
  auto* c_vnp = app.add_subcommand("vnp", "definable (exponential-sum) classes");
  c_vnp->require_subcommand(1);
  auto* c_vnp_demo = c_vnp->add_subcommand("demo", "run the definable-class pipeline");
  c_vnp_demo->add_option("--mode", vnp_opts.mode, "ff or int")->check(CLI::IsMember({"ff", "int"}));
  c_vnp_demo->add_option("--p", vnp_opts.p, "characteristic");
  c_vnp_demo->add_option("--r", vnp_opts.r, "extension degree");
  c_vnp_demo->add_option("--n", vnp_opts.n, "variables");
  c_vnp_demo->add_option("--d", vnp_opts.d, "degree bound");
  c_vnp_demo->add_option("--m", vnp_opts.m, "summation variables");
  c_vnp_demo->add_option("--seed", vnp_opts.seed, "seed");
  c_vnp_demo->add_option("--samples", vnp_opts.samples, "kernel samples (ff)");
  c_vnp_demo->add_option("--out-dir", vnp_opts.out_dir, "write artifacts into this directory");

  std::string replay_path;
  auto* c_replay = app.add_subcommand("replay", "re-run a manifest and compare output digests");
  c_replay->add_option("manifest", replay_path, "manifest file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  // Everything after the global options is the command proper.
  std::vector<std::string> command_args;
  {
    std::size_t i = 0;
    while (i < args.size() && (args[i] == "--threads" || args[i] == "--manifest")) i += 2;
    while (i < args.size() && (args[i].rfind("--threads=", 0) == 0 || args[i].rfind("--manifest=", 0) == 0)) ++i;
    command_args.assign(args.begin() + static_cast<std::ptrdiff_t>(std::min(i, args.size())), args.end());
  }

  Context ctx{out, err, {}};
  std::string command;
  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    ctx.par.threads = threads ? threads : default_threads();
    if (c_class->parsed()) {
      command = "class";
      code = cmd_class(ctx, class_opts);
    } else if (c_hs_build->parsed()) {
      command = "hs build";
      code = cmd_hs(ctx, hs_opts);
    } else if (c_eq_ff->parsed() || c_eq_int->parsed()) {
      command = c_eq_ff->parsed() ? "eq build-ff" : "eq build-int";
      code = cmd_eq(ctx, eq_opts, c_eq_ff->parsed() ? "ff" : "int");
    } else if (c_witness->parsed()) {
      command = "witness";
      code = cmd_witness(ctx, w_opts);
    } else if (c_verify->parsed()) {
      command = "verify";
      code = cmd_verify(ctx, v_opts);
    } else if (c_vnp_demo->parsed()) {
      command = "vnp demo";
      code = cmd_vnp(ctx, vnp_opts);
    } else if (c_replay->parsed()) {
      command = "replay";
      const Json m = ctx.load(replay_path);
      if (m.value("kind", "") != "manifest") throw InvalidArgument("'" + replay_path + "' is not a manifest");
      std::vector<std::string> again{"--threads", std::to_string(ctx.par.threads)};
      for (const auto& a : m.at("argv")) again.push_back(a.get<std::string>());
      if (again.size() > 2 && again[2] == "replay") throw InvalidArgument("refusing to replay a replay manifest");
      std::ostringstream sub_out;
      const int sub = run_cli(again, sub_out, err);
      if (sub != m.at("exit_code").get<int>())
        throw PropertyViolation("replay exit code " + std::to_string(sub) + " differs from recorded " +
                                std::to_string(m.at("exit_code").get<int>()));
      std::size_t same = 0;
      for (const auto& [path, digest] : m.at("outputs").items()) {
        const std::string now = sha256_hex(read_text_file(path));
        if (now != digest.get<std::string>()) throw PropertyViolation("replay output '" + path + "' differs");
        ++same;
      }
      out << "replay: " << same << " outputs byte-identical with " << ctx.par.threads << " threads\n";
    }
  } catch (...) {
    code = exit_code_for(std::current_exception(), err);
  }
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  if (!manifest.empty()) {
    Json m{{"kind", "manifest"},
           {"command", command},
           {"argv", command_args},
           {"threads", ctx.par.threads},
           {"params", ctx.params},
           {"seeds", ctx.seeds},
           {"inputs", ctx.inputs},
           {"outputs", ctx.outputs},
           {"timing_ms", elapsed},
           {"exit_code", code},
           {"verdict", code == 0 ? "ok" : code == 1 ? "property violated" : "invalid input"},
           {"warnings", ctx.warnings}};
    try {
      write_text_file(manifest, dump(m));
    } catch (const std::exception& e) {
      err << "invalid input: " << e.what() << "\n";
      return 2;
    }
  }
  return code;
}

}  // namespace forge
