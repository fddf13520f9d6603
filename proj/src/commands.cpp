#include "gcred/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <thread>

#include "gcred/reduction.hpp"
#include "gcred/sampling.hpp"
#include "gcred/structures.hpp"

namespace gcred {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Json vectors_json(const std::vector<Vec<Rational>>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(render_vector(v, 'e'));
  return out;
}

std::string render_matrix_rows(const Matrix<Rational>& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += r ? "; " : "";
    for (std::size_t c = 0; c < m.cols(); ++c) out += (c ? " " : "") + to_string(m(r, c));
  }
  return out;
}

std::string render_generalized(const Matrix<Rational>& op) {
  const std::size_t n = op.rows() / 2;
  std::string out;
  for (std::size_t c = 0; c < op.cols(); ++c) {
    out += (c ? ", " : "") + basis_label(n, c) + " -> " + to_string(Section<Rational>::from_coordinates(op.column(c)));
  }
  return out;
}

/// Twist rendered with representative labels when every representative is a coordinate vector.
std::optional<std::string> representative_labels(const Form<Rational>& twist, const Matrix<Rational>& reps) {
  std::vector<std::size_t> label;
  for (std::size_t c = 0; c < reps.cols(); ++c) {
    auto col = reps.column(c);
    std::optional<std::size_t> hit;
    for (std::size_t r = 0; r < col.size(); ++r) {
      if (is_zero(col[r])) continue;
      if (hit || col[r] != 1) return std::nullopt;
      hit = r;
    }
    if (!hit) return std::nullopt;
    label.push_back(*hit);
  }
  if (!std::is_sorted(label.begin(), label.end())) return std::nullopt;
  std::size_t dim = reps.rows();
  Form<Rational> relabelled(dim, twist.degree());
  for (const auto& [mask, c] : twist.terms()) {
    Mask m = 0;
    for (auto k : mask_indices(mask)) m |= Mask{1} << label[k];
    relabelled.add_term(m, c);
  }
  return to_string(relabelled);
}

struct Failure {
  std::string message;
};

class Context {
 public:
  Context(const ModelFile& file, const CommandOptions& options) : file_(file), options_(options) {}

  const ModelFile& file() const { return file_; }
  const CommandOptions& options() const { return options_; }

  const ExtendedAction& action() const {
    if (!file_.action) throw UsageError(file_.name + ": no [action] section");
    return *file_.action;
  }

  const GeneralizedMetric& metric() const {
    if (!file_.metric) throw UsageError(file_.name + ": no [metric] section");
    return *file_.metric;
  }

  std::vector<const StructureDecl*> decls(StructureKind kind) const {
    std::vector<const StructureDecl*> out;
    for (const auto& d : file_.structures)
      if (d.kind == kind) out.push_back(&d);
    return out;
  }

  /// The reduction, or the precondition that failed.
  const ReductionResult* reduction() {
    if (!reduction_done_) {
      reduction_done_ = true;
      ReduceOptions opts;
      opts.connection = file_.connection;
      if (file_.metric) opts.metric = file_.metric->g();
      try {
        reduction_ = reduce(action(), opts);
      } catch (const UsageError&) {
        throw;
      } catch (const GcredError& e) {
        reduction_error_ = e.what();
      }
    }
    return reduction_ ? &*reduction_ : nullptr;
  }
  const std::string& reduction_error() const { return reduction_error_; }

  const MetricReduction* metric_reduction() {
    if (!metric_done_) {
      metric_done_ = true;
      try {
        metric_reduction_ = reduce_metric(action(), metric());
      } catch (const UsageError&) {
        throw;
      } catch (const GcredError& e) {
        metric_error_ = e.what();
      }
    }
    return metric_reduction_ ? &*metric_reduction_ : nullptr;
  }
  const std::string& metric_error() const { return metric_error_; }

  GKStructure gk(const StructureDecl& d) const {
    const auto& a = d.operators[0];
    const auto& b = d.operators[1];
    if (file_.find_complex(a)) return gk_from_bihermitian(metric(), *file_.find_complex(a), *file_.find_complex(b));
    return {*file_.find_generalized(a), *file_.find_generalized(b)};
  }

 private:
  const ModelFile& file_;
  CommandOptions options_;
  bool reduction_done_ = false;
  std::optional<ReductionResult> reduction_;
  std::string reduction_error_;
  bool metric_done_ = false;
  std::optional<MetricReduction> metric_reduction_;
  std::string metric_error_;
};

std::string decl_label(const StructureDecl& d) {
  std::string out;
  for (const auto& o : d.operators) out += (out.empty() ? "" : ",") + o;
  if (d.kind == StructureKind::skt && d.side == Side::minus) out += " (V-)";
  return out;
}

bool untwisted_action(const ExtendedAction& a) {
  if (!a.model().twist().is_zero_form()) return false;
  for (const auto& s : a.g_images())
    if (!is_zero_vec(s.xi)) return false;
  return true;
}

Check kahler_persistence(const ReductionResult& r) {
  const auto& h = r.reduced_model.twist();
  return {"H = 0 and xi = 0 give H-red = 0", h.is_zero_form(), h.is_zero_form() ? "" : "H-red = " + to_string(h)};
}

void reduction_derived(Json& d, const ReductionResult& r) {
  d["reduced algebra"] = describe_algebra(r.reduced_model.algebra());
  d["representatives"] = vectors_json(r.representatives_in_m().columns());
  d["reduced twist"] = to_string(r.reduced_model.twist());
  if (auto lab = representative_labels(r.reduced_model.twist(), r.representatives_in_m())) {
    d["reduced twist (representative labels)"] = *lab;
  }
  d["reduced algebroid rank"] = 2 * r.reduced_dim();
}

void metric_derived(Json& d, const MetricReduction& mr, const ReducedCurvature& rc) {
  d["reduced g"] = render_matrix_rows(mr.reduced.g());
  d["reduced b"] = to_string(mr.reduced.b());
  d["tau+"] = vectors_json(mr.tau_plus.basis());
  d["tau-"] = vectors_json(mr.tau_minus.basis());
  d["reduced metric curvature"] = to_string(rc.via_db);
}

Report check_axioms_cmd(Context& ctx) {
  Report r{"check-axioms", ctx.file().name};
  const auto& m = ctx.file().model;
  r.checks = check_axioms(m);
  r.derived["algebra"] = describe_algebra(m.algebra());
  r.derived["twist"] = to_string(m.twist());
  return r;
}

Report check_action_cmd(Context& ctx) {
  Report r{"check-action", ctx.file().name};
  const auto& a = ctx.action();
  r.checks.append(check_courant_algebra(a.algebra()), "courant algebra: ");
  r.checks.append(validate_action(a));
  auto iso = is_isotropic(a);
  r.checks.add("K isotropic", iso.isotropic, iso.witness);
  r.checks.add(check_free(a));
  auto ks = k_spaces(a);
  if (iso.isotropic) r.checks.add(exactness_check(a));
  r.derived["dim K"] = ks.k.dim();
  r.derived["dim K-perp"] = ks.k_perp.dim();
  r.derived["dim K meet K-perp"] = ks.k_meet.dim();
  Json images = Json::array();
  for (std::size_t i = 0; i < a.algebra().dim(); ++i) {
    images.push_back(a.algebra().label(i) + " -> " + to_string(a.psi(a.algebra().basis(i))));
  }
  r.derived["images"] = images;
  return r;
}

Report reduce_cmd(Context& ctx) {
  Report r{"reduce", ctx.file().name};
  const auto& a = ctx.action();
  const auto* res = ctx.reduction();
  if (!res) {
    r.checks.add("reduction preconditions", false, ctx.reduction_error());
    return r;
  }
  r.checks.append(res->report);
  std::mt19937 rng(static_cast<std::uint32_t>(ctx.options().seed));
  r.checks.append(reduced_bracket_oracle(a, *res, rng, ctx.options().oracle_trials), "oracle: ");
  r.checks.add(round_trip_check(res->reduced_model));
  if (untwisted_action(a)) r.checks.add(kahler_persistence(*res));
  reduction_derived(r.derived, *res);
  EmitOptions emit{std::nullopt, {}, "reduced from " + ctx.file().name};
  if (ctx.file().metric) {
    const auto* mr = ctx.metric_reduction();
    if (!mr) {
      r.derived["metric reduction"] = "not performed: " + ctx.metric_error();
    } else {
      r.checks.append(mr->report, "metric: ");
      auto rc = reduced_metric_curvature(a, *mr);
      r.checks.add("metric: curvature by H + dB, by F and by the metric splitting", rc.agree, to_string(rc.via_db));
      metric_derived(r.derived, *mr, rc);
      emit.metric = mr->reduced;
    }
  }
  r.reduced_model = emit_model(res->reduced_model, emit);
  return r;
}

std::vector<const StructureDecl*> skt_like(Context& ctx) {
  auto out = ctx.decls(StructureKind::skt);
  if (out.empty()) throw UsageError(ctx.file().name + ": no skt structure declared");
  return out;
}

Report check_skt_cmd(Context& ctx) {
  Report r{"check-skt", ctx.file().name};
  auto skt = ctx.decls(StructureKind::skt);
  auto hkt = ctx.decls(StructureKind::hkt);
  if (skt.empty() && hkt.empty()) throw UsageError(ctx.file().name + ": no skt or hkt structure declared");
  const auto& f = ctx.file();
  for (const auto* d : skt) {
    r.checks.append(validate_skt(f.model, ctx.metric(), f.complex_structure(d->operators[0]), d->side),
                    decl_label(*d) + ": ");
  }
  for (const auto* d : hkt) {
    for (const auto& name : d->operators) {
      r.checks.append(validate_skt(f.model, ctx.metric(), f.complex_structure(name)), "hkt " + name + ": ");
    }
  }
  return r;
}

Report reduce_skt_cmd(Context& ctx) {
  Report r{"reduce-skt", ctx.file().name};
  auto decls = skt_like(ctx);
  const auto* mr = ctx.metric_reduction();
  if (!mr) {
    r.checks.add("metric reduction preconditions", false, ctx.metric_error());
    return r;
  }
  EmitOptions emit{mr->reduced, {}, "reduced from " + ctx.file().name};
  for (const auto* d : decls) {
    std::string label = decl_label(*d);
    try {
      auto s = reduce_skt(ctx.action(), *mr, ctx.file().complex_structure(d->operators[0]), d->side);
      r.checks.append(s.report, label + ": ");
      if (s.reduced_i) {
        r.derived[label + " reduced"] = render_operator(*s.reduced_i);
        emit.complex.emplace_back(d->operators[0], *s.reduced_i);
      }
    } catch (const UsageError&) {
      throw;
    } catch (const GcredError& e) {
      r.checks.add(label + ": preconditions", false, e.what());
    }
  }
  r.derived["reduced algebra"] = describe_algebra(mr->base.reduced_model.algebra());
  r.derived["reduced g"] = render_matrix_rows(mr->reduced.g());
  r.derived["reduced b"] = to_string(mr->reduced.b());
  r.derived["reduced twist"] = to_string(mr->base.reduced_model.twist());
  r.reduced_model = emit_model(mr->base.reduced_model, emit);
  return r;
}

Report reduce_hkt_cmd(Context& ctx) {
  Report r{"reduce-hkt", ctx.file().name};
  auto decls = ctx.decls(StructureKind::hkt);
  if (decls.empty()) throw UsageError(ctx.file().name + ": no hkt structure declared");
  const auto& f = ctx.file();
  for (const auto* d : decls) {
    std::string label = decl_label(*d);
    try {
      auto h = reduce_hkt(ctx.action(), ctx.metric(),
                          {f.complex_structure(d->operators[0]), f.complex_structure(d->operators[1]),
                           f.complex_structure(d->operators[2])});
      r.checks.append(h.report, decls.size() > 1 ? label + ": " : "");
      if (h.reduced) {
        for (std::size_t q = 0; q < 3; ++q) r.derived[d->operators[q] + " reduced"] = render_operator((*h.reduced)[q]);
      }
    } catch (const UsageError&) {
      throw;
    } catch (const GcredError& e) {
      r.checks.add(label + ": preconditions", false, e.what());
    }
  }
  return r;
}

void bihermitian_derived(Json& d, const Bihermitian& b, const std::string& prefix) {
  d[prefix + "g"] = render_matrix_rows(b.metric.g());
  d[prefix + "b"] = to_string(b.metric.b());
  d[prefix + "I+"] = render_operator(b.i_plus);
  d[prefix + "I-"] = render_operator(b.i_minus);
}

std::vector<const StructureDecl*> gk_decls(Context& ctx) {
  auto out = ctx.decls(StructureKind::gk);
  if (out.empty()) throw UsageError(ctx.file().name + ": no gk structure declared");
  return out;
}

Report check_gk_cmd(Context& ctx) {
  Report r{"check-gk", ctx.file().name};
  for (const auto* d : gk_decls(ctx)) {
    auto v = validate_gk(ctx.file().model, ctx.gk(*d));
    r.checks.append(v.report, decl_label(*d) + ": ");
    if (v.data) bihermitian_derived(r.derived, *v.data, decl_label(*d) + " ");
  }
  return r;
}

Report reduce_gk_cmd(Context& ctx) {
  Report r{"reduce-gk", ctx.file().name};
  for (const auto* d : gk_decls(ctx)) {
    std::string label = decl_label(*d);
    try {
      auto g = reduce_gk(ctx.action(), ctx.gk(*d));
      r.checks.append(g.report, label + ": ");
      if (g.reduced) {
        r.derived[label + " reduced J1"] = render_generalized(g.reduced->j1);
        r.derived[label + " reduced J2"] = render_generalized(g.reduced->j2);
      }
      if (g.reduced_data) bihermitian_derived(r.derived, *g.reduced_data, label + " reduced ");
      if (g.metric) r.derived[label + " reduced twist"] = to_string(g.metric->base.reduced_model.twist());
    } catch (const UsageError&) {
      throw;
    } catch (const GcredError& e) {
      r.checks.add(label + ": preconditions", false, e.what());
    }
  }
  return r;
}

using CommandFn = std::function<Report(Context&)>;

const std::vector<std::pair<std::string, CommandFn>>& table() {
  static const std::vector<std::pair<std::string, CommandFn>> t = {
      {"check-axioms", check_axioms_cmd}, {"check-action", check_action_cmd}, {"reduce", reduce_cmd},
      {"check-skt", check_skt_cmd},       {"reduce-skt", reduce_skt_cmd},     {"reduce-hkt", reduce_hkt_cmd},
      {"check-gk", check_gk_cmd},         {"reduce-gk", reduce_gk_cmd},
  };
  return t;
}

std::string pass_fail(bool b) { return b ? "pass" : "fail"; }

// Computed value for one expectation key, comparable with its expected string.
std::string actual_value(Context& ctx, const Expectation& e) {
  const auto& f = ctx.file();
  const std::string& k = e.key;
  if (k == "axioms") return pass_fail(check_axioms(f.model).passed());
  if (k == "action") {
    return pass_fail(validate_action(ctx.action()).passed() && check_courant_algebra(ctx.action().algebra()).passed());
  }
  if (k == "isotropic") return is_isotropic(ctx.action()).isotropic ? "yes" : "no";
  if (k == "free") return check_free(ctx.action()).passed ? "yes" : "no";
  if (k == "exactness") return pass_fail(exactness_check(ctx.action()).passed);
  if (k == "reduce") {
    const auto* r = ctx.reduction();
    return r ? pass_fail(r->report.passed()) : "error";
  }
  if (k == "reduce_error") {
    ctx.reduction();
    const auto& msg = ctx.reduction_error();
    return msg.find(e.value) != std::string::npos ? e.value : (msg.empty() ? "no error" : msg);
  }
  auto need_reduction = [&]() -> const ReductionResult& {
    const auto* r = ctx.reduction();
    if (!r) throw Failure{"reduction failed: " + ctx.reduction_error()};
    return *r;
  };
  auto need_metric = [&]() -> const MetricReduction& {
    const auto* m = ctx.metric_reduction();
    if (!m) throw Failure{"metric reduction failed: " + ctx.metric_error()};
    return *m;
  };
  if (k == "reduced_dim") return std::to_string(need_reduction().reduced_dim());
  if (k == "reduced_brackets") return describe_algebra(need_reduction().reduced_model.algebra());
  if (k == "reduced_twist") {
    const auto& r = need_reduction();
    Form<Rational> expected = parse_form(e.value, r.reduced_dim(), 3);
    return expected == r.reduced_model.twist() ? e.value : to_string(r.reduced_model.twist());
  }
  if (k == "metric_reduce") {
    const auto* m = ctx.metric_reduction();
    return m ? pass_fail(m->report.passed()) : "error";
  }
  if (k == "reduced_g") {
    const auto& m = need_metric();
    return parse_metric_matrix(e.value, m.reduced.dim()) == m.reduced.g() ? e.value : render_matrix_rows(m.reduced.g());
  }
  if (k == "curvature") {
    const auto& m = need_metric();
    auto rc = reduced_metric_curvature(ctx.action(), m);
    return parse_form(e.value, m.reduced.dim(), 3) == rc.via_db ? e.value : to_string(rc.via_db);
  }
  if (k == "skt") return pass_fail(check_skt_cmd(ctx).passed());
  if (k == "skt_criterion" || k == "reduce_skt") {
    const auto& m = need_metric();
    bool all = true;
    for (const auto* d : skt_like(ctx)) {
      auto s = reduce_skt(ctx.action(), m, f.complex_structure(d->operators[0]), d->side);
      all = all && (k == "skt_criterion" ? s.criterion.passed : s.report.passed());
    }
    return pass_fail(all);
  }
  if (k == "hkt_criteria") {
    auto decls = ctx.decls(StructureKind::hkt);
    if (decls.empty()) throw UsageError(f.name + ": no hkt structure declared");
    const auto* d = decls.front();
    std::string out;
    for (const auto& name : d->operators) {
      auto s = reduce_skt(ctx.action(), need_metric(), f.complex_structure(name));
      out += (out.empty() ? "" : " ") + pass_fail(s.criterion.passed);
    }
    return out;
  }
  if (k == "reduce_hkt") return pass_fail(reduce_hkt_cmd(ctx).passed());
  if (k == "gk") return pass_fail(check_gk_cmd(ctx).passed());
  if (k == "reduce_gk") return pass_fail(reduce_gk_cmd(ctx).passed());
  throw UsageError("unknown expectation '" + k + "'");
}

void sampled_skt_property(Context& ctx, ValidationReport& out) {
  const auto& f = ctx.file();
  if (!f.metric) return;
  for (const auto* d : ctx.decls(StructureKind::skt)) {
    const auto& i = f.complex_structure(d->operators[0]);
    if (!validate_skt(f.model, *f.metric, i, d->side).passed()) continue;
    std::mt19937 rng(static_cast<std::uint32_t>(ctx.options().seed ^ fnv1a(f.name + decl_label(*d))));
    int sampled = 0, criterion = 0, counterexamples = 0;
    std::string witness;
    for (int t = 0; t < ctx.options().sampled_actions; ++t) {
      auto a = random_preserved_action(f.model, *f.metric, {i}, rng);
      if (!a) continue;
      ++sampled;
      auto s = reduce_skt(*a, *f.metric, i, d->side);
      if (!s.criterion.passed) continue;
      ++criterion;
      if (!s.report.passed()) {
        ++counterexamples;
        for (const auto& c : s.report.checks())
          if (!c.passed && witness.empty()) witness = "; first failure: " + c.name;
      }
    }
    out.add("sampled actions: criterion implies reduced SKT (" + decl_label(*d) + ")", counterexamples == 0,
            std::to_string(sampled) + " sampled, " + std::to_string(criterion) + " satisfy the criterion, " +
                std::to_string(counterexamples) + " counterexamples" + witness);
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, fn] : table()) out.push_back(k);
    out.push_back("corpus-verify");
    return out;
  }();
  return names;
}

Report run_command(const std::string& command, const ModelFile& file, const CommandOptions& options) {
  for (const auto& [k, fn] : table()) {
    if (k != command) continue;
    Context ctx(file, options);
    return fn(ctx);
  }
  throw UsageError("unknown command '" + command + "'");
}

Report verify_model(const ModelFile& file, const CommandOptions& options) {
  Report r{"verify", file.name};
  Context ctx(file, options);
  for (const auto& e : file.expectations) {
    std::string name = e.key + " = " + e.value;
    try {
      std::string got = actual_value(ctx, e);
      r.checks.add(name, got == e.value, got == e.value ? "" : "got " + got);
    } catch (const Failure& fl) {
      r.checks.add(name, false, fl.message);
    } catch (const UsageError& ue) {
      r.checks.add(name, false, ue.what());
    } catch (const GcredError& ge) {
      r.checks.add(name, false, std::string("error: ") + ge.what());
    } catch (const InternalError& ie) {
      r.checks.add(name, false, std::string("internal error: ") + ie.what());
    }
  }
  try {
    r.checks.add(round_trip_check(file.model));
    if (file.action) {
      if (const auto* red = ctx.reduction()) {
        std::mt19937 rng(static_cast<std::uint32_t>(options.seed ^ fnv1a(file.name)));
        r.checks.append(reduced_bracket_oracle(*file.action, *red, rng, options.oracle_trials), "oracle: ");
        auto rt = round_trip_check(red->reduced_model);
        r.checks.add("reduced model round trip", rt.passed, rt.detail);
        if (untwisted_action(*file.action)) r.checks.add(kahler_persistence(*red));
      }
    }
    sampled_skt_property(ctx, r.checks);
  } catch (const GcredError& ge) {
    r.checks.add("properties", false, std::string("error: ") + ge.what());
  } catch (const InternalError& ie) {
    r.checks.add("properties", false, std::string("internal error: ") + ie.what());
  }
  return r;
}

Report corpus_verify(const std::string& directory, const CommandOptions& options) {
  namespace fs = std::filesystem;
  std::vector<fs::path> paths;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(directory, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".gcm") paths.push_back(entry.path());
  }
  if (ec) throw UsageError("cannot read corpus directory " + directory + ": " + ec.message());
  if (paths.empty()) throw UsageError("no .gcm files in " + directory);
  std::sort(paths.begin(), paths.end(), [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

  std::vector<ValidationReport> results(paths.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < paths.size(); k = next++) {
      try {
        auto file = parse_model_file(paths[k].string());
        results[k].add("parses", true);
        results[k].append(verify_model(file, options).checks);
      } catch (const ParseError& e) {
        results[k].add("parses", false, e.what());
      } catch (const std::exception& e) {
        results[k].add("verification", false, e.what());
      }
    }
  };
  unsigned threads = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(paths.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Report r{"corpus-verify", fs::path(directory).filename().string()};
  Json files = Json::array();
  for (std::size_t k = 0; k < paths.size(); ++k) {
    std::string name = paths[k].filename().string();
    r.checks.append(results[k], name + ": ");
    std::size_t failed = 0;
    for (const auto& c : results[k].checks())
      if (!c.passed) ++failed;
    files.push_back(name + ": " + (failed == 0 ? "pass" : "fail") + " (" + std::to_string(results[k].checks().size()) +
                    " checks)");
  }
  r.derived["files"] = files;
  return r;
}

std::string describe_algebra(const LieAlgebra& algebra) {
  auto rels = algebra.relations();
  if (rels.empty()) return "abelian dim " + std::to_string(algebra.dim());
  std::string out = "dim " + std::to_string(algebra.dim()) + ": ";
  for (std::size_t k = 0; k < rels.size(); ++k) {
    out += (k ? "; " : "") + std::string("[e") + std::to_string(rels[k].i + 1) + ",e" + std::to_string(rels[k].j + 1) +
           "] = " + render_vector(rels[k].value, 'e');
  }
  return out;
}

std::string render_operator(const Matrix<Rational>& op) {
  std::string out;
  for (std::size_t c = 0; c < op.cols(); ++c) {
    out += (c ? ", " : "") + std::string("e") + std::to_string(c + 1) + " -> " + render_vector(op.column(c), 'e');
  }
  return out;
}

Check round_trip_check(const CourantModel& model) {
  std::string text = emit_model(model);
  try {
    auto back = parse_model(text, "<emitted>");
    bool same = back.model.algebra() == model.algebra() && back.model.twist() == model.twist();
    return {"model round trip", same, same ? "" : "re-parsed model differs"};
  } catch (const ParseError& e) {
    return {"model round trip", false, e.what()};
  }
}

}  // namespace gcred
