// entmono: command-line front end over the entanglement toolkit.
//
// Subcommands: measure, roof, audit, alpha, ckw, witness, probe, gen.
// Singleton commands emit one JSON object; batch commands emit JSON lines.
// With --out the JSON goes to the file and a short summary to stdout;
// without it the JSON goes to stdout and the summary to stderr.
//
// Exit codes: 0 ok, 1 usage, 2 numeric contract violation, 3 I/O.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "entmono/core.hpp"
#include "entmono/ensemble.hpp"
#include "entmono/entropy.hpp"
#include "entmono/measures.hpp"
#include "entmono/monogamy.hpp"
#include "entmono/roof.hpp"
#include "entmono/serialize.hpp"
#include "entmono/structure.hpp"
#include "entmono/types.hpp"
#include "entmono/version.hpp"

namespace {

using namespace entmono;

[[noreturn]] void usage_fail(const std::string& msg) { throw CLI::ValidationError(msg); }

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      const int v = std::stoi(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      usage_fail(std::string(what) + ": cannot parse '" + item + "' as an integer");
    }
  }
  if (out.empty()) usage_fail(std::string(what) + ": empty list");
  return out;
}

std::vector<int> cut_side(const std::string& side, int subsystems) {
  if (side.empty()) usage_fail("cut: empty side");
  if (std::isalpha(static_cast<unsigned char>(side[0]))) {
    std::vector<int> labels;
    for (char c : side) {
      const int k = std::toupper(static_cast<unsigned char>(c)) - 'A';
      if (k < 0 || k >= subsystems) {
        usage_fail("cut: label '" + std::string(1, c) + "' outside " +
                   std::to_string(subsystems) + " subsystems");
      }
      labels.push_back(k);
    }
    return labels;
  }
  auto labels = parse_int_list(side, "cut");
  for (int k : labels) {
    if (k < 0 || k >= subsystems) {
      usage_fail("cut: index " + std::to_string(k) + " outside " +
                 std::to_string(subsystems) + " subsystems");
    }
  }
  return labels;
}

// "A|BC", "AB|C", "0|1,2", or a bare side "0,1" / "AB". Both sides together
// must cover every subsystem exactly once when the bar is present.
std::vector<int> parse_cut(const std::string& text, int subsystems) {
  std::string left = text, right;
  if (const auto bar = text.find('|'); bar != std::string::npos) {
    left = text.substr(0, bar);
    right = text.substr(bar + 1);
  }
  std::vector<int> cut = cut_side(left, subsystems);
  std::vector<int> seen(static_cast<size_t>(subsystems), 0);
  for (int k : cut) {
    if (seen[static_cast<size_t>(k)]++) usage_fail("cut: repeated subsystem " + std::to_string(k));
  }
  if (!right.empty()) {
    for (int k : cut_side(right, subsystems)) {
      if (seen[static_cast<size_t>(k)]++) {
        usage_fail("cut: subsystem " + std::to_string(k) + " appears on both sides");
      }
    }
    for (int k = 0; k < subsystems; ++k) {
      if (!seen[static_cast<size_t>(k)]) {
        usage_fail("cut: subsystem " + std::to_string(k) + " missing from '" + text + "'");
      }
    }
  }
  if (static_cast<int>(cut.size()) >= subsystems) usage_fail("cut: one side must be non-empty");
  std::sort(cut.begin(), cut.end());
  return cut;
}

// --- input resolution ------------------------------------------------------

struct InputOpts {
  std::vector<std::string> files;
  std::string family;
  std::string dims_text;
  int count = 1;
  int rank = 0;
  int index = -1;  // >= 0 picks a single generator member
};

void add_input_flags(CLI::App* cmd, InputOpts& in, bool batch) {
  cmd->add_option("--file", in.files,
                  batch ? "state file(s), repeatable" : "state file (single JSON object)");
  cmd->add_option("--family", in.family,
                  "generator family: haar-pure | ginibre | product-family | ghz | w | bell | bell-c");
  cmd->add_option("--dims", in.dims_text, "subsystem dimensions, e.g. 2,4,2");
  if (batch) {
    cmd->add_option("--count", in.count, "ensemble size")->check(CLI::PositiveNumber);
    cmd->add_option("--index", in.index, "pick a single ensemble member");
  } else {
    cmd->add_option("--index", in.index, "ensemble member to use (default 0)");
  }
  cmd->add_option("--rank", in.rank, "ginibre rank (0 = full)")->check(CLI::NonNegativeNumber);
}

bool family_is_random(const std::string& family) {
  return family == "haar-pure" || family == "ginibre" || family == "product-family";
}

EnsembleSpec build_spec(const InputOpts& in) {
  EnsembleSpec spec;
  spec.family = in.family == "bell" ? "bell-c" : in.family;  // bell = dedicated map below
  spec.dims = in.dims_text.empty() ? std::vector<int>{} : parse_int_list(in.dims_text, "dims");
  spec.count = in.count;
  spec.rank = in.rank;
  return spec;
}

AnyState generator_member(const InputOpts& in, std::uint64_t seed, int index) {
  if (in.family == "bell") {
    if (!in.dims_text.empty() && parse_int_list(in.dims_text, "dims") != std::vector<int>{2, 2}) {
      usage_fail("the bell family is a two-qubit pair");
    }
    return bell_pair();
  }
  const EnsembleSpec spec = build_spec(in);
  if (spec.pure()) return ensemble_pure(spec, seed, index);
  return ensemble_density(spec, seed, index);
}

std::string generator_label(const InputOpts& in, int index) {
  if (in.family == "bell") return "bell#" + std::to_string(index);
  return member_label(build_spec(in), index);
}

// Every state this command will touch, with a printable label per member.
struct ResolvedInput {
  std::vector<AnyState> states;
  std::vector<std::string> labels;
  bool randomized = false;
};

ResolvedInput resolve_input(const InputOpts& in, std::uint64_t seed, bool batch) {
  ResolvedInput out;
  if (!in.files.empty() && !in.family.empty()) usage_fail("give either --file or --family");
  if (in.files.empty() && in.family.empty()) usage_fail("an input is required: --file or --family");
  if (!in.files.empty()) {
    if (!batch && in.files.size() != 1) usage_fail("this command takes a single --file");
    for (const auto& path : in.files) {
      out.states.push_back(load_state(path));
      out.labels.push_back(path);
    }
    return out;
  }
  if (in.family != "bell") build_spec(in).validate();  // fail before any work
  out.randomized = family_is_random(in.family);
  int lo = 0, hi = in.count;
  if (in.index >= 0) {
    lo = in.index;
    hi = in.index + 1;
  } else if (!batch) {
    lo = 0;
    hi = 1;
  }
  for (int i = lo; i < hi; ++i) {
    out.states.push_back(generator_member(in, seed, i));
    out.labels.push_back(generator_label(in, i));
  }
  return out;
}

Json input_config(const InputOpts& in) {
  Json j;
  if (!in.files.empty()) {
    j["files"] = in.files;
    return j;
  }
  j["family"] = in.family;
  if (!in.dims_text.empty()) j["dims"] = parse_int_list(in.dims_text, "dims");
  j["count"] = in.count;
  if (in.family == "ginibre") j["rank"] = in.rank;
  if (in.index >= 0) j["index"] = in.index;
  return j;
}

// --- output ------------------------------------------------------------------

Json result_shell(const std::string& command, std::uint64_t seed) {
  Json j;
  j["command"] = command;
  j["version"] = kVersion;
  j["seed"] = seed;
  j["flags"] = Json::array();
  return j;
}

void emit(const Json& j, const std::string& out_path, const std::string& summary) {
  if (!out_path.empty()) {
    write_json_file(j, out_path);
    if (!summary.empty()) std::cout << summary << "\n";
    return;
  }
  std::cout << j.dump(2) << "\n";
  if (!summary.empty()) std::cerr << summary << "\n";
}

// JSONL sink honoring the same --out convention as emit().
class LineSink {
 public:
  explicit LineSink(const std::string& out_path) {
    if (!out_path.empty()) {
      file_.open(out_path);
      if (!file_) throw io_error("cannot open '" + out_path + "' for writing");
      to_file_ = true;
      path_ = out_path;
    }
  }
  void write(const Json& j) {
    std::ostream& os = to_file_ ? static_cast<std::ostream&>(file_) : std::cout;
    os << j.dump() << "\n";
    if (to_file_ && !file_) throw io_error("write to '" + path_ + "' failed");
  }
  // Human summary: stdout when records went to a file, stderr otherwise.
  std::ostream& summary() { return to_file_ ? std::cout : std::cerr; }

 private:
  std::ofstream file_;
  bool to_file_ = false;
  std::string path_;
};

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(12);
  ss << v;
  return ss.str();
}

MeasureSpec parse_measure_or_usage(const std::string& text) {
  try {
    return parse_measure_spec(text);
  } catch (const std::exception& e) {
    usage_fail(e.what());
  }
}

// --- shared command state ----------------------------------------------------

struct GlobalOpts {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out;
  int threads = 1;
  double tol = 0.0;
  bool tol_given = false;
};

void add_global_flags(CLI::App* cmd, GlobalOpts& g) {
  cmd->add_option("--seed", g.seed, "base RNG seed (required for randomized input)")
      ->each([&g](const std::string&) { g.seed_given = true; });
  cmd->add_option("--out", g.out, "write JSON here instead of stdout");
  cmd->add_option("--threads", g.threads, "worker threads for roof restarts")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", g.tol, "command-primary tolerance override")
      ->each([&g](const std::string&) { g.tol_given = true; });
}

void require_seed_if(bool randomized, const GlobalOpts& g) {
  if (randomized && !g.seed_given) usage_fail("--seed is required for randomized input");
}

struct OptimizerFlags {
  OptimizerConfig cfg;

  void add(CLI::App* cmd) {
    cmd->add_option("--restarts", cfg.restarts, "optimizer restarts")->check(CLI::PositiveNumber);
    cmd->add_option("--max-evals", cfg.max_evals, "objective-evaluation budget per restart")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--n-extra", cfg.n_extra, "ensemble size above rank");
    cmd->add_option("--value-floor", cfg.value_floor, "treat values below this as zero");
  }

  OptimizerConfig resolved(const GlobalOpts& g, bool tol_is_opt_tol) const {
    OptimizerConfig out = cfg;
    out.seed = g.seed;
    out.threads = g.threads;
    if (tol_is_opt_tol && g.tol_given) out.tol = g.tol;
    return out;
  }
};

// --- subcommand handlers ------------------------------------------------------

int run_measure(const InputOpts& in, const GlobalOpts& g, const OptimizerFlags& opt,
                const std::string& cut_text, const std::string& spec_text) {
  const MeasureSpec spec = parse_measure_or_usage(spec_text);
  ResolvedInput input = resolve_input(in, g.seed, false);
  require_seed_if(input.randomized, g);
  const AnyState& state = input.states[0];
  const DimSignature& sig = std::holds_alternative<PureState>(state)
                                ? std::get<PureState>(state).signature()
                                : std::get<DensityMatrix>(state).signature();
  const std::vector<int> cut = parse_cut(cut_text, sig.subsystems());

  Json j = result_shell("measure", g.seed);
  j["config"] = Json{{"input", input_config(in)}, {"cut", cut}, {"spec", spec.name()}};
  double value = 0.0;
  if (std::holds_alternative<PureState>(state)) {
    value = pure_measure(std::get<PureState>(state), cut, spec);
  } else {
    const DensityMatrix& rho = std::get<DensityMatrix>(state);
    if (spec.kind == MeasureKind::negativity) {
      value = negativity(rho, cut);
    } else {
      const OptimizerConfig cfg = opt.resolved(g, true);
      const RoofResult res = roof_value(rho, cut, spec, cfg);
      value = res.value;
      j["config"]["optimizer"] = to_json(cfg);
      j["roof"] = Json{{"converged", res.converged},
                       {"evaluations", res.evaluations},
                       {"spectral_average", res.spectral_average}};
      if (!res.converged) j["flags"].push_back("optimizer-not-converged");
    }
  }
  j["state"] = input.labels[0];
  j["value"] = value;
  emit(j, g.out, spec.name() + "(" + input.labels[0] + ") = " + fmt(value));
  return 0;
}

int run_roof(const InputOpts& in, const GlobalOpts& g, const OptimizerFlags& opt,
             const std::string& cut_text, const std::string& spec_text, const std::string& g_name) {
  const MeasureSpec spec = parse_measure_or_usage(spec_text);
  if (spec.kind == MeasureKind::negativity) usage_fail("negativity has no roof form");
  ResolvedInput input = resolve_input(in, g.seed, false);
  require_seed_if(input.randomized, g);
  const AnyState& state = input.states[0];
  const DensityMatrix rho = std::holds_alternative<PureState>(state)
                                ? std::get<PureState>(state).projector()
                                : std::get<DensityMatrix>(state);
  const std::vector<int> cut = parse_cut(cut_text, rho.signature().subsystems());
  const OptimizerConfig cfg = opt.resolved(g, true);

  const RoofResult res = g_name == "identity" ? roof_value(rho, cut, spec, cfg)
                                              : e_g_roof(rho, cut, spec, g_name, cfg);
  Json j = result_shell("roof", g.seed);
  j["config"] = Json{{"input", input_config(in)},
                     {"cut", cut},
                     {"spec", spec.name()},
                     {"g", g_name},
                     {"optimizer", to_json(cfg)}};
  j["state"] = input.labels[0];
  j["result"] = to_json(res);
  if (!res.converged) j["flags"].push_back("optimizer-not-converged");
  emit(j, g.out,
       "roof " + spec.name() + (g_name == "identity" ? "" : " o " + g_name) + " = " +
           fmt(res.value) + (res.converged ? "" : "  [not converged]"));
  return 0;
}

AuditConfig audit_config(const GlobalOpts& g, const OptimizerFlags& opt, double eps_gap,
                         bool with_witness, bool product_distance) {
  AuditConfig cfg;
  cfg.opt = opt.resolved(g, false);
  if (g.tol_given) {
    cfg.eps_gap_pure = g.tol;
    cfg.eps_gap_mixed = g.tol;
  }
  if (eps_gap > 0) {
    cfg.eps_gap_pure = eps_gap;
    cfg.eps_gap_mixed = eps_gap;
  }
  cfg.with_witness = with_witness;
  cfg.with_product_distance = product_distance;
  return cfg;
}

AuditRecord audit_one(const AnyState& state, const std::string& label, std::uint64_t seed,
                      int index, const MeasureSpec& spec, const AuditConfig& cfg) {
  AuditRecord rec = std::holds_alternative<PureState>(state)
                        ? disentangling_gap(std::get<PureState>(state), spec, cfg)
                        : disentangling_gap(std::get<DensityMatrix>(state), spec, cfg);
  rec.state = label;
  rec.seed = derive_seed(seed, static_cast<std::uint64_t>(index));
  return rec;
}

int run_audit(const InputOpts& in, const GlobalOpts& g, const OptimizerFlags& opt,
              const std::string& spec_text, double eps_gap, bool with_witness,
              bool product_distance) {
  const MeasureSpec spec = parse_measure_or_usage(spec_text);
  ResolvedInput input = resolve_input(in, g.seed, true);
  require_seed_if(input.randomized, g);
  const AuditConfig cfg = audit_config(g, opt, eps_gap, with_witness, product_distance);

  LineSink sink(g.out);
  std::vector<double> gaps;
  int disentangled = 0;
  int outcome_counts[4] = {0, 0, 0, 0};
  int not_converged = 0;
  for (size_t i = 0; i < input.states.size(); ++i) {
    const AuditRecord rec =
        audit_one(input.states[i], input.labels[i], g.seed, static_cast<int>(i), spec, cfg);
    sink.write(to_json(rec));
    gaps.push_back(rec.gap);
    if (rec.disentangled) ++disentangled;
    if (rec.witness) ++outcome_counts[static_cast<int>(*rec.witness)];
    if (!rec.roofs_converged) ++not_converged;
  }
  std::sort(gaps.begin(), gaps.end());
  const size_t n = gaps.size();
  const double median = n % 2 ? gaps[n / 2] : 0.5 * (gaps[n / 2 - 1] + gaps[n / 2]);
  std::ostream& os = sink.summary();
  os << "audited " << n << " state(s)  measure " << spec.name() << "  eps_gap "
     << cfg.eps_gap_pure << "\n";
  os << "gap: min " << gaps.front() << "  median " << median << "  max " << gaps.back() << "\n";
  os << "disentangled: " << disentangled << " / " << n << "\n";
  if (cfg.with_witness) {
    os << "witness outcomes: factored " << outcome_counts[0] << " | product_AC "
       << outcome_counts[1] << " | separable_AC_ppt " << outcome_counts[2] << " | none "
       << outcome_counts[3] << "\n";
  }
  if (not_converged) os << "flags: optimizer-not-converged on " << not_converged << " state(s)\n";
  return 0;
}

int run_alpha(const InputOpts& in, const GlobalOpts& g, const OptimizerFlags& opt,
              const std::string& spec_text, double lo, double hi, double resolution) {
  const MeasureSpec spec = parse_measure_or_usage(spec_text);
  ResolvedInput input = resolve_input(in, g.seed, true);
  require_seed_if(input.randomized, g);
  AuditConfig cfg = audit_config(g, opt, 0.0, false, false);
  cfg.alpha_lo = lo;
  cfg.alpha_hi = hi;
  cfg.alpha_resolution = resolution;

  std::vector<AuditRecord> records;
  for (size_t i = 0; i < input.states.size(); ++i) {
    records.push_back(
        audit_one(input.states[i], input.labels[i], g.seed, static_cast<int>(i), spec, cfg));
  }
  const AlphaSearchResult res = alpha_from_records(records, cfg);

  Json j = result_shell("alpha", g.seed);
  j["config"] = Json{{"input", input_config(in)},
                     {"spec", spec.name()},
                     {"alpha_lo", lo},
                     {"alpha_hi", hi},
                     {"resolution", resolution},
                     {"optimizer", to_json(cfg.opt)}};
  j["result"] = to_json(res);
  Json recs = Json::array();
  int not_converged = 0;
  for (const AuditRecord& rec : records) {
    recs.push_back(to_json(rec));
    if (!rec.roofs_converged) ++not_converged;
  }
  j["records"] = recs;
  if (not_converged) j["flags"].push_back("optimizer-not-converged");
  emit(j, g.out,
       res.found ? "alpha = " + fmt(res.alpha) + " over " + std::to_string(res.samples) +
                       " state(s)"
                 : "no alpha in [" + fmt(res.lo) + ", " + fmt(res.hi) + "] works");
  return 0;
}

int run_ckw(const InputOpts& in, const GlobalOpts& g) {
  ResolvedInput input = resolve_input(in, g.seed, false);
  require_seed_if(input.randomized, g);
  if (!std::holds_alternative<PureState>(input.states[0])) {
    throw numeric_error("the tangle comparison needs a pure three-qubit state");
  }
  const PureState& psi = std::get<PureState>(input.states[0]);
  const CkwResult res = ckw_check(psi);
  Json j = result_shell("ckw", g.seed);
  j["config"] = Json{{"input", input_config(in)}};
  j["state"] = input.labels[0];
  j["result"] = to_json(res);
  emit(j, g.out, "residual = " + fmt(res.residual));
  return 0;
}

int run_witness(const InputOpts& in, const GlobalOpts& g) {
  ResolvedInput input = resolve_input(in, g.seed, false);
  require_seed_if(input.randomized, g);
  if (!std::holds_alternative<PureState>(input.states[0])) {
    throw numeric_error("factorization witnesses are defined for pure tripartite states");
  }
  const PureState& psi = std::get<PureState>(input.states[0]);
  const double eps = g.tol_given ? g.tol : 1e-6;
  const FactorizationResult res = witness_factorization(psi, eps);
  Json j = result_shell("witness", g.seed);
  j["config"] = Json{{"input", input_config(in)}, {"eps", eps}};
  j["state"] = input.labels[0];
  j["result"] = to_json(res);
  emit(j, g.out,
       res.found ? "factored  (reconstruction error " + fmt(res.witness->reconstruction_error) +
                       ")"
                 : "none  (failed at " + res.fail_stage + ", deviation " +
                       fmt(res.fail_deviation) + ")");
  return 0;
}

int run_probe(const GlobalOpts& g, const std::string& entropy_text, const std::string& measure_text,
              int dim, int trials) {
  if (entropy_text.empty() == measure_text.empty()) {
    usage_fail("give exactly one of --entropy or --measure");
  }
  require_seed_if(true, g);
  ConcavityReport report;
  try {
    report = entropy_text.empty()
                 ? measure_concavity_probe(parse_measure_spec(measure_text), dim, trials, g.seed)
                 : concavity_probe(parse_entropy_spec(entropy_text), dim, trials, g.seed);
  } catch (const signature_error& e) {
    usage_fail(e.what());
  }
  Json j = result_shell("probe", g.seed);
  j["config"] = Json{{"spec", report.label}, {"dim", dim}, {"trials", trials}};
  j["result"] = to_json(report);
  emit(j, g.out,
       report.label + " dim " + std::to_string(dim) + ": min margin " + fmt(report.min_margin) +
           (report.violation_found ? "  [concavity violated]" : ""));
  return 0;
}

int run_gen(const InputOpts& in, const GlobalOpts& g) {
  if (!in.files.empty()) usage_fail("gen takes a generator spec, not --file");
  if (in.family.empty()) usage_fail("gen needs --family");
  if (in.family != "bell") build_spec(in).validate();
  require_seed_if(family_is_random(in.family), g);
  if (in.index >= 0) {
    const AnyState state = generator_member(in, g.seed, in.index);
    const Json j = std::holds_alternative<PureState>(state)
                       ? state_to_json(std::get<PureState>(state))
                       : state_to_json(std::get<DensityMatrix>(state));
    emit(j, g.out, "wrote " + generator_label(in, in.index));
    return 0;
  }
  LineSink sink(g.out);
  for (int i = 0; i < in.count; ++i) {
    const AnyState state = generator_member(in, g.seed, i);
    sink.write(std::holds_alternative<PureState>(state)
                   ? state_to_json(std::get<PureState>(state))
                   : state_to_json(std::get<DensityMatrix>(state)));
  }
  sink.summary() << "wrote " << in.count << " state(s) from " << generator_label(in, 0) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entanglement measures, convex roofs, and split comparisons"};
  app.require_subcommand(1);

  GlobalOpts g_measure, g_roof, g_audit, g_alpha, g_ckw, g_witness, g_probe, g_gen;
  InputOpts in_measure, in_roof, in_audit, in_alpha, in_ckw, in_witness, in_gen;
  OptimizerFlags opt_measure, opt_roof, opt_audit, opt_alpha;

  // measure
  auto* measure = app.add_subcommand("measure", "evaluate a measure on one state");
  std::string measure_cut = "0", measure_spec = "eoe";
  add_input_flags(measure, in_measure, false);
  add_global_flags(measure, g_measure);
  opt_measure.add(measure);
  measure->add_option("--cut", measure_cut, "bipartition, e.g. A|BC or 0|12");
  measure->add_option("--spec", measure_spec, "measure: eoe | concurrence | tangle | gconc | neg | renyi:a | tsallis:q");

  // roof
  auto* roof = app.add_subcommand("roof", "convex-roof minimization with certificate");
  std::string roof_cut = "0", roof_spec = "eoe", roof_g = "identity";
  add_input_flags(roof, in_roof, false);
  add_global_flags(roof, g_roof);
  opt_roof.add(roof);
  roof->add_option("--cut", roof_cut, "bipartition");
  roof->add_option("--spec", roof_spec, "base measure");
  roof->add_option("--g", roof_g, "convex composition: identity | square | cube | power:k");

  // audit
  auto* audit = app.add_subcommand("audit", "split comparison over an ensemble (JSON lines)");
  std::string audit_spec = "eoe";
  double audit_eps_gap = 0.0;
  bool audit_witness = false, audit_no_pd = false;
  add_input_flags(audit, in_audit, true);
  add_global_flags(audit, g_audit);
  opt_audit.add(audit);
  audit->add_option("--spec", audit_spec, "measure");
  audit->add_option("--eps-gap", audit_eps_gap, "override the disentangling threshold");
  audit->add_flag("--witness", audit_witness, "run structural checks on disentangled states");
  audit->add_flag("--no-product-distance", audit_no_pd, "skip the AC product-distance column");

  // alpha
  auto* alpha = app.add_subcommand("alpha", "smallest working power for the split inequality");
  std::string alpha_spec = "eoe";
  double alpha_lo = 0.05, alpha_hi = 16.0, alpha_res = 1e-3;
  add_input_flags(alpha, in_alpha, true);
  add_global_flags(alpha, g_alpha);
  opt_alpha.add(alpha);
  alpha->add_option("--spec", alpha_spec, "measure");
  alpha->add_option("--alpha-lo", alpha_lo, "search interval start");
  alpha->add_option("--alpha-hi", alpha_hi, "search interval end");
  alpha->add_option("--alpha-resolution", alpha_res, "bisection resolution");

  // ckw
  auto* ckw = app.add_subcommand("ckw", "tangle split comparison for three qubits");
  add_input_flags(ckw, in_ckw, false);
  add_global_flags(ckw, g_ckw);

  // witness
  auto* witness = app.add_subcommand("witness", "factorization witness for a tripartite state");
  add_input_flags(witness, in_witness, false);
  add_global_flags(witness, g_witness);

  // probe
  auto* probe = app.add_subcommand("probe", "concavity margins over random marginal pairs");
  std::string probe_entropy, probe_measure;
  int probe_dim = 2, probe_trials = 1000;
  add_global_flags(probe, g_probe);
  probe->add_option("--entropy", probe_entropy, "entropy spec: vn | tsallis:q | renyi:a | linear");
  probe->add_option("--measure", probe_measure, "measure spec instead of an entropy");
  probe->add_option("--dim", probe_dim, "marginal dimension")->check(CLI::Range(2, 64));
  probe->add_option("--trials", probe_trials, "sample count")->check(CLI::PositiveNumber);

  // gen
  auto* gen = app.add_subcommand("gen", "write ensemble members as state JSON");
  add_input_flags(gen, in_gen, true);
  add_global_flags(gen, g_gen);

  try {
    app.parse(argc, argv);
    if (measure->parsed())
      return run_measure(in_measure, g_measure, opt_measure, measure_cut, measure_spec);
    if (roof->parsed()) return run_roof(in_roof, g_roof, opt_roof, roof_cut, roof_spec, roof_g);
    if (audit->parsed())
      return run_audit(in_audit, g_audit, opt_audit, audit_spec, audit_eps_gap, audit_witness,
                       !audit_no_pd);
    if (alpha->parsed())
      return run_alpha(in_alpha, g_alpha, opt_alpha, alpha_spec, alpha_lo, alpha_hi, alpha_res);
    if (ckw->parsed()) return run_ckw(in_ckw, g_ckw);
    if (witness->parsed()) return run_witness(in_witness, g_witness);
    if (probe->parsed()) return run_probe(g_probe, probe_entropy, probe_measure, probe_dim,
                                          probe_trials);
    if (gen->parsed()) return run_gen(in_gen, g_gen);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const signature_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
