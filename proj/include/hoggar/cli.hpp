// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver. run() parses argv, executes one subcommand, writes
// its artifacts and a run manifest, and returns the exit code:
//   0 all checks pass, 1 some check failed, 2 usage or IO error.
#pragma once

#include <CLI11.hpp>

#include <bit>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hoggar/bloch.hpp"
#include "hoggar/capacity.hpp"
#include "hoggar/designs.hpp"
#include "hoggar/infotheory.hpp"
#include "hoggar/io.hpp"
#include "hoggar/sic.hpp"

namespace hoggar::cli {

inline constexpr const char* kToolVersion = "hoggar 1.0.0";
inline constexpr const char* kOutDirEnv = "HOGGAR_OUT_DIR";

struct Options {
  std::string command;
  int d = 8;
  std::string v = "-1+2i";
  std::string hadamard = "auto";
  std::string hadamard_file;
  std::string family;
  std::string ensemble = "twin";
  std::string twin = "auto";
  std::uint64_t seed = 1;
  int restarts = 64;
  int jobs = 1;
  int t = 2;
  std::optional<double> tol;
  std::optional<double> expect;
  std::string out;
  std::string format = "json";
  std::string manifest;
  bool bits = false;
};

struct Check {
  std::string name;
  bool pass = false;
  double value = std::numeric_limits<double>::quiet_NaN();
  double expected = std::numeric_limits<double>::quiet_NaN();
  double tolerance = std::numeric_limits<double>::quiet_NaN();
};

class Session {
 public:
  Session(Options opt, std::ostream& out) : opt_(std::move(opt)), out_(out) {}

  const Options& options() const { return opt_; }
  const std::vector<Check>& checks() const { return checks_; }

  void check(Check c) {
    out_ << (c.pass ? "PASS " : "FAIL ") << prefix_ << c.name;
    if (!std::isnan(c.value)) out_ << "  value=" << display(c.value);
    if (!std::isnan(c.expected)) out_ << "  expected=" << display(c.expected);
    out_ << '\n';
    c.name = prefix_ + c.name;
    checks_.push_back(std::move(c));
  }
  void check_near(const std::string& name, double value, double expected, double tol) {
    check({name, std::abs(value - expected) <= tol, value, expected, tol});
  }
  void check_true(const std::string& name, bool ok, double value = std::numeric_limits<double>::quiet_NaN()) {
    check({name, ok, value, std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()});
  }
  void note(const std::string& line) { out_ << prefix_ << line << '\n'; }
  void set_prefix(std::string p) { prefix_ = std::move(p); }

  double tol(double fallback) const { return opt_.tol.value_or(fallback); }

  /// Resolves a path against the output-directory override.
  std::string output_path(const std::string& p) const {
    const char* dir = std::getenv(kOutDirEnv);
    if (dir == nullptr || *dir == '\0' || std::filesystem::path(p).is_absolute()) return p;
    return (std::filesystem::path(dir) / p).string();
  }

  void write_artifact(const std::string& path, const std::string& text) {
    const auto full = output_path(path);
    io::write_text_file(full, text);
    artifacts_.push_back(full);
  }

  /// Writes to --out when given, otherwise to stdout.
  void emit(const std::string& text) {
    if (opt_.out.empty()) {
      out_ << text;
    } else {
      write_artifact(opt_.out, text);
    }
  }

  bool all_pass() const {
    for (const auto& c : checks_) {
      if (!c.pass) return false;
    }
    return true;
  }

  void write_manifest(const io::Json& parameters) {
    const std::string path = output_path(opt_.manifest.empty() ? opt_.command + ".manifest.json" : opt_.manifest);
    io::Json m;
    m["command"] = opt_.command;
    m["parameters"] = parameters;
    io::Json cs = io::Json::array();
    for (const auto& c : checks_) {
      io::Json e;
      e["name"] = c.name;
      e["pass"] = c.pass;
      e["value"] = c.value;
      e["expected"] = c.expected;
      e["tolerance"] = c.tolerance;
      cs.push_back(std::move(e));
    }
    m["checks"] = std::move(cs);
    m["artifacts"] = artifacts_;
    m["version"] = {{"tool", kToolVersion}, {"format", io::kFormatVersion}};
    io::write_text_file(path, io::dump(m));
  }

 private:
  std::string display(double x) const {
    // Only entropic quantities are affected by --bits, but the printed
    // summary makes no distinction between them and other reals.
    return io::format_double(opt_.bits ? x / std::numbers::ln2 : x);
  }

  Options opt_;
  std::ostream& out_;
  std::string prefix_;
  std::vector<Check> checks_;
  std::vector<std::string> artifacts_;
};

// ---- input resolution ------------------------------------------------------

inline bool is_power_of_two(int d) { return d > 0 && (d & (d - 1)) == 0; }

inline HadamardMatrix resolve_hadamard(const Options& o) {
  std::string kind = o.hadamard;
  if (kind == "auto") kind = is_power_of_two(o.d) && o.d <= 16 ? "sylvester" : "fourier";
  if (kind == "sylvester") {
    if (!is_power_of_two(o.d) || o.d < 2) throw InvalidArgument("sylvester matrix needs d a power of two");
    return sylvester_hadamard(std::countr_zero(static_cast<unsigned>(o.d)));
  }
  if (kind == "fourier") return fourier_matrix(o.d);
  if (kind == "file") {
    if (o.hadamard_file.empty()) throw InvalidArgument("--hadamard file needs --hadamard-file PATH");
    auto h = io::hadamard_from_json(io::read_json_file(o.hadamard_file));
    if (h.dim() != o.d) throw InvalidArgument("hadamard file dimension differs from --d");
    return h;
  }
  throw InvalidArgument("unknown --hadamard '" + kind + "'");
}

inline SicFamily resolve_family(const Options& o) {
  if (!o.family.empty()) return io::family_from_json(io::read_json_file(o.family));
  return jw_vectors(resolve_hadamard(o), io::parse_complex(o.v));
}

inline SicFamily resolve_twin(const Options& o, const SicFamily& fam) {
  if (o.twin == "auto") return conjugate_set(fam);
  return io::family_from_json(io::read_json_file(o.twin));
}

inline Ensemble resolve_ensemble(const Options& o, const SicFamily& fam) {
  if (o.ensemble == "twin") {
    const auto twin = resolve_twin(o, fam);
    std::vector<ComplexVector> states;
    for (int i = 0; i < twin.size(); ++i) states.push_back(twin.state(i));
    return Ensemble::uniform(states);
  }
  return io::ensemble_from_json(io::read_json_file(o.ensemble));
}

// ---- subcommands -------------------------------------------------------------

inline void cmd_construct(Session& s) {
  const auto fam = resolve_family(s.options());
  s.check_true("admissible parameter", fam.admissible());
  const auto rep = verify_sic(fam, s.tol(1e-12));
  s.check_true("SIC condition", rep.is_sic, rep.max_deviation);
  s.emit(io::dump(io::to_json(fam)));
}

inline void cmd_verify_sic(Session& s) {
  const auto fam = resolve_family(s.options());
  const double tol = s.tol(1e-12);
  const auto rep = verify_sic(fam, tol);
  const double d = fam.dim();
  s.check({"pairwise overlaps", rep.overlap_deviation <= tol, rep.overlap_value, 1.0 / (d * d * (d + 1)), tol});
  s.check({"resolution of identity", rep.identity_deviation <= tol, rep.identity_deviation, 0.0, tol});
}

inline void cmd_covariance(Session& s) {
  const auto fam = resolve_family(s.options());
  const double tol = s.tol(1e-12);
  const auto a = verify_covariance(fam, tol);
  s.check({"family covariance", a.covariant, a.worst_deviation, 0.0, tol});
  const auto b = verify_covariance(resolve_twin(s.options(), fam), tol);
  s.check({"twin covariance", b.covariant, b.worst_deviation, 0.0, tol});
}

inline void cmd_entropy(Session& s) {
  const auto fam = resolve_family(s.options());
  const auto povm = Povm::from_family(fam);
  const auto ens = resolve_ensemble(s.options(), fam);
  const double tol = s.tol(1e-12);
  io::Json rows = io::Json::array();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double ic_dev = 0.0;
  const int d = fam.dim();
  const double ic_expected = 2.0 / (d * (d + 1.0));
  bool all_pure = true;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const auto dist = outcome_distribution(ens.states()[i], povm);
    const double h = shannon_entropy(dist);
    lo = std::min(lo, h);
    hi = std::max(hi, h);
    if (ens.states()[i].is_pure()) ic_dev = std::max(ic_dev, std::abs(index_of_coincidence(dist) - ic_expected));
    else all_pure = false;
    io::Json r;
    r["index"] = i;
    r["entropy"] = h;
    r["zero_count"] = dist.zero_count;
    r["index_of_coincidence"] = index_of_coincidence(dist);
    rows.push_back(std::move(r));
  }
  if (all_pure) s.check({"index of coincidence constant", ic_dev <= tol, ic_dev, 0.0, tol});
  s.check_true("entropy at least min-entropy bound", lo >= sic_min_entropy_bound(d) - 1e-9, lo);
  if (s.options().expect) s.check_near("entropy", lo, *s.options().expect, std::max(tol, hi - lo));
  io::Json doc;
  doc["entropies"] = std::move(rows);
  doc["min"] = lo;
  doc["max"] = hi;
  s.emit(io::dump(doc));
}

inline OptimizerConfig optimizer_config(const Options& o) {
  OptimizerConfig c;
  c.restarts = o.restarts;
  c.seed = o.seed;
  c.jobs = o.jobs;
  return c;
}

inline void check_minimizers(Session& s, const SicFamily& fam, const StateSearchResult& res) {
  std::optional<SicFamily> twin;
  try {
    twin.emplace(resolve_twin(s.options(), fam));
  } catch (const Unsupported&) {
    s.note("twin family unavailable; minimizer identification skipped");
    return;
  }
  double worst = 0.0;
  for (const auto& m : res.minimizers(1e-8)) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < twin->size(); ++i) best = std::min(best, projector_distance(m, twin->state(i)));
    worst = std::max(worst, best);
  }
  s.check({"minimizers lie in twin family", worst < 1e-6, worst, 0.0, 1e-6});
}

inline void cmd_min_entropy(Session& s) {
  const auto fam = resolve_family(s.options());
  const auto povm = Povm::from_family(fam);
  const auto cfg = optimizer_config(s.options());
  const auto res = min_entropy_search(povm, cfg);
  const double tol = s.tol(1e-8);
  const double expected = s.options().expect.value_or(sic_min_entropy_bound(fam.dim()));
  s.check_near("min entropy", res.best_value, expected, tol);
  check_minimizers(s, fam, res);
  s.emit(io::dump(io::to_json(res, cfg)));
}

inline void cmd_info_power(Session& s) {
  const auto fam = resolve_family(s.options());
  const auto povm = Povm::from_family(fam);
  const auto cfg = optimizer_config(s.options());
  const auto res = capacity_search(povm, cfg);
  const double tol = s.tol(1e-6);
  const double expected = s.options().expect.value_or(sic_power_bound(fam.dim()));
  if (!s.options().expect) s.check_near("min entropy", res.min_entropy, sic_min_entropy_bound(fam.dim()), 1e-8);
  s.check_near("informational power", res.best_value, expected, tol);
  s.check({"certificate gap", res.certificate_gap <= tol, res.certificate_gap, 0.0, tol});
  s.emit(io::dump(io::to_json(res, cfg)));
}

inline void cmd_mutual_info(Session& s) {
  const auto fam = resolve_family(s.options());
  const auto povm = Povm::from_family(fam);
  const auto ens = resolve_ensemble(s.options(), fam);
  const double tol = s.tol(1e-10);
  const double mi = mutual_information(ens, povm);
  const double chi = holevo_quantity(ens, povm);
  s.check_true("mutual information within [0, ln k]", mi >= -tol && mi <= std::log(povm.size()) + tol, mi);
  if (s.options().expect) s.check_near("mutual information", mi, *s.options().expect, tol);
  const auto avg = povm.probabilities(ens.average_state());
  double dev = 0.0;
  for (double p : avg) dev = std::max(dev, std::abs(p - 1.0 / povm.size()));
  s.note("average-state outcome deviation from 1/k: " + io::format_double(dev));
  io::Json doc;
  doc["mutual_information"] = mi;
  doc["holevo_quantity"] = chi;
  doc["average_outcome_deviation"] = dev;
  s.emit(io::dump(doc));
}

inline void cmd_design_check(Session& s) {
  const auto fam = resolve_family(s.options());
  const auto set = StateSet::from_family(fam);
  const double tol = s.tol(1e-12);
  const int t = s.options().t;
  if (t < 1) throw InvalidArgument("--t must be >= 1");
  io::Json rows = io::Json::array();
  for (int order = 1; order <= t + 1; ++order) {
    const double fp = frame_potential(set, order);
    const double hm = haar_moment(fam.dim(), order);
    if (order <= t) {
      s.check_near("frame potential t=" + std::to_string(order), fp, hm, tol);
    } else {
      s.note("frame potential t=" + std::to_string(order) + " " + io::format_double(fp) + " haar " +
             io::format_double(hm));
    }
    io::Json r;
    r["t"] = order;
    r["frame_potential"] = fp;
    r["haar_moment"] = hm;
    rows.push_back(std::move(r));
  }
  s.emit(io::dump(rows));
}

inline void cmd_zero_design(Session& s) {
  const auto fam = resolve_family(s.options());
  const auto twin = resolve_twin(s.options(), fam);
  const auto design = zero_blocks(fam, twin);
  s.check({"points", design.params.points == 64, double(design.params.points), 64.0, 0.0});
  s.check({"block size", design.params.block_size == 28, double(design.params.block_size), 28.0, 0.0});
  s.check({"lambda", design.params.lambda == 12, double(design.params.lambda), 12.0, 0.0});
  const auto rep = verify_symmetric_design(design);
  s.check_true("symmetric design axioms", rep.pass);
  if (!rep.pass) s.note("counterexample: " + rep.first_counterexample);
  const auto* base = design.find(0);
  s.check_true("difference set B00", base != nullptr && difference_set_check(base->members).pass);
  s.check_true("block translation", block_translation_check(design));
  if (s.options().format == "csv") {
    s.emit(io::incidence_csv(design));
  } else {
    s.emit(io::dump(io::to_json(design)));
  }
}

inline void cmd_bloch(Session& s) {
  const auto fam = resolve_family(s.options());
  const auto twin = resolve_twin(s.options(), fam);
  const auto basis = hermitian_basis(fam.dim());
  const double tol = s.tol(1e-12);
  const int d = fam.dim();
  for (const auto* f : {&fam, &twin}) {
    const auto rep = simplex_check(StateSet::from_family(*f), basis, tol);
    const std::string tag = f == &fam ? "family" : "twin";
    const double worst = std::max({rep.norm_deviation, rep.inner_deviation, rep.centroid_norm});
    s.check({tag + " regular simplex", rep.pass, worst, 0.0, tol});
  }
  s.check({"symmetric subspace dimension", basis.symmetric_count() == (d + 2) * (d - 1) / 2,
           double(basis.symmetric_count()), double((d + 2) * (d - 1) / 2), 0.0});
  const auto refl = transpose_reflection_check(fam, twin, basis, tol);
  s.check({"transpose reflection", refl.pass, refl.worst_deviation, 0.0, tol});
  const auto vs = bloch_vectors(StateSet::from_family(fam), basis);
  if (s.options().format == "csv") {
    s.emit(io::bloch_csv(vs, basis));
  } else {
    io::Json doc;
    doc["basis"] = basis.names;
    io::Json rows = io::Json::array();
    for (const auto& v : vs) rows.push_back(std::vector<double>(v.data(), v.data() + v.size()));
    doc["vectors"] = std::move(rows);
    s.emit(io::dump(doc));
  }
}

inline void cmd_report(Session& s) {
  // Every subcommand in sequence; artifacts are suppressed, only checks kept.
  std::ostringstream sink;
  Options quiet = s.options();
  quiet.out.clear();
  quiet.format = "json";
  struct Step {
    const char* name;
    void (*fn)(Session&);
  };
  const Step steps[] = {{"verify-sic", cmd_verify_sic},   {"covariance", cmd_covariance},
                        {"entropy", cmd_entropy},         {"mutual-info", cmd_mutual_info},
                        {"design-check", cmd_design_check}, {"zero-design", cmd_zero_design},
                        {"bloch", cmd_bloch},             {"min-entropy", cmd_min_entropy},
                        {"info-power", cmd_info_power}};
  const int d = resolve_family(quiet).dim();
  for (const auto& step : steps) {
    const std::string name = step.name;
    if ((name == "covariance" || name == "zero-design") && d != 8) continue;
    s.set_prefix(name + ": ");
    Session inner(quiet, sink);
    try {
      step.fn(inner);
    } catch (const Unsupported& e) {
      s.note(std::string("skipped: ") + e.what());
      continue;
    }
    for (const auto& c : inner.checks()) s.check(c);
  }
  s.set_prefix("");
}

// ---- driver ------------------------------------------------------------------

struct Command {
  const char* name;
  const char* help;
  void (*fn)(Session&);
};

inline const std::vector<Command>& commands() {
  static const std::vector<Command> list = {
      {"construct", "build a SIC family and write it as JSON", cmd_construct},
      {"verify-sic", "check equal pairwise overlaps and resolution of identity", cmd_verify_sic},
      {"covariance", "check three-qubit Pauli covariance (d = 8)", cmd_covariance},
      {"entropy", "measurement entropy of each state of an ensemble", cmd_entropy},
      {"min-entropy", "minimize measurement entropy over pure states", cmd_min_entropy},
      {"info-power", "informational power with an upper-bound certificate", cmd_info_power},
      {"certify", "alias of info-power", cmd_info_power},
      {"mutual-info", "mutual information of an ensemble", cmd_mutual_info},
      {"design-check", "frame potentials against Haar moments", cmd_design_check},
      {"zero-design", "zero-block design between twin families (d = 8)", cmd_zero_design},
      {"bloch", "Bloch simplices and transpose reflection", cmd_bloch},
      {"report", "run every check and aggregate them into one manifest", cmd_report},
  };
  return list;
}

inline io::Json parameters_json(const Options& o) {
  io::Json p;
  p["d"] = o.d;
  p["v"] = o.v;
  p["hadamard"] = o.hadamard;
  if (!o.hadamard_file.empty()) p["hadamard_file"] = o.hadamard_file;
  if (!o.family.empty()) p["family"] = o.family;
  p["ensemble"] = o.ensemble;
  p["twin"] = o.twin;
  p["seed"] = o.seed;
  p["restarts"] = o.restarts;
  p["jobs"] = o.jobs;
  p["t"] = o.t;
  if (o.tol) p["tol"] = *o.tol;
  if (o.expect) p["expect"] = *o.expect;
  if (!o.out.empty()) p["out"] = o.out;
  p["format"] = o.format;
  p["bits"] = o.bits;
  return p;
}

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"SIC-POVM construction, informational power and structure checks", "hoggar"};
  app.require_subcommand(1);
  Options opt;
  for (const auto& c : commands()) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--d", opt.d, "dimension")->check(CLI::Range(2, 64));
    sub->add_option("--v", opt.v, "construction parameter, e.g. -1+2i or 1+sqrt3i");
    sub->add_option("--hadamard", opt.hadamard, "auto, sylvester, fourier or file")
        ->check(CLI::IsMember({"auto", "sylvester", "fourier", "file"}));
    sub->add_option("--hadamard-file", opt.hadamard_file, "Hadamard matrix JSON");
    sub->add_option("--family", opt.family, "family JSON written by construct");
    sub->add_option("--ensemble", opt.ensemble, "ensemble JSON, or 'twin'");
    sub->add_option("--twin", opt.twin, "twin family JSON, or 'auto'");
    sub->add_option("--seed", opt.seed, "optimizer seed");
    sub->add_option("--restarts", opt.restarts, "optimizer restarts")->check(CLI::PositiveNumber);
    sub->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--t", opt.t, "design order")->check(CLI::PositiveNumber);
    sub->add_option("--tol", opt.tol, "check tolerance")->check(CLI::NonNegativeNumber);
    sub->add_option("--expect", opt.expect, "expected value for the main check");
    sub->add_option("--out", opt.out, "artifact path (stdout if absent)");
    sub->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--manifest", opt.manifest, "manifest path");
    sub->add_flag("--bits", opt.bits, "print entropic values in bits");
  }
  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  const Command* cmd = nullptr;
  for (const auto& c : commands()) {
    if (app.got_subcommand(c.name)) cmd = &c;
  }
  opt.command = cmd->name;
  Session session(opt, out);
  try {
    cmd->fn(session);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  try {
    session.write_manifest(parameters_json(opt));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return session.all_pass() ? 0 : 1;
}

}  // namespace hoggar::cli
