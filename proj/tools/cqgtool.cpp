// Batch front end: parses job files, dispatches to the constructors and
// checks, and emits deterministic reports and serialized presentations.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cqg/cqg.hpp"
#include "cqg/error.hpp"
#include "cqg/gauge.hpp"

using namespace cqg;

namespace {

// -------------------------------------------------------------------
// Job files: line-oriented `key = value`, '#' comments, repeated keys
// accumulate. Unknown keys are rejected with a line/column diagnostic.
// -------------------------------------------------------------------

struct JobConfig {
  std::map<std::string, std::vector<std::string>> values;

  bool has(const std::string& k) const { return values.count(k) > 0; }
  std::string get(const std::string& k, const std::string& dflt = "") const {
    auto it = values.find(k);
    if (it == values.end() || it->second.empty()) return dflt;
    return it->second.back();
  }
  std::vector<std::string> all(const std::string& k) const {
    auto it = values.find(k);
    return it == values.end() ? std::vector<std::string>{} : it->second;
  }
};

const std::vector<std::string> kKnownKeys = {
    "command", "algebra", "triple", "preset", "n",       "k",
    "D",       "budget",  "seed",   "trials", "out",     "report",
    "R",       "F",       "B",      "src",    "dst",     "map",
    "extra",   "certify",
};

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

JobConfig load_job(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, path + ": cannot open job file");
  JobConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = line.substr(0, line.find('#'));
    if (strip(body).empty()) continue;
    size_t eq = body.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::ParseError, path + ":" + std::to_string(lineno) + ":" +
                                      std::to_string(body.size() + 1) +
                                      ": expected `key = value`");
    std::string key = strip(body.substr(0, eq));
    std::string value = strip(body.substr(eq + 1));
    if (key.empty())
      fail(ErrorCode::ParseError, path + ":" + std::to_string(lineno) +
                                      ":1: empty key");
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) ==
        kKnownKeys.end())
      fail(ErrorCode::ParseError, path + ":" + std::to_string(lineno) + ":1: "
                                      "unknown key '" +
                                      key + "'");
    cfg.values[key].push_back(value);
  }
  return cfg;
}

// -------------------------------------------------------------------
// Rendering helpers: deterministic, no timestamps.
// -------------------------------------------------------------------

std::string render_polys(const Alphabet& alph,
                         const std::vector<NCPoly>& polys) {
  if (polys.empty()) return " (none)\n";
  std::ostringstream os;
  os << "\n";
  for (const NCPoly& p : polys) os << "  " << p.str(alph) << "\n";
  return os.str();
}

std::string render_relations(const RelationSet& rels) {
  std::ostringstream os;
  os << "relations:" << render_polys(rels.alphabet(), rels.relations());
  return os.str();
}

std::string render_presentation_summary(const CQGPresentation& p) {
  std::ostringstream os;
  os << "presentation: " << p.name() << "\n";
  os << "blocks: " << p.blocks().size() << "\n";
  for (const CorepBlock& b : p.blocks())
    os << "  block " << b.label << ": " << b.mat.rows() << "x" << b.mat.cols()
       << "\n";
  os << "live letters: " << p.live_letters().size() << "\n";
  os << "relation count: " << p.relations().relations().size() << "\n";
  return os.str();
}

/// Soundness hook: re-expands the certificate and refuses to print a
/// certificate that does not reproduce the query polynomial.
std::string render_certificate(const MembershipCertificate& cert,
                               const RelationSet& rels,
                               const NCPoly& target) {
  if (!(cert.expand(rels) - target).is_zero())
    fail(ErrorCode::InconsistentSubstitution,
         "certificate does not re-expand to the query polynomial");
  std::ostringstream os;
  os << "certificate (verified by re-expansion):\n" << cert.str(rels);
  std::string s = os.str();
  if (s.empty() || s.back() != '\n') s += '\n';
  return s;
}

void emit(const std::string& report, const std::string& report_path) {
  std::cout << report;
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) fail(ErrorCode::ParseError, report_path + ": cannot write");
    out << report;
  }
}

void write_out(const CQGPresentation& pres, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) fail(ErrorCode::ParseError, path + ": cannot write");
  out << pres.serialize();
}

// -------------------------------------------------------------------
// Shared option plumbing.
// -------------------------------------------------------------------

struct CommonOpts {
  std::string job;
  std::string algebra, triple, preset;
  int n = 0;
  int k = 1;
  int D = -1;
  long budget = -1;
  unsigned long seed = 1;
  int trials = 200;
  std::string F = "", R = "", certify = "";
  std::string out, report;
  JobConfig cfg;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--job", job, "job file (key = value lines)");
    cmd->add_option("--algebra", algebra, "algebra spec, e.g. \"C(1)+H(1)\"");
    cmd->add_option("--triple", triple, "builtin spectral triple name");
    cmd->add_option("--preset", preset, "presentation preset name");
    cmd->add_option("--n", n, "size parameter");
    cmd->add_option("-k,--k", k, "certificate cofactor degree bound");
    cmd->add_option("-D,--D", D, "total degree cap (-1 = none)");
    cmd->add_option("--budget", budget, "word budget for the span");
    cmd->add_option("--seed", seed, "seed for numeric checks");
    cmd->add_option("--trials", trials, "sample count for numeric checks");
    cmd->add_option("--F", F, "form matrix: `identity` (literals via job)");
    cmd->add_option("--R", R, "state matrix: `identity` (literals via job)");
    cmd->add_option("--certify", certify, "polynomial to certify (qiso)");
    cmd->add_option("--out", out, "path for the serialized presentation");
    cmd->add_option("--report", report, "path for the report copy");
  }

  // Job-file values fill anything not given on the command line.
  void merge(const CLI::App& cmd) {
    if (!job.empty()) cfg = load_job(job);
    auto fill_str = [&](const char* flag, const char* key, std::string& v) {
      if (cmd.count(flag) == 0 && cfg.has(key)) v = cfg.get(key);
    };
    fill_str("--algebra", "algebra", algebra);
    fill_str("--triple", "triple", triple);
    fill_str("--preset", "preset", preset);
    // F/R matrix literals are consumed directly from the job config.
    fill_str("--certify", "certify", certify);
    fill_str("--out", "out", out);
    fill_str("--report", "report", report);
    auto fill_long = [&](const char* flag, const char* key, auto& v) {
      if (cmd.count(flag) == 0 && cfg.has(key))
        v = static_cast<std::decay_t<decltype(v)>>(
            std::stol(cfg.get(key)));
    };
    fill_long("--n", "n", n);
    fill_long("--k", "k", k);
    fill_long("--D", "D", D);
    fill_long("--budget", "budget", budget);
    fill_long("--seed", "seed", seed);
    fill_long("--trials", "trials", trials);
  }

  CertificateSpan span() const {
    CertificateSpan s;
    s.k = k;
    s.degree_cap = D;
    if (budget >= 0)
      s.word_budget = static_cast<size_t>(budget);
    else if (const char* env = std::getenv("CQG_WORD_BUDGET"))
      s.word_budget = static_cast<size_t>(std::stol(env));
    return s;
  }

  // One F / R matrix per expected block: `identity` flag value or job-file
  // matrix literals (repeated keys, in block order).
  std::vector<ScalarMatrix> matrices(const std::string& key,
                                     const std::string& flag_value,
                                     const std::vector<int>& sizes) const {
    std::vector<ScalarMatrix> out;
    std::vector<std::string> literals = cfg.all(key);
    if (!literals.empty() && flag_value.empty()) {
      if (literals.size() != sizes.size())
        fail(ErrorCode::BlockMismatch,
             key + ": expected " + std::to_string(sizes.size()) +
                 " matrix literal(s), got " + std::to_string(literals.size()));
      for (size_t b = 0; b < sizes.size(); ++b) {
        ScalarMatrix m = ScalarMatrix::parse(literals[b]);
        if (m.rows() != sizes[b] || m.cols() != sizes[b])
          fail(ErrorCode::DimensionMismatch,
               key + ": block " + std::to_string(b) + " must be " +
                   std::to_string(sizes[b]) + "x" + std::to_string(sizes[b]));
        out.push_back(m);
      }
      return out;
    }
    if (flag_value.empty() || flag_value == "identity") {
      for (int s : sizes) out.push_back(ScalarMatrix::identity(s));
      return out;
    }
    fail(ErrorCode::ParseError,
         key + ": only `identity` is accepted as a flag; matrix literals "
               "go in the job file");
  }
};

// -------------------------------------------------------------------
// Presentation presets.
// -------------------------------------------------------------------

CQGPresentation preset_presentation(const std::string& name) {
  auto num_after = [&](const std::string& prefix) {
    return std::stoi(name.substr(prefix.size()));
  };
  try {
    if (name.rfind("aaut-real-", 0) == 0) {
      std::string tok = name.substr(10); // e.g. R2, C3, H1
      if (tok.size() < 2) throw std::invalid_argument(name);
      return make_aaut_real(
          RealCStarSpec::parse(tok.substr(0, 1) + "(" + tok.substr(1) + ")"));
    }
    if (name.rfind("aaut-", 0) == 0) return make_aaut(num_after("aaut-"));
    if (name.rfind("austar-", 0) == 0)
      return make_austar(num_after("austar-"));
    if (name.rfind("au-", 0) == 0) {
      int n = num_after("au-");
      return make_au(n, ScalarMatrix::identity(n));
    }
    if (name.rfind("ao-", 0) == 0) {
      int n = num_after("ao-");
      return make_ao(n, ScalarMatrix::identity(n));
    }
    if (name.rfind("asp-", 0) == 0) return make_asp(num_after("asp-"));
    if (name.rfind("as-", 0) == 0) return make_as(num_after("as-"));
    if (name.rfind("suq-", 0) == 0) return make_suq(num_after("suq-"));
  } catch (const std::invalid_argument&) {
  } catch (const std::out_of_range&) {
  }
  fail(ErrorCode::UnknownName, "unknown preset '" + name + "'");
}

std::vector<int> complex_sizes(const std::string& algebra) {
  RealCStarSpec spec = RealCStarSpec::parse(algebra);
  std::vector<int> sizes;
  for (const RealBlock& b : spec.blocks) {
    if (b.ring != DivisionRing::C)
      fail(ErrorCode::UnsupportedSpec,
           "this command takes a direct sum of complex blocks C(n)");
    sizes.push_back(b.n);
  }
  return sizes;
}

// -------------------------------------------------------------------
// Commands. Each returns the process exit code (0 pass, 1 check failed).
// -------------------------------------------------------------------

int cmd_qunitary(const CommonOpts& o) {
  std::vector<int> sizes = complex_sizes(o.algebra);
  ComplexifiedAlgebra alg;
  for (size_t b = 0; b < sizes.size(); ++b)
    alg.blocks.push_back({sizes[b], static_cast<int>(b), 0});
  StateSpec R{o.matrices("R", o.R, sizes)};
  CQGPresentation pres = quantum_unitary_complex(alg, R);
  write_out(pres, o.out);
  std::ostringstream os;
  os << "cqg report v1\ncommand: qunitary\n"
     << render_presentation_summary(pres) << "status: ok\n";
  emit(os.str(), o.report);
  return 0;
}

int cmd_qunitary_real(const CommonOpts& o) {
  RealCStarSpec spec = RealCStarSpec::parse(o.algebra);
  auto [alg, sigma] = complexify(spec);
  std::vector<int> sizes;
  for (const ComplexBlock& b : alg.blocks) sizes.push_back(b.size);
  QuantumUnitary qu = quantum_unitary_real(spec, o.matrices("F", o.F, sizes));
  write_out(qu.pres, o.out);
  std::ostringstream os;
  os << "cqg report v1\ncommand: qunitary-real\n"
     << "algebra: " << spec.str() << "\n"
     << render_presentation_summary(qu.pres) << "status: ok\n";
  emit(os.str(), o.report);
  return 0;
}

int cmd_qgauge(const CommonOpts& o) {
  FiniteSpectralTriple t = builtin_triple(o.triple);
  QuantumUnitary qu = gauge_quantum_unitary(t);
  GaugeReport rep =
      (t.name == "sm") ? sm_gauge(t) : gauge_corep(t, qu.pres);
  bool ok = rep.unitary_ok && rep.display_ok;
  std::ostringstream os;
  os << "cqg report v1\ncommand: qgauge\n"
     << "triple: " << t.name << "\n"
     << "dimension: " << t.N << "\n"
     << "subalgebra: " << rep.view.name << "\n"
     << "monomials:"
     << render_polys(qu.pres.alphabet(), rep.monomials)
     << "unitary: " << (rep.unitary_ok ? "certified" : "NOT CERTIFIED")
     << "\n";
  if (t.name == "sm")
    os << "display: " << (rep.display_ok ? "matches" : "MISMATCH") << "\n";
  os << "status: " << (ok ? "ok" : "failed") << "\n";
  emit(os.str(), o.report);
  return ok ? 0 : 1;
}

int cmd_qaut(const CommonOpts& o) {
  CQGPresentation pres =
      o.algebra.empty() ? make_aaut(o.n)
                        : make_aaut_blocks(complex_sizes(o.algebra));
  write_out(pres, o.out);
  std::ostringstream os;
  os << "cqg report v1\ncommand: qaut\n"
     << render_presentation_summary(pres) << "status: ok\n";
  emit(os.str(), o.report);
  return 0;
}

int cmd_qaut_real(const CommonOpts& o) {
  CQGPresentation pres = make_aaut_real(RealCStarSpec::parse(o.algebra));
  write_out(pres, o.out);
  std::ostringstream os;
  os << "cqg report v1\ncommand: qaut-real\n"
     << render_presentation_summary(pres) << "status: ok\n";
  emit(os.str(), o.report);
  return 0;
}

int cmd_abelianize(const CommonOpts& o) {
  CQGPresentation pres = abelianize(preset_presentation(o.preset));
  write_out(pres, o.out);
  std::ostringstream os;
  os << "cqg report v1\ncommand: abelianize\n"
     << render_presentation_summary(pres) << "status: ok\n";
  emit(os.str(), o.report);
  return 0;
}

int cmd_projective(const CommonOpts& o) {
  CQGPresentation pres = preset_presentation(o.preset);
  SubalgebraView view = projective(pres);
  std::ostringstream os;
  os << "cqg report v1\ncommand: projective\n"
     << "subalgebra: " << view.name << "\n"
     << "generators:" << render_polys(pres.alphabet(), view.generators)
     << "status: ok\n";
  emit(os.str(), o.report);
  return 0;
}

int cmd_hom_check(const CommonOpts& o) {
  CQGPresentation src = preset_presentation(o.cfg.get("src"));
  CQGPresentation dst = preset_presentation(o.cfg.get("dst"));
  std::map<int, NCPoly> subst;
  for (const std::string& entry : o.cfg.all("map")) {
    size_t arrow = entry.find("->");
    if (arrow == std::string::npos)
      fail(ErrorCode::ParseError, "map: expected `name -> polynomial`");
    std::string name = strip(entry.substr(0, arrow));
    int g = src.alphabet().find(name);
    if (g < 0) fail(ErrorCode::UnknownGenerator, "map: no generator " + name);
    subst[g] = NCPoly::parse(dst.alphabet(), strip(entry.substr(arrow + 2)));
  }
  HomReport rep = hom_check(src, dst, subst, o.span());
  // Full substitution (star images included) for rendering failures.
  std::map<int, NCPoly> full = subst;
  for (const auto& [g, img] : subst) {
    int gs = src.alphabet().star(g);
    if (!full.count(gs)) full[gs] = img.star(dst.alphabet());
  }
  std::ostringstream os;
  os << "cqg report v1\ncommand: hom-check\n"
     << "source: " << src.name() << "\ntarget: " << dst.name() << "\n"
     << "relations checked: " << src.relations().relations().size() << "\n";
  if (rep.failing.empty())
    os << "failing: (none)\n";
  else {
    os << "failing:\n";
    for (size_t idx : rep.failing) {
      const NCPoly& r = src.relations().relations()[idx];
      os << "  " << r.str(src.alphabet()) << "  |->  "
         << r.substitute(full).str(dst.alphabet()) << "\n";
    }
  }
  os << "status: " << (rep.ok ? "ok" : "failed") << "\n";
  emit(os.str(), o.report);
  return rep.ok ? 0 : 1;
}

int cmd_woro_check(const CommonOpts& o) {
  CQGPresentation pres = preset_presentation(o.preset);
  std::vector<NCPoly> extra;
  for (const std::string& text : o.cfg.all("extra"))
    extra.push_back(NCPoly::parse(pres.alphabet(), text));
  WoronowiczReport rep = woronowicz_check(pres, extra, o.span());
  std::ostringstream os;
  os << "cqg report v1\ncommand: woro-check\n"
     << "presentation: " << pres.name() << "\n"
     << "extra relations: " << extra.size() << "\n";
  if (rep.failing.empty())
    os << "failing: (none)\n";
  else {
    os << "failing:\n";
    for (size_t idx : rep.failing)
      os << "  " << extra[idx].str(pres.alphabet()) << "\n";
  }
  os << "status: " << (rep.ok ? "ok" : "failed") << "\n";
  emit(os.str(), o.report);
  return rep.ok ? 0 : 1;
}

int cmd_commutative_check(const CommonOpts& o) {
  CQGPresentation pres = preset_presentation(o.preset);
  CommutativityReport rep = check_commutative(pres, o.span());
  std::ostringstream os;
  os << "cqg report v1\ncommand: commutative-check\n"
     << "presentation: " << pres.name() << "\n"
     << "pairs checked: " << rep.pairs_checked << "\n";
  if (rep.failing_pairs.empty())
    os << "failing: (none)\n";
  else {
    os << "failing:\n";
    for (const auto& [a, b] : rep.failing_pairs)
      os << "  [" << pres.alphabet().name(a) << ", "
         << pres.alphabet().name(b) << "]\n";
  }
  os << "status: " << (rep.all_commute ? "ok" : "failed") << "\n";
  emit(os.str(), o.report);
  return rep.all_commute ? 0 : 1;
}

int cmd_trace_check(const CommonOpts& o) {
  RealCStarSpec spec = RealCStarSpec::parse(o.algebra);
  auto [alg, sigma] = complexify(spec);
  std::vector<int> sizes;
  for (const ComplexBlock& b : alg.blocks) sizes.push_back(b.size);
  QuantumUnitary qu = quantum_unitary_real(spec, o.matrices("F", o.F, sizes));
  TraceReport rep = trace_preservation_check(qu, o.span());
  std::ostringstream os;
  os << "cqg report v1\ncommand: trace-check\n"
     << "algebra: " << spec.str() << "\n";
  if (rep.failing.empty())
    os << "failing: (none)\n";
  else {
    os << "failing:\n";
    for (const std::string& f : rep.failing) os << "  " << f << "\n";
  }
  os << "status: " << (rep.ok ? "ok" : "failed") << "\n";
  emit(os.str(), o.report);
  return rep.ok ? 0 : 1;
}

int cmd_qiso(const CommonOpts& o) {
  RelationSet rels = qiso_relations(o.n);
  std::ostringstream os;
  os << "cqg report v1\ncommand: qiso\n"
     << "n: " << o.n << "\n"
     << render_relations(rels);
  bool ok = true;
  if (!o.certify.empty()) {
    NCPoly target = NCPoly::parse(rels.alphabet(), o.certify);
    auto cert = membership(target, rels, o.span());
    if (cert) {
      os << "membership: InIdeal\n"
         << render_certificate(*cert, rels, target);
    } else {
      os << "membership: NotFound\n";
      ok = false;
    }
  }
  os << "status: " << (ok ? "ok" : "failed") << "\n";
  emit(os.str(), o.report);
  return ok ? 0 : 1;
}

int cmd_classical_check(const CommonOpts& o) {
  FiniteSpectralTriple t = builtin_triple(o.triple);
  ClassicalGaugeReport rep = classical_gauge_check(t, o.trials, o.seed);
  std::ostringstream os;
  os << "cqg report v1\ncommand: classical-check\n"
     << "triple: " << t.name << "\n"
     << "samples: " << rep.samples << "\n"
     << "kernel hits: " << rep.kernel_hits << "\n";
  if (rep.violations.empty())
    os << "violations: (none)\n";
  else {
    os << "violations:\n";
    for (const std::string& v : rep.violations) os << "  " << v << "\n";
  }
  os << "status: " << (rep.ok ? "ok" : "failed") << "\n";
  emit(os.str(), o.report);
  return rep.ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"compact-quantum-group presentation and certification tool"};
  app.require_subcommand(1);

  struct Entry {
    const char* name;
    int (*fn)(const CommonOpts&);
  };
  const std::vector<Entry> table = {
      {"qunitary", cmd_qunitary},
      {"qunitary-real", cmd_qunitary_real},
      {"qgauge", cmd_qgauge},
      {"qaut", cmd_qaut},
      {"qaut-real", cmd_qaut_real},
      {"abelianize", cmd_abelianize},
      {"projective", cmd_projective},
      {"hom-check", cmd_hom_check},
      {"woro-check", cmd_woro_check},
      {"commutative-check", cmd_commutative_check},
      {"trace-check", cmd_trace_check},
      {"qiso", cmd_qiso},
      {"classical-check", cmd_classical_check},
  };

  std::vector<std::unique_ptr<CommonOpts>> opts;
  std::vector<std::pair<CLI::App*, const Entry*>> cmds;
  for (const Entry& e : table) {
    CLI::App* cmd = app.add_subcommand(e.name);
    opts.push_back(std::make_unique<CommonOpts>());
    opts.back()->add_to(cmd);
    cmds.push_back({cmd, &e});
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    for (size_t i = 0; i < cmds.size(); ++i)
      if (cmds[i].first->parsed()) {
        opts[i]->merge(*cmds[i].first);
        return cmds[i].second->fn(*opts[i]);
      }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
