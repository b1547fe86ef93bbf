#include "pqcurve/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "pqcurve/decide.hpp"
#include "pqcurve/expression.hpp"
#include "pqcurve/report.hpp"

namespace pqcurve {

namespace {

struct Settings {
  int precision = 53;
  double tolerance = 1e-9;
  bool verify = false;
  bool serial = false;
  std::uint64_t seed = 0;
  std::string json_path;

  Options options() const {
    Options o;
    o.precision_bits = precision;
    o.tolerance = tolerance;
    o.verify = verify;
    o.seed = seed;
    o.parallel = !serial;
    return o;
  }
};

template <class Text>
void emit(const Json& j, const Settings& s, std::ostream& out, Text&& text) {
  if (s.json_path.empty()) {
    out << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(s.json_path);
  if (!f) throw InputError("cannot write " + s.json_path);
  f << j.dump(2) << "\n";
  text(out);
}

Json monodromy_json(const RationalFunction& p, const Settings& s, std::vector<PathSample>* samples) {
  Options o = s.options();
  return at_precision_ladder(o, [&]<class R>(int bits) {
    CriticalOptions copts;
    copts.cluster_tolerance = o.tolerance;
    auto crit = critical_values<R>(p, copts);
    MonodromyOptions mo;
    mo.seed = o.seed;
    mo.tolerance = o.tolerance;
    mo.parallel = o.parallel;
    mo.dump = samples;
    BranchData<R> bd = branch_data_self(MappedFunction<R>(p), crit, mo);
    Json j;
    j["inputs"] = {{"p", p.str()}};
    Json branch = branch_json(bd.summary());
    branch.erase("m");
    for (auto& v : branch["values"]) {
      v.erase("cycle_q");
      v.erase("critical_q");
    }
    Json alphas = Json::array();
    for (const auto& a : bd.alphas) alphas.push_back(a.str());
    branch["alphas"] = alphas;
    j["branch"] = branch;
    auto bp = to_double(bd.basepoint);
    j["basepoint"] = Json::array({bp.real(), bp.imag()});
    Json fiber = Json::array();
    for (const auto& x : bd.fiber_p) {
      auto d = to_double(x);
      fiber.push_back(Json::array({d.real(), d.imag()}));
    }
    j["fiber"] = fiber;
    j["meta"] = {{"mode", "monodromy"}, {"precision", bits}, {"seed", o.seed}, {"version", kVersion}};
    return j;
  });
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Irreducible components and genera of the curves P(x) = Q(y) and P(x) = P(y)"};
  app.require_subcommand(1);
  Settings s;
  app.add_option("--precision", s.precision, "starting precision in bits")
      ->check(CLI::IsMember({53, 113, 237}));
  app.add_option("--tolerance", s.tolerance, "relative tolerance for critical value coincidence")
      ->check(CLI::PositiveNumber);
  app.add_flag("--verify", s.verify, "always run the monodromy and check the criteria against it");
  app.add_option("--json", s.json_path, "write the JSON report here and a text summary to stdout");
  app.add_option("--seed", s.seed, "seed for basepoints and random draws");
  app.add_flag("--serial", s.serial, "disable parallel loop tracking and sweep trials");

  std::string p_text;
  std::string q_text;
  auto* analyze = app.add_subcommand("analyze", "components of P(x) = Q(y)")->fallthrough();
  analyze->add_option("--p", p_text, "P as an expression in z")->required();
  analyze->add_option("--q", q_text, "Q as an expression in z")->required();

  auto* self = app.add_subcommand("self", "components of (P(x) - P(y))/(x - y)")->fallthrough();
  self->add_option("--p", p_text, "P as an expression in z")->required();

  auto* uniq = app.add_subcommand("uniqueness", "strong uniqueness of P over all scalars c")->fallthrough();
  uniq->add_option("--p", p_text, "P as an expression in z")->required();

  int n = 0;
  int m = 0;
  int trials = 0;
  std::string kind = "pair";
  auto* sweep = app.add_subcommand("sweep", "randomized generic sweep")->fallthrough();
  sweep->add_option("--n", n, "degree of P")->required();
  sweep->add_option("--m", m, "degree of Q (pair sweeps)");
  sweep->add_option("--trials", trials, "number of trials")->required()->check(CLI::NonNegativeNumber);
  sweep->add_option("--kind", kind, "pair or uniqueness")->check(CLI::IsMember({"pair", "uniqueness"}));

  std::string dump_path;
  auto* mono = app.add_subcommand("monodromy", "monodromy permutations of P with the tracked paths")->fallthrough();
  mono->add_option("--p", p_text, "P as an expression in z")->required();
  mono->add_option("--dump", dump_path, "write tracked path points here ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    const Options o = s.options();
    if (analyze->parsed()) {
      AnalysisReport rep = analyze_pair(parse_function(p_text), parse_function(q_text), o);
      emit(to_json(rep), s, out, [&](std::ostream& os) { write_text(os, rep); });
    } else if (self->parsed()) {
      AnalysisReport rep = analyze_self(parse_function(p_text), o);
      emit(to_json(rep), s, out, [&](std::ostream& os) { write_text(os, rep); });
    } else if (uniq->parsed()) {
      UniquenessReport rep = strong_uniqueness(parse_function(p_text), o);
      emit(to_json(rep), s, out, [&](std::ostream& os) { write_text(os, rep); });
    } else if (sweep->parsed()) {
      SweepKind k = kind == "pair" ? SweepKind::Pair : SweepKind::Uniqueness;
      if (k == SweepKind::Pair && sweep->count("--m") == 0) throw InputError("pair sweeps need --m");
      SweepSummary sum = generic_sweep(k, n, k == SweepKind::Pair ? m : n, trials, s.seed, o);
      emit(to_json(sum), s, out, [&](std::ostream& os) { write_text(os, sum); });
    } else if (mono->parsed()) {
      RationalFunction p = parse_function(p_text);
      std::vector<PathSample> samples;
      Json j = monodromy_json(p, s, dump_path.empty() ? nullptr : &samples);
      if (dump_path == "-") {
        write_path_dump(out, samples);
        if (!s.json_path.empty()) emit(j, s, err, [](std::ostream&) {});
      } else {
        if (!dump_path.empty()) {
          std::ofstream f(dump_path);
          if (!f) throw InputError("cannot write " + dump_path);
          write_path_dump(f, samples);
        }
        emit(j, s, out, [&](std::ostream& os) {
          os << "alphas:";
          for (const auto& a : j["branch"]["alphas"]) os << " " << a.get<std::string>();
          os << "\n";
        });
      }
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const NumericError& e) {
    err << "numeric failure at " << e.precision_bits() << " bits: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace pqcurve
