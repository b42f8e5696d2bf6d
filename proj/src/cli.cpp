#include "dblie/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "dblie/brackets.hpp"
#include "dblie/dmodules.hpp"
#include "dblie/error.hpp"
#include "dblie/ideals.hpp"
#include "dblie/rb.hpp"
#include "dblie/suites.hpp"
#include "dblie/text_format.hpp"

namespace dblie {
namespace {

struct Output {
  std::ostream& out;
  std::string format = "text";
  bool timing = false;
  std::uint64_t seed = 0;

  void emit(VerificationReport r, std::optional<double> ms = {}) const {
    if (!r.seed) r.seed = seed;
    r.elapsed_ms = timing ? ms : std::nullopt;
    if (format == "jsonl") {
      out << to_json_line(r) << "\n";
    } else {
      out << to_text(r);
    }
  }
};

int verdict(const std::vector<VerificationReport>& reports) {
  bool budget = false;
  for (const auto& r : reports) {
    if (r.status == Status::fail) return exit_fail;
    if (r.status == Status::budget) budget = true;
  }
  return budget ? exit_budget : exit_pass;
}

// Runs `body`, emitting its reports with the elapsed time of the whole batch
// attributed to each one.
int emit_all(const Output& o, const std::function<std::vector<VerificationReport>()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  auto reports = body();
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& r : reports) o.emit(r, ms);
  return verdict(reports);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

Space carrier_space(const DoubleBracket& b) {
  auto basis = b.carrier().window_basis(0);
  return basis.empty() ? Space::poly : basis.front().space;
}

Vec parse_argument(const DoubleBracket& b, const std::string& text) {
  Space sp = carrier_space(b);
  if (is_integer(text)) {
    std::int64_t k = std::stoll(text);
    switch (sp) {
      case Space::poly:
        if (k < 0) throw InputError("negative degree " + text + " for a polynomial bracket");
        return Vec(monomial(k));
      case Space::laurent: return Vec(laurent_monomial(k));
      case Space::finite: return Vec(finite_basis(k));
      default: throw InputError("bracket " + b.name() + " needs symbolic arguments such as T_1^{1,2}");
    }
  }
  return parse_vec(text, sp == Space::laurent ? Space::laurent : Space::poly);
}

std::optional<RBOperator> find_operator(const std::string& name) {
  try {
    return catalog_rb(name);
  } catch (const InputError&) {
    return std::nullopt;
  }
}

std::pair<MatrixIndex, MatrixIndex> parse_pair(const std::string& text) {
  long long i, j, k, l;
  char c1, c2, c3;
  std::istringstream in(text);
  if (!(in >> i >> c1 >> j >> c2 >> k >> c3 >> l) || c1 != ',' || c2 != ';' || c3 != ',')
    throw InputError("--pair expects \"i,j;k,l\", got \"" + text + "\"");
  return {{i, j}, {k, l}};
}

VerificationReport rb_pair(const RBOperator& r, MatrixIndex p, MatrixIndex q) {
  VerificationReport rep;
  rep.check = "rb_identity_pair";
  rep.target = r.name();
  const auto& dom = r.domain();
  auto x = FinitaryMatrix::unit(dom, p.first, p.second);
  auto y = FinitaryMatrix::unit(dom, q.first, q.second);
  const auto& rx = r.image(p.first, p.second);
  const auto& ry = r.image(q.first, q.second);
  auto lhs = mul(rx, ry);
  auto rhs = r.apply(mul(rx, y) + mul(x, ry));
  std::string at = "x = e_{" + std::to_string(p.first) + "," + std::to_string(p.second) + "}, y = e_{" +
                   std::to_string(q.first) + "," + std::to_string(q.second) + "}";
  rep.note(at);
  rep.note("R(x)R(y) = " + render(lhs));
  rep.note("R(R(x)y + xR(y)) = " + render(rhs));
  if (!(lhs == rhs)) rep.fail(at + ": the two sides differ");
  return rep;
}

std::vector<VerificationReport> verify_operator(const RBOperator& r, std::int64_t w, std::int64_t c) {
  return {check_rb_identity(r, w, c), check_skew_symmetry(r, w)};
}

std::vector<VerificationReport> verify_bracket(const DoubleBracket& b, std::int64_t w, bool leibniz) {
  std::vector<VerificationReport> out{check_anticommutativity(b, w), check_jacobi(b, w)};
  if (leibniz) out.push_back(check_leibniz(b, w));
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of double Lie algebras and Rota-Baxter operators", "dblie"};
  app.require_subcommand(1);
  Output o{out};
  app.add_option("--format", o.format, "text or jsonl")->check(CLI::IsMember({"text", "jsonl"}));
  app.add_flag("--timing", o.timing, "include elapsed_ms in reports");
  o.seed = SuiteOptions{}.seed;
  app.add_option("--rng-seed", o.seed, "seed for randomized sweeps");

  std::optional<int> code;

  auto* catalog = app.add_subcommand("catalog", "list catalog entries");
  catalog->require_subcommand(1);
  catalog->add_subcommand("list", "print operator, bracket and module names")->callback([&] {
    out << "operators:";
    for (const auto& n : catalog_rb_names()) out << " " << n;
    out << "\nbrackets:";
    for (const auto& n : catalog_bracket_names()) out << " " << n;
    out << "\nmodules:";
    for (const auto& n : catalog_module_names()) out << " " << n;
    out << "\n";
    code = exit_pass;
  });

  std::int64_t window = 8;
  std::optional<std::int64_t> cutoff;
  std::string target, pair, operator_file, bracket_file;
  bool leibniz = false;
  auto* verify = app.add_subcommand("verify", "RB + skew for operators; (1), (2) for brackets");
  verify->add_option("target", target, "catalog operator or bracket");
  verify->add_option("--window", window)->check(CLI::NonNegativeNumber);
  verify->add_option("--cutoff", cutoff)->check(CLI::NonNegativeNumber);
  verify->add_option("--pair", pair, "single RB instance on units, \"i,j;k,l\"");
  verify->add_flag("--leibniz", leibniz, "also check the Leibniz rule (brackets with a product)");
  verify->add_option("--operator-file", operator_file, "custom operator in the text format");
  verify->add_option("--bracket-file", bracket_file, "custom bracket table");
  verify->callback([&] {
    std::int64_t c = cutoff.value_or(2 * window);
    if (c < window) throw InputError("cutoff " + std::to_string(c) + " is below the window " + std::to_string(window));
    int given = !target.empty() + !operator_file.empty() + !bracket_file.empty();
    if (given != 1) throw InputError("verify needs exactly one of <target>, --operator-file, --bracket-file");
    if (!bracket_file.empty()) {
      auto b = parse_bracket(bracket_file, read_file(bracket_file));
      code = emit_all(o, [&] { return verify_bracket(b, window, leibniz); });
      return;
    }
    std::optional<RBOperator> r;
    if (!operator_file.empty()) {
      r = parse_rb_operator(operator_file, read_file(operator_file));
    } else {
      r = find_operator(target);
    }
    if (r) {
      if (!pair.empty()) {
        auto [p, q] = parse_pair(pair);
        code = emit_all(o, [&] { return std::vector<VerificationReport>{rb_pair(*r, p, q)}; });
      } else {
        code = emit_all(o, [&] {
          auto reps = verify_operator(*r, window, c);
          if (leibniz) {
            auto b = bracket_from_rb(*r);
            reps.push_back(check_leibniz(b, window));
          }
          return reps;
        });
      }
      return;
    }
    if (!pair.empty()) throw InputError("--pair applies to operators only");
    auto b = catalog_bracket(target);
    code = emit_all(o, [&] { return verify_bracket(b, window, leibniz); });
  });

  std::string bname, arg_a, arg_b;
  auto* bracket = app.add_subcommand("bracket", "evaluate brackets");
  bracket->require_subcommand(1);
  auto* eval = bracket->add_subcommand("eval", "<<a, b>>; integers are degrees (or e_i indices)");
  eval->add_option("name", bname)->required();
  eval->add_option("a", arg_a)->required();
  eval->add_option("b", arg_b)->required();
  eval->callback([&] {
    auto b = catalog_bracket(bname);
    Tensor2 v = b.eval(parse_argument(b, arg_a), parse_argument(b, arg_b));
    if (o.format == "jsonl") {
      VerificationReport r;
      r.check = "bracket_eval";
      r.target = bname + "(" + arg_a + ", " + arg_b + ")";
      r.note(render(v));
      o.emit(r);
    } else {
      out << render(v) << "\n";
    }
    code = exit_pass;
  });

  std::string iname;
  std::vector<std::string> seeds;
  std::int64_t iwindow = 8;
  std::size_t budget = 20000;
  auto* ideal = app.add_subcommand("ideal", "ideal computations");
  ideal->require_subcommand(1);
  auto* closure = ideal->add_subcommand("closure", "minimal ideals containing the seeds");
  closure->add_option("bracket", iname)->required();
  closure->add_option("--seed", seeds, "generator, e.g. \"t^2 + 3*t\"")->required();
  closure->add_option("--window", iwindow)->check(CLI::NonNegativeNumber);
  closure->add_option("--budget", budget);
  closure->callback([&] {
    auto b = catalog_bracket(iname);
    std::vector<Vec> gens;
    for (const auto& s : seeds) gens.push_back(parse_argument(b, s));
    code = emit_all(o, [&] {
      VerificationReport r;
      r.check = "ideal_closure";
      r.target = iname;
      r.window = iwindow;
      r.cutoff = iwindow;
      auto res = ideal_closure(b, gens, iwindow, budget);
      for (const auto& c : res.closures) r.note(render(c) + (c.is_full() ? " (whole window)" : ""));
      r.note(std::to_string(res.nodes) + " search nodes");
      if (res.exhausted) {
        r.status = Status::budget;
        r.counterexample = "budget of " + std::to_string(budget) + " nodes exhausted";
      }
      return std::vector<VerificationReport>{r};
    });
  });

  std::string sname;
  std::int64_t swindow = 8, sdegree = 8;
  std::size_t nseeds = 50;
  auto* simplicity = app.add_subcommand("simplicity", "closure probe from random seeds");
  simplicity->add_option("bracket", sname)->required();
  simplicity->add_option("--window", swindow)->check(CLI::NonNegativeNumber);
  simplicity->add_option("--seeds", nseeds);
  simplicity->add_option("--degree", sdegree)->check(CLI::NonNegativeNumber);
  simplicity->add_option("--budget", budget);
  simplicity->callback([&] {
    auto b = catalog_bracket(sname);
    code = emit_all(o, [&] {
      auto rep = simplicity_probe(b, swindow, random_polynomials(nseeds, sdegree, o.seed), budget);
      rep.seed = o.seed;
      return std::vector<VerificationReport>{rep};
    });
  });

  std::string mname;
  std::int64_t mwindow = 8;
  auto* module = app.add_subcommand("module", "module checks");
  module->require_subcommand(1);
  auto* mcheck = module->add_subcommand("check", "axioms and trivial extension");
  mcheck->add_option("name", mname)->required();
  mcheck->add_option("--window", mwindow)->check(CLI::NonNegativeNumber);
  mcheck->callback([&] { code = emit_all(o, [&] { return module_report(mname, mwindow); }); });

  bool all = false, quick = false;
  auto* report = app.add_subcommand("report", "acceptance suites");
  report->add_flag("--all", all)->required();
  report->add_flag("--quick", quick, "reduced windows");
  report->callback([&] {
    SuiteOptions opts;
    opts.seed = o.seed;
    opts.quick = quick;
    std::vector<VerificationReport> every;
    for (int c = 1; c <= 9; ++c) {
      auto t0 = std::chrono::steady_clock::now();
      auto s = run_suite(c, opts);
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      if (o.format == "text") out << "# criterion " << c << " " << s.title << "\n";
      for (auto& r : s.reports) {
        o.emit(r, ms);
        every.push_back(r);
      }
    }
    code = verdict(every);
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_pass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return exit_input;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return exit_input;
  } catch (const WindowError& e) {
    err << "window error: " << e.what() << "\n";
    return exit_input;
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return exit_budget;
  }
  return code.value_or(exit_input);
}

}  // namespace dblie
