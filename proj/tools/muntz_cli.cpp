#include <algorithm>
#include <atomic>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "muntz/arith.hpp"
#include "muntz/contour.hpp"
#include "muntz/formulas.hpp"
#include "muntz/mellin.hpp"
#include "muntz/specfun.hpp"

namespace {

using cplx = std::complex<double>;

struct RunConfig {
  double tolerance = 1e-6;
  std::int64_t sieve_limit = 1000000;
  double t_max = 1e4;
  std::string out;
  std::string format = "json";
  unsigned seed = 0;
  int jobs = 1;
  std::vector<std::string> cases;
  std::vector<std::string> functions;
};

// flat key=value config file; '#' starts a comment
void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in)
    throw muntz::domain_error("cannot open config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos)
      continue;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    auto split = [&](std::vector<std::string>& out) {
      out.clear();
      std::stringstream ss(val);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty())
          out.push_back(item);
    };
    if (key == "tolerance")
      cfg.tolerance = std::stod(val);
    else if (key == "sieve_limit")
      cfg.sieve_limit = std::stoll(val);
    else if (key == "t_max")
      cfg.t_max = std::stod(val);
    else if (key == "out")
      cfg.out = val;
    else if (key == "format")
      cfg.format = val;
    else if (key == "seed")
      cfg.seed = static_cast<unsigned>(std::stoul(val));
    else if (key == "jobs")
      cfg.jobs = std::stoi(val);
    else if (key == "cases")
      split(cfg.cases);
    else if (key == "functions")
      split(cfg.functions);
    else
      throw muntz::domain_error("unknown config key: " + key);
  }
}

// accepts "2", "-0.5", "2+5i", "0.25-2i", "3i"
cplx parse_complex(const std::string& text) {
  std::string s = text;
  double re = 0.0, im = 0.0;
  if (!s.empty() && s.back() == 'i') {
    s.pop_back();
    std::size_t split = s.size();
    for (std::size_t i = s.size(); i-- > 1;) {
      if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
        split = i;
        break;
      }
    }
    std::string im_part = s.substr(split);
    if (im_part.empty() || im_part == "+")
      im = 1.0;
    else if (im_part == "-")
      im = -1.0;
    else
      im = std::stod(im_part);
    if (split > 0 && split < s.size())
      re = std::stod(s.substr(0, split));
  } else {
    re = std::stod(s);
  }
  return {re, im};
}

void write_report(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out)
    throw muntz::domain_error("cannot open output file: " + cfg.out);
  out << text;
}

// deterministic strip-interior jitter of the default sample points
std::vector<cplx> jittered_samples(const muntz::formulas::FormulaCase& c,
                                   unsigned seed) {
  std::vector<cplx> pts = muntz::formulas::default_samples(c);
  if (seed == 0)
    return pts;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-0.02, 0.02);
  for (auto& s : pts) {
    double re = s.real() + u(rng);
    re = std::clamp(re, c.strip_lo + 0.06, c.strip_hi - 0.06);
    double im = s.imag();
    if (im != 0.0)
      im += u(rng);
    s = {re, im};
  }
  return pts;
}

struct Task {
  std::size_t pair_idx;
  std::size_t point_idx;
  cplx s;
};

int cmd_verify(const RunConfig& cfg, bool all, const std::string& s_opt) {
  using namespace muntz;

  std::vector<std::string> case_ids =
      cfg.cases.empty() ? formulas::case_ids() : cfg.cases;
  std::vector<std::string> fn_names =
      cfg.functions.empty() ? mellin::catalog_names() : cfg.functions;
  const bool explicit_fns = !cfg.functions.empty();

  struct Pair {
    const formulas::FormulaCase* c;
    const mellin::TestFunction* f;
    std::vector<cplx> samples;
  };
  std::vector<Pair> pairs;
  for (const auto& cid : case_ids) {
    const auto& c = formulas::find_case(cid); // throws on unknown name
    for (const auto& fn : fn_names) {
      const auto& f = mellin::catalog(fn); // throws on unknown name
      if (static_cast<double>(f.k_max) < c.min_class - 1e-9) {
        if (explicit_fns)
          throw class_violation("case " + cid + " requires smoothness class " +
                                std::to_string(c.min_class) + "; function " +
                                fn + " provides " + std::to_string(f.k_max));
        continue; // implicit matrix: skip inadmissible pairs
      }
      Pair p{&c, &f, {}};
      if (!s_opt.empty()) {
        cplx s = parse_complex(s_opt);
        if (!(s.real() > c.strip_lo + 0.05 && s.real() < c.strip_hi - 0.05))
          throw domain_error("--s " + s_opt + " is outside the strip of " + cid);
        p.samples = {s};
      } else {
        p.samples = jittered_samples(c, cfg.seed);
      }
      pairs.push_back(std::move(p));
    }
  }
  if (pairs.empty())
    throw domain_error("no admissible (case, function) pairs selected");
  (void)all;

  auto table = arith::ArithmeticTable::build(cfg.sieve_limit);

  std::vector<Task> tasks;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = 0; j < pairs[i].samples.size(); ++j)
      tasks.push_back({i, j, pairs[i].samples[j]});

  struct Slot {
    formulas::VerificationReport rep;
    bool failed_hard = false;
    std::string diagnostic;
  };
  std::vector<std::vector<Slot>> grid(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i)
    grid[i].resize(pairs[i].samples.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t k = next.fetch_add(1);
      if (k >= tasks.size())
        return;
      const Task& t = tasks[k];
      const Pair& p = pairs[t.pair_idx];
      Slot& slot = grid[t.pair_idx][t.point_idx];
      try {
        slot.rep = formulas::verify(table, *p.c, *p.f, {t.s}, cfg.tolerance);
      } catch (const muntz::error& e) {
        slot.failed_hard = true;
        char buf[256];
        std::snprintf(buf, sizeof(buf), "(%s, %s, s=%g%+gi): %s",
                      p.c->id.c_str(), p.f->name.c_str(), t.s.real(),
                      t.s.imag(), e.what());
        slot.diagnostic = buf;
      }
    }
  };
  int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int i = 0; i < jobs; ++i)
      threads.emplace_back(worker);
    for (auto& th : threads)
      th.join();
  }

  // deterministic merge in (case, function, point) order
  std::vector<formulas::VerificationReport> reports;
  bool any_fail = false;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    formulas::VerificationReport merged;
    merged.case_id = pairs[i].c->id;
    merged.function = pairs[i].f->name;
    merged.tolerance = cfg.tolerance;
    merged.pass = true;
    for (const auto& slot : grid[i]) {
      if (slot.failed_hard) {
        merged.pass = false;
        std::cerr << "verify failed " << slot.diagnostic << "\n";
        continue;
      }
      merged.pass = merged.pass && slot.rep.pass;
      for (const auto& pt : slot.rep.points) {
        if (pt.rel_err > cfg.tolerance)
          std::cerr << "verify fail (" << merged.case_id << ", "
                    << merged.function << ", s=" << pt.s.real() << "+"
                    << pt.s.imag() << "i): rel_err " << pt.rel_err << "\n";
        merged.points.push_back(pt);
      }
      merged.budget.series_tail =
          std::max(merged.budget.series_tail, slot.rep.budget.series_tail);
      merged.budget.inner_quad =
          std::max(merged.budget.inner_quad, slot.rep.budget.inner_quad);
      merged.budget.outer_quad =
          std::max(merged.budget.outer_quad, slot.rep.budget.outer_quad);
      merged.budget.residue_err =
          std::max(merged.budget.residue_err, slot.rep.budget.residue_err);
      merged.budget.model_err =
          std::max(merged.budget.model_err, slot.rep.budget.model_err);
    }
    any_fail = any_fail || !merged.pass;
    reports.push_back(std::move(merged));
  }

  std::string text = (cfg.format == "csv") ? formulas::report_csv(reports)
                                           : formulas::report_json(reports);
  write_report(cfg, text);
  return any_fail ? 1 : 0;
}

int cmd_dirichlet(const RunConfig& cfg, const std::string& s_text,
                  std::int64_t limit) {
  using namespace muntz;
  cplx s = parse_complex(s_text);
  if (!(s.real() > 1.0))
    throw domain_error("dirichlet: requires Re s > 1, got " +
                       std::to_string(s.real()));
  auto table = arith::ArithmeticTable::build(
      std::min<std::int64_t>(cfg.sieve_limit, std::max<std::int64_t>(limit, 1)));
  std::int64_t N = std::min(limit, table.limit());

  const arith::SeriesId streams[] = {
      arith::SeriesId::mu(),          arith::SeriesId::dk(2),
      arith::SeriesId::abs_mu(),      arith::SeriesId::two_omega(),
      arith::SeriesId::d_square_arg(), arith::SeriesId::d_squared()};

  std::string out = "series,s_re,s_im,partial_re,partial_im,closed_re,"
                    "closed_im,abs_err,tail_bound,within_bound\n";
  bool ok = true;
  for (const auto& id : streams) {
    auto part = arith::dirichlet_partial(table, id, s, N);
    cplx closed = arith::closed_form(id, s);
    double err = std::abs(part.value - closed);
    bool within = err <= part.tail_bound;
    ok = ok && within;
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n",
                  id.name().c_str(), s.real(), s.imag(), part.value.real(),
                  part.value.imag(), closed.real(), closed.imag(), err,
                  part.tail_bound, within ? "pass" : "fail");
    out += buf;
  }
  write_report(cfg, out);
  return ok ? 0 : 1;
}

int cmd_residue(const RunConfig& cfg, int k, const std::vector<double>& xs,
                bool quotient) {
  using namespace muntz;
  if (k < 1 || k > 4)
    throw domain_error("residue: --k must be in 1..4");
  const auto& f = mellin::catalog("exp");
  std::string out =
      "k,x,quotient,closed_form,numeric,diff,radius_stable,verdict\n";
  bool ok = true;
  for (double x : xs) {
    if (!(x > 0.0))
      throw domain_error("residue: --x must be positive");
    double numeric, closed = 0.0;
    bool have_closed = false;
    auto F = [&](cplx s) -> cplx {
      cplx v = 1.0;
      for (int i = 0; i < k; ++i)
        v *= specfun::zeta(s);
      v *= specfun::gamma(s);
      if (quotient)
        v /= specfun::zeta(2.0 * s);
      return v * std::exp(-s * std::log(x));
    };
    double n1 = contour::circle_residue(F, cplx(1.0, 0.0), 0.2, 1e-11).real();
    double n2 = contour::circle_residue(F, cplx(1.0, 0.0), 0.3, 1e-11).real();
    numeric = n1;
    bool stable = std::abs(n1 - n2) <= 1e-8;
    if (quotient) {
      if (k <= 2) {
        closed = formulas::quotient_residue(f, k, x);
        have_closed = true;
      }
    } else if (k <= 2) {
      closed = formulas::polynomial_correction(f, k, x);
      have_closed = true;
    }
    double diff = have_closed ? std::abs(closed - numeric) : 0.0;
    bool pass = stable && (!have_closed || diff <= 1e-8);
    ok = ok && pass;
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%s,%.17g,%.17g,%.17g,%s,%s\n", k,
                  x, quotient ? "yes" : "no", have_closed ? closed : numeric,
                  numeric, diff, stable ? "yes" : "no", pass ? "pass" : "fail");
    out += buf;
  }
  write_report(cfg, out);
  return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  std::string config_path;

  CLI::App app{"Verification harness for zeta-series Mellin identities"};
  app.require_subcommand(1);

  // shared flags, attached per subcommand so they appear after the verb
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tolerance, "relative tolerance");
    sub->add_option("--sieve-limit", cfg.sieve_limit, "arithmetic table size");
    sub->add_option("--t-max", cfg.t_max, "contour truncation ceiling");
    sub->add_option("--out", cfg.out, "report output path (default stdout)");
    sub->add_option("--format", cfg.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", cfg.seed, "sample-point jitter seed");
    sub->add_option("--jobs", cfg.jobs, "worker thread count");
    sub->add_option("--config", config_path, "key=value config file");
  };

  auto* verify = app.add_subcommand("verify", "check formula cases");
  bool all = false;
  std::string s_opt;
  verify->add_flag("--all", all, "run the full case/function matrix");
  verify->add_option("--case", cfg.cases, "formula case id (repeatable)");
  verify->add_option("--function", cfg.functions,
                     "catalog function (repeatable)");
  verify->add_option("--s", s_opt, "single sample point, e.g. 0.5 or 2+5i");
  add_common(verify);

  auto* dirichlet = app.add_subcommand("dirichlet", "partial sums vs closed forms");
  std::string dir_s = "2";
  std::int64_t dir_limit = 100000;
  dirichlet->add_option("--s", dir_s, "evaluation point, Re s > 1");
  dirichlet->add_option("--limit", dir_limit, "partial sum length");
  add_common(dirichlet);

  auto* residue = app.add_subcommand("residue", "closed-form vs contour residues");
  int res_k = 1;
  std::vector<double> res_x{1.0};
  bool res_quotient = false;
  residue->add_option("--k", res_k, "zeta power");
  residue->add_option("--x", res_x, "evaluation points (repeatable)");
  residue->add_flag("--quotient", res_quotient, "divide by zeta(2s)");
  add_common(residue);

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      // flags override the file: reload the file into a fresh config, then
      // re-apply every flag the user passed on the command line
      RunConfig from_file;
      load_config_file(config_path, from_file);
      CLI::App* sub = app.get_subcommands().front();
      auto seen = [&](const std::string& name) {
        auto* opt = sub->get_option_no_throw(name);
        return opt && opt->count() > 0;
      };
      if (!seen("--tol")) cfg.tolerance = from_file.tolerance;
      if (!seen("--sieve-limit")) cfg.sieve_limit = from_file.sieve_limit;
      if (!seen("--t-max")) cfg.t_max = from_file.t_max;
      if (!seen("--out")) cfg.out = from_file.out;
      if (!seen("--format") && !from_file.format.empty())
        cfg.format = from_file.format;
      if (!seen("--seed")) cfg.seed = from_file.seed;
      if (!seen("--jobs")) cfg.jobs = from_file.jobs;
      if (!seen("--case") && !from_file.cases.empty())
        cfg.cases = from_file.cases;
      if (!seen("--function") && !from_file.functions.empty())
        cfg.functions = from_file.functions;
    }
    if (!(cfg.tolerance >= 1e-12))
      throw muntz::domain_error("tolerance must be >= 1e-12");
    if (cfg.format != "json" && cfg.format != "csv")
      throw muntz::domain_error("format must be json or csv");

    if (app.got_subcommand(verify))
      return cmd_verify(cfg, all, s_opt);
    if (app.got_subcommand(dirichlet))
      return cmd_dirichlet(cfg, dir_s, dir_limit);
    if (app.got_subcommand(residue))
      return cmd_residue(cfg, res_k, res_x, res_quotient);
  } catch (const muntz::class_violation& e) {
    std::cerr << "class violation: " << e.what() << "\n";
    return 2;
  } catch (const muntz::domain_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const muntz::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
