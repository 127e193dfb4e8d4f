#include "gbessel/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gbessel/acceptance.hpp"
#include "gbessel/bessel.hpp"
#include "gbessel/density.hpp"
#include "gbessel/errors.hpp"
#include "gbessel/jack.hpp"
#include "gbessel/okounkov.hpp"

namespace gbessel::cli {

using ojson = nlohmann::ordered_json;

namespace {

bool is_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

/// Exact value of [sign] digits [. digits] [e|E [sign] digits]; nullopt if malformed.
std::optional<Rational> parse_decimal(const std::string& s) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) negative = s[pos++] == '-';
  std::string mantissa;
  std::size_t int_digits = 0, frac_digits = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    mantissa += s[pos++];
    ++int_digits;
  }
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      mantissa += s[pos++];
      ++frac_digits;
    }
  }
  if (int_digits + frac_digits == 0) return std::nullopt;
  long exponent = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    bool eneg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) eneg = s[pos++] == '-';
    const std::string digits = s.substr(pos);
    if (!is_digits(digits) || digits.size() > 4) return std::nullopt;
    exponent = std::stol(digits) * (eneg ? -1 : 1);
    pos = s.size();
  }
  if (pos != s.size()) return std::nullopt;
  exponent -= static_cast<long>(frac_digits);
  mpz_class num(mantissa, 10), pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational q = exponent >= 0 ? Rational(num * pow10) : Rational(num, pow10);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

struct RunConfig {
  std::string command;
  std::string k = "1";
  std::string mu, lambda, z, dir;
  std::string method = "auto";
  std::string format = "json";
  std::string out;
  std::string axis = "mu";
  int n = 0;
  int order = 0;
  double tol = 0.0;
  int weight_max = 4;
  int cases = 20;
  std::uint64_t seed = 1;
  double from = 0.0, to = 1.0;
  int steps = 11;
  bool project = false;
  bool timing = false;
  bool allow_large_n = false;
};

/// Rethrows library errors with the responsible flag in front of the message.
template <class F>
auto with_flag(const std::string& flag, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DegenerateInput& e) {
    throw DegenerateInput(flag + ": " + e.what());
  } catch (const InvalidInput& e) {
    throw InvalidInput(flag + ": " + e.what());
  }
}

std::vector<double> values(const std::vector<Number>& xs) {
  std::vector<double> v;
  for (const Number& x : xs) v.push_back(x.value);
  return v;
}

Number parse_k(const RunConfig& cfg) {
  Number k = parse_number(cfg.k, "--k");
  if (k.exact <= 0) throw InvalidInput("--k: multiplicity must be positive, got " + cfg.k);
  return k;
}

std::vector<Number> require_list(const std::string& text, const std::string& flag) {
  if (text.empty()) throw InvalidInput(flag + ": required");
  return parse_list(text, flag);
}

void check_n(const RunConfig& cfg, std::size_t n) {
  if (cfg.n != 0 && static_cast<std::size_t>(cfg.n) != n)
    throw InvalidInput("--N: " + std::to_string(cfg.n) + " does not match the " +
                       std::to_string(n) + " coordinates given");
}

/// Zero-sum check, or projection with a warning when --project is set.
std::vector<double> onto_hyperplane(const std::vector<double>& x, const std::string& flag,
                                    const RunConfig& cfg, std::ostream& err) {
  if (is_zero_sum(x)) return x;
  if (!cfg.project)
    throw InvalidInput(flag + ": coordinates must sum to zero (sum " +
                       std::to_string(coordinate_sum(x)) + "); pass --project to project them");
  const double mean = coordinate_sum(x) / static_cast<double>(x.size());
  std::ostringstream msg;
  msg.precision(17);
  msg << "warning: " << flag << ": projected onto the zero-sum hyperplane, dropped e-component "
      << mean << " per coordinate\n";
  err << msg.str();
  return project_v(x);
}

Partition parse_partition(const std::vector<Number>& xs, const std::string& flag) {
  std::vector<int> parts;
  for (const Number& x : xs) {
    if (x.exact.get_den() != 1 || x.exact < 0 || x.exact > 1000)
      throw InvalidInput(flag + ": partition parts must be nonnegative integers");
    parts.push_back(static_cast<int>(x.exact.get_num().get_si()));
  }
  return with_flag(flag, [&] { return Partition(parts); });
}

ojson to_json(const Partition& p) { return ojson(p.parts()); }

BesselParams bessel_params(const RunConfig& cfg, double k) {
  BesselParams p;
  p.k = k;
  p.quad_order = cfg.order;
  if (cfg.tol > 0.0) p.tol = cfg.tol;
  p.method = with_flag("--method", [&] { return parse_method(cfg.method); });
  p.allow_large_n = cfg.allow_large_n;
  return p;
}

/// Decreasingly sorted, regular lambda; diagnostics name --lambda.
std::vector<double> chamber_lambda(std::vector<double> lam) {
  std::sort(lam.begin(), lam.end(), std::greater<>());
  with_flag("--lambda", [&] { require_regular(lam); });
  return lam;
}

ojson base_params(const Number& k) {
  ojson p;
  p["k"] = to_string(k.exact);
  p["k_value"] = k.value;
  return p;
}

int cmd_jack_eval(const RunConfig& cfg, ojson& report) {
  const Number k = parse_k(cfg);
  const Partition mu = parse_partition(require_list(cfg.mu, "--mu"), "--mu");
  const std::vector<Number> lam = require_list(cfg.lambda, "--lambda");
  check_n(cfg, lam.size());
  const int n = static_cast<int>(lam.size());
  if (mu.length() > n)
    throw InvalidInput("--mu: partition has more parts than --lambda has coordinates");
  const auto jp = with_flag("--mu", [&] { return jack_construct(mu, n, k.exact); });
  std::vector<Rational> x;
  for (const Number& v : lam) x.push_back(v.exact);
  const Rational exact = jack_eval(*jp, std::span<const Rational>(x));

  ojson params = base_params(k);
  params["mu"] = to_json(mu);
  params["lambda"] = values(lam);
  report["params"] = params;
  report["value"] = exact.get_d();
  report["err_estimate"] = 0.0;
  report["method"] = "exact";
  report["evaluations"] = 1;
  ojson c;
  c["mu"] = to_json(mu);
  c["lambda"] = values(lam);
  c["exact"] = to_string(exact);
  c["eigenvalue"] = to_string(jp->eigenvalue);
  report["cases"].push_back(c);
  return 0;
}

int cmd_oo_verify(const RunConfig& cfg, ojson& report) {
  const Number k = parse_k(cfg);
  const int order = cfg.order > 0 ? cfg.order : 64;
  const double tol = cfg.tol > 0.0 ? cfg.tol : 1e-7;
  struct Case {
    Partition mu;
    std::vector<double> lambda;
  };
  std::vector<Case> cases;
  ojson params = base_params(k);
  if (!cfg.mu.empty()) {
    const Partition mu = parse_partition(parse_list(cfg.mu, "--mu"), "--mu");
    const std::vector<double> lam = values(require_list(cfg.lambda, "--lambda"));
    check_n(cfg, lam.size());
    for (std::size_t i = 1; i < lam.size(); ++i)
      if (!(lam[i - 1] > lam[i])) throw InvalidInput("--lambda: must be strictly decreasing");
    if (mu.length() >= static_cast<int>(lam.size()))
      throw InvalidInput("--mu: needs fewer parts than --lambda has coordinates");
    cases.push_back({mu, lam});
    params["mu"] = to_json(mu);
    params["lambda"] = lam;
  } else {
    if (cfg.n < 2) throw InvalidInput("--N: batch mode needs N >= 2 (or give --mu and --lambda)");
    if (cfg.weight_max < 0 || cfg.weight_max > 12)
      throw InvalidInput("--weight-max: must lie in [0, 12]");
    if (cfg.cases < 1) throw InvalidInput("--cases: must be positive");
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> base(0.3, 1.0), gap(0.3, 1.5);
    for (int i = 0; i < cfg.cases; ++i) {
      const int w = std::uniform_int_distribution<int>(0, cfg.weight_max)(rng);
      const std::vector<Partition> all = partitions_of(w, cfg.n - 1);
      const Partition mu = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
      std::vector<double> lam(cfg.n);
      lam[cfg.n - 1] = base(rng);
      for (int j = cfg.n - 1; j-- > 0;) lam[j] = lam[j + 1] + gap(rng);
      cases.push_back({mu, lam});
    }
    params["N"] = cfg.n;
    params["weight_max"] = cfg.weight_max;
    params["cases"] = cfg.cases;
    params["seed"] = cfg.seed;
  }
  params["order"] = order;
  params["tol"] = tol;
  report["params"] = params;

  double worst = 0.0;
  bool all_passed = true;
  for (const Case& c : cases) {
    const OOReport r = verify_oo(c.mu, c.lambda, k.value, order, tol, k.exact);
    worst = std::max(worst, r.rel_error);
    all_passed = all_passed && r.passed;
    ojson row;
    row["mu"] = to_json(c.mu);
    row["lambda"] = c.lambda;
    row["lhs"] = r.lhs;
    row["rhs"] = r.rhs;
    row["rel_error"] = r.rel_error;
    row["passed"] = r.passed;
    report["cases"].push_back(row);
  }
  report["value"] = worst;
  report["method"] = "quadrature";
  report["evaluations"] = cases.size();
  return all_passed ? 0 : 1;
}

int cmd_bessel_eval(const RunConfig& cfg, ojson& report, std::ostream& err) {
  const Number k = parse_k(cfg);
  const std::vector<double> mu_in = values(require_list(cfg.mu, "--mu"));
  const std::vector<double> lam_in = values(require_list(cfg.lambda, "--lambda"));
  if (mu_in.size() != lam_in.size())
    throw InvalidInput("--mu: has " + std::to_string(mu_in.size()) + " coordinates, --lambda has " +
                       std::to_string(lam_in.size()));
  check_n(cfg, lam_in.size());
  const std::vector<double> mu = onto_hyperplane(mu_in, "--mu", cfg, err);
  const std::vector<double> lam = onto_hyperplane(lam_in, "--lambda", cfg, err);
  chamber_lambda(lam);
  const BesselParams p = bessel_params(cfg, k.value);
  const BesselResult r = bessel_eval(mu, lam, p);

  ojson params = base_params(k);
  params["mu"] = mu_in;
  params["lambda"] = lam_in;
  params["order"] = cfg.order;
  params["tol"] = p.tol;
  params["method"] = cfg.method;
  params["project"] = cfg.project;
  report["params"] = params;
  report["value"] = r.value;
  report["err_estimate"] = r.err_estimate;
  report["method"] = to_string(r.method);
  report["evaluations"] = r.evaluations;
  return 0;
}

int cmd_density_eval(const RunConfig& cfg, ojson& report, std::ostream& err) {
  const Number k = parse_k(cfg);
  const std::vector<double> lam_in = values(require_list(cfg.lambda, "--lambda"));
  check_n(cfg, lam_in.size());
  const std::size_t n = lam_in.size();
  if (n < 2) throw InvalidInput("--lambda: needs at least two coordinates");
  const std::vector<double> lam = chamber_lambda(onto_hyperplane(lam_in, "--lambda", cfg, err));
  std::vector<double> z = values(require_list(cfg.z, "--z"));
  if (z.size() + 1 == n) {
    z.push_back(-coordinate_sum(z));
  } else if (z.size() == n) {
    z = onto_hyperplane(z, "--z", cfg, err);
  } else {
    throw InvalidInput("--z: expected " + std::to_string(n - 1) + " or " + std::to_string(n) +
                       " coordinates");
  }
  DensityOptions opts;
  if (cfg.order > 0) opts.order = cfg.order;
  std::string method = cfg.method;
  if (method == "auto") method = n == 2 ? "closed_form" : (n == 3 ? "explicit" : "recursive");
  double value = 0.0;
  if (method == "closed_form" && n == 2) {
    value = density_A1(lam, z, k.value);
  } else if (method == "explicit" && n == 3) {
    value = density_A2(lam, z, k.value, opts);
  } else if (method == "recursive" && n >= 3) {
    if (n >= 5 && !cfg.allow_large_n) throw InvalidInput("--lambda: N >= 5 needs --allow-large-n");
    value = density_general(lam, z, k.value, opts);
  } else {
    throw InvalidInput("--method: '" + cfg.method + "' is not available for N = " +
                       std::to_string(n) + " (auto, closed_form for N=2, explicit for N=3, "
                       "recursive for N>=3)");
  }
  ojson params = base_params(k);
  params["lambda"] = lam_in;
  params["z"] = z;
  params["order"] = opts.order;
  params["method"] = cfg.method;
  report["params"] = params;
  report["value"] = value;
  report["method"] = method;
  report["evaluations"] = 1;
  return 0;
}

int cmd_table(const RunConfig& cfg, ojson& report, std::ostream& err) {
  const Number k = parse_k(cfg);
  const std::vector<double> mu = values(require_list(cfg.mu, "--mu"));
  const std::vector<double> lam = values(require_list(cfg.lambda, "--lambda"));
  if (mu.size() != lam.size()) throw InvalidInput("--mu: length differs from --lambda");
  check_n(cfg, lam.size());
  const std::size_t n = lam.size();
  if (cfg.axis != "mu" && cfg.axis != "lambda")
    throw InvalidInput("--axis: expected mu or lambda, got '" + cfg.axis + "'");
  if (cfg.steps < 1) throw InvalidInput("--steps: must be positive");
  std::vector<double> dir(n, 0.0);
  if (cfg.dir.empty()) {
    dir.front() = 1.0;
    dir.back() = -1.0;
  } else {
    dir = values(parse_list(cfg.dir, "--dir"));
    if (dir.size() != n) throw InvalidInput("--dir: length differs from --lambda");
  }
  const std::vector<double> mu0 = onto_hyperplane(mu, "--mu", cfg, err);
  const std::vector<double> lam0 = onto_hyperplane(lam, "--lambda", cfg, err);
  dir = onto_hyperplane(dir, "--dir", cfg, err);
  const BesselParams p = bessel_params(cfg, k.value);

  long evals = 0;
  for (int s = 0; s < cfg.steps; ++s) {
    const double t =
        cfg.steps == 1 ? cfg.from : cfg.from + (cfg.to - cfg.from) * s / (cfg.steps - 1);
    std::vector<double> m(mu0), l(lam0);
    std::vector<double>& moving = cfg.axis == "mu" ? m : l;
    for (std::size_t i = 0; i < n; ++i) moving[i] += t * dir[i];
    const bool in_chamber = std::is_sorted(m.begin(), m.end(), std::greater<>()) &&
                            std::is_sorted(l.begin(), l.end(), std::greater<>());
    chamber_lambda(l);
    const BesselResult r = bessel_eval(m, l, p);
    evals += r.evaluations;
    ojson row;
    row["t"] = t;
    row["mu"] = m;
    row["lambda"] = l;
    row["value"] = r.value;
    row["err_estimate"] = r.err_estimate;
    row["in_chamber"] = in_chamber;
    report["cases"].push_back(row);
  }
  ojson params = base_params(k);
  params["mu"] = mu;
  params["lambda"] = lam;
  params["axis"] = cfg.axis;
  params["dir"] = dir;
  params["from"] = cfg.from;
  params["to"] = cfg.to;
  params["steps"] = cfg.steps;
  params["order"] = cfg.order;
  params["tol"] = p.tol;
  params["method"] = cfg.method;
  report["params"] = params;
  report["method"] = cfg.method;
  report["evaluations"] = evals;
  return 0;
}

int cmd_selftest(const RunConfig& cfg, ojson& report) {
  const AcceptanceReport r = run_acceptance(cfg.seed);
  report["params"] = ojson{{"seed", cfg.seed}};
  report["value"] = r.passed();
  report["method"] = "acceptance";
  report["evaluations"] = r.criteria.size();
  for (const auto& c : to_json(r)["criteria"]) report["cases"].push_back(ojson::parse(c.dump()));
  return r.passed() ? 0 : 1;
}

std::string csv_cell(const ojson& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (v.is_array()) {
    std::vector<std::string> parts;
    for (const auto& e : v) parts.push_back(csv_cell(e));
    return join(parts, ";");
  }
  return v.dump();
}

std::string to_csv(const ojson& report) {
  std::ostringstream os;
  const ojson& cases = report["cases"];
  if (!cases.empty()) {
    std::vector<std::string> header;
    for (const auto& [key, _] : cases.front().items()) header.push_back(key);
    os << join(header, ",") << "\n";
    for (const auto& row : cases) {
      std::vector<std::string> cells;
      for (const std::string& key : header)
        cells.push_back(row.contains(key) ? csv_cell(row[key]) : "");
      os << join(cells, ",") << "\n";
    }
    return os.str();
  }
  const std::vector<std::string> keys{"command", "value", "err_estimate", "method", "evaluations",
                                      "elapsed_ms"};
  std::vector<std::string> cells;
  for (const std::string& key : keys) cells.push_back(csv_cell(report[key]));
  os << join(keys, ",") << "\n" << join(cells, ",") << "\n";
  return os.str();
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--k", cfg.k, "Multiplicity: integer, decimal or p/q");
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", cfg.out, "Write the report to this file");
  sub->add_flag("--timing", cfg.timing, "Report elapsed_ms");
  sub->add_option("--N", cfg.n, "Number of coordinates (checked against the inputs)");
}

}  // namespace

Number parse_number(const std::string& text, const std::string& flag) {
  const std::string s = trim(text);
  Number x;
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    const bool negative = !num.empty() && num[0] == '-';
    if (!num.empty() && (num[0] == '-' || num[0] == '+')) num.erase(0, 1);
    if (!is_digits(num) || !is_digits(den))
      throw InvalidInput(flag + ": cannot parse '" + text + "' as a fraction p/q");
    if (mpz_class(den, 10) == 0) throw InvalidInput(flag + ": zero denominator in '" + text + "'");
    x.exact = Rational(mpz_class(num, 10), mpz_class(den, 10));
    x.exact.canonicalize();
    if (negative) x.exact = -x.exact;
    x.value = mpz_class(num, 10).get_d() / mpz_class(den, 10).get_d();
    if (!std::isfinite(x.value)) throw InvalidInput(flag + ": '" + text + "' is out of the double range");
    if (negative) x.value = -x.value;
    return x;
  }
  const std::optional<Rational> q = parse_decimal(s);
  if (!q) throw InvalidInput(flag + ": cannot parse '" + text + "' as a number");
  const char* first = s.data() + (s[0] == '+' ? 1 : 0);
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), x.value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x.value))
    throw InvalidInput(flag + ": '" + text + "' is out of the double range");
  x.exact = *q;
  return x;
}

std::vector<Number> parse_list(const std::string& text, const std::string& flag) {
  std::vector<Number> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) out.push_back(parse_number(item, flag));
  if (out.empty() || (!text.empty() && text.back() == ','))
    throw InvalidInput(flag + ": expected a comma-separated list of numbers, got '" + text + "'");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Generalized Bessel functions of type A, Jack polynomials and their checks"};
  app.require_subcommand(1);

  auto* jack = app.add_subcommand("jack-eval", "Exact Jack polynomial j_mu at the point lambda");
  add_common(jack, cfg);
  jack->add_option("--mu", cfg.mu, "Partition, comma separated")->required();
  jack->add_option("--lambda", cfg.lambda, "Evaluation point")->required();

  auto* oo = app.add_subcommand("oo-verify", "Check the branching integral against exact Jack values");
  add_common(oo, cfg);
  oo->add_option("--mu", cfg.mu, "Partition (single case)");
  oo->add_option("--lambda", cfg.lambda, "Strictly decreasing point (single case)");
  oo->add_option("--order", cfg.order, "Gauss-Jacobi order");
  oo->add_option("--tol", cfg.tol, "Relative tolerance");
  oo->add_option("--weight-max", cfg.weight_max, "Largest |mu| in batch mode");
  oo->add_option("--cases", cfg.cases, "Number of random cases in batch mode");
  oo->add_option("--seed", cfg.seed, "Random seed for batch mode");

  auto* bessel = app.add_subcommand("bessel-eval", "Evaluate J_k(mu, lambda)");
  add_common(bessel, cfg);
  bessel->add_option("--mu", cfg.mu, "Spectral point")->required();
  bessel->add_option("--lambda", cfg.lambda, "Regular point")->required();
  bessel->add_option("--order", cfg.order, "Outer quadrature order (0 = default)");
  bessel->add_option("--tol", cfg.tol, "Relative tolerance");
  bessel->add_option("--method", cfg.method, "auto, recursive, density or closed_form");
  bessel->add_flag("--project", cfg.project, "Project inputs onto the zero-sum hyperplane");
  bessel->add_flag("--allow-large-n", cfg.allow_large_n, "Permit N >= 5");

  auto* density = app.add_subcommand("density-eval", "Density of the Laplace representation at Z");
  add_common(density, cfg);
  density->add_option("--lambda", cfg.lambda, "Regular point")->required();
  density->add_option("--z", cfg.z, "Z_1..Z_{N-1}, or all N coordinates")->required();
  density->add_option("--order", cfg.order, "Inner Gauss-Jacobi order");
  density->add_option("--method", cfg.method, "auto, closed_form, explicit or recursive");
  density->add_flag("--project", cfg.project, "Project inputs onto the zero-sum hyperplane");
  density->add_flag("--allow-large-n", cfg.allow_large_n, "Permit N >= 5");

  auto* table = app.add_subcommand("table", "Tabulate J along a line in mu or lambda");
  add_common(table, cfg);
  table->add_option("--mu", cfg.mu, "Base spectral point")->required();
  table->add_option("--lambda", cfg.lambda, "Base point")->required();
  table->add_option("--axis", cfg.axis, "mu or lambda");
  table->add_option("--dir", cfg.dir, "Direction (default e_1 - e_N)");
  table->add_option("--from", cfg.from, "First grid parameter");
  table->add_option("--to", cfg.to, "Last grid parameter");
  table->add_option("--steps", cfg.steps, "Number of grid points");
  table->add_option("--order", cfg.order, "Outer quadrature order (0 = default)");
  table->add_option("--tol", cfg.tol, "Relative tolerance");
  table->add_option("--method", cfg.method, "auto, recursive, density or closed_form");
  table->add_flag("--project", cfg.project, "Project inputs onto the zero-sum hyperplane");

  auto* self = app.add_subcommand("selftest", "Run the acceptance suite");
  add_common(self, cfg);
  self->add_option("--seed", cfg.seed, "Random seed");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  ojson report;
  report["command"] = cfg.command;
  report["params"] = ojson::object();
  report["value"] = nullptr;
  report["err_estimate"] = nullptr;
  report["method"] = nullptr;
  report["evaluations"] = nullptr;
  report["elapsed_ms"] = nullptr;
  report["cases"] = ojson::array();

  const auto t0 = std::chrono::steady_clock::now();
  int code = 0;
  try {
    if (cfg.command == "jack-eval") code = cmd_jack_eval(cfg, report);
    else if (cfg.command == "oo-verify") code = cmd_oo_verify(cfg, report);
    else if (cfg.command == "bessel-eval") code = cmd_bessel_eval(cfg, report, err);
    else if (cfg.command == "density-eval") code = cmd_density_eval(cfg, report, err);
    else if (cfg.command == "table") code = cmd_table(cfg, report, err);
    else code = cmd_selftest(cfg, report);
  } catch (const InternalError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (cfg.timing)
    report["elapsed_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  const std::string text = cfg.format == "csv" ? to_csv(report) : report.dump(2) + "\n";
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      err << "error: --out: cannot open '" << cfg.out << "' for writing\n";
      return 2;
    }
    f << text;
  }
  return code;
}

}  // namespace gbessel::cli
