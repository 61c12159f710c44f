#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "lepage/spectral_json.hpp"

namespace lepage::cli {

namespace {

using nlohmann::json;

constexpr std::size_t default_check_draws = 100'000;

const std::set<std::string> known_keys = {
    "command", "law",    "n",    "seed",  "truncation", "threads",  "output",
    "points",  "lattice", "marginal", "grid", "suite", "reference"};

template <class T> T get_as(const json &j, const char *what) {
  try {
    return j.get<T>();
  } catch (const json::exception &) {
    throw config_error(std::string("'") + what + "' has the wrong type");
  }
}

std::size_t get_count(const json &j, const char *what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw config_error(std::string("'") + what +
                       "' must be a nonnegative integer");
  return j.get<std::size_t>();
}

std::vector<double> lattice_axis(const json &axis, const char *what) {
  if (!axis.is_array() || axis.size() != 3)
    throw config_error(std::string("'") + what + "' must be [lo, hi, count]");
  const double lo = get_as<double>(axis[0], what);
  const double hi = get_as<double>(axis[1], what);
  const std::size_t count = get_count(axis[2], what);
  if (count == 0 || hi < lo)
    throw config_error(std::string("'") + what + "' is empty");
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i)
    v[i] = count == 1 ? lo
                      : lo + (hi - lo) * static_cast<double>(i) /
                                 static_cast<double>(count - 1);
  return v;
}

void parse_law(const json &law, RunConfig &c) {
  if (!law.is_object())
    throw config_error("'law' must be an object");
  for (const auto &[key, _] : law.items())
    if (key != "type" && key != "alpha" && key != "measure" && key != "delta" &&
        key != "summands")
      throw config_error("unknown law key '" + key + "'");
  if (!law.contains("type") || !law.contains("alpha") || !law.contains("measure"))
    throw config_error("law needs 'type', 'alpha' and 'measure'");
  const auto type = get_as<std::string>(law["type"], "law.type");
  if (type == "max_stable")
    c.kind = LawKind::max_stable;
  else if (type == "stable")
    c.kind = LawKind::stable;
  else if (type == "doa")
    c.kind = LawKind::doa;
  else
    throw config_error("unknown law type '" + type + "'");
  c.alpha = get_as<double>(law["alpha"], "law.alpha");
  if (law.contains("delta")) {
    if (c.kind != LawKind::stable)
      throw config_error("'delta' applies to stable laws only");
    c.delta = get_as<std::vector<double>>(law["delta"], "law.delta");
  }
  if (law.contains("summands")) {
    if (c.kind != LawKind::doa)
      throw config_error("'summands' applies to doa laws only");
    c.summands = get_count(law["summands"], "law.summands");
  }
  try {
    c.measure = measure_from_json(law["measure"]);
    switch (c.kind) {
    case LawKind::max_stable:
      MaxStableLaw(c.alpha, *c.measure);
      break;
    case LawKind::stable:
      StableLaw(c.alpha, *c.measure, c.delta);
      break;
    case LawKind::doa:
      if (!(c.alpha > 0.0 && c.alpha < 1.0))
        throw config_error("doa laws need alpha in (0, 1)");
      if (c.summands == 0)
        throw config_error("'summands' must be at least 1");
      break;
    }
  } catch (const lepage::error &e) {
    throw config_error(e.what());
  }
}

void parse_grid(const json &g, RunConfig &c) {
  if (!g.is_object())
    throw config_error("'grid' must be an object");
  for (const auto &[key, _] : g.items())
    if (key != "x" && key != "y" && key != "normalization")
      throw config_error("unknown grid key '" + key + "'");
  const auto axis = [&](const char *name, double &lo, double &hi,
                        std::size_t &bins) {
    if (!g.contains(name))
      return;
    const auto &a = g[name];
    if (!a.is_array() || a.size() != 3)
      throw config_error("grid axes must be [lo, hi, bins]");
    lo = get_as<double>(a[0], "grid");
    hi = get_as<double>(a[1], "grid");
    bins = get_count(a[2], "grid");
    if (bins == 0 || !(hi > lo))
      throw config_error("grid axes need bins >= 1 and hi > lo");
  };
  axis("x", c.grid.x_lo, c.grid.x_hi, c.grid.x_bins);
  axis("y", c.grid.y_lo, c.grid.y_hi, c.grid.y_bins);
  if (g.contains("normalization")) {
    const auto norm = get_as<std::string>(g["normalization"], "grid.normalization");
    if (norm == "counts")
      c.grid.normalization = Normalization::counts;
    else if (norm == "density")
      c.grid.normalization = Normalization::density;
    else
      throw config_error("normalization must be 'counts' or 'density'");
  }
}

std::string format_row(std::span<const double> values) {
  std::string line;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (j)
      line += ',';
    append_double(line, values[j]);
  }
  return line;
}

std::string meta_line(const RunConfig &c) {
  return "# meta: " + c.effective.dump() + "\n";
}

SampleBatch draw_batch(const RunConfig &c, std::size_t n, std::uint64_t seed) {
  switch (c.kind) {
  case LawKind::max_stable: {
    const MaxStableLaw law(c.alpha, *c.measure);
    const MaxMode mode = c.k ? MaxMode{TruncatedMax{*c.k}} : MaxMode{ExactMax{}};
    return sample_batch(law, mode, n, seed, c.threads);
  }
  case LawKind::stable: {
    const StableLaw law(c.alpha, *c.measure, c.delta);
    return sample_batch(law, PartialSum{c.k.value_or(law.default_terms())}, n,
                        seed, c.threads);
  }
  case LawKind::doa:
    return sample_doa_batch(c.alpha, *c.measure, c.summands, n, seed, c.threads);
  }
  return {};
}

void require_kind(const RunConfig &c, LawKind kind, const char *suite) {
  if (c.kind != kind)
    throw config_error(std::string("suite '") + suite +
                       "' does not apply to this law type");
}

CheckResult below(std::string name, double stat, double threshold) {
  return {std::move(name), stat, threshold, "<", stat < threshold};
}

CheckResult above(std::string name, double stat, double threshold) {
  return {std::move(name), stat, threshold, ">", stat > threshold};
}

std::string coord_name(const char *prefix, std::size_t j) {
  return std::string(prefix) + std::to_string(j + 1);
}

/// Splits a 3n-row batch into three independent n-row columns for coordinate j.
std::array<std::vector<double>, 3> thirds(const SampleBatch &b, std::size_t n,
                                          std::size_t j) {
  std::array<std::vector<double>, 3> out;
  for (std::size_t part = 0; part < 3; ++part) {
    out[part].resize(n);
    for (std::size_t i = 0; i < n; ++i)
      out[part][i] = b(part * n + i, j);
  }
  return out;
}

std::vector<CheckResult> suite_ex1(const RunConfig &c) {
  require_kind(c, LawKind::max_stable, "ex1");
  const std::size_t d = c.measure->dim();
  double alpha = 0.75;
  std::vector<double> p(d, 0.5);
  if (c.reference.contains("alpha"))
    alpha = get_as<double>(c.reference["alpha"], "reference.alpha");
  if (c.reference.contains("p"))
    p = get_as<std::vector<double>>(c.reference["p"], "reference.p");
  else if (d != 2)
    throw config_error("ex1 needs reference.p unless d = 2");
  if (p.size() != d)
    throw config_error("reference.p has the wrong length");
  const auto batch = draw_batch(c, c.n, c.seed);
  std::vector<CheckResult> out;
  for (std::size_t j = 0; j < d; ++j) {
    const double pj = p[j];
    const auto cdf = [&](double x) {
      return x > 0.0 ? std::exp(-pj * std::pow(x, -alpha)) : 0.0;
    };
    out.push_back(below(coord_name("ex1.ks.x", j),
                        ks_one_sample(batch.column(j), cdf), 0.01));
  }
  return out;
}

std::vector<CheckResult> suite_ex2(const RunConfig &c) {
  require_kind(c, LawKind::max_stable, "ex2");
  if (!std::holds_alternative<UniformLInf>(c.measure->variant()))
    throw config_error("ex2 needs the uniform_linf measure");
  const MaxStableLaw law(c.alpha, *c.measure);
  const auto d = static_cast<double>(law.dim());
  const double closed =
      c.measure->total_mass() * (c.alpha + d) / ((c.alpha + 1.0) * d);
  std::vector<CheckResult> out;
  const auto batch = draw_batch(c, c.n, c.seed);
  for (std::size_t j = 0; j < law.dim(); ++j) {
    out.push_back(below(coord_name("ex2.constant.x", j),
                        std::abs(law.marginal_scales()[j] - closed), 1e-9));
    const auto cdf = [&](double x) {
      return x > 0.0 ? std::exp(-closed * std::pow(x, -c.alpha)) : 0.0;
    };
    out.push_back(below(coord_name("ex2.ks.x", j),
                        ks_one_sample(batch.column(j), cdf), 0.01));
  }
  return out;
}

std::vector<CheckResult> suite_ex3(const RunConfig &c) {
  require_kind(c, LawKind::max_stable, "ex3");
  const auto &m = *c.measure;
  if (!m.is_atoms() || m.dim() != 2 || m.atom_list().size() != 2)
    throw config_error("ex3 needs two atoms (1, a) and (b, 1)");
  const auto &list = m.atom_list();
  std::size_t first = list.point(0)[0] == 1.0 ? 0 : 1;
  const std::size_t second = 1 - first;
  if (list.point(first)[0] != 1.0 || list.point(second)[1] != 1.0)
    throw config_error("ex3 needs two atoms (1, a) and (b, 1)");
  const double p = list.weights[first], q = list.weights[second];
  const double a = list.point(first)[1], b = list.point(second)[0];
  if (std::abs(p + q - 1.0) > 1e-12)
    throw config_error("ex3 needs p + q = 1");

  const auto batch = draw_batch(c, c.n, c.seed);
  const auto n = static_cast<double>(batch.rows());
  std::size_t on1 = 0, on2 = 0;
  for (std::size_t i = 0; i < batch.rows(); ++i) {
    const double x1 = batch(i, 0), x2 = batch(i, 1);
    if (std::abs(x2 - a * x1) <= 1e-12 * x1)
      ++on1;
    if (std::abs(x1 - b * x2) <= 1e-12 * x2)
      ++on2;
  }
  std::vector<CheckResult> out;
  const auto ray = [&](const char *name, Ray which, std::size_t hits) {
    const double mass =
        ex3_ray_mass(p, q, a, b, c.alpha, which, std::numeric_limits<double>::infinity());
    const double se = std::sqrt(std::max(mass * (1.0 - mass), 1e-300) / n);
    out.push_back(below(name, std::abs(static_cast<double>(hits) / n - mass) / se,
                        4.0));
  };
  ray("ex3.ray.e1", Ray::e1, on1);
  ray("ex3.ray.e2", Ray::e2, on2);
  return out;
}

std::vector<CheckResult> suite_max_stability(const RunConfig &c) {
  require_kind(c, LawKind::max_stable, "max_stability");
  const auto batch = draw_batch(c, 3 * c.n, c.seed);
  const double scale = std::pow(2.0, -1.0 / c.alpha);
  std::vector<CheckResult> out;
  for (std::size_t j = 0; j < c.measure->dim(); ++j) {
    auto [x1, x2, x] = thirds(batch, c.n, j);
    for (std::size_t i = 0; i < c.n; ++i)
      x1[i] = std::max(x1[i], x2[i]) * scale;
    out.push_back(below(coord_name("max_stability.ks.x", j),
                        ks_two_sample(x1, x), 0.015));
  }
  return out;
}

std::vector<CheckResult> suite_sum_stability(const RunConfig &c) {
  require_kind(c, LawKind::stable, "sum_stability");
  const auto batch = draw_batch(c, 3 * c.n, c.seed);
  const double scale = std::pow(2.0, -1.0 / c.alpha);
  std::vector<CheckResult> out;
  for (std::size_t j = 0; j < c.measure->dim(); ++j) {
    auto [x1, x2, x] = thirds(batch, c.n, j);
    for (std::size_t i = 0; i < c.n; ++i)
      x1[i] = (x1[i] + x2[i]) * scale;
    out.push_back(below(coord_name("sum_stability.ks.x", j),
                        ks_two_sample(x1, x), 0.015));
  }
  return out;
}

std::vector<CheckResult> suite_ecf(const RunConfig &c) {
  require_kind(c, LawKind::stable, "ecf");
  const std::size_t d = c.measure->dim();
  if (d > 2)
    throw config_error("ecf suite supports d <= 2");
  const StableLaw law(c.alpha, *c.measure, c.delta);
  const auto batch = draw_batch(c, c.n, c.seed);
  const double axis[] = {-2.0, -1.0, 0.0, 1.0, 2.0};
  double worst = 0.0;
  std::vector<double> t(d);
  for (double t1 : axis)
    for (double t2 : axis) {
      if (d == 1 && t2 != 0.0)
        continue;
      t[0] = t1;
      if (d == 2)
        t[1] = t2;
      worst = std::max(worst, std::abs(ecf_eval(batch, t) - stable_cf(law, t)));
    }
  const double threshold = 3.0 / std::sqrt(static_cast<double>(c.n)) + 1e-3;
  return {below("ecf.sup_error", worst, threshold)};
}

std::vector<CheckResult> suite_tau(const RunConfig &c) {
  require_kind(c, LawKind::max_stable, "tau");
  const MaxStableLaw law(c.alpha, *c.measure);
  std::vector<CheckResult> out;
  for (std::size_t j = 0; j < law.dim(); ++j) {
    if (!(face_hit_probability(*c.measure, j) > 0.0))
      throw config_error("coordinate " + std::to_string(j + 1) +
                         " is never hit by the spectral measure");
    const auto report = tau_law_check(law, j, c.n, c.seed + j);
    out.push_back(above(coord_name("tau.pvalue.x", j), report.p_value, 0.001));
  }
  return out;
}

std::vector<CheckResult> suite_truncation(const RunConfig &c) {
  require_kind(c, LawKind::max_stable, "truncation");
  const MaxStableLaw law(c.alpha, *c.measure);
  const std::size_t k = c.k.value_or(30);
  const std::size_t d = law.dim();
  std::vector<double> exact(d), partial(d);
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < c.n; ++i) {
    auto rng = RandomStream::substream(c.seed, i);
    auto twin = rng;
    sample_max_stable(law, rng, std::span<double>(exact));
    sample_max_stable_fixed_k(law, twin, k, std::span<double>(partial));
    if (exact != partial)
      ++mismatches;
  }
  CheckResult r{"truncation.mismatches", static_cast<double>(mismatches), 0.0,
                "<=", mismatches == 0};
  return {r};
}

void write_output(const RunConfig &c, const std::string &text,
                  std::ostream &out) {
  if (c.output.empty()) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(c.output, std::ios::binary);
  if (!file)
    throw std::runtime_error("cannot open output file '" + c.output + "'");
  file << text;
  if (!file)
    throw std::runtime_error("failed writing '" + c.output + "'");
}

std::string cmd_sample(const RunConfig &c) {
  const auto batch = draw_batch(c, c.n, c.seed);
  std::string text = meta_line(c);
  for (std::size_t j = 0; j < batch.dim(); ++j) {
    if (j)
      text += ',';
    text += "x" + std::to_string(j + 1);
  }
  text += '\n';
  for (std::size_t i = 0; i < batch.rows(); ++i) {
    text += format_row(batch.row(i));
    text += '\n';
  }
  return text;
}

std::string point_header(const char *prefix, std::size_t d) {
  std::string h;
  for (std::size_t j = 0; j < d; ++j) {
    if (j)
      h += ',';
    h += prefix + std::to_string(j + 1);
  }
  return h;
}

std::string cmd_cdf(const RunConfig &c) {
  const MaxStableLaw law(c.alpha, *c.measure);
  std::string text = meta_line(c) + point_header("x", law.dim()) + ",cdf\n";
  for (const auto &x : c.points) {
    const double v = c.marginal ? max_marginal_cdf(law, *c.marginal, x[*c.marginal])
                                : max_joint_cdf(law, x);
    text += format_row(x) + ',';
    append_double(text, v);
    text += '\n';
  }
  return text;
}

std::string cmd_cf(const RunConfig &c) {
  const StableLaw law(c.alpha, *c.measure, c.delta);
  std::string text = meta_line(c) + point_header("t", law.dim()) + ",re,im\n";
  for (const auto &t : c.points) {
    const auto v = stable_cf(law, t);
    text += format_row(t) + ',';
    append_double(text, v.real());
    text += ',';
    append_double(text, v.imag());
    text += '\n';
  }
  return text;
}

std::string cmd_hist(const RunConfig &c) {
  if (c.measure->dim() < 2)
    throw config_error("hist needs d >= 2");
  const auto batch = draw_batch(c, c.n, c.seed);
  const auto &g = c.grid;
  const auto grid = histogram2d(batch, linear_edges(g.x_lo, g.x_hi, g.x_bins),
                                linear_edges(g.y_lo, g.y_hi, g.y_bins),
                                g.normalization);
  std::ostringstream os;
  os << meta_line(c);
  write_grid(os, grid);
  return os.str();
}

std::string cmd_check(const RunConfig &c, std::ostream &err, bool &all_pass) {
  const auto results = run_suite(c);
  std::string text;
  all_pass = true;
  std::size_t passed = 0;
  for (const auto &r : results) {
    json line = {{"check", r.check},
                 {"statistic", r.statistic},
                 {"threshold", r.threshold},
                 {"relation", r.relation},
                 {"pass", r.pass}};
    text += line.dump() + "\n";
    all_pass = all_pass && r.pass;
    passed += r.pass ? 1 : 0;
  }
  err << "suite " << c.suite << ": " << passed << "/" << results.size()
      << " checks passed\n";
  return text;
}

} // namespace

RunConfig parse_config(const std::string &command, json j,
                       const Overrides &overrides) {
  if (!j.is_object())
    throw config_error("config must be a JSON object");
  for (const auto &[key, _] : j.items())
    if (!known_keys.contains(key))
      throw config_error("unknown config key '" + key + "'");
  if (j.contains("command") &&
      get_as<std::string>(j["command"], "command") != command)
    throw config_error("config is for command '" +
                       j["command"].get<std::string>() + "'");
  j["command"] = command;
  if (overrides.seed)
    j["seed"] = *overrides.seed;
  if (overrides.n)
    j["n"] = *overrides.n;
  if (overrides.threads)
    j["threads"] = *overrides.threads;
  if (overrides.output)
    j["output"] = *overrides.output;

  RunConfig c;
  c.command = command;
  if (!j.contains("seed"))
    throw config_error("a seed is required (config 'seed' or --seed)");
  if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
    throw config_error("'seed' must be an integer");
  if (j["seed"].is_number_integer() && j["seed"].get<long long>() < 0)
    throw config_error("'seed' must be nonnegative");
  c.seed = j["seed"].get<std::uint64_t>();
  if (!j.contains("law"))
    throw config_error("config needs a 'law'");
  parse_law(j["law"], c);

  const bool needs_n = command == "sample" || command == "hist";
  if (j.contains("n"))
    c.n = get_count(j["n"], "n");
  else if (needs_n)
    throw config_error("config needs 'n'");
  else
    c.n = default_check_draws;
  if (j.contains("threads"))
    c.threads = std::max<std::size_t>(1, get_count(j["threads"], "threads"));
  if (j.contains("output"))
    c.output = get_as<std::string>(j["output"], "output");

  if (j.contains("truncation")) {
    const auto &t = j["truncation"];
    if (t.is_string() && t.get<std::string>() == "exact") {
      if (c.kind != LawKind::max_stable)
        throw config_error("exact sampling applies to max-stable laws only");
    } else {
      c.k = get_count(t, "truncation");
      if (*c.k == 0)
        throw config_error("'truncation' must be 'exact' or at least 1");
      if (c.kind == LawKind::doa)
        throw config_error("doa laws take 'summands', not 'truncation'");
    }
  }

  const std::size_t d = c.measure->dim();
  if (c.kind != LawKind::max_stable) {
    c.grid.x_lo = c.grid.y_lo = -8.0;
    c.grid.x_hi = c.grid.y_hi = 8.0;
  }
  if (j.contains("grid"))
    parse_grid(j["grid"], c);

  if (command == "cdf" || command == "cf") {
    if (command == "cdf" && c.kind != LawKind::max_stable)
      throw config_error("cdf evaluates max-stable laws");
    if (command == "cf" && c.kind != LawKind::stable)
      throw config_error("cf evaluates stable laws");
    if (j.contains("points")) {
      c.points = get_as<std::vector<std::vector<double>>>(j["points"], "points");
    }
    if (j.contains("lattice")) {
      const auto &lat = j["lattice"];
      if (!lat.is_array() || lat.size() != d)
        throw config_error("'lattice' needs one [lo, hi, count] per coordinate");
      std::vector<std::vector<double>> axes;
      for (std::size_t a = 0; a < d; ++a)
        axes.push_back(lattice_axis(lat[a], "lattice"));
      // Last coordinate varies fastest.
      std::vector<std::size_t> idx(d, 0);
      bool done = false;
      while (!done) {
        std::vector<double> pt(d);
        for (std::size_t a = 0; a < d; ++a)
          pt[a] = axes[a][idx[a]];
        c.points.push_back(std::move(pt));
        done = true;
        for (std::size_t a = d; a-- > 0;) {
          if (++idx[a] < axes[a].size()) {
            done = false;
            break;
          }
          idx[a] = 0;
        }
      }
    }
    if (c.points.empty())
      throw config_error("config needs 'points' or 'lattice'");
    for (const auto &pt : c.points)
      if (pt.size() != d)
        throw config_error("query point has the wrong dimension");
    if (j.contains("marginal")) {
      const auto m = get_count(j["marginal"], "marginal");
      if (command != "cdf" || m == 0 || m > d)
        throw config_error("'marginal' must be a coordinate in 1..d for cdf");
      c.marginal = m - 1;
    }
    if (command == "cdf" && !c.marginal)
      for (const auto &pt : c.points)
        for (double v : pt)
          if (!(v > 0.0))
            throw config_error("joint CDF points must be positive");
  }

  if (command == "check") {
    if (!j.contains("suite"))
      throw config_error("check needs a 'suite'");
    c.suite = get_as<std::string>(j["suite"], "suite");
    if (j.contains("reference")) {
      c.reference = j["reference"];
      if (!c.reference.is_object())
        throw config_error("'reference' must be an object");
    }
  }
  c.effective = std::move(j);
  return c;
}

std::vector<CheckResult> run_suite(const RunConfig &c) {
  if (c.suite == "ex1")
    return suite_ex1(c);
  if (c.suite == "ex2")
    return suite_ex2(c);
  if (c.suite == "ex3")
    return suite_ex3(c);
  if (c.suite == "max_stability")
    return suite_max_stability(c);
  if (c.suite == "sum_stability")
    return suite_sum_stability(c);
  if (c.suite == "ecf")
    return suite_ecf(c);
  if (c.suite == "tau")
    return suite_tau(c);
  if (c.suite == "truncation")
    return suite_truncation(c);
  throw config_error("unknown suite '" + c.suite + "'");
}

int execute(const RunConfig &c, std::ostream &out, std::ostream &err) {
  try {
    if (c.kind == LawKind::stable && c.alpha != 1.0 &&
        std::any_of(c.delta.begin(), c.delta.end(),
                    [](double v) { return v != 0.0; }))
      err << "warning: nonzero delta with alpha != 1; the law is not strictly "
             "stable\n";
    std::string text;
    bool pass = true;
    if (c.command == "sample")
      text = cmd_sample(c);
    else if (c.command == "cdf")
      text = cmd_cdf(c);
    else if (c.command == "cf")
      text = cmd_cf(c);
    else if (c.command == "hist")
      text = cmd_hist(c);
    else if (c.command == "check")
      text = cmd_check(c, err, pass);
    else
      throw config_error("unknown command '" + c.command + "'");
    write_output(c, text, out);
    return pass ? ok : check_failed;
  } catch (const config_error &e) {
    err << "config error: " << e.what() << '\n';
    return config_failure;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return runtime_failure;
  }
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Sample and validate stable and max-stable laws"};
  app.require_subcommand(1);
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n, threads;
  std::optional<std::string> output;

  const std::pair<const char *, const char *> commands[] = {
      {"sample", "Write draws as CSV"},
      {"cdf", "Evaluate max-stable CDFs at query points"},
      {"cf", "Evaluate stable characteristic functions at query points"},
      {"check", "Run a validation suite"},
      {"hist", "Write a 2-D histogram grid"}};
  for (const auto &[name, help] : commands) {
    auto *sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "Run configuration (JSON)")
        ->required();
    sub->add_option("--seed", seed, "Master seed");
    sub->add_option("--n", n, "Number of draws");
    sub->add_option("--threads", threads, "Worker threads (default 1)");
    sub->add_option("--output", output, "Output file (default stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError &e) {
    err << e.what() << '\n';
    return config_failure;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  RunConfig config;
  try {
    std::ifstream file(config_path);
    if (!file)
      throw config_error("cannot read config '" + config_path + "'");
    json j;
    try {
      j = json::parse(file);
    } catch (const json::exception &e) {
      throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    config = parse_config(command, std::move(j), {seed, n, threads, output});
  } catch (const config_error &e) {
    err << "config error: " << e.what() << '\n';
    return config_failure;
  }
  return execute(config, out, err);
}

} // namespace lepage::cli
