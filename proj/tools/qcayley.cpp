// qcayley: command-line front end.  Every subcommand prints one record per
// line (JSON objects or CSV rows with a fixed header) so output can be diffed
// and piped.  Exit codes: 0 ok, 1 verification failure, 2 usage or gate error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qcayley/acceptance.hpp"
#include "qcayley/qcayley.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace qcayley;

enum class Format { json, csv };
enum class Mode { exact, floating };

struct RunConfig {
  std::string spec_text = "Ao(3)";
  int radius = 4;
  double tolerance = 1e-30;
  Mode mode = Mode::exact;
  Format format = Format::json;
  std::string output;
  std::uint64_t seed = acceptance::Options{}.seed;
};

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Emitter {
 public:
  Emitter(const RunConfig& cfg, std::string cmd) : cfg_(cfg), cmd_(std::move(cmd)) {
    if (!cfg.output.empty()) {
      file_ = std::make_unique<std::ofstream>(cfg.output, std::ios::binary);
      if (!*file_) throw DomainError("cannot open output file " + cfg.output);
    }
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }
  Format format() const { return cfg_.format; }

  void header(const std::string& line) {
    if (cfg_.format == Format::csv) out() << line << "\n";
  }
  void row(const std::string& line) { out() << line << "\n"; }
  void object(const json& j) { out() << j.dump() << "\n"; }

  /// {cmd, spec, params, quantity, value_lo, value_hi, tail, anchor}, plus extras.
  void record(const json& params, const std::string& quantity, const Interval& value, const std::optional<Rational>& tail,
              const std::string& anchor, const json& extra = json::object()) {
    json j;
    j["cmd"] = cmd_;
    j["spec"] = cfg_.spec_text;
    j["params"] = params;
    j["quantity"] = quantity;
    j["value_lo"] = value.lo_double();
    j["value_hi"] = value.hi_double();
    if (value.is_point()) {
      j["value_lo"] = value.lo().get_d();
      j["value_hi"] = value.hi().get_d();
      j["exact"] = value.lo().get_str();
    }
    j["tail"] = tail ? json(tail->get_d()) : json(nullptr);
    j["anchor"] = anchor;
    for (const auto& [k, v] : extra.items()) j[k] = v;
    object(j);
  }

 private:
  const RunConfig& cfg_;
  std::string cmd_;
  std::unique_ptr<std::ofstream> file_;
};

json certificate_json(const TailCertificate& c) {
  json j;
  j["ratio"] = c.ratio.get_d();
  j["ratio_exact"] = c.ratio.get_str();
  j["crossover"] = c.crossover;
  return j;
}

Rational tolerance_rational(const RunConfig& cfg) { return Rational(cfg.tolerance); }

/// "3/2", "2", or "dimq:3" (the growth parameter of dimension 3).
Interval parse_a(const std::string& text, const RunConfig& cfg) {
  const std::string prefix = "dimq:";
  if (text.rfind(prefix, 0) == 0) return a_param(parse_rational(text.substr(prefix.size())), tolerance_rational(cfg)).a;
  return Interval(parse_rational(text));
}

// ---------------------------------------------------------------------------

void cmd_dims(const RunConfig& cfg, int count) {
  if (count < 1) throw DomainError("--count must be >= 1");
  const QuantumGroupSpec spec = parse_spec(cfg.spec_text);
  const InfiniteGeodesic geo = InfiniteGeodesic::standard(spec);
  const std::vector<Rational> m = geo.dims(static_cast<std::size_t>(count));
  std::vector<double> mf;
  if (cfg.mode == Mode::floating) {
    // Same recursion in double precision along the geodesic.
    const auto& f = spec.factors();
    if (f.size() == 1 && f[0].kind == FactorKind::orthogonal) {
      const double d = f[0].dimq.get_d();
      mf = {1.0, d};
      while (mf.size() < m.size()) mf.push_back(d * mf[mf.size() - 1] - mf[mf.size() - 2]);
      mf.resize(m.size());
    } else {
      for (const auto& q : m) mf.push_back(q.get_d());
    }
  }
  Emitter em(cfg, "dims");
  if (em.format() == Format::csv) {
    std::ostringstream h, r;
    for (std::size_t k = 0; k < m.size(); ++k) {
      h << (k ? "," : "") << "m" << k;
      r << (k ? "," : "");
      if (cfg.mode == Mode::floating) r << acceptance::detail::fmt(mf[k], 17);
      else r << m[k].get_str();
    }
    em.header(h.str());
    em.row(r.str());
    return;
  }
  for (std::size_t k = 0; k < m.size(); ++k) {
    json params;
    params["k"] = k;
    params["vertex"] = to_string(geo.vertex(k));
    const Interval v = cfg.mode == Mode::floating ? Interval(Rational(mf[k])) : Interval(m[k]);
    em.record(params, "quantum_dimension", v, std::nullopt, "m_{k+1} = m_1 m_k - m_{k-1}");
  }
}

void cmd_tree(const RunConfig& cfg, std::size_t cap) {
  TreeOptions opt;
  opt.vertex_cap = cap;
  const CayleyTree tree = build_tree(parse_spec(cfg.spec_text), cfg.radius, opt);
  Emitter em(cfg, "tree");
  if (em.format() == Format::csv) {
    em.header("kind,id,word,length,dimq,src,dst,dir,ascending");
    for (VertexId v = 0; v < tree.vertex_count(); ++v) {
      em.row("vertex," + std::to_string(v) + "," + to_string(tree.word(v)) + "," + std::to_string(tree.length(v)) + "," +
             tree.dim(v).get_str() + ",,,,");
    }
    for (EdgeId e = 0; e < tree.edge_count(); ++e) {
      const Edge& ed = tree.edge(e);
      em.row("edge," + std::to_string(e) + ",,,," + std::to_string(ed.source) + "," + std::to_string(ed.target) + "," +
             to_string(tree.spec(), tree.spec().direction(ed.direction)) + "," + (ed.ascending ? "true" : "false"));
    }
    return;
  }
  for (VertexId v = 0; v < tree.vertex_count(); ++v) {
    json j;
    j["id"] = v;
    j["word"] = to_string(tree.word(v));
    j["length"] = tree.length(v);
    j["dimq"] = tree.dim(v).get_str();
    em.object(j);
  }
  for (EdgeId e = 0; e < tree.edge_count(); ++e) {
    const Edge& ed = tree.edge(e);
    json j;
    j["src"] = ed.source;
    j["dst"] = ed.target;
    j["dir"] = to_string(tree.spec(), tree.spec().direction(ed.direction));
    j["ascending"] = ed.ascending;
    em.object(j);
  }
}

void cmd_paths(const RunConfig& cfg, bool classical) {
  const CayleyTree tree = build_tree(parse_spec(cfg.spec_text), cfg.radius);
  const HilbertianTree h(tree, classical ? Weighting::classical : Weighting::quantum);
  Emitter em(cfg, "paths");
  em.header("id,word,length,path_norm_sq");
  const std::string anchor = classical ? "classical path from e to g: norm^2 = 2 length" : "path preimage zeta_alpha, E2 zeta_alpha = xt_alpha/m_alpha - xi_0";
  for (VertexId v = 0; v < tree.vertex_count(); ++v) {
    Interval value;
    if (cfg.mode == Mode::floating) {
      double s = 0;
      for (const auto& [e, c] : path_vector<double>(h, v)) s += c * c;
      value = Interval(Rational(s));
    } else {
      value = Interval(path_norm_sq(h, v));
    }
    if (em.format() == Format::csv) {
      em.row(std::to_string(v) + "," + to_string(tree.word(v)) + "," + std::to_string(tree.length(v)) + "," +
             (cfg.mode == Mode::floating ? acceptance::detail::fmt(value.lo().get_d(), 17) : value.lo().get_str()));
      continue;
    }
    json params;
    params["vertex"] = to_string(tree.word(v));
    params["length"] = tree.length(v);
    params["weighting"] = classical ? "classical" : "quantum";
    em.record(params, "path_norm_sq", value, std::nullopt, anchor);
  }
}

void cmd_fixed_vector(const RunConfig& cfg) {
  const QuantumGroupSpec spec = parse_spec(cfg.spec_text);
  const InfiniteGeodesic geo = InfiniteGeodesic::standard(spec);
  const CayleyTree ray = build_geodesic_tree(geo, cfg.radius);
  const HilbertianTree h(ray);
  const FixedVectorResult r = fixed_vector(h, geo, cfg.radius);
  Emitter em(cfg, "fixed-vector");
  em.header("radius,norm_sq_lo,norm_sq_hi,tail_bound,ratio,crossover,residual_minus_sq,residual_plus_sq");
  if (em.format() == Format::csv) {
    const Interval n = r.norm_sq();
    std::ostringstream row;
    row << r.radius << "," << acceptance::detail::fmt(n.lo_double(), 17) << "," << acceptance::detail::fmt(n.hi_double(), 17)
        << "," << acceptance::detail::fmt(r.tail_bound.get_d(), 17) << "," << r.certificate.ratio.get_d() << ","
        << r.certificate.crossover << "," << r.residual_minus_sq.get_str() << "," << r.residual_plus_sq.get_str();
    em.row(row.str());
    return;
  }
  json params;
  params["radius"] = r.radius;
  params["geodesic_end"] = to_string(geo.vertex(static_cast<std::size_t>(r.radius)));
  json extra;
  extra["radius"] = r.radius;
  extra["tail_bound"] = r.tail_bound.get_d();
  extra["certificate"] = certificate_json(r.certificate);
  em.record(params, "fixed_vector_norm_sq", r.norm_sq(), r.tail_bound, "zeta_inf = -E2^{-1}(xi_0): fixed vector of the path cocycle", extra);
  em.record(params, "residual_norm_sq(E2 zeta + xi_0)", Interval(r.residual_minus_sq), std::nullopt,
            "E2 zeta_alpha = xt_alpha/m_alpha - xi_0 (sign: E2 zeta_inf = -xi_0)");
  em.record(params, "residual_norm_sq(E2 zeta - xi_0)", Interval(r.residual_plus_sq), std::nullopt,
            "E2 zeta_alpha = xt_alpha/m_alpha - xi_0 (sign: E2 zeta_inf = -xi_0)");
}

void cmd_gram(const RunConfig& cfg, int kmax) {
  if (kmax < 0) throw DomainError("--kmax must be >= 0");
  const QuantumGroupSpec spec = parse_spec(cfg.spec_text);
  const CayleyTree tree = build_tree(spec, 1);
  const HilbertianTree h(tree);
  const int R = std::max(cfg.radius, kmax);
  Emitter em(cfg, "gram");
  em.header("k,l,gram_lo,gram_hi");
  for (int k = 0; k <= kmax; ++k) {
    for (int l = 0; l <= kmax; ++l) {
      const Interval g = gram(h, k, l, R);
      if (em.format() == Format::csv) {
        em.row(std::to_string(k) + "," + std::to_string(l) + "," + acceptance::detail::fmt(g.lo_double(), 17) + "," +
               acceptance::detail::fmt(g.hi_double(), 17));
        continue;
      }
      json params;
      params["k"] = k;
      params["l"] = l;
      params["radius"] = R;
      em.record(params, "gram_entry", g, g.width(), "(E2^{-1} xt_k | E2^{-1} xt_l) <= D a^{-|k-l|}");
    }
  }
  if (em.format() == Format::json) {
    json params;
    params["kmax"] = kmax;
    params["radius"] = R;
    const Rational D = gram_bound(h, kmax, R);
    em.record(params, "gram_bound_D", Interval(D), std::nullopt, "(E2^{-1} xt_k | E2^{-1} xt_l) <= D a^{-|k-l|}");
  }
}

void cmd_growth(const RunConfig& cfg, int n_max) {
  if (n_max < 1) throw DomainError("--n-max must be >= 1");
  const QuantumGroupSpec spec = parse_spec(cfg.spec_text);
  if (spec.factors().size() != 1 || spec.factors()[0].kind != FactorKind::unitary) {
    throw DomainError("growth: needs a single A_u factor, got " + cfg.spec_text);
  }
  const Rational& d = spec.factors()[0].dimq;
  if (d.get_den() != 1 || !d.get_num().fits_sint_p()) throw DomainError("growth: the tensor model needs an integer N");
  const int N = static_cast<int>(d.get_num().get_si());
  std::vector<Rational> c;
  for (int n = 1; n <= n_max; ++n) c.push_back(cn_lower(n, N));
  // Exact least-squares slope of cn_lower against n.
  std::optional<Rational> slope;
  if (n_max >= 2) {
    Rational nbar = make_rational(n_max + 1, 2), cbar = 0;
    for (const auto& v : c) cbar += v;
    cbar /= n_max;
    Rational sxy = 0, sxx = 0;
    for (int n = 1; n <= n_max; ++n) {
      const Rational dx = n - nbar;
      sxy += dx * (c[static_cast<std::size_t>(n - 1)] - cbar);
      sxx += dx * dx;
    }
    slope = sxy / sxx;
  }
  Emitter em(cfg, "growth");
  em.header("n,cn_lower,first_difference,fitted_slope");
  for (int n = 1; n <= n_max; ++n) {
    const Rational& v = c[static_cast<std::size_t>(n - 1)];
    std::optional<Rational> diff;
    if (n >= 2) diff = v - c[static_cast<std::size_t>(n - 2)];
    if (em.format() == Format::csv) {
      em.row(std::to_string(n) + "," + v.get_str() + "," + (diff ? diff->get_str() : "") + "," + (slope ? slope->get_str() : ""));
      continue;
    }
    json params;
    params["n"] = n;
    params["N"] = N;
    json extra;
    extra["exact"] = v.get_str();
    extra["first_difference"] = diff ? json(diff->get_str()) : json(nullptr);
    extra["fitted_slope"] = slope ? json(slope->get_str()) : json(nullptr);
    em.record(params, "cn_lower", Interval(v), std::nullopt, "||C_n(e_i)|| bounded below by C sqrt(n+1)", extra);
  }
}

void emit_series(Emitter& em, const json& params, const std::string& quantity, const SeriesResult& s,
                 const std::string& anchor) {
  if (em.format() == Format::csv) {
    em.row(acceptance::detail::fmt(s.partial.get_d(), 17) + "," + acceptance::detail::fmt(s.tail_bound.get_d(), 17) + "," +
           std::to_string(s.terms_used) + "," + acceptance::detail::fmt(s.certificate.ratio.get_d(), 17) + "," +
           std::to_string(s.certificate.crossover));
    return;
  }
  json extra;
  extra["terms_used"] = s.terms_used;
  extra["certificate"] = certificate_json(s.certificate);
  em.record(params, quantity, s.enclosure(), s.tail_bound, anchor, extra);
}

void cmd_rd_norm(const RunConfig& cfg, const std::string& s_text, const std::string& r_text, const std::string& dimq_text) {
  const Rational s = parse_rational(s_text);
  const Rational r = parse_rational(r_text);
  Rational dimq;
  if (!dimq_text.empty()) {
    dimq = parse_rational(dimq_text);
  } else {
    const QuantumGroupSpec spec = parse_spec(cfg.spec_text);
    if (spec.factors().size() != 1 || spec.factors()[0].kind != FactorKind::orthogonal) {
      throw DomainError("rd-norm: needs a single A_o factor or --dimq");
    }
    dimq = spec.factors()[0].dimq;
  }
  Emitter em(cfg, "rd-norm");
  em.header("partial,tail_bound,terms_used,ratio,crossover");
  json params;
  params["dimq"] = dimq.get_str();
  params["s"] = s.get_str();
  params["r"] = r.get_str();
  params["radius"] = cfg.radius;
  if (r == 1) {
    emit_series(em, params, "rd_norm_sq", rd_norm_sq(dimq, s, cfg.radius), "(2/m_1) sum (i+2)^{2s}/(m_i m_{i+1})");
  } else {
    emit_series(em, params, "nonuni_norm_sq", nonuni_norm_sq(s, r, dimq, cfg.radius),
                "(2/m_1) sum r^{2i+2}(i+2)^{2s}/(m_i m_{i+1}), Tr(F) = a + 1/a");
  }
}

void cmd_schur(const RunConfig& cfg, const std::string& a_text, int size) {
  if (size < 1) throw DomainError("--size must be >= 1");
  const Interval a = parse_a(a_text, cfg);
  const Rational schur = toeplitz_schur_bound(a);
  const Interval tn = truncated_toeplitz_norm(a, static_cast<std::size_t>(size));
  Emitter em(cfg, "schur");
  em.header("size,schur_bound,truncated_norm_lo,truncated_norm_hi");
  if (em.format() == Format::csv) {
    em.row(std::to_string(size) + "," + acceptance::detail::fmt(schur.get_d(), 17) + "," +
           acceptance::detail::fmt(tn.lo_double(), 17) + "," + acceptance::detail::fmt(tn.hi_double(), 17));
    return;
  }
  json params;
  params["a"] = a_text;
  params["size"] = size;
  em.record(params, "toeplitz_schur_bound", Interval(schur), std::nullopt, "(a^{-|k-l|}) bounded: (1+1/a)/(1-1/a)");
  em.record(params, "truncated_toeplitz_norm", tn, tn.width(), "(a^{-|k-l|}) bounded: (1+1/a)/(1-1/a)");
}

void cmd_chain_check(const RunConfig& cfg, const std::string& a_text, const std::string& x_text, int count,
                     const std::string& slack_text) {
  const Interval a = parse_a(a_text, cfg);
  const Rational slack = parse_rational(slack_text);
  std::vector<std::vector<Rational>> inputs;
  if (!x_text.empty()) {
    std::vector<Rational> x;
    std::stringstream ss(x_text);
    std::string item;
    while (std::getline(ss, item, ',')) x.push_back(parse_rational(item));
    inputs.push_back(std::move(x));
  } else {
    std::mt19937_64 rng(cfg.seed);
    for (int t = 0; t < count; ++t) {
      std::vector<Rational> x(1 + rng() % 40);
      for (auto& v : x) {
        if (rng() % 3 == 0) continue;
        v = make_rational(static_cast<long>(rng() % 1001), static_cast<long>(1 + rng() % 97));
      }
      inputs.push_back(std::move(x));
    }
  }
  Emitter em(cfg, "chain-check");
  em.header("index,length,ok,max_pointwise_ratio,aggregate_ratio,failure");
  std::size_t failures = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const ChainCheckResult c = orientation_chain_check(a, inputs[i], slack);
    if (!c.ok) ++failures;
    if (em.format() == Format::csv) {
      em.row(std::to_string(i) + "," + std::to_string(inputs[i].size()) + "," + (c.ok ? "true" : "false") + "," +
             acceptance::detail::fmt(c.max_pointwise_ratio, 10) + "," + acceptance::detail::fmt(c.aggregate_ratio, 10) + "," +
             c.failure.value_or(""));
      continue;
    }
    json params;
    params["a"] = a_text;
    params["index"] = i;
    params["length"] = inputs[i].size();
    params["slack"] = slack.get_str();
    params["seed"] = cfg.seed;
    json extra;
    extra["ok"] = c.ok;
    extra["aggregate_ratio"] = c.aggregate_ratio;
    extra["failure"] = c.failure ? json(*c.failure) : json(nullptr);
    em.record(params, "max_pointwise_ratio", Interval(Rational(c.max_pointwise_ratio)), std::nullopt,
              "sum_{1<=k<=j} a^{k-j} Cauchy-Schwarz chain", extra);
  }
  if (failures != 0) throw VerificationFailure(std::to_string(failures) + " of " + std::to_string(inputs.size()) + " inputs violate the chain inequality");
}

void cmd_verify(const RunConfig& cfg, const std::string& profile, const std::vector<int>& only) {
  acceptance::Options opt;
  opt.profile = profile == "quick" ? acceptance::Profile::quick : acceptance::Profile::full;
  opt.seed = cfg.seed;
  std::vector<acceptance::CriterionResult> results;
  if (only.empty()) {
    results = acceptance::run_all(opt);
  } else {
    acceptance::detail::Context ctx{opt, {}};
    for (int id : only) results.push_back(acceptance::run_one(id, ctx));
  }
  Emitter em(cfg, "verify");
  em.header("id,name,passed,detail,anchor");
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.passed;
    if (em.format() == Format::csv) {
      auto quote = [](std::string s) {
        std::string out = "\"";
        for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return out + "\"";
      };
      em.row(std::to_string(r.id) + "," + quote(r.name) + "," + (r.passed ? "true" : "false") + "," + quote(r.detail) + "," +
             quote(r.anchor));
      continue;
    }
    json j;
    j["cmd"] = "verify";
    j["profile"] = profile;
    j["seed"] = cfg.seed;
    j["id"] = r.id;
    j["name"] = r.name;
    j["passed"] = r.passed;
    j["detail"] = r.detail;
    j["anchor"] = r.anchor;
    em.object(j);
  }
  if (!ok) {
    for (const auto& r : results) {
      if (!r.passed) std::cerr << "FAILED [" << r.id << "] " << r.name << " (" << r.anchor << ")\n";
    }
    throw VerificationFailure("acceptance suite failed");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Path cocycles on quantum Cayley trees, with exact and certified norm computations"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML/INI file; command-line flags take precedence");

  RunConfig cfg;
  std::string format = "json";
  std::string mode = "exact";
  std::vector<std::pair<CLI::App*, int>> radius_defaults;
  auto add_common = [&](CLI::App* sub, int default_radius) {
    radius_defaults.emplace_back(sub, default_radius);
    sub->add_option("--spec", cfg.spec_text, "Quantum group, e.g. \"Ao(3)\" or \"Ao(3)*Au(7/2)\"")->capture_default_str();
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_option("--mode", mode, "Arithmetic: exact (rational/interval) or float (double)")
        ->check(CLI::IsMember({"exact", "float"}))
        ->capture_default_str();
    sub->add_option("--output,-o", cfg.output, "Write to this file instead of stdout");
    sub->add_option("--tolerance", cfg.tolerance, "Enclosure width for the growth parameter a")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Seed for randomized property checks")->capture_default_str();
  };

  int count = 6;
  auto* dims = app.add_subcommand("dims", "Quantum dimensions along the standard geodesic");
  add_common(dims, 4);
  dims->add_option("--count", count, "Number of dimensions m_0 .. m_{count-1}")->capture_default_str();

  std::size_t cap = TreeOptions{}.vertex_cap;
  auto* tree = app.add_subcommand("tree", "Dump the Cayley tree ball as vertex and edge records");
  add_common(tree, 4);
  tree->add_option("--radius", cfg.radius, "Ball radius")->check(CLI::NonNegativeNumber);
  tree->add_option("--vertex-cap", cap, "Refuse trees with more vertices")->capture_default_str();

  bool classical = false;
  auto* paths = app.add_subcommand("paths", "Squared norms of the path vectors zeta_alpha over a ball");
  add_common(paths, 4);
  paths->add_option("--radius", cfg.radius, "Ball radius")->check(CLI::NonNegativeNumber);
  paths->add_flag("--classical", classical, "Use weight 1 everywhere (the combinatorial tree)");

  auto* fixed = app.add_subcommand("fixed-vector", "Truncated fixed vector zeta_inf with certified tail");
  add_common(fixed, 40);
  fixed->add_option("--radius", cfg.radius, "Truncation radius R")->check(CLI::NonNegativeNumber);

  int kmax = 5;
  auto* gram_cmd = app.add_subcommand("gram", "Gram matrix of E2^{-1}(xt_k) on the A_o half-line");
  add_common(gram_cmd, 40);
  gram_cmd->add_option("--kmax", kmax, "Largest index k, l")->capture_default_str();
  gram_cmd->add_option("--radius", cfg.radius, "Terms summed before the certified tail")->check(CLI::NonNegativeNumber);

  int n_max = 8;
  auto* growth = app.add_subcommand("growth", "Lower bounds for ||C_n||^2 in the A_u(I_N) tensor model");
  add_common(growth, 0);
  growth->add_option("--n-max", n_max, "Largest tensor power n")->capture_default_str();

  std::string s_text = "3", r_text = "1", dimq_text;
  auto* rd = app.add_subcommand("rd-norm", "Sobolev-type norm series of the fixed vector, with tail certificate");
  add_common(rd, 60);
  rd->add_option("--radius", cfg.radius, "Last summed index R")->check(CLI::NonNegativeNumber);
  rd->add_option("--s", s_text, "Sobolev exponent (a multiple of 1/2)")->capture_default_str();
  rd->add_option("--r", r_text, "Weight r (largest eigenvalue of F); 1 in the unimodular case")->capture_default_str();
  rd->add_option("--dimq", dimq_text, "Quantum dimension (overrides --spec)");

  std::string a_text = "2";
  int size = 50;
  auto* schur = app.add_subcommand("schur", "Schur bound and certified truncated norm of (a^{-|k-l|})");
  add_common(schur, 0);
  schur->add_option("--a", a_text, "a > 1 as a rational, or dimq:<d> for the root of a + 1/a = d")->capture_default_str();
  schur->add_option("--size", size, "Truncation size")->capture_default_str();

  std::string x_text, slack_text = "1";
  int vectors = 1000;
  auto* chain = app.add_subcommand("chain-check", "Check the geometric Cauchy-Schwarz chain on nonnegative inputs");
  add_common(chain, 0);
  chain->add_option("--a", a_text, "a > 1 as a rational, or dimq:<d>")->capture_default_str();
  chain->add_option("--x", x_text, "Comma-separated input; random inputs from --seed otherwise");
  chain->add_option("--count", vectors, "Number of random inputs")->capture_default_str();
  chain->add_option("--slack", slack_text, "Multiply the right-hand constants by this factor")->capture_default_str();

  std::string profile = "full";
  std::vector<int> only;
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  add_common(verify, 0);
  verify->add_option("--profile", profile, "quick or full")->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
  verify->add_option("--only", only, "Run only these criteria (1-10)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  for (const auto& [sub, r] : radius_defaults) {
    if (sub->parsed() && (sub->get_option_no_throw("--radius") == nullptr || sub->count("--radius") == 0)) cfg.radius = r;
  }
  cfg.format = format == "csv" ? Format::csv : Format::json;
  cfg.mode = mode == "float" ? Mode::floating : Mode::exact;

  try {
    if (*dims) cmd_dims(cfg, count);
    else if (*tree) cmd_tree(cfg, cap);
    else if (*paths) cmd_paths(cfg, classical);
    else if (*fixed) cmd_fixed_vector(cfg);
    else if (*gram_cmd) cmd_gram(cfg, kmax);
    else if (*growth) cmd_growth(cfg, n_max);
    else if (*rd) cmd_rd_norm(cfg, s_text, r_text, dimq_text);
    else if (*schur) cmd_schur(cfg, a_text, size);
    else if (*chain) cmd_chain_check(cfg, a_text, x_text, vectors, slack_text);
    else if (*verify) cmd_verify(cfg, profile, only);
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const GateError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
