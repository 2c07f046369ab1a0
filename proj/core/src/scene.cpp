#include "bbkit/scene.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <set>
#include <sstream>

#include "json.hpp"

#include "bbkit/blowup.hpp"
#include "bbkit/parallel.hpp"
#include "bbkit/projective.hpp"
#include "bbkit/rng.hpp"
#include "bbkit/verify.hpp"

namespace bbkit::scene {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Encoders. Complex numbers are [re, im] pairs; exact values are the
// grammar's text form, so every machine-readable field re-parses.

json enc(const std::complex<double>& c) { return json::array({c.real(), c.imag()}); }

json enc(const PointC& z) {
  json a = json::array();
  for (const auto& c : z) a.push_back(enc(c));
  return a;
}

json enc(const WeightVector& w) { return json(w.l); }

std::string fmt_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string fmt_ints(const std::vector<int>& v) {
  if (v.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

std::string fmt_longs(const std::vector<long long>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

// Left-aligned column layout; enough structure for every table this tool
// prints.
struct TextTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void render(std::ostringstream& os) const {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : rows)
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    auto line = [&](const std::vector<std::string>& cells) {
      os << "  ";
      for (std::size_t c = 0; c < cells.size(); ++c) {
        os << std::left << std::setw(static_cast<int>(width[c])) << cells[c];
        if (c + 1 < cells.size()) os << "  ";
      }
      os << "\n";
    };
    line(header);
    for (const auto& row : rows) line(row);
  }
};

// ---------------------------------------------------------------------------
// Scene loading

std::string strip_position_suffix(const std::string& what, std::size_t position) {
  std::string suffix = " (at position " + std::to_string(position) + ")";
  if (what.size() >= suffix.size() &&
      what.compare(what.size() - suffix.size(), suffix.size(), suffix) == 0)
    return what.substr(0, what.size() - suffix.size());
  return what;
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> known) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok) throw ShapeError("scene field '" + where + item.key() + "': unknown field");
  }
}

double require_number(const json& obj, const std::string& where, const char* key,
                      double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number())
    throw ShapeError("scene field '" + where + key + "': expected a number");
  return obj[key].get<double>();
}

std::complex<double> decode_complex(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ShapeError("scene field '" + where + "': expected an [re, im] pair");
  return {v[0].get<double>(), v[1].get<double>()};
}

SceneFlow decode_flow(const json& f, int n) {
  if (!f.is_object()) throw ShapeError("scene field 'flow': expected an object");
  reject_unknown_keys(f, "flow.", {"seeds", "config"});
  SceneFlow out;
  if (!f.contains("seeds")) throw ShapeError("scene field 'flow.seeds': required");
  const json& seeds = f["seeds"];
  if (seeds.is_string()) {
    // "random:<count>" or "random:<count>:<rng-seed>"
    const std::string spec = seeds.get<std::string>();
    const std::string prefix = "random:";
    if (spec.rfind(prefix, 0) != 0)
      throw ShapeError("scene field 'flow.seeds': string form must be 'random:<count>[:<rng-seed>]'");
    std::string rest = spec.substr(prefix.size());
    std::size_t colon = rest.find(':');
    try {
      out.random_count = std::stoi(rest.substr(0, colon));
      if (colon != std::string::npos)
        out.random_seed = std::stoull(rest.substr(colon + 1));
    } catch (const std::exception&) {
      throw ShapeError("scene field 'flow.seeds': malformed '" + spec + "'");
    }
    if (*out.random_count < 1)
      throw DomainError("scene field 'flow.seeds': count must be >= 1");
  } else if (seeds.is_array()) {
    if (seeds.empty()) throw ShapeError("scene field 'flow.seeds': empty seed list");
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const json& pt = seeds[i];
      std::string where = "flow.seeds[" + std::to_string(i) + "]";
      if (!pt.is_array() || static_cast<int>(pt.size()) != n)
        throw ShapeError("scene field '" + where + "': expected " + std::to_string(n) +
                         " coordinates");
      PointC z;
      for (std::size_t k = 0; k < pt.size(); ++k)
        z.push_back(decode_complex(pt[k], where + "[" + std::to_string(k) + "]"));
      out.explicit_seeds.push_back(std::move(z));
    }
  } else {
    throw ShapeError("scene field 'flow.seeds': expected a list of points or a random spec");
  }
  if (f.contains("config")) {
    const json& c = f["config"];
    if (!c.is_object()) throw ShapeError("scene field 'flow.config': expected an object");
    reject_unknown_keys(c, "flow.config.",
                        {"dt", "t_max", "tol_converge", "tol_diverge", "direction"});
    out.config.dt = require_number(c, "flow.config.", "dt", out.config.dt);
    out.config.t_max = require_number(c, "flow.config.", "t_max", out.config.t_max);
    out.config.tol_converge =
        require_number(c, "flow.config.", "tol_converge", out.config.tol_converge);
    out.config.tol_diverge =
        require_number(c, "flow.config.", "tol_diverge", out.config.tol_diverge);
    if (c.contains("direction")) {
      if (!c["direction"].is_string())
        throw ShapeError("scene field 'flow.config.direction': expected a string");
      std::string d = c["direction"].get<std::string>();
      if (d == "toward_plus")
        out.config.direction = FlowDirection::toward_plus;
      else if (d == "toward_minus")
        out.config.direction = FlowDirection::toward_minus;
      else
        throw DomainError("scene field 'flow.config.direction': '" + d +
                          "' is not toward_plus or toward_minus");
    }
  }
  return out;
}

ConeSpec decode_cone(const json& c) {
  if (!c.is_object()) throw ShapeError("scene field 'cone': expected an object");
  reject_unknown_keys(c, "cone.", {"axis", "theta"});
  if (!c.contains("axis") || !c["axis"].is_array() || c["axis"].empty())
    throw ShapeError("scene field 'cone.axis': expected a nonempty list of vectors");
  ConeSpec spec;
  for (std::size_t i = 0; i < c["axis"].size(); ++i) {
    const json& v = c["axis"][i];
    std::string where = "cone.axis[" + std::to_string(i) + "]";
    if (!v.is_array() || v.empty())
      throw ShapeError("scene field '" + where + "': expected a nonempty vector");
    std::vector<double> col;
    for (const json& x : v) {
      if (!x.is_number()) throw ShapeError("scene field '" + where + "': expected numbers");
      col.push_back(x.get<double>());
    }
    if (!spec.axis.empty() && col.size() != spec.axis.front().size())
      throw ShapeError("scene field '" + where + "': vector length differs from the first");
    spec.axis.push_back(std::move(col));
  }
  if (!c.contains("theta") || !c["theta"].is_number())
    throw ShapeError("scene field 'cone.theta': required number");
  spec.theta = c["theta"].get<double>();
  return spec;
}

}  // namespace

Scene load_scene(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open scene file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("scene JSON: " + std::string(e.what()),
                     e.byte > 0 ? e.byte - 1 : 0);
  }
  if (!doc.is_object()) throw ShapeError("scene: top level must be a JSON object");
  reject_unknown_keys(doc, "", {"n", "weights", "center_dim", "ideal", "flow", "cone", "verify"});

  Scene s;
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw ShapeError("scene field 'n': required integer");
  s.n = doc["n"].get<int>();
  if (s.n < 1) throw DomainError("scene field 'n': must be >= 1");

  if (!doc.contains("weights") || !doc["weights"].is_array())
    throw ShapeError("scene field 'weights': required integer list");
  if (static_cast<int>(doc["weights"].size()) != s.n)
    throw ShapeError("scene field 'weights': length " + std::to_string(doc["weights"].size()) +
                     " does not match n = " + std::to_string(s.n));
  for (const json& w : doc["weights"]) {
    if (!w.is_number_integer()) throw ShapeError("scene field 'weights': entries must be integers");
    s.weights.l.push_back(w.get<long long>());
  }

  if (doc.contains("center_dim")) {
    if (!doc["center_dim"].is_number_integer())
      throw ShapeError("scene field 'center_dim': expected an integer");
    s.center_dim = doc["center_dim"].get<int>();
    if (*s.center_dim < 0 || *s.center_dim >= s.n)
      throw DomainError("scene field 'center_dim': need 0 <= m < n");
  }

  if (doc.contains("ideal")) {
    if (!doc["ideal"].is_array()) throw ShapeError("scene field 'ideal': expected a string list");
    for (std::size_t i = 0; i < doc["ideal"].size(); ++i) {
      const json& g = doc["ideal"][i];
      std::string where = "ideal[" + std::to_string(i) + "]";
      if (!g.is_string()) throw ShapeError("scene field '" + where + "': expected a string");
      s.ideal_text.push_back(g.get<std::string>());
      try {
        s.ideal.push_back(parse_poly(s.ideal_text.back(), s.n));
      } catch (const ParseError& e) {
        throw ParseError(
            "scene field '" + where + "': " + strip_position_suffix(e.what(), e.position),
            e.position);
      }
    }
  }

  if (doc.contains("flow")) s.flow = decode_flow(doc["flow"], s.n);
  if (doc.contains("cone")) s.cone = decode_cone(doc["cone"]);
  if (doc.contains("verify")) {
    const json& v = doc["verify"];
    if (!v.is_object()) throw ShapeError("scene field 'verify': expected an object");
    reject_unknown_keys(v, "verify.", {"trial_scale"});
    s.verify_trial_scale = require_number(v, "verify.", "trial_scale", 1.0);
    if (!(s.verify_trial_scale > 0))
      throw DomainError("scene field 'verify.trial_scale': must be positive");
  }
  return s;
}

namespace {

// ---------------------------------------------------------------------------
// Seed expansion shared by `flow` and `decompose`, so cross-checking commands
// see identical points. --seed overrides a seed embedded in the scene.

std::vector<PointC> expand_seeds(const Scene& s, const RunFlags& flags, std::string& source) {
  const SceneFlow& f = *s.flow;
  if (!f.explicit_seeds.empty()) {
    source = "explicit";
    return f.explicit_seeds;
  }
  std::optional<std::uint64_t> seed = flags.seed ? flags.seed : f.random_seed;
  if (!seed)
    throw DomainError(
        "scene field 'flow.seeds': 'random:<count>' needs --seed or 'random:<count>:<rng-seed>'");
  int count = *f.random_count;
  source = "random:" + std::to_string(count) + ":" + std::to_string(*seed);
  Rng rng(*seed);
  std::vector<PointC> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    PointC z(static_cast<std::size_t>(s.n));
    for (auto& c : z) {
      if (rng.coin(0.25)) {
        c = {0.0, 0.0};
      } else {
        double r = rng.uniform(0.3, 1.5);
        double a = rng.uniform(0.0, 2.0 * M_PI);
        c = {r * std::cos(a), r * std::sin(a)};
      }
    }
    out.push_back(std::move(z));
  }
  return out;
}

// ---------------------------------------------------------------------------
// decompose

json cmd_decompose(const Scene& s, const RunFlags& flags, std::ostringstream& table) {
  json doc;
  doc["n"] = s.n;
  doc["weights"] = enc(s.weights);
  SignDecomposition sd = sign_decompose(s.weights);
  doc["sign_decomposition"] = {{"J0", sd.J0},          {"Jplus", sd.Jplus},
                               {"Jminus", sd.Jminus},  {"beta0", sd.beta0},
                               {"betaPlus", sd.betaPlus}, {"betaMinus", sd.betaMinus}};
  doc["fixed_locus"] = {{"indices", sd.J0}, {"dim", static_cast<int>(sd.J0.size())}};

  table << "decompose  n=" << s.n << "  weights=" << fmt_longs(s.weights.l) << "\n";
  table << "  J0=" << fmt_ints(sd.J0) << "  J+=" << fmt_ints(sd.Jplus)
        << "  J-=" << fmt_ints(sd.Jminus) << "  beta=(" << sd.beta0 << "," << sd.betaPlus << ","
        << sd.betaMinus << ")\n";
  table << "  affine fixed locus: indices " << fmt_ints(sd.J0) << ", dim " << sd.J0.size()
        << "\n";

  if (s.n >= 2) {
    json comps = json::array();
    TextTable t{{"weight", "dim", "indices"}, {}};
    for (const FixedComponent& c : fixed_components(s.weights)) {
      comps.push_back({{"indices", c.indices}, {"weight", c.weight}, {"dim", c.dim}});
      t.rows.push_back({std::to_string(c.weight), std::to_string(c.dim), fmt_ints(c.indices)});
    }
    doc["projective"] = {{"fixed_components", comps}};
    table << "projective fixed components\n";
    t.render(table);
  }

  if (s.flow) {
    std::string source;
    std::vector<PointC> seeds = expand_seeds(s, flags, source);
    doc["seed_source"] = source;
    json rows = json::array();
    TextTable t{{"idx", "plus", "minus", "fixed"}, {}};
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      StratumMembershipC m = classify_point(s.weights, seeds[i]);
      json row;
      row["index"] = i;
      row["point"] = enc(seeds[i]);
      row["plus_limit"] = m.plus_limit ? enc(*m.plus_limit) : json(nullptr);
      row["minus_limit"] = m.minus_limit ? enc(*m.minus_limit) : json(nullptr);
      row["fixed"] = m.is_fixed;
      rows.push_back(std::move(row));
      t.rows.push_back({std::to_string(i), m.plus_limit ? "yes" : "no",
                        m.minus_limit ? "yes" : "no", m.is_fixed ? "yes" : "no"});
    }
    doc["seeds"] = std::move(rows);
    table << "seed classification (" << source << ")\n";
    t.render(table);
  }
  return doc;
}

// ---------------------------------------------------------------------------
// blowup

json cmd_blowup(const Scene& s, const RunFlags& flags, std::ostringstream& table,
                int& exit_code) {
  if (!s.center_dim)
    throw DomainError("scene field 'center_dim': required by the blowup command");
  BlowupSpace b(s.n, *s.center_dim);
  if (flags.chart && !b.in_chart_range(*flags.chart))
    throw DomainError("--chart " + std::to_string(*flags.chart) + ": outside " +
                      std::to_string(b.m + 1) + ".." + std::to_string(b.n));
  json doc;
  doc["n"] = b.n;
  doc["m"] = b.m;
  doc["trivial"] = b.trivial();
  doc["weights"] = enc(s.weights);

  std::vector<int> J0 = sign_decompose(s.weights).J0;
  std::set<int> uni;
  json charts = json::array();
  TextTable t{{"chart", "weights", "fixed vanishing", "blowdown fixed"}, {}};
  for (int j : b.charts()) {
    WeightVector cw = chart_weights(s.weights, b, j);
    std::vector<int> van = fixed_locus_chart(s.weights, b, j);
    std::vector<int> down = blowdown_fixed_index_set(s.weights, b, j);
    uni.insert(down.begin(), down.end());
    if (flags.chart && *flags.chart != j) continue;
    charts.push_back({{"chart", j},
                      {"weights", enc(cw)},
                      {"fixed_vanishing", van},
                      {"blowdown_fixed_indices", down}});
    t.rows.push_back({std::to_string(j), fmt_longs(cw.l), fmt_ints(van), fmt_ints(down)});
  }
  doc["charts"] = std::move(charts);
  doc["J0"] = J0;
  std::vector<int> united(uni.begin(), uni.end());
  doc["blowdown_union"] = united;
  bool match = united == J0;
  doc["blowdown_union_equals_J0"] = match;
  if (!match) exit_code = 2;

  json comps = json::array();
  TextTable ct{{"weight", "dim", "proj indices", "base indices", "cone"}, {}};
  for (const BlowupFixedComponent& c : global_fixed_components(s.weights, b)) {
    comps.push_back({{"proj_indices", c.proj_indices},
                     {"weight", c.weight},
                     {"base_indices", c.base_indices},
                     {"cone", c.cone},
                     {"dim", c.dim}});
    ct.rows.push_back({std::to_string(c.weight), std::to_string(c.dim), fmt_ints(c.proj_indices),
                       fmt_ints(c.base_indices), c.cone ? "yes" : "no"});
  }
  doc["components"] = std::move(comps);

  table << "blowup  n=" << b.n << "  m=" << b.m << "  weights=" << fmt_longs(s.weights.l)
        << (b.trivial() ? "  (trivial)" : "") << "\n";
  t.render(table);
  table << "  blowdown union " << fmt_ints(united) << (match ? " == " : " != ") << "J0 "
        << fmt_ints(J0) << "\n";
  table << "fixed components\n";
  ct.render(table);
  return doc;
}

// ---------------------------------------------------------------------------
// transform

json cmd_transform(const Scene& s, const RunFlags& flags, std::ostringstream& table) {
  if (!s.center_dim)
    throw DomainError("scene field 'center_dim': required by the transform command");
  if (s.ideal.empty())
    throw DomainError("scene field 'ideal': required by the transform command");
  BlowupSpace b(s.n, *s.center_dim);
  if (flags.chart && !b.in_chart_range(*flags.chart))
    throw DomainError("--chart " + std::to_string(*flags.chart) + ": outside " +
                      std::to_string(b.m + 1) + ".." + std::to_string(b.n));

  // Weights ride along only when every generator is semi-invariant; the
  // transform itself never needs them.
  ModelSpace ms;
  bool weighted = true;
  try {
    ms = make_model_space(s.n, s.ideal, s.weights);
  } catch (const EquivarianceError&) {
    weighted = false;
    ms = make_model_space(s.n, s.ideal);
  }

  json doc;
  doc["n"] = s.n;
  doc["m"] = *s.center_dim;
  doc["weights"] = enc(s.weights);
  doc["generators"] = json(s.ideal_text);
  doc["equivariant"] = weighted;

  json charts = json::array();
  table << "transform  n=" << s.n << "  m=" << *s.center_dim << "\n";
  for (int j : b.charts()) {
    if (flags.chart && *flags.chart != j) continue;
    ChartTransform ct = strict_transform_chart(ms, b, j);
    WeightVector cw = chart_weights(s.weights, b, j);
    json rec;
    rec["chart"] = j;
    rec["E"] = "V(w" + std::to_string(j) + ")";
    rec["generator_wise"] = ct.generator_wise;
    json gens = json::array();
    TextTable t{{"k", "g", "weight"}, {}};
    for (std::size_t g = 0; g < ct.strict_generators.size(); ++g) {
      json one;
      one["k"] = ct.exceptional_exponents[g];
      one["g"] = to_string(ct.strict_generators[g], 'w');
      std::string wcell = "-";
      if (weighted) {
        auto wg = weight_of(ct.strict_generators[g], cw);
        one["g_weight"] = wg ? json(*wg) : json(nullptr);
        if (wg) wcell = std::to_string(*wg);
      }
      t.rows.push_back({std::to_string(ct.exceptional_exponents[g]),
                        to_string(ct.strict_generators[g], 'w'), wcell});
      gens.push_back(std::move(one));
    }
    if (ct.strict_generators.size() == 1) {
      rec["k"] = ct.exceptional_exponents[0];
      rec["g"] = to_string(ct.strict_generators[0], 'w');
    }
    rec["generators"] = std::move(gens);
    charts.push_back(std::move(rec));
    table << "chart " << j << "  E=V(w" << j << ")\n";
    t.render(table);
  }
  doc["charts"] = std::move(charts);
  return doc;
}

// ---------------------------------------------------------------------------
// indices

json cmd_indices(const Scene& s, std::ostringstream& table) {
  WeightVector tangent = s.weights;
  WeightVector obstruction;
  if (!s.ideal.empty()) {
    ModelSpace ms = make_model_space(s.n, s.ideal, s.weights);
    obstruction = validate_equivariance(ms).obstruction;
  }
  VirtualIndices vi = virtual_indices(tangent, obstruction);
  json doc;
  doc["n"] = s.n;
  doc["r"] = obstruction.n();
  doc["tangent"] = enc(tangent);
  doc["obstruction"] = enc(obstruction);
  doc["expdim"] = {{"zero", vi.expdim0}, {"plus", vi.expdimPlus}, {"minus", vi.expdimMinus}};
  doc["morse_bott"] = {{"nullity", vi.mbNullity}, {"coindex", vi.mbCoindex},
                       {"index", vi.mbIndex}};
  doc["identity_n_minus_r"] = static_cast<long long>(s.n) - obstruction.n();

  table << "indices  n=" << s.n << "  r=" << obstruction.n() << "\n";
  table << "  tangent     " << fmt_longs(tangent.l) << "\n";
  table << "  obstruction " << (obstruction.n() ? fmt_longs(obstruction.l) : std::string("-"))
        << "\n";
  table << "  expdim (0,+,-) = (" << vi.expdim0 << "," << vi.expdimPlus << "," << vi.expdimMinus
        << ")  sum " << vi.expdim0 + vi.expdimPlus + vi.expdimMinus << " = n-r "
        << s.n - obstruction.n() << "\n";
  table << "  morse-bott (nullity,coindex,index) = (" << vi.mbNullity << "," << vi.mbCoindex
        << "," << vi.mbIndex << ")\n";
  return doc;
}

// ---------------------------------------------------------------------------
// flow

json cmd_flow(const Scene& s, const RunFlags& flags, std::ostringstream& table,
              int& exit_code) {
  if (!s.flow) throw DomainError("scene field 'flow': required by the flow command");
  FlowConfig cfg = s.flow->config;
  if (flags.tol) cfg.tol_converge = *flags.tol;
  std::string source;
  std::vector<PointC> seeds = expand_seeds(s, flags, source);
  const bool plus = cfg.direction == FlowDirection::toward_plus;
  const double agree_tol = 1e-6;
  const double energy_tol = 1e-9;

  struct SeedRow {
    json rec;
    std::string verdict;
    bool monotone = true;
    int agrees = 1;  // 1 match, 0 mismatch, -1 indeterminate
  };
  std::vector<SeedRow> rows(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    FlowTrace tr = flow_numeric(s.weights, seeds[i], cfg);
    StratumMembershipC alg = classify_point(s.weights, seeds[i]);
    const auto& algebra_limit = plus ? alg.plus_limit : alg.minus_limit;

    bool monotone = true;
    if (plus) {
      for (std::size_t k = 1; k < tr.samples.size(); ++k)
        monotone = monotone && tr.samples[k].f <= tr.samples[k - 1].f + energy_tol;
    }
    SeedRow& row = rows[i];
    row.monotone = monotone;
    row.rec["index"] = i;
    row.rec["start"] = enc(seeds[i]);
    row.rec["t_end"] = tr.samples.back().t;
    row.rec["steps"] = tr.samples.size() - 1;
    row.rec["f_initial"] = tr.samples.front().f;
    row.rec["f_final"] = tr.samples.back().f;
    row.rec["energy_monotone"] = monotone;

    json algebra;
    algebra["limit_exists"] = algebra_limit.has_value();
    switch (tr.verdict) {
      case FlowVerdict::Converged: {
        row.verdict = "Converged";
        row.rec["limit"] = enc(tr.limit);
        if (algebra_limit) {
          double d = 0.0;
          for (std::size_t k = 0; k < tr.limit.size(); ++k)
            d += std::norm(tr.limit[k] - (*algebra_limit)[k]);
          d = std::sqrt(d);
          algebra["limit_distance"] = d;
          row.agrees = d <= agree_tol ? 1 : 0;
        } else {
          row.agrees = 0;
        }
        break;
      }
      case FlowVerdict::Diverged:
        row.verdict = "Diverged";
        row.rec["limit"] = nullptr;
        row.agrees = algebra_limit ? 0 : 1;
        break;
      case FlowVerdict::HorizonReached:
        row.verdict = "HorizonReached";
        row.rec["limit"] = nullptr;
        row.agrees = -1;
        break;
    }
    algebra["verdict_match"] = row.agrees < 0 ? json(nullptr) : json(row.agrees == 1);
    row.rec["verdict"] = row.verdict;
    row.rec["algebra"] = std::move(algebra);
  });

  int matched = 0, mismatched = 0, indeterminate = 0;
  json recs = json::array();
  TextTable t{{"idx", "verdict", "steps", "f_final", "monotone", "algebra"}, {}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    SeedRow& row = rows[i];
    (row.agrees == 1 ? matched : row.agrees == 0 ? mismatched : indeterminate)++;
    if (!row.monotone) exit_code = 2;
    t.rows.push_back({std::to_string(i), row.verdict,
                      std::to_string(row.rec["steps"].get<std::size_t>()),
                      fmt_double(row.rec["f_final"].get<double>()),
                      row.monotone ? "yes" : "NO",
                      row.agrees == 1 ? "match" : row.agrees == 0 ? "MISMATCH" : "open"});
    recs.push_back(std::move(row.rec));
  }
  if (mismatched > 0) exit_code = 2;

  json doc;
  doc["n"] = s.n;
  doc["weights"] = enc(s.weights);
  doc["direction"] = plus ? "toward_plus" : "toward_minus";
  doc["config"] = {{"dt", cfg.dt},
                   {"t_max", cfg.t_max},
                   {"tol_converge", cfg.tol_converge},
                   {"tol_diverge", cfg.tol_diverge}};
  doc["seed_source"] = source;
  doc["seeds"] = std::move(recs);
  doc["agreements"] = {{"matched", matched},
                       {"mismatched", mismatched},
                       {"indeterminate", indeterminate}};

  table << "flow  n=" << s.n << "  weights=" << fmt_longs(s.weights.l) << "  direction="
        << (plus ? "toward_plus" : "toward_minus") << "  seeds=" << source << "\n";
  table << "  dt=" << fmt_double(cfg.dt) << "  t_max=" << fmt_double(cfg.t_max)
        << "  tol_converge=" << fmt_double(cfg.tol_converge)
        << "  tol_diverge=" << fmt_double(cfg.tol_diverge) << "\n";
  t.render(table);
  table << "  agreement: " << matched << " matched, " << mismatched << " mismatched, "
        << indeterminate << " indeterminate\n";
  return doc;
}

// ---------------------------------------------------------------------------
// verify

json cmd_verify(const Scene& s, const RunFlags& flags, std::ostringstream& table,
                int& exit_code) {
  if (!flags.seed) throw DomainError("verify: --seed is required");
  std::vector<CheckResult> checks = run_all_checks(*flags.seed, s.verify_trial_scale);
  json doc;
  doc["trial_scale"] = s.verify_trial_scale;
  json rows = json::array();
  int passed = 0, failed = 0;
  for (const CheckResult& c : checks) {
    rows.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    (c.pass ? passed : failed)++;
    table << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << ": " << c.detail << "\n";
  }
  doc["checks"] = std::move(rows);
  doc["passed"] = passed;
  doc["failed"] = failed;
  table << "  " << passed << " passed, " << failed << " failed\n";
  if (failed > 0) exit_code = 2;
  return doc;
}

}  // namespace

Report run(const std::string& command, const std::string& scene_path, const RunFlags& flags) {
  if (flags.format != "json" && flags.format != "table")
    throw DomainError("--format must be json or table");
  Scene s = load_scene(scene_path);
  std::ostringstream table;
  int exit_code = 0;
  json doc;
  if (command == "decompose") {
    doc = cmd_decompose(s, flags, table);
  } else if (command == "blowup") {
    doc = cmd_blowup(s, flags, table, exit_code);
  } else if (command == "transform") {
    doc = cmd_transform(s, flags, table);
  } else if (command == "indices") {
    doc = cmd_indices(s, table);
  } else if (command == "flow") {
    doc = cmd_flow(s, flags, table, exit_code);
  } else if (command == "verify") {
    doc = cmd_verify(s, flags, table, exit_code);
  } else {
    throw DomainError("unknown command '" + command + "'");
  }
  doc["command"] = command;
  doc["scene"] = scene_path;
  if (flags.seed) doc["seed"] = *flags.seed;
  if (flags.chart) doc["chart"] = *flags.chart;

  Report report;
  report.exit_code = exit_code;
  report.json_text = doc.dump(2) + "\n";
  report.table_text = table.str();
  return report;
}

}  // namespace bbkit::scene
