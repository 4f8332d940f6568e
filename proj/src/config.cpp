#include "fraccoop/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace fraccoop {
namespace {

// --------------------------------------------------------------- values

struct Value {
  enum class Kind { number, word, list };
  Kind kind = Kind::word;
  double num = 0.0;
  std::string word;  // raw token (kept for integer re-parsing)
  std::vector<Value> items;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_plain(const std::string& t, double& out) {
  const char* begin = t.data();
  const char* end = begin + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

// Numbers are plain decimals or pi expressions: pi, 2pi, pi/2, 3pi/4, -pi.
bool parse_number(const std::string& t, double& out) {
  if (parse_plain(t, out)) return true;
  const auto pos = t.find("pi");
  if (pos == std::string::npos || t.find("pi", pos + 1) != std::string::npos)
    return false;
  double coef = 1.0, divisor = 1.0;
  const std::string pre = t.substr(0, pos);
  const std::string post = t.substr(pos + 2);
  if (pre == "-")
    coef = -1.0;
  else if (!pre.empty() && !parse_plain(pre, coef))
    return false;
  if (!post.empty()) {
    if (post[0] != '/' || !parse_plain(post.substr(1), divisor) ||
        divisor == 0.0)
      return false;
  }
  out = coef * M_PI / divisor;
  return true;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> toks;
  std::string atom;
  const auto flush = [&] {
    if (!atom.empty()) toks.push_back(atom);
    atom.clear();
  };
  for (char c : text) {
    if (c == '[' || c == ']' || c == ',') {
      flush();
      toks.emplace_back(1, c);
    } else if (c == ' ' || c == '\t') {
      flush();
    } else {
      atom += c;
    }
  }
  flush();
  return toks;
}

bool parse_value(const std::vector<std::string>& toks, std::size_t& i,
                 Value& out) {
  if (i >= toks.size()) return false;
  if (toks[i] == "[") {
    ++i;
    out.kind = Value::Kind::list;
    if (i < toks.size() && toks[i] == "]") {
      ++i;
      return true;
    }
    while (true) {
      Value item;
      if (!parse_value(toks, i, item)) return false;
      out.items.push_back(std::move(item));
      if (i >= toks.size()) return false;
      if (toks[i] == ",") {
        ++i;
        continue;
      }
      if (toks[i] == "]") {
        ++i;
        return true;
      }
      return false;
    }
  }
  if (toks[i] == "]" || toks[i] == ",") return false;
  out.word = toks[i++];
  if (parse_number(out.word, out.num))
    out.kind = Value::Kind::number;
  else
    out.kind = Value::Kind::word;
  return true;
}

// ----------------------------------------------------------- known keys

const std::map<std::string, std::set<std::string>> kSchema = {
    {"domain", {"kind", "lx", "ly", "bc"}},
    {"discretization", {"n_modes", "resolution", "small_d_modes"}},
    {"coupling", {"d", "s", "a11", "a12", "a21", "a22"}},
    {"epidemic", {"a", "b", "H", "H_p", "G", "G_p", "G_kappa"}},
    {"sweep", {"parameter", "values", "target"}},
    {"shape", {"d_values"}},
    {"domains", {"inner_length", "outer_length"}},
    {"maxprinciple", {"trials"}},
    {"evolve", {"dt", "T", "u0", "store_every"}},
    {"steady", {"tol"}},
    {"run", {"seed"}},
};

struct Parsed {
  std::map<std::string, Value> kv;
  std::set<std::string> sections;
  std::vector<std::string> errors;

  bool has(const std::string& path) const { return kv.count(path) != 0; }
  void fail(const std::string& path, const std::string& msg) {
    errors.push_back(path + ": " + msg);
  }
};

Parsed scan(const std::string& text) {
  Parsed p;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        p.fail("line " + std::to_string(lineno), "malformed section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (kSchema.find(section) == kSchema.end())
        p.fail(section, "unknown section");
      p.sections.insert(section);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      p.fail("line " + std::to_string(lineno), "expected 'key = value'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (section.empty()) {
      p.fail("line " + std::to_string(lineno), "key outside any [section]");
      continue;
    }
    if (key.empty() || val.empty()) {
      p.fail("line " + std::to_string(lineno), "empty key or value");
      continue;
    }
    const std::string path = section + "." + key;
    const auto sec = kSchema.find(section);
    if (sec != kSchema.end() && sec->second.find(key) == sec->second.end()) {
      p.fail(path, "unknown key");
      continue;
    }
    if (p.kv.count(path)) {
      p.fail(path, "duplicate key");
      continue;
    }
    const std::vector<std::string> toks = tokenize(val);
    std::size_t i = 0;
    Value v;
    if (!parse_value(toks, i, v) || i != toks.size()) {
      p.fail(path, "malformed value");
      continue;
    }
    p.kv.emplace(path, std::move(v));
  }
  return p;
}

// ------------------------------------------------------- typed getters

double get_number(Parsed& p, const std::string& path, double fallback) {
  const auto it = p.kv.find(path);
  if (it == p.kv.end()) return fallback;
  if (it->second.kind != Value::Kind::number) {
    p.fail(path, "expected a number");
    return fallback;
  }
  return it->second.num;
}

long long get_int(Parsed& p, const std::string& path, long long fallback) {
  const auto it = p.kv.find(path);
  if (it == p.kv.end()) return fallback;
  const Value& v = it->second;
  if (v.kind != Value::Kind::number || v.num != std::floor(v.num) ||
      std::abs(v.num) > 9.0e15) {
    p.fail(path, "expected an integer");
    return fallback;
  }
  return static_cast<long long>(v.num);
}

std::string get_word(Parsed& p, const std::string& path,
                     const std::string& fallback) {
  const auto it = p.kv.find(path);
  if (it == p.kv.end()) return fallback;
  if (it->second.kind == Value::Kind::list) {
    p.fail(path, "expected a word");
    return fallback;
  }
  return it->second.word;
}

bool get_pair(Parsed& p, const std::string& path, Pair2& out) {
  const auto it = p.kv.find(path);
  if (it == p.kv.end()) return false;
  const Value& v = it->second;
  if (v.kind != Value::Kind::list || v.items.size() != 2 ||
      v.items[0].kind != Value::Kind::number ||
      v.items[1].kind != Value::Kind::number) {
    p.fail(path, "expected a pair of numbers [x, y]");
    return false;
  }
  out = {v.items[0].num, v.items[1].num};
  return true;
}

bool get_number_list(Parsed& p, const std::string& path,
                     std::vector<double>& out) {
  const auto it = p.kv.find(path);
  if (it == p.kv.end()) return false;
  const Value& v = it->second;
  if (v.kind != Value::Kind::list) {
    p.fail(path, "expected a list of numbers");
    return false;
  }
  out.clear();
  for (const Value& item : v.items) {
    if (item.kind != Value::Kind::number) {
      p.fail(path, "expected a list of numbers");
      return false;
    }
    out.push_back(item.num);
  }
  return true;
}

// Cosine-series table: [[k, amp], ...] on intervals, [[kx, ky, amp], ...]
// on rectangles.
bool get_series(Parsed& p, const std::string& path, Domain::Kind kind,
                ScalarField& out) {
  const auto it = p.kv.find(path);
  if (it == p.kv.end()) return false;
  const Value& v = it->second;
  const std::size_t arity = kind == Domain::Kind::interval ? 2 : 3;
  const char* shape = kind == Domain::Kind::interval
                          ? "[k, amplitude] terms"
                          : "[kx, ky, amplitude] terms";
  if (v.kind != Value::Kind::list || v.items.empty()) {
    p.fail(path, std::string("expected a cosine table of ") + shape);
    return false;
  }
  out.terms.clear();
  for (const Value& term : v.items) {
    if (term.kind != Value::Kind::list || term.items.size() != arity) {
      p.fail(path, std::string("expected a cosine table of ") + shape);
      return false;
    }
    CosineTerm ct;
    bool ok = true;
    for (std::size_t j = 0; j + 1 < arity; ++j) {
      const Value& idx = term.items[j];
      if (idx.kind != Value::Kind::number || idx.num != std::floor(idx.num) ||
          idx.num < 0.0 || idx.num > 1e6) {
        ok = false;
        break;
      }
      (j == 0 ? ct.kx : ct.ky) = static_cast<int>(idx.num);
    }
    const Value& amp = term.items[arity - 1];
    if (!ok || amp.kind != Value::Kind::number) {
      p.fail(path, "cosine indices must be nonnegative integers and the "
                   "amplitude a number");
      return false;
    }
    ct.amp = amp.num;
    out.terms.push_back(ct);
  }
  return true;
}

// Range of a cosine series probed on a fine grid (the exact quadrature-grid
// validation happens again at materialization).
void series_range(const ScalarField& f, const Domain& dom, double& mn,
                  double& mx) {
  const int rx = dom.kind == Domain::Kind::interval ? 2049 : 193;
  const int ry = dom.kind == Domain::Kind::interval ? 1 : 193;
  mn = std::numeric_limits<double>::infinity();
  mx = -mn;
  for (int i = 0; i < rx; ++i) {
    const double x = dom.lx * i / (rx - 1);
    for (int j = 0; j < ry; ++j) {
      const double y = ry == 1 ? 0.0 : dom.ly * j / (ry - 1);
      double val = 0.0;
      for (const CosineTerm& t : f.terms) {
        double term = t.amp * std::cos(t.kx * M_PI * x / dom.lx);
        if (ry > 1) term *= std::cos(t.ky * M_PI * y / dom.ly);
        val += term;
      }
      mn = std::min(mn, val);
      mx = std::max(mx, val);
    }
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  Parsed p = scan(text);
  RunConfig cfg;

  // [domain]
  Domain::Kind kind = Domain::Kind::interval;
  bool domain_ok = false;
  if (p.sections.count("domain")) {
    cfg.has_domain = true;
    const std::string kw = get_word(p, "domain.kind", "interval");
    if (kw == "interval")
      kind = Domain::Kind::interval;
    else if (kw == "rectangle")
      kind = Domain::Kind::rectangle;
    else
      p.fail("domain.kind", "expected 'interval' or 'rectangle'");
    const std::string bcw = get_word(p, "domain.bc", "neumann");
    BC bc = BC::neumann;
    if (bcw == "neumann")
      bc = BC::neumann;
    else if (bcw == "dirichlet")
      bc = BC::dirichlet;
    else
      p.fail("domain.bc", "expected 'neumann' or 'dirichlet'");
    const double lx = get_number(p, "domain.lx", M_PI);
    if (!(lx > 0.0)) p.fail("domain.lx", "must be positive");
    if (kind == Domain::Kind::interval) {
      if (p.has("domain.ly"))
        p.fail("domain.ly", "only meaningful for rectangles");
      if (lx > 0.0) {
        cfg.domain = make_interval(lx, bc);
        domain_ok = true;
      }
    } else {
      const double ly = get_number(p, "domain.ly", 0.0);
      if (!(ly > 0.0)) p.fail("domain.ly", "must be positive for rectangles");
      if (lx > 0.0 && ly > 0.0) {
        cfg.domain = make_rectangle(lx, ly, bc);
        domain_ok = true;
      }
    }
  }

  // [discretization]
  cfg.n_modes = static_cast<int>(get_int(p, "discretization.n_modes", 64));
  if (cfg.n_modes < 1 || cfg.n_modes > 4096)
    p.fail("discretization.n_modes", "must be between 1 and 4096");
  cfg.resolution =
      static_cast<int>(get_int(p, "discretization.resolution", 0));
  if (cfg.resolution < 0)
    p.fail("discretization.resolution", "must be nonnegative (0 = default)");
  cfg.small_d_modes =
      static_cast<int>(get_int(p, "discretization.small_d_modes", 256));
  if (cfg.small_d_modes < 0 || cfg.small_d_modes > 4096)
    p.fail("discretization.small_d_modes", "must be between 0 and 4096");

  // [coupling]
  get_pair(p, "coupling.d", cfg.d);
  if (!(cfg.d[0] > 0.0 && cfg.d[1] > 0.0))
    p.fail("coupling.d", "diffusion coefficients must be positive");
  get_pair(p, "coupling.s", cfg.s);
  if (!(cfg.s[0] > 0.0 && cfg.s[0] <= 1.0 && cfg.s[1] > 0.0 && cfg.s[1] <= 1.0))
    p.fail("coupling.s", "fractional orders must lie in (0, 1]");
  {
    const bool e11 = get_series(p, "coupling.a11", kind, cfg.A.a11);
    const bool e12 = get_series(p, "coupling.a12", kind, cfg.A.a12);
    const bool e21 = get_series(p, "coupling.a21", kind, cfg.A.a21);
    const bool e22 = get_series(p, "coupling.a22", kind, cfg.A.a22);
    const int given = e11 + e12 + e21 + e22;
    if (given == 4) {
      cfg.has_coupling_matrix = true;
      if (domain_ok) {
        double mn, mx;
        series_range(cfg.A.a12, cfg.domain, mn, mx);
        if (mx >= 0.0)
          p.fail("coupling.a12",
                 "the off-diagonal coupling must be strictly negative on the "
                 "whole domain (the system is cooperative only then); found "
                 "max = " +
                     std::to_string(mx));
        series_range(cfg.A.a21, cfg.domain, mn, mx);
        if (mx >= 0.0)
          p.fail("coupling.a21",
                 "the off-diagonal coupling must be strictly negative on the "
                 "whole domain (the system is cooperative only then); found "
                 "max = " +
                     std::to_string(mx));
      }
    } else if (given != 0) {
      for (const char* k : {"a11", "a12", "a21", "a22"}) {
        if (!p.has(std::string("coupling.") + k))
          p.fail(std::string("coupling.") + k,
                 "all four coupling entries are required together");
      }
    }
  }

  // [epidemic]
  if (p.sections.count("epidemic")) {
    cfg.has_epidemic = true;
    const bool ea = get_series(p, "epidemic.a", kind, cfg.model.a);
    const bool eb = get_series(p, "epidemic.b", kind, cfg.model.b);
    if (!ea) p.fail("epidemic.a", "removal-rate cosine table is required");
    if (!eb) p.fail("epidemic.b", "removal-rate cosine table is required");
    if (ea && domain_ok) {
      double mn, mx;
      series_range(cfg.model.a, cfg.domain, mn, mx);
      if (mn <= 0.0)
        p.fail("epidemic.a", "removal rate must be strictly positive; found "
                             "min = " +
                                 std::to_string(mn));
    }
    if (eb && domain_ok) {
      double mn, mx;
      series_range(cfg.model.b, cfg.domain, mn, mx);
      if (mn <= 0.0)
        p.fail("epidemic.b", "removal rate must be strictly positive; found "
                             "min = " +
                                 std::to_string(mn));
    }
    const std::string hw = get_word(p, "epidemic.H", "log_saturating");
    const std::string gw = get_word(p, "epidemic.G", "michaelis_menten");
    const double hp = get_number(p, "epidemic.H_p", 1.0);
    const double gp = get_number(p, "epidemic.G_p", 1.0);
    const double gk = get_number(p, "epidemic.G_kappa", 1.0);
    try {
      cfg.model.H = make_nonlinearity(hw, hp);
      if (!cfg.model.H.unbounded())
        p.fail("epidemic.H", "the transmission response must be unbounded; "
                             "michaelis_menten saturates (use it for G)");
    } catch (const invalid_input& e) {
      p.fail("epidemic.H", e.what());
    }
    try {
      cfg.model.G = make_nonlinearity(gw, gp, gk);
    } catch (const invalid_input& e) {
      p.fail("epidemic.G", e.what());
    }
  }

  // [sweep]
  if (p.sections.count("sweep")) {
    cfg.has_sweep = true;
    const std::string pw = get_word(p, "sweep.parameter", "d_joint");
    if (pw == "d_joint")
      cfg.sweep_parameter = SweepParameter::d_joint;
    else if (pw == "d1")
      cfg.sweep_parameter = SweepParameter::d1;
    else if (pw == "d2")
      cfg.sweep_parameter = SweepParameter::d2;
    else if (pw == "s_joint")
      cfg.sweep_parameter = SweepParameter::s_joint;
    else if (pw == "domain_scale")
      cfg.sweep_parameter = SweepParameter::domain_scale;
    else
      p.fail("sweep.parameter",
             "expected d_joint, d1, d2, s_joint, or domain_scale");
    const std::string tw = get_word(p, "sweep.target", "min_principal");
    if (tw == "min_principal")
      cfg.sweep_target = SweepTarget::min_principal;
    else if (tw == "perron_of_average")
      cfg.sweep_target = SweepTarget::perron_of_average;
    else if (tw == "classical_laplacian")
      cfg.sweep_target = SweepTarget::classical_laplacian;
    else if (tw == "limit_s0_operator")
      cfg.sweep_target = SweepTarget::limit_s0_operator;
    else if (tw == "perron_constant")
      cfg.sweep_target = SweepTarget::perron_constant;
    else if (tw == "divergence")
      cfg.sweep_target = SweepTarget::divergence;
    else
      p.fail("sweep.target",
             "expected min_principal, perron_of_average, classical_laplacian, "
             "limit_s0_operator, perron_constant, or divergence");
    if (!get_number_list(p, "sweep.values", cfg.sweep_values) ||
        cfg.sweep_values.size() < 4)
      p.fail("sweep.values", "need at least 4 values");
    for (std::size_t i = 0; i < cfg.sweep_values.size(); ++i)
      if (!(cfg.sweep_values[i] > 0.0) ||
          (i > 0 && cfg.sweep_values[i] <= cfg.sweep_values[i - 1])) {
        p.fail("sweep.values", "values must be positive and strictly "
                               "increasing");
        break;
      }
  }

  // [shape]
  if (p.sections.count("shape")) {
    if (!get_number_list(p, "shape.d_values", cfg.shape_d_values) ||
        cfg.shape_d_values.size() < 2)
      p.fail("shape.d_values", "need at least 2 values");
    for (std::size_t i = 0; i < cfg.shape_d_values.size(); ++i)
      if (!(cfg.shape_d_values[i] > 0.0) ||
          (i > 0 && cfg.shape_d_values[i] <= cfg.shape_d_values[i - 1])) {
        p.fail("shape.d_values", "values must be positive and strictly "
                                 "increasing");
        break;
      }
  }

  // [domains]
  if (p.sections.count("domains")) {
    cfg.has_domains = true;
    cfg.inner_length = get_number(p, "domains.inner_length", 0.0);
    cfg.outer_length = get_number(p, "domains.outer_length", 0.0);
    if (!(cfg.inner_length > 0.0))
      p.fail("domains.inner_length", "must be positive");
    if (!(cfg.outer_length > cfg.inner_length))
      p.fail("domains.outer_length", "must exceed inner_length");
  }

  // [maxprinciple]
  cfg.trials = static_cast<int>(get_int(p, "maxprinciple.trials", 20));
  if (cfg.trials < 1) p.fail("maxprinciple.trials", "must be at least 1");

  // [evolve]
  cfg.dt = get_number(p, "evolve.dt", 1e-3);
  if (!(cfg.dt > 0.0)) p.fail("evolve.dt", "must be positive");
  cfg.t_final = get_number(p, "evolve.T", 5.0);
  if (!(cfg.t_final >= 0.0)) p.fail("evolve.T", "must be nonnegative");
  if (get_pair(p, "evolve.u0", cfg.u0) &&
      !(cfg.u0[0] >= 0.0 && cfg.u0[1] >= 0.0))
    p.fail("evolve.u0", "initial values must be nonnegative");
  cfg.store_every = static_cast<int>(get_int(p, "evolve.store_every", 100));
  if (cfg.store_every < 1) p.fail("evolve.store_every", "must be at least 1");

  // [steady]
  cfg.steady_tol = get_number(p, "steady.tol", 1e-8);
  if (!(cfg.steady_tol > 0.0)) p.fail("steady.tol", "must be positive");

  // [run]
  if (p.has("run.seed")) {
    const Value& v = p.kv.at("run.seed");
    unsigned long long seed = 0;
    const char* begin = v.word.data();
    const char* end = begin + v.word.size();
    auto [ptr, ec] = std::from_chars(begin, end, seed);
    if (ec != std::errc{} || ptr != end)
      p.fail("run.seed", "expected an unsigned integer");
    else
      cfg.seed = seed;
  }

  cfg.model.d = cfg.d;
  cfg.model.s = cfg.s;

  if (!p.errors.empty()) {
    std::string joined = "configuration invalid:";
    for (const std::string& e : p.errors) joined += "\n  " + e;
    throw invalid_input(joined);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw invalid_input("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace fraccoop
