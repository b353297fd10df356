#include "pauli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "pauli/errors.hpp"
#include "pauli/format.hpp"

namespace pauli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line = 0;
};

// Keys of one section, consumed as they are read so leftovers can be
// reported as unknown.
class Section {
 public:
  Section(std::string origin, std::string name, std::map<std::string, Entry> entries)
      : origin_(std::move(origin)), name_(std::move(name)), entries_(std::move(entries)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    std::string where = origin_;
    const auto it = seen_.find(key);
    if (it != seen_.end()) where += ":" + std::to_string(it->second);
    throw ValidationError(where + ": [" + name_ + "] " + key + ": " + what);
  }

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  std::optional<std::string> take(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    seen_[key] = it->second.line;
    std::string v = it->second.value;
    entries_.erase(it);
    return v;
  }

  std::string require(const std::string& key) {
    auto v = take(key);
    if (!v) fail(key, "missing");
    return *v;
  }

  double to_real(const std::string& key, const std::string& text) const {
    try {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size() || !std::isfinite(v)) fail(key, "not a finite number: '" + text + "'");
      return v;
    } catch (const std::logic_error&) {
      fail(key, "not a number: '" + text + "'");
    }
  }

  std::uint64_t to_count(const std::string& key, const std::string& text) const {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
      fail(key, "not a non-negative integer: '" + text + "'");
    try {
      return std::stoull(text);
    } catch (const std::out_of_range&) {
      fail(key, "out of range: '" + text + "'");
    }
  }

  std::vector<std::string> words(const std::string& text) const {
    std::istringstream in(text);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
  }

  double real(const std::string& key, std::optional<double> fallback = std::nullopt) {
    auto v = take(key);
    if (!v) {
      if (fallback) return *fallback;
      fail(key, "missing");
    }
    return to_real(key, *v);
  }

  std::uint64_t count(const std::string& key, std::optional<std::uint64_t> fallback = std::nullopt) {
    auto v = take(key);
    if (!v) {
      if (fallback) return *fallback;
      fail(key, "missing");
    }
    return to_count(key, *v);
  }

  std::vector<double> reals(const std::string& key, std::size_t expected) {
    const auto w = words(require(key));
    if (expected != 0 && w.size() != expected)
      fail(key, "expected " + std::to_string(expected) + " values, found " + std::to_string(w.size()));
    std::vector<double> out;
    for (const auto& s : w) out.push_back(to_real(key, s));
    return out;
  }

  std::string text(const std::string& key, const std::string& fallback) {
    auto v = take(key);
    return v ? *v : fallback;
  }

  // Remaining keys, in name order.
  std::vector<std::string> remaining() const {
    std::vector<std::string> out;
    for (const auto& [k, e] : entries_) out.push_back(k);
    return out;
  }

  void finish() {
    if (entries_.empty()) return;
    const auto& [key, e] = *entries_.begin();
    seen_[key] = e.line;
    fail(key, "unknown key");
  }

  const std::string& name() const { return name_; }

 private:
  std::string origin_;
  std::string name_;
  std::map<std::string, Entry> entries_;
  std::map<std::string, int> seen_;
};

const std::set<std::string> kSections = {"units", "grid", "initial", "potential", "propagator", "output",
                                         "trajectories"};

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + format_real(v[i]);
  return out;
}

std::vector<double> head(const Vec3& v, int dim) { return {v.begin(), v.begin() + dim}; }

int parse_axis(Section& s, const std::string& key, const std::string& text) {
  if (text == "x") return 0;
  if (text == "y") return 1;
  if (text == "z") return 2;
  s.fail(key, "expected x, y or z, found '" + text + "'");
}

Vec3 to_vec(const std::vector<double>& v) {
  Vec3 out{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < v.size() && i < 3; ++i) out[i] = v[i];
  return out;
}

}  // namespace

Grid SimConfig::make_grid() const { return Grid::centered(grid.dim, grid.n, grid.extent); }

EMPotential SimConfig::make_potential() const { return preset(potential.preset, potential.params, particle()); }

SpinorField SimConfig::make_initial_state() const {
  const Grid g = make_grid();
  if (initial.kind == InitialKind::PlaneWave) return init_plane_wave(g, initial.momentum, initial.spinor);
  GaussianPacket packet;
  packet.center = initial.center;
  packet.width = initial.width;
  packet.momentum = initial.momentum;
  packet.spinor = initial.spinor;
  return init_gaussian(g, packet);
}

SimConfig parse_config(const std::string& text, const std::string& origin) {
  std::map<std::string, std::map<std::string, Entry>> sections;
  std::string current;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  auto fail_line = [&](const std::string& what) -> void {
    throw ValidationError(origin + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail_line("malformed section header '" + line + "'");
      current = trim(line.substr(1, line.size() - 2));
      if (!kSections.count(current)) fail_line("unknown section [" + current + "]");
      if (sections.count(current)) fail_line("duplicate section [" + current + "]");
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail_line("expected 'key = value', found '" + line + "'");
    if (current.empty()) fail_line("key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail_line("empty key");
    auto& sec = sections[current];
    if (sec.count(key)) fail_line("[" + current + "] " + key + ": duplicate key");
    sec[key] = {value, line_no};
  }

  auto section = [&](const std::string& name) { return Section(origin, name, sections[name]); };
  auto require_section = [&](const std::string& name) {
    if (!sections.count(name)) throw ValidationError(origin + ": missing section [" + name + "]");
  };

  SimConfig cfg;

  {
    Section s = section("units");
    cfg.charge = s.real("q", -1.0);
    s.finish();
  }

  require_section("grid");
  {
    Section s = section("grid");
    const auto dim = s.count("dim");
    if (dim < 1 || dim > 3) s.fail("dim", "must be 1, 2 or 3");
    cfg.grid.dim = static_cast<int>(dim);
    const auto n = s.reals("n", dim);
    const auto extent = s.reals("extent", dim);
    for (std::size_t a = 0; a < dim; ++a) {
      if (n[a] < 0 || n[a] != std::floor(n[a])) s.fail("n", "entries must be non-negative integers");
      cfg.grid.n[a] = static_cast<std::size_t>(n[a]);
      cfg.grid.extent[a] = extent[a];
    }
    s.finish();
  }
  const std::size_t dim = static_cast<std::size_t>(cfg.grid.dim);

  require_section("initial");
  {
    Section s = section("initial");
    const std::string kind = s.text("kind", "gaussian");
    if (kind == "gaussian") {
      cfg.initial.kind = InitialKind::Gaussian;
      cfg.initial.center = to_vec(s.reals("center", dim));
      cfg.initial.width = to_vec(s.reals("width", dim));
      for (std::size_t a = dim; a < 3; ++a) cfg.initial.width[a] = 1.0;
      if (s.has("momentum")) cfg.initial.momentum = to_vec(s.reals("momentum", dim));
    } else if (kind == "plane_wave") {
      cfg.initial.kind = InitialKind::PlaneWave;
      cfg.initial.width = {1.0, 1.0, 1.0};
      cfg.initial.momentum = to_vec(s.reals("momentum", dim));
    } else {
      s.fail("kind", "expected gaussian or plane_wave, found '" + kind + "'");
    }
    if (s.has("spinor")) {
      const auto sp = s.reals("spinor", 4);
      cfg.initial.spinor = {Complex(sp[0], sp[1]), Complex(sp[2], sp[3])};
    }
    s.finish();
  }

  require_section("potential");
  {
    Section s = section("potential");
    const std::string name = s.require("preset");
    try {
      cfg.potential.preset = parse_preset(name);
    } catch (const ValidationError& e) {
      s.fail("preset", e.what());
    }
    const auto& spec = preset_parameters(cfg.potential.preset);
    std::set<std::string> allowed(spec.required.begin(), spec.required.end());
    for (const auto& [k, v] : spec.optional) allowed.insert(k);
    for (const auto& key : s.remaining()) {
      if (!allowed.count(key)) {
        s.take(key);
        s.fail(key, "unknown key for preset " + name);
      }
      cfg.potential.params[key] = s.real(key);
    }
    for (const auto& key : spec.required)
      if (!cfg.potential.params.count(key)) s.fail(key, "missing (required by preset " + name + ")");
    s.finish();
  }

  require_section("propagator");
  {
    Section s = section("propagator");
    try {
      cfg.propagator.propagator.scheme = parse_scheme(s.require("scheme"));
    } catch (const ValidationError& e) {
      s.fail("scheme", e.what());
    }
    cfg.propagator.propagator.dt = s.real("dt");
    cfg.propagator.t_end = s.real("t_end");
    cfg.propagator.propagator.krylov_dim = static_cast<int>(s.count("krylov_dim", 40));
    cfg.propagator.propagator.tol = s.real("tol", 1e-10);
    s.finish();
  }

  {
    Section s = section("output");
    OutputConfig& o = cfg.output;
    o.series = s.text("series", o.series);
    o.observables = s.text("observables", o.observables);
    o.dump_dir = s.text("dump_dir", o.dump_dir);
    o.snapshot_stride = s.count("snapshot_stride", o.snapshot_stride);
    o.series_stride = s.count("series_stride", o.series_stride);
    if (o.snapshot_stride == 0) s.fail("snapshot_stride", "must be positive");
    if (o.series_stride == 0) s.fail("series_stride", "must be positive");
    s.finish();
  }

  if (sections.count("trajectories")) {
    Section s = section("trajectories");
    TrajectoryConfig t;
    t.count = s.count("count", t.count);
    t.rng_seed = s.count("rng_seed", t.rng_seed);
    t.dt = s.real("dt", t.dt);
    t.eps = s.real("eps", t.eps);
    const std::string current = s.text("current", "total");
    if (current == "total") {
      t.current = CurrentSelection::Total;
    } else if (current == "without_spin") {
      t.current = CurrentSelection::WithoutSpin;
    } else {
      s.fail("current", "expected total or without_spin, found '" + current + "'");
    }
    t.out_dir = s.text("out_dir", t.out_dir);
    if (s.has("seeds")) {
      const auto v = s.reals("seeds", 0);
      if (v.empty() || v.size() % dim != 0) s.fail("seeds", "need a multiple of " + std::to_string(dim) + " values");
      for (std::size_t i = 0; i < v.size(); i += dim)
        t.seeds.push_back(to_vec(std::vector<double>(v.begin() + static_cast<long>(i),
                                                     v.begin() + static_cast<long>(i + dim))));
    }
    const bool has_axis = s.has("arrival_axis");
    const bool has_pos = s.has("arrival_position");
    if (has_axis != has_pos)
      s.fail(has_axis ? "arrival_position" : "arrival_axis", "arrival_axis and arrival_position go together");
    if (has_axis) {
      const std::string axis = s.require("arrival_axis");
      t.arrival_axis = parse_axis(s, "arrival_axis", axis);
      if (*t.arrival_axis >= cfg.grid.dim) s.fail("arrival_axis", "axis is not used by the grid");
      t.arrival_position = s.real("arrival_position");
    }
    if (!(t.dt > 0.0)) s.fail("dt", "must be positive");
    if (!(t.eps > 0.0)) s.fail("eps", "must be positive");
    s.finish();
    cfg.trajectories = t;
  }

  try {
    validate(cfg);
  } catch (const ValidationError& e) {
    throw ValidationError(origin + ": " + e.what());
  }
  return cfg;
}

void validate(const SimConfig& cfg) {
  if (!std::isfinite(cfg.charge)) throw ValidationError("[units] q: must be finite");
  Grid grid;
  try {
    grid = cfg.make_grid();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("[grid] ") + e.what());
  }
  EMPotential pot;
  try {
    pot = cfg.make_potential();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("[potential] ") + e.what());
  }
  try {
    validate(cfg.propagator.propagator);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("[propagator] ") + e.what());
  }
  if (!(cfg.propagator.t_end >= 0.0)) throw ValidationError("[propagator] t_end: must not be negative");
  const double ratio = cfg.propagator.t_end / cfg.propagator.propagator.dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, std::round(ratio)))
    throw ValidationError("[propagator] t_end: not an integer number of dt steps");

  if (cfg.propagator.propagator.scheme == Scheme::SplitStep) {
    const SampledPotential sp = sample(grid, pot, 0.0);
    if (sp.has_vector_potential)
      throw ValidationError("[propagator] scheme: SplitStep requires A ≡ 0 (preset " + to_string(cfg.potential.preset) +
                            " has a vector potential; use Krylov)");
  }
  try {
    (void)cfg.make_initial_state();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("[initial] ") + e.what());
  }
  if (cfg.trajectories) {
    for (const auto& seed : cfg.trajectories->seeds)
      if (!grid.contains(seed)) throw ValidationError("[trajectories] seeds: seed outside the grid");
  }
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string() + ": cannot open config");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::string serialize(const SimConfig& cfg) {
  const int dim = cfg.grid.dim;
  std::ostringstream out;
  out << "[units]\nq = " << format_real(cfg.charge) << "\n\n";

  out << "[grid]\ndim = " << dim << "\nn =";
  for (int a = 0; a < dim; ++a) out << " " << cfg.grid.n[a];
  out << "\nextent = " << join(head(cfg.grid.extent, dim)) << "\n\n";

  out << "[initial]\n";
  if (cfg.initial.kind == InitialKind::Gaussian) {
    out << "kind = gaussian\ncenter = " << join(head(cfg.initial.center, dim))
        << "\nwidth = " << join(head(cfg.initial.width, dim))
        << "\nmomentum = " << join(head(cfg.initial.momentum, dim)) << "\n";
  } else {
    out << "kind = plane_wave\nmomentum = " << join(head(cfg.initial.momentum, dim)) << "\n";
  }
  const auto& sp = cfg.initial.spinor;
  out << "spinor = " << join({sp[0].real(), sp[0].imag(), sp[1].real(), sp[1].imag()}) << "\n\n";

  out << "[potential]\npreset = " << to_string(cfg.potential.preset) << "\n";
  for (const auto& [k, v] : cfg.potential.params) out << k << " = " << format_real(v) << "\n";
  out << "\n";

  const auto& p = cfg.propagator.propagator;
  out << "[propagator]\nscheme = " << to_string(p.scheme) << "\ndt = " << format_real(p.dt)
      << "\nt_end = " << format_real(cfg.propagator.t_end) << "\nkrylov_dim = " << p.krylov_dim
      << "\ntol = " << format_real(p.tol) << "\n\n";

  const auto& o = cfg.output;
  out << "[output]\nseries = " << o.series << "\nobservables = " << o.observables << "\ndump_dir = " << o.dump_dir
      << "\nsnapshot_stride = " << o.snapshot_stride << "\nseries_stride = " << o.series_stride << "\n";

  if (cfg.trajectories) {
    const auto& t = *cfg.trajectories;
    out << "\n[trajectories]\ncount = " << t.count << "\nrng_seed = " << t.rng_seed << "\ndt = " << format_real(t.dt)
        << "\neps = " << format_real(t.eps)
        << "\ncurrent = " << (t.current == CurrentSelection::Total ? "total" : "without_spin")
        << "\nout_dir = " << t.out_dir << "\n";
    if (!t.seeds.empty()) {
      std::vector<double> flat;
      for (const auto& s : t.seeds) flat.insert(flat.end(), s.begin(), s.begin() + dim);
      out << "seeds = " << join(flat) << "\n";
    }
    if (t.arrival_axis) {
      out << "arrival_axis = " << "xyz"[*t.arrival_axis] << "\narrival_position = " << format_real(t.arrival_position)
          << "\n";
    }
  }
  return out.str();
}

}  // namespace pauli
